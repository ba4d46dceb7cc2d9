"""Parameter sweeps over one variable, emitted as metadata-rich CSV.

A sweep varies one of {t_right, t_left, delta, g} over a uniform grid while
the remaining parameters stay pinned, evaluates the requested observables at
every grid point, and emits one CSV row per point. Points that violate the
positive-frequency regime are kept in the output with ``skipped=1`` and NaN
observables, so row count always equals grid size. Reals are printed with 17
significant digits; identical configurations produce identical bytes.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .chain import (ChainSpec, check_frequency_assumption, frequency_bound,
                    mode_table, require_positive_frequencies)
from .reduced import pair_concurrence
from .spinrep import MinorCache
from .steady import BathSpec, steady_factors
from .transport import heat_flow, sink_source

SWEEP_VARIABLES = ("t_right", "t_left", "delta", "g")


@dataclass(frozen=True)
class SweepConfig:
    """One-variable sweep: pinned chain/bath parameters, grid and outputs.

    ``g`` may be given directly or through ``g_frac``, a fraction of the
    saturation bound delta/(2 cos(pi/(n+1))) (default 0.98, mirroring "close
    to saturation" operating points). ``outputs`` tokens: ``heat``,
    ``q:<k>``, ``conc:<r>-<s>``, ``factors``.
    """

    n_sites: int
    delta: float
    g: float | None = None
    g_frac: float = 0.98
    t_left: float = 0.0
    t_right: float = 0.0
    weight_left: tuple | float = 1.0
    weight_right: tuple | float = 1.0
    lambda_sq: float = 1.0
    variable: str = "t_right"
    start: float = 0.0
    stop: float = 50.0
    points: int = 101
    outputs: tuple[str, ...] = ("heat",)

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"sweep variable must be one of {SWEEP_VARIABLES}")
        if self.points < 2:
            raise ValueError("grid needs at least 2 points")
        if not self.outputs:
            raise ValueError("no outputs requested")
        for tok in self.outputs:
            _expand_token(tok, self.n_sites)

    def resolved_g(self, delta: float | None = None) -> float:
        delta = self.delta if delta is None else delta
        if self.g is not None:
            return self.g
        probe = ChainSpec(self.n_sites, delta, delta)  # g placeholder
        return self.g_frac * frequency_bound(probe)

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


def _expand_token(tok: str, n: int) -> list[str]:
    """Column names contributed by one output token."""
    if tok == "heat":
        return ["heat_left", "heat_right"]
    if tok == "factors":
        return [f"lam1_{l}" for l in range(1, n + 1)]
    if tok.startswith("q:"):
        k = int(tok[2:])
        if not 1 <= k <= n:
            raise ValueError(f"output {tok!r}: site out of range 1..{n}")
        return [f"q_left_{k}", f"q_right_{k}"]
    if tok.startswith("conc:"):
        r, s = (int(x) for x in tok[5:].split("-"))
        if not 1 <= r < s <= n:
            raise ValueError(f"output {tok!r}: need 1 <= r < s <= {n}")
        return [f"conc_{r}_{s}"]
    raise ValueError(f"unknown output token {tok!r}")


def columns(config: SweepConfig) -> list[str]:
    cols = [config.variable, "skipped"]
    for tok in config.outputs:
        cols.extend(_expand_token(tok, config.n_sites))
    return cols


def _point_parameters(config: SweepConfig, value: float) -> tuple[ChainSpec, BathSpec]:
    delta = value if config.variable == "delta" else config.delta
    g = value if config.variable == "g" else config.resolved_g(delta)
    spec = ChainSpec(config.n_sites, delta, g)
    baths = BathSpec(
        config.n_sites,
        value if config.variable == "t_left" else config.t_left,
        value if config.variable == "t_right" else config.t_right,
        np.broadcast_to(np.asarray(config.weight_left, dtype=float), (config.n_sites,)),
        np.broadcast_to(np.asarray(config.weight_right, dtype=float), (config.n_sites,)),
        lambda_sq=config.lambda_sq)
    return spec, baths


def _evaluate_point(config: SweepConfig, value: float,
                    cache: MinorCache | None) -> list[float | None]:
    skipped = [value, 1] + [None] * (len(columns(config)) - 2)
    try:
        spec, baths = _point_parameters(config, value)
    except ValueError:
        # grid point produced an invalid chain (e.g. delta swept through 0)
        return skipped
    if not check_frequency_assumption(spec, strict=True):
        return skipped
    modes = mode_table(spec)
    # minors depend on the mode matrix alone, which is fixed by n_sites, so
    # one cache serves every grid point
    if cache is None or cache.modes.n != modes.n:
        cache = MinorCache(modes)
    factors = None
    row: list[float | None] = [value, 0]
    for tok in config.outputs:
        if tok == "heat":
            row.extend(heat_flow(modes, baths))
        elif tok == "factors":
            if factors is None:
                factors = steady_factors(modes, baths)
            row.extend(factors.lam1.tolist())
        elif tok.startswith("q:"):
            row.extend(sink_source(modes, baths, int(tok[2:])))
        elif tok.startswith("conc:"):
            r, s = (int(x) for x in tok[5:].split("-"))
            if factors is None:
                factors = steady_factors(modes, baths)
            row.append(pair_concurrence(modes, factors, r, s, cache))
    return row


def run_sweep(config: SweepConfig, workers: int = 1) -> list[list[float | None]]:
    """Evaluate the grid; rows come back in grid order regardless of workers."""
    grid = config.grid()
    shared_cache = None
    if any(tok.startswith("conc:") for tok in config.outputs):
        # the mode matrix depends only on n_sites: share minors across points
        shared_cache = MinorCache(mode_table(
            ChainSpec(config.n_sites, 1.0, 0.25)))
    if workers <= 1:
        return [_evaluate_point(config, v, shared_cache) for v in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(
            lambda v: _evaluate_point(config, v, shared_cache), grid))


def format_real(x: float) -> str:
    if x == 0.0:
        x = 0.0  # fold -0.0
    return f"{x:.16e}"


def metadata_lines(config: SweepConfig, extra: dict | None = None) -> list[str]:
    wl = np.atleast_1d(np.asarray(config.weight_left, dtype=float))
    wr = np.atleast_1d(np.asarray(config.weight_right, dtype=float))
    lines = [
        f"# openxx {__version__}",
        (f"# chain: n_sites={config.n_sites} delta={format_real(config.delta)} "
         f"g={format_real(config.resolved_g())}"
         + ("" if config.g is not None else f" (g_frac={config.g_frac})")),
        (f"# baths: t_left={format_real(config.t_left)} "
         f"t_right={format_real(config.t_right)} "
         f"lambda_sq={format_real(config.lambda_sq)} "
         f"weight_left={','.join(format_real(w) for w in wl)} "
         f"weight_right={','.join(format_real(w) for w in wr)}"),
        (f"# sweep: variable={config.variable} start={format_real(config.start)} "
         f"stop={format_real(config.stop)} points={config.points}"),
        f"# outputs: {','.join(config.outputs)}",
    ]
    for key, val in (extra or {}).items():
        lines.append(f"# {key}: {val}")
    return lines


def render_csv(config: SweepConfig, rows: list[list[float | None]],
               extra_metadata: dict | None = None) -> str:
    """Full CSV text: metadata comments, header, one row per grid point."""
    out = metadata_lines(config, extra_metadata)
    out.append(",".join(columns(config)))
    for row in rows:
        cells = [format_real(row[0]), str(int(row[1]))]
        cells += ["nan" if v is None else format_real(v) for v in row[2:]]
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def golden_section_max(fn, lo: float, hi: float, tol: float | None = None,
                       max_iter: int = 200) -> tuple[float, float]:
    """Maximize fn on [lo, hi] by golden-section search; returns (x, fn(x))."""
    if hi <= lo:
        raise ValueError("need lo < hi")
    if tol is None:
        tol = 1e-6 * (hi - lo)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = fn(x1)
    x = 0.5 * (a + b)
    return x, fn(x)


def max_concurrence_over_temp(config: SweepConfig, r: int, s: int,
                              lo: float | None = None, hi: float | None = None,
                              tol: float | None = None) -> tuple[float, float]:
    """Largest concurrence C(r, s) over the swept temperature bracket.

    Golden-section search over the sweep variable (must be a temperature);
    returns (argmax temperature, concurrence there).
    """
    if config.variable not in ("t_left", "t_right"):
        raise ValueError("concurrence maximization sweeps a temperature")
    lo = config.start if lo is None else lo
    hi = config.stop if hi is None else hi
    spec, _ = _point_parameters(config, lo)
    require_positive_frequencies(spec)
    cache = MinorCache(mode_table(spec))

    def value(t: float) -> float:
        _, baths = _point_parameters(config, t)
        factors = steady_factors(cache.modes, baths)
        return pair_concurrence(cache.modes, factors, r, s, cache)

    return golden_section_max(value, lo, hi, tol)
