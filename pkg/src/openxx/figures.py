"""Canned sweep recipes: CSV data plus rendered figures for the standard
operating points (8-site chain, unit dissipative scale).

Each preset writes one CSV per curve and a single overlay figure. The
``source_term`` recipe is quoted with two different left-bath temperatures
(0 and 10); both variants are emitted and the metadata of each file points
at the companion.
"""

from __future__ import annotations

from pathlib import Path

from .chain import ChainSpec, frequency_bound
from .plotting import render_curves
from .sweep import (SweepConfig, columns, format_real, max_concurrence_over_temp,
                    metadata_lines, render_csv, run_sweep)

PRESETS = ("source_term", "heat_flow", "cmax_distance", "conc_fixed_g",
           "conc_saturating_g")

_DELTAS = (15.0, 30.0, 50.0)
_N = 8
_TMAX = 50.0


def _near_saturation(delta: float, frac: float = 0.98) -> float:
    return frac * frequency_bound(ChainSpec(_N, delta, delta))


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")


def _sweep_curves(outdir: Path, stem: str, configs: dict[str, SweepConfig],
                  ycolumn: str, title: str, ylabel: str,
                  workers: int = 1, extra: dict | None = None) -> list[Path]:
    paths = []
    curves = {}
    for label, config in configs.items():
        rows = run_sweep(config, workers=workers)
        csv_path = outdir / f"{stem}_{label}.csv"
        _write(csv_path, render_csv(config, rows, extra))
        paths.append(csv_path)
        j = columns(config).index(ycolumn)
        xs = [row[0] for row in rows if not row[1]]
        ys = [row[j] for row in rows if not row[1]]
        curves[label] = (xs, ys)
    fig_path = render_curves(outdir / f"{stem}.png", r"$T_R$", curves,
                             title=title, ylabel=ylabel)
    paths.append(fig_path)
    return paths


def preset_source_term(outdir: Path, points: int = 151, workers: int = 1) -> list[Path]:
    """Mid-chain sink/source term vs right temperature, both quoted t_left values."""
    paths = []
    for t_left in (0.0, 10.0):
        note = {"note": (f"recipe quoted with both t_left=0 and t_left=10; this "
                         f"file uses t_left={t_left:g}, a companion file uses "
                         f"the other")}
        configs = {
            f"delta{int(d)}": SweepConfig(
                n_sites=_N, delta=d, g=_near_saturation(d), t_left=t_left,
                variable="t_right", start=0.0, stop=_TMAX, points=points,
                outputs=("q:4",))
            for d in _DELTAS
        }
        paths += _sweep_curves(outdir, f"source_term_tl{int(t_left)}", configs,
                               "q_right_4",
                               f"site-4 source term, t_left={t_left:g}",
                               r"$\mathfrak{Q}^{(4)}_R$", workers, note)
    return paths


def preset_heat_flow(outdir: Path, points: int = 151, workers: int = 1) -> list[Path]:
    """Right-bath heat flow vs right temperature at near-saturation coupling."""
    configs = {
        f"delta{int(d)}": SweepConfig(
            n_sites=_N, delta=d, g=_near_saturation(d), t_left=0.0,
            variable="t_right", start=0.0, stop=_TMAX, points=points,
            outputs=("heat",))
        for d in _DELTAS
    }
    return _sweep_curves(outdir, "heat_flow", configs, "heat_right",
                         "right-bath heat flow, t_left=0",
                         r"$\mathfrak{H}^{st}_R$", workers)


def preset_cmax_distance(outdir: Path, points: int = 0, workers: int = 1) -> list[Path]:
    """Best achievable concurrence between site 1 and site s over t_right."""
    config = SweepConfig(n_sites=_N, delta=15.0, g=7.8, t_left=0.0,
                         variable="t_right", start=0.0, stop=_TMAX,
                         points=2, outputs=("conc:1-2",))
    lines = metadata_lines(config, {
        "recipe": "golden-section max of conc(1,s) over t_right in "
                  f"[0,{_TMAX:g}]"})
    lines.append("s,t_right_argmax,c_max")
    xs, ys = [], []
    for s in range(2, _N + 1):
        t_star, c_star = max_concurrence_over_temp(config, 1, s)
        lines.append(f"{s},{format_real(t_star)},{format_real(c_star)}")
        xs.append(s)
        ys.append(c_star)
    csv_path = outdir / "cmax_distance.csv"
    _write(csv_path, "\n".join(lines) + "\n")
    fig_path = render_curves(outdir / "cmax_distance.png", "s",
                             {"c_max(1,s)": (xs, ys)},
                             title="max concurrence between sites 1 and s",
                             ylabel=r"$C_{max}(1,s)$", marker="o")
    return [csv_path, fig_path]


def preset_conc_fixed_g(outdir: Path, points: int = 121, workers: int = 1) -> list[Path]:
    """Concurrence of the central pair vs t_right, g pinned at the delta=15
    near-saturation value for every field strength."""
    g = _near_saturation(15.0)
    configs = {
        f"delta{int(d)}": SweepConfig(
            n_sites=_N, delta=d, g=g, t_left=0.0, variable="t_right",
            start=0.0, stop=_TMAX, points=points, outputs=("conc:3-4",))
        for d in _DELTAS
    }
    return _sweep_curves(outdir, "conc_fixed_g", configs, "conc_3_4",
                         "concurrence C(3,4), shared g", r"$C(3,4)$", workers)


def preset_conc_saturating_g(outdir: Path, points: int = 121,
                             workers: int = 1) -> list[Path]:
    """Concurrence of the central pair vs t_right, g near saturation for each
    field strength separately."""
    configs = {
        f"delta{int(d)}": SweepConfig(
            n_sites=_N, delta=d, g=_near_saturation(d), t_left=0.0,
            variable="t_right", start=0.0, stop=_TMAX, points=points,
            outputs=("conc:3-4",))
        for d in _DELTAS
    }
    return _sweep_curves(outdir, "conc_saturating_g", configs, "conc_3_4",
                         "concurrence C(3,4), per-delta g", r"$C(3,4)$", workers)


def run_preset(name: str, outdir, points: int | None = None,
               workers: int = 1) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    fns = {
        "source_term": preset_source_term,
        "heat_flow": preset_heat_flow,
        "cmax_distance": preset_cmax_distance,
        "conc_fixed_g": preset_conc_fixed_g,
        "conc_saturating_g": preset_conc_saturating_g,
    }
    if name not in fns:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESETS}")
    kwargs = {"workers": workers}
    if points is not None and name != "cmax_distance":
        kwargs["points"] = points
    return fns[name](outdir, **kwargs)
