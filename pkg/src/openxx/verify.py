"""Seeded self-verification: closed forms against the dense oracle.

Each check draws random chain/bath parameters inside the positive-frequency
regime and compares an analytic quantity with its brute-force counterpart.
The report lists one line per executed check with the worst residual and its
tolerance; failures carry the offending parameter draw. Output bytes depend
only on (max_n, draws, seed) -- runtimes are kept out of the formatted body.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .chain import ChainSpec, frequency_bound, mode_table
from .oracle import (_SPLUS, KERNEL_LIMIT, analytic_fock_state,
                     build_lindblad_set, dissipator_apply, fock_to_spin_matrix,
                     fock_words, generator_apply, hamiltonian_fock,
                     kernel_state, partial_trace_pair, site_operator,
                     spin_observable)
from .reduced import xstate_coeffs
from .steady import BathSpec, gibbs_factors, steady_factors
from .transport import heat_flow, sink_source


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    runtime: float
    detail: str = ""

    def format(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = (f"{self.name:<28s} {status}  max_residual={self.max_residual:.3e}"
                f"  tol={self.tolerance:.1e}")
        if self.detail and not self.passed:
            line += f"  [{self.detail}]"
        return line


@dataclass
class VerificationReport:
    max_n: int
    draws: int
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def format(self, timings: bool = False) -> str:
        lines = [f"# verification: n=2..{self.max_n}, draws={self.draws}, seed={self.seed}"]
        lines += [c.format() for c in self.checks]
        lines.append(f"# result: {'all passed' if self.passed else 'FAILURES PRESENT'}")
        if timings:
            total = sum(c.runtime for c in self.checks)
            lines.append(f"# timing: {total:.2f}s total, " + ", ".join(
                f"{c.name}={c.runtime:.2f}s" for c in self.checks))
        return "\n".join(lines) + "\n"


def draw_parameters(rng: np.random.Generator, n: int,
                    equal_temps: bool = False) -> tuple[ChainSpec, BathSpec]:
    """One random parameter set respecting the frequency bound.

    Temperatures in [0, 20] (first draw of a sequence pins t_left = 0, the
    antisymmetric edge case), delta in [1, 50], g a fraction in (0, 0.99] of
    the saturation bound, weights in [0.2, 2].
    """
    delta = rng.uniform(1.0, 50.0)
    spec = ChainSpec(n, delta, rng.uniform(0.01, 0.99) * frequency_bound(
        ChainSpec(n, delta, delta / 4)))
    t_left = rng.uniform(0.0, 20.0)
    t_right = t_left if equal_temps else rng.uniform(0.0, 20.0)
    baths = BathSpec(n, t_left, t_right,
                     rng.uniform(0.2, 2.0, n), rng.uniform(0.2, 2.0, n),
                     lambda_sq=rng.uniform(0.5, 2.0))
    return spec, baths


def _run(name, tol, fn) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    detail = ""
    for residual, ctx in fn():
        if residual > worst:
            worst = residual
            if residual > tol:
                detail = ctx
    return CheckResult(name=name, passed=worst <= tol, max_residual=worst,
                       tolerance=tol, runtime=time.perf_counter() - t0,
                       detail=detail)


def _describe(spec: ChainSpec, baths: BathSpec) -> str:
    return (f"n={spec.n_sites} delta={spec.delta:.6g} g={spec.g:.6g} "
            f"tL={baths.temp_left:.6g} tR={baths.temp_right:.6g}")


def run_verify(max_n: int = 4, draws: int = 20, seed: int = 0,
               kernel: bool = True) -> VerificationReport:
    """Run every oracle check for n = 2..max_n with seeded random draws."""
    if not 2 <= max_n <= KERNEL_LIMIT:
        raise ValueError(f"max_n must be in 2..{KERNEL_LIMIT}")
    report = VerificationReport(max_n=max_n, draws=draws, seed=seed)
    for n in range(2, max_n + 1):
        report.checks.extend(_checks_for_n(n, draws, seed, kernel))
    return report


def _checks_for_n(n: int, draws: int, seed: int, kernel: bool) -> list[CheckResult]:
    rng = np.random.default_rng((seed, n))
    cases = []
    for i in range(draws):
        spec, baths = draw_parameters(rng, n)
        if i == 0:  # pin one zero-temperature bath
            baths = BathSpec(n, 0.0, max(baths.temp_right, 1.0),
                             baths.weight_left, baths.weight_right,
                             lambda_sq=baths.lambda_sq)
        cases.append((spec, baths))
    prepared = []
    for spec, baths in cases:
        modes = mode_table(spec)
        factors = steady_factors(modes, baths)
        lset = build_lindblad_set(spec, modes, baths)
        h_fock = hamiltonian_fock(spec)
        rho = analytic_fock_state(factors)
        prepared.append((spec, baths, modes, factors, lset, h_fock, rho))

    def stationarity():
        for spec, baths, modes, factors, lset, h_fock, rho in prepared:
            res = np.abs(generator_apply(lset, h_fock, rho)).max()
            yield res, _describe(spec, baths)

    def jump_structure():
        # A_dag A diagonal with entries u^2 * (occupied bit), and the jump
        # operators of one bath summing to sigma_plus at the contact site
        for spec, baths, modes, factors, lset, h_fock, rho in prepared[:3]:
            v = fock_to_spin_matrix(modes)
            words = fock_words(n)
            for side, row, site in (("L", 0, 1), ("R", n - 1, n)):
                total = np.zeros_like(h_fock)
                for l in range(1, n + 1):
                    a_dag = lset.a_dag[(side, l)]
                    prod = a_dag @ a_dag.T
                    expect = np.diag([modes.u[row, l - 1] ** 2 * w[l - 1]
                                      for w in words])
                    yield np.abs(prod - expect).max(), _describe(spec, baths)
                    total += a_dag
                sp = v.T @ site_operator(_SPLUS, site, n) @ v
                yield np.abs(total - sp).max(), _describe(spec, baths)

    def uniqueness():
        for spec, baths, modes, factors, lset, h_fock, rho in prepared:
            rho_k, kdim = kernel_state(lset, h_fock)
            yield abs(kdim - 1), _describe(spec, baths)
            yield np.abs(rho_k - rho).max(), _describe(spec, baths)
            offdiag = rho_k - np.diag(np.diag(rho_k))
            yield np.abs(offdiag).max(), _describe(spec, baths)

    def gibbs_limit():
        rng2 = np.random.default_rng((seed, n, 1))
        for _ in range(draws):
            spec, baths = draw_parameters(rng2, n, equal_temps=True)
            baths = BathSpec(n, baths.temp_left, baths.temp_left, lambda_sq=1.0)
            if baths.temp_left == 0:
                continue
            modes = mode_table(spec)
            factors = steady_factors(modes, baths)
            gf = gibbs_factors(modes, 1.0 / baths.temp_left)
            yield float(np.abs(factors.lam0 - gf.lam0).max()), _describe(spec, baths)
            h = spin_observable("hamiltonian", spec).real
            evals, evecs = np.linalg.eigh(h)
            wts = np.exp(-evals / baths.temp_left)
            rho_g = (evecs * (wts / wts.sum())) @ evecs.T
            v = fock_to_spin_matrix(modes)
            rho_t = v @ analytic_fock_state(factors) @ v.T
            yield np.abs(rho_t - rho_g).max(), _describe(spec, baths)

    def flows():
        for spec, baths, modes, factors, lset, h_fock, rho in prepared:
            v = fock_to_spin_matrix(modes)
            d_left = dissipator_apply(lset, rho, sides=("L",))
            d_right = dissipator_apply(lset, rho, sides=("R",))
            scale = max(1.0, np.abs(h_fock).max())
            for k in range(1, n + 1):
                sz = v.T @ spin_observable("sigma_z", spec, k) @ v
                q_l, q_r = sink_source(modes, baths, k)
                yield abs(np.trace(d_left @ sz).real - q_l), _describe(spec, baths)
                yield abs(np.trace(d_right @ sz).real - q_r), _describe(spec, baths)
            h_l, h_r = heat_flow(modes, baths)
            yield abs(np.trace(d_left @ h_fock).real - h_l) / scale, _describe(spec, baths)
            yield abs(np.trace(d_right @ h_fock).real - h_r) / scale, _describe(spec, baths)

    def currents():
        for spec, baths, modes, factors, lset, h_fock, rho in prepared:
            v = fock_to_spin_matrix(modes)
            for k in range(1, n):
                j = v.T @ spin_observable("current", spec, k) @ v
                yield abs(np.trace(rho @ j)), _describe(spec, baths)

    def reduced_states():
        for spec, baths, modes, factors, lset, h_fock, rho in prepared:
            v = fock_to_spin_matrix(modes)
            rho_t = v @ rho @ v.T
            for r, s in combinations(range(1, n + 1), 2):
                xc = xstate_coeffs(modes, factors, r, s)
                red = partial_trace_pair(rho_t, r, s, n)
                yield np.abs(red - xc.matrix()).max(), _describe(spec, baths)

    checks = [
        _run(f"n={n} stationarity", 1e-10, stationarity),
        _run(f"n={n} jump_structure", 1e-12, jump_structure),
        _run(f"n={n} gibbs_limit", 1e-10, gibbs_limit),
        _run(f"n={n} flow_traces", 1e-10, flows),
        _run(f"n={n} spin_currents", 1e-10, currents),
        _run(f"n={n} reduced_states", 1e-9, reduced_states),
    ]
    if kernel:
        checks.insert(1, _run(f"n={n} kernel_uniqueness", 1e-9, uniqueness))
    return checks
