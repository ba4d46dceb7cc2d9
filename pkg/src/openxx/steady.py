"""Exact stationary state of the boundary-thermalized chain, in factorized form.

The unique stationary state is diagonal in the energy eigenbasis with
eigenvalues that factorize over modes,

    Lambda_n = prod_l lam[n_l][l],    lam[m][l] = R_m(l) / (R_0(l) + R_1(l)),

    R_m(l) = w_L[l]*(1 - m + n_L(omega_l)) + w_R[l]*(1 - m + n_R(omega_l)),

with Bose occupations n_a(omega) = 1/(exp(omega/T_a) - 1) and coupling
weights w_a[l] = h_a(omega_l)^2. At equal temperatures and weights the
factors reduce to Fermi functions and the state is the Gibbs state of the
chain Hamiltonian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chain import ModeTable, check_bits, _readonly


@dataclass(frozen=True)
class BathSpec:
    """Bath temperatures, per-mode coupling weights and the dissipative scale.

    ``weight_left[l]`` and ``weight_right[l]`` are the squared smearing
    values h_L(omega_l)^2, h_R(omega_l)^2; scalars broadcast to all modes.
    ``lambda_sq`` multiplies every dissipative rate (default 1, matching the
    usual normalization of figures).
    """

    n: int
    temp_left: float
    temp_right: float
    weight_left: np.ndarray = field(default=None)
    weight_right: np.ndarray = field(default=None)
    lambda_sq: float = 1.0

    def __post_init__(self):
        if self.temp_left < 0 or self.temp_right < 0:
            raise ValueError("temperatures must be >= 0")
        if self.lambda_sq < 0:
            raise ValueError("lambda_sq must be >= 0")
        for name in ("weight_left", "weight_right"):
            w = getattr(self, name)
            w = np.full(self.n, 1.0) if w is None else np.broadcast_to(
                np.asarray(w, dtype=float), (self.n,)).copy()
            if w.min() < 0:
                raise ValueError(f"{name} must be nonnegative")
            object.__setattr__(self, name, _readonly(w))
        if np.any(self.weight_left + self.weight_right <= 0):
            raise ValueError("each mode needs weight_left + weight_right > 0")

    @property
    def equal_weights(self) -> bool:
        w = self.weight_left
        return (np.all(w == w[0]) and np.all(self.weight_right == w[0]))


@dataclass(frozen=True)
class SteadyFactors:
    """Per-mode occupation probabilities: lam0[l] + lam1[l] = 1, lam1 <= 1/2."""

    lam0: np.ndarray
    lam1: np.ndarray

    @property
    def n(self) -> int:
        return len(self.lam0)


def bose_occupation(temp: float, omega: float) -> float:
    """Thermal mean occupation 1/(exp(omega/temp) - 1); exactly 0 at temp = 0."""
    if omega <= 0:
        raise ValueError(f"bose_occupation needs omega > 0, got {omega}")
    if temp < 0:
        raise ValueError(f"temperature must be >= 0, got {temp}")
    if temp == 0:
        return 0.0
    x = omega / temp
    if x > 700.0:  # expm1 would overflow; the -1 is negligible here
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def bath_occupations(modes: ModeTable, baths: BathSpec) -> tuple[np.ndarray, np.ndarray]:
    """(n_L(omega_l), n_R(omega_l)) for every mode."""
    n_l = np.array([bose_occupation(baths.temp_left, w) for w in modes.omega])
    n_r = np.array([bose_occupation(baths.temp_right, w) for w in modes.omega])
    return n_l, n_r


def steady_factors(modes: ModeTable, baths: BathSpec) -> SteadyFactors:
    """Stationary per-mode factors for the given chain modes and baths."""
    if baths.n != modes.n:
        raise ValueError("bath weights and mode table disagree on n")
    if modes.omega[-1] <= 0:
        raise ValueError("all transition frequencies must be positive")
    n_l, n_r = bath_occupations(modes, baths)
    w_l, w_r = baths.weight_left, baths.weight_right
    r0 = w_l * (1.0 + n_l) + w_r * (1.0 + n_r)
    r1 = w_l * n_l + w_r * n_r
    tot = r0 + r1
    return SteadyFactors(lam0=_readonly(r0 / tot), lam1=_readonly(r1 / tot))


def gibbs_factors(modes: ModeTable, beta: float) -> SteadyFactors:
    """Per-mode factors of the Gibbs state exp(-beta*H)/Z of the chain.

    lam_m[l] = exp(beta*(1-m)*omega_l) / (exp(beta*omega_l) + 1); beta may be
    math.inf (zero-temperature token). Used as a cross-check target for
    `steady_factors` at equal temperatures and weights.
    """
    if beta < 0:
        raise ValueError("beta must be >= 0")
    lam0 = np.empty(modes.n)
    lam1 = np.empty(modes.n)
    for i, w in enumerate(modes.omega):
        if math.isinf(beta):
            lam0[i], lam1[i] = 1.0, 0.0
        else:
            t = math.exp(-beta * w)  # in (0, 1] for omega > 0
            lam0[i] = 1.0 / (1.0 + t)
            lam1[i] = t / (1.0 + t)
    return SteadyFactors(lam0=_readonly(lam0), lam1=_readonly(lam1))


def steady_eigenvalue(factors: SteadyFactors, bits) -> float:
    """Stationary eigenvalue Lambda of the eigenstate with occupations `bits`."""
    bits = check_bits(bits, factors.n)
    acc = 1.0
    for l, b in enumerate(bits):
        acc *= factors.lam1[l] if b else factors.lam0[l]
    return acc


def all_eigenvalues(factors: SteadyFactors) -> np.ndarray:
    """All 2^n stationary eigenvalues, indexed by the occupation word read as
    a binary number with the mode-1 bit most significant."""
    vals = np.ones(1)
    for l in range(factors.n):
        vals = np.kron(vals, np.array([factors.lam0[l], factors.lam1[l]]))
    return vals
