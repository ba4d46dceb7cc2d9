"""Closed-form spectral data of the open XX chain Hamiltonian.

The chain of ``n`` spins in a transverse field maps, via Jordan-Wigner, onto
free fermionic modes with single-particle amplitudes

    u[l, k] = sqrt(2/(n+1)) * sin(l*k*pi/(n+1)),       l, k = 1..n

and transition frequencies

    omega[l] = 2*delta + 4*g*cos(l*pi/(n+1)).

Everything downstream (stationary state, flows, entanglement) is built from
this data. Natural units hbar = k_B = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class InfeasibleParameters(ValueError):
    """Chain/bath parameters outside the positive-frequency regime."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ChainSpec:
    """Chain size and Hamiltonian couplings (field delta > 0, hopping g > 0)."""

    n_sites: int
    delta: float
    g: float

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError(f"n_sites must be >= 2, got {self.n_sites}")
        if not self.delta > 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if not self.g > 0:
            raise ValueError(f"g must be > 0, got {self.g}")


@dataclass(frozen=True)
class ModeTable:
    """Mode matrix u (orthogonal, symmetric) and frequencies omega (decreasing).

    Sites and modes are 1-based in all documentation and I/O; array indices
    are the usual 0-based ones, so ``u[l-1, k-1]`` is the amplitude of mode l
    at site k and ``omega[l-1]`` its transition frequency.
    """

    u: np.ndarray
    omega: np.ndarray

    @property
    def n(self) -> int:
        return len(self.omega)


def mode_table(spec: ChainSpec) -> ModeTable:
    """Build the mode matrix and transition frequencies for `spec`."""
    n = spec.n_sites
    idx = np.arange(1, n + 1)
    # l*k is computed once so u is symmetric to the last ulp.
    u = np.sqrt(2.0 / (n + 1)) * np.sin(np.outer(idx, idx) * (np.pi / (n + 1)))
    omega = 2.0 * spec.delta + 4.0 * spec.g * np.cos(idx * np.pi / (n + 1))
    return ModeTable(u=_readonly(u), omega=_readonly(omega))


def check_bits(bits, n: int) -> tuple:
    """Validate a length-n occupation word with digits in {0, 1}."""
    bits = tuple(int(b) for b in bits)
    if len(bits) != n:
        raise ValueError(f"occupation word has length {len(bits)}, expected {n}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"occupation digits must be 0 or 1, got {bits}")
    return bits


def eigen_energy(spec: ChainSpec, bits) -> float:
    """Many-body energy of the eigenstate with mode occupations `bits`.

    E = delta*(2*sum(bits) - n) + 4*g*sum_l bits[l]*cos(l*pi/(n+1)), which is
    -n*delta plus the sum of the occupied transition frequencies.
    """
    n = spec.n_sites
    bits = check_bits(bits, n)
    acc = 0.0
    for l, b in enumerate(bits, start=1):
        if b:
            acc += 2.0 * spec.delta + 4.0 * spec.g * math.cos(l * math.pi / (n + 1))
    return acc - n * spec.delta


def frequency_bound(spec: ChainSpec) -> float:
    """Largest hopping g keeping every transition frequency nonnegative."""
    return spec.delta / (2.0 * math.cos(math.pi / (spec.n_sites + 1)))


def check_frequency_assumption(spec: ChainSpec, *, strict: bool = False,
                               eps: float | None = None) -> bool:
    """True when all omega[l] >= 0, i.e. g <= delta/(2 cos(pi/(n+1))).

    With ``strict=True`` require min(omega) > eps instead (default
    eps = 1e-9*delta); the Bose occupation diverges as omega -> 0+, so the
    engine refuses to evaluate thermal factors at the saturation point.
    """
    omega_min = 2.0 * spec.delta + 4.0 * spec.g * math.cos(
        spec.n_sites * math.pi / (spec.n_sites + 1))
    if strict:
        if eps is None:
            eps = 1e-9 * spec.delta
        return omega_min > eps
    return omega_min >= 0


def require_positive_frequencies(spec: ChainSpec, eps: float | None = None) -> None:
    """Raise InfeasibleParameters unless min(omega) clears the positivity margin."""
    if not check_frequency_assumption(spec, strict=True, eps=eps):
        raise InfeasibleParameters(
            f"n={spec.n_sites}, delta={spec.delta}, g={spec.g}: smallest "
            f"transition frequency is not positive (bound g <= "
            f"{frequency_bound(spec):.6g})")
