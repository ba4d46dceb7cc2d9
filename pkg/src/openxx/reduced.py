"""Two-spin reduced density matrices of the stationary state and concurrence.

For any site pair r < s the reduced state is an X-state

    [[a, 0, 0, 0],
     [0, b, c, 0],
     [0, c, d, 0],
     [0, 0, 0, e]]

in the (up-up, up-down, down-up, down-down) product basis. The diagonal
coefficients are sums of diagonal sector-block entries over the index
families with the corresponding occupations at (r, s); the single coherence
c couples, within each weight sector, the family members with occupations
(1,0) and (0,1) that share the same pattern on the remaining sites (tracing
out those sites forces their occupations to agree pairwise).

Concurrence of such a state is 2*max(0, |c| - sqrt(a*e)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import ModeTable
from .combinadics import index_family
from .spinrep import DENSE_LIMIT, MinorCache, block_s_entry, sector_eigenvalues
from .steady import BathSpec, SteadyFactors, bath_occupations


@dataclass(frozen=True)
class XStateCoeffs:
    """The five real coefficients of the reduced two-spin X-state at (r, s)."""

    r: int
    s: int
    a: float
    b: float
    c: float
    d: float
    e: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, 0.0, 0.0, 0.0],
                         [0.0, self.b, self.c, 0.0],
                         [0.0, self.c, self.d, 0.0],
                         [0.0, 0.0, 0.0, self.e]])

    @property
    def trace(self) -> float:
        return self.a + self.b + self.d + self.e


_OCC = {"a": (1, 1), "b": (1, 0), "d": (0, 1), "e": (0, 0)}


def xstate_coeffs(modes: ModeTable, factors: SteadyFactors, r: int, s: int,
                  cache: MinorCache | None = None) -> XStateCoeffs:
    """Reduced-state coefficients at sites r < s from the sector blocks."""
    n = modes.n
    if not (1 <= r < s <= n):
        raise ValueError(f"need 1 <= r < s <= n, got ({r}, {s})")
    cache = cache if cache is not None else MinorCache(modes)
    out = {k: 0.0 for k in "abde"}
    c = 0.0
    for p in range(n + 1):
        if n <= DENSE_LIMIT:
            d_blk = cache.block_d(p)
            lam = sector_eigenvalues(factors, p)

            def entry(ra, rb):
                return float(lam @ (d_blk[:, ra - 1] * d_blk[:, rb - 1]))
        else:
            def entry(ra, rb):
                return block_s_entry(modes, factors, p, ra, rb, cache)

        fams = {occ: index_family(n, p, r, s, *occ) for occ in _OCC.values()}
        for key, occ in _OCC.items():
            out[key] += sum(entry(rk, rk) for rk in fams[occ].ranks)
        # members of the (1,0) and (0,1) families pair up by position: the
        # k-th of each shares the off-(r,s) pattern
        for rk10, rk01 in zip(fams[(1, 0)].ranks, fams[(0, 1)].ranks):
            c += entry(rk10, rk01)
    return XStateCoeffs(r=r, s=s, a=out["a"], b=out["b"], c=c, d=out["d"], e=out["e"])


def concurrence(coeffs: XStateCoeffs) -> float:
    """Concurrence 2*max(0, |c| - sqrt(a*e)) of an X-state, in [0, 1]."""
    a = max(coeffs.a, 0.0)
    e = max(coeffs.e, 0.0)
    return 2.0 * max(0.0, abs(coeffs.c) - math.sqrt(a * e))


def pair_concurrence(modes: ModeTable, factors: SteadyFactors, r: int, s: int,
                     cache: MinorCache | None = None) -> float:
    return concurrence(xstate_coeffs(modes, factors, r, s, cache))


def simplified_c_3spin(modes: ModeTable, baths: BathSpec, pair: tuple[int, int]) -> float:
    """Closed-form coherence c for a 3-site chain with equal coupling weights.

    With N_l = n_L(omega_l) + n_R(omega_l):

        pairs (1,2), (2,3): c = (N_1 - N_3) / (4*sqrt(2)*(1+N_1)*(1+N_3))
        pair  (1,3):        c = (N_1 + N_3 - 2*N_2)
                                / (8*(1+N_1)*(1+N_2)*(1+N_3))

    Serves as a golden regression target for `xstate_coeffs`.
    """
    if modes.n != 3:
        raise ValueError("closed forms are specific to a 3-site chain")
    if not baths.equal_weights:
        raise ValueError("closed forms assume equal coupling weights")
    n_l, n_r = bath_occupations(modes, baths)
    big_n = n_l + n_r
    if tuple(pair) in ((1, 2), (2, 3)):
        return (big_n[0] - big_n[2]) / (
            4.0 * math.sqrt(2.0) * (1.0 + big_n[0]) * (1.0 + big_n[2]))
    if tuple(pair) == (1, 3):
        return (big_n[0] + big_n[2] - 2.0 * big_n[1]) / (
            8.0 * (1.0 + big_n[0]) * (1.0 + big_n[1]) * (1.0 + big_n[2]))
    raise ValueError(f"pair must be (1,2), (2,3) or (1,3), got {pair}")
