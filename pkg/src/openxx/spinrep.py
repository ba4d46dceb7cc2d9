"""Spin-basis representation of the stationary state via mode-matrix minors.

In the standard spin basis the stationary state is block diagonal over the
total-magnetization sectors. The weight-p block is

    S(p) = D(p) L(p) D(p),

where L(p) is the diagonal of stationary eigenvalues in combinadic order and
D(p) holds the p x p minors of the (orthogonal, symmetric) mode matrix u:

    D(p)[r', r''] = det u[rows(r'), cols(r'')].

D(p) is symmetric and orthogonal (Cauchy-Binet), so every S(p) is PSD with
trace equal to the total stationary weight of its sector.
"""

from __future__ import annotations

import math

import numpy as np

from .chain import ModeTable
from .combinadics import positions, sector_words, unrank
from .steady import SteadyFactors

# Dense 2^n assemblies (and materialized sector blocks) are refused above
# this size; every routine stays lazy beyond it.
DENSE_LIMIT = 12


def minor_determinant(modes: ModeTable, rows, cols) -> float:
    """Determinant of the submatrix of u with the given 1-based rows/cols.

    The empty minor (p = 0) is 1 by convention; p = n gives det(u) = -1 for
    the full mode matrix.
    """
    rows = tuple(rows)
    cols = tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column lists must have equal length")
    if any(not 1 <= i <= modes.n for i in rows + cols):
        raise ValueError("site indices out of range")
    if list(rows) != sorted(set(rows)) or list(cols) != sorted(set(cols)):
        raise ValueError("site lists must be strictly increasing")
    return _minor(modes.u, rows, cols)


def _minor(u: np.ndarray, rows: tuple[int, ...], cols: tuple[int, ...]) -> float:
    p = len(rows)
    if p == 0:
        return 1.0
    if p == 1:
        return u[rows[0] - 1, cols[0] - 1]
    m = u[np.ix_([i - 1 for i in rows], [j - 1 for j in cols])]
    if p == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if p == 3:
        return (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
                - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
                + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))
    return float(np.linalg.det(m))


class MinorCache:
    """Memoized minors (and sector blocks) of one mode table.

    Minor values are keyed on the unordered row/column pair, exploiting
    D(rows, cols) = D(cols, rows). A cache instance is meant to be confined
    to one worker; it holds no locks.
    """

    def __init__(self, modes: ModeTable):
        self.modes = modes
        self._minors: dict[tuple, float] = {}
        self._blocks: dict[int, np.ndarray] = {}

    def minor(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> float:
        key = (rows, cols) if rows <= cols else (cols, rows)
        val = self._minors.get(key)
        if val is None:
            val = _minor(self.modes.u, rows, cols)
            self._minors[key] = val
        return val

    def block_d(self, p: int) -> np.ndarray:
        """Materialized D(p); only allowed up to the dense limit."""
        if self.modes.n > DENSE_LIMIT:
            raise ValueError(f"refusing to materialize blocks for n > {DENSE_LIMIT}")
        blk = self._blocks.get(p)
        if blk is None:
            sites = [positions(w) for w in sector_words(self.modes.n, p)]
            dim = len(sites)
            blk = np.empty((dim, dim))
            for i in range(dim):
                for j in range(i, dim):
                    blk[i, j] = blk[j, i] = self.minor(sites[i], sites[j])
            self._blocks[p] = blk
        return blk


def block_d(modes: ModeTable, p: int, cache: MinorCache | None = None) -> np.ndarray:
    """The C(n,p) x C(n,p) matrix of minors for the weight-p sector."""
    if not 0 <= p <= modes.n:
        raise ValueError(f"weight {p} out of range")
    cache = cache if cache is not None else MinorCache(modes)
    return cache.block_d(p)


def sector_eigenvalues(factors: SteadyFactors, p: int) -> np.ndarray:
    """Stationary eigenvalues of the weight-p sector in combinadic order."""
    words = np.array(sector_words(factors.n, p), dtype=bool)
    return np.prod(np.where(words, factors.lam1, factors.lam0), axis=1)


def block_s(modes: ModeTable, factors: SteadyFactors, p: int,
            cache: MinorCache | None = None) -> np.ndarray:
    """The weight-p block of the stationary state in the spin basis."""
    d = block_d(modes, p, cache)
    lam = sector_eigenvalues(factors, p)
    return d.T @ (lam[:, None] * d)


def block_s_entry(modes: ModeTable, factors: SteadyFactors, p: int,
                  rank_a: int, rank_b: int,
                  cache: MinorCache | None = None) -> float:
    """Single entry of the weight-p block, by summing over the sector.

    Costs C(n,p) minor products; used above the dense limit where the full
    block is never materialized.
    """
    dim = math.comb(modes.n, p)
    if not (1 <= rank_a <= dim and 1 <= rank_b <= dim):
        raise ValueError("sector ranks out of range")
    cache = cache if cache is not None else MinorCache(modes)
    if modes.n <= DENSE_LIMIT:
        d = cache.block_d(p)
        lam = sector_eigenvalues(factors, p)
        return float(lam @ (d[:, rank_a - 1] * d[:, rank_b - 1]))
    cols_a = positions(unrank(modes.n, p, rank_a))
    cols_b = positions(unrank(modes.n, p, rank_b))
    lam = sector_eigenvalues(factors, p)
    acc = 0.0
    for idx, word in enumerate(sector_words(modes.n, p)):
        rows = positions(word)
        acc += lam[idx] * cache.minor(rows, cols_a) * cache.minor(rows, cols_b)
    return acc


def sector_order(n: int) -> list[tuple[int, int]]:
    """(weight, rank) pairs in assembly order: weights ascending, ranks within."""
    return [(p, r) for p in range(n + 1) for r in range(1, math.comb(n, p) + 1)]


def tensor_index(bits) -> int:
    """Index of a spin product state in the standard Kronecker basis.

    Site 1 is the first tensor factor and the single-site basis is (up,
    down), so a word maps to the binary number whose site-l digit is 0 for
    spin up (occupied) and 1 for spin down.
    """
    idx = 0
    for b in bits:
        idx = (idx << 1) | (0 if b else 1)
    return idx


def sector_permutation(n: int) -> np.ndarray:
    """perm[i] = tensor index of the i-th basis vector in sector order."""
    return np.array([tensor_index(unrank(n, p, r)) for p, r in sector_order(n)])


def assemble_density_matrix(modes: ModeTable, factors: SteadyFactors,
                            order: str = "tensor",
                            cache: MinorCache | None = None) -> np.ndarray:
    """Dense 2^n x 2^n stationary state in the spin basis.

    ``order="sector"`` keeps the natural block-diagonal layout (weights
    ascending, combinadic rank within each sector); ``order="tensor"``
    permutes to the standard Kronecker spin basis.
    """
    n = modes.n
    if n > DENSE_LIMIT:
        raise ValueError(f"dense assembly limited to n <= {DENSE_LIMIT}")
    if order not in ("sector", "tensor"):
        raise ValueError(f"unknown order {order!r}")
    cache = cache if cache is not None else MinorCache(modes)
    dim = 2 ** n
    rho = np.zeros((dim, dim))
    off = 0
    blocks = []
    for p in range(n + 1):
        blk = block_s(modes, factors, p, cache)
        blocks.append(blk)
        rho[off:off + blk.shape[0], off:off + blk.shape[0]] = blk
        off += blk.shape[0]
    if order == "sector":
        return rho
    perm = sector_permutation(n)
    out = np.zeros((dim, dim))
    out[np.ix_(perm, perm)] = rho
    return out
