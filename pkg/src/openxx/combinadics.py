"""Combinadic numbering of occupation words and reduced index families.

A word with p ones at sites i_1 < ... < i_p (1-based) gets the rank

    rank = 1 + sum_l C(i_l - 1, l),          1 <= rank <= C(n, p),

with the convention C(a, b) = 0 whenever b < 0 or a < b. The inverse is the
standard greedy combinadic decoding. Index families enumerate, for a site
pair (r, s) and prescribed occupations there, all words of weight p that are
free on the remaining n-2 sites; their ranks are evaluated by closed forms
that split the rank sum at the pivots r and s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations


def comb(a: int, b: int) -> int:
    """Binomial coefficient extended by C(a, b) = 0 for b < 0 or a < b."""
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def weight(bits) -> int:
    return sum(bits)


def positions(bits) -> tuple[int, ...]:
    """1-based sites of the ones, ascending."""
    return tuple(i for i, b in enumerate(bits, start=1) if b)


def rank(bits) -> int:
    """Combinadic rank of `bits` within its weight class (1-based)."""
    return 1 + sum(comb(i - 1, l) for l, i in enumerate(positions(bits), start=1))


def rank_of_positions(pos) -> int:
    """Rank of the word whose ones sit at the ascending 1-based sites `pos`."""
    return 1 + sum(comb(i - 1, l) for l, i in enumerate(pos, start=1))


def unrank(n: int, p: int, r: int) -> tuple[int, ...]:
    """Word of length n, weight p and rank r (greedy combinadic decoding)."""
    if not 0 <= p <= n:
        raise ValueError(f"weight {p} out of range for n={n}")
    if not 1 <= r <= math.comb(n, p):
        raise ValueError(f"rank {r} out of range 1..C({n},{p})")
    rem = r - 1
    bits = [0] * n
    hi = n
    for l in range(p, 0, -1):
        # largest site i <= hi with C(i-1, l) <= rem
        i = hi
        while comb(i - 1, l) > rem:
            i -= 1
        bits[i - 1] = 1
        rem -= comb(i - 1, l)
        hi = i - 1
    return tuple(bits)


@lru_cache(maxsize=None)
def sector_words(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    """All weight-p words of length n in rank order."""
    return tuple(unrank(n, p, r) for r in range(1, math.comb(n, p) + 1))


@dataclass(frozen=True)
class IndexFamily:
    """Weight-p words with fixed bits at the site pair (r, s).

    ``members`` holds (bits, rank) in increasing rank order; the k-th members
    of the four (occ_r, occ_s) families at the same (n, p, r, s) share the
    same pattern on the sites other than r and s.
    """

    r: int
    s: int
    occ_r: int
    occ_s: int
    members: tuple[tuple[tuple[int, ...], int], ...]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(rk for _, rk in self.members)


def _split_rank(free: tuple[int, ...], pivots: tuple[int, ...]) -> int:
    """Closed-form rank of the word with ones at `free` plus fixed `pivots`.

    `free` are the ascending positions chosen outside the pivots; each pivot
    contributes C(pivot-1, m+1) where m counts the ones preceding it, and the
    free positions after a pivot have their binomial's lower index shifted up
    by one, matching the pivot-split form of the rank sum.
    """
    total = 1
    shift = 0
    k = 0  # consumed free positions
    for piv in pivots:
        while k < len(free) and free[k] < piv:
            total += comb(free[k] - 1, k + 1 + shift)
            k += 1
        total += comb(piv - 1, k + shift + 1)
        shift += 1
    for j in range(k, len(free)):
        total += comb(free[j] - 1, j + 1 + shift)
    return total


def index_family(n: int, p: int, r: int, s: int, occ_r: int, occ_s: int) -> IndexFamily:
    """Family of weight-p words with bits (occ_r, occ_s) fixed at sites (r, s).

    Empty families (p - occ_r - occ_s outside 0..n-2) are returned as such,
    not treated as errors.
    """
    if not (1 <= r < s <= n):
        raise ValueError(f"need 1 <= r < s <= n, got r={r}, s={s}, n={n}")
    if occ_r not in (0, 1) or occ_s not in (0, 1):
        raise ValueError("occupations must be 0 or 1")
    free_count = p - occ_r - occ_s
    reduced_sites = tuple(i for i in range(1, n + 1) if i != r and i != s)
    members = []
    if 0 <= free_count <= n - 2:
        pivots = tuple(x for x, occ in ((r, occ_r), (s, occ_s)) if occ)
        # colex order on the free choices <=> increasing full-word rank
        for free in sorted(combinations(reduced_sites, free_count),
                           key=lambda t: t[::-1]):
            bits = [0] * n
            for i in free:
                bits[i - 1] = 1
            if occ_r:
                bits[r - 1] = 1
            if occ_s:
                bits[s - 1] = 1
            members.append((tuple(bits), _split_rank(free, pivots)))
    return IndexFamily(r=r, s=s, occ_r=occ_r, occ_s=occ_s, members=tuple(members))
