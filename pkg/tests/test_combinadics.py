import math
from itertools import combinations, product

import pytest

from openxx.combinadics import (comb, index_family, positions, rank,
                                sector_words, unrank, weight)


def test_rank_small_tables():
    # the full weight-2 class of a 3-site chain
    assert rank((1, 1, 0)) == 1
    assert rank((1, 0, 1)) == 2
    assert rank((0, 1, 1)) == 3
    assert rank((0, 1)) == 2
    assert rank((0, 0, 0, 0)) == 1
    assert rank((1, 0, 0)) == 1 and rank((0, 1, 0)) == 2 and rank((0, 0, 1)) == 3


def test_comb_convention():
    assert comb(2, 3) == 0
    assert comb(-1, 0) == 0  # a < b extended to negative arguments
    assert comb(3, -1) == 0
    assert comb(5, 2) == 10


def test_unrank_golden_last_of_class():
    # enumerate all weight-4 words of 8 sites, sort by rank: the last one has
    # its ones packed at the top sites
    words = sorted((w for w in product((0, 1), repeat=8) if weight(w) == 4),
                   key=rank)
    assert rank(words[-1]) == math.comb(8, 4) == 70
    assert unrank(8, 4, 70) == words[-1]
    assert positions(words[-1]) == (5, 6, 7, 8)


@pytest.mark.parametrize("n", range(1, 13))
def test_bijection_exhaustive(n):
    seen = {}
    for word in product((0, 1), repeat=n):
        p = weight(word)
        r = rank(word)
        assert 1 <= r <= math.comb(n, p)
        assert (p, r) not in seen
        seen[(p, r)] = word
        assert unrank(n, p, r) == word
    assert len(seen) == 2 ** n


def test_unrank_range_errors():
    with pytest.raises(ValueError):
        unrank(4, 2, 0)
    with pytest.raises(ValueError):
        unrank(4, 2, 7)
    with pytest.raises(ValueError):
        unrank(4, 5, 1)


def test_sector_words_order():
    words = sector_words(5, 2)
    assert len(words) == 10
    assert [rank(w) for w in words] == list(range(1, 11))


def test_family_tables_three_sites():
    # (r,s)=(1,2): the p=1 families are singletons with ranks 3/2/1
    assert index_family(3, 1, 1, 2, 0, 0).ranks == (3,)
    assert index_family(3, 1, 1, 2, 0, 1).ranks == (2,)
    assert index_family(3, 1, 1, 2, 1, 0).ranks == (1,)
    assert index_family(3, 1, 1, 2, 1, 1).ranks == ()
    assert index_family(3, 2, 1, 2, 0, 1).ranks == (3,)
    assert index_family(3, 2, 1, 2, 1, 0).ranks == (2,)
    assert index_family(3, 2, 1, 2, 1, 1).ranks == (1,)
    assert index_family(3, 0, 1, 2, 0, 0).ranks == (1,)
    assert index_family(3, 3, 1, 2, 1, 1).ranks == (1,)
    # (r,s)=(1,3)
    assert index_family(3, 1, 1, 3, 0, 0).ranks == (2,)
    assert index_family(3, 1, 1, 3, 0, 1).ranks == (3,)
    assert index_family(3, 1, 1, 3, 1, 0).ranks == (1,)
    assert index_family(3, 2, 1, 3, 0, 1).ranks == (3,)
    assert index_family(3, 2, 1, 3, 1, 0).ranks == (1,)
    assert index_family(3, 2, 1, 3, 1, 1).ranks == (2,)
    # (r,s)=(2,3)
    assert index_family(3, 1, 2, 3, 0, 0).ranks == (1,)
    assert index_family(3, 1, 2, 3, 0, 1).ranks == (3,)
    assert index_family(3, 1, 2, 3, 1, 0).ranks == (2,)
    assert index_family(3, 2, 2, 3, 0, 1).ranks == (2,)
    assert index_family(3, 2, 2, 3, 1, 0).ranks == (1,)
    assert index_family(3, 2, 2, 3, 1, 1).ranks == (3,)


def test_family_closed_forms_match_direct_rank():
    for n in range(2, 11):
        for r, s in combinations(range(1, n + 1), 2):
            for p in range(n + 1):
                for occ_r, occ_s in product((0, 1), repeat=2):
                    fam = index_family(n, p, r, s, occ_r, occ_s)
                    free = p - occ_r - occ_s
                    expected = comb(n - 2, free)
                    assert len(fam) == expected
                    for bits, rk in fam.members:
                        assert weight(bits) == p
                        assert bits[r - 1] == occ_r and bits[s - 1] == occ_s
                        assert rk == rank(bits)
                    assert list(fam.ranks) == sorted(fam.ranks)


def test_family_positional_alignment():
    for n in (4, 6, 8):
        for p in range(1, n):
            for r, s in ((1, 2), (2, n - 1), (1, n)):
                fams = {occ: index_family(n, p, r, s, *occ)
                        for occ in product((0, 1), repeat=2)}
                sizes = {occ: len(fams[occ]) for occ in fams}
                for k in range(min(sizes[(1, 0)], sizes[(0, 1)])):
                    b10 = list(fams[(1, 0)].members[k][0])
                    b01 = list(fams[(0, 1)].members[k][0])
                    b10[r - 1], b10[s - 1] = 0, 1
                    assert tuple(b10) == tuple(b01)


def test_family_input_validation():
    with pytest.raises(ValueError):
        index_family(4, 2, 3, 2, 0, 0)
    with pytest.raises(ValueError):
        index_family(4, 2, 1, 2, 2, 0)
    assert len(index_family(4, 0, 1, 2, 1, 1)) == 0
