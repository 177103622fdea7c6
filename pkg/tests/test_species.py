from __future__ import annotations

import random
from itertools import combinations, permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wtensor import hurwitz as hw
from wtensor import species as sp
from wtensor.errors import DomainError, SizeError, UnsupportedModeError
from wtensor.exactmath import LAM, RingPoly, factorial, multinomial

cards = st.lists(st.integers(0, 3), min_size=7, max_size=7).map(lambda c: sp.SpeciesCard(tuple(c)))


def literal_count(fc, gc, lam, n):
    """Walk every cover and coloring one at a time."""
    total = 0
    for digits in product(range(3), repeat=n):
        u = sum(1 for d in digits if d != 1)
        v = sum(1 for d in digits if d != 0)
        c = sum(1 for d in digits if d == 2)
        total += lam**c * fc[u] * gc[v]
    return total


def test_enumeration_examples():
    one = sp.LWeight(1)
    zero = sp.LWeight(0)
    assert len(sp.l_tensor_structures(sp.E, sp.E, zero, 1)) == 2
    assert len(sp.l_tensor_structures(sp.E, sp.E, one, 1)) == 3
    F, G = sp.synthetic([2, 1]), sp.synthetic([3, 1])
    assert len(sp.l_tensor_structures(F, G, one, 0)) == 6


def test_formal_mode_rejected():
    with pytest.raises(UnsupportedModeError):
        sp.l_tensor_structures(sp.E, sp.E, sp.LWeight(), 1)


def test_label_cap():
    with pytest.raises(SizeError):
        sp.l_tensor_structures(sp.E, sp.E, sp.LWeight(1), 9)


@pytest.mark.parametrize("lam", [0, 1, 2, 3])
def test_kernel_count_matches_literal_walk(lam):
    rng = random.Random(lam)
    for _ in range(5):
        f, g = sp.SpeciesCard.random(rng, 7), sp.SpeciesCard.random(rng, 7)
        for n in range(6):
            got = sp.count_l_tensor_structures(sp.synthetic(f.card), sp.synthetic(g.card), sp.LWeight(lam), n)
            assert got == literal_count(f.card, g.card, lam, n)


def test_explicit_structures_match_cards():
    for F in (sp.E, sp.LINEAR_ORDERS, sp.subsets_species(1)):
        for G in (sp.E, sp.J, sp.LINEAR_ORDERS):
            f, g = F.card(5), G.card(5)
            for lam in (0, 2):
                for n in range(4):
                    structs = sp.l_tensor_structures(F, G, sp.LWeight(lam), n)
                    assert len(structs) == sp.l_tensor_card(f, g, lam, n)
                    assert len(set(structs)) == len(structs)


def test_card_examples():
    ones = sp.SpeciesCard.ones(4)
    assert sp.l_tensor_card(ones, ones, 1, 2) == 9
    assert sp.l_tensor_card(ones, ones, 0, 3) == 8
    f, g = sp.SpeciesCard((2, 5)), sp.SpeciesCard((3, 7))
    assert sp.l_tensor_card(f, g, LAM, 0) == 6
    with pytest.raises(DomainError):
        sp.l_tensor_card(f, g, 1, 2)


@given(cards, cards)
def test_card_is_hurwitz_product(f, g):
    assert list(sp.l_tensor_seq(f, g, LAM).card) == list(hw.hurwitz_mul(f.to_wseq(), g.to_wseq(), LAM).entries)


def test_species_card_validation():
    with pytest.raises(DomainError):
        sp.SpeciesCard((1, -1))
    with pytest.raises(DomainError):
        sp.SpeciesCard((1, 2))[5]


def test_transport():
    rng = random.Random(0)
    for F in (sp.E, sp.J, sp.LINEAR_ORDERS, sp.subsets_species(2), sp.synthetic([1, 2, 3, 4])):
        assert sp.check_transport(F, 3, rng).passed


def test_builtin_counts():
    assert sp.LINEAR_ORDERS.card(5).card == (1, 1, 2, 6, 24)
    assert sp.subsets_species(2).card(5).card == (0, 0, 1, 3, 6)
    assert sp.J.card(3).card == (1, 0, 0)


def test_nfold_examples():
    ones = sp.SpeciesCard.ones(4)
    f = sp.SpeciesCard((1, 4, 2, 7))
    assert sp.nfold_tensor_card([f], LAM, 3) == 7
    assert sp.nfold_tensor_card([ones] * 3, 1, 2) == 49
    assert sp.nfold_tensor_card([ones] * 3, 0, 2) == 9
    with pytest.raises(SizeError):
        sp.nfold_tensor_card([ones] * 4, 1, 5)


def literal_nfold(fs, lam, n):
    """Assign each label a nonempty subset S of the factors, one map at a time."""
    k = len(fs)
    subsets = [S for r in range(1, k + 1) for S in combinations(range(k), r)]
    total = RingPoly([])
    for assign in product(subsets, repeat=n):
        w = sum(len(S) - 1 for S in assign)
        term = lam**w
        for i in range(k):
            term = term * fs[i][sum(1 for S in assign if i in S)]
        total = total + term
    return total


def test_nfold_matches_literal():
    rng = random.Random(7)
    for k in (2, 3, 4):
        fs = [sp.SpeciesCard.random(rng, 5) for _ in range(k)]
        for n in range(4):
            assert sp.nfold_tensor_card(fs, LAM, n) == literal_nfold(fs, LAM, n)


def test_bracket_insertions():
    assert sp.bracket_insertions(3) == [(0, 2), (1, 3)]
    assert sp.bracket_insertions(4) == [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]


def test_mfil_examples():
    ones = sp.SpeciesCard.ones(4)
    assert sp.mfil_weighted_count([ones, ones], 1, 2) == 9
    for k in (1, 2, 3):
        assert len(sp.mfil_enumerate(k, ())) == 1
    # |mFil_3(X)| = sum over chains U1 <= U2 <= X of 2^|U1| 2^|U2|
    X = (1, 2, 3)
    expect = 0
    subsets = [frozenset(c) for r in range(4) for c in combinations(X, r)]
    for u1 in subsets:
        for u2 in subsets:
            if u1 <= u2:
                expect += 2 ** len(u1) * 2 ** len(u2)
    assert len(sp.mfil_enumerate(3, X)) == expect
    with pytest.raises(SizeError):
        sp.mfil_enumerate(5, 2)


def test_mfil_validation():
    X = frozenset({1})
    with pytest.raises(DomainError):
        sp.MFil(X, (frozenset(), X), (X,))


def test_flag3_example():
    X = frozenset({1, 2})
    m = sp.MFil(X, (frozenset(), frozenset({1}), X, X), (frozenset(), frozenset(), frozenset({1})))
    p = sp.flag3_to_partition(m)
    assert p.block("12") == {1} and p.block("23") == {2}
    assert all(not p.block(b) for b in sp.BLOCKS3 if b not in ("12", "23"))
    assert sp.partition_to_flag3(p) == m
    e = sp.mfil_enumerate(3, ())
    assert len(e) == 1 and all(not b for b in sp.flag3_to_partition(e[0]).blocks)


def test_flag3_weight_and_sizes():
    # weight = |A12|+|A13|+|A23|+2|A123|, sizes are the factor multiplicities
    for m in sp.mfil_enumerate(3, 3):
        p = sp.flag3_to_partition(m)
        a = {b: len(p.block(b)) for b in sp.BLOCKS3}
        assert m.weight() == a["12"] + a["13"] + a["23"] + 2 * a["123"]
        assert m.sizes() == tuple(sum(v for b, v in a.items() if str(i) in b) for i in (1, 2, 3))


def test_partition_validation():
    X = frozenset({1, 2})
    blocks = [frozenset({1})] * 2 + [frozenset()] * 5
    with pytest.raises(DomainError):
        sp.Partition7(X, tuple(blocks))


def test_venn_examples():
    b = sp.venn_bijection({1, 2}, {2, 3}, {3, 4})
    assert len(b.lhs) == len(b.rhs) == 2 and b.is_bijection()
    U = {1, 2, 3}
    b = sp.venn_bijection(U, U, U)
    assert len(b.lhs) == 6
    b = sp.venn_bijection({1}, {2}, {3})
    assert b.lhs == () and b.rhs == ()


def test_venn_random():
    rng = random.Random(0)
    for _ in range(50):
        U, V, W = ({x for x in range(8) if rng.random() < 0.5} for _ in range(3))
        assert sp.venn_bijection(U, V, W).is_bijection()


def literal_cov(a, b, n):
    out = {}
    for mu in permutations(range(n), a):
        for nu in permutations(range(n), b):
            if set(mu) | set(nu) == set(range(n)):
                c = len(set(mu) & set(nu))
                out[c] = out.get(c, 0) + 1
    return dict(sorted(out.items()))


def test_cov_examples():
    assert sp.cov_enumerate(1, 1, 1) == {1: 1}
    assert sp.cov_enumerate(1, 1, 2) == {0: 2}
    assert sp.cov_enumerate(0, 0, 0) == {0: 1}
    for a in range(4):
        for b in range(4):
            for n in range(5):
                assert sp.cov_enumerate(a, b, n) == literal_cov(a, b, n)


def test_cov_contraction():
    rng = random.Random(1)
    f, g = sp.SpeciesCard.random(rng, 6), sp.SpeciesCard.random(rng, 6)
    for n in range(5):
        assert sp.cov_contraction(f, g, LAM, n) == sp.l_tensor_card(f, g, LAM, n)


def test_delta_examples():
    assert sp.delta_fam(()) == {(0, 0): 1}
    assert sp.delta_fam((1,)) == {(0, 1): 1, (1, 0): 1, (1, 1): LAM}
    assert sp.delta_fam((1, 2))[(2, 2)] == LAM**2
    r = sp.delta_monoidal_check(1, 1)
    assert r.passed and r.count == (2 + LAM) ** 2
    assert sp.delta_monoidal_check(0, 0).passed
    assert sp.delta_monoidal_check(2, 1, 3).passed
    with pytest.raises(SizeError):
        sp.delta_monoidal_check(4, 3)


def test_leibniz_examples():
    ones = sp.SpeciesCard.ones(4)
    r = sp.shift_leibniz_card_check(ones, ones, 1, 1, 1)
    assert r.passed and r.count == 9
    rng = random.Random(2)
    f, g = sp.SpeciesCard.random(rng, 6), sp.SpeciesCard.random(rng, 6)
    for x in range(6):
        for y in range(6 - x):
            assert sp.shift_leibniz_card_check(f, g, LAM, x, y).passed


def test_mfil_census_matches_enumeration():
    rng = random.Random(3)
    for k in (1, 2, 3, 4):
        fs = [sp.SpeciesCard.random(rng, 5) for _ in range(k)]
        for n in range(4):
            assert sp.mfil_census_count(fs, LAM, n) == sp.mfil_weighted_count(fs, LAM, n)
