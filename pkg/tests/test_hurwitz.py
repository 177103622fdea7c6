from __future__ import annotations

import random
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wtensor import hurwitz as hw
from wtensor.errors import DomainError
from wtensor.exactmath import LAM, RingPoly
from wtensor.matrix import Matrix

poly = st.lists(st.integers(-3, 3), max_size=3).map(RingPoly)


def seqs(n):
    return st.lists(poly, min_size=n, max_size=n).map(hw.poly_seq)


def oracle_mul(f, g, lam, n_len):
    """Direct triple sum with factorials; shares no code with the library convolution."""
    out = []
    for n in range(n_len):
        acc = RingPoly([])
        for r in range(n + 1):
            for s in range(n + 1 - r):
                t = n - r - s
                c = factorial(n) // (factorial(r) * factorial(s) * factorial(t))
                acc = acc + c * lam**t * f[r + t] * g[s + t]
        out.append(acc)
    return hw.poly_seq(out)


@pytest.mark.parametrize("lam", [0, 1, 2, -1, LAM, 1 + 2 * LAM])
def test_mul_matches_oracle(lam):
    rng = random.Random(str(lam))
    for _ in range(10):
        f, g = hw.random_poly_seq(rng, 8), hw.random_poly_seq(rng, 8)
        assert hw.hurwitz_mul(f, g, lam) == oracle_mul(f, g, lam if lam != 0 else RingPoly([]), 8)


def test_mul_examples():
    assert hw.hurwitz_mul(hw.ones(8), hw.ones(8), 0) == hw.poly_seq([2**n for n in range(8)])
    assert hw.hurwitz_mul(hw.ones(8), hw.ones(8), 1) == hw.poly_seq([3**n for n in range(8)])
    f = hw.squares(6)
    assert hw.hurwitz_mul(f, hw.unit_seq(6), LAM) == f


def test_trunc_mismatch():
    with pytest.raises(DomainError):
        hw.hurwitz_mul(hw.ones(3), hw.ones(4), 1)


@given(seqs(6), seqs(6), seqs(6))
def test_associative_formal(f, g, h):
    m = lambda a, b: hw.hurwitz_mul(a, b, LAM)
    assert m(m(f, g), h) == m(f, m(g, h))


@given(seqs(6), seqs(6))
def test_commutative_and_unital(f, g):
    assert hw.hurwitz_mul(f, g, LAM) == hw.hurwitz_mul(g, f, LAM)
    assert hw.hurwitz_mul(hw.unit_seq(6), f, LAM) == f


@given(seqs(6), seqs(6), st.integers(-3, 3))
def test_formal_specializes(f, g, k):
    formal = hw.hurwitz_mul(f, g, LAM)
    ev = lambda s: [p(k) if isinstance(p, RingPoly) else p for p in s.entries]
    fk = hw.poly_seq([RingPoly([sum(c * k**i for i, c in enumerate(p.coeffs))]) for p in f.entries])
    gk = hw.poly_seq([RingPoly([sum(c * k**i for i, c in enumerate(p.coeffs))]) for p in g.entries])
    assert ev(formal) == ev(hw.hurwitz_mul(fk, gk, k))


@given(seqs(7), seqs(7))
def test_bialgebra_route(f, g):
    for lam in (0, 1, LAM):
        assert hw.convolution_via_bialgebra(f, g, lam) == hw.hurwitz_mul(f, g, lam)


def test_delta_power_is_trinomial():
    d = hw.delta_power(4, LAM)
    for (i, j), c in d.items():
        t = i + j - 4
        assert c == comb(4, t) * comb(4 - t, i - t) * LAM**t


def test_matrix_entries_noncommutative_but_associative():
    rng = random.Random(1)
    mat = hw.MatrixAlgebra(2)
    f, g, h = (hw.random_seq(rng, 5, mat) for _ in range(3))
    m = lambda a, b: hw.hurwitz_mul(a, b, LAM)
    assert m(m(f, g), h) == m(f, m(g, h))
    assert m(f, g) != m(g, f)


def test_pointwise_examples():
    n = 6
    assert hw.pointwise_mul(hw.ones(n), hw.ones(n)) == hw.ones(n)
    assert hw.pointwise_mul(hw.iota(n), hw.iota(n)) == hw.squares(n)


def test_shift_and_difference_examples():
    assert hw.shift_derivation(hw.ones(5)) == hw.ones(4)
    assert hw.difference_derivation(hw.ones(5)) == hw.zeros(4)
    assert hw.difference_derivation(hw.squares(5)) == hw.poly_seq([1, 3, 5, 7])
    with pytest.raises(DomainError):
        hw.shift_derivation(hw.poly_seq([]))


def test_shift_leibniz_witness():
    f = hw.ones(6)
    prod = hw.hurwitz_mul(f, f, 1)
    assert hw.shift_derivation(prod) == hw.poly_seq([3 ** (n + 1) for n in range(5)])


def test_partial_sums_examples():
    assert hw.partial_sums(hw.ones(5)) == hw.poly_seq([0, 1, 2, 3, 4])
    assert hw.partial_sums(hw.zeros(5)) == hw.zeros(5)
    P1 = hw.partial_sums(hw.ones(6))
    assert hw.pointwise_mul(P1, P1) == hw.squares(6)


def _samples(n=6, k=5, seed=0):
    rng = random.Random(seed)
    return [hw.random_poly_seq(rng, n) for _ in range(k)]


def test_derivation_checks():
    fin = hw.FinPointAlg(6)
    rng = random.Random(2)
    s = [fin.random(rng) for _ in range(5)]
    d = hw.cyclic_difference(6)
    assert hw.check_weighted_derivation(fin, d, 1, s).passed
    bad = hw.check_weighted_derivation(fin, d, 0, s)
    assert not bad.passed and "a" in bad.counterexample and "lhs" in bad.counterexample
    assert hw.check_weighted_derivation(fin, hw.zero_map(fin), LAM, s).passed
    pw = hw.PointwiseSeqAlgebra(hw.POLY)
    assert hw.check_weighted_derivation(pw, hw.DIFFERENCE, 1, _samples()).passed
    assert hw.check_weighted_derivation(hw.HurwitzAlgebra(hw.POLY, LAM), hw.SHIFT, LAM, _samples()).passed


def test_rb_checks():
    pw = hw.PointwiseSeqAlgebra(hw.POLY)
    s = _samples()
    assert hw.check_rb_operator(pw, hw.PARTIAL_SUMS, 1, s).passed
    assert not hw.check_rb_operator(pw, hw.PARTIAL_SUMS, 0, s).passed
    assert hw.check_rb_operator(pw, hw.zero_map(pw), 5, s).passed


def test_additivity():
    pw = hw.PointwiseSeqAlgebra(hw.POLY)
    for op in (hw.PARTIAL_SUMS, hw.DIFFERENCE, hw.SHIFT):
        assert hw.check_additive(op, pw, _samples()).passed


def test_d_star_examples():
    fin = hw.FinPointAlg(5)
    d = hw.cyclic_difference(5)
    a = (0, 1, 4, 9, 16)
    ds = hw.d_star(a, d, 3, fin)
    assert ds[2] == d(d(a))
    # generalized Leibniz on a factorization a = b * c
    b, c = (0, 1, 2, 3, 4), (0, 1, 2, 3, 4)
    assert fin.mul(b, c) == a
    assert hw.leibniz_power(b, c, d, 1, 2, fin) == ds[2]
    z = hw.d_star(a, hw.zero_map(fin), 4, fin)
    assert z.entries == (a, (0,) * 5, (0,) * 5, (0,) * 5)


def test_d_star_shift_coaction():
    f = hw.squares(6)
    ds = hw.d_star(f, hw.SHIFT, 6, hw.HurwitzAlgebra(hw.POLY, LAM))
    assert ds[0] == f
    for m in range(6):
        for n in range(6 - m):
            assert ds[m][n] == f[m + n]
    dds = hw.d_star(ds, hw.SHIFT, 3, hw.HurwitzAlgebra(hw.HurwitzAlgebra(hw.POLY, LAM), LAM))
    assert dds[1][1] == ds[2]


def test_d_star_morphism_matrix_entries():
    rng = random.Random(3)
    mat = hw.MatrixAlgebra(2)
    alg = hw.HurwitzAlgebra(mat, LAM)
    pairs = [(hw.random_seq(rng, 5, mat), hw.random_seq(rng, 5, mat)) for _ in range(5)]
    assert hw.check_d_star_morphism(alg, hw.SHIFT, LAM, pairs, 4).passed


def test_diamond_examples():
    pw = hw.PointwiseSeqAlgebra(hw.POLY)
    one = hw.ones(6)
    dd = hw.diamond_mul(one, one, hw.PARTIAL_SUMS, 1, pw)
    assert dd == hw.poly_seq([2 * n + 1 for n in range(6)])
    assert hw.diamond_mul(hw.zeros(6), hw.squares(6), hw.PARTIAL_SUMS, 1, pw) == hw.zeros(6)
    dia = hw.DiamondAlgebra(pw, hw.PARTIAL_SUMS, 1)
    assert dia.mul(dia.mul(one, one), one) == dia.mul(one, dia.mul(one, one))
    with pytest.raises(DomainError):
        dia.one_like(one)


def test_lift():
    fin = hw.FinPointAlg(3)
    f = hw.poly_seq([1, 2, 3])
    assert hw.lifted_rb(f, hw.zero_map(hw.POLY)) == hw.poly_seq([0, 1, 2, 3])
    rng = random.Random(4)
    for lam in (0, 1, 2, LAM):
        P = hw.scaled_op(hw.finite_partial_sums(3), lam, fin)
        samples = [hw.random_seq(rng, 6, fin, bound=3) for _ in range(4)]
        assert hw.check_lifted_rb(fin, P, lam, samples).passed


def test_lift_with_non_rb_base_fails():
    fin = hw.FinPointAlg(3)
    rng = random.Random(5)
    samples = [hw.random_seq(rng, 5, fin, bound=3) for _ in range(4)]
    r = hw.check_lifted_rb(fin, hw.finite_partial_sums(3), 0, samples)
    assert not r.passed


def test_k_subalgebra():
    fin = hw.FinPointAlg(4)
    P = hw.finite_partial_sums(4)
    assert hw.k_subalgebra_check(fin, P, 1, 5, 50).passed
    good = hw.k_member_from_top((1, 2, 3, 4), P, 5)
    bad = list(good)
    bad[0] = (9, 9, 9, 9)
    r = hw.k_subalgebra_check(fin, P, 1, 5, 2, candidates=[bad])
    assert not r.passed and r.counterexample["check"] == "membership"


def test_wseq_entry_mismatch():
    with pytest.raises(DomainError):
        hw.WSeq((1, 2), hw.POLY)._check(hw.WSeq(((1, 2), (3, 4)), hw.FinPointAlg(2)))


def test_table_op():
    m = Matrix([[0, 1], [1, 0]])
    op = hw.table_op(m, "swap")
    assert op((1, 2)) == (2, 1)
