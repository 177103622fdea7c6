from __future__ import annotations

import random
from itertools import product

import pytest

from wtensor import qcharade as qc
from wtensor.errors import DomainError, SizeError
from wtensor.exactmath import LAM, gauss_multinomial
from wtensor.hurwitz import poly_seq
from wtensor.species import SpeciesCard


def span_oracle(q, n):
    """Every subspace as a frozenset of vectors, from spans of all vector pairs/triples."""
    vecs = list(product(range(q), repeat=n))
    spaces = {frozenset([(0,) * n])}
    frontier = set(spaces)
    while frontier:
        nxt = set()
        for S in frontier:
            for v in vecs:
                if v in S:
                    continue
                T = set(S)
                for c in range(1, q):
                    T |= {tuple((s[i] + c * v[i]) % q for i in range(n)) for s in S}
                T = frozenset(T)
                if T not in spaces:
                    spaces.add(T)
                    nxt.add(T)
        frontier = nxt
    return spaces


@pytest.mark.parametrize("q,n", [(2, 0), (2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (3, 3)])
def test_subspace_count_matches_span_oracle(q, n):
    lat = qc.enumerate_subspaces(q, n)
    oracle = span_oracle(q, n)
    assert len(lat) == len(oracle)
    assert len(lat) == sum(gauss_multinomial(n, (k, n - k), q) for k in range(n + 1))


def test_subspace_examples():
    assert len(qc.enumerate_subspaces(2, 2)) == 5
    assert len(qc.enumerate_subspaces(3, 0)) == 1
    assert qc.enumerate_subspaces(3, 2).count_by_dim() == [1, 4, 1]


def test_partial_order():
    lat = qc.enumerate_subspaces(2, 3)
    for i in range(len(lat)):
        assert lat.leq(lat.zero, i) and lat.leq(i, lat.top) and lat.leq(i, i)
        for j in range(len(lat)):
            if lat.leq(i, j) and lat.leq(j, i):
                assert i == j
            assert lat.meet_dim(i, j) + lat.join_dim(i, j) == lat.dims[i] + lat.dims[j]


def test_enumeration_guards():
    with pytest.raises(DomainError, match="q must be prime for enumeration"):
        qc.enumerate_subspaces(4, 2)
    with pytest.raises(DomainError):
        qc.enumerate_subspaces(7, 2)
    with pytest.raises(SizeError):
        qc.enumerate_subspaces(2, 5)


def test_tensor_dim_anchors():
    ones = SpeciesCard.ones(4)
    assert qc.q_tensor_dim(ones, ones, 1, qc.enumerate_subspaces(2, 1)) == 3
    assert qc.q_tensor_dim(ones, ones, 1, qc.enumerate_subspaces(2, 2)) == 12
    f, g = SpeciesCard((3, 1)), SpeciesCard((5, 1))
    assert qc.q_tensor_dim(f, g, LAM, qc.enumerate_subspaces(2, 0)) == 15


def test_qmul_examples():
    assert qc.q_hurwitz_mul(poly_seq([1, 1, 1]), poly_seq([1, 1, 1]), 1, 2)[2] == 12
    f = poly_seq([2, 3, 5, 7])
    assert qc.q_hurwitz_mul(f, poly_seq([1, 0, 0, 0]), LAM, 6) == f


@pytest.mark.parametrize("q", [2, 3])
def test_dim_check(q):
    rng = random.Random(q)
    for _ in range(3):
        f = SpeciesCard(tuple(rng.randint(0, 4) for _ in range(5)))
        g = SpeciesCard(tuple(rng.randint(0, 4) for _ in range(5)))
        assert qc.dim_check(f, g, LAM, q, 4).passed


def test_mflg_examples():
    ones = SpeciesCard.ones(4)
    lat1 = qc.enumerate_subspaces(2, 1)
    assert qc.mflg_weighted_count([ones, ones], 1, lat1) == 3
    assert len(qc.mflg_enumerate(3, qc.enumerate_subspaces(2, 0))) == 1
    lat2 = qc.enumerate_subspaces(2, 2)
    via_product = qc.q_hurwitz_mul(qc.q_hurwitz_mul(ones, ones, 1, 2), ones.to_wseq(), 1, 2)[2]
    assert qc.mflg_weighted_count([ones] * 3, 1, lat2) == via_product
    with pytest.raises(SizeError):
        qc.mflg_enumerate(4, lat1)


def test_flag3_bookkeeping():
    for n in range(4):
        assert qc.check_flag3_bookkeeping(qc.enumerate_subspaces(2, n)).passed


def test_spes_examples():
    lat1, lat2 = qc.enumerate_subspaces(2, 1), qc.enumerate_subspaces(2, 2)
    assert qc.spes_census(lat1, 1, 1) == {1: 1}
    assert qc.spes_census(lat2, 1, 1) == {0: 3}
    assert qc.spes_census(lat1, 0, 1) == {0: 1}


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_spes_matches_literal_enumeration(q, n):
    lat = qc.enumerate_subspaces(q, n)
    for a in range(n + 1):
        for b in range(n + 1):
            if q ** (n * (a + b)) > 300_000:
                continue
            assert qc.spes_census(lat, a, b) == qc.spes_bruteforce(lat, a, b)
            assert qc.spes_census(lat, a, b) == qc.spes_closed_form(n, a, b, q)


def test_spes_contraction_reproduces_tensor():
    f, g = SpeciesCard((1, 2, 0, 3)), SpeciesCard((2, 1, 1, 1))
    for n in range(3):
        lat = qc.enumerate_subspaces(2, n)
        assert qc.spes_contraction(f, g, LAM, lat) == qc.q_tensor_dim(f, g, LAM, lat)


def test_gl_order():
    assert qc.gl_order(1, 2) == 1
    assert qc.gl_order(2, 2) == 6
    assert qc.gl_order(2, 3) == 48


def e(i, n=4):
    return poly_seq([1 if k == i else 0 for k in range(n)])


def test_q_product_not_associative_for_nonzero_lambda():
    # (e1 . e1) . e2 and e1 . (e1 . e2) at n = 2, q = 2
    m = lambda a, b: qc.q_hurwitz_mul(a, b, LAM, 2)
    left, right = m(m(e(1), e(1)), e(2)), m(e(1), m(e(1), e(2)))
    assert left[2] == 6 * LAM**2
    assert right[2] == 9 * LAM**2


def test_q_product_associative_at_zero():
    rng = random.Random(0)
    from wtensor.hurwitz import random_poly_seq

    for q in (2, 3, 6):
        m = lambda a, b: qc.q_hurwitz_mul(a, b, 0, q)
        for _ in range(5):
            f, g, h = (random_poly_seq(rng, 6) for _ in range(3))
            assert m(m(f, g), h) == m(f, m(g, h))


def test_chain_counts_track_each_bracketing():
    r = qc.conjecture_evidence(LAM, 2, 6, 5, seed=1, bracket_n=3, bracket_trials=2)
    checks = {c["op"]: c["pass"] for c in r.details["checks"]}
    assert checks["q_chains_match_product"] is True
    assert checks["q_associativity"] is False
    assert r.details["associativity_failures"] == 5


def test_conjecture_budget():
    with pytest.raises(SizeError):
        qc.conjecture_evidence(LAM, 2, 11, 1)
