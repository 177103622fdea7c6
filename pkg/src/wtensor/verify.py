"""Curated verification suites, one per acceptance property.

Every suite draws its randomness from ``random.Random(f"{seed}:{name}")`` so a
seed fixes every sample of every suite independently of the others.  The
``full`` preset runs at the stated limits; ``quick`` uses smaller sample counts
with the same sizes where that is cheap.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable

from . import gphtensor as gph
from . import hurwitz as hw
from . import qcharade as qc
from . import species as sp
from .exactmath import LAM, ONE, ZERO, as_poly, gauss_multinomial
from .matrix import Matrix
from .mutations import MUTATIONS, mutated
from .report import Report, merge

LEVELS = ("quick", "full")


@dataclass(frozen=True)
class Suite:
    key: int
    name: str
    title: str
    fn: Callable
    presets: dict
    evidence: bool = False  # outcome is a finding, not a correctness gate


def _law(op: str, params: dict, items, fn) -> Report:
    """Apply fn to each item; fn returns None or a counterexample dict."""
    n = 0
    for idx, item in enumerate(items):
        ce = fn(item)
        n += 1
        if ce is not None:
            return Report(op, params, False, {"index": idx, **ce})
    return Report(op, params, True, count=n)


def expect_fail(report: Report, op: str | None = None) -> Report:
    """Pass exactly when ``report`` fails: a negative witness."""
    op = op or f"expect_fail:{report.op}"
    if report.passed:
        return Report(op, report.params, False, {"unexpected": "check passed", "params": report.params})
    return Report(op, report.params, True, details={"witness": report.counterexample})


# --- 1: Hurwitz algebra laws ----------------------------------------------------------


def suite_hurwitz_laws(rng: random.Random, triples: int, N: int) -> Report:
    lam = LAM
    params = {"triples": triples, "N": N, "lam": lam}
    unit = hw.unit_seq(N)
    samples = [tuple(hw.random_poly_seq(rng, N) for _ in range(3)) for _ in range(triples)]

    def assoc(t):
        f, g, h = t
        left = hw.hurwitz_mul(hw.hurwitz_mul(f, g, lam), h, lam)
        right = hw.hurwitz_mul(f, hw.hurwitz_mul(g, h, lam), lam)
        return None if left == right else {"f": f, "g": g, "h": h, "lhs": left, "rhs": right}

    def units(t):
        f = t[0]
        lu, ru = hw.hurwitz_mul(unit, f, lam), hw.hurwitz_mul(f, unit, lam)
        return None if lu == f == ru else {"f": f, "unit*f": lu, "f*unit": ru}

    def comm(t):
        f, g, _ = t
        a, b = hw.hurwitz_mul(f, g, lam), hw.hurwitz_mul(g, f, lam)
        return None if a == b else {"f": f, "g": g, "lhs": a, "rhs": b}

    few = samples[: max(1, triples // 10)]

    def bialg(t):
        f, g, _ = t
        a, b = hw.hurwitz_mul(f, g, lam), hw.convolution_via_bialgebra(f, g, lam)
        return None if a == b else {"f": f, "g": g, "hurwitz": a, "bialgebra": b}

    anchors = []
    for lam_v, expect in ((0, [2**n for n in range(N)]), (1, [3**n for n in range(N)])):
        got = hw.hurwitz_mul(hw.ones(N), hw.ones(N), lam_v)
        anchors.append(Report("ones_anchor", {"lam": lam_v}, got == hw.poly_seq(expect),
                              None if got == hw.poly_seq(expect) else {"got": got, "expected": expect}))
    shift_der = hw.check_weighted_derivation(
        hw.HurwitzAlgebra(hw.POLY, lam), hw.SHIFT, lam, (), pairs=[(t[0], t[1]) for t in few]
    )
    return merge("hurwitz_laws", params, [
        _law("associativity", params, samples, assoc),
        _law("unit", params, samples, units),
        _law("commutativity", params, samples, comm),
        _law("bialgebra_route", params, few, bialg),
        *anchors,
        shift_der,
    ])


# --- 2: weighted derivations and d* ------------------------------------------------------


def suite_derivations(rng: random.Random, pairs: int, N: int, M: int) -> Report:
    params = {"pairs": pairs, "N": N, "M": M}
    reports = []
    # cyclic difference on Z^6 is a 1-weighted derivation
    alg = hw.FinPointAlg(6)
    d = hw.cyclic_difference(6)
    fin_pairs = [(alg.random(rng), alg.random(rng)) for _ in range(pairs)]
    reports.append(hw.check_weighted_derivation(alg, d, 1, (), pairs=fin_pairs))
    reports.append(expect_fail(hw.check_weighted_derivation(alg, d, 0, (), pairs=fin_pairs)))
    reports.append(hw.check_weighted_derivation(alg, hw.zero_map(alg), LAM, (), pairs=fin_pairs[:10]))
    reports.append(hw.check_d_star_morphism(alg, d, 1, fin_pairs, N))
    # difference of sequences under the pointwise product
    pw = hw.PointwiseSeqAlgebra(hw.POLY)
    seq_pairs = [(hw.random_poly_seq(rng, M), hw.random_poly_seq(rng, M)) for _ in range(10)]
    reports.append(hw.check_weighted_derivation(pw, hw.DIFFERENCE, 1, (), pairs=seq_pairs))
    # 2x2 integer matrix entries, shift on (Mat^M, .^lam), lam formal
    mat = hw.MatrixAlgebra(2)
    halg = hw.HurwitzAlgebra(mat, LAM)
    mat_pairs = [(hw.random_seq(rng, M, mat), hw.random_seq(rng, M, mat)) for _ in range(pairs)]
    reports.append(hw.check_weighted_derivation(halg, hw.SHIFT, LAM, (), pairs=mat_pairs[:20]))
    reports.append(hw.check_d_star_morphism(halg, hw.SHIFT, LAM, mat_pairs, N))
    # d* with shift on sequences: d*(f)(m)(n) = f(m+n)
    def coaction(f):
        ds = hw.d_star(f, hw.SHIFT, M, hw.HurwitzAlgebra(hw.POLY, LAM))
        for m in range(M):
            for n in range(M - m):
                if ds[m][n] != f[m + n]:
                    return {"f": f, "m": m, "n": n, "lhs": ds[m][n], "rhs": f[m + n]}
        return None

    reports.append(_law("shift_coaction", params, [p[0] for p in seq_pairs], coaction))
    return merge("derivations", params, reports)


# --- 3: Rota-Baxter operators, lift, diamond ----------------------------------------------


def suite_rota_baxter(rng: random.Random, pairs: int, N: int, lift_samples: int) -> Report:
    params = {"pairs": pairs, "N": N, "lift_samples": lift_samples}
    reports = []
    pw = hw.PointwiseSeqAlgebra(hw.POLY)
    seqs = [hw.random_poly_seq(rng, N) for _ in range(2 * pairs + 1)]
    seq_pairs = list(zip(seqs[0::2], seqs[1::2]))
    reports.append(hw.check_rb_operator(pw, hw.PARTIAL_SUMS, 1, (), pairs=seq_pairs))
    reports.append(expect_fail(hw.check_rb_operator(pw, hw.PARTIAL_SUMS, 0, (), pairs=seq_pairs)))
    reports.append(hw.check_rb_operator(pw, hw.zero_map(pw), LAM, (), pairs=seq_pairs[:10]))
    # the lift to (A^N, .^lam), with lam * (finite partial sums) of weight lam on Z^3
    m = 3
    fin = hw.FinPointAlg(m)
    for lam in (0, 1, 2, LAM):
        baseP = hw.scaled_op(hw.finite_partial_sums(m), lam, fin)
        samples = [hw.random_seq(rng, N, fin, bound=3) for _ in range(lift_samples)]
        reports.append(hw.check_rb_operator(fin, baseP, lam, [fin.random(rng) for _ in range(6)]))
        reports.append(hw.check_lifted_rb(fin, baseP, lam, samples))
    # diamond product: P(a <> b) = P(a) P(b) and associativity
    for lam, P in ((1, hw.PARTIAL_SUMS), (LAM, hw.scaled_op(hw.PARTIAL_SUMS, LAM, pw))):
        dia = hw.DiamondAlgebra(pw, P, lam)
        triples = [(seqs[i], seqs[i + 1], seqs[(i + 7) % len(seqs)]) for i in range(pairs)]

        def rb_form(t, dia=dia, P=P):
            a, b, _ = t
            lhs, rhs = P(dia.mul(a, b)), pw.mul(P(a), P(b))
            return None if lhs == rhs else {"a": a, "b": b, "P(a<>b)": lhs, "P(a)P(b)": rhs}

        def assoc(t, dia=dia):
            a, b, c = t
            lhs, rhs = dia.mul(dia.mul(a, b), c), dia.mul(a, dia.mul(b, c))
            return None if lhs == rhs else {"a": a, "b": b, "c": c, "lhs": lhs, "rhs": rhs}

        p = {"lam": lam, "P": P.name, "pairs": pairs}
        reports.append(_law("diamond_rb_form", p, triples, rb_form))
        reports.append(_law("diamond_associativity", p, triples, assoc))
    # K subalgebra for finite partial sums on Z^4
    reports.append(hw.k_subalgebra_check(hw.FinPointAlg(4), hw.finite_partial_sums(4), 1, 5, 50,
                                         seed=rng.randrange(1 << 30)))
    return merge("rota_baxter", params, reports)


# --- 4: structure enumeration vs the Hurwitz product ----------------------------------------


def suite_species_cardinality(rng: random.Random, pairs: int, n_max: int) -> Report:
    params = {"pairs": pairs, "n_max": n_max, "lams": [0, 1, 2, 3]}
    reports = []
    items = []
    for _ in range(pairs):
        f = sp.SpeciesCard.random(rng, n_max + 1)
        g = sp.SpeciesCard.random(rng, n_max + 1)
        items.append((f, g))

    def check(item):
        f, g = item
        F, G = sp.synthetic(f.card), sp.synthetic(g.card)
        for lam in (0, 1, 2, 3):
            prod = hw.hurwitz_mul(f.to_wseq(), g.to_wseq(), lam)
            for n in range(n_max + 1):
                cnt = sp.count_l_tensor_structures(F, G, sp.LWeight(lam), n)
                if cnt != prod[n]:
                    return {"f": f, "g": g, "lam": lam, "n": n, "structures": cnt, "hurwitz": prod[n]}
        return None

    reports.append(_law("structure_count_vs_hurwitz", params, items, check))

    # explicit quintuple lists for genuine species, small sizes
    named = [sp.E, sp.LINEAR_ORDERS, sp.subsets_species(1)]

    def explicit(pair):
        F, G = pair
        f, g = F.card(5), G.card(5)
        for lam in (0, 1, 2):
            prod = hw.hurwitz_mul(f.to_wseq(), g.to_wseq(), lam)
            for n in range(4):
                got = len(sp.l_tensor_structures(F, G, sp.LWeight(lam), n))
                if got != prod[n]:
                    return {"F": F.name, "G": G.name, "lam": lam, "n": n, "structures": got, "hurwitz": prod[n]}
        return None

    reports.append(_law("explicit_structures", {"species": [s.name for s in named]},
                        [(a, b) for a in named for b in named], explicit))
    reports.append(merge("transport", {}, [sp.check_transport(F, 3, rng) for F in named]))
    return merge("species_cardinality", params, reports)


# --- 5: n-fold formula concordance ----------------------------------------------------------


def suite_concordance(rng: random.Random, samples: int, max3: int, max4: int) -> Report:
    params = {"samples": samples, "k3_max": max3, "k4_max": max4, "lam": LAM}
    items = []
    for k, top in ((3, max3), (4, max4)):
        for _ in range(samples):
            items.append((k, top, [sp.SpeciesCard.random(rng, top + 1) for _ in range(k)]))

    def check(item):
        k, top, fs = item
        for n in range(top + 1):
            flat = sp.nfold_tensor_card(fs, LAM, n)
            values = {
                "iterated_left": sp.iterated_left(fs, LAM, n),
                "mfil_enumeration": sp.mfil_weighted_count(fs, LAM, n),
                "mfil_census": sp.mfil_census_count(fs, LAM, n),
            }
            for span in sp.bracket_insertions(k):
                values[f"bracket{list(span)}"] = sp.bracketed_card(fs, LAM, n, span)
            for name, v in values.items():
                if v != flat:
                    return {"k": k, "n": n, "fs": fs, "route": name, "lhs": flat, "rhs": v}
        return None

    def anchors(_):
        ones = sp.SpeciesCard.ones(3)
        got1 = sp.nfold_tensor_card([ones] * 3, 1, 2)
        got0 = sp.nfold_tensor_card([ones] * 3, 0, 2)
        if (got1, got0) != (49, 9):
            return {"lam=1": got1, "lam=0": got0, "expected": [49, 9]}
        return None

    return merge("concordance", params, [
        _law("nfold_routes", params, items, check),
        _law("nfold_anchors", {}, [None], anchors),
    ])


# --- 6: the 3-flag bijection ------------------------------------------------------------------


def suite_flag3(rng: random.Random, max_labels: int) -> Report:
    params = {"max_labels": max_labels}
    reports = []
    for n in range(max_labels + 1):
        X = frozenset(range(1, n + 1))
        flags = sp.mfil_enumerate(3, X)

        def forward(m):
            p = sp.flag3_to_partition(m)
            back = sp.partition_to_flag3(p)
            return None if back == m else {"flag": m, "partition": p, "back": back}

        reports.append(_law("flag_roundtrip", {"n": n}, flags, forward))
        labels = sorted(X)

        def partitions():
            for assign in product(range(7), repeat=n):
                blocks = [frozenset(x for x, a in zip(labels, assign) if a == b) for b in range(7)]
                yield sp.Partition7(X, tuple(blocks))

        def backward(p):
            m = sp.partition_to_flag3(p)
            again = sp.flag3_to_partition(m)
            return None if again == p else {"partition": p, "flag": m, "back": again}

        r = _law("partition_roundtrip", {"n": n}, partitions(), backward)
        reports.append(r)
        ok = len(flags) == 7**n == r.count
        reports.append(Report("flag_count", {"n": n}, ok,
                              None if ok else {"flags": len(flags), "partitions": r.count, "expected": 7**n}))
    X = frozenset({1, 2})
    ex = sp.flag3_to_partition(sp.MFil(X, (frozenset(), frozenset({1}), X, X),
                                       (frozenset(), frozenset(), frozenset({1}))))
    want = {b: frozenset() for b in sp.BLOCKS3}
    want.update({"12": frozenset({1}), "23": frozenset({2})})
    got = {b: ex.block(b) for b in sp.BLOCKS3}
    reports.append(Report("flag3_example", {}, got == want, None if got == want else {"got": got, "want": want}))
    return merge("flag3", params, reports)


# --- 7: Cov census ------------------------------------------------------------------------------


def suite_cov(rng: random.Random, ab_max: int, n_max: int, contraction_pairs: int) -> Report:
    params = {"ab_max": ab_max, "n_max": n_max}
    cases = [(a, b, n) for a in range(ab_max + 1) for b in range(ab_max + 1) for n in range(n_max + 1)]

    def census(c):
        a, b, n = c
        got, want = sp.cov_enumerate(a, b, n), sp.cov_closed_form(a, b, n)
        return None if got == want else {"a": a, "b": b, "n": n, "enumerated": got, "closed_form": want}

    items = [(sp.SpeciesCard.random(rng, n_max + 1), sp.SpeciesCard.random(rng, n_max + 1))
             for _ in range(contraction_pairs)]

    def contraction(item):
        f, g = item
        for n in range(n_max + 1):
            lhs, rhs = sp.cov_contraction(f, g, LAM, n), sp.l_tensor_card(f, g, LAM, n)
            if lhs != rhs:
                return {"f": f, "g": g, "n": n, "lhs": lhs, "rhs": rhs}
        return None

    return merge("cov", params, [
        _law("cov_census", params, cases, census),
        _law("cov_contraction", params, items, contraction),
    ])


# --- 8: Delta strong monoidality --------------------------------------------------------------


def suite_delta(rng: random.Random, total: int) -> Report:
    params = {"max_total": total, "lam": LAM}
    reports = [sp.delta_monoidal_check(x, y) for x in range(total + 1) for y in range(total + 1 - x)]
    reports.append(sp.delta_monoidal_check(2, 1, 3))
    mass = sp.delta_monoidal_check(1, 1).count
    ok = mass == (2 + LAM) ** 2
    reports.append(Report("delta_mass", {"x": 1, "y": 1}, ok, None if ok else {"mass": mass}))
    return merge("delta", params, reports)


# --- 9: cardinality Leibniz ---------------------------------------------------------------------


def suite_leibniz(rng: random.Random, pairs: int, total: int) -> Report:
    params = {"pairs": pairs, "max_total": total, "lam": LAM}
    reports = []
    for _ in range(pairs):
        f = sp.SpeciesCard.random(rng, total + 1)
        g = sp.SpeciesCard.random(rng, total + 1)
        for x in range(total + 1):
            for y in range(total + 1 - x):
                reports.append(sp.shift_leibniz_card_check(f, g, LAM, x, y))
    ones = sp.SpeciesCard.ones(3)
    anchor = sp.shift_leibniz_card_check(ones, ones, 1, 1, 1)
    ok = anchor.passed and anchor.count == 9
    reports.append(Report("leibniz_anchor", {}, ok, None if ok else {"count": anchor.count}))
    r = merge("leibniz", params, reports)
    r.count = len(reports)
    return r


# --- 10: graph tensor coherence and monoid witnesses ----------------------------------------------


def suite_graphs(rng: random.Random, triples: int) -> Report:
    params = {"triples": triples, "lam": LAM}
    dims = [(a, e) for a in (1, 2) for e in (1, 2)]
    trips = [tuple(gph.MatGraph.random(rng, *rng.choice(dims)) for _ in range(3)) for _ in range(triples)]
    reports = [_law("coherence", params, trips,
                    lambda t: None if gph.coherence_check(*t, LAM).passed
                    else gph.coherence_check(*t, LAM).counterexample)]
    # op is a strict involution
    reports.append(_law("op_involution", {}, [t[0] for t in trips],
                        lambda g: None if gph.graph_op(gph.graph_op(g)) == g else {"graph": g}))
    m = 4
    mulP, etaP = gph.pointwise_structure(m)
    cyc = gph.cyclic_difference_matrix(m)
    reports.append(gph.check_derivational_monoid(m, mulP, etaP, cyc, 1))
    reports.append(expect_fail(gph.check_derivational_monoid(m, mulP, etaP, cyc, 0)))
    psum = gph.strict_partial_sum_matrix(m)
    reports.append(gph.check_rb_monoid(m, mulP, etaP, psum, 1))
    reports.append(expect_fail(gph.check_rb_monoid(m, mulP, etaP, psum, 0)))
    # the two forms of each check must agree on random non-witnesses
    for _ in range(3):
        rand = Matrix([[rng.randint(-1, 1) for _ in range(m)] for _ in range(m)], ncols=m)
        for chk in (gph.check_derivational_monoid, gph.check_rb_monoid):
            r = chk(m, mulP, etaP, rand, LAM)
            d = r.details
            ok = d["explicit"] == d["graph_form"]
            reports.append(Report("biconditional", {"check": chk.__name__}, ok,
                                  None if ok else {"d": rand, "explicit": d["explicit"], "graph_form": d["graph_form"]}))
    # multimorphisms: n=2 with the RB witness
    reports.append(gph.multimorphism_check(mulP, [psum, psum], psum, 1))
    reports.append(expect_fail(gph.multimorphism_check(mulP, [psum, psum], psum, 0)))
    # R(A, B) over A = B = Z and over 2x2 matrices
    one = Matrix([[1]]), Matrix.column([1])
    reports.append(gph.r_monoid(*one, *one, LAM).check())
    mat2 = gph.matrix_algebra_structure(2)
    reports.append(gph.r_monoid(*mat2, *one, LAM).check())
    reports.append(_r_unit_law(rng))
    reports.append(_k_matches_hurwitz(m))
    return merge("graphs", params, reports)


def _r_unit_law(rng: random.Random) -> Report:
    one = Matrix([[1]]), Matrix.column([1])
    R = gph.r_monoid(*one, *one, LAM)
    muE, etaE = R.mul[1], R.unit[1]
    for _ in range(20):
        x = [rng.randint(-3, 3) for _ in range(3)]
        for side, got in (("right", gph.multiply(muE, x, etaE.col(0))), ("left", gph.multiply(muE, etaE.col(0), x))):
            if got != [as_poly(v) for v in x]:
                return Report("r_unit", {}, False, {"x": x, "side": side, "got": got})
    return Report("r_unit", {}, True)


def _k_matches_hurwitz(m: int, N: int = 5) -> Report:
    """K(J(A,p)^op) has the same carrier as the sequence-level K subalgebra."""
    p = gph.strict_partial_sum_matrix(m)
    K = gph.k_construct(gph.graph_op(gph.j_embed(m, p)), N)
    baseP = hw.finite_partial_sums(m)
    fin = hw.FinPointAlg(m)
    rng = random.Random(0)
    for _ in range(20):
        top = fin.random(rng)
        member = list(hw.k_member_from_top(top, baseP, N))
        if not K.contains(member):
            return Report("k_carrier", {"m": m, "N": N}, False, {"member": member, "side": "graph"})
        bad = [list(x) for x in member]
        bad[0][0] += 1
        if K.contains(bad) or hw.is_k_member(bad, baseP, fin) is None:
            return Report("k_carrier", {"m": m, "N": N}, False, {"perturbed": bad})
    return Report("k_carrier", {"m": m, "N": N}, True)


# --- 11: charade dimensions ---------------------------------------------------------------------


def suite_charade(rng: random.Random, pairs: int, n_max: int) -> Report:
    params = {"pairs": pairs, "n_max": n_max, "qs": [2, 3], "lam": LAM}
    reports = []
    for q in (2, 3):
        for _ in range(pairs):
            f = qc._random_dimseq(rng, n_max + 1)
            g = qc._random_dimseq(rng, n_max + 1)
            reports.append(qc.dim_check(f, g, LAM, q, n_max))
    ones = sp.SpeciesCard.ones(3)
    for n, want in ((1, 3), (2, 12)):
        got = qc.q_tensor_dim(ones, ones, 1, qc.enumerate_subspaces(2, n))
        reports.append(Report("q_anchor", {"q": 2, "n": n}, got == want,
                              None if got == want else {"got": got, "want": want}))
    # chain counts by dimension against Gaussian binomials
    for q in (2, 3):
        for n in range(n_max + 1):
            lat = qc.enumerate_subspaces(q, n)
            tally: dict = {}
            for v, u in lat.chains():
                key = (lat.dims[u], lat.dims[v])
                tally[key] = tally.get(key, 0) + 1
            want = {(u, v): gauss_multinomial(n, (u, n - u), q) * gauss_multinomial(u, (v, u - v), q)
                    for u in range(n + 1) for v in range(u + 1)}
            reports.append(Report("chain_counts", {"q": q, "n": n}, tally == want,
                                  None if tally == want else {"enumerated": tally, "closed_form": want}))
    for n in range(qc.MFLG_MAX_DIM + 1):
        reports.append(qc.check_flag3_bookkeeping(qc.enumerate_subspaces(2, n)))
    for q in (2, 3):
        for n in range(3):
            lat = qc.enumerate_subspaces(q, n)
            for a in range(n + 1):
                for b in range(n + 1):
                    got, want = qc.spes_census(lat, a, b), qc.spes_closed_form(n, a, b, q)
                    reports.append(Report("spes_census", {"q": q, "n": n, "a": a, "b": b}, got == want,
                                          None if got == want else {"census": got, "closed_form": want}))
    r = merge("charade", params, reports)
    r.count = len(reports)
    return r


# --- 12: conjecture evidence ----------------------------------------------------------------------


def suite_conjecture(rng: random.Random, trials: int, N: int) -> Report:
    params = {"trials": trials, "N": N, "qs": [2, 3, 5, 6], "lam": LAM, "evidence_only": True}
    seed = rng.randrange(1 << 30)
    reports = [qc.conjecture_evidence(LAM, q, N, trials, seed=seed) for q in (2, 3, 5, 6)]
    lam0 = [qc.conjecture_evidence(0, q, N, max(1, trials // 10), seed=seed, bracket_trials=1) for q in (2, 6)]
    failures = {r.params["q"]: r.details["associativity_failures"] for r in reports}
    r = merge("conjecture", params, reports + lam0, associativity_failures=failures)
    return r


# --- 13: mutation sensitivity -------------------------------------------------------------------


# mutation -> (suite key, the check expected to catch it)
MUTATION_TARGETS = {
    "derivation": (2, "check_weighted_derivation"),
    "rb": (3, "check_rb_operator"),
    "graph_source": (10, "coherence"),
}


def suite_mutations(rng: random.Random, level: str) -> Report:
    params = {"mutations": sorted(MUTATIONS), "level": level}
    seed = rng.randrange(1 << 30)
    reports = []
    caught = {}
    for name, (key, expected) in MUTATION_TARGETS.items():
        with mutated(name):
            r = run_suite(key, level, seed)
        by = None if r.passed else r.counterexample.get("sub_op")
        caught[name] = {"suite": key, "caught_by": by, "counterexample": r.counterexample}
        ok = by == expected
        reports.append(Report(f"mutation:{name}", {"suite": key, "expected": expected}, ok,
                              None if ok else {"caught_by": by, "suite_passed": r.passed}))
    # the suites are clean again once the mutation is lifted
    for key in sorted({k for k, _ in MUTATION_TARGETS.values()}):
        r = run_suite(key, level, seed)
        reports.append(Report("restored", {"suite": key}, r.passed,
                              None if r.passed else r.counterexample))
    return merge("mutations", params, reports, caught=caught)


SUITES = {
    s.key: s
    for s in [
        Suite(1, "hurwitz_laws", "Hurwitz algebra laws", suite_hurwitz_laws,
              {"quick": {"triples": 40, "N": 12}, "full": {"triples": 200, "N": 12}}),
        Suite(2, "derivations", "weighted derivations and d*", suite_derivations,
              {"quick": {"pairs": 30, "N": 5, "M": 6}, "full": {"pairs": 100, "N": 5, "M": 6}}),
        Suite(3, "rota_baxter", "Rota-Baxter operators, lift, diamond", suite_rota_baxter,
              {"quick": {"pairs": 30, "N": 10, "lift_samples": 4}, "full": {"pairs": 100, "N": 10, "lift_samples": 8}}),
        Suite(4, "species_cardinality", "structure counts vs Hurwitz product", suite_species_cardinality,
              {"quick": {"pairs": 5, "n_max": 7}, "full": {"pairs": 20, "n_max": 7}}),
        Suite(5, "concordance", "n-fold formula concordance", suite_concordance,
              {"quick": {"samples": 1, "max3": 5, "max4": 4}, "full": {"samples": 3, "max3": 5, "max4": 4}}),
        Suite(6, "flag3", "3-flag bijection", suite_flag3,
              {"quick": {"max_labels": 4}, "full": {"max_labels": 5}}),
        Suite(7, "cov", "Cov census", suite_cov,
              {"quick": {"ab_max": 4, "n_max": 6, "contraction_pairs": 2},
               "full": {"ab_max": 4, "n_max": 6, "contraction_pairs": 5}}),
        Suite(8, "delta", "Delta strong monoidality", suite_delta,
              {"quick": {"total": 6}, "full": {"total": 6}}),
        Suite(9, "leibniz", "cardinality Leibniz", suite_leibniz,
              {"quick": {"pairs": 3, "total": 5}, "full": {"pairs": 10, "total": 5}}),
        Suite(10, "graphs", "graph tensor coherence and monoids", suite_graphs,
              {"quick": {"triples": 30}, "full": {"triples": 100}}),
        Suite(11, "charade", "charade dimension sequences", suite_charade,
              {"quick": {"pairs": 5, "n_max": 4}, "full": {"pairs": 20, "n_max": 4}}),
        Suite(12, "conjecture", "q-product associativity evidence", suite_conjecture,
              {"quick": {"trials": 20, "N": 8}, "full": {"trials": 100, "N": 8}}, evidence=True),
        Suite(13, "mutations", "mutation sensitivity", suite_mutations,
              {"quick": {"level": "quick"}, "full": {"level": "full"}}),
    ]
}

BY_NAME = {s.name: s for s in SUITES.values()}


def get_suite(key) -> Suite:
    if isinstance(key, Suite):
        return key
    if isinstance(key, str) and not key.isdigit():
        if key not in BY_NAME:
            raise KeyError(f"unknown suite {key!r}")
        return BY_NAME[key]
    return SUITES[int(key)]


def run_suite(key, level: str = "quick", seed: int = 0) -> Report:
    suite = get_suite(key)
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    rng = random.Random(f"{seed}:{suite.name}")
    start = time.perf_counter()
    r = suite.fn(rng, **suite.presets[level])
    r.op = f"suite:{suite.key}:{suite.name}"
    r.params = {"level": level, "seed": seed, **r.params}
    if suite.evidence:
        r.details["evidence_only"] = True
    r.elapsed = time.perf_counter() - start
    return r


def verify_all(level: str = "quick", seed: int = 0) -> list[Report]:
    """Every suite in registry order."""
    return [run_suite(k, level, seed) for k in sorted(SUITES)]
