"""Command-line surface: run any operation or suite and emit JSON-lines reports.

Exit codes: 0 when every report passes, 1 when at least one fails, 2 for
usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import gphtensor as gph
from . import hurwitz as hw
from . import qcharade as qc
from . import species as sp
from . import verify
from .errors import ParseError, WTensorError
from .exactmath import LAM, RingPoly, as_poly, parse_poly
from .matrix import Matrix
from .report import Report

DEFAULTS = {"trunc": 8, "lambda": "formal", "q": 2, "seed": 0, "trials": 20}


class UsageError(WTensorError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --- literal parsing ------------------------------------------------------------------------


def parse_lambda(text: str):
    """'formal' gives the generator lam; otherwise an integer or a polynomial literal."""
    if text is None or text == "formal":
        return LAM
    try:
        return int(text)
    except ValueError:
        return parse_poly(text)


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed {what} literal {text!r}: {e.msg}") from None


def parse_seq(text: str, trunc: int) -> hw.WSeq:
    """A generator name or a JSON array of polynomial strings or integers."""
    if text in hw.GENERATORS:
        return hw.GENERATORS[text](trunc)
    data = _load_json(text, "sequence")
    if not isinstance(data, list):
        raise ParseError("a sequence literal must be a JSON array")
    return hw.poly_seq([_poly_entry(x) for x in data])


def _poly_entry(x) -> RingPoly:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"sequence entries must be integers or polynomial strings, got {x!r}")
    return as_poly(x)


def parse_card(text: str, trunc: int) -> sp.SpeciesCard:
    """A cardinality sequence: a generator name or a JSON array of nonnegative integers."""
    seq = parse_seq(text, trunc)
    return sp.SpeciesCard(tuple(x.constant() if x.is_constant() else x for x in seq.entries))


def parse_cards(text: str, trunc: int) -> list:
    data = _load_json(text, "sequence list")
    if not isinstance(data, list) or not data:
        raise ParseError("expected a nonempty JSON array of sequences")
    return [parse_card(x if isinstance(x, str) else json.dumps(x), trunc) for x in data]


def parse_matrix(text: str) -> Matrix:
    data = _load_json(text, "matrix")
    try:
        return Matrix.from_json(data)
    except (TypeError, ValueError) as e:
        if isinstance(e, WTensorError):
            raise
        raise ParseError(f"malformed matrix literal: {e}") from None


def parse_graph(text: str) -> gph.MatGraph:
    data = _load_json(text, "graph")
    if not isinstance(data, dict) or not {"s", "t"} <= set(data):
        raise ParseError('a graph literal is {"s": matrix, "t": matrix}')
    s, t = Matrix.from_json(data["s"]), Matrix.from_json(data["t"])
    return gph.MatGraph(s.nrows, s.ncols, s, t)


def parse_structure(text: str) -> tuple[Matrix, Matrix]:
    """'pointwise:m' or 'matrix:k' structure matrices of a unital algebra."""
    kind, _, arg = text.partition(":")
    try:
        k = int(arg)
    except ValueError:
        raise ParseError(f"expected pointwise:M or matrix:K, got {text!r}") from None
    if kind == "pointwise":
        return gph.pointwise_structure(k)
    if kind == "matrix":
        return gph.matrix_algebra_structure(k)
    raise ParseError(f"unknown algebra kind {kind!r}")


def parse_species(text: str, trunc: int) -> sp.SetSpecies:
    named = {"E": sp.E, "J": sp.J, "L": sp.LINEAR_ORDERS}
    if text in named:
        return named[text]
    if text.startswith("subsets:"):
        return sp.subsets_species(int(text.split(":", 1)[1]))
    return sp.synthetic(parse_card(text, trunc).card)


def _dim_op(text: str, dim: int, name: str) -> Matrix:
    """An endomorphism of Z^dim by name or as a JSON matrix."""
    builders = {
        "cyclic": lambda: gph.cyclic_difference_matrix(dim),
        "partial-sum": lambda: gph.strict_partial_sum_matrix(dim),
        "zero": lambda: Matrix.zeros(dim, dim),
        "id": lambda: Matrix.identity(dim),
    }
    m = builders[text]() if text in builders else parse_matrix(text)
    if m.shape != (dim, dim):
        raise ParseError(f"{name} must be {dim} x {dim}")
    return m


# --- report helpers -----------------------------------------------------------------------------


def _value(op: str, params: dict, value, details: dict | None = None) -> Report:
    return Report(op, params, True, count=value, details=details or {})


def _lam_param(args):
    return parse_lambda(args.lam)


# --- hurwitz ------------------------------------------------------------------------------------


def _hurwitz_algebra_for(d: str, lam, args):
    """(algebra, operator, sampler) for a named derivation."""
    N = args.trunc
    if d == "shift":
        alg = hw.HurwitzAlgebra(hw.MatrixAlgebra(2) if args.entries == "matrix" else hw.POLY, lam)
        entry = alg.entry
        return alg, hw.SHIFT, lambda rng: hw.random_seq(rng, N, entry)
    if d == "difference":
        alg = hw.PointwiseSeqAlgebra(hw.POLY)
        return alg, hw.DIFFERENCE, lambda rng: hw.random_poly_seq(rng, N)
    if d == "cyclic":
        alg = hw.FinPointAlg(args.m)
        return alg, hw.cyclic_difference(args.m), alg.random
    if d == "zero":
        alg = hw.PointwiseSeqAlgebra(hw.POLY)
        return alg, hw.zero_map(alg), lambda rng: hw.random_poly_seq(rng, N)
    raise UsageError(f"unknown derivation {d!r}")


def _rb_for(name: str, lam, args):
    N = args.trunc
    if name == "partial-sums":
        alg = hw.PointwiseSeqAlgebra(hw.POLY)
        return alg, hw.PARTIAL_SUMS, lambda rng: hw.random_poly_seq(rng, N)
    if name == "finite-partial-sums":
        alg = hw.FinPointAlg(args.m)
        return alg, hw.finite_partial_sums(args.m), alg.random
    if name == "scaled-partial-sums":
        alg = hw.FinPointAlg(args.m)
        return alg, hw.scaled_op(hw.finite_partial_sums(args.m), lam, alg), alg.random
    if name == "zero":
        alg = hw.PointwiseSeqAlgebra(hw.POLY)
        return alg, hw.zero_map(alg), lambda rng: hw.random_poly_seq(rng, N)
    raise UsageError(f"unknown operator {name!r}")


def cmd_hurwitz_mul(args):
    lam = _lam_param(args)
    f, g = parse_seq(args.f, args.trunc), parse_seq(args.g, args.trunc)
    out = hw.hurwitz_mul(f, g, lam)
    return [_value("hurwitz_mul", {"trunc": out.trunc, "lam": lam, "f": f, "g": g}, out)]


def cmd_hurwitz_dstar(args):
    if args.d == "cyclic":
        alg = hw.FinPointAlg(args.m)
        data = _load_json(args.a, "element")
        a = alg.element([int(x) for x in data])
        out = hw.d_star(a, hw.cyclic_difference(args.m), args.trunc, alg)
    elif args.d == "shift":
        a = parse_seq(args.a, args.trunc)
        out = hw.d_star(a, hw.SHIFT, args.trunc, hw.HurwitzAlgebra(hw.POLY, LAM))
    elif args.d == "zero":
        a = parse_seq(args.a, args.trunc)
        alg = hw.PointwiseSeqAlgebra(hw.POLY)
        out = hw.d_star(a, hw.zero_map(alg), args.trunc, alg)
    else:
        raise UsageError(f"unknown derivation {args.d!r}")
    return [_value("d_star", {"d": args.d, "N": args.trunc, "a": a}, list(out.entries))]


def cmd_hurwitz_check_der(args):
    lam = _lam_param(args)
    alg, d, sample = _hurwitz_algebra_for(args.d, lam, args)
    rng = random.Random(f"{args.seed}:check-der")
    pairs = [(sample(rng), sample(rng)) for _ in range(args.trials)]
    reports = [hw.check_weighted_derivation(alg, d, lam, (), pairs=pairs)]
    if args.d == "cyclic":
        reports.append(hw.check_d_star_morphism(alg, d, lam, pairs, args.trunc))
    return reports


def cmd_hurwitz_check_rb(args):
    lam = _lam_param(args)
    alg, P, sample = _rb_for(args.P, lam, args)
    rng = random.Random(f"{args.seed}:check-rb")
    pairs = [(sample(rng), sample(rng)) for _ in range(args.trials)]
    return [hw.check_rb_operator(alg, P, lam, (), pairs=pairs)]


def cmd_hurwitz_diamond(args):
    lam = _lam_param(args)
    alg = hw.PointwiseSeqAlgebra(hw.POLY)
    P = hw.PARTIAL_SUMS if lam == 1 else hw.scaled_op(hw.PARTIAL_SUMS, lam, alg)
    f, g = parse_seq(args.f, args.trunc), parse_seq(args.g, args.trunc)
    out = hw.diamond_mul(f, g, P, lam, alg)
    return [_value("diamond_mul", {"P": P.name, "lam": lam, "f": f, "g": g}, out)]


def cmd_hurwitz_lift(args):
    lam = _lam_param(args)
    if args.f is not None:
        f = parse_seq(args.f, args.trunc)
        alg = hw.POLY
        base = hw.zero_map(alg) if args.base == "zero" else hw.scaled_op(hw.EndoOp("id", lambda x: x), -as_poly(lam), alg)
        out = hw.lifted_rb(f, base)
        return [_value("lifted_rb", {"base": base.name, "lam": lam, "f": f}, out)]
    fin = hw.FinPointAlg(args.m)
    baseP = hw.scaled_op(hw.finite_partial_sums(args.m), lam, fin)
    rng = random.Random(f"{args.seed}:lift")
    samples = [hw.random_seq(rng, args.trunc, fin, bound=3) for _ in range(args.trials)]
    return [hw.check_lifted_rb(fin, baseP, lam, samples)]


def cmd_hurwitz_bialg(args):
    lam = _lam_param(args)
    f, g = parse_seq(args.f, args.trunc), parse_seq(args.g, args.trunc)
    a, b = hw.convolution_via_bialgebra(f, g, lam), hw.hurwitz_mul(f, g, lam)
    params = {"lam": lam, "f": f, "g": g}
    if a != b:
        return [Report("convolution_via_bialgebra", params, False, {"bialgebra": a, "hurwitz": b})]
    return [_value("convolution_via_bialgebra", params, a)]


# --- species ------------------------------------------------------------------------------------


def cmd_species_tensor(args):
    lam = _lam_param(args)
    f, g = parse_card(args.f, args.trunc), parse_card(args.g, args.trunc)
    out = sp.l_tensor_seq(f, g, lam)
    hwv = hw.hurwitz_mul(f.to_wseq(), g.to_wseq(), lam)
    params = {"lam": lam, "f": f, "g": g}
    if list(out.card) != list(hwv.entries):
        return [Report("l_tensor_card", params, False, {"closed_form": out, "hurwitz": hwv})]
    return [_value("l_tensor_card", params, out)]


def cmd_species_enum(args):
    if args.lam == "formal":
        lam_int = None
    else:
        try:
            lam_int = int(args.lam)
        except ValueError:
            raise UsageError("structure enumeration needs an integer --lambda") from None
    F, G = parse_species(args.F, args.n + 1), parse_species(args.G, args.n + 1)
    L = sp.LWeight(lam_int)
    params = {"F": F.name, "G": G.name, "lam": args.lam, "n": args.n}
    if args.list:
        structs = sp.l_tensor_structures(F, G, L, args.n)
        return [_value("l_tensor_structures", params, len(structs), {"structures": structs})]
    cnt = sp.count_l_tensor_structures(F, G, L, args.n)
    want = sp.l_tensor_card(F.card(args.n + 1), G.card(args.n + 1), L.lam, args.n)
    if cnt != want:
        return [Report("l_tensor_structures", params, False, {"structures": cnt, "hurwitz": want})]
    return [_value("l_tensor_structures", params, cnt)]


def cmd_species_nfold(args):
    lam = _lam_param(args)
    fs = parse_cards(args.fs, args.n + 1)
    flat = sp.nfold_tensor_card(fs, lam, args.n)
    left = sp.iterated_left(fs, lam, args.n)
    params = {"lam": lam, "n": args.n, "fs": fs}
    if flat != left:
        return [Report("nfold_tensor_card", params, False, {"nfold": flat, "iterated_left": left})]
    return [_value("nfold_tensor_card", params, flat)]


def cmd_species_mfil(args):
    lam = _lam_param(args)
    fs = parse_cards(args.fs, args.n + 1) if args.fs else [sp.SpeciesCard.ones(args.n + 1)] * args.k
    if len(fs) != args.k:
        raise UsageError(f"--fs must list {args.k} sequences")
    flags = sp.mfil_enumerate(args.k, args.n)
    weighted = sp.mfil_weighted_count(fs, lam, args.n)
    flat = sp.nfold_tensor_card(fs, lam, args.n)
    params = {"k": args.k, "n": args.n, "lam": lam, "fs": fs}
    details = {"filtrations": len(flags)}
    if args.list:
        details["list"] = flags
    if weighted != flat:
        return [Report("mfil", params, False, {"mfil_weighted": weighted, "nfold": flat})]
    return [_value("mfil", params, weighted, details)]


def cmd_species_flag3(args):
    X = frozenset(range(1, args.n + 1))
    flags = sp.mfil_enumerate(3, X)
    params = {"n": args.n}
    for m in flags:
        p = sp.flag3_to_partition(m)
        if sp.partition_to_flag3(p) != m:
            return [Report("flag3_roundtrip", params, False, {"flag": m, "partition": p})]
    details = {"pairs": [[m, sp.flag3_to_partition(m)] for m in flags]} if args.list else {}
    return [_value("flag3_roundtrip", params, len(flags), details)]


def cmd_species_cov(args):
    got, want = sp.cov_enumerate(args.a, args.b, args.n), sp.cov_closed_form(args.a, args.b, args.n)
    params = {"a": args.a, "b": args.b, "n": args.n}
    if got != want:
        return [Report("cov_enumerate", params, False, {"enumerated": got, "closed_form": want})]
    return [_value("cov_enumerate", params, got)]


def cmd_species_delta(args):
    lam = _lam_param(args)
    r = sp.delta_monoidal_check(args.x, args.y, lam)
    r.details["delta"] = sp.delta_fam(list(range(args.x + args.y)), lam)
    return [r]


def cmd_species_leibniz(args):
    lam = _lam_param(args)
    f, g = parse_card(args.f, args.trunc), parse_card(args.g, args.trunc)
    return [sp.shift_leibniz_card_check(f, g, lam, args.x, args.y)]


# --- qcharade ------------------------------------------------------------------------------------


def cmd_q_subspaces(args):
    lat = qc.enumerate_subspaces(args.q, args.n)
    details = {"bases": [list(map(list, b)) for b in lat.subspaces]} if args.list else {}
    return [_value("enumerate_subspaces", {"q": args.q, "n": args.n}, lat.count_by_dim(), details)]


def cmd_q_dim_check(args):
    lam = _lam_param(args)
    qc.check_enumerable(args.q)
    if args.f or args.g:
        f = parse_card(args.f or "ones", args.n + 1)
        g = parse_card(args.g or "ones", args.n + 1)
        return [qc.dim_check(f, g, lam, args.q, args.n)]
    rng = random.Random(f"{args.seed}:dim-check")
    out = []
    for _ in range(args.trials):
        f = qc._random_dimseq(rng, args.n + 1)
        g = qc._random_dimseq(rng, args.n + 1)
        out.append(qc.dim_check(f, g, lam, args.q, args.n))
    return out


def cmd_q_qmul(args):
    lam = _lam_param(args)
    f, g = parse_seq(args.f, args.trunc), parse_seq(args.g, args.trunc)
    out = qc.q_hurwitz_mul(f, g, lam, args.q)
    return [_value("q_hurwitz_mul", {"q": args.q, "lam": lam, "f": f, "g": g}, out)]


def cmd_q_mflg(args):
    lam = _lam_param(args)
    fs = parse_cards(args.fs, args.n + 1) if args.fs else [sp.SpeciesCard.ones(args.n + 1)] * args.k
    if len(fs) != args.k:
        raise UsageError(f"--fs must list {args.k} sequences")
    lat = qc.enumerate_subspaces(args.q, args.n)
    flags = qc.mflg_enumerate(args.k, lat)
    got = qc.mflg_weighted_count(fs, lam, lat)
    want = qc.q_left_bracket(fs, lam, args.q, args.n)
    params = {"k": args.k, "q": args.q, "n": args.n, "lam": lam, "fs": fs}
    if got != want:
        return [Report("mflg", params, False, {"mflg_weighted": got, "left_bracket": want})]
    return [_value("mflg", params, got, {"flags": len(flags)})]


def cmd_q_spes(args):
    lat = qc.enumerate_subspaces(args.q, args.n)
    got = qc.spes_census(lat, args.a, args.b)
    want = qc.spes_closed_form(args.n, args.a, args.b, args.q)
    params = {"q": args.q, "n": args.n, "a": args.a, "b": args.b}
    if got != want:
        return [Report("spes_census", params, False, {"census": got, "closed_form": want})]
    return [_value("spes_census", params, got)]


def cmd_q_conjecture(args):
    lam = _lam_param(args)
    return [qc.conjecture_evidence(lam, args.q, args.trunc, args.trials, seed=args.seed)]


# --- gph ------------------------------------------------------------------------------------------


def _graph_or_random(text, rng, dims):
    return parse_graph(text) if text else gph.MatGraph.random(rng, *dims)


def cmd_gph_tensor(args):
    lam = _lam_param(args)
    rng = random.Random(f"{args.seed}:gph-tensor")
    g1 = _graph_or_random(args.g1, rng, (2, 2))
    g2 = _graph_or_random(args.g2, rng, (2, 2))
    gs = [g1, g2]
    if args.g3 or args.three:
        gs.append(_graph_or_random(args.g3, rng, (2, 2)))
    out = gph.graph_tensor_n(gs, lam)
    reports = [_value("graph_tensor", {"lam": lam, "graphs": gs}, out)]
    if len(gs) == 3:
        reports.append(gph.coherence_check(*gs, lam))
    return reports


def cmd_gph_op(args):
    g = parse_graph(args.g)
    return [_value("graph_op", {"graph": g}, gph.graph_op(g))]


def cmd_gph_j(args):
    e = parse_matrix(args.e)
    out = gph.j_embed(e.nrows, e)
    if args.op:
        out = gph.graph_op(out)
    return [_value("j_embed", {"e": e, "op": args.op}, out)]


def cmd_gph_check_dermonoid(args):
    lam = _lam_param(args)
    mul, eta = parse_structure(args.alg)
    d = _dim_op(args.d, eta.nrows, "d")
    return [gph.check_derivational_monoid(eta.nrows, mul, eta, d, lam)]


def cmd_gph_check_rbmonoid(args):
    lam = _lam_param(args)
    mul, eta = parse_structure(args.alg)
    p = _dim_op(args.p, eta.nrows, "p")
    return [gph.check_rb_monoid(eta.nrows, mul, eta, p, lam)]


def cmd_gph_check_multi(args):
    lam = _lam_param(args)
    mul, eta = parse_structure(args.alg)
    dim = eta.nrows
    p = _dim_op(args.p, dim, "p")
    if args.n == 1:
        return [gph.multimorphism_check(Matrix.identity(dim), [p], p, lam)]
    if args.n == 2:
        return [gph.multimorphism_check(mul, [p, p], p, lam)]
    mul3 = mul @ mul.kron(Matrix.identity(dim))
    return [gph.multimorphism_check(mul3, [p, p, p], p, lam)]


def cmd_gph_rmonoid(args):
    lam = _lam_param(args)
    mA, eA = parse_structure(args.A)
    mB, eB = parse_structure(args.B)
    R = gph.r_monoid(mA, eA, mB, eB, lam)
    r = R.check()
    r.details["monoid"] = R
    return [r]


def cmd_gph_k(args):
    if args.g:
        g = parse_graph(args.g)
    else:
        g = gph.graph_op(gph.j_embed(args.m, _dim_op(args.p, args.m, "p")))
    K = gph.k_construct(g, args.trunc)
    params = {"graph": g, "N": args.trunc}
    reports = [_value("k_construct", params, K)]
    if args.seq:
        seq = _load_json(args.seq, "sequence")
        n = K.violation(seq)
        if n is None:
            reports.append(_value("k_membership", {"seq": seq}, True))
        else:
            reports.append(Report("k_membership", {"seq": seq}, False, {"seq": seq, "first_violation": n}))
    return reports


# --- verify ---------------------------------------------------------------------------------------


def _verify_reports(args, keys):
    reports = [verify.run_suite(k, args.level, args.seed) for k in keys]
    gate = [r for r, k in zip(reports, keys) if args.strict or not verify.get_suite(k).evidence]
    return reports, all(r.passed for r in gate)


def cmd_verify_all(args):
    return _verify_reports(args, sorted(verify.SUITES))


def cmd_verify_suite(args):
    try:
        keys = [verify.get_suite(k).key for k in args.suites]
    except (KeyError, ValueError):
        raise UsageError(f"unknown suite in {args.suites}; choose from {sorted(verify.SUITES)}") from None
    return _verify_reports(args, keys)


# --- parser -----------------------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trunc", type=int, default=DEFAULTS["trunc"], help="sequence length N")
    p.add_argument("--lambda", dest="lam", default=DEFAULTS["lambda"],
                   help="'formal' (default), an integer or a polynomial in lam")
    p.add_argument("--q", type=int, default=DEFAULTS["q"])
    p.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    p.add_argument("--trials", type=int, default=DEFAULTS["trials"])
    p.add_argument("--json", dest="json_out", metavar="PATH", help="write JSON lines here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in reports")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="wtensor", description="Weighted tensor verification toolkit.")
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def add(sub, name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.set_defaults(fn=fn)
        return p

    h = groups.add_parser("hurwitz", help="weighted Hurwitz products, derivations, Rota-Baxter operators")
    hs = h.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = add(hs, "mul", cmd_hurwitz_mul, "the lam-Hurwitz product f . g")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p = add(hs, "dstar", cmd_hurwitz_dstar, "d*(a)(n) = d^n(a)")
    p.add_argument("--a", required=True, help="element of Z^m (cyclic) or a sequence (shift, zero)")
    p.add_argument("--d", choices=["cyclic", "shift", "zero"], default="cyclic")
    p.add_argument("--m", type=int, default=6)
    p = add(hs, "check-der", cmd_hurwitz_check_der, "check the weighted Leibniz rule")
    p.add_argument("--d", choices=["shift", "difference", "cyclic", "zero"], default="cyclic")
    p.add_argument("--entries", choices=["poly", "matrix"], default="poly")
    p.add_argument("--m", type=int, default=6)
    p = add(hs, "check-rb", cmd_hurwitz_check_rb, "check the Rota-Baxter law")
    p.add_argument("--P", choices=["partial-sums", "finite-partial-sums", "scaled-partial-sums", "zero"],
                   default="partial-sums")
    p.add_argument("--m", type=int, default=4)
    p = add(hs, "diamond", cmd_hurwitz_diamond, "a <> b for lam * (partial sums)")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p = add(hs, "lift", cmd_hurwitz_lift, "the lifted Rota-Baxter operator on sequences")
    p.add_argument("--f", help="lift this sequence instead of running the check")
    p.add_argument("--base", choices=["zero", "neg-lambda"], default="zero")
    p.add_argument("--m", type=int, default=3)
    p = add(hs, "bialg", cmd_hurwitz_bialg, "the product via the bialgebra pairing")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)

    s = groups.add_parser("species", help="set species and their weighted tensor")
    ss = s.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = add(ss, "tensor", cmd_species_tensor, "cardinalities of F (x)^L G")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p = add(ss, "enum", cmd_species_enum, "enumerate L-tensor structures")
    p.add_argument("--F", default="E", help="E, J, L, subsets:K or a cardinality sequence")
    p.add_argument("--G", default="E")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--list", action="store_true")
    p = add(ss, "nfold", cmd_species_nfold, "the n-fold tensor count")
    p.add_argument("--fs", required=True, help="JSON array of sequences")
    p.add_argument("--n", type=int, default=3)
    p = add(ss, "mfil", cmd_species_mfil, "modified filtrations and their weighted count")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--fs")
    p.add_argument("--list", action="store_true")
    p = add(ss, "flag3", cmd_species_flag3, "the 3-flag / 7-block bijection")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--list", action="store_true")
    p = add(ss, "cov", cmd_species_cov, "jointly surjective injection pairs")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = add(ss, "delta", cmd_species_delta, "strong monoidality of Delta")
    p.add_argument("--x", type=int, default=1)
    p.add_argument("--y", type=int, default=1)
    p = add(ss, "leibniz", cmd_species_leibniz, "cardinality Leibniz rule")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--x", type=int, default=1)
    p.add_argument("--y", type=int, default=1)

    q = groups.add_parser("qcharade", help="finite-field analogue")
    qs = q.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = add(qs, "subspaces", cmd_q_subspaces, "subspaces of F_q^n")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--list", action="store_true")
    p = add(qs, "dim-check", cmd_q_dim_check, "chain enumeration vs the q-product")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--f")
    p.add_argument("--g")
    p = add(qs, "qmul", cmd_q_qmul, "the q-weighted Hurwitz product")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p = add(qs, "mflg", cmd_q_mflg, "modified flags and their weighted count")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--fs")
    p = add(qs, "spes", cmd_q_spes, "short pre-exact sequence census")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p = add(qs, "conjecture", cmd_q_conjecture, "associativity evidence for the q-product")

    g = groups.add_parser("gph", help="the weighted tensor of graphs")
    gs = g.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = add(gs, "tensor", cmd_gph_tensor, "tensor of two or three graphs")
    p.add_argument("--g1")
    p.add_argument("--g2")
    p.add_argument("--g3")
    p.add_argument("--three", action="store_true", help="use a random third graph")
    p = add(gs, "op", cmd_gph_op, "swap source and target")
    p.add_argument("--g", required=True)
    p = add(gs, "j", cmd_gph_j, "J(A, e)")
    p.add_argument("--e", required=True)
    p.add_argument("--op", action="store_true")
    p = add(gs, "check-dermonoid", cmd_gph_check_dermonoid, "derivational monoid check")
    p.add_argument("--alg", default="pointwise:4")
    p.add_argument("--d", default="cyclic")
    p = add(gs, "check-rbmonoid", cmd_gph_check_rbmonoid, "Rota-Baxter monoid check")
    p.add_argument("--alg", default="pointwise:4")
    p.add_argument("--p", default="partial-sum")
    p = add(gs, "check-multi", cmd_gph_check_multi, "multimorphism identity for iterated products")
    p.add_argument("--alg", default="pointwise:4")
    p.add_argument("--p", default="partial-sum")
    p.add_argument("--n", type=int, default=2, choices=[1, 2, 3])
    p = add(gs, "rmonoid", cmd_gph_rmonoid, "the monoid R(A, B)")
    p.add_argument("--A", default="pointwise:1")
    p.add_argument("--B", default="pointwise:1")
    p = add(gs, "k", cmd_gph_k, "the truncated K construction")
    p.add_argument("--g")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--p", default="partial-sum")
    p.add_argument("--seq", help="JSON list of coordinate vectors to test for membership")

    v = groups.add_parser("verify", help="curated suites")
    vs = v.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, fn, help_ in (("all", cmd_verify_all, "every suite in registry order"),
                            ("suite", cmd_verify_suite, "selected suites by number or name")):
        p = add(vs, name, fn, help_)
        p.add_argument("--level", choices=verify.LEVELS, default="quick")
        p.add_argument("--strict", action="store_true",
                       help="let evidence-only suites decide the exit code too")
        if name == "suite":
            p.add_argument("suites", nargs="+")
    return top


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        result = args.fn(args)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (WTensorError, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"error: {msg}", file=stderr)
        return 2
    if isinstance(result, tuple):
        reports, ok = result
    else:
        reports, ok = result, all(r.passed for r in result)
    lines = [r.to_json(timing=args.timing) for r in reports]
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in lines))
    else:
        for line in lines:
            print(line, file=stdout)
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
