"""The lam-Hurwitz algebra on truncated sequences, weighted derivations and
Rota-Baxter operators.

Entry algebras are small strategy objects (``PolyAlgebra``, ``MatrixAlgebra``,
``FinPointAlg`` and the sequence algebras built on them).  Sequences carry their
entry algebra.  Operations inside the sequence algebras truncate to the common
valid prefix, so a derivation, which shortens a sequence by one, can be mixed
with full-length sequences and every asserted equality stays exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Optional, Sequence

from .errors import DomainError
from .exactmath import LAM, ONE, ZERO, PolyLike, RingPoly, as_poly, multinomial
from .matrix import Matrix
from .report import Report

# --- entry algebras ---------------------------------------------------------


class Algebra:
    """Arithmetic of one coefficient algebra over Z[lam]."""

    name = "algebra"
    unital = True

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def scale(self, c, a):
        return c * a

    def mul(self, a, b):
        raise NotImplementedError

    def zero_like(self, a):
        raise NotImplementedError

    def one_like(self, a):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b


@dataclass(frozen=True)
class PolyAlgebra(Algebra):
    """Z[lam] itself; elements are ints or RingPoly."""

    name = "Z[lam]"

    def mul(self, a, b):
        return a * b

    def zero_like(self, a):
        return ZERO

    def one_like(self, a):
        return ONE


POLY = PolyAlgebra()


@dataclass(frozen=True)
class MatrixAlgebra(Algebra):
    """k x k matrices over Z[lam]; noncommutative for k >= 2."""

    k: int = 2

    @property
    def name(self):
        return f"Mat{self.k}(Z[lam])"

    def mul(self, a, b):
        return a @ b

    def zero_like(self, a):
        return Matrix.zeros(self.k, self.k)

    def one_like(self, a):
        return Matrix.identity(self.k)

    def random(self, rng: random.Random, bound: int = 3) -> Matrix:
        return Matrix([[rng.randint(-bound, bound) for _ in range(self.k)] for _ in range(self.k)])


@dataclass(frozen=True)
class FinPointAlg(Algebra):
    """Integer vectors of length m under pointwise operations."""

    m: int

    @property
    def name(self):
        return f"Z^{self.m}"

    def element(self, values: Sequence) -> tuple:
        values = tuple(values)
        if len(values) != self.m:
            raise DomainError(f"expected {self.m} coordinates, got {len(values)}")
        return values

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, c, a):
        return tuple(c * x for x in a)

    def mul(self, a, b):
        return tuple(x * y for x, y in zip(a, b))

    def zero_like(self, a=None):
        return (0,) * self.m

    def one_like(self, a=None):
        return (1,) * self.m

    def basis(self) -> list[tuple]:
        return [tuple(1 if i == j else 0 for i in range(self.m)) for j in range(self.m)]

    def random(self, rng: random.Random, bound: int = 5) -> tuple:
        return tuple(rng.randint(-bound, bound) for _ in range(self.m))


# --- truncated sequences ----------------------------------------------------


@dataclass(frozen=True)
class WSeq:
    """A length-N sequence of elements of one entry algebra."""

    entries: tuple
    alg: Algebra = POLY

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def trunc(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return WSeq(self.entries[i], self.alg)
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def prefix(self, n: int) -> "WSeq":
        return WSeq(self.entries[:n], self.alg)

    def map(self, fn: Callable) -> "WSeq":
        return WSeq(tuple(fn(x) for x in self.entries), self.alg)

    def _check(self, other: "WSeq") -> None:
        if not isinstance(other, WSeq):
            raise DomainError("expected a WSeq")
        if self.trunc != other.trunc:
            raise DomainError(f"truncation mismatch {self.trunc} vs {other.trunc}")
        if self.alg != other.alg:
            raise DomainError(f"entry algebra mismatch {self.alg.name} vs {other.alg.name}")

    def __add__(self, other):
        self._check(other)
        return WSeq(tuple(self.alg.add(a, b) for a, b in zip(self, other)), self.alg)

    def __sub__(self, other):
        self._check(other)
        return WSeq(tuple(self.alg.sub(a, b) for a, b in zip(self, other)), self.alg)

    def scale(self, c) -> "WSeq":
        return WSeq(tuple(self.alg.scale(c, a) for a in self), self.alg)

    def to_jsonable(self):
        from .report import to_jsonable

        return [to_jsonable(x) for x in self.entries]


def poly_seq(values: Sequence) -> WSeq:
    return WSeq(tuple(as_poly(v) for v in values), POLY)


def ones(n: int) -> WSeq:
    return poly_seq([1] * n)


def zeros(n: int) -> WSeq:
    return poly_seq([0] * n)


def unit_seq(n: int) -> WSeq:
    return poly_seq([1] + [0] * (n - 1)) if n else poly_seq([])


def squares(n: int) -> WSeq:
    return poly_seq([i * i for i in range(n)])


def iota(n: int) -> WSeq:
    return poly_seq(list(range(n)))


GENERATORS = {"ones": ones, "zeros": zeros, "unit": unit_seq, "squares": squares, "iota": iota}


@dataclass(frozen=True)
class SequenceAlgebra(Algebra):
    """Base for algebras of WSeq; binary operations truncate to the shorter input."""

    entry: Algebra = POLY

    def _zip(self, f: WSeq, g: WSeq):
        n = min(len(f), len(g))
        return zip(f.entries[:n], g.entries[:n])

    def add(self, f, g):
        return WSeq(tuple(self.entry.add(a, b) for a, b in self._zip(f, g)), self.entry)

    def sub(self, f, g):
        return WSeq(tuple(self.entry.sub(a, b) for a, b in self._zip(f, g)), self.entry)

    def scale(self, c, f):
        return WSeq(tuple(self.entry.scale(c, a) for a in f), self.entry)

    def zero_like(self, f):
        return WSeq(tuple(self.entry.zero_like(a) for a in f), self.entry)

    def eq(self, f, g) -> bool:
        return all(self.entry.eq(a, b) for a, b in self._zip(f, g))


@dataclass(frozen=True)
class PointwiseSeqAlgebra(SequenceAlgebra):
    @property
    def name(self):
        return f"pointwise {self.entry.name}^N"

    def mul(self, f, g):
        return WSeq(tuple(self.entry.mul(a, b) for a, b in self._zip(f, g)), self.entry)

    def one_like(self, f):
        return WSeq(tuple(self.entry.one_like(a) for a in f), self.entry)


@dataclass(frozen=True)
class HurwitzAlgebra(SequenceAlgebra):
    """(A^N, .^lam); with ``q`` set, the Gaussian-multinomial variant."""

    lam: Any = LAM
    q: Optional[int] = None

    @property
    def name(self):
        tag = "" if self.q is None else f"_q={self.q}"
        return f"hurwitz{tag}[{as_poly(self.lam)}] {self.entry.name}^N"

    def mul(self, f, g):
        n = min(len(f), len(g))
        coeff = _trinomial if self.q is None else _gauss_coeff(self.q)
        return WSeq(
            weighted_convolution(f.entries, g.entries, self.lam, self.entry, coeff, n), self.entry
        )

    def one_like(self, f):
        if not len(f):
            return f
        e = self.entry
        return WSeq((e.one_like(f[0]),) + tuple(e.zero_like(a) for a in f.entries[1:]), e)


# --- the weighted convolution -------------------------------------------------


@lru_cache(maxsize=None)
def _trinomial(n: int, r: int, s: int, t: int) -> int:
    return multinomial(n, (r, s, t))


def _gauss_coeff(q: int) -> Callable[[int, int, int, int], int]:
    from .exactmath import gauss_multinomial

    def coeff(n, r, s, t):
        return gauss_multinomial(n, (r, s, t), q)

    return coeff


def _lam_powers(lam, n: int) -> list:
    lam = as_poly(lam)
    out = [ONE]
    for _ in range(n):
        out.append(out[-1] * lam)
    return out


def _poly_convolution(f: Sequence, g: Sequence, lam: RingPoly, coeff, length: int) -> tuple:
    # same sum on raw coefficient lists, avoiding intermediate RingPoly objects
    fc = [as_poly(x).coeffs for x in f[:length]]
    gc = [as_poly(x).coeffs for x in g[:length]]
    pows = [p.coeffs for p in _lam_powers(lam, length)]
    out = []
    for n in range(length):
        acc: list = []
        for t in range(n + 1):
            lt = pows[t]
            if not lt:
                break
            inner: list = []
            for r in range(n - t + 1):
                a, b = fc[r + t], gc[n - r]
                if not a or not b:
                    continue
                c = coeff(n, r, n - t - r, t)
                need = len(a) + len(b) - 1
                if len(inner) < need:
                    inner.extend([0] * (need - len(inner)))
                for i, x in enumerate(a):
                    if x:
                        xc = x * c
                        for j, y in enumerate(b):
                            inner[i + j] += xc * y
            if not inner:
                continue
            need = len(inner) + len(lt) - 1
            if len(acc) < need:
                acc.extend([0] * (need - len(acc)))
            for i, x in enumerate(lt):
                if x:
                    for j, y in enumerate(inner):
                        acc[i + j] += x * y
        out.append(RingPoly(acc))
    return tuple(out)


def weighted_convolution(f: Sequence, g: Sequence, lam, alg: Algebra, coeff, length: int) -> tuple:
    """out(n) = sum_{r+s+t=n} coeff(n,r,s,t) * lam^t * f(r+t) g(s+t) for n < length."""
    lam = as_poly(lam)
    if isinstance(alg, PolyAlgebra):
        return _poly_convolution(f, g, lam, coeff, length)
    pows = _lam_powers(lam, length)
    lam_zero = lam == 0
    out = []
    for n in range(length):
        acc = None
        for t in range(n + 1):
            if t and lam_zero:
                break
            inner = None
            for r in range(n - t + 1):
                s = n - t - r
                c = coeff(n, r, s, t)
                term = alg.mul(f[r + t], g[s + t])
                if c != 1:
                    term = alg.scale(c, term)
                inner = term if inner is None else alg.add(inner, term)
            if t:
                inner = alg.scale(pows[t], inner)
            acc = inner if acc is None else alg.add(acc, inner)
        out.append(acc)
    return tuple(out)


def hurwitz_mul(f: WSeq, g: WSeq, lam: PolyLike) -> WSeq:
    """The lam-Hurwitz product of two sequences of the same length and algebra."""
    f._check(g)
    return WSeq(weighted_convolution(f.entries, g.entries, lam, f.alg, _trinomial, f.trunc), f.alg)


def pointwise_mul(f: WSeq, g: WSeq) -> WSeq:
    f._check(g)
    return WSeq(tuple(f.alg.mul(a, b) for a, b in zip(f, g)), f.alg)


def shift_derivation(f: WSeq) -> WSeq:
    """d(f)(n) = f(n+1); the result is one entry shorter."""
    if not len(f):
        raise DomainError("cannot shift an empty sequence")
    return WSeq(f.entries[1:], f.alg)


def difference_derivation(f: WSeq) -> WSeq:
    """d(f)(n) = f(n+1) - f(n); the result is one entry shorter."""
    if not len(f):
        raise DomainError("cannot difference an empty sequence")
    e = f.entries
    return WSeq(tuple(f.alg.sub(e[i + 1], e[i]) for i in range(len(e) - 1)), f.alg)


def partial_sums(f: WSeq) -> WSeq:
    """P(f)(n) = sum_{i<n} f(i), P(f)(0) = 0; same length."""
    if not len(f):
        return f
    acc = f.alg.zero_like(f[0])
    out = []
    for x in f:
        out.append(acc)
        acc = f.alg.add(acc, x)
    return WSeq(tuple(out), f.alg)


# --- endomorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class EndoOp:
    """A named additive endomorphism."""

    name: str
    fn: Callable[[Any], Any]

    def __call__(self, x):
        return self.fn(x)

    def power(self, k: int) -> "EndoOp":
        def fn(x):
            for _ in range(k):
                x = self.fn(x)
            return x

        return EndoOp(f"{self.name}^{k}", fn)


SHIFT = EndoOp("shift", shift_derivation)
DIFFERENCE = EndoOp("difference", difference_derivation)
PARTIAL_SUMS = EndoOp("partial_sums", partial_sums)


def zero_map(alg: Algebra) -> EndoOp:
    return EndoOp("zero", alg.zero_like)


def cyclic_difference(m: int) -> EndoOp:
    """d(f)(i) = f(i+1 mod m) - f(i) on Z^m; a 1-weighted derivation."""

    def fn(a):
        return tuple(a[(i + 1) % m] - a[i] for i in range(m))

    return EndoOp(f"cyclic_difference[{m}]", fn)


def finite_partial_sums(m: int) -> EndoOp:
    """P(u)(i) = sum_{j<i} u(j) on Z^m; a 1-weighted RB operator."""

    def fn(a):
        out, acc = [], 0
        for x in a:
            out.append(acc)
            acc = acc + x
        return tuple(out)

    return EndoOp(f"finite_partial_sums[{m}]", fn)


def table_op(matrix: Matrix, name: str = "table") -> EndoOp:
    """A user-supplied linear map on coordinate vectors: x -> matrix @ x."""

    def fn(a):
        col = matrix @ Matrix.column(a)
        return tuple(col.col(0))

    return EndoOp(name, fn)


def scaled_op(op: EndoOp, c, alg: Algebra) -> EndoOp:
    """c * op; scaling a 1-weighted RB operator by c gives one of weight c."""
    return EndoOp(f"({as_poly(c)})*{op.name}", lambda x: alg.scale(c, op(x)))


def check_additive(op: EndoOp, alg: Algebra, samples: Sequence) -> Report:
    for i, a in enumerate(samples):
        for j, b in enumerate(samples):
            lhs, rhs = op(alg.add(a, b)), alg.add(op(a), op(b))
            if not alg.eq(lhs, rhs):
                return Report(
                    "check_additive",
                    {"op": op.name},
                    False,
                    {"pair": [i, j], "a": a, "b": b, "lhs": lhs, "rhs": rhs},
                )
    return Report("check_additive", {"op": op.name, "samples": len(samples)}, True)


# --- law checks ---------------------------------------------------------------


def _derivation_rhs(alg: Algebra, a, b, da, db, lam):
    return alg.add(alg.add(alg.mul(da, b), alg.mul(a, db)), alg.scale(lam, alg.mul(da, db)))


def _rb_argument(alg: Algebra, a, b, pa, pb, lam):
    return alg.add(alg.add(alg.mul(pa, b), alg.mul(a, pb)), alg.scale(lam, alg.mul(a, b)))


def _pairs(samples, pairs):
    if pairs is not None:
        return list(pairs)
    return [(a, b) for a in samples for b in samples]


def check_weighted_derivation(
    alg: Algebra, d: EndoOp, lam: PolyLike, samples: Sequence, pairs=None
) -> Report:
    """Check d(ab) = d(a)b + a d(b) + lam d(a)d(b) on every pair, and d(1) = 0."""
    params = {"alg": alg.name, "d": d.name, "lam": as_poly(lam)}
    pairs = _pairs(samples, pairs)
    params["pairs"] = len(pairs)
    for idx, (a, b) in enumerate(pairs):
        lhs = d(alg.mul(a, b))
        rhs = _derivation_rhs(alg, a, b, d(a), d(b), lam)
        if not alg.eq(lhs, rhs):
            return Report(
                "check_weighted_derivation",
                params,
                False,
                {"pair_index": idx, "a": a, "b": b, "lhs": lhs, "rhs": rhs},
            )
    if alg.unital and pairs:
        one = alg.one_like(pairs[0][0])
        d_one = d(one)
        if not alg.eq(d_one, alg.zero_like(d_one)):
            return Report("check_weighted_derivation", params, False, {"unit": one, "d(1)": d_one})
    return Report("check_weighted_derivation", params, True)


def check_rb_operator(
    alg: Algebra, P: EndoOp, lam: PolyLike, samples: Sequence, pairs=None
) -> Report:
    """Check P(a)P(b) = P(P(a)b + aP(b) + lam ab) on every pair."""
    params = {"alg": alg.name, "P": P.name, "lam": as_poly(lam)}
    pairs = _pairs(samples, pairs)
    params["pairs"] = len(pairs)
    for idx, (a, b) in enumerate(pairs):
        pa, pb = P(a), P(b)
        lhs = alg.mul(pa, pb)
        rhs = P(_rb_argument(alg, a, b, pa, pb, lam))
        if not alg.eq(lhs, rhs):
            return Report(
                "check_rb_operator",
                params,
                False,
                {"pair_index": idx, "a": a, "b": b, "lhs": lhs, "rhs": rhs},
            )
    return Report("check_rb_operator", params, True)


# --- d*, diamond, lifts ---------------------------------------------------------


def d_star(a, d: EndoOp, N: int, alg: Algebra = POLY) -> WSeq:
    """d*(a)(n) = d^n(a) for n < N, as a sequence over ``alg``."""
    out = []
    x = a
    for n in range(N):
        out.append(x)
        if n + 1 < N:
            x = d(x)
    return WSeq(tuple(out), alg)


def leibniz_power(a, b, d: EndoOp, lam: PolyLike, n: int, alg: Algebra):
    """d^n(ab) by the double-binomial Leibniz rule

        sum_k sum_j C(n,k) C(n-k,j) lam^k d^(n-j)(a) d^(k+j)(b).
    """
    from math import comb

    lam = as_poly(lam)
    da = [a]
    db = [b]
    for _ in range(n):
        da.append(d(da[-1]))
        db.append(d(db[-1]))
    acc = None
    for k in range(n + 1):
        for j in range(n - k + 1):
            term = alg.scale(comb(n, k) * comb(n - k, j) * lam**k, alg.mul(da[n - j], db[k + j]))
            acc = term if acc is None else alg.add(acc, term)
    return acc


def check_d_star_morphism(
    alg: Algebra, d: EndoOp, lam: PolyLike, pairs: Sequence, N: int
) -> Report:
    """d*(ab) = d*(a) .^lam d*(b) in A^N."""
    params = {"alg": alg.name, "d": d.name, "lam": as_poly(lam), "N": N, "pairs": len(pairs)}
    for idx, (a, b) in enumerate(pairs):
        lhs = d_star(alg.mul(a, b), d, N, alg)
        rhs = hurwitz_mul(d_star(a, d, N, alg), d_star(b, d, N, alg), lam)
        for n in range(N):
            if not alg.eq(lhs[n], rhs[n]):
                return Report(
                    "check_d_star_morphism",
                    params,
                    False,
                    {"pair_index": idx, "n": n, "a": a, "b": b, "lhs": lhs[n], "rhs": rhs[n]},
                )
    return Report("check_d_star_morphism", params, True)


def diamond_mul(a, b, P: EndoOp, lam: PolyLike, alg: Algebra):
    """a <> b = P(a) b + a P(b) + lam a b."""
    pa_b = alg.mul(P(a), b)
    a_pb = alg.mul(a, P(b))
    return alg.add(alg.add(pa_b, a_pb), alg.scale(lam, alg.mul(a, b)))


@dataclass(frozen=True)
class DiamondAlgebra(Algebra):
    """(A, <>) for an RB operator P of weight lam on A; not assumed unital."""

    base: Algebra = POLY
    P: EndoOp = None
    lam: Any = LAM
    unital = False

    @property
    def name(self):
        return f"({self.base.name}, <>_{self.P.name})"

    def add(self, a, b):
        return self.base.add(a, b)

    def sub(self, a, b):
        return self.base.sub(a, b)

    def scale(self, c, a):
        return self.base.scale(c, a)

    def mul(self, a, b):
        return diamond_mul(a, b, self.P, self.lam, self.base)

    def zero_like(self, a):
        return self.base.zero_like(a)

    def one_like(self, a):
        raise DomainError("the diamond product is not assumed to have a unit")

    def eq(self, a, b):
        return self.base.eq(a, b)


def lifted_rb(f: WSeq, baseP: EndoOp, lam: PolyLike = None) -> WSeq:
    """P(f)(0) = baseP(f(0)), P(f)(n) = f(n-1).

    The result is one entry longer than ``f`` so every entry is exact.  ``lam``
    is accepted for symmetry with the checks; the lift does not depend on it.
    """
    if not len(f):
        raise DomainError("cannot lift an empty sequence")
    return WSeq((baseP(f[0]),) + f.entries, f.alg)


def lifted_op(baseP: EndoOp) -> EndoOp:
    return EndoOp(f"lift({baseP.name})", lambda f: lifted_rb(f, baseP))


def check_lifted_rb(
    entry: Algebra, baseP: EndoOp, lam: PolyLike, samples: Sequence[WSeq]
) -> Report:
    """shift o P = id, the RB law in (A^N, .^lam), and ev_0 o P = baseP o ev_0."""
    from .report import merge

    params = {"entry": entry.name, "P": baseP.name, "lam": as_poly(lam), "samples": len(samples)}
    P = lifted_op(baseP)
    reports = []
    for idx, f in enumerate(samples):
        back = shift_derivation(P(f))
        if back != f:
            reports.append(
                Report("shift_after_lift", params, False, {"index": idx, "f": f, "d(P(f))": back})
            )
            break
        if not entry.eq(P(f)[0], baseP(f[0])):
            reports.append(
                Report(
                    "ev0_square",
                    params,
                    False,
                    {"index": idx, "ev0(P f)": P(f)[0], "P(ev0 f)": baseP(f[0])},
                )
            )
            break
    else:
        reports.append(Report("shift_after_lift", params, True))
        reports.append(Report("ev0_square", params, True))
    reports.append(check_rb_operator(HurwitzAlgebra(entry, lam), P, lam, samples))
    return merge("check_lifted_rb", params, reports)


# --- the K subalgebra -------------------------------------------------------------


def k_member_from_top(top, baseP: EndoOp, N: int) -> tuple:
    """The sequence with a_{N-1} = top and a_n = baseP^(N-1-n)(top)."""
    out = [top]
    for _ in range(N - 1):
        out.append(baseP(out[-1]))
    return tuple(reversed(out))


def is_k_member(seq: Sequence, baseP: EndoOp, alg: Algebra) -> Optional[int]:
    """None if baseP(a_{n+1}) = a_n for all n; otherwise the first failing n."""
    for n in range(len(seq) - 1):
        if not alg.eq(baseP(seq[n + 1]), seq[n]):
            return n
    return None


def k_subalgebra_check(
    base: Algebra,
    baseP: EndoOp,
    lam: PolyLike,
    N: int,
    trials: int,
    seed: int = 0,
    candidates: Sequence = (),
) -> Report:
    """Closure of {a : baseP(a_{n+1}) = a_n} under the <>-Hurwitz product, the
    shift and entrywise baseP, and shift o baseP = id on it.

    For ``FinPointAlg`` bases the basis-generated members are checked pairwise
    (exhaustive by bilinearity) before ``trials`` random members.
    """
    params = {"base": base.name, "P": baseP.name, "lam": as_poly(lam), "N": N, "trials": trials}
    fail = lambda what, **ce: Report("k_subalgebra_check", params, False, {"check": what, **ce})
    for i, cand in enumerate(candidates):
        n = is_k_member(cand, baseP, base)
        if n is not None:
            return fail("membership", candidate_index=i, n=n, candidate=list(cand))
    rng = random.Random(seed)
    tops = list(base.basis()) if hasattr(base, "basis") else []
    tops += [base.random(rng) for _ in range(trials)]
    members = [k_member_from_top(t, baseP, N) for t in tops]
    dia = DiamondAlgebra(base, baseP, lam)
    n_basis = len(tops) - trials
    pair_list = [(i, j) for i in range(n_basis) for j in range(n_basis)]
    pair_list += [(n_basis + i, n_basis + (i + 1) % trials) for i in range(trials)] if trials else []
    for i, j in pair_list:
        prod = weighted_convolution(members[i], members[j], lam, dia, _trinomial, N)
        n = is_k_member(prod, baseP, base)
        if n is not None:
            return fail("hurwitz_closure", pair=[i, j], n=n, product=list(prod))
    for i, a in enumerate(members):
        if is_k_member(a[1:], baseP, base) is not None:
            return fail("shift_closure", index=i)
        pa = tuple(baseP(x) for x in a)
        if is_k_member(pa, baseP, base) is not None:
            return fail("p_closure", index=i)
        if any(not base.eq(x, y) for x, y in zip(pa[1:], a)):
            return fail("shift_after_p", index=i, member=list(a), shifted=list(pa[1:]))
    return Report("k_subalgebra_check", params, True, details={"members": len(members)})


# --- the bialgebra route ------------------------------------------------------------


def delta_power(n: int, lam: PolyLike) -> dict:
    """(x + y + lam*x*y)^n as {(i, j): coefficient}, by repeated multiplication."""
    lam = as_poly(lam)
    cur = {(0, 0): ONE}
    for _ in range(n):
        nxt: dict = {}
        for (i, j), c in cur.items():
            for key, w in (((i + 1, j), ONE), ((i, j + 1), ONE), ((i + 1, j + 1), lam)):
                v = c * w
                if v:
                    nxt[key] = nxt.get(key, ZERO) + v
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def convolution_via_bialgebra(f: WSeq, g: WSeq, lam: PolyLike) -> WSeq:
    """(f * g)(n) = <delta(x^n), f (x) g>, pairing f(i) g(j) against x^i y^j."""
    f._check(g)
    alg = f.alg
    out = []
    for n in range(f.trunc):
        acc = alg.zero_like(f[0])
        for (i, j), c in sorted(delta_power(n, lam).items()):
            acc = alg.add(acc, alg.scale(c, alg.mul(f[i], g[j])))
        out.append(acc)
    return WSeq(tuple(out), alg)


# --- random sampling --------------------------------------------------------------


def random_poly(rng: random.Random, max_deg: int = 2, bound: int = 3) -> RingPoly:
    return RingPoly([rng.randint(-bound, bound) for _ in range(rng.randint(0, max_deg) + 1)])


def random_poly_seq(rng: random.Random, N: int, max_deg: int = 2, bound: int = 3) -> WSeq:
    return WSeq(tuple(random_poly(rng, max_deg, bound) for _ in range(N)), POLY)


def random_seq(rng: random.Random, N: int, alg: Algebra, **kw) -> WSeq:
    if isinstance(alg, PolyAlgebra):
        return random_poly_seq(rng, N, **kw)
    return WSeq(tuple(alg.random(rng, **kw) for _ in range(N)), alg)
