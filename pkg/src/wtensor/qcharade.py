"""Finite-field analogue: subspace lattices of F_q^n, the charade tensor on
dimension sequences, modified flags, short pre-exact sequences and the
q-weighted Hurwitz product.

Subspaces are stored by reduced row echelon basis.  Each one also keeps its
element set as a bitmask over the q^n vectors, which makes containment and
intersection dimension single integer operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Optional, Sequence

from . import kernels
from .errors import ConsistencyError, DomainError, SizeError
from .exactmath import LAM, ONE, ZERO, PolyLike, QParam, RingPoly, as_poly, as_qparam, gauss_multinomial, phi
from .hurwitz import POLY, WSeq, poly_seq, random_poly_seq, weighted_convolution
from .report import Report, merge
from .species import SpeciesCard

ENUM_PRIMES = (2, 3, 5)
MAX_DIM = 4
MFLG_MAX_K = 3
MFLG_MAX_DIM = 3
SPES_PRIMES = (2, 3)
SPES_MAX_DIM = 3

DimSeq = SpeciesCard


def check_enumerable(q) -> int:
    qp = as_qparam(q)
    if not qp.prime_flag:
        raise DomainError("q must be prime for enumeration")
    if qp.q not in ENUM_PRIMES:
        raise DomainError(f"q must be one of {', '.join(map(str, ENUM_PRIMES))} for enumeration")
    return qp.q


def _encode(vec: Sequence[int], q: int) -> int:
    code = 0
    for x in reversed(vec):
        code = code * q + x
    return code


def _span_mask(basis: Sequence[Sequence[int]], q: int, n: int) -> int:
    vecs = {(0,) * n}
    for row in basis:
        vecs = {tuple((v[i] + c * row[i]) % q for i in range(n)) for v in vecs for c in range(q)}
    mask = 0
    for v in vecs:
        mask |= 1 << _encode(v, q)
    return mask


def _rref_bases(q: int, n: int, k: int):
    """All k x n RREF matrices over F_q."""
    for pivots in combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivots]
        for vals in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


class SubspaceLattice:
    """All subspaces of F_q^n, ordered by (dimension, basis)."""

    def __init__(self, q, n: int):
        self.q = check_enumerable(q)
        if not 0 <= n <= MAX_DIM:
            raise SizeError(f"subspace enumeration allows n <= {MAX_DIM}")
        self.n = n
        bases = sorted(
            (b for k in range(n + 1) for b in _rref_bases(self.q, n, k)), key=lambda b: (len(b), b)
        )
        self.subspaces: tuple = tuple(bases)
        self.dims: tuple = tuple(len(b) for b in bases)
        self.masks: tuple = tuple(_span_mask(b, self.q, n) for b in bases)
        self._index = {b: i for i, b in enumerate(bases)}
        self._mask_index = {m: i for i, m in enumerate(self.masks)}
        self._below: Optional[list] = None
        self._chains: Optional[list] = None

    def __len__(self):
        return len(self.subspaces)

    @property
    def zero(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.subspaces) - 1

    def index(self, basis) -> int:
        """Index of the subspace spanned by ``basis`` (any spanning rows)."""
        key = kernels.rref_mod_p([list(r) for r in basis], self.q) if basis else ()
        return self._index[key]

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def _dim_of_mask(self, mask: int) -> int:
        size = bin(mask).count("1")
        d = 0
        while self.q**d < size:
            d += 1
        if self.q**d != size:
            raise ConsistencyError("element count is not a power of q")
        return d

    def meet(self, i: int, j: int) -> int:
        return self._mask_index[self.masks[i] & self.masks[j]]

    def meet_dim(self, i: int, j: int) -> int:
        return self._dim_of_mask(self.masks[i] & self.masks[j])

    def join_dim(self, i: int, j: int) -> int:
        return self.dims[i] + self.dims[j] - self.meet_dim(i, j)

    def quotient_dim(self, u: int, v: int) -> int:
        """dim U/V for V <= U."""
        if not self.leq(v, u):
            raise DomainError("quotient needs V <= U")
        return self.dims[u] - self.dims[v]

    def below(self, i: int) -> list:
        if self._below is None:
            self._below = [
                [j for j in range(len(self)) if self.leq(j, u)] for u in range(len(self))
            ]
        return self._below[i]

    def chains(self) -> list:
        """All pairs (v, u) with V <= U."""
        if self._chains is None:
            self._chains = [(v, u) for u in range(len(self)) for v in self.below(u)]
        return self._chains

    def count_by_dim(self) -> list:
        out = [0] * (self.n + 1)
        for d in self.dims:
            out[d] += 1
        return out

    def to_jsonable(self):
        return {"q": self.q, "n": self.n, "subspaces": [list(map(list, b)) for b in self.subspaces]}


@lru_cache(maxsize=None)
def enumerate_subspaces(q, n: int) -> SubspaceLattice:
    return SubspaceLattice(q, n)


# --- the charade tensor on dimension sequences ------------------------------------------


def q_tensor_dim(f: DimSeq, g: DimSeq, lam: PolyLike, lat: SubspaceLattice) -> RingPoly:
    """sum over V <= U <= F_q^n of lam^dim(U/V) f(dim U) g(n - dim V)."""
    n = lat.n
    if n >= min(f.trunc, g.trunc):
        raise DomainError(f"n={n} outside truncation")
    lam = as_poly(lam)
    pows = [ONE]
    for _ in range(n):
        pows.append(pows[-1] * lam)
    tally: dict = {}
    for v, u in lat.chains():
        key = (lat.dims[u], lat.dims[v])
        tally[key] = tally.get(key, 0) + 1
    acc = ZERO
    for (du, dv), cnt in sorted(tally.items()):
        acc = acc + cnt * pows[du - dv] * f[du] * g[n - dv]
    return as_poly(acc)


def q_tensor_seq(f: DimSeq, g: DimSeq, lam: PolyLike, q, N: int) -> DimSeq:
    return DimSeq(tuple(q_tensor_dim(f, g, lam, enumerate_subspaces(q, n)) for n in range(N)))


def _gauss3(q: int):
    def coeff(n, r, s, t):
        return gauss_multinomial(n, (r, s, t), q)

    return coeff


def q_hurwitz_mul(f, g, lam: PolyLike, q) -> WSeq:
    """sum_{r+s+t=n} [n; r,s,t]_q lam^t f(r+t) g(s+t); any integer q >= 2."""
    qv = as_qparam(q).q
    f = f.to_wseq() if isinstance(f, SpeciesCard) else f
    g = g.to_wseq() if isinstance(g, SpeciesCard) else g
    f._check(g)
    return WSeq(weighted_convolution(f.entries, g.entries, lam, f.alg, _gauss3(qv), f.trunc), f.alg)


def gl_order(k: int, q) -> int:
    """|GL_k(F_q)| = q^(k(k-1)/2) phi_k(q)."""
    qv = as_qparam(q).q
    return qv ** (k * (k - 1) // 2) * phi(k, qv)


# --- modified flags -------------------------------------------------------------------------


@dataclass(frozen=True)
class MFlg:
    """Indices into a lattice: 0 = U_0 <= ... <= U_k = X and V_i <= U_i."""

    U: tuple
    V: tuple

    @property
    def k(self) -> int:
        return len(self.U) - 1

    def weight(self, lat: SubspaceLattice) -> int:
        return sum(lat.quotient_dim(self.U[i], self.V[i]) for i in range(1, self.k))

    def sizes(self, lat: SubspaceLattice) -> tuple:
        return tuple(lat.quotient_dim(self.U[i], self.V[i - 1]) for i in range(1, self.k + 1))

    def to_jsonable(self):
        return {"U": list(self.U), "V": list(self.V)}


def mflg_enumerate(k: int, lat: SubspaceLattice) -> list:
    if k < 1:
        raise DomainError("k must be at least 1")
    if k > MFLG_MAX_K or lat.n > MFLG_MAX_DIM:
        raise SizeError(f"mFlg enumeration allows k <= {MFLG_MAX_K}, n <= {MFLG_MAX_DIM}")

    def chains(length):
        if length == 0:
            yield ()
            return
        for rest in chains(length - 1):
            lo = rest[-1] if rest else lat.zero
            for u in range(len(lat)):
                if lat.leq(lo, u):
                    yield rest + (u,)

    out = []
    for mid in chains(k - 1):
        U = (lat.zero,) + mid + (lat.top,)
        for vs in product(*[lat.below(U[i]) for i in range(1, k)]):
            out.append(MFlg(U, (lat.zero,) + vs))
    return out


def mflg_weighted_count(fs: Sequence[DimSeq], lam: PolyLike, lat: SubspaceLattice) -> RingPoly:
    lam = as_poly(lam)
    acc = ZERO
    for m in mflg_enumerate(len(fs), lat):
        term = lam ** m.weight(lat)
        for f, s in zip(fs, m.sizes(lat)):
            term = term * f[s]
        acc = acc + term
    return as_poly(acc)


def q_left_bracket(fs: Sequence[DimSeq], lam: PolyLike, q, n: int) -> RingPoly:
    """((f1 (x) f2) (x) ...)(n) by repeated chain enumeration."""
    acc = fs[0]
    for f in fs[1:]:
        acc = q_tensor_seq(acc, f, lam, q, n + 1)
    return as_poly(acc[n])


def q_right_bracket3(f: DimSeq, g: DimSeq, h: DimSeq, lam: PolyLike, lat: SubspaceLattice) -> RingPoly:
    """sum over M <= N <= X, M <= I <= J <= X of lam^(dim N/M + dim J/I) f(N) g(J/M) h(X/I)."""
    lam = as_poly(lam)
    n = lat.n
    d = lat.dims
    acc = ZERO
    tally: dict = {}
    for M in range(len(lat)):
        above = [u for u in range(len(lat)) if lat.leq(M, u)]
        for N in above:
            for I in above:
                for J in above:
                    if lat.leq(I, J):
                        key = (d[N] - d[M], d[J] - d[I], d[N], d[J] - d[M], n - d[I])
                        tally[key] = tally.get(key, 0) + 1
    for (w1, w2, a, b, c), cnt in sorted(tally.items()):
        acc = acc + cnt * lam ** (w1 + w2) * f[a] * g[b] * h[c]
    return as_poly(acc)


BLOCKS3 = ("1", "2", "3", "12", "13", "23", "123")


def flag3_block_dims(m: MFlg, lat: SubspaceLattice) -> dict:
    """dim A_S from the short exact sequence diagrams of a 3-flag."""
    if m.k != 3:
        raise DomainError("needs a 3-flag")
    U1, U2, V1, V2 = m.U[1], m.U[2], m.V[1], m.V[2]
    d = lat.dims
    u1v2 = lat.meet(U1, V2)
    a1 = lat.meet_dim(V1, V2)
    return {
        "1": a1,
        "12": d[u1v2] - a1,
        "13": d[V1] - a1,
        "123": d[U1] - lat.join_dim(V1, u1v2),
        "2": d[V2] - d[u1v2],
        "23": (d[U2] - d[V2]) - (d[U1] - d[u1v2]),
        "3": lat.n - d[U2],
    }


def flag3_identities(m: MFlg, lat: SubspaceLattice) -> list:
    """(name, lhs, rhs) for the direct-sum and quotient-dimension identities."""
    a = flag3_block_dims(m, lat)
    U1, U2, V1, V2 = m.U[1], m.U[2], m.V[1], m.V[2]
    d = lat.dims
    return [
        ("X", lat.n, sum(a.values())),
        ("U1/V1", d[U1] - d[V1], a["12"] + a["123"]),
        ("U2/V2", d[U2] - d[V2], a["13"] + a["23"] + a["123"]),
        ("U1", d[U1], a["1"] + a["12"] + a["13"] + a["123"]),
        ("U2/V1", d[U2] - d[V1], a["2"] + a["12"] + a["23"] + a["123"]),
        ("X/V2", lat.n - d[V2], a["3"] + a["13"] + a["23"] + a["123"]),
    ]


def check_flag3_bookkeeping(lat: SubspaceLattice) -> Report:
    params = {"q": lat.q, "n": lat.n}
    flags = mflg_enumerate(3, lat)
    for idx, m in enumerate(flags):
        a = flag3_block_dims(m, lat)
        if any(v < 0 for v in a.values()):
            return Report("flag3_bookkeeping", params, False, {"flag": m, "dims": a})
        for name, lhs, rhs in flag3_identities(m, lat):
            if lhs != rhs:
                return Report(
                    "flag3_bookkeeping",
                    params,
                    False,
                    {"flag": m, "identity": name, "lhs": lhs, "rhs": rhs},
                )
    return Report("flag3_bookkeeping", params, True, count=len(flags))


# --- short pre-exact sequences --------------------------------------------------------------


def _complement_rows(basis, n: int, q: int) -> list:
    """Rows spanning {x : <x, v> = 0 for all v in basis}."""
    return [list(r) for r in kernels.nullspace_mod_p([list(b) for b in basis], n, q)]


def spes_census(lat: SubspaceLattice, a: int, b: int) -> dict:
    """{dim im(g o f): #pairs} over monos f: F^a -> X, epis g: X -> F^b with ker g <= im f.

    Every matrix is enumerated by the kernels and grouped by image or kernel;
    the pullback dimension is confirmed by a rank computation on one
    representative pair of each (image, kernel) class.
    """
    q, n = lat.q, lat.n
    if q not in SPES_PRIMES:
        raise DomainError(f"spes enumeration needs q in {SPES_PRIMES}")
    if max(n, a, b) > SPES_MAX_DIM or min(a, b) < 0:
        raise SizeError(f"spes enumeration allows dimensions <= {SPES_MAX_DIM}")
    images = kernels.image_census(q, n, a) if a <= n else {}
    kerns = kernels.kernel_census(q, n, b) if b <= n else {}
    out: dict = {}
    for img, ci in images.items():
        u = lat.index(img)
        f = [[img[j][i] for j in range(a)] for i in range(n)]  # n x a, columns = basis
        for ker, ck in kerns.items():
            v = lat.index(ker)
            if not lat.leq(v, u):
                continue
            g = _complement_rows(ker, n, q)  # b x n with kernel = ker
            gf = [[sum(g[r][i] * f[i][c] for i in range(n)) % q for c in range(a)] for r in range(len(g))]
            c = kernels.rank_mod_p(gf, q) if gf and a else 0
            if c != lat.dims[u] - lat.dims[v]:
                raise ConsistencyError("rank of g o f disagrees with dim U/V")
            out[c] = out.get(c, 0) + ci * ck
    return dict(sorted(out.items()))


def spes_bruteforce(lat: SubspaceLattice, a: int, b: int) -> dict:
    """Literal enumeration of every (f, g) pair; tiny cases only."""
    q, n = lat.q, lat.n
    if q ** (n * (a + b)) > 300_000:
        raise SizeError("too many pairs for literal enumeration")
    monos, epis = [], []
    for flat in product(range(q), repeat=n * a):
        f = [list(flat[i * a : (i + 1) * a]) for i in range(n)]
        cols = [[f[i][j] for i in range(n)] for j in range(a)]
        if kernels.rank_mod_p(cols, q) == a:
            monos.append((f, lat.index(cols) if cols else lat.zero))
    for flat in product(range(q), repeat=b * n):
        g = [list(flat[i * n : (i + 1) * n]) for i in range(b)]
        if kernels.rank_mod_p(g, q) == b:
            ker = kernels.nullspace_mod_p(g, n, q)
            epis.append((g, lat.index(ker) if ker else lat.zero))
    out: dict = {}
    for f, u in monos:
        for g, v in epis:
            if lat.leq(v, u):
                gf = [[sum(g[r][i] * f[i][c] for i in range(n)) % q for c in range(a)] for r in range(b)]
                c = kernels.rank_mod_p(gf, q) if gf and a else 0
                out[c] = out.get(c, 0) + 1
    return dict(sorted(out.items()))


def spes_closed_form(n: int, a: int, b: int, q) -> dict:
    """{a+b-n: [n;a]_q [a;n-b]_q |GL_a| |GL_b|} when the chain exists."""
    c = a + b - n
    if a > n or b > n or c < 0:
        return {}
    return {c: gauss_multinomial(n, (a, n - a), q) * gauss_multinomial(a, (n - b, c), q)
            * gl_order(a, q) * gl_order(b, q)}


def spes_contraction(f: DimSeq, g: DimSeq, lam: PolyLike, lat: SubspaceLattice) -> RingPoly:
    """sum_{a,b} sum_c lam^c Spes(a,b;n)[c] / (|GL_a||GL_b|) f(a) g(b)."""
    lam = as_poly(lam)
    acc = ZERO
    for a in range(lat.n + 1):
        for b in range(lat.n + 1):
            den = gl_order(a, lat.q) * gl_order(b, lat.q)
            for c, cnt in spes_census(lat, a, b).items():
                qv, r = divmod(cnt, den)
                if r:
                    raise ConsistencyError("Spes census not divisible by |GL_a||GL_b|")
                acc = acc + qv * lam**c * f[a] * g[b]
    return as_poly(acc)


# --- checks and evidence --------------------------------------------------------------------


def dim_check(f: DimSeq, g: DimSeq, lam: PolyLike, q, n_max: int) -> Report:
    """q_tensor_dim by chain enumeration against q_hurwitz_mul, for n <= n_max."""
    lam = as_poly(lam)
    hw = q_hurwitz_mul(DimSeq(f.card[: n_max + 1]), DimSeq(g.card[: n_max + 1]), lam, q)
    values = []
    for n in range(n_max + 1):
        lhs = q_tensor_dim(f, g, lam, enumerate_subspaces(q, n))
        values.append(lhs)
        if lhs != hw[n]:
            return Report(
                "dim_check",
                {"q": q, "lam": lam, "n_max": n_max},
                False,
                {"f": f, "g": g, "n": n, "lhs": lhs, "rhs": hw[n]},
            )
    return Report("dim_check", {"q": q, "lam": lam, "n_max": n_max}, True, count=values)


def _random_dimseq(rng: random.Random, N: int) -> DimSeq:
    return DimSeq(tuple(rng.randint(0, 4) for _ in range(N)))


def conjecture_evidence(lam: PolyLike, q: int, N: int, trials: int, seed: int = 0,
                        bracket_n: int = 3, bracket_trials: int = 3) -> Report:
    """Associativity and unitality of the q-product on random sequences, plus
    left/right bracketing agreement of the chain tensor when q is enumerable.

    The outcome is evidence only.  Every failing trial is counted and the
    first one is returned with both bracketings.
    """
    if N > 10:
        raise SizeError("conjecture evidence allows N <= 10")
    lam = as_poly(lam)
    qv = as_qparam(q).q
    params = {"lam": lam, "q": qv, "N": N, "trials": trials, "evidence_only": True}
    rng = random.Random(f"{seed}:conjecture:{qv}")
    unit = poly_seq([1] + [0] * (N - 1))
    reports = []
    first, failures = None, 0
    for i in range(trials):
        f, g, h = (random_poly_seq(rng, N) for _ in range(3))
        left = q_hurwitz_mul(q_hurwitz_mul(f, g, lam, qv), h, lam, qv)
        right = q_hurwitz_mul(f, q_hurwitz_mul(g, h, lam, qv), lam, qv)
        if left != right:
            failures += 1
            if first is None:
                n = next(k for k in range(N) if left[k] != right[k])
                first = {"trial": i, "f": f, "g": g, "h": h, "n": n, "lhs": left[n], "rhs": right[n]}
    if first is None:
        reports.append(Report("q_associativity", params, True, count=trials))
    else:
        reports.append(Report("q_associativity", params, False, {**first, "failing_trials": failures},
                              count=trials - failures))
    f = random_poly_seq(rng, N)
    lu, ru = q_hurwitz_mul(unit, f, lam, qv), q_hurwitz_mul(f, unit, lam, qv)
    if lu != f or ru != f:
        reports.append(Report("q_unit", params, False, {"f": f, "unit*f": lu, "f*unit": ru}))
    else:
        reports.append(Report("q_unit", params, True))
    if qv in SPES_PRIMES:
        reports.extend(_bracket_evidence(lam, qv, bracket_n, bracket_trials, rng))
    return merge("conjecture_evidence", params, reports, associativity_failures=failures)


def _bracket_evidence(lam, q: int, n_max: int, trials: int, rng: random.Random) -> list:
    """Left (mFlg) and right chain counts against each other and against the
    matching bracketing of the q-product."""
    params = {"q": q, "lam": lam, "n_max": n_max, "trials": trials}
    agree, match = None, None
    for i in range(trials):
        f, g, h = (_random_dimseq(rng, n_max + 1) for _ in range(3))
        lp = q_hurwitz_mul(q_hurwitz_mul(f, g, lam, q), h, lam, q)
        rp = q_hurwitz_mul(f, q_hurwitz_mul(g, h, lam, q), lam, q)
        for n in range(n_max + 1):
            lat = enumerate_subspaces(q, n)
            left = mflg_weighted_count([f, g, h], lam, lat)
            right = q_right_bracket3(f, g, h, lam, lat)
            ce = {"trial": i, "n": n, "f": f, "g": g, "h": h}
            if match is None and (left != lp[n] or right != rp[n]):
                match = {**ce, "left_chains": left, "left_product": lp[n],
                         "right_chains": right, "right_product": rp[n]}
            if agree is None and left != right:
                agree = {**ce, "lhs": left, "rhs": right}
    return [
        Report("q_bracketing", params, agree is None, agree),
        Report("q_chains_match_product", params, match is None, match),
    ]
