"""The lam-weighted monoidal structure on graphs s, t: E -> A of free Z[lam]-modules.

Morphisms are matrices acting on column vectors, so a map E -> A is a
dimA x dimE matrix.  Tensor products are Kronecker products with the basis
vector e_i (x) e_j at index i * dim + j.  An algebra on A is given by its
structure matrices mul: A (x) A -> A (dimA x dimA^2) and eta: I -> A (dimA x 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional, Sequence

from .errors import DomainError, SizeError
from .exactmath import LAM, PolyLike, RingPoly, as_poly
from .matrix import Matrix, kron_all
from .report import Report, merge

MAX_NFOLD = 4
MAX_MULTI = 3
MAX_K_TRUNC = 8


@dataclass(frozen=True)
class MatGraph:
    """A parallel pair s, t: E -> A."""

    dimA: int
    dimE: int
    s: Matrix
    t: Matrix

    def __post_init__(self):
        for name, m in (("s", self.s), ("t", self.t)):
            if m.shape != (self.dimA, self.dimE):
                raise DomainError(f"{name} has shape {m.shape}, expected {(self.dimA, self.dimE)}")

    def to_jsonable(self):
        return {"dimA": self.dimA, "dimE": self.dimE, "s": self.s.to_json(), "t": self.t.to_json()}

    @classmethod
    def random(cls, rng: random.Random, dimA: int, dimE: int, bound: int = 2, formal: bool = True):
        def entry():
            c = [rng.randint(-bound, bound) for _ in range(2 if formal else 1)]
            return RingPoly(c)

        def mat():
            return Matrix([[entry() for _ in range(dimE)] for _ in range(dimA)], ncols=dimE)

        return cls(dimA, dimE, mat(), mat())


UNIT_GRAPH = MatGraph(1, 1, Matrix([[0]]), Matrix([[1]]))


def _binary_source(g1: MatGraph, g2: MatGraph, lam) -> Matrix:
    return lam * g1.s.kron(g2.s) + g1.s.kron(g2.t) + g1.t.kron(g2.s)


def graph_tensor(g1: MatGraph, g2: MatGraph, lam: PolyLike) -> MatGraph:
    """s = lam s(x)s + s(x)t + t(x)s and t = t(x)t."""
    lam = as_poly(lam)
    return MatGraph(g1.dimA * g2.dimA, g1.dimE * g2.dimE, _binary_source(g1, g2, lam), g1.t.kron(g2.t))


def graph_tensor_n(gs: Sequence[MatGraph], lam: PolyLike) -> MatGraph:
    """s = sum over nonempty R of lam^(#R-1) chi_R(1) (x) ... (x) chi_R(n), t = t (x) ... (x) t."""
    n = len(gs)
    if n > MAX_NFOLD:
        raise SizeError(f"n-fold graph tensor allows n <= {MAX_NFOLD}")
    if n == 0:
        return UNIT_GRAPH
    lam = as_poly(lam)
    dimA = dimE = 1
    for g in gs:
        dimA, dimE = dimA * g.dimA, dimE * g.dimE
    s = Matrix.zeros(dimA, dimE)
    for size in range(1, n + 1):
        for R in combinations(range(n), size):
            term = kron_all([g.s if i in R else g.t for i, g in enumerate(gs)])
            s = s + lam ** (size - 1) * term
    return MatGraph(dimA, dimE, s, kron_all([g.t for g in gs]))


def graph_op(g: MatGraph) -> MatGraph:
    return MatGraph(g.dimA, g.dimE, g.t, g.s)


def j_embed(dimA: int, e: Matrix) -> MatGraph:
    """J(A, e) = (A, A) with s = e and t = 1."""
    if e.shape != (dimA, dimA):
        raise DomainError(f"e must be {dimA} x {dimA}")
    return MatGraph(dimA, dimA, e, Matrix.identity(dimA))


def is_graph_morphism(g: MatGraph, h: MatGraph, f: Matrix, phi: Matrix) -> bool:
    """(f, phi): g -> h with h.s phi = f g.s and h.t phi = f g.t."""
    if f.shape != (h.dimA, g.dimA) or phi.shape != (h.dimE, g.dimE):
        raise DomainError("morphism shapes do not match the graphs")
    return h.s @ phi == f @ g.s and h.t @ phi == f @ g.t


def forced_edge_map(g: MatGraph, f: Matrix) -> Matrix:
    """The only edge map making (f, phi): g -> J(A, e) a morphism is phi = f t."""
    return f @ g.t


# --- algebras as structure matrices -------------------------------------------------------


def pointwise_structure(m: int) -> tuple[Matrix, Matrix]:
    """Z^m with pointwise product: mul(e_i (x) e_j) = [i == j] e_i, eta = (1, ..., 1)."""
    mul = Matrix(
        [[1 if (c // m == i and c % m == i) else 0 for c in range(m * m)] for i in range(m)],
        ncols=m * m,
    )
    return mul, Matrix.column([1] * m)


def matrix_algebra_structure(k: int) -> tuple[Matrix, Matrix]:
    """k x k matrices with basis E_ab at index a*k + b; E_ab E_cd = [b == c] E_ad."""
    n = k * k
    rows = [[0] * (n * n) for _ in range(n)]
    for x in range(n):
        a, b = divmod(x, k)
        for y in range(n):
            c, d = divmod(y, k)
            if b == c:
                rows[a * k + d][x * n + y] = 1
    eta = Matrix.column([1 if i == j else 0 for i in range(k) for j in range(k)])
    return Matrix(rows, ncols=n * n), eta


def cyclic_difference_matrix(m: int) -> Matrix:
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        rows[i][(i + 1) % m] += 1
        rows[i][i] -= 1
    return Matrix(rows, ncols=m)


def strict_partial_sum_matrix(m: int) -> Matrix:
    return Matrix([[1 if j < i else 0 for j in range(m)] for i in range(m)], ncols=m)


def multiply(mul: Matrix, x: Sequence, y: Sequence) -> list:
    """The product of two coordinate vectors under a structure matrix."""
    return (mul @ Matrix.column(x).kron(Matrix.column(y))).col(0)


def _first_diff(a: Matrix, b: Matrix, dim: int) -> Optional[dict]:
    for c in range(a.ncols):
        if a.col(c) != b.col(c):
            return {"basis_pair": [c // dim, c % dim] if a.ncols == dim * dim else [c],
                    "lhs": a.col(c), "rhs": b.col(c)}
    return None


def monoid_axioms(dim: int, mul: Matrix, eta: Optional[Matrix]) -> Report:
    params = {"dim": dim}
    if mul.shape != (dim, dim * dim):
        raise DomainError(f"mul must be {dim} x {dim * dim}")
    I = Matrix.identity(dim)
    left, right = mul @ mul.kron(I), mul @ I.kron(mul)
    if left != right:
        for c in range(left.ncols):
            if left.col(c) != right.col(c):
                i, rest = divmod(c, dim * dim)
                return Report("monoid_axioms", params, False,
                              {"law": "associativity", "basis_triple": [i, rest // dim, rest % dim],
                               "lhs": left.col(c), "rhs": right.col(c)})
    if eta is not None:
        if eta.shape != (dim, 1):
            raise DomainError(f"eta must be {dim} x 1")
        for side, m in (("left", mul @ eta.kron(I)), ("right", mul @ I.kron(eta))):
            if m != I:
                return Report("monoid_axioms", params, False, {"law": f"{side} unit", "lhs": m, "rhs": I})
    return Report("monoid_axioms", params, True)


# --- derivational and Rota-Baxter monoids ----------------------------------------------------


def _check_square(name: str, dim: int, m: Matrix) -> None:
    if m.shape != (dim, dim):
        raise DomainError(f"{name} must be {dim} x {dim}")


def check_derivational_monoid(dimA: int, mulA: Matrix, etaA: Matrix, d: Matrix, lam: PolyLike) -> Report:
    """d mu = mu (lam d(x)d + d(x)1 + 1(x)d) and d eta = 0, checked explicitly and
    as (mu, mu t) and (eta, eta) being graph morphisms into J(A, d)."""
    _check_square("d", dimA, d)
    lam = as_poly(lam)
    params = {"dimA": dimA, "lam": lam}
    I = Matrix.identity(dimA)
    axioms = monoid_axioms(dimA, mulA, etaA)
    lhs = d @ mulA
    rhs = mulA @ (lam * d.kron(d) + d.kron(I) + I.kron(d))
    ce = _first_diff(lhs, rhs, dimA)
    d_eta = d @ etaA
    if ce is None and not d_eta.is_zero():
        ce = {"law": "d eta = 0", "d eta": d_eta.col(0)}
    explicit = Report("derivation_equations", params, ce is None, ce)
    J = j_embed(dimA, d)
    JJ = graph_tensor(J, J, lam)
    graph_ok = is_graph_morphism(JJ, J, mulA, forced_edge_map(JJ, mulA)) and is_graph_morphism(
        UNIT_GRAPH, J, etaA, forced_edge_map(UNIT_GRAPH, etaA)
    )
    graph = Report("graph_monoid_on_J", params, graph_ok,
                   None if graph_ok else {"graph": "J(A,d)", "mul": mulA, "eta": etaA})
    agree = explicit.passed == graph.passed
    equiv = Report("equivalence", params, agree,
                   None if agree else {"explicit": explicit.passed, "graph_form": graph.passed})
    return merge("check_derivational_monoid", params, [axioms, explicit, graph, equiv],
                 explicit=explicit.passed, graph_form=graph.passed)


def check_rb_monoid(dimA: int, mulA: Matrix, etaA: Matrix, p: Matrix, lam: PolyLike) -> Report:
    """mu (p(x)p) = p mu (lam 1(x)1 + 1(x)p + p(x)1), checked explicitly and as a
    semigroup on J^op(A, p), whose edge multiplication is the diamond product."""
    _check_square("p", dimA, p)
    lam = as_poly(lam)
    params = {"dimA": dimA, "lam": lam}
    I = Matrix.identity(dimA)
    axioms = monoid_axioms(dimA, mulA, etaA)
    twist = lam * I.kron(I) + I.kron(p) + p.kron(I)
    lhs = mulA @ p.kron(p)
    rhs = p @ mulA @ twist
    ce = _first_diff(lhs, rhs, dimA)
    explicit = Report("rb_equation", params, ce is None, ce)
    Jop = graph_op(j_embed(dimA, p))
    T = graph_tensor(Jop, Jop, lam)
    phi = mulA @ T.s  # forced: the source of J^op is the identity
    graph_ok = is_graph_morphism(T, Jop, mulA, phi) and monoid_axioms(dimA, phi, None).passed
    graph = Report("graph_semigroup_on_Jop", params, graph_ok,
                   None if graph_ok else {"graph": "J^op(A,p)", "edge_mul": phi})
    agree = explicit.passed == graph.passed
    equiv = Report("equivalence", params, agree,
                   None if agree else {"explicit": explicit.passed, "graph_form": graph.passed})
    return merge("check_rb_monoid", params, [axioms, explicit, graph, equiv],
                 explicit=explicit.passed, graph_form=graph.passed)


def multimorphism_check(f: Matrix, ps: Sequence[Matrix], p: Matrix, lam: PolyLike) -> Report:
    """f (p_1 (x) ... (x) p_n) = p f sum_R lam^(#R-1) R(1) (x) ... (x) R(n), R(i) = 1 if i in R else p_i."""
    n = len(ps)
    if not 1 <= n <= MAX_MULTI:
        raise SizeError(f"multimorphisms allow 1 <= n <= {MAX_MULTI}")
    lam = as_poly(lam)
    dims = [q.nrows for q in ps]
    for q in ps:
        _check_square("p_i", q.nrows, q)
    _check_square("p", f.nrows, p)
    total = 1
    for k in dims:
        total *= k
    if f.ncols != total:
        raise DomainError(f"f must have {total} columns")
    params = {"n": n, "dims": dims, "lam": lam}
    S = Matrix.zeros(total, total)
    for size in range(1, n + 1):
        for R in combinations(range(n), size):
            term = kron_all([Matrix.identity(dims[i]) if i in R else ps[i] for i in range(n)])
            S = S + lam ** (size - 1) * term
    lhs = f @ kron_all(list(ps))
    rhs = p @ f @ S
    if lhs != rhs:
        for c in range(lhs.ncols):
            if lhs.col(c) != rhs.col(c):
                return Report("multimorphism_check", params, False,
                              {"column": c, "lhs": lhs.col(c), "rhs": rhs.col(c)})
    return Report("multimorphism_check", params, True)


# --- graph monoids ------------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphMono:
    """A monoid in graphs: vertex and edge multiplications and units."""

    base: MatGraph
    mul: tuple  # (mu_A, mu_E)
    unit: tuple  # (eta_A, eta_E)
    lam: RingPoly = LAM

    def check(self) -> Report:
        g = self.base
        muA, muE = self.mul
        etaA, etaE = self.unit
        params = {"dimA": g.dimA, "dimE": g.dimE, "lam": self.lam}
        gg = graph_tensor(g, g, self.lam)
        mor = is_graph_morphism(gg, g, muA, muE)
        umor = is_graph_morphism(UNIT_GRAPH, g, etaA, etaE)
        reports = [
            monoid_axioms(g.dimA, muA, etaA),
            monoid_axioms(g.dimE, muE, etaE),
            Report("mul_is_graph_morphism", params, mor, None if mor else {"mul": [muA, muE]}),
            Report("unit_is_graph_morphism", params, umor, None if umor else {"unit": [etaA, etaE]}),
        ]
        return merge("graph_monoid", params, reports)

    def to_jsonable(self):
        return {"graph": self.base.to_jsonable(), "mul": [m.to_json() for m in self.mul],
                "unit": [u.to_json() for u in self.unit]}


def r_monoid(mulA: Matrix, etaA: Matrix, mulB: Matrix, etaB: Matrix, lam: PolyLike = LAM) -> GraphMono:
    """R(A, B): edges A + A + B over vertices A with s = pr_1, t = pr_2 and
    (a1,a2,b)(c1,c2,d) = (lam a1c1 + a1c2 + a2c1, a2c2, bd)."""
    lam = as_poly(lam)
    m, k = mulA.nrows, mulB.nrows
    if mulA.shape != (m, m * m) or mulB.shape != (k, k * k):
        raise DomainError("structure matrices have the wrong shape")
    dimE = 2 * m + k
    s = Matrix([[1 if c == i else 0 for c in range(dimE)] for i in range(m)], ncols=dimE)
    t = Matrix([[1 if c == m + i else 0 for c in range(dimE)] for i in range(m)], ncols=dimE)

    def edge_product(x, y):
        a1, a2, b = x[:m], x[m : 2 * m], x[2 * m :]
        c1, c2, d = y[:m], y[m : 2 * m], y[2 * m :]
        first = [lam * u + v + w for u, v, w in
                 zip(multiply(mulA, a1, c1), multiply(mulA, a1, c2), multiply(mulA, a2, c1))]
        return first + multiply(mulA, a2, c2) + multiply(mulB, b, d)

    basis = [[1 if i == j else 0 for i in range(dimE)] for j in range(dimE)]
    cols = [edge_product(basis[i], basis[j]) for i in range(dimE) for j in range(dimE)]
    muE = Matrix(zip(*cols), ncols=dimE * dimE)
    etaE = Matrix.column([0] * m + etaA.col(0) + etaB.col(0))
    return GraphMono(MatGraph(m, dimE, s, t), (mulA, muE), (etaA, etaE), lam)


# --- the K construction ------------------------------------------------------------------------


@dataclass(frozen=True)
class KSpace:
    """Truncated equalizer {e in E^N : s(e_n) = t(e_(n+1)) for n < N-1} with the index shift."""

    graph: MatGraph
    N: int

    def constraint_matrix(self) -> Matrix:
        g, N = self.graph, self.N
        rows = []
        for n in range(N - 1):
            for i in range(g.dimA):
                row = [0] * (N * g.dimE)
                for j in range(g.dimE):
                    row[n * g.dimE + j] = g.s[i, j]
                    row[(n + 1) * g.dimE + j] = row[(n + 1) * g.dimE + j] - g.t[i, j]
                rows.append(row)
        return Matrix(rows, ncols=N * g.dimE)

    def violation(self, seq: Sequence[Sequence]) -> Optional[int]:
        """None if seq lies in the carrier, else the first failing index n."""
        g = self.graph
        if len(seq) != self.N:
            raise DomainError(f"expected {self.N} entries")
        for n in range(self.N - 1):
            lhs = (g.s @ Matrix.column(seq[n])).col(0)
            rhs = (g.t @ Matrix.column(seq[n + 1])).col(0)
            if lhs != rhs:
                return n
        return None

    def contains(self, seq) -> bool:
        return self.violation(seq) is None

    def shift(self, seq) -> list:
        """The endomorphism induced by the successor; the result has N - 1 entries."""
        return list(seq[1:])

    def to_jsonable(self):
        return {"graph": self.graph.to_jsonable(), "N": self.N,
                "constraints": self.constraint_matrix().to_json()}


def k_construct(g: MatGraph, N: int) -> KSpace:
    if not 1 <= N <= MAX_K_TRUNC:
        raise SizeError(f"K truncation allows 1 <= N <= {MAX_K_TRUNC}")
    return KSpace(g, N)


# --- coherence ------------------------------------------------------------------------------------


def coherence_check(g1: MatGraph, g2: MatGraph, g3: MatGraph, lam: PolyLike) -> Report:
    """Both bracketings of a triple tensor equal the 3-fold formula; unit laws hold."""
    lam = as_poly(lam)
    params = {"lam": lam, "dims": [[g.dimA, g.dimE] for g in (g1, g2, g3)]}
    left = graph_tensor(graph_tensor(g1, g2, lam), g3, lam)
    right = graph_tensor(g1, graph_tensor(g2, g3, lam), lam)
    flat = graph_tensor_n([g1, g2, g3], lam)
    for name, m in (("left", left), ("right", right)):
        if m != flat:
            return Report("coherence_check", params, False,
                          {"graphs": [g1, g2, g3], "bracketing": name, name: m, "nfold": flat})
    for g in (g1, g2, g3):
        for side, m in (("right", graph_tensor(g, UNIT_GRAPH, lam)), ("left", graph_tensor(UNIT_GRAPH, g, lam))):
            if m != g:
                return Report("coherence_check", params, False, {"graph": g, "unit_side": side, "result": m})
    if (flat.dimA, flat.dimE) != (g1.dimA * g2.dimA * g3.dimA, g1.dimE * g2.dimE * g3.dimE):
        return Report("coherence_check", params, False, {"dims": [flat.dimA, flat.dimE]})
    return Report("coherence_check", params, True)
