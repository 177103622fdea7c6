"""Set-valued species on finite label sets and their L-weighted tensor.

Structures are enumerated explicitly on small label sets.  The counting side
uses cardinality sequences, so every enumeration has a closed form to agree
with.  A label set X splits as X = A + B + C, where U = A + C, V = B + C and
C = U & V carries the L-weight.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Optional, Sequence

from . import kernels
from .errors import ConsistencyError, DomainError, SizeError, UnsupportedModeError
from .exactmath import LAM, ONE, ZERO, PolyLike, RingPoly, as_poly, factorial, multinomial
from .report import Report

MAX_LABELS = 8
NFOLD_BUDGET = {1: 8, 2: 8, 3: 6, 4: 4}
MFIL_MAX_K = 4
MFIL_MAX_LABELS = 6
SMALL_MAX = 6


def _nonneg(x) -> bool:
    if isinstance(x, RingPoly):
        return all(c >= 0 for c in x.coeffs)
    return isinstance(x, int) and x >= 0


@dataclass(frozen=True)
class SpeciesCard:
    """A cardinality sequence card[n] = #F<n> for n < trunc."""

    card: tuple

    def __post_init__(self):
        object.__setattr__(self, "card", tuple(self.card))
        for i, x in enumerate(self.card):
            if not _nonneg(x):
                raise DomainError(f"cardinality {x!r} at {i} is negative")

    @property
    def trunc(self) -> int:
        return len(self.card)

    def __len__(self):
        return len(self.card)

    def __getitem__(self, n: int):
        if not 0 <= n < len(self.card):
            raise DomainError(f"index {n} outside truncation {len(self.card)}")
        return self.card[n]

    def shifted(self, k: int) -> "SpeciesCard":
        """Cardinalities of F(k + -): n -> card[k + n]."""
        return SpeciesCard(self.card[k:])

    def to_wseq(self):
        from .hurwitz import poly_seq

        return poly_seq(self.card)

    def to_jsonable(self):
        from .report import to_jsonable

        return to_jsonable(list(self.card))

    @classmethod
    def ones(cls, n: int) -> "SpeciesCard":
        return cls((1,) * n)

    @classmethod
    def random(cls, rng: random.Random, n: int, hi: int = 3) -> "SpeciesCard":
        return cls(tuple(rng.randint(0, hi) for _ in range(n)))


# --- explicit species ----------------------------------------------------------


def _labels(X) -> tuple:
    if isinstance(X, int):
        X = range(1, X + 1)
    labels = tuple(sorted(set(X)))
    return labels


@dataclass(frozen=True)
class SetSpecies:
    """A species given by explicit structure lists and transport along bijections."""

    name: str
    structures_fn: Callable[[tuple], list]
    transport_fn: Callable[[object, dict], object]
    synthetic_card: Optional[tuple] = None

    def structures(self, X) -> list:
        labels = _labels(X)
        if len(labels) > MAX_LABELS:
            raise SizeError(f"label sets are capped at {MAX_LABELS} labels")
        return self.structures_fn(labels)

    def transport(self, structure, bijection: dict):
        return self.transport_fn(structure, bijection)

    def count(self, n: int) -> int:
        return len(self.structures(n))

    def card(self, n_max: int) -> SpeciesCard:
        return SpeciesCard(tuple(self.count(n) for n in range(n_max)))


def _map_set(s, bij):
    return frozenset(bij[x] for x in s)


E = SetSpecies("E", lambda X: [frozenset(X)], _map_set)
J = SetSpecies("J", lambda X: [frozenset()] if not X else [], _map_set)
LINEAR_ORDERS = SetSpecies(
    "L", lambda X: list(permutations(X)), lambda s, bij: tuple(bij[x] for x in s)
)


def subsets_species(k: int) -> SetSpecies:
    return SetSpecies(
        f"subsets[{k}]", lambda X: [frozenset(c) for c in combinations(X, k)], _map_set
    )


def synthetic(card: Sequence[int]) -> SetSpecies:
    """Structures on X are the bare indices 0..card[|X|]-1 with trivial transport."""
    card = SpeciesCard(card)

    def structures(X):
        if len(X) >= card.trunc:
            raise DomainError(f"synthetic species defined only below size {card.trunc}")
        return list(range(card[len(X)]))

    return SetSpecies(f"synthetic{list(card.card)}", structures, lambda s, bij: s, card.card)


def check_transport(F: SetSpecies, X, rng: random.Random, trials: int = 5) -> Report:
    """Identity acts trivially, transport composes, and relabeling preserves counts."""
    labels = _labels(X)
    params = {"species": F.name, "n": len(labels), "trials": trials}
    structs = F.structures(labels)
    ident = {x: x for x in labels}
    for s in structs:
        if F.transport(s, ident) != s:
            return Report("check_transport", params, False, {"identity": s})
    for _ in range(trials):
        img = list(range(101, 101 + len(labels)))
        rng.shuffle(img)
        sigma = dict(zip(labels, img))
        target = sorted(img)
        back = list(labels)
        rng.shuffle(back)
        tau = dict(zip(target, back))
        moved = {F.transport(s, sigma) for s in structs}
        if len(F.structures(target)) != len(structs) or moved != set(F.structures(target)):
            return Report("check_transport", params, False, {"sigma": sigma, "moved": moved})
        comp = {x: tau[sigma[x]] for x in labels}
        for s in structs:
            if F.transport(F.transport(s, sigma), tau) != F.transport(s, comp):
                return Report(
                    "check_transport", params, False, {"sigma": sigma, "tau": tau, "structure": s}
                )
    return Report("check_transport", params, True, count=len(structs))


# --- the binary L-tensor ---------------------------------------------------------


@dataclass(frozen=True)
class LWeight:
    """A finite color set of the given size, or the formal weight when size is None."""

    size: Optional[int] = None

    def __post_init__(self):
        if self.size is not None and (not isinstance(self.size, int) or self.size < 0):
            raise DomainError("the color set size must be a nonnegative integer")

    @property
    def formal(self) -> bool:
        return self.size is None

    @property
    def lam(self) -> RingPoly:
        return LAM if self.size is None else as_poly(self.size)


@dataclass(frozen=True)
class LStructure:
    """One quintuple: U, V with X = U | V, a coloring S of U & V, and phi, gamma."""

    U: frozenset
    V: frozenset
    S: tuple
    phi: object
    gamma: object

    def to_jsonable(self):
        from .report import to_jsonable

        return {
            "U": to_jsonable(self.U),
            "V": to_jsonable(self.V),
            "S": [to_jsonable(s) for s in self.S],
            "phi": to_jsonable(self.phi),
            "gamma": to_jsonable(self.gamma),
        }


def _covers(labels: tuple):
    """Digit strings over labels: 0 -> A (U only), 1 -> B (V only), 2 -> C (both)."""
    for digits in product(range(3), repeat=len(labels)):
        A = frozenset(x for x, d in zip(labels, digits) if d == 0)
        B = frozenset(x for x, d in zip(labels, digits) if d == 1)
        C = tuple(x for x, d in zip(labels, digits) if d == 2)
        yield A, B, C


def l_tensor_structures(F: SetSpecies, G: SetSpecies, L: LWeight, X) -> list:
    """All quintuples (U, V, S, phi, gamma) on X in canonical order."""
    if L.formal:
        raise UnsupportedModeError("structure enumeration needs a finite color set")
    labels = _labels(X)
    if len(labels) > MAX_LABELS:
        raise SizeError(f"label sets are capped at {MAX_LABELS} labels")
    out = []
    for A, B, C in _covers(labels):
        U, V = A | frozenset(C), B | frozenset(C)
        fs, gs = F.structures(tuple(sorted(U))), G.structures(tuple(sorted(V)))
        for colors in product(range(L.size), repeat=len(C)):
            S = tuple(frozenset(x for x, c in zip(C, colors) if c == k) for k in range(L.size))
            for phi in fs:
                for gamma in gs:
                    out.append(LStructure(U, V, S, phi, gamma))
    return out


def count_l_tensor_structures(F: SetSpecies, G: SetSpecies, L: LWeight, n: int) -> int:
    """The number of quintuples on an n-set, walked one by one."""
    if L.formal:
        raise UnsupportedModeError("structure enumeration needs a finite color set")
    if n > MAX_LABELS:
        raise SizeError(f"label sets are capped at {MAX_LABELS} labels")
    if F.synthetic_card is not None and G.synthetic_card is not None:
        if n >= len(F.synthetic_card) or n >= len(G.synthetic_card):
            raise DomainError("synthetic species undefined at this size")
        return kernels.cover_structure_count(n, L.size, list(F.synthetic_card), list(G.synthetic_card))
    return len(l_tensor_structures(F, G, L, n))


def l_tensor_card(f: SpeciesCard, g: SpeciesCard, lam: PolyLike, n: int) -> RingPoly:
    """sum_{r+s+t=n} multinomial(n; r,s,t) lam^t f(r+t) g(s+t)."""
    if n < 0 or n >= min(f.trunc, g.trunc):
        raise DomainError(f"n={n} outside truncation {min(f.trunc, g.trunc)}")
    lam = as_poly(lam)
    acc = ZERO
    for t in range(n + 1):
        for r in range(n - t + 1):
            s = n - t - r
            acc = acc + multinomial(n, (r, s, t)) * lam**t * f[r + t] * g[s + t]
    return as_poly(acc)


def l_tensor_seq(f: SpeciesCard, g: SpeciesCard, lam: PolyLike, N: Optional[int] = None) -> SpeciesCard:
    N = min(f.trunc, g.trunc) if N is None else N
    return SpeciesCard(tuple(l_tensor_card(f, g, lam, n) for n in range(N)))


# --- n-fold tensor and modified filtrations ------------------------------------------


def _check_nfold_budget(k: int, n_labels: int) -> None:
    if k < 1:
        raise DomainError("need at least one factor")
    if k not in NFOLD_BUDGET:
        raise SizeError(f"{k}-fold tensors are outside the enumeration budget")
    if n_labels > NFOLD_BUDGET[k]:
        raise SizeError(f"{k}-fold tensor allows at most {NFOLD_BUDGET[k]} labels")


def _weighted_sum(census: dict, fs: Sequence[SpeciesCard], lam) -> RingPoly:
    lam = as_poly(lam)
    acc = ZERO
    for key in sorted(census):
        w, sizes = key[0], key[1:]
        term = census[key] * lam**w
        for f, s in zip(fs, sizes):
            term = term * f[s]
        acc = acc + term
    return as_poly(acc)


def nfold_tensor_card(fs: Sequence[SpeciesCard], lam: PolyLike, n_labels: int) -> RingPoly:
    """Sum over maps X -> nonempty S in <k> of lam^(sum (#S-1)|A_S|) prod f_i(sum_{S∋i} |A_S|)."""
    k = len(fs)
    _check_nfold_budget(k, n_labels)
    for f in fs:
        f[n_labels]
    return _weighted_sum(kernels.block_census(n_labels, k), fs, lam)


def nfold_seq(fs: Sequence[SpeciesCard], lam: PolyLike, N: int) -> SpeciesCard:
    return SpeciesCard(tuple(nfold_tensor_card(fs, lam, n) for n in range(N)))


def iterated_left(fs: Sequence[SpeciesCard], lam: PolyLike, n: int) -> RingPoly:
    """((f1 (x) f2) (x) f3) ... at size n via repeated binary tensors."""
    acc = fs[0]
    for f in fs[1:]:
        acc = l_tensor_seq(acc, f, lam, n + 1)
    return as_poly(acc[n])


def bracket_insertions(k: int) -> list[tuple[int, int]]:
    """All ways to put one parenthesis pair around 2..k-1 adjacent factors."""
    return [(i, j) for i in range(k) for j in range(i + 2, k + 1) if j - i < k]


def bracketed_card(fs: Sequence[SpeciesCard], lam: PolyLike, n: int, span: tuple[int, int]) -> RingPoly:
    """Flat tensor of fs with fs[i:j] first replaced by their own flat tensor."""
    i, j = span
    inner = nfold_seq(fs[i:j], lam, n + 1)
    return nfold_tensor_card(list(fs[:i]) + [inner] + list(fs[j:]), lam, n)


@dataclass(frozen=True)
class MFil:
    """Chains 0 = U_0 <= ... <= U_k = X and V_0..V_{k-1} with V_i <= U_i."""

    X: frozenset
    U: tuple
    V: tuple

    def __post_init__(self):
        k = self.k
        if k < 1 or len(self.V) != k:
            raise DomainError("need k+1 U-sets and k V-sets")
        if self.U[0] or self.U[-1] != self.X:
            raise DomainError("the U-chain must run from the empty set to X")
        for i in range(k):
            if not self.U[i] <= self.U[i + 1]:
                raise DomainError(f"U_{i} is not contained in U_{i + 1}")
            if not self.V[i] <= self.U[i]:
                raise DomainError(f"V_{i} is not contained in U_{i}")

    @property
    def k(self) -> int:
        return len(self.U) - 1

    def weight(self) -> int:
        return sum(len(self.U[i] - self.V[i]) for i in range(1, self.k))

    def sizes(self) -> tuple:
        return tuple(len(self.U[i] - self.V[i - 1]) for i in range(1, self.k + 1))

    def to_jsonable(self):
        from .report import to_jsonable

        return {"U": [to_jsonable(u) for u in self.U], "V": [to_jsonable(v) for v in self.V]}


def _subsets(s: Iterable) -> list[frozenset]:
    items = sorted(s)
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


def mfil_enumerate(k: int, X) -> list[MFil]:
    """Every modified k-filtration of X, by nested chains then V-choices."""
    labels = frozenset(_labels(X))
    if k < 1:
        raise DomainError("k must be at least 1")
    if k > MFIL_MAX_K or len(labels) > MFIL_MAX_LABELS:
        raise SizeError(f"mFil enumeration allows k <= {MFIL_MAX_K}, |X| <= {MFIL_MAX_LABELS}")

    def chains(top: frozenset, length: int):
        # U_1 <= ... <= U_length <= top
        if length == 0:
            yield ()
            return
        for rest in chains(top, length - 1):
            bound = rest[-1] if rest else None
            for u in _subsets(top):
                if bound is None or bound <= u:
                    yield rest + (u,)

    out = []
    for mid in chains(labels, k - 1):
        U = (frozenset(),) + mid + (labels,)
        for vs in product(*[_subsets(U[i]) for i in range(1, k)]):
            out.append(MFil(labels, U, (frozenset(),) + vs))
    return out


def mfil_weighted_count(fs: Sequence[SpeciesCard], lam: PolyLike, X) -> RingPoly:
    """sum over mFil_k(X) of lam^weight prod f_i(size_i), from the explicit list."""
    lam = as_poly(lam)
    acc = ZERO
    for m in mfil_enumerate(len(fs), X):
        term = lam ** m.weight()
        for f, s in zip(fs, m.sizes()):
            term = term * f[s]
        acc = acc + term
    return as_poly(acc)


def mfil_census_count(fs: Sequence[SpeciesCard], lam: PolyLike, n: int) -> RingPoly:
    """The same weighted count from the per-label digit census."""
    return _weighted_sum(kernels.mfil_census(len(fs), n), fs, lam)


# --- the 3-flag bijection ----------------------------------------------------------------

BLOCKS3 = ("1", "2", "3", "12", "13", "23", "123")


@dataclass(frozen=True)
class Partition7:
    """Blocks A_S of X for the seven nonempty S in {1,2,3}."""

    X: frozenset
    blocks: tuple  # aligned with BLOCKS3

    def __post_init__(self):
        seen: set = set()
        for b in self.blocks:
            if seen & b:
                raise DomainError("blocks overlap")
            seen |= b
        if seen != self.X:
            raise DomainError("blocks do not cover X")

    def block(self, name: str) -> frozenset:
        return self.blocks[BLOCKS3.index(name)]

    def to_jsonable(self):
        from .report import to_jsonable

        return {name: to_jsonable(b) for name, b in zip(BLOCKS3, self.blocks)}


def flag3_to_partition(m: MFil) -> Partition7:
    if m.k != 3:
        raise DomainError("the 3-flag bijection needs k = 3")
    X, U1, U2, V1, V2 = m.X, m.U[1], m.U[2], m.V[1], m.V[2]
    blocks = {
        "1": V1 & V2,
        "13": V1 - V2,
        "12": (U1 & V2) - V1,
        "123": U1 - V1 - V2,
        "2": V2 - U1,
        "3": X - U2,
        "23": U2 - U1 - V2,
    }
    return Partition7(X, tuple(blocks[b] for b in BLOCKS3))


def partition_to_flag3(p: Partition7) -> MFil:
    a = p.block
    X = p.X
    U1 = X - (a("2") | a("3") | a("23"))
    U2 = X - a("3")
    V1 = a("1") | a("13")
    V2 = a("1") | a("2") | a("12")
    return MFil(X, (frozenset(), U1, U2, X), (frozenset(), V1, V2))


# --- Venn bijection -------------------------------------------------------------------


@dataclass(frozen=True)
class VennBijection:
    """(U|V)&W + U&V  ->  U&(V|W) + V&W, one tagged element at a time.

    Elements are (summand, label) with summand 0 or 1.
    """

    lhs: tuple
    rhs: tuple
    pairs: tuple

    def __call__(self, x):
        return dict(self.pairs)[x]

    def is_bijection(self) -> bool:
        src = [a for a, _ in self.pairs]
        dst = [b for _, b in self.pairs]
        return sorted(src) == sorted(self.lhs) and sorted(dst) == sorted(self.rhs) and len(set(dst)) == len(dst)

    def to_jsonable(self):
        return {"lhs": [list(x) for x in self.lhs], "rhs": [list(x) for x in self.rhs],
                "pairs": [[list(a), list(b)] for a, b in self.pairs]}


def venn_bijection(U, V, W) -> VennBijection:
    U, V, W = frozenset(U), frozenset(V), frozenset(W)
    lhs = sorted([(0, x) for x in (U | V) & W] + [(1, x) for x in U & V])
    rhs = sorted([(0, x) for x in U & (V | W)] + [(1, x) for x in V & W])
    pairs = []
    for side, x in lhs:
        region = (x in U, x in V, x in W)
        if region == (True, True, True):
            target = (side, x)
        elif region == (True, False, True):
            target = (0, x)
        elif region == (False, True, True):
            target = (1, x)
        elif region == (True, True, False):
            target = (0, x)
        else:
            raise ConsistencyError(f"label {x!r} in an impossible region {region}")
        pairs.append(((side, x), target))
    bij = VennBijection(tuple(lhs), tuple(rhs), tuple(pairs))
    if not bij.is_bijection():
        raise ConsistencyError("Venn region matching is not a bijection")
    return bij


# --- Cov sets ------------------------------------------------------------------------------


def cov_enumerate(a: int, b: int, n: int) -> dict:
    """Census {c: #pairs} of jointly surjective injection pairs <a> -> <n> <- <b>."""
    if min(a, b, n) < 0:
        raise DomainError("sizes must be nonnegative")
    if max(a, b, n) > SMALL_MAX:
        raise SizeError(f"Cov enumeration allows sizes <= {SMALL_MAX}")
    return dict(sorted(kernels.cov_census(a, b, n).items()))


def cov_closed_form(a: int, b: int, n: int) -> dict:
    c = a + b - n
    if c < 0 or c > min(a, b):
        return {}
    return {c: multinomial(n, (a - c, b - c, c)) * factorial(a) * factorial(b)}


def cov_contraction(f: SpeciesCard, g: SpeciesCard, lam: PolyLike, n: int) -> RingPoly:
    """sum_{a,b,c} lam^c census(a,b;n)[c] / (a! b!) f(a) g(b)."""
    lam = as_poly(lam)
    acc = ZERO
    for a in range(n + 1):
        for b in range(n + 1):
            for c, cnt in cov_enumerate(a, b, n).items():
                q, r = divmod(cnt, factorial(a) * factorial(b))
                if r:
                    raise ConsistencyError("Cov census not divisible by a! b!")
                acc = acc + q * lam**c * f[a] * g[b]
    return as_poly(acc)


# --- the comultiplication Delta -----------------------------------------------------------


def _weight(lam):
    return LAM if lam is None or lam == "formal" else as_poly(lam)


def delta_fam(X, lam=None) -> dict:
    """{(|A+C|, |B+C|): sum lam^|C|} over X = A + B + C."""
    labels = _labels(X)
    if len(labels) > SMALL_MAX:
        raise SizeError(f"Delta enumeration allows |X| <= {SMALL_MAX}")
    lam = _weight(lam)
    out: dict = {}
    for A, B, C in _covers(labels):
        key = (len(A) + len(C), len(B) + len(C))
        out[key] = out.get(key, ZERO) + lam ** len(C)
    return {k: v for k, v in sorted(out.items()) if v}


def delta_convolve(d1: dict, d2: dict) -> dict:
    out: dict = {}
    for (u1, v1), w1 in d1.items():
        for (u2, v2), w2 in d2.items():
            key = (u1 + u2, v1 + v2)
            out[key] = out.get(key, ZERO) + w1 * w2
    return {k: v for k, v in sorted(out.items()) if v}


def delta_monoidal_check(x: int, y: int, lam=None) -> Report:
    """Delta(X + Y) equals the componentwise-sum convolution of Delta X and Delta Y."""
    if x + y > SMALL_MAX:
        raise SizeError(f"x + y must be <= {SMALL_MAX}")
    w = _weight(lam)
    X = list(range(1, x + 1))
    Y = list(range(x + 1, x + y + 1))
    lhs = delta_fam(X + Y, w)
    rhs = delta_convolve(delta_fam(X, w), delta_fam(Y, w))
    mass = sum(lhs.values(), ZERO)
    params = {"x": x, "y": y, "lam": w}
    if lhs != rhs:
        return Report("delta_monoidal_check", params, False, {"lhs": lhs, "rhs": rhs})
    return Report("delta_monoidal_check", params, True, count=mass)


# --- cardinality Leibniz ------------------------------------------------------------------


def shift_leibniz_card_check(f: SpeciesCard, g: SpeciesCard, lam: PolyLike, x: int, y: int) -> Report:
    """#(F (x) G)(x+y) = sum_{r+s+t=x} multinomial(x;r,s,t) lam^t #(F(r+t+-) (x) G(s+t+-))(y)."""
    if x < 0 or y < 0 or x + y >= min(f.trunc, g.trunc):
        raise DomainError("x + y outside truncation")
    lam = as_poly(lam)
    lhs = l_tensor_card(f, g, lam, x + y)
    rhs = ZERO
    for t in range(x + 1):
        for r in range(x - t + 1):
            s = x - t - r
            rhs = rhs + multinomial(x, (r, s, t)) * lam**t * l_tensor_card(
                f.shifted(r + t), g.shifted(s + t), lam, y
            )
    params = {"f": f, "g": g, "lam": lam, "x": x, "y": y}
    if lhs != rhs:
        return Report("shift_leibniz_card_check", params, False, {"lhs": lhs, "rhs": rhs})
    return Report("shift_leibniz_card_check", params, True, count=lhs)
