"""Exact integer and Z[lam] polynomial arithmetic, plus multinomial coefficients.

Polynomials are dense and univariate in the formal weight ``lam``; coefficients
are Python ints, so every operation is exact.  The text form is

    "c0 + c1*lam + c2*lam^2"

with zero terms omitted and ``"0"`` for the zero polynomial.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import ConsistencyError, DomainError, ParseError

N_MAX = 64

_FACTORIALS = [1]
for _i in range(1, N_MAX + 1):
    _FACTORIALS.append(_FACTORIALS[-1] * _i)


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f"factorial of negative number {n}")
    if n <= N_MAX:
        return _FACTORIALS[n]
    return math.factorial(n)


class RingPoly:
    """Immutable dense polynomial in ``lam`` with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``lam**i``; the tuple never ends in a
    zero, so the zero polynomial has ``coeffs == ()`` and degree -1.
    Plain ints mix freely with RingPoly in arithmetic and comparisons.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Union[int, Iterable[int]] = ()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, coeffs: tuple) -> "RingPoly":
        # caller guarantees canonical form
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("RingPoly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "RingPoly":
        if coeff == 0:
            return ZERO
        return cls._raw((0,) * degree + (int(coeff),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __int__(self) -> int:
        if not self.is_constant():
            raise TypeError(f"polynomial {self} is not constant")
        return self.constant()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self
            other = RingPoly._raw((other,))
        elif not isinstance(other, RingPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return RingPoly._raw(a)
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        while out and out[-1] == 0:
            out.pop()
        return RingPoly._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self) -> "RingPoly":
        return RingPoly._raw(tuple(-c for c in self.coeffs))

    def __pos__(self) -> "RingPoly":
        return self

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, RingPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            if other == 1:
                return self
            return RingPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, RingPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(b) == 1:
            return self * b[0]
        if len(a) == 1:
            return other * a[0]
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        # leading coefficient is a product of nonzero ints, hence nonzero
        return RingPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingPoly":
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial powers need a nonnegative integer exponent")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "RingPoly":
        """Multiply by ``lam**k``."""
        if not self.coeffs or k == 0:
            return self
        return RingPoly._raw((0,) * k + self.coeffs)

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RingPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant())
        return hash(("RingPoly", self.coeffs))

    def __call__(self, x: int) -> int:
        return poly_eval(self, x)

    def __repr__(self) -> str:
        return f"RingPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self)


ZERO = RingPoly._raw(())
ONE = RingPoly._raw((1,))
LAM = RingPoly._raw((0, 1))

PolyLike = Union[int, RingPoly]


def as_poly(x) -> RingPoly:
    if isinstance(x, RingPoly):
        return x
    if isinstance(x, bool):
        raise DomainError("booleans are not polynomials")
    if isinstance(x, int):
        return RingPoly._raw((x,)) if x else ZERO
    if isinstance(x, str):
        return parse_poly(x)
    raise DomainError(f"cannot interpret {x!r} as a polynomial")


def poly_eval(p: PolyLike, x: int) -> int:
    """Horner evaluation at an integer."""
    if isinstance(p, int):
        return p
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def format_poly(p: PolyLike) -> str:
    if isinstance(p, int):
        return str(p)
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        elif i == 1:
            body = f"{abs(c)}*lam"
        else:
            body = f"{abs(c)}*lam^{i}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


_VAR = r"(?:lambda|lam|λ)"
_TERM = rf"(?:\d+(?:\*?{_VAR}(?:\^\d+)?)?|{_VAR}(?:\^\d+)?)"
_POLY_RE = re.compile(rf"[+-]?{_TERM}(?:[+-]{_TERM})*")
_TERM_RE = re.compile(
    rf"(?P<sign>[+-]?)(?P<coef>\d+)?\*?(?P<var>{_VAR})?(?:\^(?P<exp>\d+))?"
)


def parse_poly(text: str) -> RingPoly:
    """Parse the report text form back into a RingPoly.

    Accepts ``lam``, ``lambda`` or ``λ`` as the variable, an optional ``*``
    between coefficient and variable, and ``+``/``-`` between terms.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    s = "".join(text.split())
    if not _POLY_RE.fullmatch(s):
        raise ParseError(f"malformed polynomial literal {text!r}")
    coeffs: dict[int, int] = {}
    for m in _TERM_RE.finditer(s):
        if m.end() == m.start():
            continue
        sign, coef, var, exp = m.group("sign", "coef", "var", "exp")
        c = int(coef) if coef is not None else 1
        k = 0 if var is None else (int(exp) if exp is not None else 1)
        coeffs[k] = coeffs.get(k, 0) + (-c if sign == "-" else c)
    width = max(coeffs) + 1
    return RingPoly([coeffs.get(i, 0) for i in range(width)])


# --- multinomials -----------------------------------------------------------


def _check_parts(n: int, parts: Sequence[int]) -> None:
    if n < 0 or any(p < 0 for p in parts):
        raise DomainError(f"negative entry in multinomial({n}, {list(parts)})")
    if sum(parts) != n:
        raise DomainError(f"parts {list(parts)} do not sum to {n}")


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / prod(parts!) for parts summing to n."""
    _check_parts(n, parts)
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


@dataclass(frozen=True)
class QParam:
    """An integer q >= 2; ``prime_flag`` gates subspace enumeration."""

    q: int
    prime_flag: bool = field(init=False)

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 2:
            raise DomainError(f"q must be an integer >= 2, got {self.q!r}")
        object.__setattr__(self, "prime_flag", _is_prime(self.q))


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def as_qparam(q) -> QParam:
    return q if isinstance(q, QParam) else QParam(q)


@lru_cache(maxsize=None)
def _phi(n: int, q: int) -> int:
    out = 1
    for i in range(1, n + 1):
        out *= q**i - 1
    return out


def phi(n: int, q) -> int:
    """(q^n - 1)(q^(n-1) - 1)...(q - 1); phi(0) = 1."""
    if n < 0:
        raise DomainError(f"phi needs n >= 0, got {n}")
    return _phi(n, as_qparam(q).q)


@lru_cache(maxsize=None)
def _gauss(n: int, parts: tuple, q: int) -> int:
    den = 1
    for p in parts:
        den *= _phi(p, q)
    val, rem = divmod(_phi(n, q), den)
    if rem:
        raise ConsistencyError(f"Gaussian multinomial [{n}; {parts}]_{q} is not integral")
    return val


def gauss_multinomial(n: int, parts: Sequence[int], q) -> int:
    """phi_n(q) / prod phi_{parts_i}(q), checked to be an exact integer."""
    _check_parts(n, parts)
    return _gauss(n, tuple(parts), as_qparam(q).q)
