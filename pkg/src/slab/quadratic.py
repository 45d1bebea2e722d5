"""Exact real quadratic numbers ``a + b*sqrt(D)`` and continued fractions.

Rationals are :class:`fractions.Fraction`.  All comparisons are decided with
integer arithmetic (squaring), never with floating point.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

__all__ = [
    "QuadraticReal",
    "CFExpansion",
    "UnsupportedFieldError",
    "qr",
    "qr_compare",
    "qr_floor",
    "cf_expand",
    "cf_evaluate",
    "convergents",
    "periodic_cf_value",
    "squarefree_decompose",
]

Number = Union[int, Fraction, "QuadraticReal"]


class UnsupportedFieldError(ValueError):
    """Two irrationalities from different quadratic fields were mixed."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` square-free."""
    if n < 0:
        raise ValueError("radicand must be non-negative")
    if n == 0:
        return 0, 0
    k, m = 1, n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1 if p == 2 else 2
    return k, m


def _sign_of(a: Fraction, b: Fraction, D: int) -> int:
    """Sign of ``a + b*sqrt(D)`` by exact squaring."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or D == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare a^2 with b^2 D
    lhs, rhs = a * a, b * b * D
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


@dataclass(frozen=True)
class QuadraticReal:
    """The real number ``a + b*sqrt(D)`` with ``D`` square-free.

    Rationals are stored with ``b == 0`` and ``D == 0``.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    D: int = 0

    def __post_init__(self):
        a, b, D = Fraction(self.a), Fraction(self.b), int(self.D)
        k, m = squarefree_decompose(D)
        b = b * k
        if m == 1:
            a, b, m = a + b, Fraction(0), 0
        if b == 0:
            m = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", m)

    # -- construction -------------------------------------------------------
    @classmethod
    def sqrt(cls, n: int) -> "QuadraticReal":
        return cls(0, 1, n)

    @classmethod
    def coerce(cls, x: Number) -> "QuadraticReal":
        if isinstance(x, QuadraticReal):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadraticReal")

    _TERM = re.compile(r"^([+-]?[^*]*)\*?\s*sqrt\((\d+)\)$")

    @classmethod
    def parse(cls, text: str) -> "QuadraticReal":
        """Parse ``"a+b*sqrt(D)"``, ``"sqrt(5)"``, ``"-1/2"``, ``"(3-sqrt(5))/2"`` style is not
        supported; use ``"3/2-1/2*sqrt(5)"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty number")
        # split on + or - that are not at the start and not inside sqrt(...)
        terms = re.findall(r"[+-]?[^+-]+", s)
        a, b, D = Fraction(0), Fraction(0), 0
        for t in terms:
            m = cls._TERM.match(t)
            if m:
                coef, rad = m.group(1), int(m.group(2))
                if coef in ("", "+"):
                    c = Fraction(1)
                elif coef == "-":
                    c = Fraction(-1)
                else:
                    c = Fraction(coef)
                k, sq = squarefree_decompose(rad)
                if sq in (0, 1):
                    a += c * k
                    continue
                if D and D != sq:
                    raise UnsupportedFieldError(f"mixed radicals sqrt({D}) and sqrt({sq}) in {text!r}")
                D = sq
                b += c * k
            else:
                a += Fraction(t)
        return cls(a, b, D)

    # -- field helpers ----------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _common(self, other: Number) -> tuple["QuadraticReal", int]:
        o = QuadraticReal.coerce(other)
        if self.D and o.D and self.D != o.D:
            raise UnsupportedFieldError(f"sqrt({self.D}) and sqrt({o.D}) live in different fields")
        return o, self.D or o.D

    def conjugate(self) -> "QuadraticReal":
        return QuadraticReal(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o, D = self._common(other)
        return QuadraticReal(self.a + o.a, self.b + o.b, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal(-self.a, -self.b, self.D)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        o, D = self._common(other)
        return QuadraticReal(self.a - o.a, self.b - o.b, D)

    def __rsub__(self, other):
        return QuadraticReal.coerce(other) - self

    def __mul__(self, other):
        o, D = self._common(other)
        return QuadraticReal(self.a * o.a + self.b * o.b * D, self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o, D = self._common(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in QuadraticReal")
        num = self * o.conjugate()
        return QuadraticReal(num.a / n, num.b / n, D)

    def __rtruediv__(self, other):
        return QuadraticReal.coerce(other) / self

    # -- order ------------------------------------------------------------------
    def sign(self) -> int:
        return _sign_of(self.a, self.b, self.D)

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadraticReal(Fraction(other))
        if not isinstance(other, QuadraticReal):
            return NotImplemented
        return (self.a, self.b, self.D) == (other.a, other.b, other.D)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __floor__(self):
        return qr_floor(self)

    def __ceil__(self):
        return -qr_floor(-self)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def fractional_part(self) -> "QuadraticReal":
        return self - qr_floor(self)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        b = "" if self.b == 1 else "-" if self.b == -1 else f"{self.b}*"
        if self.a == 0:
            return f"{b}sqrt({self.D})"
        sep = "+" if self.b > 0 else ""
        return f"{self.a}{sep}{b}sqrt({self.D})"

    def __repr__(self):
        return f"QuadraticReal({self})"


def qr(x: Number | str) -> QuadraticReal:
    """Convenience constructor accepting ints, Fractions, QuadraticReals and strings."""
    if isinstance(x, str):
        return QuadraticReal.parse(x)
    return QuadraticReal.coerce(x)


def qr_compare(x: Number, y: Number) -> int:
    """-1, 0 or 1 according as ``x < y``, ``x == y``, ``x > y``."""
    return (qr(x) - qr(y)).sign()


def _isqrt_fraction_floor(q: Fraction) -> int:
    """floor(sqrt(q)) for a non-negative rational ``q``."""
    # floor(sqrt(p/r)) == floor(sqrt(p*r) / r) == isqrt(p*r) // r
    return math.isqrt(q.numerator * q.denominator) // q.denominator


def qr_floor(x: Number) -> int:
    """Largest integer ``<= x``."""
    x = qr(x)
    if x.b == 0:
        return math.floor(x.a)
    # bracket b*sqrt(D) between consecutive integers, then test candidates exactly
    t = x.b * x.b * x.D
    r = _isqrt_fraction_floor(t)  # r <= |b| sqrt(D) < r + 1
    if x.b > 0:
        lo = math.floor(x.a + r)
    else:
        lo = math.floor(x.a - r - 1)
    cand = lo
    while x - (cand + 1) >= 0:
        cand += 1
    while x - cand < 0:
        cand -= 1
    return cand


@dataclass(frozen=True)
class CFExpansion:
    """Partial quotients with a termination status.

    ``status`` is ``"terminated"`` (rational input), ``"periodic"`` (quadratic
    input; ``partial_quotients[:preperiod_len]`` followed by ``period``
    repeated forever) or ``"truncated"``.
    """

    partial_quotients: tuple[int, ...]
    status: str
    preperiod_len: int = 0
    period: tuple[int, ...] | None = None

    def term(self, k: int) -> int:
        if k < len(self.partial_quotients):
            return self.partial_quotients[k]
        if self.status == "periodic":
            j = (k - self.preperiod_len) % len(self.period)
            return self.period[j]
        raise IndexError(f"partial quotient {k} not available ({self.status})")

    def terms(self, k: int) -> list[int]:
        return [self.term(i) for i in range(k)]

    @property
    def preperiod(self) -> tuple[int, ...]:
        if self.status == "periodic":
            return self.partial_quotients[: self.preperiod_len]
        return self.partial_quotients

    def to_json(self) -> dict:
        return {
            "preperiod": list(self.preperiod),
            "period": list(self.period) if self.period is not None else None,
            "terminated": self.status == "terminated",
        }

    def __str__(self):
        if self.status == "periodic":
            pre = list(self.preperiod)
            head = f"{pre[0]};" if pre else ""
            rest = ",".join(map(str, pre[1:]))
            per = ",".join(map(str, self.period))
            if pre:
                sep = "," if rest else ""
                return f"[{head}{rest}{sep}period({per})]"
            return f"[period({per})]"
        a = self.partial_quotients
        tail = ",".join(map(str, a[1:]))
        dots = ",..." if self.status == "truncated" else ""
        return f"[{a[0]};{tail}{dots}]" if len(a) > 1 else f"[{a[0]}{dots}]"


def _cf_rational(x: Fraction) -> CFExpansion:
    p, q = x.numerator, x.denominator
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    return CFExpansion(tuple(terms), "terminated")


def cf_expand(x: Number | str, max_terms: int = 1000) -> CFExpansion:
    """Continued fraction of a positive rational or quadratic irrational.

    Rationals use Euclid's algorithm; quadratic irrationals are expanded on
    their exact complete quotients and the period is found when a complete
    quotient repeats.
    """
    x = qr(x)
    if x.sign() <= 0:
        raise ValueError("invalid arguments: continued fraction needs x > 0")
    if x.is_rational:
        cf = _cf_rational(x.a)
        if len(cf.partial_quotients) > max_terms:
            return CFExpansion(cf.partial_quotients[:max_terms], "truncated")
        return cf
    seen: dict[QuadraticReal, int] = {}
    terms: list[int] = []
    while len(terms) < max_terms:
        if x in seen:
            start = seen[x]
            return CFExpansion(tuple(terms), "periodic", start, tuple(terms[start:]))
        seen[x] = len(terms)
        a = qr_floor(x)
        terms.append(a)
        x = 1 / (x - a)
    return CFExpansion(tuple(terms), "truncated")


def convergents(cf: CFExpansion | Sequence[int], k: int) -> list[Fraction]:
    """First ``k`` convergents ``p_i/q_i`` via the standard three-term recurrence."""
    if isinstance(cf, CFExpansion):
        terms = cf.terms(k)
    else:
        terms = list(cf)
        if k > len(terms):
            raise ValueError(f"only {len(terms)} partial quotients available")
        terms = terms[:k]
    out = []
    p0, q0, p1, q1 = 1, 0, terms[0] if terms else 0, 1
    if terms:
        out.append(Fraction(p1, q1))
    for a in terms[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def cf_evaluate(terms: Sequence[int]) -> Fraction:
    """Value of the finite continued fraction ``[a0; a1, ..., an]`` (nested division)."""
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a + 1 / value
    return value


def periodic_cf_value(preperiod: Sequence[int], period: Sequence[int]) -> QuadraticReal:
    """Exact value of ``[preperiod; period, period, ...]`` as a quadratic irrational."""
    if not period:
        raise ValueError("period must be non-empty")
    if any(a < 1 for a in period) or any(a < 1 for a in preperiod[1:]):
        raise ValueError("partial quotients after the first must be >= 1")
    # y = [c0; ..., c_{m-1}, y]  ->  y = (P y + P') / (Q y + Q')
    P, Pp, Q, Qp = 1, 0, 0, 1  # matrix product of [[c,1],[1,0]]
    for c in period:
        P, Pp, Q, Qp = P * c + Pp, P, Q * c + Qp, Q
    # Q y^2 + (Qp - P) y - Pp = 0, positive root
    A, B, C = Q, Qp - P, -Pp
    disc = B * B - 4 * A * C
    y = QuadraticReal(Fraction(-B, 2 * A), Fraction(1, 2 * A), disc)
    if not preperiod:
        return y
    x = y
    for a in reversed(preperiod):
        x = a + 1 / x
    return x
