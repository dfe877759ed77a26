"""Exact base fields and their valuations.

Two instances: Q with the p-adic valuation (value group Z), and Q(t) with
the composite rank-2 valuation (value group Z^2-lex)

    v(f) = (ord_t f, v_p(c))

where ord_t is the t-adic order of f at 0 and c the coefficient of the
lowest term of its Laurent expansion.  The first component dominating
makes v a valuation onto Z^2-lex: both components are multiplicative, and
on sums either the orders differ (the lower one wins exactly) or they
agree and the lowest coefficients add, where cancellation only increases
the value.

Rationals are stdlib ``fractions.Fraction`` (already reduced, positive
denominator, arbitrary precision).  ``v(0)`` is ``None`` everywhere in
this module -- the cut-level infinity lives in :mod:`cutval.cuts` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, StructuralError

Rational = Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _int_p_exponent(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("0 has no p-exponent")
    e = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        e += 1
    return e


def vp(p: int, q: Fraction) -> tuple[int] | None:
    """Exponent of p in q as a rank-1 group element; None for q = 0."""
    if not is_prime(p):
        raise ConfigError(f"{p} is not prime")
    if q == 0:
        return None
    return (_int_p_exponent(q.numerator, p) - _int_p_exponent(q.denominator, p),)


def parse_rational(text: str) -> Fraction:
    s = str(text).strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise StructuralError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Polynomial:
    """Univariate polynomial over Q, coefficients lowest-degree-first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    ZERO: "Polynomial"
    ONE: "Polynomial"
    T: "Polynomial"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def ord(self) -> int | None:
        """Lowest exponent with a nonzero coefficient; None for 0."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def lowest_coeff(self) -> Fraction:
        o = self.ord()
        if o is None:
            raise ValueError("zero polynomial")
        return self.coeffs[o]

    def leading_coeff(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return Polynomial(out)

    def scale(self, c: Fraction) -> "Polynomial":
        return Polynomial(tuple(c * a for a in self.coeffs))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quo = [Fraction(0)] * (dq + 1)
        lc = other.leading_coeff()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lc
            quo[k] = c
            if c != 0:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return Polynomial(quo), Polynomial(rem[: other.degree if other.degree > 0 else 0])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coeff())

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __repr__(self):
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"


Polynomial.ZERO = Polynomial()
Polynomial.ONE = Polynomial((1,))
Polynomial.T = Polynomial((0, 1))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic Euclidean gcd; each remainder is renormalized monic so the
    result is deterministic."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.monic()
    return a.monic()


class RationalFunction:
    """Reduced fraction of polynomials over Q with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = Polynomial.ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Polynomial.ZERO, Polynomial.ONE
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            lc = den.leading_coeff()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    ZERO: "RationalFunction"
    ONE: "RationalFunction"
    T: "RationalFunction"

    @classmethod
    def constant(cls, q) -> "RationalFunction":
        return cls(Polynomial((Fraction(q),)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        return (isinstance(other, RationalFunction)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash(("RationalFunction", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return format_ratfunc(self)


RationalFunction.ZERO = RationalFunction(Polynomial.ZERO)
RationalFunction.ONE = RationalFunction(Polynomial.ONE)
RationalFunction.T = RationalFunction(Polynomial.T)


def composite_valuation(p: int, f: RationalFunction) -> tuple[int, int] | None:
    """(t-adic order, v_p of the lowest Laurent coefficient); None for 0."""
    if not is_prime(p):
        raise ConfigError(f"{p} is not prime")
    if f.is_zero():
        return None
    on, od = f.num.ord(), f.den.ord()
    c = f.num.coeffs[on] / f.den.coeffs[od]
    (e,) = vp(p, c)
    return (on - od, e)


def format_poly_list(poly: Polynomial) -> list[str]:
    return [format_rational(c) for c in poly.coeffs]


def parse_poly_list(coeffs) -> Polynomial:
    return Polynomial(tuple(parse_rational(c) for c in coeffs))


def format_ratfunc(f: RationalFunction) -> str:
    num = "[" + ",".join(format_poly_list(f.num)) + "]"
    if f.den == Polynomial.ONE:
        return num
    return num + "/[" + ",".join(format_poly_list(f.den)) + "]"


def parse_ratfunc(text: str) -> RationalFunction:
    s = text.strip()
    if not s.startswith("["):
        return RationalFunction.constant(parse_rational(s))
    # split on the "]/[" between the lists, not on a "/" inside "a/b" coeffs
    if "]/" in s:
        num_part, den_part = s.split("]/", 1)
        num = parse_poly_list(_split_list(num_part + "]"))
        den = parse_poly_list(_split_list(den_part))
    else:
        num = parse_poly_list(_split_list(s))
        den = Polynomial.ONE
    return RationalFunction(num, den)


def _split_list(s: str) -> list[str]:
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise StructuralError(f"not a coefficient list: {s!r}")
    body = s[1:-1].strip()
    return [] if not body else body.split(",")


@dataclass(frozen=True)
class ValuedField:
    """A computable field with a surjective valuation onto Z or Z^2-lex.

    kind "Q": field Q, p-adic valuation.  kind "Qt": field Q(t), composite
    valuation (ord_t, v_p of lowest coefficient).
    """

    kind: str
    p: int

    def __post_init__(self):
        if self.kind not in ("Q", "Qt"):
            raise ConfigError(f"unknown field kind {self.kind!r}")
        if not is_prime(self.p):
            raise ConfigError(f"{self.p} is not prime")

    @property
    def rank(self) -> int:
        return 1 if self.kind == "Q" else 2

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else RationalFunction.ZERO

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else RationalFunction.ONE

    def scalar(self, obj):
        """Coerce ints, 'a/b' strings, JSON objects or existing scalars."""
        if self.kind == "Q":
            if isinstance(obj, Fraction):
                return obj
            if isinstance(obj, int):
                return Fraction(obj)
            if isinstance(obj, str):
                return parse_rational(obj)
            raise StructuralError(f"cannot coerce {obj!r} into Q")
        if isinstance(obj, RationalFunction):
            return obj
        if isinstance(obj, (int, Fraction)):
            return RationalFunction.constant(obj)
        if isinstance(obj, str):
            return parse_ratfunc(obj)
        if isinstance(obj, dict):
            num = parse_poly_list(obj["num"])
            den = parse_poly_list(obj["den"]) if "den" in obj else Polynomial.ONE
            return RationalFunction(num, den)
        raise StructuralError(f"cannot coerce {obj!r} into Q(t)")

    def scalar_text(self, x) -> str:
        return format_rational(x) if self.kind == "Q" else format_ratfunc(x)

    def scalar_to_json(self, x):
        if self.kind == "Q":
            return format_rational(x)
        out = {"num": format_poly_list(x.num)}
        if x.den != Polynomial.ONE:
            out["den"] = format_poly_list(x.den)
        return out

    def value(self, x) -> tuple[int, ...] | None:
        """The valuation; None marks v(0)."""
        if self.kind == "Q":
            return vp(self.p, x)
        return composite_valuation(self.p, x)

    def element_with_value(self, gamma: tuple[int, ...]):
        """Constructive surjectivity: p^a for (a), p^a * t^n for (n, a)."""
        if self.kind == "Q":
            (a,) = gamma
            return Fraction(self.p) ** a
        n, a = gamma
        c = Polynomial((Fraction(self.p) ** a,))
        if n >= 0:
            return RationalFunction(c * _t_power(n))
        return RationalFunction(c, _t_power(-n))


def _t_power(n: int) -> Polynomial:
    return Polynomial((0,) * n + (1,))
