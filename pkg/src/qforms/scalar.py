"""Exact arithmetic in the rational function field Q(z).

Every scalar in the package is a :class:`RatFunc`, a quotient of two
integer-coefficient polynomials in ``z`` kept in canonical form:

* numerator and denominator are coprime over Z[z] (the common integer
  content is divided out as well),
* the denominator has a positive leading coefficient,
* zero is stored as ``0/1``.

Negative powers of ``z`` are just denominator factors, so Laurent
polynomials need no separate type.  Polynomial arithmetic is delegated to
``flint.fmpz_poly``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from flint import fmpz_poly, nmod_poly

__all__ = [
    "RatFunc",
    "RatFuncError",
    "DivisionByZeroError",
    "DomainError",
    "PoleError",
    "ZERO",
    "ONE",
    "Z",
    "z_pow",
    "q_pow",
    "q_int",
    "rf_arith",
    "rf_eval",
    "as_ratfunc",
]


class RatFuncError(ArithmeticError):
    """Base class for scalar-field errors."""


class DivisionByZeroError(RatFuncError, ZeroDivisionError):
    pass


class DomainError(RatFuncError, ValueError):
    pass


class PoleError(RatFuncError):
    """Raised when a rational function is evaluated at a root of its denominator."""

    def __init__(self, point):
        super().__init__(f"pole at z = {point}")
        self.point = point


_POLY_ONE = fmpz_poly([1])
_POLY_ZERO = fmpz_poly([])


def _poly(value) -> fmpz_poly:
    if isinstance(value, fmpz_poly):
        return value
    if isinstance(value, int):
        return fmpz_poly([value])
    if isinstance(value, (list, tuple)):
        return fmpz_poly(list(value))
    raise TypeError(f"cannot build a polynomial from {type(value).__name__}")


class RatFunc:
    """An element of Q(z) in canonical form.  Instances are immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _poly(num)
        den = _poly(den)
        if den.is_zero():
            raise DivisionByZeroError("zero denominator")
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _trusted(cls, num: fmpz_poly, den: fmpz_poly) -> RatFunc:
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> RatFunc:
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    # ----------------------------------------------------------- predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # ----------------------------------------------------------- arithmetic
    def __add__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            if self.den.is_one():
                return RatFunc._trusted(self.num + other.num, _POLY_ONE)
            return _make(self.num + other.num, self.den)
        return _make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._trusted(-self.num, self.den)

    def __sub__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc._trusted(self.num * other.num, _POLY_ONE)
        # cross cancellation keeps both factors small; the result is then
        # canonical up to the sign of the denominator
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num // g1, other.den // g1)
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num // g2, self.den // g2)
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc._trusted(num, den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise DivisionByZeroError("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc._trusted(num, den)

    def __truediv__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return ONE
        return RatFunc._trusted(self.num**exponent, self.den**exponent)

    # ------------------------------------------------------------ comparison
    def __eq__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # ----------------------------------------------------------- evaluation
    def __call__(self, at) -> Fraction:
        return rf_eval(self, at)

    def eval_mod(self, at: int, p: int) -> int | None:
        """Value at ``z = at`` in GF(p), or ``None`` when the denominator vanishes there."""
        den = int(nmod_poly([int(c) for c in self.den.coeffs()], p)(at))
        if den == 0:
            return None
        num = int(nmod_poly([int(c) for c in self.num.coeffs()], p)(at))
        return num * pow(den, -1, p) % p

    def degree_bound(self) -> int:
        """max(deg num, deg den); used to bound the Schwartz-Zippel failure rate."""
        return max(self.num.degree(), self.den.degree(), 0)

    # --------------------------------------------------------------- display
    def __str__(self):
        if self.den.is_one():
            return f"({_poly_str(self.num)})"
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"RatFunc('{self}')"

    @classmethod
    def parse(cls, text: str) -> RatFunc:
        """Inverse of ``str``: reads ``(<poly>)`` or ``(<poly>)/(<poly>)``."""
        text = text.strip()
        match = re.fullmatch(r"\((.*?)\)(?:/\((.*)\))?", text)
        if not match:
            raise ValueError(f"not a canonical rational function: {text!r}")
        num = _parse_poly(match.group(1))
        den = _parse_poly(match.group(2)) if match.group(2) is not None else _POLY_ONE
        return cls(num, den)


def _canonical(num: fmpz_poly, den: fmpz_poly):
    if num.is_zero():
        return _POLY_ZERO, _POLY_ONE
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


def _make(num: fmpz_poly, den: fmpz_poly) -> RatFunc:
    num, den = _canonical(num, den)
    return RatFunc._trusted(num, den)


def as_ratfunc(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, int):
        return RatFunc._trusted(fmpz_poly([value]) if value else _POLY_ZERO, _POLY_ONE)
    if isinstance(value, Fraction):
        return RatFunc.from_fraction(value)
    return NotImplemented


def _poly_str(poly: fmpz_poly) -> str:
    coeffs = [int(c) for c in poly.coeffs()]
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            mono = "z" if power == 1 else f"z^{power}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*(z(?:\^(\d+))?)?")


def _parse_poly(text: str) -> fmpz_poly:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return _POLY_ZERO
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, mag, mono, power = match.groups()
        if mag is None and mono is None:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(mag) if mag is not None else 1
        if sign == "-":
            c = -c
        k = 0 if mono is None else (int(power) if power is not None else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = match.end()
    top = max(coeffs)
    return fmpz_poly([coeffs.get(k, 0) for k in range(top + 1)])


ZERO = RatFunc._trusted(_POLY_ZERO, _POLY_ONE)
ONE = RatFunc._trusted(_POLY_ONE, _POLY_ONE)
Z = RatFunc._trusted(fmpz_poly([0, 1]), _POLY_ONE)


@lru_cache(maxsize=None)
def z_pow(k: int) -> RatFunc:
    """z**k for any integer k."""
    mono = fmpz_poly([0] * abs(k) + [1])
    if k >= 0:
        return RatFunc._trusted(mono, _POLY_ONE)
    return RatFunc._trusted(_POLY_ONE, mono)


def q_pow(N: int, k: int) -> RatFunc:
    """q**k with q = z**N."""
    return z_pow(N * k)


def q_int(n: int, p: RatFunc) -> RatFunc:
    """The q-integer [n]_p = (p^n - p^-n) / (p - p^-1)."""
    p = as_ratfunc(p)
    if p.is_zero() or p == ONE or p == -ONE:
        raise DomainError(f"[n]_p is undefined for p = {p}")
    return (p**n - p ** (-n)) / (p - p.inverse())


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if as_ratfunc(b).is_zero():
            raise DivisionByZeroError(f"division of {a} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _horner(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + int(c)
    return acc


def rf_eval(f: RatFunc, at) -> Fraction:
    """Exact value of ``f`` at a rational point."""
    f = as_ratfunc(f)
    x = Fraction(at)
    den = _horner(f.den.coeffs(), x)
    if den == 0:
        raise PoleError(x)
    return _horner(f.num.coeffs(), x) / den
