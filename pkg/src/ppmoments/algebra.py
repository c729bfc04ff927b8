"""Exact univariate algebra over the rationals.

Everything downstream works in the Catalan variable c, the power series
solving c = 1 + x^2 c^2 with c(0) = 1.  This module supplies the exact
building blocks:

  PolyC        polynomials in c, dense coefficient tuple, low to high,
               trailing zeros stripped (canonical degree).
  RationalFnC  quotients of PolyC in canonical form: gcd-reduced and
               monic denominator, so equality is plain field comparison.
  SeriesX      truncated power series in x with Fraction coefficients;
               arithmetic never reports powers beyond the truncation.
  FineStructureForm
               the normal form of an order-g moment correction:
               c/(2-c)^g times a polynomial in t = (c-1)/(2-c), stored
               as a sparse integer-keyed coefficient map.

Rationals are plain fractions.Fraction (already canonical: reduced,
positive denominator, zero is 0/1).  They serialize as "p/q", or "p"
when the denominator is 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "BigRational",
    "DenominatorVanishesAtOrigin",
    "FineStructureForm",
    "NotFineStructure",
    "POLY_C",
    "POLY_ONE",
    "POLY_ZERO",
    "C_MINUS_ONE",
    "TWO_MINUS_C",
    "PolyC",
    "RationalFnC",
    "SeriesX",
    "catalan_number",
    "catalan_series",
    "expand_in_x",
    "fine_structure_form",
    "fine_structure_to_rational",
    "rat_from_str",
    "rat_to_str",
    "theta_support_window",
]

BigRational = Fraction

Scalar = Union[int, Fraction]


class DenominatorVanishesAtOrigin(ValueError):
    """The denominator vanishes at c = 1 (x = 0), so no x-expansion exists."""


class NotFineStructure(ValueError):
    """The function is not c/(2-c)^g times a polynomial in t = (c-1)/(2-c)."""


def rat_to_str(q: Fraction) -> str:
    """Render a rational exactly, "p/q" or just "p" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


class PolyC:
    """Dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyC is immutable")

    @property
    def degree(self) -> int:
        """Canonical degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyC):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == PolyC((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other) -> "PolyC":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyC(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "PolyC":
        return PolyC(-c for c in self.coeffs)

    def __sub__(self, other) -> "PolyC":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyC":
        return -(self - other)

    def __mul__(self, other) -> "PolyC":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self or not other:
            return POLY_ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyC(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyC":
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = POLY_ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["PolyC", "PolyC"]:
        other = _as_poly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lead = other.degree, other.leading
        while len(rem) - 1 >= d and any(rem):
            k = len(rem) - 1
            if rem[k] == 0:
                rem.pop()
                continue
            f = rem[k] / lead
            q[k - d] = f
            for j in range(d + 1):
                rem[k - d + j] -= f * other.coeffs[j]
            rem.pop()
        return PolyC(q), PolyC(rem)

    def __floordiv__(self, other) -> "PolyC":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "PolyC":
        return divmod(self, other)[1]

    def derivative(self) -> "PolyC":
        return PolyC(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def monic(self) -> "PolyC":
        if not self:
            return self
        lead = self.leading
        return PolyC(c / lead for c in self.coeffs)

    def evaluate(self, x: Scalar) -> Fraction:
        """Horner evaluation at an exact rational point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_series(self, s: "SeriesX") -> "SeriesX":
        """Horner evaluation at a truncated series."""
        acc = SeriesX(s.order, ())
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    @staticmethod
    def gcd(a: "PolyC", b: "PolyC") -> "PolyC":
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        if not self:
            return "0"
        parts = []
        for i, co in enumerate(self.coeffs):
            if co == 0:
                continue
            if i == 0:
                parts.append(rat_to_str(co))
            else:
                mag = "" if abs(co) == 1 else f"{rat_to_str(abs(co))}*"
                var = "c" if i == 1 else f"c^{i}"
                parts.append(("-" if co < 0 else "") + mag + var)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _as_poly(x) -> "PolyC":
    if isinstance(x, PolyC):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyC((x,))
    return NotImplemented


POLY_ZERO = PolyC()
POLY_ONE = PolyC((1,))
POLY_C = PolyC((0, 1))
C_MINUS_ONE = PolyC((-1, 1))
TWO_MINUS_C = PolyC((2, -1))


class RationalFnC:
    """Quotient of two PolyC in canonical form (reduced, monic denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=POLY_ONE):
        num, den = _as_poly(num), _as_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = PolyC.gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading
            if lead != 1:
                num = num * (1 / lead)
                den = den.monic()
        else:
            den = POLY_ONE
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFnC is immutable")

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RationalFnC":
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFnC(self.num * other.den + other.num * self.den,
                           self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFnC":
        return RationalFnC(-self.num, self.den)

    def __sub__(self, other):
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other) -> "RationalFnC":
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFnC(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFnC":
        other = _as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFnC(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfn(other) / self

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self) -> str:
        if self.den == POLY_ONE:
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def _as_ratfn(x):
    if isinstance(x, RationalFnC):
        return x
    if isinstance(x, (int, Fraction, PolyC)):
        return RationalFnC(_as_poly(x))
    return NotImplemented


class SeriesX:
    """Power series in x truncated at a fixed order, exact coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Scalar] = ()):
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("SeriesX is immutable")

    def coefficient(self, i: int) -> Fraction:
        if i > self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i] if i >= 0 else Fraction(0)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, SeriesX):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __add__(self, other) -> "SeriesX":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.order, other.order)
        return SeriesX(n, (self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self) -> "SeriesX":
        return SeriesX(self.order, (-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other) -> "SeriesX":
        if isinstance(other, (int, Fraction)):
            return SeriesX(self.order, (c * other for c in self.coeffs))
        if not isinstance(other, SeriesX):
            return NotImplemented
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return SeriesX(n, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SeriesX":
        if n < 0:
            raise ValueError("negative series power; use inverse() first")
        result = SeriesX(self.order, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "SeriesX":
        """Multiplicative inverse; requires a nonzero constant term."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("series has no inverse: zero constant term")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = 1 / a0
        for n in range(1, self.order + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    s += self.coeffs[k] * out[n - k]
            out[n] = -s / a0
        return SeriesX(self.order, out)

    def __truediv__(self, other) -> "SeriesX":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def derivative(self) -> "SeriesX":
        if self.order == 0:
            return SeriesX(0, ())
        return SeriesX(self.order - 1,
                       (i * self.coeffs[i] for i in range(1, self.order + 1)))

    def _coerce(self, other):
        if isinstance(other, SeriesX):
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesX(self.order, (other,))
        return NotImplemented

    def __repr__(self) -> str:
        return f"SeriesX(order={self.order}, {[rat_to_str(c) for c in self.coeffs]})"


def catalan_number(k: int) -> int:
    """The k-th Catalan number, binom(2k, k) / (k + 1)."""
    return comb(2 * k, k) // (k + 1)


def catalan_series(order: int) -> SeriesX:
    """Expansion in x of the even Catalan generating series c(x^2).

    Coefficient of x^(2k) is the k-th Catalan number; odd coefficients
    vanish.  Satisfies S = 1 + x^2 S^2 to every truncation order.
    """
    return SeriesX(order, (catalan_number(i // 2) if i % 2 == 0 else 0
                           for i in range(order + 1)))


def expand_in_x(f: RationalFnC, order: int) -> SeriesX:
    """Expand f(c(x^2)) as an exact truncated series in x.

    Raises DenominatorVanishesAtOrigin when the denominator is zero at
    c = 1, i.e. at x = 0.
    """
    cs = catalan_series(order)
    den = f.den.eval_series(cs)
    if den.coefficient(0) == 0:
        raise DenominatorVanishesAtOrigin(
            f"denominator {f.den!r} vanishes at c=1")
    return f.num.eval_series(cs) * den.inverse()


class FineStructureForm:
    """Sparse coefficient table of an order-g correction in normal form.

    Represents c/(2-c)^g * sum_k theta[k] * t^k with t = (c-1)/(2-c).
    Only nonzero coefficients are stored.
    """

    __slots__ = ("g", "theta")

    def __init__(self, g: int, theta: Mapping[int, Scalar]):
        if g < 1:
            raise ValueError("order g must be >= 1")
        clean = {int(k): Fraction(v) for k, v in theta.items() if v != 0}
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "theta", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FineStructureForm is immutable")

    def __eq__(self, other) -> bool:
        if isinstance(other, FineStructureForm):
            return self.g == other.g and self.theta == other.theta
        return NotImplemented

    def to_json(self) -> dict:
        return {"g": self.g,
                "theta": {str(k): rat_to_str(v)
                          for k, v in sorted(self.theta.items())}}

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {rat_to_str(v)}"
                         for k, v in sorted(self.theta.items()))
        return f"FineStructureForm(g={self.g}, {{{body}}})"


def theta_support_window(g: int) -> tuple[int, int]:
    """Inclusive window [g+1, 3g-1] where order-g coefficients may sit."""
    return g + 1, 3 * g - 1


def _mobius_substitute(p: PolyC) -> tuple[PolyC, int]:
    """Substitute c = (1+2t)/(1+t) into p; return (q, d) with p = q/(1+t)^d."""
    if not p:
        return POLY_ZERO, 0
    d = p.degree
    one_plus = PolyC((1, 1))
    one_plus_2t = PolyC((1, 2))
    acc = POLY_ZERO
    for i, coeff in enumerate(p.coeffs):
        if coeff:
            acc = acc + coeff * one_plus_2t ** i * one_plus ** (d - i)
    return acc, d


def fine_structure_form(f: RationalFnC, g: int) -> FineStructureForm:
    """Extract the normal-form coefficient table of an order-g correction.

    Divides f by c/(2-c)^g and rewrites the quotient in t = (c-1)/(2-c)
    via the inverse Moebius substitution c = (1+2t)/(1+t).  The result
    must come out as a finite polynomial in t; otherwise f is not in
    normal form and NotFineStructure is raised.
    """
    if g < 1:
        raise ValueError("order g must be >= 1")
    num = f.num * TWO_MINUS_C ** g
    den = f.den * POLY_C
    n_t, dn = _mobius_substitute(num)
    d_t, dd = _mobius_substitute(den)
    one_plus = PolyC((1, 1))
    if dd >= dn:
        n_t = n_t * one_plus ** (dd - dn)
    else:
        d_t = d_t * one_plus ** (dn - dd)
    q, r = divmod(n_t, d_t)
    if r:
        raise NotFineStructure(f"no polynomial normal form at order g={g}")
    return FineStructureForm(g, {k: q[k] for k in range(q.degree + 1)})


def fine_structure_to_rational(form: FineStructureForm) -> RationalFnC:
    """Re-expand a coefficient table into a single rational function of c.

    Inverse of fine_structure_form: puts the t-polynomial over the common
    denominator (2-c)^max_k and multiplies by c/(2-c)^g.
    """
    if not form.theta:
        return RationalFnC(POLY_ZERO)
    top = max(form.theta)
    acc = POLY_ZERO
    for k, v in form.theta.items():
        acc = acc + v * C_MINUS_ONE ** k * TWO_MINUS_C ** (top - k)
    return RationalFnC(POLY_C * acc, TWO_MINUS_C ** (form.g + top))
