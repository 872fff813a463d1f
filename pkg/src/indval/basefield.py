"""The base field Q with a p-adic valuation, and univariate polynomials over Q.

Everything is exact: rationals are `fractions.Fraction`, polynomials are dense
coefficient tuples in canonical form (no trailing zero at the top).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from .errors import DomainError, ParseError
from .values import INFINITY, Value

Rational = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PadicValuation:
    """The p-adic valuation v on Q, normalized so v(p) = 1.

    The value group is Z (embedded in Q) and the residue field is F_p,
    reached through :meth:`residue` / :meth:`lift`.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise DomainError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("PadicValuation is immutable")

    def __eq__(self, other):
        return isinstance(other, PadicValuation) and self.p == other.p

    def __hash__(self):
        return hash(("PadicValuation", self.p))

    def __repr__(self):
        return f"PadicValuation({self.p})"

    def int_order(self, n: int) -> int:
        if n == 0:
            raise DomainError("order of 0 is infinite")
        k = 0
        n = abs(n)
        while n % self.p == 0:
            n //= self.p
            k += 1
        return k

    def value(self, a: Rational) -> Value:
        """Exact p-adic order of a rational; value(0) is Infinity."""
        a = Fraction(a)
        if a == 0:
            return INFINITY
        return Value.of(self.int_order(a.numerator) - self.int_order(a.denominator))

    def residue(self, a: Rational) -> int:
        """Image of a in F_p = Z/p; requires value(a) >= 0."""
        a = Fraction(a)
        if a.denominator % self.p == 0:
            raise DomainError(f"{a} has negative {self.p}-adic value; no residue")
        return (a.numerator * pow(a.denominator, -1, self.p)) % self.p

    def lift(self, z: int) -> Fraction:
        """Canonical rational lift of a residue class, in [0, p)."""
        return Fraction(z % self.p)


# ---------------------------------------------------------------------------
# Polynomials over Q
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"""(?P<sign>[+-])?\s*
        (?:
            (?P<coeff>\d+(?:/\d+)?)\s*(?:\*?\s*(?P<xa>x(?:\^(?P<ka>\d+))?))?
          | (?P<xb>x(?:\^(?P<kb>\d+))?)
        )\s*""",
    re.VERBOSE,
)


class Poly:
    """A univariate polynomial over Q in the indeterminate x.

    ``coeffs`` is a tuple of Fractions, constant term first, with no trailing
    zero; the zero polynomial has an empty tuple and degree ``None``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        tup = tuple(Fraction(c) for c in coeffs)
        while tup and tup[-1] == 0:
            tup = tup[:-1]
        object.__setattr__(self, "coeffs", tup)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def constant(cls, c: Rational) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: Rational, k: int) -> "Poly":
        return cls((0,) * k + (Fraction(c),))

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse sums of terms ``c*x^k``, ``x^k``, ``x`` and constants.

        The ``*`` is optional and whitespace is ignored.
        """
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial")
        coeffs: dict[int, Fraction] = {}
        pos = 0
        first = True
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
            sign = m.group("sign")
            if sign is None and not first:
                raise ParseError(f"missing +/- between terms in {text!r}")
            sgn = -1 if sign == "-" else 1
            coeff = m.group("coeff")
            xpart = m.group("xa") or m.group("xb")
            kstr = m.group("ka") or m.group("kb")
            c = Fraction(coeff) if coeff else Fraction(1)
            k = 0
            if xpart:
                k = int(kstr) if kstr else 1
            coeffs[k] = coeffs.get(k, Fraction(0)) + sgn * c
            pos = m.end()
            first = False
        top = max(coeffs) if coeffs else 0
        return cls(tuple(coeffs.get(i, Fraction(0)) for i in range(top + 1)))

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def constant_value(self) -> Fraction:
        """The rational represented by a constant polynomial."""
        if len(self.coeffs) > 1:
            raise DomainError("polynomial is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def evaluate(self, a: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * Fraction(a) + c
        return acc

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c: Rational) -> "Poly":
        return Poly(tuple(Fraction(c) * a for a in self.coeffs))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def _divmod_any(self, g: "Poly") -> Tuple["Poly", "Poly"]:
        if g.is_zero:
            raise DomainError("division by zero polynomial")
        r = list(self.coeffs)
        dg = len(g.coeffs) - 1
        lead = g.coeffs[-1]
        if dg == 0:
            return self.scale(1 / lead), Poly(())
        q = [Fraction(0)] * max(len(r) - dg, 0)
        for i in range(len(r) - dg - 1, -1, -1):
            c = r[i + dg] / lead
            if c == 0:
                continue
            q[i] = c
            for j, b in enumerate(g.coeffs):
                r[i + j] -= c * b
        return Poly(q), Poly(r[:dg])

    def divmod_monic(self, g: "Poly") -> Tuple["Poly", "Poly"]:
        """Exact division f = q*g + r with deg r < deg g, for monic g."""
        if g.is_zero or g.is_constant:
            raise DomainError("divisor must be non-constant")
        if not g.is_monic:
            raise DomainError("divisor must be monic")
        return self._divmod_any(g)

    def __mod__(self, g: "Poly") -> "Poly":
        return self.divmod_monic(g)[1]

    # -- equality / rendering -------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if abs(c) == 1 else f"{abs(c)}*{xs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def poly_divmod(f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    """Module-level alias for :meth:`Poly.divmod_monic`."""
    return f.divmod_monic(g)


def poly_ext_gcd(f: Poly, g: Poly) -> Tuple[Poly, Poly, Poly]:
    """Extended Euclid over Q: returns monic d and (s, t) with s*f + t*g = d.

    Included for Bezout identities between coprime polynomials (a key
    polynomial is coprime to every non-zero polynomial of smaller degree).
    """
    r0, r1 = f, g
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not r1.is_zero:
        q, r = r0._divmod_any(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    lead = r0.leading()
    return r0.scale(1 / lead), s0.scale(1 / lead), t0.scale(1 / lead)
