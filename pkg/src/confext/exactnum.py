"""Exact scalars over Q and real quadratic fields Q(sqrt(d)).

Every number in this package is either a rational or an element
a + b*sqrt(d) of a real quadratic field with d a squarefree positive
integer.  Rationals are backed by gmpy2.mpq (canonical form: positive
denominator, gcd-reduced), falling back to fractions.Fraction when
gmpy2 is unavailable.  All arithmetic is exact; there is no floating
point anywhere.

The module also provides dense univariate polynomials over Q and the
root extraction used by the parametric classifier: rational roots via
the rational root theorem, roots of irreducible quadratic factors as
quadratic-field elements, and an unfactored residual of degree >= 3.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as _mpq

    def RAT(a=0, b=1):
        if type(a) is str:
            return _mpq(a) / b
        return _mpq(a, b)

    _RAT_TYPES = (type(_mpq(0)), int)
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _mpq

    def RAT(a=0, b=1):
        return _mpq(a, b)

    _RAT_TYPES = (_mpq, int)

#: The rational type used throughout (gcd-reduced, positive denominator).
Rational = type(RAT(0))

_R0 = RAT(0)
_R1 = RAT(1)


class MixedExtension(ArithmeticError):
    """Arithmetic attempted between distinct quadratic extensions."""


class DivisionByZero(ZeroDivisionError):
    """Exact division by an exactly-zero scalar."""


class ZeroPolynomial(ValueError):
    """Root extraction requested for the zero polynomial."""


def squarefree_part(n):
    """Split n > 0 as s * r**2 with s squarefree; return (s, r)."""
    if n <= 0:
        raise ValueError("positive integer required")
    s, r, p = 1, 1, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            r *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    return s * n, r


def _is_squarefree(n):
    return squarefree_part(n)[0] == n


class Scalar:
    """Exact element a + b*sqrt(d) of Q (d = 0) or Q(sqrt(d)).

    Normal form: d squarefree; b = 0 forces d = 0.  Two scalars combine
    arithmetically only when their d tags agree or one of them is plain
    rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=0):
        a = a if type(a) is Rational else RAT(a)
        b = b if type(b) is Rational else RAT(b)
        if b == 0:
            d = 0
        elif d == 0:
            raise ValueError("irrational part requires a nonzero d tag")
        elif d < 0 or not _is_squarefree(d):
            raise ValueError("d tag must be a squarefree positive integer")
        self.a = a
        self.b = b
        self.d = d

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(x):
        """Coerce an int, rational or Scalar to a Scalar."""
        if isinstance(x, Scalar):
            return x
        return Scalar(RAT(x))

    @staticmethod
    def sqrt(x):
        """Exact square root of a nonnegative rational, e.g. sqrt(76) = 2*sqrt(19)."""
        x = x if type(x) is Rational else RAT(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        if x == 0:
            return SC_ZERO
        p, q = x.numerator, x.denominator
        s, r = squarefree_part(int(p) * int(q))
        if s == 1:
            return Scalar(RAT(r, q))
        return Scalar(_R0, RAT(r, q), s)

    # -- helpers ------------------------------------------------------

    def _join(self, other):
        """Common d tag, or raise MixedExtension."""
        if self.d == other.d:
            return self.d
        if self.d == 0:
            return other.d
        if other.d == 0:
            return self.d
        raise MixedExtension(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    def is_rational(self):
        return self.b == 0

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def rational_value(self):
        if self.b != 0:
            raise MixedExtension("not a rational scalar")
        return self.a

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = Scalar.of(other)
        d = self._join(other)
        return Scalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar.of(other)
        d = self._join(other)
        return Scalar(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        return Scalar.of(other).__sub__(self)

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = Scalar.of(other)
        if self.b == 0 and other.b == 0:
            return Scalar(self.a * other.a)
        d = self._join(other)
        return Scalar(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.b == 0:
            return Scalar(1 / self.a)
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:  # impossible for squarefree d > 1, kept as a guard
            raise DivisionByZero("zero field norm")
        return Scalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * Scalar.of(other).inverse()

    def __rtruediv__(self, other):
        return Scalar.of(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, _RAT_TYPES):
                return self.b == 0 and self.a == other
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def sign(self):
        """Exact sign of the real number a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        # a and b have opposite signs: compare a^2 with b^2 d.
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:
            return 0
        bigger_abs_rational = lhs > rhs
        return (1 if bigger_abs_rational else -1) * (1 if a > 0 else -1)

    def __lt__(self, other):
        return (self - Scalar.of(other)).sign() < 0

    def __le__(self, other):
        return (self - Scalar.of(other)).sign() <= 0

    def __gt__(self, other):
        return (self - Scalar.of(other)).sign() > 0

    def __ge__(self, other):
        return (self - Scalar.of(other)).sign() >= 0

    def conjugate(self):
        return Scalar(self.a, -self.b, self.d)

    # -- text form ----------------------------------------------------

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        btxt = f"{self.b}*sqrt({self.d})"
        return f"{self.a}+{btxt}" if self.b > 0 else f"{self.a}-{-self.b}*sqrt({self.d})"

    def __repr__(self):
        return f"Scalar({self})"


SC_ZERO = Scalar(0)
SC_ONE = Scalar(1)

_SCALAR_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])?\s*(?P<b>\d+(?:/\d+)?)?\s*\*?\s*sqrt\((?P<d>\d+)\))?\s*$"
)


def parse_scalar(text):
    """Parse "p/q" or "p/q+r/s*sqrt(d)" (and minus variants) into a Scalar."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ValueError(f"malformed scalar: {text!r}")
    a = RAT(m.group("a")) if m.group("a") else _R0
    if m.group("d") is None:
        return Scalar(a)
    b = RAT(m.group("b")) if m.group("b") else _R1
    if m.group("sign") == "-":
        b = -b
    d = int(m.group("d"))
    s, r = squarefree_part(d)
    return Scalar(a, b * r, s)


# ----------------------------------------------------------------------
# Univariate polynomials over Q
# ----------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over Q, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if type(c) is Rational else RAT(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def x(power=1, coeff=1):
        return UniPoly([0] * power + [coeff])

    @staticmethod
    def const(c):
        return UniPoly([c])

    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if not self.coeffs or not other.coeffs:
                return UniPoly()
            out = [_R0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return UniPoly(out)
        q = RAT(other)
        return UniPoly([c * q for c in self.coeffs])

    __rmul__ = __mul__

    def __call__(self, x):
        """Evaluate by Horner; x may be a rational or a Scalar."""
        if isinstance(x, Scalar):
            acc = SC_ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + Scalar(c)
            return acc
        acc = _R0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs])

    def divmod(self, other):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [_R0] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quo[i] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return UniPoly(quo), UniPoly(rem[: len(other.coeffs) - 1])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self):
        if self.degree() <= 0:
            return self.monic()
        return (self // self.gcd(self.derivative())).monic()

    def primitive_int_coeffs(self):
        """Integer coefficient list of the primitive associate."""
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, int(c.denominator))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        return ints

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _divisors(n):
    n = abs(n)
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


class RootExtraction:
    """Result of extract_roots: verified roots plus the unfactored residual."""

    def __init__(self, rational_roots, quadratic_roots, residual):
        self.rational_roots = rational_roots
        self.quadratic_roots = quadratic_roots
        self.residual = residual

    def all_roots(self):
        return [Scalar(r) for r in self.rational_roots] + list(self.quadratic_roots)


def extract_roots(p):
    """All rational and quadratic-irrational roots of p, each verified by substitution.

    Returns a RootExtraction with the sorted rational roots of p, the
    roots of its irreducible quadratic factors as Scalars, and the
    residual product of irreducible factors of degree >= 3 (monic,
    never root-approximated).  Multiplicities are dropped: roots are
    reported once.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot extract roots of the zero polynomial")
    sf = p.squarefree_part()

    rational_roots = []
    ints = sf.primitive_int_coeffs()
    # strip x^k factor: root 0
    shift = 0
    while ints and ints[0] == 0:
        ints = ints[1:]
        shift += 1
    if shift:
        rational_roots.append(_R0)
        sf = sf // UniPoly.x(shift)
    if sf.degree() >= 1:
        ints = sf.primitive_int_coeffs()
        cands = set()
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                cands.add(RAT(num, den))
                cands.add(RAT(-num, den))
        for r in sorted(cands):
            if sf(r) == 0:
                if p(r) != 0:
                    raise AssertionError("squarefree reduction lost a root")
                rational_roots.append(r)
                sf = sf // UniPoly([-r, 1])

    quadratic_roots = []
    residual = UniPoly.const(1)
    if sf.degree() == 0:
        pass
    elif sf.degree() == 2:
        quadratic_roots.extend(_quadratic_roots(sf))
    else:
        # sympy factors the (rational-root-free, squarefree) residual;
        # each reported root is re-verified by substitution below.
        import sympy

        x = sympy.Symbol("x")
        expr = sum(
            sympy.Rational(int(c.numerator), int(c.denominator)) * x**i
            for i, c in enumerate(sf.coeffs)
        )
        _, factors = sympy.factor_list(sympy.Poly(expr, x))
        for fac, mult in factors:
            cs = [RAT(int(q.p), int(q.q)) for q in reversed(sympy.Poly(fac, x).all_coeffs())]
            fpoly = UniPoly(cs)
            if fpoly.degree() == 2:
                quadratic_roots.extend(_quadratic_roots(fpoly))
            elif fpoly.degree() == 1:
                raise AssertionError("rational root survived the RRT pass")
            else:
                for _ in range(mult):
                    residual = residual * fpoly.monic()

    for root in quadratic_roots:
        if p(root):
            raise AssertionError("quadratic factor root failed verification")
    # sort key avoids cross-field comparisons when several d tags occur
    quadratic_roots.sort(key=lambda r: (r.d, r.a, r.b))
    return RootExtraction(sorted(set(rational_roots)), quadratic_roots, residual)


def _quadratic_roots(q):
    """Roots of an irreducible (over Q) quadratic, as conjugate Scalars."""
    c0, c1, c2 = (q.coeffs + (_R0, _R0))[:3]
    disc = c1 * c1 - 4 * c2 * c0
    if disc <= 0:
        return []  # complex conjugate pair: outside the real quadratic fields in scope
    root_d = Scalar.sqrt(disc)
    if root_d.is_rational():
        raise AssertionError("reducible quadratic reached _quadratic_roots")
    half = Scalar(-c1 / (2 * c2))
    spread = Scalar(_R0, root_d.b / (2 * c2), root_d.d)
    return [half - spread, half + spread] if spread > SC_ZERO else [half + spread, half - spread]
