"""Exact arithmetic in Q(q) and its specializations at rational points.

Elements of Q(q) are stored as reduced fractions of integer polynomials
(``ScalarQ``).  Polynomials are tuples of ``int`` in ascending powers of q
with no trailing zeros; the zero polynomial is ``()``.

Code above this module never touches ``ScalarQ`` directly: it works with a
coefficient *field* object (``SymbolicField`` or ``SpecializedField``) whose
elements support the usual Python operators.  Swapping the field is how the
whole engine is re-run with q replaced by a rational number.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

Poly = tuple


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


# ----------------------------------------------------------------------
# integer polynomials
# ----------------------------------------------------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def psub(a, b):
    return padd(a, tuple(-x for x in b))


def pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def pscale(a, k):
    if not k:
        return ()
    return tuple(x * k for x in a)


def content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def primitive(a):
    if not a:
        return a
    g = content(a)
    if a[-1] < 0:
        g = -g
    return tuple(x // g for x in a)


def _low_zeros(a):
    k = 0
    while a[k] == 0:
        k += 1
    return k


def prem(a, b):
    """Pseudo-remainder of a by b (lc(b)^k * a mod b)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[i + shift] -= la * y
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def pgcd(a, b):
    """Primitive gcd over Z[q], positive leading coefficient."""
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, primitive(prem(a, b))
    return primitive(a)


def pdiv_exact(a, b):
    """Quotient a / b, which must be exact over Z."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        if any(a):
            raise ArithmeticError("inexact polynomial division")
        return ()
    quo = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c, r = divmod(a[k + db], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(quo)


def peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def prender(a, var="q"):
    """Render an integer polynomial, highest power first: ``2*q^2 - 1``."""
    if not a:
        return "0"
    parts = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if c:
            parts.append((c, e))
    return _render_terms(parts, var)


def _render_terms(parts, var):
    out = []
    for idx, (c, e) in enumerate(parts):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = str(c)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if c == 1 else f"{c}*{mono}"
        if idx == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ----------------------------------------------------------------------
# Q(q)
# ----------------------------------------------------------------------

def _canonical(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    k = min(_low_zeros(num), _low_zeros(den))
    if k:
        num, den = num[k:], den[k:]
    if len(den) > 1 and any(den[:-1]) and len(num) > 1:
        g = pgcd(num, den)
        if len(g) > 1:
            num, den = pdiv_exact(num, g), pdiv_exact(den, g)
    c = gcd(content(num), content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


class ScalarQ:
    """Element of Q(q), kept as a reduced fraction num/den of integer polynomials.

    Canonical form: gcd(num, den) = 1 over Q[q], integer contents coprime,
    positive leading coefficient of den, zero is ``0/1``.  Instances are
    immutable.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,), *, _canonical_form=False):
        if isinstance(num, int):
            num = (num,) if num else ()
        if isinstance(den, int):
            den = (den,)
        if not _canonical_form:
            num, den = _canonical(_trim(num), _trim(den))
        self.num = num
        self.den = den
        self._hash = None

    # constructors ----------------------------------------------------
    @classmethod
    def from_laurent(cls, terms):
        """Build from ``{exponent: coefficient}`` (exponents may be negative)."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = min(terms)
        hi = max(terms)
        shift = -lo if lo < 0 else 0
        num = [0] * (hi + shift + 1)
        for e, c in terms.items():
            num[e + shift] = c
        den = (0,) * shift + (1,)
        return cls(tuple(num), den)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, ScalarQ):
            return x
        if isinstance(x, int):
            return cls((x,) if x else (), (1,), _canonical_form=True)
        if isinstance(x, Fraction):
            return cls((x.numerator,), (x.denominator,))
        return NotImplemented

    # field operations ------------------------------------------------
    def __add__(self, other):
        other = ScalarQ.coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return ScalarQ(padd(self.num, other.num), self.den)
        return ScalarQ(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                       pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return ScalarQ(tuple(-x for x in self.num), self.den, _canonical_form=True)

    def __sub__(self, other):
        other = ScalarQ.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = ScalarQ.coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        if other.den == (1,) and len(other.num) == 1:
            c = other.num[0]
            if c == 1:
                return self
            return ScalarQ(pscale(self.num, c), self.den)
        if self.den == (1,) and len(self.num) == 1:
            return other * self
        return ScalarQ(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return ScalarQ(self.den, self.num)

    def __truediv__(self, other):
        other = ScalarQ.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ScalarQ.coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparisons -----------------------------------------------------
    def __eq__(self, other):
        other = ScalarQ.coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.den == (1,) and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else 0)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # queries ---------------------------------------------------------
    def is_laurent(self):
        return self.den[-1] == 1 and not any(self.den[:-1])

    def is_monomial(self):
        """True for c*q^k (k may be negative)."""
        return sum(1 for x in self.num if x) == 1 and sum(1 for x in self.den if x) == 1

    def specialize(self, q0):
        q0 = Fraction(q0)
        if q0 == 0:
            raise PoleError("q0 = 0 is excluded")
        d = peval(self.den, q0)
        if d == 0:
            raise PoleError(f"{self} has a pole at q = {q0}")
        return peval(self.num, q0) / d

    def render(self):
        if not self.num:
            return "0"
        if self.den == (1,):
            return prender(self.num)
        if self.is_laurent():
            shift = len(self.den) - 1
            parts = [(c, e - shift) for e, c in reversed(list(enumerate(self.num))) if c]
            return _render_terms(parts, "q")
        num, den = prender(self.num), prender(self.den)
        if sum(1 for c in self.num if c) > 1:
            num = f"({num})"
        if not (den.isdigit() or den == "q"):
            den = f"({den})"
        return f"{num}/{den}"

    __str__ = render

    def __repr__(self):
        return f"ScalarQ({self.render()!r})"


ZERO = ScalarQ((), (1,), _canonical_form=True)
ONE = ScalarQ((1,), (1,), _canonical_form=True)
Q = ScalarQ((0, 1), (1,), _canonical_form=True)


def scalar_arith(a, b, op):
    """Dispatch helper mirroring the CLI/reporting vocabulary."""
    a, b = ScalarQ.coerce(a), ScalarQ.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero in Q(q)")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def scalar_specialize(a, q0):
    return ScalarQ.coerce(a).specialize(q0)


# ----------------------------------------------------------------------
# coefficient fields
# ----------------------------------------------------------------------

class SymbolicField:
    """Q(q) with q an indeterminate."""

    symbolic = True
    name = "symbolic"

    def __init__(self):
        self.zero = ZERO
        self.one = ONE
        self.q = Q
        self._laurent = {}

    def from_laurent(self, key):
        """``key`` is a tuple of (exponent, coefficient) pairs."""
        v = self._laurent.get(key)
        if v is None:
            v = ScalarQ.from_laurent(dict(key))
            self._laurent[key] = v
        return v

    def coerce(self, x):
        return ScalarQ.coerce(x)

    @lru_cache(maxsize=None)
    def qpow(self, k):
        return Q ** k

    def render(self, x):
        return ScalarQ.coerce(x).render()

    def __eq__(self, other):
        return isinstance(other, SymbolicField)

    def __hash__(self):
        return hash("symbolic")

    def __repr__(self):
        return "SymbolicField()"


class SpecializedField:
    """Q with q replaced by a fixed nonzero rational q0."""

    symbolic = False

    def __init__(self, q0):
        q0 = Fraction(q0)
        if q0 == 0:
            raise ValueError("q must be nonzero")
        self.q0 = q0
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.q = q0
        self.name = f"q={q0}"
        self._laurent = {}

    def from_laurent(self, key):
        v = self._laurent.get(key)
        if v is None:
            v = sum((c * self.q0 ** e for e, c in key), Fraction(0))
            self._laurent[key] = v
        return v

    def coerce(self, x):
        if isinstance(x, ScalarQ):
            return x.specialize(self.q0)
        return Fraction(x)

    def qpow(self, k):
        return self.q0 ** k

    def render(self, x):
        return str(Fraction(x))

    def __eq__(self, other):
        return isinstance(other, SpecializedField) and other.q0 == self.q0

    def __hash__(self):
        return hash(("special", self.q0))

    def __repr__(self):
        return f"SpecializedField({self.q0})"


def make_field(q=None):
    """``None``/``"symbolic"`` gives Q(q); anything else is read as a rational."""
    if q is None or q == "symbolic":
        return SymbolicField()
    return SpecializedField(Fraction(q))
