"""Expression language: tokenizer, parser, canonical printer, evaluator.

Grammar (``^`` binds tighter than unary minus, which binds tighter than
``*`` and ``/``)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | power
    power  := atom ("^" ["-" | "+"] INT)?
    atom   := RATIONAL | "q" | "t[" INT "," INT "]" | "D" | "D[" ints "|" ints "]"
            | "S(" expr ")" | "inv(" expr ")" | "(" expr ")"

A rational literal is written without spaces (``3/2``); a spaced slash is
division, and the divisor must be a scalar expression.  ``print_expr`` emits
the canonical form, and ``parse(print_expr(e)) == e`` for every tree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .orelocal import OreFraction
from .qalgebra import NcPoly
from .qminor import GlElement, antipode, qdet, qminor_poly


class ExprError(ValueError):
    """Parse or evaluation error carrying a character offset."""

    def __init__(self, message, pos=None, text=None):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(self.describe())

    def describe(self):
        if self.pos is None:
            return self.message
        out = f"{self.message} at position {self.pos}"
        if self.text is not None:
            out += f"\n  {self.text}\n  {' ' * self.pos}^"
        return out


class ParseError(ExprError):
    pass


class EvalError(ExprError):
    pass


# ----------------------------------------------------------------------
# AST
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Q:
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Gen:
    i: int
    j: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Minor:
    rows: tuple = None  # None means the full determinant
    cols: tuple = None
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Antipode:
    arg: object
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Inv:
    arg: object
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((sign, node), ...); first sign is "+"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Product:
    factors: tuple  # ((op, node), ...); first op is "*"
    pos: int = field(default=0, compare=False)


# ----------------------------------------------------------------------
# tokenizer
# ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+/\d+|\d+)|(?P<name>inv|[tDqS])|(?P<op>[\[\],|()+\-*/^]))")


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    out = []
    i = 0
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _TOKEN.match(text, i)
        if not m:
            j = i
            while j < len(text) and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", j, text)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        i = m.end()
    out.append(Token("end", "", len(text)))
    return out


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.k = 0

    @property
    def tok(self):
        return self.toks[self.k]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.pos, self.text)

    def accept(self, text):
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            self.k += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def integer(self):
        t = self.tok
        if t.kind != "num" or "/" in t.text:
            raise self.error("expected an integer")
        self.k += 1
        return int(t.text)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        start = self.tok.pos
        terms = [("+", self.term())]
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = self.tok.text
            self.k += 1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 else Sum(tuple(terms), start)

    def term(self):
        start = self.tok.pos
        factors = [("*", self.factor())]
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            at = self.k + 1
            self.k += 1
            node = self.factor()
            if op == "/" and not is_scalar_ast(node):
                raise self.error("divisor must be a scalar", self.toks[at])
            factors.append((op, node))
        return factors[0][1] if len(factors) == 1 else Product(tuple(factors), start)

    def factor(self):
        t = self.tok
        if self.accept("-"):
            return Neg(self.factor(), t.pos)
        return self.power()

    def power(self):
        start = self.tok.pos
        base = self.atom()
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            if sign == 1:
                self.accept("+")
            return Pow(base, sign * self.integer(), start)
        return base

    def intlist(self):
        vals = [self.integer()]
        while self.accept(","):
            vals.append(self.integer())
        return tuple(vals)

    def atom(self):
        t = self.tok
        if t.kind == "num":
            try:
                value = Fraction(t.text)
            except ZeroDivisionError:
                raise self.error("zero denominator in rational literal") from None
            self.k += 1
            return Num(value, t.pos)
        if t.kind == "name":
            self.k += 1
            if t.text == "q":
                return Q(t.pos)
            if t.text == "t":
                self.expect("[")
                i = self.integer()
                self.expect(",")
                j = self.integer()
                self.expect("]")
                return Gen(i, j, t.pos)
            if t.text == "D":
                if self.accept("["):
                    rows = self.intlist()
                    self.expect("|")
                    cols = self.intlist()
                    self.expect("]")
                    return Minor(rows, cols, t.pos)
                return Minor(None, None, t.pos)
            # S( or inv(
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Antipode(inner, t.pos) if t.text == "S" else Inv(inner, t.pos)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse(text):
    """Parse a string into an expression tree."""
    return _Parser(text).parse()


def is_scalar_ast(node):
    if isinstance(node, (Num, Q)):
        return True
    if isinstance(node, (Neg, Inv, Antipode)):
        return is_scalar_ast(node.arg)
    if isinstance(node, Pow):
        return is_scalar_ast(node.base)
    if isinstance(node, Sum):
        return all(is_scalar_ast(x) for _, x in node.terms)
    if isinstance(node, Product):
        return all(is_scalar_ast(x) for _, x in node.factors)
    return False


# ----------------------------------------------------------------------
# printer
# ----------------------------------------------------------------------

def _prec(node):
    if isinstance(node, Sum):
        return 1
    if isinstance(node, Product):
        return 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _wrap(node, need):
    s = print_expr(node)
    return f"({s})" if _prec(node) < need else s


def _ints(xs):
    return ",".join(str(x) for x in xs)


def print_expr(node):
    """Canonical text of a tree; a fixed point of parse-then-print."""
    if isinstance(node, Num):
        v = Fraction(node.value)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Q):
        return "q"
    if isinstance(node, Gen):
        return f"t[{node.i},{node.j}]"
    if isinstance(node, Minor):
        if node.rows is None:
            return "D"
        return f"D[{_ints(node.rows)}|{_ints(node.cols)}]"
    if isinstance(node, Antipode):
        return f"S({print_expr(node.arg)})"
    if isinstance(node, Inv):
        return f"inv({print_expr(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.arg, 3)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 5)}^{node.exp}"
    if isinstance(node, Sum):
        out = _wrap(node.terms[0][1], 2)
        for sign, t in node.terms[1:]:
            out += f" {sign} {_wrap(t, 2)}"
        return out
    if isinstance(node, Product):
        out = _wrap(node.factors[0][1], 3)
        for op, f in node.factors[1:]:
            out += "*" + _wrap(f, 3) if op == "*" else " / " + _wrap(f, 3)
        return out
    raise TypeError(f"not an expression node: {node!r}")


def random_ast(rng, depth=3, n=3):
    """Random tree for round-trip fuzzing."""
    if depth <= 0 or rng.random() < 0.3:
        k = rng.randrange(5)
        if k == 0:
            return Num(Fraction(rng.randint(0, 9), rng.choice([1, 1, 2, 3])))
        if k == 1:
            return Q()
        if k == 2:
            return Gen(rng.randint(1, n), rng.randint(1, n))
        if k == 3:
            return Minor()
        m = rng.randint(1, n)
        return Minor(tuple(sorted(rng.sample(range(1, n + 1), m))), tuple(sorted(rng.sample(range(1, n + 1), m))))
    k = rng.randrange(6)
    sub = lambda: random_ast(rng, depth - 1, n)  # noqa: E731
    if k == 0:
        return Sum(tuple([("+", sub())] + [(rng.choice("+-"), sub()) for _ in range(rng.randint(1, 2))]))
    if k == 1:
        fs = [("*", sub())]
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.25:
                fs.append(("/", random_scalar_ast(rng, depth - 1)))
            else:
                fs.append(("*", sub()))
        return Product(tuple(fs))
    if k == 2:
        return Neg(sub())
    if k == 3:
        return Pow(sub(), rng.randint(-3, 3))
    if k == 4:
        return Antipode(sub())
    return Inv(sub())


def random_scalar_ast(rng, depth=1):
    if depth <= 0 or rng.random() < 0.5:
        return Num(Fraction(rng.randint(1, 9), rng.choice([1, 2]))) if rng.random() < 0.5 else Q()
    return Sum((("+", Q()), (rng.choice("+-"), Num(Fraction(rng.randint(1, 5))))))


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------

def _is_alg_value(x):
    return isinstance(x, (NcPoly, GlElement, OreFraction))


class Evaluator:
    """Evaluate trees in M_q(n), GL_q(n) or an Ore localization ``ore``."""

    def __init__(self, alg, ore=None, text=None):
        self.alg = alg
        self.field = alg.field
        self.ore = ore
        self.text = text

    def error(self, msg, node):
        return EvalError(msg, getattr(node, "pos", None), self.text)

    # type promotion -------------------------------------------------
    def _rank(self, x):
        if isinstance(x, OreFraction):
            return 3
        if isinstance(x, GlElement):
            return 2
        if isinstance(x, NcPoly):
            return 1
        return 0

    def _to(self, x, rank, node):
        r = self._rank(x)
        if r == rank:
            return x
        if r == 0:
            x = self.alg.scalar(x)
            r = 1
        if rank == 1:
            return x
        if rank == 2:
            if r == 3:
                raise self.error("cannot mix D^-1 with an Ore localization lacking D", node)
            return GlElement(x)
        # rank 3
        if r == 2:
            k = self.ore.index_of(qdet(self.alg))
            if k is None:
                if x.k:
                    raise self.error("the Ore set does not contain D", node)
                return OreFraction(self.ore, (), x.num)
            return OreFraction(self.ore, (k,) * x.k, x.num)
        return OreFraction(self.ore, (), x)

    def _unify(self, a, b, node):
        r = max(self._rank(a), self._rank(b))
        if r == 2 and 3 in (self._rank(a), self._rank(b)):
            r = 3
        return self._to(a, r, node), self._to(b, r, node), r

    def add(self, a, b, node):
        a, b, r = self._unify(a, b, node)
        return a + b

    def mul(self, a, b, node):
        if self._rank(a) == 0 and self._rank(b) == 0:
            return a * b
        if self._rank(a) == 0:
            return self._scale(b, a)
        if self._rank(b) == 0:
            return self._scale(a, b)
        a, b, r = self._unify(a, b, node)
        return a * b

    def _scale(self, x, c):
        if isinstance(x, GlElement):
            return GlElement(x.num.scale(c), x.k)
        return x.scale(c)

    def neg(self, a):
        return -a

    # inversion -----------------------------------------------------
    def inverse(self, x, node):
        f = self.field
        if self._rank(x) == 0:
            if not x:
                raise self.error("division by zero", node)
            return f.one / x
        if isinstance(x, NcPoly):
            if x.is_scalar():
                return self.alg.scalar(self.inverse(x.constant(), node))
            if self.ore is not None:
                k = self.ore.index_of(x)
                if k is not None:
                    return OreFraction.inv(self.ore, k)
            if x == qdet(self.alg):
                return GlElement(self.alg.one, 1)
            raise self.error("inverse of an element outside the declared Ore set", node)
        if isinstance(x, GlElement):
            D = qdet(self.alg)
            if x.num.is_scalar() and x.num.constant():
                c = f.one / x.num.constant()
                return GlElement((D ** x.k).scale(c))
            if x.k == 0:
                return self.inverse(x.num, node)
            raise self.error("inverse of a non-monomial element of GL_q", node)
        # OreFraction s^-1 r
        if x.num.is_scalar() and x.num.constant():
            c = f.one / x.num.constant()
            return OreFraction(self.ore, (), self.ore.product(x.word)).scale(c)
        if not x.word:
            return self.inverse(x.num, node)
        raise self.error("inverse of a non-monomial fraction", node)

    def power(self, x, k, node):
        if k < 0:
            x = self.inverse(x, node)
            k = -k
        if self._rank(x) == 0:
            return x ** k
        out = self._to(self.alg.one, self._rank(x), node)
        for _ in range(k):
            out = out * x
        return out

    def antipode_of(self, x, node):
        if self._rank(x) == 0:
            return x
        if isinstance(x, NcPoly):
            return antipode(x)
        if isinstance(x, GlElement):
            s = antipode(x.num)
            D = qdet(self.alg)
            # S(num D^-k) = D^k S(num)
            if x.k >= s.k:
                return GlElement(s.num * D ** (x.k - s.k))
            return GlElement(s.num, s.k - x.k)
        raise self.error("the antipode is not defined on Ore fractions", node)

    # tree walk -----------------------------------------------------
    def eval(self, node):
        f = self.field
        n = self.alg.n
        if isinstance(node, Num):
            return f.coerce(node.value)
        if isinstance(node, Q):
            return f.q
        if isinstance(node, Gen):
            if not (1 <= node.i <= n and 1 <= node.j <= n):
                raise self.error(f"index out of range for n={n}", node)
            return self.alg.gen(node.i, node.j)
        if isinstance(node, Minor):
            if node.rows is None:
                return qdet(self.alg)
            rows, cols = node.rows, node.cols
            if len(rows) != len(cols):
                raise self.error("minor needs as many rows as columns", node)
            for xs in (rows, cols):
                if list(xs) != sorted(set(xs)) or xs[0] < 1 or xs[-1] > n:
                    raise self.error(f"minor labels must be increasing within 1..{n}", node)
            return qminor_poly(self.alg, rows, cols)
        if isinstance(node, Antipode):
            return self.antipode_of(self.eval(node.arg), node)
        if isinstance(node, Inv):
            return self.inverse(self.eval(node.arg), node)
        if isinstance(node, Neg):
            return self.neg(self.eval(node.arg))
        if isinstance(node, Pow):
            return self.power(self.eval(node.base), node.exp, node)
        if isinstance(node, Sum):
            acc = self.eval(node.terms[0][1])
            for sign, t in node.terms[1:]:
                v = self.eval(t)
                acc = self.add(acc, v if sign == "+" else -v, t)
            return acc
        if isinstance(node, Product):
            acc = self.eval(node.factors[0][1])
            for op, t in node.factors[1:]:
                v = self.eval(t)
                if op == "/":
                    if _is_alg_value(v):
                        raise self.error("divisor must be a scalar", t)
                    v = self.inverse(v, t)
                acc = self.mul(acc, v, t)
            return acc
        raise TypeError(f"not an expression node: {node!r}")


def evaluate(text_or_node, alg, ore=None):
    text = text_or_node if isinstance(text_or_node, str) else None
    node = parse(text_or_node) if text is not None else text_or_node
    return Evaluator(alg, ore, text).eval(node)


def render_value(x, field):
    if isinstance(x, GlElement):
        return x.reduced().render()
    if isinstance(x, OreFraction):
        return x.simplify().render()
    if isinstance(x, NcPoly):
        return x.render()
    return field.render(x)
