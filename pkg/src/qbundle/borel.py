"""The quantum Borel algebra with its diagonal generators inverted.

An element is stored as a sum of ``coeff * d^e * w`` where ``d^e`` is a
product of powers of the diagonal generators b[k,k] (integer exponents,
possibly negative) and ``w`` is a standard word in the strictly lower
generators.  Diagonals commute with each other and q-commute with every
Borel generator; the exponents of that q-commutation are read off the
rewriting kernel and checked by :func:`qcentrality_check`.
"""
from __future__ import annotations

from functools import lru_cache

from .qalgebra import BorelPoly, NcPoly, render_terms
from .report import SuiteReport, stopwatch


class NotQCentral(RuntimeError):
    pass


class BorelContext:
    """Per-algebra tables: q-commutation exponents and cached word splits."""

    def __init__(self, alg):
        self.alg = alg
        n = alg.n
        self.n = n
        self.diag = [k * n + k for k in range(n)]
        self.lower = [g for g in range(n * n) if g // n > g % n]
        self.borel_gens = sorted(self.diag + self.lower)
        self.table = {}
        self.table_ok = True
        self._witness = []
        for x in self.borel_gens:
            for k, dk in enumerate(self.diag):
                c = self._exponent(x, dk)
                if c is None:
                    self.table_ok = False
                    self._witness.append((x, dk))
                    c = 0
                self.table[(x, k)] = c
        self._split = {}

    def _exponent(self, x, d):
        """c with x*d = q^c d*x in the Borel quotient, or None."""
        if x == d:
            return 0
        rw = self.alg.rw
        n = self.n
        nf = rw.product((x,), (d,)) if x > d else rw.product((d,), (x,))
        nf = {w: c for w, c in nf.items() if all(g // n >= g % n for g in w)}
        if len(nf) != 1:
            return None
        (w, lau), = nf.items()
        if len(lau) != 1 or lau[0][1] != 1 or w != tuple(sorted((x, d))):
            return None
        e = lau[0][0]
        # x > d: x*d = q^e d*x ; x < d: d*x = q^e x*d, so x*d = q^-e d*x
        return e if x > d else -e

    def shift(self, word, exps):
        """Exponent of q in word * d^exps = q^shift d^exps * word."""
        s = 0
        for x in word:
            for k, e in enumerate(exps):
                if e:
                    s += e * self.table[(x, k)]
        return s

    def split(self, word):
        """Standard Borel word -> (q exponent, diag exponents, lower word)."""
        hit = self._split.get(word)
        if hit is not None:
            return hit
        n = self.n
        exps = [0] * n
        lower = []
        s = 0
        for g in word:
            i, j = divmod(g, n)
            if i == j:
                # move this diagonal left past the lower letters seen so far
                for x in lower:
                    s += self.table[(x, i)]
                exps[i] += 1
            else:
                lower.append(g)
        out = (s, tuple(exps), tuple(lower))
        self._split[word] = out
        return out


_contexts = {}


def borel_context(alg):
    ctx = _contexts.get(id(alg))
    if ctx is None or ctx.alg is not alg:
        ctx = BorelContext(alg)
        _contexts[id(alg)] = ctx
    return ctx


class BLoc:
    """Element of B_loc: {(diag exponents, lower word): coeff}."""

    __slots__ = ("alg", "ctx", "terms")

    def __init__(self, alg, terms, ctx=None):
        self.alg = alg
        self.ctx = ctx or borel_context(alg)
        self.terms = {k: c for k, c in terms.items() if c}

    # constructors ----------------------------------------------------
    @classmethod
    def one(cls, alg):
        return cls(alg, {((0,) * alg.n, ()): alg.field.one})

    @classmethod
    def zero(cls, alg):
        return cls(alg, {})

    @classmethod
    def gen(cls, alg, i, j):
        if i < j:
            raise ValueError(f"b[{i},{j}] is not a Borel generator")
        return cls.from_poly(BorelPoly(alg, {(alg.code(i, j),): alg.field.one}))

    @classmethod
    def diag_power(cls, alg, exps, coeff=None):
        c = alg.field.one if coeff is None else coeff
        return cls(alg, {(tuple(exps), ()): c})

    @classmethod
    def diag_inv(cls, alg, k):
        e = [0] * alg.n
        e[k - 1] = -1
        return cls.diag_power(alg, e)

    @classmethod
    def from_poly(cls, p):
        """Embed a (Borel-projected) polynomial."""
        alg = p.alg
        ctx = borel_context(alg)
        n = alg.n
        q = alg.field.qpow
        acc = {}
        for w, c in p.terms.items():
            if any(g // n < g % n for g in w):
                continue
            s, e, low = ctx.split(w)
            v = c * q(s) if s else c
            k = (e, low)
            acc[k] = acc[k] + v if k in acc else v
        return cls(alg, acc, ctx)

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, BLoc):
            other = BLoc.one(self.alg).scale(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return BLoc(self.alg, terms, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return BLoc(self.alg, {k: -c for k, c in self.terms.items()}, self.ctx)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.alg.field.coerce(c)
        return BLoc(self.alg, {k: c * v for k, v in self.terms.items()}, self.ctx)

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, BLoc):
            return self.scale(other)
        alg = self.alg
        ctx = self.ctx
        n = alg.n
        rw = alg.rw
        F = alg.field.from_laurent
        q = alg.field.qpow
        acc = {}
        for (e1, l1), c1 in self.terms.items():
            for (e2, l2), c2 in other.terms.items():
                s0 = ctx.shift(l1, e2)
                base = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                for w, lau in rw.product(l1, l2).items():
                    if any(g // n < g % n for g in w):
                        continue
                    s, e, low = ctx.split(w)
                    v = c * F(lau) * q(s0 + s)
                    k = (tuple(a + b for a, b in zip(base, e)), low)
                    acc[k] = acc[k] + v if k in acc else v
        return BLoc(alg, acc, ctx)

    def __pow__(self, k):
        out = BLoc.one(self.alg)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, BLoc):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self):
        return all(k == ((0,) * self.alg.n, ()) for k in self.terms)

    def scalar_value(self):
        return self.terms.get(((0,) * self.alg.n, ()), self.alg.field.zero)

    def is_diagonal_monomial(self):
        return len(self.terms) == 1 and next(iter(self.terms))[1] == ()

    def render(self):
        n = self.alg.n

        def key_text(k):
            e, low = k
            parts = []
            for i, x in enumerate(e):
                if x:
                    parts.append(f"b[{i + 1},{i + 1}]" + ("" if x == 1 else f"^{x}"))
            for g in low:
                i, j = divmod(g, n)
                parts.append(f"b[{i + 1},{j + 1}]")
            return "*".join(parts) or "1"

        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0]))
        return render_terms(self.alg.field, items, key_text)

    __str__ = render

    def __repr__(self):
        return f"BLoc({self.render()!r})"


# ----------------------------------------------------------------------
# Hopf structure of the Borel
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _antipode_table(alg):
    n = alg.n
    S = {}
    for i in range(1, n + 1):
        S[(i, i)] = BLoc.diag_inv(alg, i)
        for j in range(i - 1, 0, -1):
            acc = BLoc.zero(alg)
            for k in range(j + 1, i + 1):
                acc = acc + S[(i, k)] * BLoc.gen(alg, k, j)
            S[(i, j)] = -(acc * BLoc.diag_inv(alg, j))
    return S


def borel_antipode_gen(alg, i, j):
    """S(b[i,j]) in B_loc, by back-substitution in the antipode axiom."""
    if i < j:
        return BLoc.zero(alg)
    return _antipode_table(alg)[(i, j)]


def borel_antipode(x):
    """Anti-multiplicative antipode on a B_loc element."""
    alg = x.alg
    n = alg.n
    out = BLoc.zero(alg)
    for (e, low), c in x.terms.items():
        # S(d^e w) = S(w) S(d^e) with S(d_k) = d_k^-1 (commuting diagonals)
        term = BLoc.diag_power(alg, [-a for a in e], c)
        for g in low:
            i, j = divmod(g, n)
            term = borel_antipode_gen(alg, i + 1, j + 1) * term
        out = out + term
    return out


def borel_coproduct_gen(alg, i, j):
    """Delta_B b[i,j] = sum_{s=j..i} b[i,s] (x) b[s,j] as a list of pairs."""
    return [(BLoc.gen(alg, i, s), BLoc.gen(alg, s, j)) for s in range(j, i + 1)]


def borel_counit(x):
    """eps on B_loc: diagonals -> 1, strictly lower -> 0."""
    total = x.alg.field.zero
    for (e, low), c in x.terms.items():
        if not low:
            total = total + c
    return total


def pi_of_gl_antipode(alg, i, j):
    """pi(S_G(t[i,j])) in B_loc, the oracle for the Borel antipode."""
    from .qminor import qminor_poly
    n = alg.n
    rows = [r for r in range(1, n + 1) if r != j]
    cols = [c for c in range(1, n + 1) if c != i]
    m = qminor_poly(alg, rows, cols)
    from .qalgebra import borel_project
    num = BLoc.from_poly(borel_project(m))
    sign = alg.field.qpow(i - j) * (-1) ** ((i - j) % 2)
    return (num * BLoc.diag_power(alg, [-1] * n)).scale(sign)


def qcentrality_check(alg):
    """Each diagonal Borel generator q-commutes with every Borel generator."""
    ctx = borel_context(alg)
    rep = SuiteReport("borel-qcentral")
    n = alg.n
    for x in ctx.borel_gens:
        for k, d in enumerate(ctx.diag):
            with stopwatch() as t:
                c = ctx._exponent(x, d)
                ok = c is not None
                if ok:
                    lhs = borel_from_word(alg, (x, d))
                    rhs = borel_from_word(alg, (d, x))
                    ok = lhs == BLoc(alg, {k2: v * alg.field.qpow(c) for k2, v in rhs.terms.items()})
            i, j = divmod(x, n)
            rep.add(f"b[{i + 1},{j + 1}]*b[{k + 1},{k + 1}]", ok,
                    f"q^{c}" if c is not None else "?", "", "" if ok else "not a q-multiple", t[0])
    return rep


def borel_from_word(alg, word):
    p = alg.monomial(word)
    return BLoc.from_poly(BorelPoly(alg, p.terms))


def borel_antipode_check(alg):
    """Both antipode axioms in B_loc, plus agreement with pi(S_G)."""
    n = alg.n
    rep = SuiteReport("borel-antipode")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            with stopwatch() as t:
                left = BLoc.zero(alg)
                right = BLoc.zero(alg)
                for k in range(1, n + 1):
                    if i >= k >= j:
                        left = left + borel_antipode_gen(alg, i, k) * BLoc.gen(alg, k, j)
                        right = right + BLoc.gen(alg, i, k) * borel_antipode_gen(alg, k, j)
                target = BLoc.one(alg) if i == j else BLoc.zero(alg)
                ok = left == target and right == target
                oracle = pi_of_gl_antipode(alg, i, j)
                ok_oracle = oracle == borel_antipode_gen(alg, i, j)
            rep.add(f"S-axioms({i},{j})", ok, left.render(), target.render(),
                    f"right: {right.render()}", t[0])
            rep.add(f"S=pi(S_G)({i},{j})", ok_oracle, borel_antipode_gen(alg, i, j).render(),
                    oracle.render(), "Borel antipode differs from projected GL antipode", 0.0)
    return rep


def as_blocs(p):
    """Convenience: NcPoly -> BLoc via the Borel projection."""
    if isinstance(p, NcPoly):
        return BLoc.from_poly(p)
    return p
