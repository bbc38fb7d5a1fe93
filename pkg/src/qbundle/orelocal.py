"""Ore localization of M_q(n) at sets of quantum minors.

Fractions are left fractions ``s^-1 r`` with ``s`` a word in the declared
Ore generators.  The Ore condition ``r' s = s' r`` is solved by trying
candidate words ``s'`` (shortest first) and dividing ``s' r`` on the right
by ``s``; because leading monomials are multiplicative in M_q(n) the
division algorithm decides divisibility exactly, so this finds the same
witnesses as a graded linear solve (kept as :func:`ore_solve_linear`).
"""
from __future__ import annotations

import itertools

from . import linalg
from .borel import BLoc, borel_context
from .qalgebra import NcPoly, TensorPoly, bidegree_of, lead_key, monomial_quotient, rho_borel
from .report import SuiteReport, stopwatch


class OreNotFound(LookupError):
    """No witness within the search bound (not a disproof)."""


class NotCompatible(ValueError):
    pass


# ----------------------------------------------------------------------
# exact division
# ----------------------------------------------------------------------

def right_divide(p, s):
    """Return r with r*s == p, or None if p is not a right multiple of s."""
    alg = p.alg
    if not s.terms:
        raise ZeroDivisionError("division by zero polynomial")
    ws, _ = s.leading()
    cache = {}
    quotient = {}
    rem = p
    while rem.terms:
        w, c = rem.leading()
        m = monomial_quotient(w, ws)
        if m is None:
            return None
        prod = cache.get(m)
        if prod is None:
            prod = NcPoly(alg, {m: alg.field.one}) * s
            cache[m] = prod
        f = c / prod.terms[w]
        quotient[m] = quotient[m] + f if m in quotient else f
        rem = rem - prod.scale(f)
    return NcPoly(alg, quotient)


def left_divide(p, s):
    """Return r with s*r == p, or None."""
    alg = p.alg
    if not s.terms:
        raise ZeroDivisionError("division by zero polynomial")
    ws, _ = s.leading()
    cache = {}
    quotient = {}
    rem = p
    while rem.terms:
        w, c = rem.leading()
        m = monomial_quotient(w, ws)
        if m is None:
            return None
        prod = cache.get(m)
        if prod is None:
            prod = s * NcPoly(alg, {m: alg.field.one})
            cache[m] = prod
        f = c / prod.terms[w]
        quotient[m] = quotient[m] + f if m in quotient else f
        rem = rem - prod.scale(f)
    return NcPoly(alg, quotient)


# ----------------------------------------------------------------------
# Ore sets
# ----------------------------------------------------------------------

class OreSet:
    """Multiplicative set generated by a list of homogeneous elements.

    When all generators pairwise commute up to a scalar the set is
    *quasi-commutative*: denominator words are kept sorted and common
    denominators are formed by multiset maxima.
    """

    def __init__(self, alg, generators, name="S", labels=None, bound=3, specs=None):
        if not generators:
            raise ValueError("an Ore set needs at least one generator")
        self.alg = alg
        self.gens = list(generators)
        for g in self.gens:
            if not g.terms:
                raise ValueError("zero cannot be an Ore generator")
            if not g.is_homogeneous():
                raise ValueError("Ore generators must be homogeneous")
        self.name = name
        self.labels = list(labels) if labels else [f"s{k}" for k in range(len(self.gens))]
        self.specs = list(specs) if specs else [None] * len(self.gens)
        self.bound = bound
        self._word_cache = {(): alg.one}
        self._solve_cache = {}
        self._rsolve_cache = {}
        self.swap = {}
        self.quasi_commutative = True
        for i in range(len(self.gens)):
            for j in range(i + 1, len(self.gens)):
                k = self._qcommute(self.gens[j], self.gens[i])
                if k is None:
                    self.quasi_commutative = False
                else:
                    self.swap[(j, i)] = k
        gens_all = [alg.gen(*alg.label(g)) for g in range(alg.n * alg.n)]
        self.central = [all(g * x == x * g for x in gens_all) for g in self.gens]
        self._grading = None

    @staticmethod
    def _qcommute(x, y):
        """k with x*y = k*y*x, or None."""
        p = x * y
        r = y * x
        w, c = r.leading()
        if w not in p.terms:
            return None
        k = p.terms[w] / c
        return k if p == r.scale(k) else None

    def index_of(self, poly):
        for k, g in enumerate(self.gens):
            if g == poly:
                return k
        return None

    def canon(self, word):
        """(kappa, word') with prod(word) = kappa * prod(word'), word' canonical."""
        word = tuple(word)
        one = self.alg.field.one
        if not self.quasi_commutative:
            return one, word
        w = list(word)
        kappa = one
        # bubble sort; each swap of (j, i) with j > i uses g_j g_i = k g_i g_j
        changed = True
        while changed:
            changed = False
            for p in range(len(w) - 1):
                if w[p] > w[p + 1]:
                    kappa = kappa * self.swap[(w[p], w[p + 1])]
                    w[p], w[p + 1] = w[p + 1], w[p]
                    changed = True
        return kappa, tuple(w)

    def product(self, word):
        word = tuple(word)
        hit = self._word_cache.get(word)
        if hit is None:
            hit = self.product(word[:-1]) * self.gens[word[-1]]
            self._word_cache[word] = hit
        return hit

    def candidates(self, length):
        k = len(self.gens)
        if self.quasi_commutative:
            return itertools.combinations_with_replacement(range(k), length)
        return itertools.product(range(k), repeat=length)

    def word_text(self, word):
        if not word:
            return "1"
        return "*".join(self.labels[i] for i in word)

    def union(self, other, name=None):
        """S v T: concatenated generator lists, duplicates dropped."""
        gens = list(self.gens)
        labels = list(self.labels)
        specs = list(self.specs)
        for g, lab, sp in zip(other.gens, other.labels, other.specs):
            if not any(g == h for h in gens):
                gens.append(g)
                labels.append(lab)
                specs.append(sp)
        return OreSet(self.alg, gens, name or f"{self.name}v{other.name}", labels,
                      max(self.bound, other.bound), specs)

    def __repr__(self):
        return f"OreSet({self.name!r}, [{', '.join(self.labels)}])"


# ----------------------------------------------------------------------
# the Ore condition
# ----------------------------------------------------------------------

def _solve_one(r, g, S, bound, min_length, side):
    """Witness for a single generator g: left r'g = s'r, right g r' = r s'."""
    cache = S._solve_cache if side == "left" else S._rsolve_cache
    key = (r, g, bound, min_length)
    hit = cache.get(key)
    if hit is not None:
        return hit
    gpoly = S.gens[g]
    if r.is_scalar():
        out = (r, (g,))
    elif S.central[g]:
        out = (r, (g,))
    else:
        out = None
        for length in range(min_length, bound + 1):
            for cand in S.candidates(length):
                sp = S.product(cand)
                if side == "left":
                    rp = right_divide(sp * r, gpoly)
                else:
                    rp = left_divide(r * sp, gpoly)
                if rp is not None:
                    out = (rp, tuple(cand))
                    break
            if out is not None:
                break
        if out is None:
            raise OreNotFound(f"no {side} Ore witness for r={r.render()} and "
                              f"s={S.labels[g]} within bound {bound}")
    cache[key] = out
    return out


def ore_solve(r, s, S, bound=None, side="left", min_length=1):
    """Solve the Ore condition for r and the denominator s.

    ``s`` is a word of generator indices (or a polynomial equal to one
    generator).  Left side returns (r', s') with r'*s == s'*r; right side
    returns (r', s') with s*r' == r*s'.  s' is a word in S.
    """
    if bound is None:
        bound = S.bound
    if isinstance(s, NcPoly):
        k = S.index_of(s)
        if k is None:
            raise ValueError("denominator is not a declared Ore generator")
        s = (k,)
    s = tuple(s)
    one = r.alg.field.one
    if not s:
        return r, ()
    if side == "left":
        # r (g1...gk)^-1 = r gk^-1 ... g1^-1, peel generators right to left
        cur = r
        acc = ()
        for g in reversed(s):
            cur, w = _solve_one(cur, g, S, bound, min_length, "left")
            acc = w + acc
        kappa, word = S.canon(acc)
        if kappa != one:
            cur = cur.scale(one / kappa)
        return cur, word
    if side == "right":
        # (g1...gk)^-1 r = g1^-1 (... (gk^-1 r))
        cur = r
        acc = ()
        for g in s:
            cur, w = _solve_one(cur, g, S, bound, min_length, "right")
            acc = acc + w
        kappa, word = S.canon(acc)
        if kappa != one:
            cur = cur.scale(one / kappa)
        return cur, word
    raise ValueError(side)


def verify_witness(r, s, rp, sp, S, side="left"):
    """Independent normal-form re-check of an Ore witness."""
    sw = S.product(s) if not isinstance(s, NcPoly) else s
    spw = S.product(sp)
    if side == "left":
        return rp * sw == spw * r
    return sw * rp == r * spw


def standard_words(bideg, n):
    """All standard words with the given row/column degree vectors."""
    rows = list(bideg.rowdeg)
    cols = list(bideg.coldeg)
    out = []

    def rec(g, word):
        if g == n * n:
            if not any(rows) and not any(cols):
                out.append(tuple(word))
            return
        i, j = divmod(g, n)
        top = min(rows[i], cols[j])
        for k in range(top, -1, -1):
            rows[i] -= k
            cols[j] -= k
            rec(g + 1, word + [g] * k)
            rows[i] += k
            cols[j] += k

    rec(0, [])
    return out


def ore_solve_linear(r, s_word, sp_word, S):
    """Graded linear-system solve of r' s = s' r for a fixed candidate s'.

    Returns r' or None.  Requires r homogeneous.
    """
    alg = r.alg
    n = alg.n
    s = S.product(s_word)
    sp = S.product(sp_word)
    target = sp * r
    if not target.terms:
        return alg.zero
    bds = target.bidegrees()
    if len(bds) != 1:
        raise ValueError("r must be homogeneous")
    bd = next(iter(bds)) - next(iter(s.bidegrees()))
    if min(bd.rowdeg + bd.coldeg) < 0:
        return None
    basis = standard_words(bd, n)
    cols = [NcPoly(alg, {w: alg.field.one}) * s for w in basis]
    monos = sorted({m for c in cols for m in c.terms} | set(target.terms))
    index = {m: k for k, m in enumerate(monos)}
    rows = [dict() for _ in monos]
    for k, c in enumerate(cols):
        for m, v in c.terms.items():
            rows[index[m]][k] = v
    rhs = [target.terms.get(m, alg.field.zero) for m in monos]
    x = linalg.solve(rows, rhs, len(basis), alg.field.zero, alg.field.one)
    if x is None:
        return None
    return NcPoly(alg, {w: v for w, v in zip(basis, x)})


# ----------------------------------------------------------------------
# fractions
# ----------------------------------------------------------------------

class OreFraction:
    """Left fraction s^-1 r with s a (canonical) word in the Ore generators."""

    __slots__ = ("S", "word", "num")

    def __init__(self, S, word, num):
        word = tuple(word)
        kappa, cw = S.canon(word)
        if kappa != S.alg.field.one:
            # prod(word) = kappa prod(cw)  =>  word^-1 r = cw^-1 (kappa^-1 r)
            num = num.scale(S.alg.field.one / kappa)
        self.S = S
        self.word = cw
        self.num = num

    @classmethod
    def poly(cls, S, p):
        return cls(S, (), p)

    @classmethod
    def inv(cls, S, k, num=None):
        return cls(S, (k,), S.alg.one if num is None else num)

    @property
    def alg(self):
        return self.S.alg

    def is_polynomial(self):
        return not self.word

    def __mul__(self, other):
        if not isinstance(other, OreFraction):
            if isinstance(other, NcPoly):
                other = OreFraction(self.S, (), other)
            else:
                return self.scale(other)
        return fraction_multiply(self, other)

    def __rmul__(self, c):
        if isinstance(c, NcPoly):
            return OreFraction(self.S, (), c) * self
        return self.scale(c)

    def __add__(self, other):
        if isinstance(other, NcPoly):
            other = OreFraction(self.S, (), other)
        return fraction_add(self, other)

    def __neg__(self):
        return OreFraction(self.S, self.word, -self.num)

    def __sub__(self, other):
        if isinstance(other, NcPoly):
            other = OreFraction(self.S, (), other)
        return fraction_add(self, -other)

    def scale(self, c):
        return OreFraction(self.S, self.word, self.num.scale(c))

    def __bool__(self):
        return bool(self.num.terms)

    def equals(self, other):
        return fraction_equal(self, other)

    def simplify(self):
        return simplify(self)

    def render(self):
        body = self.num.render()
        if not self.word:
            return body
        return f"inv({self.S.word_text(self.word)})*({body})"

    __str__ = render

    def __repr__(self):
        return f"OreFraction({self.render()!r})"


def simplify(x):
    """Cancel generators that divide the numerator on the left."""
    S = x.S
    word = x.word
    num = x.num
    if not num.terms:
        return OreFraction(S, (), num)
    changed = True
    while changed and word:
        changed = False
        if S.quasi_commutative:
            for g in sorted(set(word)):
                r2 = left_divide(num, S.gens[g])
                if r2 is None:
                    continue
                rest = list(word)
                rest.remove(g)
                kappa, cw = S.canon((g,) + tuple(rest))
                # prod(word) = kappa^-1 g prod(rest)
                num = r2.scale(kappa)
                word = tuple(rest)
                changed = True
                break
        else:
            r2 = left_divide(num, S.gens[word[0]])
            if r2 is not None:
                num = r2
                word = word[1:]
                changed = True
    return OreFraction(S, word, num)


def _same_set(x, y):
    if x.S is not y.S:
        raise ValueError("fractions over different Ore sets; reindex first")


def fraction_multiply(x, y, simplify_result=True):
    """(s1^-1 r1)(s2^-1 r2) = (t s1)^-1 (r~ r2) where r~ s2 = t r1."""
    _same_set(x, y)
    S = x.S
    if not x.num.terms or not y.num.terms:
        return OreFraction(S, (), S.alg.zero)
    if not y.word:
        out = OreFraction(S, x.word, x.num * y.num)
    else:
        rt, t = ore_solve(x.num, y.word, S, min_length=0)
        out = OreFraction(S, t + x.word, rt * y.num)
    return simplify(out) if simplify_result and out.word else out


def common_denominator(x, y):
    """Rewrite x, y over one word: returns (word, rx, ry)."""
    _same_set(x, y)
    S = x.S
    if x.word == y.word:
        return x.word, x.num, y.num
    alg = S.alg
    if S.quasi_commutative:
        cx = {}
        for g in x.word:
            cx[g] = cx.get(g, 0) + 1
        cy = {}
        for g in y.word:
            cy[g] = cy.get(g, 0) + 1
        top = {g: max(cx.get(g, 0), cy.get(g, 0)) for g in set(cx) | set(cy)}
        L = tuple(sorted(g for g, k in top.items() for _ in range(k)))

        def lift(f, counts):
            u = tuple(sorted(g for g in top for _ in range(top[g] - counts.get(g, 0))))
            # L = kappa^-1 u s  with  u s = kappa L
            kappa, w = S.canon(u + f.word)
            assert w == L
            return S.product(u) * f.num.scale(alg.field.one / kappa)

        return L, lift(x, cx), lift(y, cy)
    # suffix shortcuts: s1 = u s2  =>  s2^-1 r2 = s1^-1 (u r2)
    if x.word[len(x.word) - len(y.word):] == y.word:
        u = x.word[:len(x.word) - len(y.word)]
        return x.word, x.num, S.product(u) * y.num
    if y.word[len(y.word) - len(x.word):] == x.word:
        u = y.word[:len(y.word) - len(x.word)]
        return y.word, S.product(u) * x.num, y.num
    # general: t s1 = r~ s2
    sx = S.product(x.word)
    rt, t = ore_solve(sx, y.word, S, min_length=0)
    return t + x.word, S.product(t) * x.num, rt * y.num


def fraction_add(x, y, simplify_result=True):
    if not x.num.terms:
        return y
    if not y.num.terms:
        return x
    word, rx, ry = common_denominator(x, y)
    out = OreFraction(x.S, word, rx + ry)
    return simplify(out) if simplify_result and out.word else out


def fraction_equal(x, y):
    """Semantic equality (the algebra is a domain, so numerators decide)."""
    if not x.num.terms or not y.num.terms:
        return not x.num.terms and not y.num.terms
    _, rx, ry = common_denominator(x, y)
    return rx == ry


def reindex(x, T):
    """View a fraction over S as a fraction over T (S-generators must lie in T)."""
    if x.S is T:
        return x
    mapping = []
    for k, g in enumerate(x.S.gens):
        m = T.index_of(g)
        if m is None:
            raise ValueError(f"generator {x.S.labels[k]} is not in {T.name}")
        mapping.append(m)
    return OreFraction(T, tuple(mapping[g] for g in x.word), NcPoly(T.alg, x.num.terms))


# ----------------------------------------------------------------------
# coaction on localizations
# ----------------------------------------------------------------------

def group_like_leg(s):
    """If rho_B(s) = s (x) g with g a diagonal Borel monomial, return g's exponents."""
    alg = s.alg
    rho = rho_borel(s)
    by_right = {}
    for (l, r), c in rho.terms.items():
        by_right.setdefault(r, {})[l] = c
    if len(by_right) != 1:
        return None, rho
    (rw, left), = by_right.items()
    if NcPoly(alg, left) != s:
        return None, rho
    if not all(alg.is_diagonal(g) for g in rw):
        return None, rho
    e = [0] * alg.n
    for g in rw:
        e[g // alg.n] += 1
    return tuple(e), rho


def compat_check(S):
    """Each generator is coacted as s (x) (diagonal monomial), invertible in B_loc."""
    rep = SuiteReport("compat")
    alg = S.alg
    for k, s in enumerate(S.gens):
        with stopwatch() as t:
            e, rho = group_like_leg(s)
        ok = e is not None
        rhs = ""
        if ok:
            rhs = f"{S.labels[k]} (x) " + BLoc.diag_power(alg, e).render()
        surviving = ""
        if not ok:
            by_right = {}
            for (l, r), c in rho.terms.items():
                by_right.setdefault(r, {})[l] = c
            bad = [r for r in by_right if not all(alg.is_diagonal(g) for g in r)]
            surviving = "off-flag legs: " + ", ".join(
                BLoc.from_poly(NcPoly(alg, {r: alg.field.one})).render() for r in bad[:4])
        rep.add(f"rho({S.labels[k]})", ok, rho.render() if len(rho.terms) < 12 else f"{len(rho.terms)} terms",
                rhs, surviving, t[0])
    S._grading = [group_like_leg(s)[0] for s in S.gens] if rep.passed else None
    return rep


def _grading(S):
    if S._grading is None:
        gr = [group_like_leg(s)[0] for s in S.gens]
        if any(e is None for e in gr):
            raise NotCompatible(f"{S.name} is not compatible with the Borel coaction")
        S._grading = gr
    return S._grading


class CoactedFraction:
    """sum over right legs: (word^-1 numerator) (x) (B_loc monomial).

    ``terms`` maps a B_loc key (diag exponents, lower word) to the NcPoly
    numerator of the left leg; all left legs share ``word``.
    """

    def __init__(self, S, word, terms):
        self.S = S
        self.word = tuple(word)
        self.terms = {k: v for k, v in terms.items() if v.terms}

    def __eq__(self, other):
        if not isinstance(other, CoactedFraction):
            return NotImplemented
        if self.word == other.word:
            return self.terms == other.terms
        keys = set(self.terms) | set(other.terms)
        zero = self.S.alg.zero
        for k in keys:
            a = OreFraction(self.S, self.word, self.terms.get(k, zero))
            b = OreFraction(other.S, other.word, other.terms.get(k, zero))
            if not fraction_equal(a, b):
                return False
        return True

    def render(self):
        alg = self.S.alg
        parts = []
        for k in sorted(self.terms, key=lambda k: (len(k[1]), k[1], k[0])):
            left = OreFraction(self.S, self.word, self.terms[k]).render()
            right = BLoc(alg, {k: alg.field.one}).render()
            parts.append(f"[{left}] (x) [{right}]")
        return " + ".join(parts) or "0"

    __str__ = render


def coact_fraction(x):
    """rho(s^-1 r) = sum s^-1 r0 (x) g_s^-1 pi(r1)."""
    S = x.S
    alg = S.alg
    gr = _grading(S)
    n = alg.n
    gs = [0] * n
    for g in x.word:
        for i in range(n):
            gs[i] += gr[g][i]
    ctx = borel_context(alg)
    F = alg.field
    acc = {}
    rho = rho_borel(x.num)
    for (l, r), c in rho.terms.items():
        s, e, low = ctx.split(r)
        key = (tuple(a - b for a, b in zip(e, gs)), low)
        v = c * F.qpow(s) if s else c
        slot = acc.setdefault(key, {})
        slot[l] = slot[l] + v if l in slot else v
    return CoactedFraction(S, x.word, {k: NcPoly(alg, v) for k, v in acc.items()})


def coinvariant_check(x):
    """True iff rho(x) = x (x) 1, via the cleared identity."""
    alg = x.S.alg
    if not x.num.terms:
        return True
    co = coact_fraction(x)
    unit = ((0,) * alg.n, ())
    return set(co.terms) == {unit} and co.terms[unit] == x.num


def nested_check(S, T, samples):
    """Coinvariants over S stay coinvariant over T, and reindexing intertwines."""
    rep = SuiteReport("nested")
    rep.notes["S"] = S.name
    rep.notes["T"] = T.name
    for k, x in enumerate(samples):
        with stopwatch() as t:
            if not isinstance(x, OreFraction):
                x = OreFraction(S, (), x)
            try:
                y = reindex(x, T)
            except ValueError as exc:
                rep.add(f"sample{k}", False, x.render(), "", str(exc))
                continue
            cs = coinvariant_check(x)
            ct = coinvariant_check(y)
            a = coact_fraction(x)
            b = coact_fraction(y)
            square = CoactedFraction(T, tuple(T.index_of(S.gens[g]) for g in a.word),
                                     {key: NcPoly(T.alg, v.terms) for key, v in a.terms.items()}) == b
        ok = cs == ct and square
        rep.add(f"sample{k}", ok, f"{x.render()} coinvariant={cs}", f"over {T.name}: coinvariant={ct}",
                "" if ok else f"square commutes: {square}", t[0])
    return rep


def tensor_from_coaction(co):
    """Debug helper: flatten a CoactedFraction with empty denominator."""
    if co.word:
        raise ValueError("denominator present")
    alg = co.S.alg
    acc = {}
    for key, num in co.terms.items():
        for w, c in num.terms.items():
            acc[(w, key)] = c
    return TensorPoly(alg, acc)


def witness_degree(word, S):
    return bidegree_of(S.product(word).leading()[0], S.alg.n) if word else None


__all__ = [
    "OreNotFound", "NotCompatible", "OreSet", "OreFraction", "ore_solve", "ore_solve_linear",
    "verify_witness", "fraction_multiply", "fraction_add", "fraction_equal", "simplify",
    "reindex", "common_denominator", "compat_check", "coact_fraction", "coinvariant_check",
    "nested_check", "CoactedFraction", "right_divide", "left_divide", "standard_words",
    "lead_key",
]
