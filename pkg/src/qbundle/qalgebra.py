"""Normal-form arithmetic in the quantum matrix bialgebra M_q(n).

Elements are linear combinations of standard (nondecreasing) words in the
generators t[i,j], ordered (row, col) lexicographically.  Products are
reduced by the oriented relations

    t[a,d] t[a,c] = q^-1 t[a,c] t[a,d]              (same row, c < d)
    t[b,c] t[a,c] = q^-1 t[a,c] t[b,c]              (same column, a < b)
    t[b,d] t[a,c] = t[a,c] t[b,d] - (q - q^-1) t[a,d] t[b,c]   (a < b, c < d)
    t[b,c] t[a,d] = t[a,d] t[b,c]                   (a < b, c < d)

whose confluence is certified at runtime by :func:`diamond_check`.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache

from . import _kernel
from .report import SuiteReport, stopwatch
from .scalar import ScalarQ, make_field

_SCALARS = (int, Fraction, ScalarQ)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Bidegree:
    rowdeg: tuple
    coldeg: tuple

    def __add__(self, other):
        return Bidegree(tuple(a + b for a, b in zip(self.rowdeg, other.rowdeg)),
                        tuple(a + b for a, b in zip(self.coldeg, other.coldeg)))

    def __sub__(self, other):
        return Bidegree(tuple(a - b for a, b in zip(self.rowdeg, other.rowdeg)),
                        tuple(a - b for a, b in zip(self.coldeg, other.coldeg)))


class QAlgebra:
    """M_q(n) over a coefficient field (Q(q) or a specialization)."""

    def __init__(self, n, field=None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.field = field if field is not None else make_field()
        self.rw = _kernel.rewriter(n)
        self._zero = NcPoly(self, {})
        self._one = NcPoly(self, {(): self.field.one})
        self._comult = {}
        self._rho = {}

    # generators and labels ------------------------------------------
    def code(self, i, j):
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"generator t[{i},{j}] out of range for n={self.n}")
        return (i - 1) * self.n + (j - 1)

    def label(self, g):
        i, j = divmod(g, self.n)
        return i + 1, j + 1

    def gen(self, i, j):
        return NcPoly(self, {(self.code(i, j),): self.field.one})

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def scalar(self, c):
        c = self.field.coerce(c)
        return NcPoly(self, {(): c} if c else {})

    def monomial(self, word, coeff=None):
        """Normal form of an arbitrary word (tuple of generator codes)."""
        c = self.field.one if coeff is None else self.field.coerce(coeff)
        return self._from_kernel(self.rw.normal_form(tuple(word)), c)

    def _from_kernel(self, nf, scale):
        F = self.field.from_laurent
        terms = {}
        for w, lau in nf.items():
            terms[w] = scale * F(lau)
        return NcPoly(self, terms)

    def is_upper(self, g):
        i, j = divmod(g, self.n)
        return i < j

    def is_diagonal(self, g):
        i, j = divmod(g, self.n)
        return i == j

    def bidegree_of(self, word):
        return bidegree_of(word, self.n)

    def with_field(self, field):
        return QAlgebra(self.n, field)

    def __repr__(self):
        return f"QAlgebra(n={self.n}, {self.field!r})"


@lru_cache(maxsize=None)
def get_algebra(n, q=None):
    """Shared algebra instance for (n, q); q=None means symbolic."""
    return QAlgebra(n, make_field(q))


def bidegree_of(word, n):
    row = [0] * n
    col = [0] * n
    for g in word:
        i, j = divmod(g, n)
        row[i] += 1
        col[j] += 1
    return Bidegree(tuple(row), tuple(col))


def render_word(word, n):
    if not word:
        return "1"
    parts = []
    for g, grp in itertools.groupby(word):
        k = len(list(grp))
        i, j = divmod(g, n)
        s = f"t[{i + 1},{j + 1}]"
        parts.append(s if k == 1 else f"{s}^{k}")
    return "*".join(parts)


def _coeff_text(field, c):
    """(sign, text) for a coefficient; compound values are parenthesized."""
    s = field.render(c)
    body = s[1:] if s.startswith("-") else s
    if "+" in body or "-" in body.replace("^-", "^") or "/" in body:
        return "+", f"({s})"
    if s.startswith("-"):
        return "-", body
    return "+", s


def render_terms(field, items, render_key):
    """Shared renderer for sums of (key, coeff)."""
    if not items:
        return "0"
    out = []
    for idx, (key, c) in enumerate(items):
        body = render_key(key)
        sign, ctext = _coeff_text(field, c)
        if ctext == "1" and body != "1":
            term = body
        elif body == "1":
            term = ctext
        else:
            term = f"{ctext}*{body}"
        if idx == 0:
            out.append(term if sign == "+" else "-" + term)
        else:
            out.append(f" {sign} {term}")
    return "".join(out)


class NcPoly:
    """Element of M_q(n) in normal form: standard word -> nonzero coefficient."""

    __slots__ = ("alg", "terms", "_hash")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {w: c for w, c in terms.items() if c}
        self._hash = None

    # arithmetic ------------------------------------------------------
    def _check(self, other):
        if other.alg is not self.alg:
            if other.alg.n != self.alg.n:
                raise DimensionMismatch(f"n={self.alg.n} vs n={other.alg.n}")
            if other.alg.field != self.alg.field:
                raise DimensionMismatch("different coefficient fields")

    def _lift(self, other):
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        if not other.terms:
            return self
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return NcPoly(self.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.alg.field.coerce(c)
        if not c:
            return self.alg.zero
        return NcPoly(self.alg, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            if isinstance(other, _SCALARS):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        alg = self.alg
        if not self.terms or not other.terms:
            return alg.zero
        F = alg.field.from_laurent
        product = alg.rw.product
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, lau in product(m1, m2).items():
                    v = c * F(lau) if lau != ((0, 1),) else c
                    if m in acc:
                        acc[m] = acc[m] + v
                    else:
                        acc[m] = v
        return NcPoly(alg, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = self.alg.one
        for _ in range(k):
            out = out * self
        return out

    # comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.alg.n == other.alg.n and self.terms == other.terms
        if not self.terms:
            return other == 0
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    # queries ---------------------------------------------------------
    def is_scalar(self):
        return not self.terms or set(self.terms) == {()}

    def constant(self):
        return self.terms.get((), self.alg.field.zero)

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def bidegrees(self):
        return {bidegree_of(w, self.alg.n) for w in self.terms}

    def is_homogeneous(self):
        return len(self.bidegrees()) <= 1

    def leading(self):
        """(word, coeff) of the leading monomial (see :func:`lead_key`)."""
        w = max(self.terms, key=lead_key)
        return w, self.terms[w]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def map_coefficients(self, fn, alg):
        return NcPoly(alg, {w: fn(c) for w, c in self.terms.items()})

    def render(self):
        n = self.alg.n
        return render_terms(self.alg.field, self.sorted_terms(), lambda w: render_word(w, n))

    __str__ = render

    def __repr__(self):
        return f"NcPoly({self.render()!r})"


def lead_key(word):
    """Degree first, then more copies of smaller generators ranks higher.

    Every rewrite keeps the sorted letter multiset of its main term and
    produces corrections with strictly smaller keys, so for products the
    leading word is the sorted concatenation of the leading words.
    """
    return (len(word), tuple(-g for g in word))


def monomial_quotient(big, small):
    """Sorted word w with sorted(w + small) == big, or None."""
    out = []
    i = 0
    for g in big:
        if i < len(small) and small[i] == g:
            i += 1
        else:
            out.append(g)
    if i != len(small):
        return None
    return tuple(out)


# ----------------------------------------------------------------------
# bialgebra structure
# ----------------------------------------------------------------------

class TensorPoly:
    """Element of M_q(n) (x) M_q(n): (left word, right word) -> coefficient."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: c for k, c in terms.items() if c}

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return TensorPoly(self.alg, terms)

    def __sub__(self, other):
        return self + TensorPoly(other.alg, {k: -c for k, c in other.terms.items()})

    def __mul__(self, other):
        rw = self.alg.rw
        F = self.alg.field.from_laurent
        acc = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                c = c1 * c2
                left = rw.product(l1, l2)
                right = rw.product(r1, r2)
                for lw, ll in left.items():
                    cl = c * F(ll)
                    for rw_, rl in right.items():
                        k = (lw, rw_)
                        v = cl * F(rl)
                        acc[k] = acc[k] + v if k in acc else v
        return TensorPoly(self.alg, acc)

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.terms == other.terms

    @classmethod
    def pure(cls, x, y):
        terms = {}
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                terms[(w1, w2)] = c1 * c2
        return cls(x.alg, terms)

    def render(self):
        n = self.alg.n
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], len(kv[0][1]), kv[0][1]))
        return render_terms(self.alg.field, items,
                            lambda k: f"{render_word(k[0], n)} (x) {render_word(k[1], n)}")

    __str__ = render

    def __repr__(self):
        return f"TensorPoly({self.render()!r})"


def _coproduct_word(alg, word, right_filter=None):
    """Delta of a standard word as {(left, right): coeff}, right legs in normal form.

    ``right_filter`` drops a choice as soon as a right-leg letter fails it
    (used to apply the Borel projection on the fly).
    """
    n = alg.n
    rw = alg.rw
    F = alg.field.from_laurent
    acc = {}
    letters = [divmod(g, n) for g in word]
    for ks in itertools.product(range(n), repeat=len(word)):
        right = tuple(k * n + j for (i, j), k in zip(letters, ks))
        if right_filter is not None and not all(right_filter(g) for g in right):
            continue
        left = tuple(i * n + k for (i, j), k in zip(letters, ks))
        lnf = rw.normal_form(left)
        rnf = rw.normal_form(right)
        for lw, ll in lnf.items():
            cl = F(ll)
            for rwd, rl in rnf.items():
                if right_filter is not None and not all(right_filter(g) for g in rwd):
                    continue
                k = (lw, rwd)
                v = cl * F(rl)
                acc[k] = acc[k] + v if k in acc else v
    return acc


def comultiply(x):
    """Delta(x) with Delta t[i,j] = sum_k t[i,k] (x) t[k,j]."""
    alg = x.alg
    out = {}
    for w, c in x.terms.items():
        d = alg._comult.get(w)
        if d is None:
            d = _coproduct_word(alg, w)
            alg._comult[w] = d
        for k, v in d.items():
            v = c * v
            out[k] = out[k] + v if k in out else v
    return TensorPoly(alg, out)


def counit(x):
    """Algebra map t[i,j] -> delta_ij."""
    alg = x.alg
    total = alg.field.zero
    for w, c in x.terms.items():
        if all(alg.is_diagonal(g) for g in w):
            total = total + c
    return total


def rho_borel(x):
    """(id (x) pi) Delta(x): the right Borel coaction on M_q(n)."""
    alg = x.alg
    keep = lambda g: not alg.is_upper(g)  # noqa: E731
    out = {}
    for w, c in x.terms.items():
        d = alg._rho.get(w)
        if d is None:
            d = _coproduct_word(alg, w, keep)
            alg._rho[w] = d
        for k, v in d.items():
            v = c * v
            out[k] = out[k] + v if k in out else v
    return TensorPoly(alg, out)


def tensor_apply(t, left=None, right=None):
    """Apply linear maps on words to the legs of a TensorPoly.

    ``left``/``right`` map a word to an NcPoly (or scalar via counit).
    """
    alg = t.alg
    acc = {}
    for (l, r), c in t.terms.items():
        lx = left(l) if left else NcPoly(alg, {l: alg.field.one})
        rx = right(r) if right else NcPoly(alg, {r: alg.field.one})
        if not isinstance(lx, NcPoly):
            lx = alg.scalar(lx)
        if not isinstance(rx, NcPoly):
            rx = alg.scalar(rx)
        for lw, lc in lx.terms.items():
            for rwd, rc in rx.terms.items():
                k = (lw, rwd)
                v = c * lc * rc
                acc[k] = acc[k] + v if k in acc else v
    return TensorPoly(alg, acc)


def contract_left_counit(t):
    """(eps (x) id) t as an NcPoly."""
    alg = t.alg
    acc = {}
    for (l, r), c in t.terms.items():
        if all(alg.is_diagonal(g) for g in l):
            acc[r] = acc[r] + c if r in acc else c
    return NcPoly(alg, acc)


def contract_right_counit(t):
    alg = t.alg
    acc = {}
    for (l, r), c in t.terms.items():
        if all(alg.is_diagonal(g) for g in r):
            acc[l] = acc[l] + c if l in acc else c
    return NcPoly(alg, acc)


# ----------------------------------------------------------------------
# quotients
# ----------------------------------------------------------------------

class BorelPoly(NcPoly):
    """Element of the quantum Borel quotient: no strictly-upper generator occurs."""

    __slots__ = ()

    def __init__(self, alg, terms):
        n = alg.n
        super().__init__(alg, {w: c for w, c in terms.items()
                               if all(g // n >= g % n for g in w)})

    def __mul__(self, other):
        p = NcPoly.__mul__(self, other)
        return BorelPoly(p.alg, p.terms) if isinstance(p, NcPoly) else p

    def __add__(self, other):
        p = NcPoly.__add__(self, other)
        return BorelPoly(p.alg, p.terms)

    def __neg__(self):
        return BorelPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def scale(self, c):
        p = NcPoly.scale(self, c)
        return BorelPoly(p.alg, p.terms)

    def render(self):
        n = self.alg.n
        return render_terms(self.alg.field, self.sorted_terms(),
                            lambda w: render_word(w, n).replace("t[", "b["))

    __str__ = render


def borel_project(x):
    """pi: delete every standard monomial containing t[i,j] with i < j.

    Valid because each rewrite of a word containing an upper generator only
    produces words that again contain one, so those words span the ideal.
    """
    return BorelPoly(x.alg, x.terms)


def parabolic_blocks(I, n):
    """Blocks I_k^+ for a subset I of {1..n-1}."""
    I = sorted(set(I))
    for i in I:
        if not 1 <= i <= n - 1:
            raise ValueError(f"{i} not in 1..{n - 1}")
    comps = []
    for i in I:
        if comps and comps[-1][-1] == i - 1:
            comps[-1].append(i)
        else:
            comps.append([i])
    return [sorted(set(c) | {i + 1 for i in c}) for c in comps]


def parabolic_project(x, I):
    """Quotient by the ideal J_I (upper generators outside the I-blocks)."""
    n = x.alg.n
    allowed = set()
    for block in parabolic_blocks(I, n):
        for i in block:
            for j in block:
                allowed.add((i, j))

    def killed(g):
        i, j = divmod(g, n)
        return i < j and (i + 1, j + 1) not in allowed

    return NcPoly(x.alg, {w: c for w, c in x.terms.items() if not any(killed(g) for g in w)})


# ----------------------------------------------------------------------
# step-wise rewriting (independent of the memoized kernel) and confluence
# ----------------------------------------------------------------------

def _descents(word):
    return [p for p in range(len(word) - 1) if word[p] > word[p + 1]]


def rewrite_step(word, pos, n, rule=None):
    """One application of the relation at the out-of-order pair (pos, pos+1)."""
    x, y = word[pos], word[pos + 1]
    if x <= y:
        raise ValueError("no descent at this position")
    out = []
    for coeff, (u, v) in (rule or _kernel.pair_rule)(x, y, n):
        out.append((coeff, word[:pos] + (u, v) + word[pos + 2:]))
    return out


def _reduce(state, n, choose, kill=None, rule=None):
    """Rewrite {word: {exp: coeff}} to normal form, one step at a time."""
    state = {w: dict(c) for w, c in state.items()}
    while True:
        pending = sorted(w for w in state if _descents(w))
        if not pending:
            break
        w = choose(pending)
        coeff = state.pop(w)
        pos = choose(_descents(w))
        for lau, nw in rewrite_step(w, pos, n, rule):
            if kill is not None and any(kill(g) for g in nw):
                continue
            slot = state.setdefault(nw, {})
            for e1, c1 in coeff.items():
                for e2, c2 in lau:
                    slot[e1 + e2] = slot.get(e1 + e2, 0) + c1 * c2
            if not any(slot.values()):
                del state[nw]
    return {w: tuple(sorted((e, c) for e, c in d.items() if c)) for w, d in state.items()
            if any(d.values())}


def reduce_word(word, n, strategy="leftmost", rng=None, kill=None):
    """Normal form by explicit rewriting with a chosen rule-selection strategy."""
    if strategy == "leftmost":
        choose = lambda xs: xs[0]  # noqa: E731
    elif strategy == "rightmost":
        choose = lambda xs: xs[-1]  # noqa: E731
    elif strategy == "random":
        rng = rng or random.Random(0)
        choose = rng.choice
    else:
        raise ValueError(strategy)
    start = {tuple(word): {0: 1}}
    if kill is not None and any(kill(g) for g in word):
        return {}
    return _reduce(start, n, choose, kill)


def normal_form(alg, word, strategy=None, rng=None):
    """Normal form of a raw word; ``strategy=None`` uses the memoized kernel."""
    if strategy is None:
        return alg.monomial(word)
    nf = reduce_word(tuple(word), alg.n, strategy, rng)
    return alg._from_kernel(nf, alg.field.one)


def _laurent_text(key):
    from .scalar import ScalarQ
    return ScalarQ.from_laurent(dict(key)).render()


def _nf_text(nf, n):
    items = sorted(nf.items())
    return " + ".join(f"({_laurent_text(c)})*{render_word(w, n)}" for w, c in items) or "0"


def diamond_check(n, borel=False, rule=None):
    """Both reduction orders of every length-3 generator word agree.

    With ``borel=True`` only lower-triangular generators are used and words
    containing an upper generator are deleted after every step.  ``rule``
    replaces the pair rule (for testing that broken relations are caught);
    the memoized kernel is then not consulted.
    """
    gens = [g for g in range(n * n) if not borel or g // n >= g % n]
    kill = (lambda g: g // n < g % n) if borel else None
    rw = _kernel.rewriter(n)
    rep = SuiteReport("diamond" + ("-borel" if borel else ""))
    for triple in itertools.product(gens, repeat=3):
        with stopwatch() as t:
            results = []
            for first in (0, 1):
                if triple[first] > triple[first + 1]:
                    state = {}
                    for lau, w in rewrite_step(triple, first, n, rule):
                        if kill is not None and any(kill(g) for g in w):
                            continue
                        state[w] = dict(lau)
                else:
                    state = {triple: {0: 1}}
                choose = (lambda xs: xs[0]) if first == 0 else (lambda xs: xs[-1])
                results.append(_reduce(state, n, choose, kill, rule))
            kern = rw.normal_form(triple) if rule is None else results[0]
            if kill is not None:
                kern = {w: c for w, c in kern.items() if not any(kill(g) for g in w)}
            ok = results[0] == results[1] == kern
        name = "*".join(render_word((g,), n) for g in triple)
        rep.add(name, ok, _nf_text(results[0], n), _nf_text(results[1], n),
                "" if ok else f"kernel: {_nf_text(kern, n)}", t[0])
    rep.notes["triples"] = len(rep.cases)
    return rep
