"""Quantum determinants and minors, Laplace expansions, the antipode of GL_q,
and quasideterminants of the generic quantum matrix T."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .qalgebra import NcPoly, comultiply, TensorPoly
from .report import SuiteReport, stopwatch


def inversions(perm):
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


def signed_qpow(field, k):
    """(-q)^k."""
    v = field.qpow(k)
    return -v if k % 2 else v


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        rows, cols = tuple(self.rows), tuple(self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols):
            raise ValueError("row and column multilabels differ in length")
        for lab in (rows, cols):
            if any(b <= a for a, b in zip(lab, lab[1:])):
                raise ValueError(f"labels {lab} are not strictly increasing")

    def text(self):
        return f"D[{','.join(map(str, self.rows))}|{','.join(map(str, self.cols))}]"


def _check_labels(alg, labels):
    for x in labels:
        if not 1 <= x <= alg.n:
            raise ValueError(f"label {x} out of range 1..{alg.n}")


def qdet_form(alg, rows, cols, form="row", tau=None):
    """Permutation-sum determinant of the submatrix on rows x cols.

    ``form="row"`` keeps the row labels in the order fixed by tau and
    permutes columns; ``form="col"`` does the opposite.
    """
    rows, cols = tuple(rows), tuple(cols)
    _check_labels(alg, rows + cols)
    m = len(rows)
    if m != len(cols):
        raise ValueError("rows and cols differ in length")
    if m == 0:
        return alg.one
    tau = tuple(range(m)) if tau is None else tuple(tau)
    lt = inversions(tau)
    out = alg.zero
    field = alg.field
    for sigma in itertools.permutations(range(m)):
        sign = signed_qpow(field, inversions(sigma) - lt)
        if form == "row":
            word = [alg.code(rows[tau[k]], cols[sigma[k]]) for k in range(m)]
        elif form == "col":
            word = [alg.code(rows[sigma[k]], cols[tau[k]]) for k in range(m)]
        else:
            raise ValueError(form)
        out = out + alg.monomial(word, sign)
    return out


_minor_cache = {}


def qminor_poly(alg, rows, cols):
    """Quantum minor D^rows_cols (labels sorted)."""
    key = (id(alg), tuple(rows), tuple(cols))
    hit = _minor_cache.get(key)
    if hit is None or hit[0] is not alg:
        p = qdet_form(alg, sorted(rows), sorted(cols))
        _minor_cache[key] = (alg, p)
        return p
    return hit[1]


def qdet(alg):
    return qminor_poly(alg, range(1, alg.n + 1), range(1, alg.n + 1))


def qminor(alg, spec):
    _check_labels(alg, spec.rows + spec.cols)
    return qminor_poly(alg, spec.rows, spec.cols)


def complement(labels, n):
    s = set(labels)
    return tuple(x for x in range(1, n + 1) if x not in s)


def subsets(n, m):
    return list(itertools.combinations(range(1, n + 1), m))


def laplace_sides(alg, K, L, variant):
    """(lhs, rhs) of one Laplace expansion variant."""
    n = alg.n
    K, L = tuple(K), tuple(L)
    m = len(K)
    D = qdet(alg)
    lhs = D if K == L else alg.zero
    rhs = alg.zero
    Lh = complement(L, n)
    sL = sum(L)
    for J in subsets(n, m):
        Jh = complement(J, n)
        sJ = sum(J)
        if variant == 1:
            term = qminor_poly(alg, K, J) * qminor_poly(alg, Lh, Jh)
            e = sJ - sL
        elif variant == 2:
            term = qminor_poly(alg, J, K) * qminor_poly(alg, Jh, Lh)
            e = sJ - sL
        elif variant == 3:
            term = qminor_poly(alg, Lh, Jh) * qminor_poly(alg, K, J)
            e = sL - sJ
        elif variant == 4:
            term = qminor_poly(alg, Jh, Lh) * qminor_poly(alg, J, K)
            e = sL - sJ
        else:
            raise ValueError("variant must be 1..4")
        rhs = rhs + term.scale(signed_qpow(alg.field, e))
    return lhs, rhs


def laplace_check(alg, K, L, variants=(1, 2, 3, 4)):
    rep = SuiteReport("laplace")
    for v in variants:
        with stopwatch() as t:
            lhs, rhs = laplace_sides(alg, K, L, v)
            ok = lhs == rhs
        name = f"K={','.join(map(str, K))} L={','.join(map(str, L))} v{v}"
        rep.add(name, ok, _short(lhs), _short(rhs), "" if ok else "residual " + _short(lhs - rhs), t[0])
    return rep


def laplace_suite(alg, ms=None):
    n = alg.n
    ms = range(1, n) if ms is None else ms
    rep = SuiteReport("laplace")
    for m in ms:
        for K in subsets(n, m):
            for L in subsets(n, m):
                rep.extend(laplace_check(alg, K, L))
    return rep


def _short(p, limit=400):
    s = p.render() if hasattr(p, "render") else str(p)
    return s if len(s) <= limit else s[:limit] + f"... ({len(p)} terms)"


# ----------------------------------------------------------------------
# GL_q and the antipode
# ----------------------------------------------------------------------

class GlElement:
    """numerator * D^-k; D is central, equality by cross-multiplication."""

    __slots__ = ("num", "k")

    def __init__(self, num, k=0):
        if k < 0:
            raise ValueError("dpower must be nonnegative")
        self.num = num
        self.k = k

    @property
    def alg(self):
        return self.num.alg

    def __mul__(self, other):
        if isinstance(other, GlElement):
            return GlElement(self.num * other.num, self.k + other.k)
        if isinstance(other, NcPoly):
            return GlElement(self.num * other, self.k)
        return GlElement(self.num.scale(other), self.k)

    def __rmul__(self, other):
        if isinstance(other, NcPoly):
            return GlElement(other * self.num, self.k)
        return GlElement(self.num.scale(other), self.k)

    def _lift(self, k):
        D = qdet(self.alg)
        return self.num * (D ** (k - self.k))

    def __add__(self, other):
        if isinstance(other, NcPoly):
            other = GlElement(other)
        k = max(self.k, other.k)
        return GlElement(self._lift(k) + other._lift(k), k)

    def __neg__(self):
        return GlElement(-self.num, self.k)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            other = GlElement(other)
        if not isinstance(other, GlElement):
            return NotImplemented
        k = max(self.k, other.k)
        return self._lift(k) == other._lift(k)

    __hash__ = None

    def reduced(self):
        """Cancel central factors of D from the numerator."""
        from .orelocal import right_divide
        num, k = self.num, self.k
        D = qdet(self.alg)
        while k and num.terms:
            r = right_divide(num, D)
            if r is None:
                break
            num, k = r, k - 1
        if not num.terms:
            k = 0
        return GlElement(num, k)

    def render(self):
        if self.k == 0:
            return self.num.render()
        p = "D^-1" if self.k == 1 else f"D^-{self.k}"
        return f"({self.num.render()})*{p}"

    __str__ = render

    def __repr__(self):
        return f"GlElement({self.render()!r})"


def antipode_gen(alg, i, j):
    """S(t[i,j]) = (-q)^(i-j) D^{^j}_{^i} D^-1."""
    n = alg.n
    minor = qminor_poly(alg, complement((j,), n), complement((i,), n))
    return GlElement(minor.scale(signed_qpow(alg.field, i - j)), 1)


def antipode(x):
    """Anti-multiplicative extension to M_q(n), valued in GL_q."""
    alg = x.alg
    out = GlElement(alg.zero)
    for w, c in x.terms.items():
        term = GlElement(alg.one.scale(c))
        for g in w:
            i, j = alg.label(g)
            term = antipode_gen(alg, i, j) * term
        out = out + term
    return out


def antipode_axiom_check(alg):
    n = alg.n
    rep = SuiteReport("antipode")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            with stopwatch() as t:
                right = GlElement(alg.zero)
                left = GlElement(alg.zero)
                for k in range(1, n + 1):
                    right = right + alg.gen(i, k) * antipode_gen(alg, k, j)
                    left = left + antipode_gen(alg, i, k) * alg.gen(k, j)
                target = GlElement(alg.one if i == j else alg.zero)
                ok_r = right == target
                ok_l = left == target
            rep.add(f"sum_k t[{i},k]S(t[k,{j}])", ok_r, _short(right), target.render(),
                    "" if ok_r else "cleared residual " + _short(right.num - target._lift(right.k)), t[0])
            rep.add(f"sum_k S(t[{i},k])t[k,{j}]", ok_l, _short(left), target.render(),
                    "" if ok_l else "cleared residual " + _short(left.num - target._lift(left.k)), 0.0)
    return rep


def minor_coproduct_check(alg, K, L):
    """Delta(D^K_L) == sum_J D^K_J (x) D^J_L."""
    lhs = comultiply(qminor_poly(alg, K, L))
    rhs = TensorPoly(alg, {})
    for J in subsets(alg.n, len(K)):
        rhs = rhs + TensorPoly.pure(qminor_poly(alg, K, J), qminor_poly(alg, J, L))
    return lhs == rhs


# ----------------------------------------------------------------------
# quasideterminants
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def minor_ore_set(alg, rows, cols):
    from .orelocal import OreSet
    spec = MinorSpec(tuple(sorted(rows)), tuple(sorted(cols)))
    return OreSet(alg, [qminor_poly(alg, rows, cols)], name=spec.text(), labels=[spec.text()],
                  specs=[spec])


def submatrix_inverse(alg, rows, cols, S=None, index=None):
    """Inverse of the quantum submatrix T[rows, cols] as left fractions.

    Rows may be listed in any order (the matrix is then row-permuted);
    returns {(col label, row label): OreFraction}.  The determinant of the
    submatrix must be a generator of S (default: a one-generator set).
    """
    from .orelocal import OreFraction
    rows = tuple(rows)
    cols = tuple(sorted(cols))
    srows = tuple(sorted(rows))
    if S is None:
        S = minor_ore_set(alg, srows, cols)
        index = 0
    elif index is None:
        index = S.index_of(qminor_poly(alg, srows, cols))
        if index is None:
            raise ValueError("submatrix determinant not in the Ore set")
    out = {}
    for l in cols:
        for k in rows:
            a = cols.index(l)
            b = srows.index(k)
            num = qminor_poly(alg, tuple(r for r in srows if r != k), tuple(c for c in cols if c != l))
            sign = signed_qpow(alg.field, a - b)
            out[(l, k)] = OreFraction(S, (index,), num.scale(sign))
    return out


def quasideterminant(alg, matrix, rows, cols, i, j, S, index=None):
    """|A|_{ij} by definition for A with entries ``matrix[(r, c)]`` (NcPoly).

    The (i,j)-deleted submatrix must be the quantum submatrix of T on the
    remaining rows/cols, whose inverse is taken from :func:`submatrix_inverse`.
    """
    from .orelocal import OreFraction
    rr = [r for r in rows if r != i]
    cc = [c for c in cols if c != j]
    out = OreFraction(S, (), matrix[(i, j)])
    if not rr:
        return out
    inv = submatrix_inverse(alg, rr, cc, S, index)
    acc = None
    for l in cc:
        for k in rr:
            term = OreFraction(S, (), matrix[(i, l)]) * inv[(l, k)] * OreFraction(S, (), matrix[(k, j)])
            acc = term if acc is None else acc + term
    return out - acc


def T_matrix(alg):
    n = alg.n
    return {(r, c): alg.gen(r, c) for r in range(1, n + 1) for c in range(1, n + 1)}


def quasidet_identity_sides(alg, i, j, convention="antipode"):
    """(|T|_{ij} D^{^i}_{^j}, (-q)^e D) as fractions over {D^{^i}_{^j}}.

    ``convention="antipode"`` uses e = i - j, which is what inverting
    S(t[j,i]) gives; ``"printed"`` uses e = j - i.
    """
    from .orelocal import OreFraction
    n = alg.n
    rows = list(range(1, n + 1))
    rr = complement((i,), n)
    cc = complement((j,), n)
    S = minor_ore_set(alg, rr, cc)
    qd = quasideterminant(alg, T_matrix(alg), rows, rows, i, j, S, 0)
    lhs = qd * OreFraction(S, (), S.gens[0])
    e = i - j if convention == "antipode" else j - i
    rhs = OreFraction(S, (), qdet(alg).scale(signed_qpow(alg.field, e)))
    return lhs, rhs


def quasidet_identity_check(alg, i, j, convention="antipode"):
    from .orelocal import fraction_equal
    rep = SuiteReport("quasidet")
    with stopwatch() as t:
        lhs, rhs = quasidet_identity_sides(alg, i, j, convention)
        ok = fraction_equal(lhs, rhs)
    witness = ""
    if not ok:
        witness = "residual " + (lhs - rhs).render()
    rep.add(f"|T|_{i}{j}*D[^{i}|^{j}] ({convention})", ok, _short(lhs), _short(rhs), witness, t[0])
    return rep


def quasidet_suite(alg, convention="antipode"):
    rep = SuiteReport("quasidet")
    for i in range(1, alg.n + 1):
        for j in range(1, alg.n + 1):
            rep.extend(quasidet_identity_check(alg, i, j, convention))
    rep.notes["convention"] = convention
    return rep


def cramer_check(alg, x, j, i=None):
    """Left Cramer rule |T|_{ij} x^j = |T(j, xi)|_{ij} with xi = T x.

    ``x`` is a list of NcPoly (the column vector); the check runs for every
    row index i unless one is given.
    """
    from .orelocal import fraction_equal, OreFraction
    n = alg.n
    labels = list(range(1, n + 1))
    T = T_matrix(alg)
    xi = {}
    for r in labels:
        acc = alg.zero
        for c in labels:
            acc = acc + T[(r, c)] * x[c - 1]
        xi[r] = acc
    Tj = dict(T)
    for r in labels:
        Tj[(r, j)] = xi[r]
    rep = SuiteReport("cramer")
    for ii in ([i] if i else labels):
        with stopwatch() as t:
            S = minor_ore_set(alg, complement((ii,), n), complement((j,), n))
            lhs = quasideterminant(alg, T, labels, labels, ii, j, S, 0) * OreFraction(S, (), x[j - 1])
            rhs = quasideterminant(alg, Tj, labels, labels, ii, j, S, 0)
            ok = fraction_equal(lhs, rhs)
        rep.add(f"|T|_{ii}{j} x^{j}", ok, _short(lhs), _short(rhs), "" if ok else "sides differ", t[0])
    return rep
