# cython: language_level=3
"""Compiled rewriting kernel; same interface and results as ``_rewrite_py``."""

ONE = ((0, 1),)


cdef tuple _laurent_key(dict d):
    cdef list items = [(e, c) for e, c in d.items() if c]
    items.sort()
    return tuple(items)


cdef tuple _lmul(tuple a, tuple b):
    cdef dict out = {}
    cdef long e1, e2, e
    for e1, c1 in a:
        for e2, c2 in b:
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return _laurent_key(out)


cdef inline void _accumulate(dict acc, tuple word, tuple coeff_pairs, tuple scale):
    cdef dict slot = acc.get(word)
    cdef long e1, e2, e
    if slot is None:
        slot = {}
        acc[word] = slot
    for e1, c1 in scale:
        for e2, c2 in coeff_pairs:
            e = e1 + e2
            slot[e] = slot.get(e, 0) + c1 * c2


cdef dict _finish(dict acc):
    cdef dict out = {}
    cdef tuple key
    for w, d in acc.items():
        key = _laurent_key(d)
        if key:
            out[w] = key
    return out


def pair_rule(long x, long y, long n):
    cdef long beta = x // n, delta = x % n
    cdef long alpha = y // n, gamma = y % n
    if beta == alpha or delta == gamma:
        return ((((-1, 1),), (y, x)),)
    if delta > gamma:
        return (
            (ONE, (y, x)),
            (((-1, 1), (1, -1)), (alpha * n + delta, beta * n + gamma)),
        )
    return ((ONE, (y, x)),)


cdef class Rewriter:
    """Normal forms in M_q(n) for words in the generator codes."""

    cdef public long n
    cdef public long ngens
    cdef list _rules   # flat table indexed x * ngens + y
    cdef dict _insert
    cdef dict _product

    def __init__(self, long n):
        cdef long x, y
        self.n = n
        self.ngens = n * n
        self._rules = [None] * (self.ngens * self.ngens)
        for x in range(self.ngens):
            for y in range(x):
                self._rules[x * self.ngens + y] = pair_rule(x, y, n)
        self._insert = {}
        self._product = {}

    def rule(self, long x, long y):
        return self._rules[x * self.ngens + y]

    cdef dict _ins(self, tuple m, long g):
        cdef long x
        cdef tuple head, scale, coeff, uv, key
        cdef dict acc, sub, out, hit
        if not m or <long>m[-1] <= g:
            return {m + (g,): ONE}
        key = (m, g)
        hit = self._insert.get(key)
        if hit is not None:
            return hit
        x = m[-1]
        head = m[:-1]
        acc = {}
        for coeff, uv in self._rules[x * self.ngens + g]:
            sub = self._ins(head, uv[0])
            for m2, c2 in sub.items():
                scale = _lmul(coeff, c2)
                for m3, c3 in self._ins(m2, uv[1]).items():
                    _accumulate(acc, m3, c3, scale)
        out = _finish(acc)
        self._insert[key] = out
        return out

    def insert(self, tuple m, long g):
        """Normal form of standard word m followed by generator g."""
        return self._ins(m, g)

    cdef dict _fold(self, dict cur, tuple word):
        cdef dict acc
        cdef long g
        for g in word:
            acc = {}
            for m, c in cur.items():
                for m3, c3 in self._ins(m, g).items():
                    _accumulate(acc, m3, c3, c)
            cur = _finish(acc)
        return cur

    def product(self, tuple m1, tuple m2):
        """Normal form of the concatenation of two standard words."""
        cdef tuple key
        cdef dict hit, cur
        if not m2:
            return {m1: ONE}
        if not m1 or m1[-1] <= m2[0]:
            return {m1 + m2: ONE}
        key = (m1, m2)
        hit = self._product.get(key)
        if hit is not None:
            return hit
        cur = self._fold({m1: ONE}, m2)
        self._product[key] = cur
        return cur

    def normal_form(self, word):
        """Normal form of an arbitrary word."""
        return self._fold({(): ONE}, tuple(word))

    def cache_size(self):
        return len(self._insert) + len(self._product)
