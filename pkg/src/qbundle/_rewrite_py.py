"""Pure-Python rewriting kernel for the quantum matrix relations.

Generators t[i,j] are encoded as ``(i-1)*n + (j-1)`` so that integer order
is (row, col) lexicographic order.  A word is a tuple of such codes and a
word is *standard* when it is nondecreasing.  Coefficients produced by the
rewriting rules are Laurent polynomials in q with integer coefficients,
returned as tuples of ``(exponent, coefficient)`` pairs sorted by exponent.

The compiled extension ``_rewrite`` mirrors this module function for
function; this file is the fallback and the behavioural reference.
"""

ONE = ((0, 1),)


def _laurent_key(d):
    return tuple(sorted((e, c) for e, c in d.items() if c))


def _lmul(a, b):
    out = {}
    for e1, c1 in a:
        for e2, c2 in b:
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return out


def _accumulate(acc, word, coeff_pairs, scale):
    """acc[word] += scale * coeff (both Laurent, coeff given as pairs)."""
    slot = acc.get(word)
    if slot is None:
        slot = {}
        acc[word] = slot
    for e1, c1 in scale:
        for e2, c2 in coeff_pairs:
            e = e1 + e2
            slot[e] = slot.get(e, 0) + c1 * c2


def _finish(acc):
    out = {}
    for w, d in acc.items():
        key = _laurent_key(d)
        if key:
            out[w] = key
    return out


def pair_rule(x, y, n):
    """Rewrite of the out-of-order pair x*y (x > y) as sorted two-letter words.

    Returns a tuple of ``(laurent_pairs, (u, v))`` with u <= v.
    """
    beta, delta = divmod(x, n)
    alpha, gamma = divmod(y, n)
    if beta == alpha or delta == gamma:
        # same row or same column: x y = q^-1 y x
        return (((( -1, 1),), (y, x)),)
    if delta > gamma:
        # x y = y x - (q - q^-1) t[alpha,delta] t[beta,gamma]
        return (
            (ONE, (y, x)),
            (((-1, 1), (1, -1)), (alpha * n + delta, beta * n + gamma)),
        )
    return ((ONE, (y, x)),)


class Rewriter:
    """Normal forms in M_q(n) for words in the generator codes."""

    def __init__(self, n):
        self.n = n
        self.ngens = n * n
        self._rules = {}
        for x in range(self.ngens):
            for y in range(x):
                self._rules[(x, y)] = pair_rule(x, y, n)
        self._insert = {}
        self._product = {}

    def rule(self, x, y):
        return self._rules[(x, y)]

    def insert(self, m, g):
        """Normal form of standard word m followed by generator g."""
        if not m or m[-1] <= g:
            return {m + (g,): ONE}
        key = (m, g)
        hit = self._insert.get(key)
        if hit is not None:
            return hit
        x = m[-1]
        head = m[:-1]
        acc = {}
        for coeff, (u, v) in self._rules[(x, g)]:
            for m2, c2 in self.insert(head, u).items():
                scale = tuple(sorted(_lmul(coeff, c2).items()))
                for m3, c3 in self.insert(m2, v).items():
                    _accumulate(acc, m3, c3, scale)
        out = _finish(acc)
        self._insert[key] = out
        return out

    def product(self, m1, m2):
        """Normal form of the concatenation of two standard words."""
        if not m2:
            return {m1: ONE}
        if not m1 or m1[-1] <= m2[0]:
            return {m1 + m2: ONE}
        key = (m1, m2)
        hit = self._product.get(key)
        if hit is not None:
            return hit
        cur = {m1: ONE}
        for g in m2:
            acc = {}
            for m, c in cur.items():
                for m3, c3 in self.insert(m, g).items():
                    _accumulate(acc, m3, c3, c)
            cur = _finish(acc)
        self._product[key] = cur
        return cur

    def normal_form(self, word):
        """Normal form of an arbitrary word."""
        cur = {(): ONE}
        for g in word:
            acc = {}
            for m, c in cur.items():
                for m3, c3 in self.insert(m, g).items():
                    _accumulate(acc, m3, c3, c)
            cur = _finish(acc)
        return cur

    def cache_size(self):
        return len(self._insert) + len(self._product)
