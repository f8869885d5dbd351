"""Brute-force reference implementations, written without the package internals.

Permutations here are plain tuples of 0-based images; (a*b)(x) = b(a(x)).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product


def pmul(a, b):
    return tuple(b[x] for x in a)


def pinv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def parity(a):
    seen, s = set(), 0
    for i in range(len(a)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = a[j]
            length += 1
        s += length - 1
    return s % 2


def sym(n):
    return list(permutations(range(n)))


def alt(n):
    return [p for p in sym(n) if parity(p) == 0]


def hamming(a):
    return sum(1 for i, x in enumerate(a) if i != x)


def naive_conj_levels(g, elems, n_max):
    """C_1..C_n_max using every group element as a conjugator."""
    cls = set()
    gi = pinv(g)
    for h in elems:
        hi = pinv(h)
        cls.add(pmul(pmul(hi, g), h))
        cls.add(pmul(pmul(hi, gi), h))
    levels = [frozenset(cls)]
    cur = set(cls)
    for _ in range(n_max - 1):
        cur = cur | {pmul(x, c) for x in cur for c in cls}
        levels.append(frozenset(cur))
    return levels


def all_commutators(elems):
    return {pmul(pmul(pinv(g), pinv(h)), pmul(g, h)) for g in elems for h in elems}


def subgroup_closure(gens, identity):
    out = {identity} | set(gens)
    frontier = list(out)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = pmul(x, s)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def rank_by_kernel(rows, p):
    """rank = n - log_p |ker A|, counting the kernel by brute force."""
    n = len(rows[0])
    kernel = sum(
        1 for v in product(range(p), repeat=n)
        if all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows)
    )
    k = 0
    while p**k < kernel:
        k += 1
    return n - k


def det_leibniz(rows, p):
    n = len(rows)
    total = 0
    for s in permutations(range(n)):
        term = -1 if parity(s) else 1
        for i in range(n):
            term *= rows[i][s[i]]
        total += term
    return total % p


def lee_direct(g, n):
    """The 2^n Lee norm exactly as min(g, 2^n - g) / 2^(n-1)."""
    return Fraction(min(g, 2**n - g), 2 ** (n - 1))


def iet_eval(lengths, perm, x):
    """Pointwise evaluation from lengths and image positions."""
    starts, acc = [], Fraction(0)
    for ln in lengths:
        starts.append(acc)
        acc += ln
    i = max(k for k, s in enumerate(starts) if s <= x)
    before = sum((lengths[j] for j in range(len(lengths)) if perm[j] < perm[i]), Fraction(0))
    return before + (x - starts[i])
