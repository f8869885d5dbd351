"""Interval exchange transformations of [0,1) with rational breakpoints.

An :class:`IetMap` is a tuple of source interval lengths (left to right) and a
tuple ``perm`` where ``perm[i]`` is the 1-based position that source interval
``i`` occupies in the image.  Composition follows the same right-action rule as
permutations: ``compose(f, g)`` applies ``f`` first, so that
``embed_perm(s * t) == compose(embed_perm(s), embed_perm(t))``.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .perm import Perm, hamming_norm


@dataclass(frozen=True)
class IetMap:
    lengths: tuple[Fraction, ...]
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        lengths = tuple(Fraction(x) for x in self.lengths)
        perm = tuple(int(x) for x in self.perm)
        if not lengths or any(x <= 0 for x in lengths):
            raise ValueError("interval lengths must be positive")
        if sum(lengths) != 1:
            raise ValueError(f"interval lengths sum to {sum(lengths)}, not 1")
        if sorted(perm) != list(range(1, len(lengths) + 1)):
            raise ValueError("perm must be a permutation of the interval indices")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls) -> "IetMap":
        return cls((Fraction(1),), (1,))

    @classmethod
    def from_json(cls, obj: dict) -> "IetMap":
        return canonical(cls(tuple(Fraction(x) for x in obj["lengths"]), tuple(obj["perm"])))

    @classmethod
    def rotation(cls, alpha) -> "IetMap":
        """x -> x + alpha mod 1."""
        a = Fraction(alpha) % 1
        if a == 0:
            return cls.identity()
        return cls((1 - a, a), (2, 1))

    def to_json(self) -> dict:
        return {"lengths": [_q(x) for x in self.lengths], "perm": list(self.perm)}

    def starts(self) -> list[Fraction]:
        out, acc = [], Fraction(0)
        for x in self.lengths:
            out.append(acc)
            acc += x
        return out

    def offsets(self) -> list[Fraction]:
        src = self.starts()
        order = sorted(range(len(self.perm)), key=lambda i: self.perm[i])
        dst = [Fraction(0)] * len(self.perm)
        acc = Fraction(0)
        for i in order:
            dst[i] = acc
            acc += self.lengths[i]
        return [d - s for d, s in zip(dst, src)]

    def breakpoints(self) -> list[Fraction]:
        return self.starts() + [Fraction(1)]

    def __call__(self, x) -> Fraction:
        return apply(self, x)

    def __mul__(self, other: "IetMap") -> "IetMap":
        return compose(self, other)


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def from_pieces(lengths: Sequence[Fraction], offsets: Sequence[Fraction]) -> IetMap:
    """Build the canonical map translating consecutive pieces by the given offsets."""
    starts, acc = [], Fraction(0)
    for x in lengths:
        starts.append(acc)
        acc += x
    dst = [s + o for s, o in zip(starts, offsets)]
    order = sorted(range(len(dst)), key=lambda i: dst[i])
    perm = [0] * len(dst)
    for pos, i in enumerate(order, start=1):
        perm[i] = pos
    return canonical(IetMap(tuple(lengths), tuple(perm)))


def canonical(f: IetMap) -> IetMap:
    """Merge neighbouring source intervals that carry the same translation."""
    offs = f.offsets()
    lengths: list[Fraction] = []
    merged_offs: list[Fraction] = []
    for x, o in zip(f.lengths, offs):
        if merged_offs and merged_offs[-1] == o:
            lengths[-1] += x
        else:
            lengths.append(x)
            merged_offs.append(o)
    if len(lengths) == len(f.lengths):
        return f
    return from_pieces(lengths, merged_offs)


def _locate(f: IetMap, x: Fraction) -> int:
    return bisect.bisect_right(f.starts(), x) - 1


def apply(f: IetMap, x) -> Fraction:
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValueError(f"{x} is outside [0,1)")
    return x + f.offsets()[_locate(f, x)]


def inverse(f: IetMap) -> IetMap:
    m = len(f.lengths)
    by_pos = sorted(range(m), key=lambda i: f.perm[i])
    return canonical(IetMap(tuple(f.lengths[i] for i in by_pos), tuple(i + 1 for i in by_pos)))


def compose(f: IetMap, g: IetMap) -> IetMap:
    """x -> g(f(x)), computed on the common refinement of the breakpoints."""
    finv = inverse(f)
    cuts = set(f.breakpoints())
    cuts.update(apply(finv, b) for b in g.starts())
    cuts = sorted(cuts)
    fo, go = f.offsets(), g.offsets()
    lengths, offsets = [], []
    for a, b in zip(cuts, cuts[1:]):
        y = a + fo[_locate(f, a)]
        lengths.append(b - a)
        offsets.append(y - a + go[_locate(g, y)])
    return from_pieces(lengths, offsets)


def support_norm(f: IetMap) -> Fraction:
    """Lebesgue measure of the set of moved points."""
    return sum((x for x, o in zip(f.lengths, f.offsets()) if o != 0), Fraction(0))


def embed_perm(delta: Perm) -> IetMap:
    """n cells of length 1/n; cell i is moved to position delta(i)."""
    n = delta.n
    return canonical(IetMap(tuple(Fraction(1, n) for _ in range(n)), delta.images))


def min_interval(f: IetMap) -> Fraction:
    return min(f.lengths)


@dataclass(frozen=True)
class Discretization:
    sigma: Perm
    snapped: IetMap
    distance: Fraction


def discretize(h: IetMap, n: int) -> Discretization:
    """Snap every breakpoint a to floor(n*a)/n and read the snapped map as a cell permutation.

    Requires 1/n < every interval length so no interval collapses.  The
    returned distance is the exact support measure of snapped * h^-1.
    """
    if not Fraction(1, n) < min_interval(h):
        raise ValueError(f"1/{n} is not below the minimal interval length {min_interval(h)}")
    bps = [Fraction(floor(n * a), n) for a in h.breakpoints()]
    snapped = canonical(IetMap(tuple(b - a for a, b in zip(bps, bps[1:])), h.perm))
    sigma = Perm(tuple(int(apply(snapped, Fraction(c, n)) * n) + 1 for c in range(n)))
    return Discretization(sigma, snapped, support_norm(compose(snapped, inverse(h))))


def random_iet(rng: random.Random, max_pieces: int = 4, max_den: int = 12) -> IetMap:
    """Seeded random rational IET with up to ``max_pieces`` intervals."""
    k = rng.randint(1, max_pieces)
    den = rng.randint(k, max(k, max_den))
    cuts = sorted(rng.sample(range(1, den), k - 1)) if k > 1 else []
    bps = [0] + cuts + [den]
    lengths = tuple(Fraction(b - a, den) for a, b in zip(bps, bps[1:]))
    perm = list(range(1, k + 1))
    rng.shuffle(perm)
    return canonical(IetMap(lengths, tuple(perm)))


def is_grid(f: IetMap, n: int) -> bool:
    return all((b * n).denominator == 1 for b in f.breakpoints())


def grid_perm(f: IetMap, n: int) -> Perm:
    """The permutation of 1/n-cells realised by a grid map."""
    if not is_grid(f, n):
        raise ValueError(f"map is not on the 1/{n} grid")
    return Perm(tuple(int(apply(f, Fraction(c, n)) * n) + 1 for c in range(n)))


def embedding_is_isometric(delta: Perm) -> bool:
    return support_norm(embed_perm(delta)) == Fraction(hamming_norm(delta), delta.n)
