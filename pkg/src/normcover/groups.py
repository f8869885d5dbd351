"""Uniform handles on normed groups.

A :class:`GroupAdapter` exposes the group law, a norm, a generating set and,
when the group is small enough, a full enumeration.  Finite families also
implement a small array protocol (``raw``/``raw_mul``/``raw_lmul``/``raw_codes``)
so that :class:`normcover.coverage.FiniteGroup` can multiply whole batches of
elements with numpy.  ``raw_codes`` must be monotone in ``key`` so that sorting
by code is sorting by key.
"""

from __future__ import annotations

import copy
import random
from fractions import Fraction
from itertools import permutations
from typing import Any, Callable, Iterator

import numpy as np

from .linear import DEFAULT_BUDGET, CapabilityError, MatFp, jordan_length, sl_enumerate, sl_order, transvections
from .perm import Perm, hamming_norm, hamming_normalized


class GroupAdapter:
    """Base adapter; subclasses override the group law and enumeration."""

    name = "group"
    vectorized = False

    def __init__(self, norm: Callable[[Any], Any] | None = None, norm_id: str = "none"):
        self._norm = norm
        self.norm_id = norm_id

    # group law -------------------------------------------------------------
    def identity(self) -> Any:
        raise NotImplementedError

    def multiply(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def invert(self, a: Any) -> Any:
        raise NotImplementedError

    def conjugate(self, g: Any, h: Any) -> Any:
        """g^h = h^-1 g h."""
        return self.multiply(self.multiply(self.invert(h), g), h)

    def power(self, g: Any, k: int) -> Any:
        base = g if k >= 0 else self.invert(g)
        acc = self.identity()
        for _ in range(abs(k)):
            acc = self.multiply(acc, base)
        return acc

    def norm(self, a: Any) -> Any:
        if self._norm is None:
            raise CapabilityError(f"{self.describe()} carries no norm")
        return self._norm(a)

    def generators(self) -> list[Any]:
        raise NotImplementedError

    def key(self, a: Any) -> Any:
        return a

    # enumeration -------------------------------------------------------------
    def enumerable(self) -> bool:
        return False

    def elements(self) -> Iterator[Any]:
        raise CapabilityError(f"{self.describe()} is not enumerable")

    def order(self) -> int:
        return sum(1 for _ in self.elements())

    # text --------------------------------------------------------------------
    def encode(self, a: Any) -> Any:
        return a

    def decode(self, obj: Any) -> Any:
        return obj

    def norm_desc(self) -> Any:
        scale = getattr(self, "scale", Fraction(1))
        if scale != 1:
            return {"id": self.base_norm_id, "scale": str(scale)}
        return self.norm_id

    def describe(self) -> dict:
        return {"type": self.name, "norm": self.norm_desc()}

    def with_norm(self, norm: Callable[[Any], Any], norm_id: str) -> "GroupAdapter":
        other = copy.copy(self)
        other._norm = norm
        other.norm_id = norm_id
        return other

    def random_word(self, rng: random.Random, max_len: int) -> Any:
        """Uniform length in [0, max_len], letters uniform over generators and inverses."""
        letters = self.generators()
        letters = letters + [self.invert(g) for g in letters]
        acc = self.identity()
        if not letters:
            return acc
        for _ in range(rng.randint(0, max_len)):
            acc = self.multiply(acc, rng.choice(letters))
        return acc


class SymmetricGroup(GroupAdapter):
    """S_n, or A_n with ``alternating=True``; default norm is the Hamming norm."""

    vectorized = True

    def __init__(self, n: int, alternating: bool = False, norm=None, norm_id: str | None = None):
        if n < 1:
            raise ValueError("degree must be positive")
        self.n = n
        self.alternating = alternating
        if norm is None:
            norm, norm_id = hamming_norm, "hamming"
        super().__init__(norm, norm_id or "custom")
        self._weights = np.array([n ** (n - 1 - i) for i in range(n)], dtype=np.int64)

    @property
    def name(self) -> str:  # type: ignore[override]
        return "alt" if self.alternating else "sym"

    def identity(self) -> Perm:
        return Perm.identity(self.n)

    def multiply(self, a: Perm, b: Perm) -> Perm:
        return a * b

    def invert(self, a: Perm) -> Perm:
        return a.inverse()

    def generators(self) -> list[Perm]:
        n = self.n
        if n < 2 or (self.alternating and n < 3):
            return []
        if self.alternating:
            return [Perm.from_cycles([(1, 2, i)], n) for i in range(3, n + 1)]
        return [Perm.from_cycles([(1, 2)], n), Perm.from_cycles([range(1, n + 1)], n)]

    def key(self, a: Perm) -> tuple[int, ...]:
        return a.images

    def enumerable(self) -> bool:
        return True

    def elements(self) -> Iterator[Perm]:
        for imgs in permutations(range(1, self.n + 1)):
            p = Perm(imgs)
            if not self.alternating or p.is_even():
                yield p

    def order(self) -> int:
        from math import factorial

        f = factorial(self.n)
        return f // 2 if self.alternating and self.n > 1 else f

    def contains(self, a: Perm) -> bool:
        return a.n == self.n and (not self.alternating or a.is_even())

    def encode(self, a: Perm) -> list[int]:
        return a.to_json()

    def decode(self, obj) -> Perm:
        p = Perm.parse(obj, self.n)
        if not self.contains(p):
            raise ValueError(f"{p} is not in {self.describe()}")
        return p

    def describe(self) -> dict:
        return {"type": self.name, "n": self.n, "norm": self.norm_desc()}

    # array protocol: rows are 0-based image arrays
    def raw(self, a: Perm) -> np.ndarray:
        return np.array(a.images, dtype=np.int64) - 1

    def unraw(self, r: np.ndarray) -> Perm:
        return Perm(tuple(int(x) + 1 for x in r))

    def raw_mul(self, batch: np.ndarray, s: np.ndarray) -> np.ndarray:
        return s[batch]

    def raw_lmul(self, s: np.ndarray, batch: np.ndarray) -> np.ndarray:
        return batch[:, s]

    def raw_mul_pairs(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.take_along_axis(b, a, axis=1)

    def raw_codes(self, batch: np.ndarray) -> np.ndarray:
        return batch @ self._weights


class CyclicGroup(GroupAdapter):
    """Z_m written additively on residues 0..m-1; default norm is the Lee norm."""

    name = "cyclic_lee"
    vectorized = True

    def __init__(self, m: int, norm=None, norm_id: str | None = None):
        from .norms import lee_norm

        if m < 1:
            raise ValueError("modulus must be positive")
        self.m = m
        if norm is None:
            if m >= 2:
                norm, norm_id = (lambda g: lee_norm(g, m)), "lee"
            else:
                norm, norm_id = (lambda g: Fraction(0)), "lee"
        super().__init__(norm, norm_id or "custom")

    def identity(self) -> int:
        return 0

    def multiply(self, a: int, b: int) -> int:
        return (a + b) % self.m

    def invert(self, a: int) -> int:
        return (-a) % self.m

    def generators(self) -> list[int]:
        return [1] if self.m > 1 else []

    def enumerable(self) -> bool:
        return True

    def elements(self) -> Iterator[int]:
        return iter(range(self.m))

    def order(self) -> int:
        return self.m

    def decode(self, obj) -> int:
        g = int(obj)
        if not 0 <= g < self.m:
            raise ValueError(f"residue {g} outside 0..{self.m - 1}")
        return g

    def describe(self) -> dict:
        return {"type": self.name, "m": self.m, "norm": self.norm_desc()}

    def raw(self, a: int) -> np.ndarray:
        return np.array(a, dtype=np.int64)

    def unraw(self, r) -> int:
        return int(r)

    def raw_mul(self, batch, s):
        return (batch + s) % self.m

    def raw_lmul(self, s, batch):
        return (s + batch) % self.m

    def raw_mul_pairs(self, a, b):
        return (a + b) % self.m

    def raw_codes(self, batch):
        return np.asarray(batch, dtype=np.int64)


class SLGroup(GroupAdapter):
    """SL_n(F_p); default norm is the Jordan length."""

    name = "sl_fp"
    vectorized = True

    def __init__(self, n: int, p: int, norm=None, norm_id: str | None = None, budget: int = DEFAULT_BUDGET):
        self.n, self.p, self.budget = n, p, budget
        if norm is None:
            norm, norm_id = jordan_length, "jordan"
        super().__init__(norm, norm_id or "custom")
        self._weights = np.array([p ** (n * n - 1 - i) for i in range(n * n)], dtype=np.int64)

    def identity(self) -> MatFp:
        return MatFp.identity(self.n, self.p)

    def multiply(self, a: MatFp, b: MatFp) -> MatFp:
        return a * b

    def invert(self, a: MatFp) -> MatFp:
        return a.inverse()

    def generators(self) -> list[MatFp]:
        return transvections(self.n, self.p)

    def key(self, a: MatFp) -> tuple[int, ...]:
        return a.key()

    def enumerable(self) -> bool:
        return sl_order(self.n, self.p) <= self.budget

    def elements(self) -> Iterator[MatFp]:
        return sl_enumerate(self.n, self.p, self.budget)

    def order(self) -> int:
        return sl_order(self.n, self.p)

    def center(self) -> list[MatFp]:
        return [MatFp.scalar(self.n, self.p, lam) for lam in range(1, self.p) if pow(lam, self.n, self.p) == 1]

    def encode(self, a: MatFp) -> list[list[int]]:
        return [list(r) for r in a.rows]

    def decode(self, obj) -> MatFp:
        rows = obj["rows"] if isinstance(obj, dict) else obj
        a = MatFp(self.p, tuple(tuple(r) for r in rows))
        if a.n != self.n or not a.is_sl():
            raise ValueError(f"{a} is not in SL_{self.n}(F_{self.p})")
        return a

    def describe(self) -> dict:
        return {"type": self.name, "n": self.n, "p": self.p, "norm": self.norm_desc()}

    def raw(self, a: MatFp) -> np.ndarray:
        return np.array(a.rows, dtype=np.int64)

    def unraw(self, r: np.ndarray) -> MatFp:
        return MatFp(self.p, tuple(tuple(int(x) for x in row) for row in r))

    # one flat 2-D product is much faster than a stack of tiny ones
    def raw_mul(self, batch, s):
        k, n = batch.shape[0], self.n
        return ((batch.reshape(k * n, n) @ s) % self.p).reshape(k, n, n)

    def raw_lmul(self, s, batch):
        k, n = batch.shape[0], self.n
        flat = batch.transpose(0, 2, 1).reshape(k * n, n) @ s.T
        return (flat % self.p).reshape(k, n, n).transpose(0, 2, 1)

    def raw_mul_pairs(self, a, b):
        return (a @ b) % self.p

    def raw_codes(self, batch):
        return batch.reshape(batch.shape[0], -1) @ self._weights


class IetGroup(GroupAdapter):
    """Rational interval exchanges with the support-measure norm.

    Not enumerable; ``generators`` is the user-supplied list used for sampling.
    """

    name = "iet"

    def __init__(self, generators=(), norm=None, norm_id: str | None = None):
        from .iet import support_norm

        self._gens = list(generators)
        if norm is None:
            norm, norm_id = support_norm, "iet_support"
        super().__init__(norm, norm_id or "custom")

    def identity(self):
        from .iet import IetMap

        return IetMap.identity()

    def multiply(self, a, b):
        from .iet import compose

        return compose(a, b)

    def invert(self, a):
        from .iet import inverse

        return inverse(a)

    def generators(self):
        return list(self._gens)

    def key(self, a):
        return (a.lengths, a.perm)

    def encode(self, a):
        return a.to_json()

    def decode(self, obj):
        from .iet import IetMap

        return IetMap.from_json(obj)

    def describe(self) -> dict:
        return {"type": self.name, "generators": len(self._gens), "norm": self.norm_desc()}
