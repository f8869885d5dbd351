"""Permutations of {1..n}, the Hamming norm and the Brenner-style constructions.

Composition is a right action everywhere: ``(s * t)(x) == t(s(x))``, i.e. ``s``
is applied first.  Conjugation is ``g ** h == h^-1 g h``, which relabels the
points of ``g`` by ``h``: if ``g`` sends ``i`` to ``j`` then ``g ** h`` sends
``h(i)`` to ``h(j)``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence


class ConstructionIncomplete(RuntimeError):
    """Raised when a randomized construction exhausts its budget.

    ``partial`` carries whatever certificate had been built so far.
    """

    def __init__(self, message: str, partial: "ConjProductCert | None" = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {list(imgs)}")
        object.__setattr__(self, "images", imgs)

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Perm":
        imgs = list(range(1, n + 1))
        seen: set[int] = set()
        for c in cycles:
            c = [int(x) for x in c]
            for x in c:
                if not 1 <= x <= n:
                    raise ValueError(f"point {x} outside 1..{n}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(c, c[1:] + c[:1]):
                imgs[a - 1] = b
        return cls(tuple(imgs))

    @classmethod
    def parse(cls, text: str | Sequence[int], n: int | None = None) -> "Perm":
        """Accept one-line ``[2,1,3]`` (or a list) and cycle ``(1 2)(3 4 5)`` notation.

        Cycle notation needs ``n`` unless the largest point is the degree.
        """
        if not isinstance(text, str):
            p = cls(tuple(text))
            return p if n is None or n == p.n else p.extend(n)
        s = text.strip()
        if s.startswith("["):
            p = cls(tuple(int(x) for x in re.findall(r"-?\d+", s)))
            return p if n is None or n == p.n else p.extend(n)
        if s in ("", "()", "e", "id"):
            if n is None:
                raise ValueError("identity in cycle notation needs a degree")
            return cls.identity(n)
        groups = re.findall(r"\(([^()]*)\)", s)
        if not groups or re.sub(r"\([^()]*\)", "", s).strip():
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = [[int(x) for x in re.split(r"[\s,]+", g.strip()) if x] for g in groups]
        top = max((max(c) for c in cycles if c), default=1)
        return cls.from_cycles([c for c in cycles if c], n if n is not None else top)

    # basic structure ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.n != other.n:
            raise ValueError(f"degree mismatch {self.n} vs {other.n}")
        t = other.images
        return Perm(tuple(t[x - 1] for x in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Perm(tuple(inv))

    def __pow__(self, other: "int | Perm") -> "Perm":
        if isinstance(other, Perm):
            return other.inverse() * self * other
        k = int(other)
        base = self if k >= 0 else self.inverse()
        result = Perm.identity(self.n)
        for _ in range(abs(k)):
            result = result * base
        return result

    def extend(self, n: int) -> "Perm":
        """Same permutation viewed in S_n, n >= degree (new points fixed)."""
        if n < self.n:
            raise ValueError("cannot shrink a permutation")
        return Perm(self.images + tuple(range(self.n + 1, n + 1)))

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.images, start=1) if x != i)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least point, ordered by that point."""
        seen = [False] * (self.n + 1)
        out = []
        for i in range(1, self.n + 1):
            if seen[i]:
                continue
            c = [i]
            seen[i] = True
            j = self.images[i - 1]
            while j != i:
                c.append(j)
                seen[j] = True
                j = self.images[j - 1]
            if len(c) > 1 or include_fixed:
                out.append(tuple(c))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, in decreasing order."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_even(self) -> bool:
        return self.sign() == 1

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    # text -----------------------------------------------------------------

    def to_json(self) -> list[int]:
        return list(self.images)

    def cycle_str(self) -> str:
        cs = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) if cs else "()"

    def __str__(self) -> str:
        return self.cycle_str()

    def __repr__(self) -> str:
        return f"Perm({self.cycle_str()}, n={self.n})"

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images


def hamming_norm(p: Perm) -> int:
    return len(p.support())


def hamming_normalized(p: Perm) -> Fraction:
    return Fraction(hamming_norm(p), p.n)


def is_exceptional(p: Perm) -> bool:
    """True iff all cycle lengths (fixed points included) are odd and pairwise distinct.

    For even ``p`` this is exactly when the S_n-class of ``p`` splits in A_n.
    """
    lengths = p.cycle_type()
    return all(x % 2 == 1 for x in lengths) and len(set(lengths)) == len(lengths)


def is_nonexceptional(p: Perm) -> bool:
    return p.is_even() and not is_exceptional(p)


def find_conjugator_min_support(a: Perm, b: Perm) -> Perm | None:
    """Return ``h`` with ``a ** h == b`` and supp(h) inside supp(a) | supp(b).

    Cycles of equal length are matched in order of their least point; the
    points fixed by ``a`` but moved by ``b`` are sent back onto the points moved
    by ``a`` but fixed by ``b``.  Returns None when the cycle types differ.
    """
    if a.n != b.n:
        raise ValueError(f"degree mismatch {a.n} vs {b.n}")
    if a.cycle_type() != b.cycle_type():
        return None
    n = a.n
    img: dict[int, int] = {}
    by_len_b: dict[int, list[tuple[int, ...]]] = {}
    for c in b.cycles():
        by_len_b.setdefault(len(c), []).append(c)
    used: dict[int, int] = {}
    for c in a.cycles():
        k = used.get(len(c), 0)
        d = by_len_b[len(c)][k]
        used[len(c)] = k + 1
        for x, y in zip(c, d):
            img[x] = y
    sa, sb = a.support(), b.support()
    for x, y in zip(sorted(sb - sa), sorted(sa - sb)):
        img[x] = y
    return Perm(tuple(img.get(i, i) for i in range(1, n + 1)))


def brenner_cycles(m: int) -> tuple[Perm, Perm]:
    """rho(m) = (1 2 ... m) and pi(m) = (1 .. m-4)(m-3 m-2)(m-1 m)."""
    if m < 5:
        raise ValueError(f"m must be at least 5, got {m}")
    rho = Perm.from_cycles([range(1, m + 1)], m)
    pi = Perm.from_cycles([range(1, m - 3), (m - 3, m - 2), (m - 1, m)], m)
    return rho, pi


def _relabel(p: Perm, points: Sequence[int], n: int) -> Perm:
    """Transport ``p`` (acting on 1..len(points)) onto ``points`` inside S_n."""
    imgs = list(range(1, n + 1))
    for i, x in enumerate(p.images, start=1):
        imgs[points[i - 1] - 1] = points[x - 1]
    return Perm(tuple(imgs))


def _evenize(tau: Perm) -> Perm:
    """Multiply an odd ``tau`` by a transposition without changing its support.

    Among the admissible transpositions (lexicographically ordered) one that
    lands directly on a nonexceptional permutation is preferred.
    """
    supp = sorted(tau.support())
    fallback = None
    for i, a in enumerate(supp):
        for b in supp[i + 1:]:
            cand = tau * Perm.from_cycles([(a, b)], tau.n)
            if cand.support() != tau.support():
                continue
            if not is_exceptional(cand):
                return cand
            if fallback is None:
                fallback = cand
    if fallback is None:  # pragma: no cover - impossible once |supp| >= 3
        raise RuntimeError(f"no support-preserving transposition for {tau!r}")
    return fallback


class NoNearbyNonexceptional(ValueError):
    """No even nonexceptional permutation with the required support is within distance 5."""


def _nearby_ok(tau: Perm, sigma: Perm) -> bool:
    return (
        sigma.is_even()
        and not is_exceptional(sigma)
        and sigma.support() == tau.support()
        and hamming_norm(tau * sigma.inverse()) <= 5
    )


def _small_perms_on(points: Sequence[int], n: int, max_support: int):
    """All permutations of S_n moving only ``points``, at most ``max_support`` of them."""
    from itertools import combinations, permutations

    yield Perm.identity(n)
    for j in range(2, min(max_support, len(points)) + 1):
        for moved in combinations(points, j):
            for img in permutations(moved):
                if any(a == b for a, b in zip(moved, img)):
                    continue
                imgs = list(range(1, n + 1))
                for a, b in zip(moved, img):
                    imgs[a - 1] = b
                yield Perm(tuple(imgs))


def search_nonexceptional(tau: Perm) -> Perm | None:
    """Exhaustive search for sigma = tau * x with ||x||_H <= 5.

    Any valid sigma has tau^-1 sigma supported inside supp(tau), so scanning
    those x decides existence.  Cost grows like |supp(tau)|^5.
    """
    supp = sorted(tau.support())
    for x in _small_perms_on(supp, tau.n, 5):
        sigma = tau * x
        if _nearby_ok(tau, sigma):
            return sigma
    return None


def nearby_nonexceptional(tau: Perm) -> Perm:
    """Even nonexceptional ``sigma`` with the support of ``tau`` and Hamming distance <= 5.

    Odd input is first multiplied by a support-preserving transposition.  If the
    result is exceptional, its longest cycle (odd, length L) is replaced by the
    relabelled pi(L); the change is the relabelled 3-cycle rho(L)pi(L)^-1.
    pi(5) fixes a point, so when L == 5 the answer comes from
    :func:`search_nonexceptional` instead; when that search is empty (e.g. every
    tau of support 5 in S_5 or S_6) :class:`NoNearbyNonexceptional` is raised.
    """
    if hamming_norm(tau) < 5:
        raise ValueError(f"need ||tau||_H >= 5, got {hamming_norm(tau)}")
    sigma = tau if tau.is_even() else _evenize(tau)
    if is_exceptional(sigma):
        longest = max(sigma.cycles(), key=lambda c: (len(c), [-x for x in c]))
        _, pi = brenner_cycles(len(longest))
        rest = [c for c in sigma.cycles() if c != longest]
        sigma = Perm.from_cycles(rest, sigma.n) * _relabel(pi, longest, sigma.n)
    if _nearby_ok(tau, sigma):
        return sigma
    found = search_nonexceptional(tau)
    if found is None:
        raise NoNearbyNonexceptional(
            f"no even nonexceptional permutation with support {sorted(tau.support())} "
            f"within Hamming distance 5 of {tau} in S_{tau.n}"
        )
    return found


@dataclass(frozen=True)
class ConjProductCert:
    """``claimed == prod_i conj_i^-1 * base^sign_i * conj_i`` (left to right).

    Works for any group given ``mul``/``inv``/``identity``; the defaults are
    for :class:`Perm`.
    """

    base: Any
    factors: tuple[tuple[int, Any], ...]
    claimed: Any

    def __len__(self) -> int:
        return len(self.factors)

    def replay(
        self,
        mul: Callable[[Any, Any], Any] | None = None,
        inv: Callable[[Any], Any] | None = None,
        identity: Any = None,
    ) -> Any:
        if mul is None:
            mul = lambda x, y: x * y  # noqa: E731
        if inv is None:
            inv = lambda x: x.inverse()  # noqa: E731
        if identity is None:
            identity = Perm.identity(self.base.n)
        acc = identity
        base_inv = inv(self.base)
        for sign, h in self.factors:
            g = self.base if sign > 0 else base_inv
            acc = mul(acc, mul(mul(inv(h), g), h))
        return acc

    def verify(self, mul=None, inv=None, identity=None) -> bool:
        return self.replay(mul, inv, identity) == self.claimed

    def to_json(self, encode: Callable[[Any], Any] = lambda p: p.to_json()) -> dict:
        return {
            "base": encode(self.base),
            "factors": [[s, encode(h)] for s, h in self.factors],
            "claimed": encode(self.claimed),
        }


def _block_conjugator(src: Sequence[int], dst: Sequence[int], n: int) -> Perm:
    """A permutation sending src[i] -> dst[i] with support in src | dst."""
    img: dict[int, int] = dict(zip(src, dst))
    free_dom = sorted(set(dst) - set(src))
    free_img = sorted(set(src) - set(dst))
    img.update(zip(free_dom, free_img))
    return Perm(tuple(img.get(i, i) for i in range(1, n + 1)))


def sigma_infinity(
    sigma: Perm,
    n: int | None = None,
    seed: int = 0,
    attempts: int = 2000,
) -> tuple[Perm, ConjProductCert]:
    """A full-support product of at most 4 + floor(n/k) conjugates of sigma^{+-1}.

    {1..n} is cut into blocks X_1 = supp(sigma), X_2, ... of size k and a
    remainder Y.  Blocks get relabelled copies of sigma.  When Y is nonempty the
    last block and Y are covered together by a factor sigma_0 found by seeded
    random search over products of 2..4 conjugates supported inside X_q | Y.
    """
    if n is None:
        n = sigma.n
    if n < sigma.n:
        raise ValueError("target degree below the degree of sigma")
    sigma = sigma.extend(n)
    k = hamming_norm(sigma)
    if k < 5:
        raise ValueError(f"need ||sigma||_H >= 5, got {k}")
    # nonexceptional as an element of A_k acting on its own support
    on_supp = [len(c) for c in sigma.cycles()]
    if not sigma.is_even() or (all(x % 2 for x in on_supp) and len(set(on_supp)) == len(on_supp)):
        raise ValueError(f"sigma must be nonexceptional on its support: {sigma}")
    if k == n:
        return sigma, ConjProductCert(sigma, ((1, Perm.identity(n)),), sigma)

    x1 = sorted(sigma.support())
    rest = [i for i in range(1, n + 1) if i not in set(x1)]
    q = n // k
    blocks = [x1] + [rest[(i - 1) * k: i * k] for i in range(1, q)]
    y = rest[(q - 1) * k:]

    factors: list[tuple[int, Perm]] = []
    full_blocks = blocks if not y else blocks[:-1]
    for blk in full_blocks:
        factors.append((1, _block_conjugator(x1, blk, n)))
    partial = ConjProductCert(sigma, tuple(factors), None)
    prod = partial.replay()

    if y:
        z = sorted(blocks[-1] + y)
        zset = set(z)
        rng = random.Random(seed)
        found = None
        for attempt in range(attempts):
            nfac = 2 + attempt % 3
            cand: list[tuple[int, Perm]] = []
            covered: set[int] = set()
            for j in range(nfac):
                # the first factors are forced to cover what is still missing
                missing = sorted(zset - covered)
                rng.shuffle(missing)
                pool = [p for p in z if p not in set(missing)]
                rng.shuffle(pool)
                dst = (missing + pool)[:k]
                rng.shuffle(dst)
                covered.update(dst)
                cand.append((rng.choice((1, -1)), _block_conjugator(x1, dst, n)))
            c = ConjProductCert(sigma, tuple(cand), None)
            if c.replay().support() == zset:
                found = cand
                break
        if found is None:
            raise ConstructionIncomplete(
                f"no sigma_0 with support of size {len(z)} found in {attempts} attempts",
                partial=ConjProductCert(sigma, tuple(factors), prod),
            )
        factors.extend(found)

    cert = ConjProductCert(sigma, tuple(factors), None)
    result = cert.replay()
    cert = ConjProductCert(sigma, tuple(factors), result)
    return result, cert
