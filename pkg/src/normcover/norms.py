"""Bi-invariant (pseudo-)norms: axiom checks, scaling and the norm catalog."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .linear import CapabilityError, jordan_length
from .lognorm import LogNorm
from .perm import hamming_norm, hamming_normalized

AXIOMS = ("0", "1", "2", "3")
NORM_IDS = ("hamming", "hamming_normalized", "lee", "conjugacy_length", "jordan", "iet_support")


@dataclass
class NormReport:
    axiom_results: dict[str, bool]
    counterexamples: dict[str, tuple[Any, Any]]
    pairs_checked: int
    mode: str
    seed: int | None = None
    word_length: int | None = None

    @property
    def counterexample(self) -> tuple[Any, Any] | None:
        for ax in AXIOMS:
            if ax in self.counterexamples:
                return self.counterexamples[ax]
        return None

    @property
    def is_norm(self) -> bool:
        return all(self.axiom_results.values())

    @property
    def is_pseudo_norm(self) -> bool:
        return all(self.axiom_results[a] for a in ("0", "1", "2"))

    def to_json(self, encode: Callable[[Any], Any]) -> dict:
        return {
            "axiom_results": dict(self.axiom_results),
            "counterexamples": {k: [encode(g), encode(h)] for k, (g, h) in self.counterexamples.items()},
            "pairs_checked": self.pairs_checked,
            "mode": self.mode,
            "seed": self.seed,
            "word_length": self.word_length,
        }


def lee_norm(g: int, m: int) -> Fraction:
    """2*min(g, m-g)/m; for m = 2^n this is min(g, m-g)/2^(n-1)."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if not 0 <= g < m:
        raise ValueError(f"residue {g} outside 0..{m - 1}")
    return Fraction(2 * min(g, m - g), m)


def conjugacy_class(g, group) -> list:
    """Orbit of g under conjugation by the generators, sorted by key."""
    seen = {group.key(g): g}
    frontier = [g]
    gens = group.generators()
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = group.conjugate(x, s)
                k = group.key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def conjugacy_length_norm(g, group) -> LogNorm:
    """log|g^G| / log|G| as an exact log ratio."""
    order = group.order()
    if order < 2:
        raise ValueError("conjugacy length is undefined on the trivial group")
    return LogNorm.ratio(len(conjugacy_class(g, group)), order)


def _conjugacy_length_fn(group) -> Callable[[Any], LogNorm]:
    order = group.order()
    if order < 2:
        raise ValueError("conjugacy length is undefined on the trivial group")
    cache: dict[Any, LogNorm] = {}

    def fn(g):
        k = group.key(g)
        if k not in cache:
            cls = conjugacy_class(g, group)
            value = LogNorm.ratio(len(cls), order)
            for x in cls:
                cache[group.key(x)] = value
        return cache[k]

    return fn


def scale_norm(group, c) -> Any:
    """Same group law, norm multiplied by the positive rational c."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError(f"scale factor must be positive, got {c}")
    base = group._norm
    if base is None:
        raise CapabilityError("cannot scale a group without a norm")
    scaled = group.with_norm(lambda g: base(g) * c, f"{group.norm_id}*{c}")
    scaled.scale = getattr(group, "scale", Fraction(1)) * c
    scaled.base_norm_id = getattr(group, "base_norm_id", group.norm_id)
    return scaled


def with_catalog_norm(group, norm_id: str, scale=None):
    """Attach a catalog norm by id, optionally scaled."""
    from .groups import CyclicGroup, IetGroup, SLGroup, SymmetricGroup

    if norm_id == "hamming" and isinstance(group, SymmetricGroup):
        g = group.with_norm(hamming_norm, "hamming")
    elif norm_id == "hamming_normalized" and isinstance(group, SymmetricGroup):
        g = group.with_norm(hamming_normalized, "hamming_normalized")
    elif norm_id == "lee" and isinstance(group, CyclicGroup):
        m = group.m
        g = group.with_norm((lambda x: lee_norm(x, m)) if m >= 2 else (lambda x: Fraction(0)), "lee")
    elif norm_id == "jordan" and isinstance(group, SLGroup):
        g = group.with_norm(jordan_length, "jordan")
    elif norm_id == "iet_support" and isinstance(group, IetGroup):
        from .iet import support_norm

        g = group.with_norm(support_norm, "iet_support")
    elif norm_id == "conjugacy_length":
        if not group.enumerable():
            raise CapabilityError("conjugacy length needs a finite enumerable group")
        g = group.with_norm(_conjugacy_length_fn(group), "conjugacy_length")
    elif norm_id in NORM_IDS:
        raise ValueError(f"norm {norm_id!r} does not apply to group type {group.name!r}")
    else:
        raise ValueError(f"unknown norm id {norm_id!r}")
    if scale is not None and Fraction(scale) != 1:
        g = scale_norm(g, scale)
    return g


# axiom checks ----------------------------------------------------------------


def _exhaustive_pairs(group):
    elems = sorted(group.elements(), key=group.key)
    return elems, [(g, h) for g in elems for h in elems]


def verify_norm_axioms(group, mode: str = "exhaustive", seed: int | None = None,
                       samples: int = 2000, word_length: int = 8) -> NormReport:
    """Check (0) ||e||=0, (1) subadditivity, (2) inverse and conjugation invariance, (3) definiteness.

    Exhaustive mode walks g, h over the group in key order, so each reported
    counterexample is the lexicographically least violation.  Sampled mode draws
    words over the generators and needs an explicit seed.
    """
    if mode == "exhaustive":
        if not group.enumerable():
            raise CapabilityError(f"{group.describe()} cannot be enumerated")
        elems = sorted(group.elements(), key=group.key)
        singles = elems
        pairs = ((g, h) for g in elems for h in elems)
        pairs_checked = len(elems) ** 2
    elif mode == "sampled":
        if seed is None:
            raise ValueError("sampled mode needs a seed")
        if not group.generators():
            raise CapabilityError("sampled mode needs a generator set")
        rng = random.Random(seed)
        drawn = [(group.random_word(rng, word_length), group.random_word(rng, word_length)) for _ in range(samples)]
        singles = [g for g, _ in drawn]
        pairs = iter(drawn)
        pairs_checked = samples
    else:
        raise ValueError(f"unknown mode {mode!r}")

    e = group.identity()
    ex = group.key(e)
    norm = group.norm
    cache: dict[Any, Any] = {}

    def nm(x):
        k = group.key(x)
        if k not in cache:
            cache[k] = norm(x)
        return cache[k]

    fails: dict[str, tuple[Any, Any]] = {}
    if nm(e) != 0:
        fails["0"] = (e, e)
    for g in singles:
        ng = nm(g)
        if "2" not in fails and nm(group.invert(g)) != ng:
            fails["2"] = (g, e)
        if "3" not in fails and group.key(g) != ex and ng == 0:
            fails["3"] = (g, e)
    for g, h in pairs:
        if "1" in fails and "2" in fails:
            break
        ng, nh = nm(g), nm(h)
        if "1" not in fails and nm(group.multiply(g, h)) > ng + nh:
            fails["1"] = (g, h)
        if "2" not in fails and nm(group.conjugate(g, group.invert(h))) != ng:
            fails["2"] = (g, h)
    results = {ax: ax not in fails for ax in AXIOMS}
    return NormReport(results, fails, pairs_checked, mode, seed, word_length if mode == "sampled" else None)


@dataclass
class PowerReport:
    passed: bool
    counterexample: tuple[Any, int] | None
    checked: int
    max_power: int
    mode: str
    seed: int | None = None


def check_power_monotone(group, max_power: int, mode: str = "exhaustive", seed: int | None = None,
                         samples: int = 500, word_length: int = 8) -> PowerReport:
    """||g^k|| <= ||g|| for 1 <= k <= max_power; least (g, k) reported on failure."""
    if max_power < 1:
        raise ValueError("max_power must be at least 1")
    if mode == "exhaustive":
        if not group.enumerable():
            raise CapabilityError(f"{group.describe()} cannot be enumerated")
        elems = sorted(group.elements(), key=group.key)
    elif mode == "sampled":
        if seed is None:
            raise ValueError("sampled mode needs a seed")
        rng = random.Random(seed)
        elems = [group.random_word(rng, word_length) for _ in range(samples)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    checked = 0
    for g in elems:
        ng = group.norm(g)
        acc = group.identity()
        for k in range(1, max_power + 1):
            acc = group.multiply(acc, g)
            checked += 1
            if group.norm(acc) > ng:
                return PowerReport(False, (g, k), checked, max_power, mode, seed)
    return PowerReport(True, None, checked, max_power, mode, seed)


def exponent(group) -> int:
    from math import lcm

    return lcm(*(element_order(group, g) for g in group.elements()))


def element_order(group, g) -> int:
    e = group.key(group.identity())
    acc, k = g, 1
    while group.key(acc) != e:
        acc = group.multiply(acc, g)
        k += 1
    return k
