"""Finite-stage profiles of sequences g_n in a family of normed groups G_n.

Only catalog rules are accepted so a profile is a pure function of its
descriptor.  "Infinitesimal up to the range" is a finite-stage heuristic: it
says nothing about any limit along an ultrafilter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .norms import lee_norm
from .perm import Perm, hamming_normalized

HEURISTIC_NOTE = "finite-stage heuristic over the given range; no claim about the limit"


@dataclass(frozen=True)
class SeqFamily:
    rule: str
    lo: int
    hi: int
    # stage(n) -> (group label, element, norm of the m-th power)
    power_norm: Callable[[int, int], Fraction]
    element: Callable[[int], Any]
    params: dict = field(default_factory=dict)

    def check_range(self, lo: int, hi: int) -> None:
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        if lo < self.lo or hi > self.hi:
            raise ValueError(f"rule {self.rule!r} is valid on [{self.lo}, {self.hi}], got [{lo}, {hi}]")


def _lee_third() -> SeqFamily:
    # g_n = floor(2^n / 3) in Z_{2^n}
    def element(n: int) -> int:
        return 2**n // 3

    def power_norm(n: int, m: int) -> Fraction:
        mod = 2**n
        return lee_norm(m * element(n) % mod, mod)

    return SeqFamily("lee_third", 1, 4096, power_norm, element)


def _constant(residue: int = 0) -> SeqFamily:
    # the residue r in Z_{2^n}; r = 0 is the identity sequence
    lo = max(1, residue.bit_length())

    def power_norm(n: int, m: int) -> Fraction:
        mod = 2**n
        return lee_norm(m * residue % mod, mod)

    return SeqFamily("constant", lo, 4096, power_norm, lambda n: residue, {"residue": residue})


def _hamming_block(k: int) -> SeqFamily:
    # the k-cycle (1 2 ... k) in S_n with the normalized Hamming norm
    if k < 1:
        raise ValueError("block size must be positive")

    def element(n: int) -> Perm:
        return Perm.from_cycles([range(1, k + 1)], n) if k > 1 else Perm.identity(n)

    def power_norm(n: int, m: int) -> Fraction:
        return hamming_normalized(element(n) ** m)

    return SeqFamily("hamming_block", max(k, 1), 2000, power_norm, element, {"k": k})


def _hamming_cycle() -> SeqFamily:
    # the full cycle (1 2 ... n) in S_n, normalized Hamming
    def element(n: int) -> Perm:
        return Perm.from_cycles([range(1, n + 1)], n) if n > 1 else Perm.identity(1)

    def power_norm(n: int, m: int) -> Fraction:
        return hamming_normalized(element(n) ** m)

    return SeqFamily("hamming_cycle", 1, 2000, power_norm, element)


RULES = {
    "lee_third": "g_n = floor(2^n/3) in Z_{2^n}, Lee norm",
    "constant": "fixed residue r (default 0) in Z_{2^n}, Lee norm",
    "hamming_block": "k-cycle (1..k) in S_n, normalized Hamming",
    "hamming_cycle": "n-cycle (1..n) in S_n, normalized Hamming",
}


def make_family(rule: str, **params) -> SeqFamily:
    if rule == "lee_third":
        return _lee_third()
    if rule == "constant":
        return _constant(int(params.get("residue", 0)))
    if rule == "hamming_block":
        return _hamming_block(int(params.get("k", 3)))
    if rule == "hamming_cycle":
        return _hamming_cycle()
    raise ValueError(f"unknown sequence rule {rule!r}")


def tail_norm_profile(seq: SeqFamily, m: int, lo: int, hi: int) -> list[tuple[int, Fraction]]:
    seq.check_range(lo, hi)
    return [(n, seq.power_norm(n, m)) for n in range(lo, hi + 1)]


@dataclass
class InfinitesimalReport:
    verdict: bool
    n0: int | None
    max_tail_norm: Fraction | None
    monotone: bool
    profile: list[tuple[int, Fraction]]
    bound_ok: bool | None = None
    bound_failures: list[int] = field(default_factory=list)
    note: str = HEURISTIC_NOTE


def infinitesimal_check(seq: SeqFamily, m: int, lo: int, hi: int, tol, strict: bool = False) -> InfinitesimalReport:
    """Least n0 in the range with ||g_n^m|| <= tol (or < tol) for every n >= n0.

    For lee_third with m = 3 the bound ||g_n^3|| <= 2^(2-n) is also checked
    stage by stage.
    """
    tol = Fraction(tol)
    prof = tail_norm_profile(seq, m, lo, hi)
    ok = [(v < tol) if strict else (v <= tol) for _, v in prof]
    n0 = None
    for i in range(len(prof) - 1, -1, -1):
        if not ok[i]:
            break
        n0 = prof[i][0]
    tail = [v for n, v in prof if n0 is not None and n >= n0]
    monotone = all(a >= b for (_, a), (_, b) in zip(prof, prof[1:]))
    rep = InfinitesimalReport(n0 is not None, n0, max(tail) if tail else None, monotone, prof)
    if seq.rule == "lee_third" and m == 3:
        rep.bound_failures = [n for n, v in prof if v > Fraction(4, 2**n)]
        rep.bound_ok = not rep.bound_failures
    return rep
