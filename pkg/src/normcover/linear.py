"""Square matrices over prime fields, SL_n(F_p) enumeration and the Jordan length."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

DEFAULT_BUDGET = 10**6


class CapabilityError(RuntimeError):
    """An operation needs a capability (enumeration, budget) the input lacks."""


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class MatFp:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        rows = tuple(tuple(int(x) % self.p for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int, p: int) -> "MatFp":
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, n: int, p: int, lam: int) -> "MatFp":
        return cls(p, tuple(tuple(lam if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_json(cls, obj: dict) -> "MatFp":
        m = cls(int(obj["p"]), tuple(tuple(r) for r in obj["rows"]))
        if "n" in obj and int(obj["n"]) != m.n:
            raise ValueError(f"declared n={obj['n']} but matrix is {m.n}x{m.n}")
        return m

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "rows": [list(r) for r in self.rows]}

    @property
    def n(self) -> int:
        return len(self.rows)

    def _check(self, other: "MatFp") -> None:
        if self.p != other.p or self.n != other.n:
            raise ValueError("matrices over different fields or of different size")

    def __mul__(self, other: "MatFp") -> "MatFp":
        self._check(other)
        cols = list(zip(*other.rows))
        return MatFp(self.p, tuple(tuple(sum(a * b for a, b in zip(r, c)) % self.p for c in cols) for r in self.rows))

    def __sub__(self, other: "MatFp") -> "MatFp":
        self._check(other)
        return MatFp(self.p, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def det(self) -> int:
        return det_fp(self.rows, self.p)

    def is_sl(self) -> bool:
        return self.det() == 1

    def inverse(self) -> "MatFp":
        n, p = self.n, self.p
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = pow(aug[col][col], p - 2, p)
            aug[col] = [x * inv % p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
        return MatFp(p, tuple(tuple(r[n:]) for r in aug))

    def __pow__(self, k: int) -> "MatFp":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = MatFp.identity(self.n, self.p), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return all(x == (d if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def key(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + f"] mod {self.p}"


def _echelon(rows: Sequence[Sequence[int]], p: int) -> tuple[int, int]:
    """Row-reduce a copy; return (rank, determinant-if-square)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank, det = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col] % p), None)
        if piv is None:
            det = 0
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
            det = -det
        pv = m[rank][col] % p
        det = det * pv % p
        inv = pow(pv, p - 2, p)
        for r in range(rank + 1, nrows):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank, det % p


def rank_fp(a: MatFp | Sequence[Sequence[int]], p: int | None = None) -> int:
    if isinstance(a, MatFp):
        return _echelon(a.rows, a.p)[0]
    if p is None:
        raise ValueError("modulus required for a raw matrix")
    return _echelon(a, p)[0]


def det_fp(rows: Sequence[Sequence[int]], p: int) -> int:
    if len(rows) == 0:
        return 1
    return _echelon(rows, p)[1]


def jordan_length(a: MatFp) -> Fraction:
    """(1/n) * min over nonzero scalars lam of rank(A - lam*I)."""
    n, p = a.n, a.p
    best = min(rank_fp(a - MatFp.scalar(n, p, lam)) for lam in range(1, p))
    return Fraction(best, n)


def sl_order(n: int, p: int) -> int:
    order = p ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= p**i - 1
    return order


def transvections(n: int, p: int) -> list[MatFp]:
    """I + E_ij for i != j; these generate SL_n(F_p)."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                rows = [[int(r == c) for c in range(n)] for r in range(n)]
                rows[i][j] = 1
                out.append(MatFp(p, tuple(map(tuple, rows))))
    return out


def sl_enumerate(n: int, p: int, budget: int = DEFAULT_BUDGET) -> Iterator[MatFp]:
    """SL_n(F_p) in lexicographic order of row-major entries, each element once."""
    if not _is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if n < 1:
        raise ValueError("dimension must be positive")
    if sl_order(n, p) > budget:
        raise CapabilityError(f"|SL_{n}(F_{p})| = {sl_order(n, p)} exceeds budget {budget}")
    vectors = list(product(range(p), repeat=n))

    def extend(prefix: list[tuple[int, ...]]) -> Iterator[MatFp]:
        if len(prefix) == n - 1:
            for v in vectors:
                if det_fp(prefix + [v], p) == 1:
                    yield MatFp(p, tuple(prefix + [v]))
            return
        for v in vectors:
            if rank_fp(prefix + [v], p) == len(prefix) + 1:
                yield from extend(prefix + [v])

    yield from extend([])


def block_embed(a: MatFp, m: int) -> MatFp:
    """m x m block-diagonal matrix with m/n copies of A."""
    n = a.n
    if m % n:
        raise ValueError(f"{n} does not divide {m}")
    rows = []
    for b in range(m // n):
        for r in a.rows:
            rows.append((0,) * (b * n) + r + (0,) * (m - (b + 1) * n))
    return MatFp(a.p, tuple(rows))


@dataclass
class ProbeRow:
    matrix: MatFp
    jordan: Fraction
    normal_gen: float | int


@dataclass
class ProbeReport:
    n: int
    p: int
    rows: list[ProbeRow]
    c_emp: Fraction | None
    all_finite: bool
    self_consistent: bool
    failures: list[MatFp]

    def to_json(self) -> dict:
        from .lognorm import norm_to_json

        def ngen(v):
            return v if isinstance(v, int) else "infinite"

        return {
            "n": self.n,
            "p": self.p,
            "c_emp": None if self.c_emp is None else norm_to_json(self.c_emp),
            "all_finite": self.all_finite,
            "self_consistent": self.self_consistent,
            "noncentral_rows": len(self.rows),
            "rows": [
                {"matrix": [list(x) for x in r.matrix.rows], "jordan": norm_to_json(r.jordan), "N": ngen(r.normal_gen)}
                for r in self.rows
            ],
            "failures": [[list(x) for x in m.rows] for m in self.failures],
        }


def ls_constant_probe(n: int, p: int, budget: int = DEFAULT_BUDGET) -> ProbeReport:
    """Empirical constant C_emp = max l_J(A) * N(A) over noncentral A in SL_n(F_p).

    Then checks that N = ceil(C_emp / l_J(A)) gives C_N(A) = SL_n(F_p) for every
    noncentral A.  N(A) is a class function, so one BFS per conjugacy class.
    """
    from math import ceil, inf

    from .coverage import FiniteGroup
    from .groups import SLGroup

    if n < 2:
        raise ValueError("need n >= 2")
    fg = FiniteGroup(SLGroup(n, p, budget=budget))
    rows: list[ProbeRow] = []
    ngen_by_class: dict[int, float | int] = {}
    for i, a in enumerate(fg.elements):
        if a.is_scalar():
            continue
        rep = fg.class_rep(i)
        if rep not in ngen_by_class:
            ngen_by_class[rep] = fg.normal_gen_number(rep)
        rows.append(ProbeRow(a, jordan_length(a), ngen_by_class[rep]))
    finite = [r for r in rows if r.normal_gen != inf]
    all_finite = len(finite) == len(rows)
    c_emp = max((r.jordan * r.normal_gen for r in finite), default=None)
    failures = []
    if c_emp is not None:
        for r in rows:
            if r.normal_gen == inf:
                failures.append(r.matrix)
                continue
            big_n = ceil(c_emp / r.jordan)
            levels = fg.conj_ball(fg.index_of(r.matrix), big_n).sizes
            if levels[big_n - 1] != fg.order:
                failures.append(r.matrix)
    return ProbeReport(n, p, rows, c_emp, all_finite, not failures, failures)
