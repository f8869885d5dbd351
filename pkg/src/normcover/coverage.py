"""Conjugate balls, covering and bigness checks on finite normed groups.

Everything here works on a :class:`FiniteGroup`, an index-based view of an
enumerable :class:`~normcover.groups.GroupAdapter`.  Elements are numbered in
key order, so "least index" is "least key" and every witness is the
lexicographically least one.  Balls are strict (``||x|| < t``) unless a
``closed`` flag says otherwise.

C_0(g) = {e}; for k >= 1, C_k(g) is the set of products of 1..k elements of
g^G u (g^-1)^G.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from .linear import CapabilityError
from .lognorm import norm_to_json
from .perm import ConjProductCert

INFINITE = math.inf
INCONCLUSIVE = "inconclusive"


class PreconditionError(ValueError):
    """Inputs violate a documented precondition."""


# --------------------------------------------------------------------------
# index-based finite group
# --------------------------------------------------------------------------


class FiniteGroup:
    """Enumerated group with batched multiplication by index."""

    def __init__(self, adapter, budget: int = 10**6):
        if not adapter.enumerable():
            raise CapabilityError(f"{adapter.describe()} is not enumerable")
        self.adapter = adapter
        elems = list(adapter.elements())
        if len(elems) > budget:
            raise CapabilityError(f"group of order {len(elems)} exceeds element budget {budget}")
        self.vectorized = bool(getattr(adapter, "vectorized", False))
        if self.vectorized:
            raw = np.stack([adapter.raw(e) for e in elems])
            codes = adapter.raw_codes(raw)
            perm = np.argsort(codes, kind="stable")
            self.raw = raw[perm]
            self.codes = codes[perm]
            self.elements = [elems[i] for i in perm]
            if len(self.codes) > 1 and np.any(self.codes[1:] == self.codes[:-1]):
                raise ValueError("enumeration repeats an element")
        else:
            self.elements = sorted(elems, key=adapter.key)
            self._index = {adapter.key(e): i for i, e in enumerate(self.elements)}
            if len(self._index) != len(self.elements):
                raise ValueError("enumeration repeats an element")
        self.order = len(self.elements)
        self.identity = self.index_of(adapter.identity())
        self.gens = [self.index_of(s) for s in adapter.generators()]
        self._inv: np.ndarray | None = None
        if _closure(self, np.array(self.gens, dtype=np.int64)).size != self.order:
            raise ValueError(f"generators of {adapter.describe()} do not generate the enumerated group")
        if adapter._norm is not None and adapter.norm(adapter.identity()) != 0:
            raise ValueError("norm of the identity is not 0")
        self._class_id: np.ndarray | None = None
        self._norms: list | None = None
        self._norm_fn = None

    # lookup ---------------------------------------------------------------
    def _lookup(self, codes: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.codes, codes)
        pos = np.minimum(pos, self.order - 1)
        if not np.array_equal(self.codes[pos], codes):
            raise ValueError("product left the enumerated group")
        return pos

    def index_of(self, elem) -> int:
        if self.vectorized:
            code = self.adapter.raw_codes(self.adapter.raw(elem)[None, ...])
            return int(self._lookup(code)[0])
        return self._index[self.adapter.key(elem)]

    def indices_of(self, elems) -> np.ndarray:
        return np.array(sorted({self.index_of(e) for e in elems}), dtype=np.int64)

    # arithmetic -----------------------------------------------------------
    def mul(self, idx: np.ndarray, j: int) -> np.ndarray:
        """Indices of elements[i] * elements[j] for i in idx."""
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size == 0:
            return idx
        if self.vectorized:
            out = self.adapter.raw_mul(self.raw[idx], self.raw[j])
            return self._lookup(self.adapter.raw_codes(out))
        a, s = self.adapter, self.elements[j]
        return np.array([self._index[a.key(a.multiply(self.elements[i], s))] for i in idx], dtype=np.int64)

    def lmul(self, j: int, idx: np.ndarray) -> np.ndarray:
        """Indices of elements[j] * elements[i] for i in idx."""
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size == 0:
            return idx
        if self.vectorized:
            out = self.adapter.raw_lmul(self.raw[j], self.raw[idx])
            return self._lookup(self.adapter.raw_codes(out))
        a, s = self.adapter, self.elements[j]
        return np.array([self._index[a.key(a.multiply(s, self.elements[i]))] for i in idx], dtype=np.int64)

    def mul_pairs(self, ia: np.ndarray, ib: np.ndarray) -> np.ndarray:
        """Elementwise products elements[ia[k]] * elements[ib[k]]."""
        out = np.empty(len(ia), dtype=np.int64)
        a = self.adapter
        for k, (x, y) in enumerate(zip(ia, ib)):
            out[k] = self.index_of(a.multiply(self.elements[x], self.elements[y]))
        return out

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            inv = np.empty(self.order, dtype=np.int64)
            done = np.zeros(self.order, dtype=bool)
            for i in range(self.order):
                if not done[i]:
                    j = self.index_of(self.adapter.invert(self.elements[i]))
                    inv[i], inv[j] = j, i
                    done[i] = done[j] = True
            self._inv = inv
        return self._inv

    def products(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Sorted unique indices of the product set left * right."""
        left = np.asarray(left, dtype=np.int64)
        right = np.asarray(right, dtype=np.int64)
        if left.size == 0 or right.size == 0:
            return np.empty(0, dtype=np.int64)
        if left.size <= right.size:
            parts = [self.lmul(int(x), right) for x in left]
        else:
            parts = [self.mul(left, int(y)) for y in right]
        return np.unique(np.concatenate(parts))

    def mask(self, idx) -> np.ndarray:
        m = np.zeros(self.order, dtype=bool)
        m[np.asarray(idx, dtype=np.int64)] = True
        return m

    # norms ----------------------------------------------------------------
    def norms(self) -> list:
        fn = self.adapter._norm
        if self._norms is None or self._norm_fn is not fn:
            self._norms = [self.adapter.norm(e) for e in self.elements]
            self._norm_fn = fn
        return self._norms

    def ball(self, t, closed: bool = False) -> np.ndarray:
        ns = self.norms()
        if closed:
            return np.array([i for i, v in enumerate(ns) if v <= t], dtype=np.int64)
        return np.array([i for i, v in enumerate(ns) if v < t], dtype=np.int64)

    # conjugacy ------------------------------------------------------------
    def _partition(self) -> None:
        """Split G into conjugacy classes (orbits under the generators).

        Each class is represented by its least element r; ``_conj_to[x]`` is an
        element c with r^c = x.
        """
        if self._class_id is not None:
            return
        cid = np.full(self.order, -1, dtype=np.int64)
        conj_to = np.full(self.order, -1, dtype=np.int64)
        reps: list[int] = []
        inv = self.inv
        for r in range(self.order):
            if cid[r] >= 0:
                continue
            c = len(reps)
            reps.append(r)
            cid[r], conj_to[r] = c, self.identity
            frontier = np.array([r], dtype=np.int64)
            conj = np.array([self.identity], dtype=np.int64)
            while frontier.size:
                nf, nc = [], []
                for s in self.gens:
                    y = self.lmul(int(inv[s]), self.mul(frontier, s))
                    fresh = cid[y] < 0
                    if not fresh.any():
                        continue
                    y, hy = y[fresh], self.mul(conj[fresh], s)
                    y, first = np.unique(y, return_index=True)
                    hy = hy[first]
                    cid[y], conj_to[y] = c, hy
                    nf.append(y)
                    nc.append(hy)
                frontier = np.concatenate(nf) if nf else np.empty(0, dtype=np.int64)
                conj = np.concatenate(nc) if nc else np.empty(0, dtype=np.int64)
        self._class_id, self._conj_to, self._reps = cid, conj_to, reps
        order = np.argsort(cid, kind="stable")
        bounds = np.searchsorted(cid[order], np.arange(len(reps) + 1))
        self._members = [order[bounds[i]:bounds[i + 1]] for i in range(len(reps))]

    @property
    def class_id(self) -> np.ndarray:
        self._partition()
        return self._class_id

    def conj_class(self, i: int) -> "ConjClass":
        """The class of element i, with conjugators h (i^h = x) for every member x."""
        self._partition()
        c = int(self._class_id[i])
        members = self._members[c]
        a_inv = int(self.inv[self._conj_to[i]])
        rel = self.lmul(a_inv, self._conj_to[members])
        return ConjClass(i, members, dict(zip(members.tolist(), rel.tolist())))

    def class_rep(self, i: int) -> int:
        self._partition()
        return self._reps[int(self._class_id[i])]

    def class_reps(self) -> list[int]:
        self._partition()
        return list(self._reps)

    def class_size(self, i: int) -> int:
        self._partition()
        return int(self._members[int(self._class_id[i])].size)

    # conjugate balls -------------------------------------------------------
    def conj_ball(self, g: int, n: int, stop_when_full: bool = True,
                  target: np.ndarray | None = None) -> "ConjBall":
        """Levels C_1..C_n of g; stops early once the chain is full or stable.

        Every C_k is a union of conjugacy classes, so C_{k+1} is found from one
        representative r per class new at level k: the classes meeting r * C_1.
        With ``target`` (a boolean mask) the search also stops as soon as the
        target is covered; uncomputed levels are reported as -1.
        """
        self._partition()
        cid = self._class_id
        ginv = int(self.inv[g])
        sign: dict[int, int] = {}
        conj: dict[int, int] = {}
        cls_g = self.conj_class(g)
        for x in cls_g.members.tolist():
            sign[x], conj[x] = 1, cls_g.conjugator[x]
        if cid[ginv] != cid[g]:
            cls_i = self.conj_class(ginv)
            for x in cls_i.members.tolist():
                sign[x], conj[x] = -1, cls_i.conjugator[x]
        c1 = np.array(sorted(sign), dtype=np.int64)
        ball = ConjBall(self, g, c1, sign, conj)
        nclass = len(self._reps)
        lvl_cls = np.full(nclass, -1, dtype=np.int64)
        how: dict[int, tuple[int, int]] = {}  # class -> (rep of an earlier class, c in C_1)
        first = sorted({int(cid[g]), int(cid[ginv])})
        lvl_cls[first] = 1
        ball.lvl_cls, ball.how = lvl_cls, how
        sizes = [int(c1.size)]
        if n < 1:
            ball.sizes = []
            ball.computed = 0
            return ball
        new_cls = first
        k = 1

        def covered() -> bool:
            return target is not None and bool(np.all(lvl_cls[cid[target]] >= 1))

        while k < n:
            if stop_when_full and sizes[-1] == self.order:
                break
            if covered():
                break
            k += 1
            fresh = []
            for c in new_cls:
                r = self._reps[c]
                ys = self.lmul(r, c1)
                ycls = cid[ys]
                for y, yc in zip(ys.tolist(), ycls.tolist()):
                    if lvl_cls[yc] < 0:
                        lvl_cls[yc] = k
                        how[yc] = (r, y)
                        fresh.append(yc)
            sizes.append(sizes[-1] + sum(int(self._members[c].size) for c in fresh))
            new_cls = sorted(fresh)
            if not fresh:
                ball.stable = True
                break
        if sizes[-1] == self.order:
            ball.stable = True
        ball.level = lvl_cls[cid]
        ball.computed = k
        while len(sizes) < n:
            sizes.append(sizes[-1] if ball.stable else -1)
        ball.sizes = sizes
        return ball

    def normal_gen_number(self, g: int, n_max: int | None = None):
        """Least n with C_n(g) = G; INFINITE if the chain stabilises below G.

        Returns None when ``n_max`` levels did not decide it.
        """
        if self.order == 1:
            return 0
        cap = n_max if n_max is not None else self.order + 1
        ball = self.conj_ball(g, cap)
        for k, s in enumerate(ball.sizes, start=1):
            if s == self.order:
                return k
        return INFINITE if ball.stable else None


@dataclass
class ConjClass:
    element: int
    members: np.ndarray
    conjugator: dict[int, int]

    def __len__(self) -> int:
        return int(self.members.size)


@dataclass
class ConjBall:
    group: FiniteGroup
    g: int
    c1: np.ndarray
    sign: dict[int, int]
    conj: dict[int, int]
    level: np.ndarray | None = None
    sizes: list[int] = field(default_factory=list)
    stable: bool = False
    computed: int = 0
    lvl_cls: np.ndarray | None = None
    how: dict = field(default_factory=dict)

    def mask(self, k: int) -> np.ndarray:
        """Boolean mask of C_k."""
        fg = self.group
        if k == 0:
            return fg.mask([fg.identity])
        if k > self.computed and not self.stable:
            raise ValueError(f"level {k} was not computed")
        return (self.level >= 1) & (self.level <= k)

    def members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.mask(k))

    def contains(self, x: int, k: int) -> bool:
        if k == 0:
            return x == self.group.identity
        if self.level is None:
            return False
        return bool(1 <= self.level[x] <= k)

    def _factors(self, x: int) -> list[tuple[int, int]]:
        """(sign, conjugator index) pairs whose product is x."""
        fg = self.group
        if x in self.sign:
            return [(self.sign[x], self.conj[x])]
        c = int(fg.class_id[x])
        r, y = self.how[c]
        # x = y^h with h = a^-1 b, where rep^a = y and rep^b = x
        h = int(fg.lmul(int(fg.inv[fg._conj_to[y]]), np.array([fg._conj_to[x]]))[0])
        c_elem = int(fg.lmul(int(fg.inv[r]), np.array([y]))[0])  # y = r * c
        out = self._factors(r) + [(self.sign[c_elem], self.conj[c_elem])]
        return [(s, int(fg.mul(np.array([d]), h)[0])) for s, d in out]

    def certificate(self, x: int) -> ConjProductCert:
        """Witness x as a product of conjugates of g^{+-1}."""
        fg = self.group
        if self.level is None or self.level[x] < 1:
            raise ValueError("element not reached by the ball")
        chain = tuple((s, fg.elements[d]) for s, d in self._factors(int(x)))
        return ConjProductCert(fg.elements[self.g], chain, fg.elements[x])


def replay_certificate(cert: ConjProductCert, adapter) -> Any:
    return cert.replay(adapter.multiply, adapter.invert, adapter.identity())


def certificate_json(cert: ConjProductCert, adapter) -> dict:
    return cert.to_json(adapter.encode)


# cache FiniteGroup per adapter instance; copies made by with_norm share the
# group law so they share the structure too
def finite(adapter, budget: int = 10**6) -> FiniteGroup:
    fg = getattr(adapter, "_finite", None)
    if fg is None or fg.order > budget:
        fg = FiniteGroup(adapter, budget)
        adapter._finite = fg
    if fg.adapter is not adapter:
        # same structure, different norm: rebind a shallow view
        view = object.__new__(FiniteGroup)
        view.__dict__.update(fg.__dict__)
        view.adapter = adapter
        view._norms = None
        view._norm_fn = None
        return view
    return fg


# --------------------------------------------------------------------------
# reports and parameters
# --------------------------------------------------------------------------


@dataclass
class EpsSeq:
    values: tuple[Fraction, ...]
    nonincreasing: bool = False

    def __post_init__(self) -> None:
        vals = tuple(Fraction(v) for v in self.values)
        if any(v <= 0 for v in vals):
            raise ValueError("epsilon values must be positive")
        if self.nonincreasing and any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError("sequence is flagged non-increasing but increases")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass
class CoverageReport:
    verdict: bool | str
    witness: Any = None
    levels: list[int] = field(default_factory=list)
    certificate: ConjProductCert | None = None
    parameters: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict is True


def _q(x) -> str:
    return norm_to_json(x)


def _as_idx(fg: FiniteGroup, x) -> int:
    return x if isinstance(x, (int, np.integer)) else fg.index_of(x)


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def conj_ball(g, n: int, group) -> CoverageReport:
    """C_1 .. C_n of g with level sizes; C_0 = {e}."""
    fg = finite(group)
    gi = _as_idx(fg, g)
    ball = fg.conj_ball(gi, n, stop_when_full=True)
    rep = CoverageReport(True, levels=ball.sizes, parameters={"N": n})
    rep.details["ball"] = ball
    return rep


def normal_gen_number(g, group, n_max: int | None = None):
    fg = finite(group)
    return fg.normal_gen_number(_as_idx(fg, g), n_max)


def ball(group, t, strict: bool = True) -> list:
    fg = finite(group)
    return [fg.elements[i] for i in fg.ball(t, closed=not strict)]


def check_thickened_cover(group, sets: Sequence, eps: EpsSeq | Sequence, closed: bool = False) -> CoverageReport:
    """Is G the union of X_i * B_{eps_i}(e)?  Witness: least uncovered element."""
    eps = eps if isinstance(eps, EpsSeq) else EpsSeq(tuple(eps))
    if len(sets) != len(eps):
        raise ValueError(f"{len(sets)} sets but {len(eps)} radii")
    fg = finite(group)
    covered = np.zeros(fg.order, dtype=bool)
    for xs, e in zip(sets, eps):
        idx = np.array([_as_idx(fg, x) for x in xs], dtype=np.int64)
        covered[fg.products(idx, fg.ball(e, closed))] = True
    params = {"eps": [_q(e) for e in eps], "closed": closed}
    if covered.all():
        return CoverageReport(True, parameters=params)
    w = int(np.flatnonzero(~covered)[0])
    return CoverageReport(False, witness=fg.elements[w], parameters=params,
                          details={"uncovered": int((~covered).sum())})


def _thickened_union(fg: FiniteGroup, ball_obj: ConjBall, eps: Sequence, start: int,
                     target: np.ndarray, closed: bool) -> np.ndarray:
    covered = np.zeros(fg.order, dtype=bool)
    for k in range(start, len(eps)):
        if covered[target].all():
            break
        ck = ball_obj.members(k)
        covered[fg.products(ck, fg.ball(eps[k], closed))] = True
    return covered


def is_rt_big(group, eps: EpsSeq | Sequence, r, t, start: int = 0, closed: bool = False) -> CoverageReport:
    """For all g with ||g|| > r: B_t(e) inside the union over n of C_n(g) * B_{eps_n}(e).

    ``eps[n]`` is the radius attached to C_n; with ``start=1`` the n = 0 term
    is dropped.  Witness on failure: (least g, least uncovered h).
    """
    eps = eps if isinstance(eps, EpsSeq) else EpsSeq(tuple(eps))
    r, t = Fraction(r), Fraction(t)
    if not t > r > 0:
        raise ValueError("need t > r > 0")
    fg = finite(group)
    target = fg.mask(fg.ball(t))
    ns = fg.norms()
    params = {"r": _q(r), "t": _q(t), "eps": [_q(e) for e in eps], "start": start}
    n_levels = len(eps) - 1
    checked = 0
    for rep in fg.class_reps():
        if not ns[rep] > r:
            continue
        checked += 1
        b = fg.conj_ball(rep, max(n_levels, 1), stop_when_full=True)
        covered = _thickened_union(fg, b, eps.values, start, target, closed)
        missing = np.flatnonzero(target & ~covered)
        if missing.size:
            return CoverageReport(False, witness=(fg.elements[rep], fg.elements[int(missing[0])]),
                                  levels=b.sizes, parameters=params,
                                  details={"classes_checked": checked})
    return CoverageReport(True, parameters=params, details={"classes_checked": checked})


def _least_cover_level(fg: FiniteGroup, g: int, target: np.ndarray, eps, n_max: int, closed: bool):
    """Least N with target inside C_N(g) * B_eps; INFINITE or None (budget) otherwise."""
    thick = fg.ball(eps, closed) if eps > 0 else None
    b = fg.conj_ball(g, n_max, stop_when_full=True, target=target if thick is None else None)
    covered = np.zeros(fg.order, dtype=bool)
    last = b.computed if not b.stable else len(b.sizes)
    for k in range(1, last + 1):
        layer = np.flatnonzero(b.level == k) if k <= b.computed else np.empty(0, dtype=np.int64)
        if thick is None:
            covered[layer] = True
        elif layer.size:
            covered[fg.products(layer, thick)] = True
        if covered[target].all():
            return k, b
    if b.stable:
        return INFINITE, b
    return None, b


@dataclass
class ScanResult:
    verdict: bool | str
    n: int | None
    counterexample: Any = None
    per_group: list = field(default_factory=list)


def uniformity_scan(family: Sequence, r, t, epsilon=0, n_max: int = 64, closed: bool = False) -> CoverageReport:
    """Least common N with B_t(e) inside C_N(g) * B_eps(e) for all g with ||g|| in (r, t].

    epsilon = 0 means no thickening (C_N(g) must contain B_t(e) itself).  A
    class whose chain stabilises without covering is a counterexample (verdict
    False); hitting ``n_max`` first gives an inconclusive verdict.
    """
    r, t, epsilon = Fraction(r), Fraction(t), Fraction(epsilon)
    if not t > r > 0:
        raise ValueError("need t > r > 0")
    params = {"r": _q(r), "t": _q(t), "epsilon": _q(epsilon), "n_max": n_max}
    overall = 0
    per_group = []
    inconclusive = None
    for group in family:
        fg = finite(group)
        target = fg.mask(fg.ball(t))
        ns = fg.norms()
        worst, worst_g = 0, None
        for rep in fg.class_reps():
            if not (r < ns[rep] <= t):
                continue
            k, _ = _least_cover_level(fg, rep, target, epsilon, n_max, closed)
            if k is INFINITE:
                return CoverageReport(False, witness=(group, fg.elements[rep]), parameters=params,
                                      details={"per_group": per_group, "group": group.describe()})
            if k is None:
                inconclusive = inconclusive or (group, fg.elements[rep])
                continue
            if k > worst:
                worst, worst_g = k, fg.elements[rep]
        per_group.append({"group": group.describe(), "N": worst, "attained_by": worst_g})
        overall = max(overall, worst)
    if inconclusive is not None:
        return CoverageReport(INCONCLUSIVE, witness=inconclusive, parameters=params,
                              details={"per_group": per_group, "N_lower_bound": overall})
    return CoverageReport(True, parameters=params, details={"N": overall, "per_group": per_group})


def normal_gen_table(group, n_max: int | None = None) -> np.ndarray:
    """N(g) for every element index (class function; one BFS per class)."""
    fg = finite(group)
    out = np.empty(fg.order, dtype=float)
    for rep in fg.class_reps():
        v = fg.normal_gen_number(rep, n_max)
        out[fg.conj_class(rep).members] = np.nan if v is None else v
    return out


def star_scan(family: Sequence, n_max: int | None = None, k_list: Sequence[int] = ()) -> CoverageReport:
    """Both clauses of the (star)-property over a finite family.

    Clause (1): least N such that each group has g with C_N(g) = G.
    Clause (2): for each k, least l such that N(g), N(h) >= l forces
    N(gh) >= k in every group; ``vacuous`` marks l above every finite N(g).
    """
    tables = []
    clause1 = []
    for group in family:
        fg = finite(group)
        tab = normal_gen_table(group, n_max)
        finite_vals = tab[np.isfinite(tab)]
        best = int(finite_vals.min()) if finite_vals.size else None
        wit = fg.elements[int(np.flatnonzero(tab == best)[0])] if best is not None else None
        clause1.append({"group": group.describe(), "N": best, "witness": wit,
                        "max_finite": int(finite_vals.max()) if finite_vals.size else None})
        tables.append((fg, tab))
    c1_ok = all(c["N"] is not None for c in clause1)
    common_n = max((c["N"] for c in clause1), default=0) if c1_ok else None

    clause2 = []
    for k in k_list:
        max_finite = max((int(t[np.isfinite(t)].max()) for _, t in tables if np.isfinite(t).any()), default=0)
        found = None
        for l in range(0, max_finite + 2):
            if all(_star_pairs_ok(fg, tab, l, k) for fg, tab in tables):
                found = l
                break
        clause2.append({"k": k, "l": found, "vacuous": found is not None and found > max_finite})
    verdict = c1_ok and all(c["l"] is not None for c in clause2)
    return CoverageReport(verdict, parameters={"k_list": list(k_list), "n_max": n_max},
                          details={"clause1": clause1, "common_N": common_n, "clause2": clause2})


def _star_pairs_ok(fg: FiniteGroup, tab: np.ndarray, l: int, k: int) -> bool:
    big = np.flatnonzero(tab >= l)
    if big.size == 0:
        return True
    for h in big:
        prod = fg.mul(big, int(h))
        if np.any(tab[prod] < k):
            return False
    return True


def derived_subgroup(group) -> np.ndarray:
    """Indices of [G, G]: closure of the commutator set under products."""
    fg = finite(group)
    comms = commutator_set(fg)
    return _closure(fg, comms)


def commutator_set(fg: FiniteGroup) -> np.ndarray:
    """All [g, h] = g^-1 h^-1 g h, computed as g^-1 * (g^h)."""
    inv = fg.inv
    out = np.zeros(fg.order, dtype=bool)
    all_idx = np.arange(fg.order)
    for h in range(fg.order):
        conj = fg.lmul(int(inv[h]), fg.mul(all_idx, h))  # g^h for every g
        out[fg.mul_pairs(inv[all_idx], conj) if not fg.vectorized else _vec_pairs(fg, inv[all_idx], conj)] = True
    return np.flatnonzero(out)


def _vec_pairs(fg: FiniteGroup, ia: np.ndarray, ib: np.ndarray) -> np.ndarray:
    a = fg.adapter
    if hasattr(a, "raw_mul_pairs"):
        return fg._lookup(a.raw_codes(a.raw_mul_pairs(fg.raw[ia], fg.raw[ib])))
    return fg.mul_pairs(ia, ib)


def _closure(fg: FiniteGroup, gens: np.ndarray) -> np.ndarray:
    have = fg.mask(gens)
    have[fg.identity] = True
    frontier = np.flatnonzero(have)
    while frontier.size:
        prod = fg.products(frontier, gens)
        new = prod[~have[prod]]
        have[new] = True
        frontier = new
    return np.flatnonzero(have)


def commutator_width(group, n_max: int = 64):
    """Least N with every element a product of N commutators, or 'not-perfect'."""
    fg = finite(group)
    comms = commutator_set(fg)
    if _closure(fg, comms).size != fg.order:
        return "not-perfect"
    have = fg.mask(comms)
    k = 1
    frontier = comms
    while not have.all():
        if k >= n_max:
            return None
        prod = fg.products(frontier, comms)
        new = prod[~have[prod]]
        have[new] = True
        frontier = new
        k += 1
    return k


def eps_torsion_check(group, m: int, eps, strict: bool = False) -> list:
    """T_{m, <= eps}(G) = {g : ||g^m|| <= eps}; strict=True gives T_{m, eps}."""
    eps = Fraction(eps)
    out = []
    for g in sorted(group.elements(), key=group.key):
        v = group.norm(group.power(g, m))
        if (v < eps) if strict else (v <= eps):
            out.append(g)
    return out


def almost_uniform_check(group, eps, n: int) -> CoverageReport:
    """Every g has some 1 <= m <= n with ||g^m|| < eps; witness: least g without one."""
    eps = Fraction(eps)
    for g in sorted(group.elements(), key=group.key):
        acc = group.identity()
        for m in range(1, n + 1):
            acc = group.multiply(acc, g)
            if group.norm(acc) < eps:
                break
        else:
            return CoverageReport(False, witness=g, parameters={"eps": _q(eps), "N": n})
    return CoverageReport(True, parameters={"eps": _q(eps), "N": n})


def perturbation_check(group, g, h, n: int, eps) -> CoverageReport:
    """C_n(h) inside C_n(g) * B_{n*eps}(e), given eps > ||g^-1 h||.

    For n = 0 both conjugate balls are {e} and the inclusion holds by convention.
    """
    eps = Fraction(eps)
    fg = finite(group)
    gi, hi = _as_idx(fg, g), _as_idx(fg, h)
    dist = fg.norms()[int(fg.mul(np.array([fg.inv[gi]]), hi)[0])]
    if not eps > dist:
        raise PreconditionError(f"eps = {eps} is not above ||g^-1 h|| = {dist}")
    params = {"n": n, "eps": _q(eps)}
    if n == 0:
        return CoverageReport(True, parameters=params)
    ch = fg.conj_ball(hi, n, stop_when_full=False).members(n)
    cg = fg.conj_ball(gi, n, stop_when_full=False).members(n)
    rhs = fg.mask(fg.products(cg, fg.ball(n * eps)))
    bad = ch[~rhs[ch]]
    if bad.size:
        return CoverageReport(False, witness=fg.elements[int(bad[0])], parameters=params)
    return CoverageReport(True, parameters=params, details={"checked": int(ch.size)})


@dataclass
class TreeResult:
    verdict: bool | str
    rank: int | None
    path: tuple = ()
    small_sequences: int = 0


def tree_rank(group, family: Callable[[int], Sequence] | Sequence, grid: Sequence, depth_cap: int = 12,
              closed: bool = False) -> CoverageReport:
    """Depth-first search of the tree of small non-increasing sequences over ``grid``.

    A sequence (e_0..e_m) is small when G is not the union of X_i * B_{e_i}(e).
    rank = length of the longest small sequence.  If a small sequence reaches
    ``depth_cap`` the verdict is inconclusive and that path is reported.  A
    finite list family instead bounds the length by its own size.
    """
    fg = finite(group)
    grid = sorted({Fraction(x) for x in grid}, reverse=True)
    if not grid or any(x <= 0 for x in grid):
        raise ValueError("grid must be a nonempty set of positive rationals")
    bounded = not callable(family)
    if bounded:
        # a finite list caps the sequence length structurally, not by budget
        seq = list(family)
        depth_cap = len(seq)
        family = seq.__getitem__
    cache: dict[tuple[int, Fraction], np.ndarray] = {}

    def thick(i: int, e: Fraction) -> np.ndarray:
        if (i, e) not in cache:
            xs = np.array([_as_idx(fg, x) for x in family(i)], dtype=np.int64)
            cache[(i, e)] = fg.mask(fg.products(xs, fg.ball(e, closed)))
        return cache[(i, e)]

    best = 0
    n_small = 1  # the empty sequence
    path_hit: tuple = ()

    def dfs(seq: tuple, covered: np.ndarray) -> bool:
        nonlocal best, n_small, path_hit
        best = max(best, len(seq))
        if len(seq) >= depth_cap:
            if bounded:
                return False
            path_hit = seq
            return True
        for e in grid:
            if seq and e > seq[-1]:
                continue
            cov = covered | thick(len(seq), e)
            if cov.all():
                continue
            n_small += 1
            if dfs(seq + (e,), cov):
                return True
        return False

    hit = dfs((), np.zeros(fg.order, dtype=bool))
    params = {"grid": [_q(x) for x in grid], "depth_cap": depth_cap}
    if hit:
        return CoverageReport(INCONCLUSIVE, witness=[_q(x) for x in path_hit], parameters=params,
                              details={"rank": None, "path": [_q(x) for x in path_hit], "small_sequences": n_small})
    return CoverageReport(True, parameters=params, details={"rank": best, "small_sequences": n_small})


# --------------------------------------------------------------------------
# direct systems
# --------------------------------------------------------------------------


@dataclass
class DirectSystem:
    """A chain of stages G_0 -> G_1 -> ... with embeddings f_{i,i+1}."""

    stages: list
    steps: list[Callable[[Any], Any]]

    def embed(self, x, i: int, k: int):
        for s in range(i, k):
            x = self.steps[s](x)
        return x


def check_isometric_embeddings(system: DirectSystem, samples: int, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    for i, f in enumerate(system.steps):
        src, dst = system.stages[i], system.stages[i + 1]
        if src.enumerable():
            elems = sorted(src.elements(), key=src.key)
            pool = elems if len(elems) <= samples else rng.sample(elems, samples)
        else:
            pool = [src.random_word(rng, 8) for _ in range(samples)]
        for g in pool:
            if dst.norm(f(g)) != src.norm(g):
                return False, f"stage {i}->{i + 1}: ||f(g)|| = {dst.norm(f(g))} but ||g|| = {src.norm(g)} for g = {src.encode(g)}"
        for _ in range(min(samples, 50)):
            a, b = rng.choice(pool), rng.choice(pool)
            if dst.key(f(src.multiply(a, b))) != dst.key(dst.multiply(f(a), f(b))):
                return False, f"stage {i}->{i + 1}: embedding is not multiplicative"
    return True, ""


def direct_limit_check(system: DirectSystem, r, t, n: int, sample_budget: int = 20, seed: int = 0) -> CoverageReport:
    """Sampled check that f_{j,k}(h) lies in C_N(f_{i,k}(g), G_k) for some k >= i, j.

    g is drawn with ||g|| > r and h with ||h|| < t from uniformly chosen
    stages; the least stage k that works is reported with a certificate.
    """
    r, t = Fraction(r), Fraction(t)
    ok, why = check_isometric_embeddings(system, max(sample_budget, 20), seed)
    params = {"r": _q(r), "t": _q(t), "N": n, "samples": sample_budget, "seed": seed}
    if not ok:
        raise PreconditionError("embeddings are not isometric homomorphisms: " + why)
    rng = random.Random(seed)
    pools_g, pools_h = [], []
    for st in system.stages:
        if not st.enumerable():
            raise CapabilityError(f"stage {st.describe()} is not enumerable")
        elems = sorted(st.elements(), key=st.key)
        pools_g.append([x for x in elems if st.norm(x) > r])
        pools_h.append([x for x in elems if st.norm(x) < t])
    gs = [i for i, p in enumerate(pools_g) if p]
    hs = [j for j, p in enumerate(pools_h) if p]
    if not gs or not hs:
        return CoverageReport(True, parameters=params, details={"pairs": 0, "vacuous": True})
    first_cert = None
    records = []
    for _ in range(sample_budget):
        i, j = rng.choice(gs), rng.choice(hs)
        g, h = rng.choice(pools_g[i]), rng.choice(pools_h[j])
        stage = None
        for k in range(max(i, j), len(system.stages)):
            fg = finite(system.stages[k])
            gk = fg.index_of(system.embed(g, i, k))
            hk = fg.index_of(system.embed(h, j, k))
            target = fg.mask([hk])
            b = fg.conj_ball(gk, n, stop_when_full=True, target=target)
            if b.contains(hk, n):
                stage = k
                if first_cert is None:
                    first_cert = (k, b.certificate(hk))
                break
        records.append({"i": i, "j": j, "stage": stage})
        if stage is None:
            src_g, src_h = system.stages[i], system.stages[j]
            return CoverageReport(False, witness=(src_g.encode(g), src_h.encode(h)), parameters=params,
                                  details={"pairs": records})
    rep = CoverageReport(True, parameters=params, details={"pairs": records})
    if first_cert is not None:
        rep.certificate = first_cert[1]
        rep.details["certificate_stage"] = first_cert[0]
    return rep
