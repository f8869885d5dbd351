"""JSON task descriptors -> module calls -> report documents.

Every runner returns a :class:`Report`; ``Report.to_json`` is the canonical
serialisation (sorted keys, rationals as "p/q", no floats in verdict paths).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import coverage as cov
from .groups import CyclicGroup, IetGroup, SLGroup, SymmetricGroup
from .iet import IetMap, compose, discretize, embed_perm, inverse, random_iet, support_norm
from .linear import CapabilityError, MatFp, block_embed, jordan_length, ls_constant_probe
from .lognorm import LogNorm, norm_to_json
from .norms import NORM_IDS, check_power_monotone, verify_norm_axioms, with_catalog_norm
from .perm import (
    ConstructionIncomplete,
    NoNearbyNonexceptional,
    Perm,
    hamming_norm,
    is_exceptional,
    is_nonexceptional,
    nearby_nonexceptional,
    sigma_infinity,
)
from .ultraseq import HEURISTIC_NOTE, RULES, infinitesimal_check, make_family

SCHEMA_VERSION = "1.0"
TASKS = ("axioms", "cover", "brenner", "bigseq", "scan", "star", "iet", "sl", "ultra", "tree", "dirlim")
GROUP_TYPES = ("sym", "alt", "cyclic_lee", "sl_fp", "iet")
INCONCLUSIVE = cov.INCONCLUSIVE


class ConfigError(ValueError):
    """Malformed task descriptor; ``field`` is a JSON-pointer-like path."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field


@dataclass
class Report:
    task: str
    verdict: bool | str
    group: Any = None
    parameters: dict = field(default_factory=dict)
    witness: Any = None
    levels: list = field(default_factory=list)
    certificate: Any = None
    seed: int | None = None
    details: dict = field(default_factory=dict)
    runtime_ms: int = 0
    rows: list[dict] | None = None  # tabular payload for --format csv

    def to_json(self) -> dict:
        return jsonable({
            "schema_version": SCHEMA_VERSION,
            "task": self.task,
            "group": self.group,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "witness": self.witness,
            "levels": self.levels,
            "certificate": self.certificate,
            "seed": self.seed,
            "details": self.details,
            "runtime_ms": self.runtime_ms,
        })


def jsonable(x: Any) -> Any:
    """Recursively convert to JSON-ready values; rationals become "p/q" strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, (Fraction, LogNorm)):
        return norm_to_json(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "infinite"
        if math.isnan(x):
            return None
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Perm):
        return x.to_json()
    if isinstance(x, MatFp):
        return x.to_json()
    if isinstance(x, IetMap):
        return x.to_json()
    if hasattr(x, "item"):  # numpy scalar
        return jsonable(x.item())
    raise TypeError(f"cannot serialise {type(x).__name__}")


# --------------------------------------------------------------------------
# descriptor parsing
# --------------------------------------------------------------------------


def _need(obj: dict, key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise ConfigError(f"missing field {key!r}", f"{where}/{key}")
    return obj[key]


def _rational(x: Any, where: str) -> Fraction:
    try:
        if isinstance(x, float):
            raise ValueError("floats are not accepted; write rationals as \"p/q\"")
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational: {x!r} ({exc})", where) from None


def _int(x: Any, where: str, lo: int | None = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ConfigError(f"expected an integer, got {x!r}", where)
    if lo is not None and x < lo:
        raise ConfigError(f"expected an integer >= {lo}, got {x}", where)
    return x


def parse_norm(obj: Any, where: str) -> tuple[str | None, Fraction | None]:
    if obj is None:
        return None, None
    if isinstance(obj, str):
        norm_id, scale = obj, None
    elif isinstance(obj, dict):
        norm_id = obj.get("id")
        scale = _rational(obj["scale"], f"{where}/scale") if "scale" in obj else None
        if scale is not None and scale <= 0:
            raise ConfigError("scale must be positive", f"{where}/scale")
    else:
        raise ConfigError("norm must be an id string or {\"id\", \"scale\"}", where)
    if norm_id is not None and norm_id not in NORM_IDS:
        raise ConfigError(f"unknown norm id {norm_id!r}", f"{where}/id" if isinstance(obj, dict) else where)
    return norm_id, scale


def build_group(desc: Any, where: str = "/group"):
    if not isinstance(desc, dict):
        raise ConfigError("group descriptor must be an object", where)
    kind = _need(desc, "type", where)
    if kind not in GROUP_TYPES:
        raise ConfigError(f"unknown group type {kind!r}", f"{where}/type")
    if kind in ("sym", "alt"):
        g = SymmetricGroup(_int(_need(desc, "n", where), f"{where}/n", 1), alternating=kind == "alt")
    elif kind == "cyclic_lee":
        if "m" in desc:
            m = _int(desc["m"], f"{where}/m", 1)
        else:
            m = 2 ** _int(_need(desc, "log2m", where), f"{where}/log2m", 0)
        g = CyclicGroup(m)
    elif kind == "sl_fp":
        n = _int(_need(desc, "n", where), f"{where}/n", 1)
        p = _int(_need(desc, "p", where), f"{where}/p", 2)
        try:
            MatFp.identity(n, p)
        except ValueError as exc:
            raise ConfigError(str(exc), f"{where}/p") from None
        g = SLGroup(n, p, budget=_int(desc.get("budget", 10**6), f"{where}/budget", 1))
    else:
        gens = desc.get("generators", [])
        try:
            g = IetGroup([IetMap.from_json(x) for x in gens])
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad IET generator: {exc}", f"{where}/generators") from None
    norm_id, scale = parse_norm(desc.get("norm"), f"{where}/norm")
    if norm_id is not None or scale is not None:
        try:
            g = with_catalog_norm(g, norm_id or g.norm_id, scale)
        except (ValueError, CapabilityError) as exc:
            raise ConfigError(str(exc), f"{where}/norm") from None
    return g


def decode(group, obj: Any, where: str):
    try:
        return group.decode(obj)
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"bad element {obj!r}: {exc}", where) from None


def _seed(cfg: dict, required: bool) -> int | None:
    if "seed" not in cfg or cfg["seed"] is None:
        if required:
            raise ConfigError("this task is randomized and needs an explicit seed", "/seed")
        return None
    s = _int(cfg["seed"], "/seed")
    if not -(2**63) <= s < 2**64:
        raise ConfigError("seed must fit in 64 bits", "/seed")
    return s


def _eps_list(raw: Any, where: str) -> list[Fraction]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("expected a nonempty list of rationals", where)
    vals = [_rational(x, f"{where}/{i}") for i, x in enumerate(raw)]
    if any(v <= 0 for v in vals):
        raise ConfigError("radii must be positive", where)
    return vals


def _rt(cfg: dict) -> tuple[Fraction, Fraction]:
    r = _rational(_need(cfg, "r", ""), "/r")
    t = _rational(_need(cfg, "t", ""), "/t")
    if not t > r > 0:
        raise ConfigError("need t > r > 0", "/t")
    return r, t


# --------------------------------------------------------------------------
# runners
# --------------------------------------------------------------------------


def run_axioms(cfg: dict) -> Report:
    group = build_group(_need(cfg, "group", ""))
    mode = cfg.get("mode", "exhaustive")
    if mode not in ("exhaustive", "sampled"):
        raise ConfigError(f"unknown mode {mode!r}", "/mode")
    seed = _seed(cfg, mode == "sampled")
    expect = cfg.get("expect", "norm")
    if expect not in ("norm", "pseudo"):
        raise ConfigError("expect must be \"norm\" or \"pseudo\"", "/expect")
    samples = _int(cfg.get("samples", 2000), "/samples", 1)
    word_length = _int(cfg.get("word_length", 8), "/word_length", 0)
    rep = verify_norm_axioms(group, mode, seed, samples, word_length)
    ok = rep.is_norm if expect == "norm" else (rep.is_pseudo_norm and not rep.axiom_results["3"])
    details = rep.to_json(group.encode)
    params = {"mode": mode, "expect": expect}
    if mode == "sampled":
        params.update(samples=samples, word_length=word_length)
    witness = None
    if not ok:
        bad = next(a for a in ("0", "1", "2", "3") if rep.axiom_results[a] != (a != "3" or expect == "norm"))
        witness = {"axiom": bad, "pair": details["counterexamples"].get(bad)}
    if "max_power" in cfg:
        mp = _int(cfg["max_power"], "/max_power", 1)
        pw = check_power_monotone(group, mp, mode, seed)
        params["max_power"] = mp
        details["power_monotone"] = pw.passed
        details["power_checked"] = pw.checked
        if not pw.passed:
            ok = False
            witness = witness or {"power": [group.encode(pw.counterexample[0]), pw.counterexample[1]]}
    return Report("axioms", ok, group.describe(), params, witness, seed=seed, details=details)


def run_cover(cfg: dict) -> Report:
    group = build_group(_need(cfg, "group", ""))
    sets_raw = _need(cfg, "sets", "")
    eps = _eps_list(_need(cfg, "eps", ""), "/eps")
    if not isinstance(sets_raw, list) or len(sets_raw) != len(eps):
        raise ConfigError("sets and eps must be lists of equal length", "/sets")
    sets = []
    for i, s in enumerate(sets_raw):
        if s == "all":
            sets.append(list(group.elements()))
        else:
            sets.append([decode(group, x, f"/sets/{i}/{j}") for j, x in enumerate(s)])
    closed = bool(cfg.get("closed", False))
    r = cov.check_thickened_cover(group, sets, eps, closed)
    params = dict(r.parameters, sets=[[group.encode(x) for x in s] for s in sets])
    return Report("cover", r.verdict, group.describe(), params,
                  None if r.witness is None else group.encode(r.witness), details=r.details)


def _nonexc_full_support_reps(fg: cov.FiniteGroup) -> list[int]:
    n = fg.adapter.n
    return [i for i in fg.class_reps()
            if hamming_norm(fg.elements[i]) == n and is_nonexceptional(fg.elements[i])]


def run_brenner(cfg: dict) -> Report:
    """mode c4: C_k(sigma, A_n) = A_n for sigma (or every full-support nonexceptional class).
    mode repair: nearby nonexceptional sigma for tau.  mode sigma_infinity: the full-support product."""
    mode = cfg.get("mode", "c4")
    n = _int(_need(cfg, "n", ""), "/n", 1)
    if mode == "c4":
        if n < 5:
            raise ConfigError("need n >= 5", "/n")
        k = _int(cfg.get("k", 4), "/k", 1)
        group = SymmetricGroup(n, alternating=True)
        fg = cov.finite(group)
        if "sigma" in cfg:
            s = decode(group, cfg["sigma"], "/sigma")
            reps = [fg.index_of(s)]
        else:
            reps = _nonexc_full_support_reps(fg)
        per = []
        for i in reps:
            b = fg.conj_ball(i, k)
            per.append({"sigma": fg.elements[i], "levels": b.sizes})
            if b.sizes[k - 1] != fg.order:
                missing = int(np.flatnonzero(~b.mask(k))[0]) if b.computed >= k or b.stable else None
                return Report("brenner", False, group.describe(), {"n": n, "k": k, "mode": mode},
                              witness={"sigma": fg.elements[i], "uncovered": None if missing is None else fg.elements[missing]},
                              levels=b.sizes, details={"classes": per})
        cert = None
        if reps:
            b = fg.conj_ball(reps[0], k)
            lv = b.level.copy()
            lv[fg.identity] = -1
            last = int(np.argmax(lv))  # least non-identity element on the deepest level
            cert = b.certificate(last).to_json(group.encode)
        return Report("brenner", True, group.describe(), {"n": n, "k": k, "mode": mode},
                      levels=per[0]["levels"] if per else [], certificate=cert,
                      details={"classes": per, "checked": len(per)})
    if mode == "repair":
        group = SymmetricGroup(n)
        tau = decode(group, _need(cfg, "tau", ""), "/tau")
        try:
            sigma = nearby_nonexceptional(tau)
        except NoNearbyNonexceptional as exc:
            return Report("brenner", False, group.describe(), {"n": n, "mode": mode},
                          witness={"tau": tau}, details={"reason": str(exc)})
        except ValueError as exc:
            raise ConfigError(str(exc), "/tau") from None
        dist = hamming_norm(tau * sigma.inverse())
        return Report("brenner", True, group.describe(), {"n": n, "mode": mode}, witness=None,
                      details={"tau": tau, "sigma": sigma, "distance": dist})
    if mode == "sigma_infinity":
        seed = _seed(cfg, True)
        sig = Perm.parse(_need(cfg, "sigma", ""), None)
        try:
            full, cert = sigma_infinity(sig, n, seed=seed)
        except ConstructionIncomplete as exc:
            return Report("brenner", INCONCLUSIVE, {"type": "sym", "n": n}, {"n": n, "mode": mode}, seed=seed,
                          details={"reason": str(exc)},
                          certificate=exc.partial.to_json() if exc.partial else None)
        except ValueError as exc:
            raise ConfigError(str(exc), "/sigma") from None
        return Report("brenner", True, {"type": "sym", "n": n}, {"n": n, "mode": mode}, seed=seed,
                      certificate=cert.to_json(), details={"product": full, "factors": len(cert)})
    raise ConfigError(f"unknown brenner mode {mode!r}", "/mode")


def run_bigseq(cfg: dict) -> Report:
    group = build_group(_need(cfg, "group", ""))
    r, t = _rt(cfg)
    eps = _eps_list(_need(cfg, "eps", ""), "/eps")
    start = _int(cfg.get("start", 0), "/start", 0)
    rep = cov.is_rt_big(group, eps, r, t, start=start, closed=bool(cfg.get("closed", False)))
    wit = None if rep.witness is None else {"g": group.encode(rep.witness[0]), "h": group.encode(rep.witness[1])}
    return Report("bigseq", rep.verdict, group.describe(), rep.parameters, wit, rep.levels, details=rep.details)


def _family(cfg: dict) -> list:
    fam = _need(cfg, "family", "")
    if not isinstance(fam, list) or not fam:
        raise ConfigError("family must be a nonempty list of group descriptors", "/family")
    return [build_group(d, f"/family/{i}") for i, d in enumerate(fam)]


def run_scan(cfg: dict) -> Report:
    fam = _family(cfg)
    r, t = _rt(cfg)
    eps = _rational(cfg.get("epsilon", 0), "/epsilon")
    n_max = _int(cfg.get("n_max", 64), "/n_max", 1)
    rep = cov.uniformity_scan(fam, r, t, eps, n_max)
    wit = None
    if rep.witness is not None:
        g, x = rep.witness
        wit = {"group": g.describe(), "g": g.encode(x)}
    det = dict(rep.details)
    det["per_group"] = [{"group": d["group"], "N": d["N"],
                         "attained_by": None if d["attained_by"] is None else fam[i].encode(d["attained_by"])}
                        for i, d in enumerate(det.get("per_group", []))]
    return Report("scan", rep.verdict, [g.describe() for g in fam], rep.parameters, wit, details=det)


def run_star(cfg: dict) -> Report:
    fam = _family(cfg)
    n_max = cfg.get("n_max")
    if n_max is not None:
        n_max = _int(n_max, "/n_max", 1)
    k_list = cfg.get("k_list", [])
    if not isinstance(k_list, list):
        raise ConfigError("k_list must be a list", "/k_list")
    k_list = [_int(k, f"/k_list/{i}", 0) for i, k in enumerate(k_list)]
    rep = cov.star_scan(fam, n_max, k_list)
    det = dict(rep.details)
    det["clause1"] = [dict(c, witness=None if c["witness"] is None else fam[i].encode(c["witness"]))
                      for i, c in enumerate(det["clause1"])]
    return Report("star", rep.verdict, [g.describe() for g in fam], rep.parameters, details=det)


def run_iet(cfg: dict) -> Report:
    op = cfg.get("op", "axioms")
    group = IetGroup()
    desc = {"type": "iet", "norm": "iet_support"}

    def m(key: str) -> IetMap:
        return decode(group, _need(cfg, key, ""), f"/{key}")

    if op == "compose":
        f, g = m("f"), m("g")
        return Report("iet", True, desc, {"op": op}, details={"result": compose(f, g), "norm": support_norm(compose(f, g))})
    if op == "inverse":
        f = m("f")
        return Report("iet", True, desc, {"op": op}, details={"result": inverse(f)})
    if op == "norm":
        f = m("f")
        return Report("iet", True, desc, {"op": op}, details={"norm": support_norm(f)})
    if op == "discretize":
        f = m("f")
        n = _int(_need(cfg, "n", ""), "/n", 1)
        try:
            d = discretize(f, n)
        except ValueError as exc:
            raise ConfigError(str(exc), "/n") from None
        return Report("iet", True, desc, {"op": op, "n": n},
                      details={"sigma": d.sigma, "snapped": d.snapped, "distance": d.distance})
    if op == "embed":
        n = _int(_need(cfg, "n", ""), "/n", 1)
        delta = decode(SymmetricGroup(n), _need(cfg, "perm", ""), "/perm")
        e = embed_perm(delta)
        iso = support_norm(e) == Fraction(hamming_norm(delta), n)
        return Report("iet", iso, desc, {"op": op, "n": n}, details={"result": e, "norm": support_norm(e)})
    if op == "axioms":
        seed = _seed(cfg, True)
        samples = _int(cfg.get("samples", 1000), "/samples", 1)
        rng = random.Random(seed)
        e = IetMap.identity()
        for k in range(samples):
            f, g, h = random_iet(rng), random_iet(rng), random_iet(rng)
            checks = {
                "associative": compose(compose(f, g), h) == compose(f, compose(g, h)),
                "identity": compose(f, e) == f == compose(e, f),
                "inverse": compose(f, inverse(f)) == e,
                "norm_subadditive": support_norm(compose(f, g)) <= support_norm(f) + support_norm(g),
                "norm_conjugation": support_norm(compose(compose(inverse(g), f), g)) == support_norm(f),
            }
            bad = [c for c, ok in checks.items() if not ok]
            if bad:
                return Report("iet", False, desc, {"op": op, "samples": samples}, seed=seed,
                              witness={"failed": bad, "triple": [f, g, h], "index": k})
        return Report("iet", True, desc, {"op": op, "samples": samples}, seed=seed)
    raise ConfigError(f"unknown iet op {op!r}", "/op")


def run_sl(cfg: dict) -> Report:
    op = cfg.get("op", "probe")
    n = _int(_need(cfg, "n", ""), "/n", 1)
    p = _int(_need(cfg, "p", ""), "/p", 2)
    desc = {"type": "sl_fp", "n": n, "p": p, "norm": "jordan"}
    try:
        MatFp.identity(n, p)
    except ValueError as exc:
        raise ConfigError(str(exc), "/p") from None
    if op == "jordan":
        a = decode(SLGroup(n, p), _need(cfg, "matrix", ""), "/matrix")
        return Report("sl", True, desc, {"op": op}, details={"jordan": jordan_length(a)})
    if op == "probe":
        if n < 2:
            raise ConfigError("need n >= 2", "/n")
        budget = _int(cfg.get("budget", 10**6), "/budget", 1)
        pr = ls_constant_probe(n, p, budget)
        js = pr.to_json()
        ok = pr.all_finite and pr.self_consistent
        wit = None if ok else {"failures": js["failures"]}
        rows = [{"matrix": ";".join(",".join(map(str, r)) for r in x["matrix"]), "jordan": x["jordan"], "N": x["N"]}
                for x in js["rows"]]
        return Report("sl", ok, desc, {"op": op}, wit,
                      details={k: v for k, v in js.items() if k != "failures"}, rows=rows)
    raise ConfigError(f"unknown sl op {op!r}", "/op")


def run_ultra(cfg: dict) -> Report:
    rule = _need(cfg, "rule", "")
    if rule not in RULES:
        raise ConfigError(f"unknown sequence rule {rule!r}", "/rule")
    rng_ = _need(cfg, "range", "")
    if not (isinstance(rng_, list) and len(rng_) == 2):
        raise ConfigError("range must be [lo, hi]", "/range")
    lo, hi = _int(rng_[0], "/range/0"), _int(rng_[1], "/range/1")
    power = _int(cfg.get("power", 1), "/power", 1)
    tol = _rational(cfg.get("tol", 0), "/tol")
    params = {k: cfg[k] for k in ("residue", "k") if k in cfg}
    fam = make_family(rule, **params)
    try:
        rep = infinitesimal_check(fam, power, lo, hi, tol, strict=bool(cfg.get("strict", False)))
    except ValueError as exc:
        raise ConfigError(str(exc), "/range") from None
    details = {"n0": rep.n0, "max_tail_norm": rep.max_tail_norm, "monotone": rep.monotone,
               "profile": [[n, v] for n, v in rep.profile], "note": HEURISTIC_NOTE}
    if rep.bound_ok is not None:
        details["bound_ok"] = rep.bound_ok
        details["bound_failures"] = rep.bound_failures
    verdict = rep.verdict and rep.bound_ok is not False
    return Report("ultra", verdict, {"rule": rule, **params},
                  {"rule": rule, "range": [lo, hi], "power": power, "tol": tol}, details=details,
                  rows=[{"n": n, "norm": norm_to_json(v)} for n, v in rep.profile])


def run_tree(cfg: dict) -> Report:
    group = build_group(_need(cfg, "group", ""))
    grid = _eps_list(_need(cfg, "grid", ""), "/grid")
    depth_cap = _int(cfg.get("depth_cap", 12), "/depth_cap", 1)
    fam_desc = _need(cfg, "internal_family", "")
    if isinstance(fam_desc, dict) and fam_desc.get("kind") == "conj_ball":
        fg = cov.finite(group)
        gi = fg.index_of(decode(group, _need(fam_desc, "g", "/internal_family"), "/internal_family/g"))
        ball_obj = fg.conj_ball(gi, depth_cap, stop_when_full=False)

        def family(m: int) -> list:
            return [fg.elements[i] for i in ball_obj.members(min(m, ball_obj.computed) if not ball_obj.stable else m)] if m else [group.identity()]
    elif isinstance(fam_desc, list):
        family = [[decode(group, x, f"/internal_family/{i}/{j}") for j, x in enumerate(s)] if s != "all"
                  else list(group.elements()) for i, s in enumerate(fam_desc)]
    else:
        raise ConfigError("internal_family must be a list of sets or {\"kind\":\"conj_ball\",\"g\":...}", "/internal_family")
    rep = cov.tree_rank(group, family, grid, depth_cap)
    return Report("tree", rep.verdict, group.describe(), rep.parameters, rep.witness, details=rep.details)


def _embedding(kind: str, src, dst, where: str) -> Callable:
    if kind == "block":
        if not (isinstance(src, SLGroup) and isinstance(dst, SLGroup)) or dst.n % src.n or src.p != dst.p:
            raise ConfigError("block embedding needs SL stages with n | m over one field", where)
        return lambda a: block_embed(a, dst.n)
    if kind == "fix":
        if not (isinstance(src, SymmetricGroup) and isinstance(dst, SymmetricGroup)) or dst.n < src.n:
            raise ConfigError("fix embedding needs permutation stages of growing degree", where)
        return lambda a: a.extend(dst.n)
    raise ConfigError(f"unknown embedding {kind!r}", where)


def run_dirlim(cfg: dict) -> Report:
    stages_raw = _need(cfg, "stages", "")
    if not isinstance(stages_raw, list) or len(stages_raw) < 1:
        raise ConfigError("stages must be a nonempty list", "/stages")
    stages = [build_group(d, f"/stages/{i}") for i, d in enumerate(stages_raw)]
    kind = cfg.get("embedding", "block")
    steps = [_embedding(kind, a, b, "/embedding") for a, b in zip(stages, stages[1:])]
    r, t = _rt(cfg)
    big_n = _int(_need(cfg, "N", ""), "/N", 0)
    seed = _seed(cfg, True)
    samples = _int(cfg.get("samples", 20), "/samples", 1)
    system = cov.DirectSystem(stages, steps)
    try:
        rep = cov.direct_limit_check(system, r, t, big_n, samples, seed)
    except cov.PreconditionError as exc:
        raise ConfigError(str(exc), "/stages") from None
    cert = None
    if rep.certificate is not None:
        k = rep.details["certificate_stage"]
        cert = dict(rep.certificate.to_json(stages[k].encode), stage=k)
    return Report("dirlim", rep.verdict, [s.describe() for s in stages], rep.parameters, rep.witness,
                  certificate=cert, seed=seed, details=rep.details)


RUNNERS: dict[str, Callable[[dict], Report]] = {
    "axioms": run_axioms,
    "cover": run_cover,
    "brenner": run_brenner,
    "bigseq": run_bigseq,
    "scan": run_scan,
    "star": run_star,
    "iet": run_iet,
    "sl": run_sl,
    "ultra": run_ultra,
    "tree": run_tree,
    "dirlim": run_dirlim,
}


def run(cfg: Any) -> Report:
    if not isinstance(cfg, dict):
        raise ConfigError("task descriptor must be a JSON object", "")
    if isinstance(cfg.get("parameters"), dict):
        cfg = {**cfg["parameters"], **{k: v for k, v in cfg.items() if k != "parameters"}}
    task = _need(cfg, "task", "")
    if task not in RUNNERS:
        raise ConfigError(f"unknown task {task!r}", "/task")
    t0 = time.perf_counter()
    rep = RUNNERS[task](cfg)
    rep.runtime_ms = int((time.perf_counter() - t0) * 1000)
    if rep.seed is None and cfg.get("seed") is not None:
        rep.seed = cfg["seed"]
    return rep


def catalog() -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tasks": list(TASKS),
        "group_types": {
            "sym": {"fields": ["n"], "default_norm": "hamming"},
            "alt": {"fields": ["n"], "default_norm": "hamming"},
            "cyclic_lee": {"fields": ["m | log2m"], "default_norm": "lee"},
            "sl_fp": {"fields": ["n", "p", "budget?"], "default_norm": "jordan"},
            "iet": {"fields": ["generators?"], "default_norm": "iet_support"},
        },
        "norm_ids": list(NORM_IDS),
        "norm_wrapper": {"id": "<norm id>", "scale": "p/q"},
        "sequence_rules": dict(RULES),
        "exit_codes": {"0": "verified true", "1": "verified false", "2": "inconclusive", "3": "config error"},
    }
