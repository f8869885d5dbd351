from fractions import Fraction as F
from math import inf

import numpy as np
import pytest

from normcover import coverage as cov
from normcover.groups import CyclicGroup, SLGroup, SymmetricGroup
from normcover.linear import block_embed
from normcover.norms import with_catalog_norm
from normcover.perm import Perm

from oracles import all_commutators, sym


def nh(n, alternating=False):
    return with_catalog_norm(SymmetricGroup(n, alternating), "hamming_normalized")


def P(s, n):
    return Perm.parse(s, n)


def members(fg, ball, k):
    return {fg.elements[i] for i in ball.members(k)}


def test_conj_ball_identity():
    a4 = SymmetricGroup(4, alternating=True)
    fg = cov.finite(a4)
    b = fg.conj_ball(fg.identity, 5)
    assert b.sizes == [1] * 5
    assert fg.normal_gen_number(fg.identity) == inf


def test_conj_ball_a4():
    fg = cov.finite(SymmetricGroup(4, alternating=True))
    g = fg.index_of(P("(1 2 3)", 4))
    b = fg.conj_ball(g, 3)
    assert members(fg, b, 1) == {p for p in fg.elements if p.cycle_type() == (3, 1)}
    assert b.sizes == [8, 12, 12]
    assert fg.normal_gen_number(g) == 2
    assert fg.normal_gen_number(fg.index_of(P("(1 2)(3 4)", 4))) == inf


def test_conj_ball_s3_stabilises():
    fg = cov.finite(SymmetricGroup(3))
    b = fg.conj_ball(fg.index_of(P("(1 2 3)", 3)), 6)
    assert b.sizes == [2, 3, 3, 3, 3, 3]
    assert b.stable
    assert members(fg, b, 4) == {Perm.identity(3), P("(1 2 3)", 3), P("(1 3 2)", 3)}


def test_certificates_replay():
    g = SymmetricGroup(5, alternating=True)
    fg = cov.finite(g)
    b = fg.conj_ball(fg.index_of(P("(1 2 3 4 5)", 5)), 4)
    for x in b.members(4):
        cert = b.certificate(int(x))
        assert cert.verify()
        assert len(cert) == b.level[x]


def test_ball_examples():
    s3 = nh(3)
    assert cov.ball(s3, 0) == []
    assert cov.ball(s3, 0, strict=False) == [Perm.identity(3)]
    assert set(cov.ball(s3, F(9, 10))) == {Perm.identity(3), P("(1 2)", 3), P("(1 3)", 3), P("(2 3)", 3)}
    assert len(cov.ball(s3, 2)) == 6


def test_thickened_cover_examples():
    s3 = nh(3)
    assert cov.check_thickened_cover(s3, [list(s3.elements())], [F(1, 100)]).verdict is True
    r = cov.check_thickened_cover(s3, [[Perm.identity(3)]], [F(7, 10)])
    assert r.verdict is False and r.witness.cycle_type() == (3,)
    r = cov.check_thickened_cover(s3, [[Perm.identity(3)], [P("(1 2 3)", 3), P("(1 3 2)", 3)]], [F(7, 10), F(1, 10)])
    assert r.verdict is True
    with pytest.raises(ValueError):
        cov.check_thickened_cover(s3, [[Perm.identity(3)]], [F(1), F(1)])


def test_rt_big_examples():
    r = cov.is_rt_big(nh(3), [F(1, 10)] * 7, F(9, 10), F(101, 100))
    assert r.verdict is False
    g, h = r.witness
    assert g.cycle_type() == (3,) and h.cycle_type() == (2, 1)
    assert cov.is_rt_big(nh(5, True), [F(1, 2)] * 29, F(1, 2), F(101, 100)).verdict is True
    # eps_0 > t: the n = 0 term alone covers B_t(e)
    assert cov.is_rt_big(nh(3), [F(2)], F(1, 2), F(3, 2)).verdict is True
    assert cov.is_rt_big(nh(3), [F(2)], F(1, 2), F(3, 2), start=1).verdict is False
    with pytest.raises(ValueError):
        cov.is_rt_big(nh(3), [F(1)], F(1), F(1, 2))


def test_uniformity_scan_examples():
    r = cov.uniformity_scan([nh(5, True)], F(1, 2), F(101, 100), 0)
    assert r.verdict is True and r.details["N"] <= 24
    r = cov.uniformity_scan([nh(3)], F(9, 10), F(101, 100), 0)
    assert r.verdict is False and r.witness[1].cycle_type() == (3,)
    r = cov.uniformity_scan([nh(1)], F(1, 2), F(101, 100), 0)
    assert r.verdict is True and r.details["N"] == 0


def test_uniformity_scan_budget_is_inconclusive():
    r = cov.uniformity_scan([nh(6, True)], F(1, 2), F(101, 100), 0, n_max=1)
    assert r.verdict == cov.INCONCLUSIVE


def test_uniformity_scan_with_thickening():
    # a wide thickening only helps
    a = cov.uniformity_scan([nh(5, True)], F(1, 2), F(101, 100), 0).details["N"]
    b = cov.uniformity_scan([nh(5, True)], F(1, 2), F(101, 100), F(4, 5)).details["N"]
    assert b <= a


def test_star_scan_examples():
    r = cov.star_scan([SymmetricGroup(4, True)])
    c1 = r.details["clause1"][0]
    assert c1["N"] == 2 and c1["witness"].cycle_type() == (3, 1)
    r = cov.star_scan([SymmetricGroup(5, True), SymmetricGroup(6, True)])
    assert r.details["common_N"] <= 4
    r = cov.star_scan([SymmetricGroup(5, True)], k_list=[3])
    c2 = r.details["clause2"][0]
    assert c2["l"] is not None and c2["vacuous"]
    assert c2["l"] == r.details["clause1"][0]["max_finite"] + 1


def test_star_clause2_against_brute_force():
    g = SymmetricGroup(4, True)
    fg = cov.finite(g)
    tab = cov.normal_gen_table(g)
    for k in (1, 2, 3):
        l = cov.star_scan([g], k_list=[k]).details["clause2"][0]["l"]
        for ll in range(0, l + 1):
            holds = all(
                tab[fg.index_of(fg.elements[a] * fg.elements[b])] >= k
                for a in range(fg.order) for b in range(fg.order)
                if tab[a] >= ll and tab[b] >= ll
            )
            assert holds == (ll == l)


def test_derived_and_width():
    a4 = {p.images for p in SymmetricGroup(4, True).elements()}
    d = cov.derived_subgroup(SymmetricGroup(4))
    fg = cov.finite(SymmetricGroup(4))
    assert {fg.elements[i].images for i in d} == a4
    assert cov.commutator_width(SymmetricGroup(5, True)) == 1
    assert cov.commutator_width(CyclicGroup(6)) == "not-perfect"
    assert cov.commutator_width(SymmetricGroup(4)) == "not-perfect"
    assert cov.commutator_width(SymmetricGroup(1)) == 1


def test_commutator_set_matches_oracle():
    fg = cov.finite(SymmetricGroup(4))
    ours = {tuple(x - 1 for x in fg.elements[i].images) for i in cov.commutator_set(fg)}
    assert ours == all_commutators(sym(4))


def test_torsion_and_almost_uniform():
    s4 = nh(4)
    assert cov.eps_torsion_check(s4, 1, 0) == [Perm.identity(4)]
    t = cov.eps_torsion_check(CyclicGroup(8), 2, F(1, 2))
    assert {0, 4} <= set(t)
    assert t == [0, 1, 3, 4, 5, 7]
    assert cov.almost_uniform_check(s4, F(1, 10), 12).verdict is True
    r = cov.almost_uniform_check(s4, F(1, 10), 2)
    assert r.verdict is False and r.witness.order() > 2


def test_perturbation_examples():
    s5 = nh(5)
    g, h = P("(1 2 3)", 5), P("(1 2 4)", 5)
    assert cov.perturbation_check(s5, g, g, 2, F(1, 10)).verdict is True
    assert cov.perturbation_check(s5, g, h, 2, F(4, 5)).verdict is True
    assert cov.perturbation_check(s5, g, h, 0, F(4, 5)).verdict is True
    with pytest.raises(cov.PreconditionError):
        cov.perturbation_check(s5, g, h, 1, F(3, 5))  # ||g^-1 h|| = 3/5


def test_tree_rank_examples():
    s3 = nh(3)
    fg = cov.finite(s3)
    tr = fg.conj_ball(fg.index_of(P("(1 2)", 3)), 8, stop_when_full=False)
    fam = lambda m: [fg.elements[i] for i in tr.members(m)]  # noqa: E731
    r = cov.tree_rank(s3, fam, [F(1, 5)], depth_cap=8)
    assert r.verdict is True and r.details["rank"] == 2
    r = cov.tree_rank(s3, lambda m: list(s3.elements()), [F(1, 5)])
    assert r.details["rank"] == 0
    c3 = fg.conj_ball(fg.index_of(P("(1 2 3)", 3)), 8, stop_when_full=False)
    r = cov.tree_rank(s3, lambda m: [fg.elements[i] for i in c3.members(m)], [F(1, 5)], depth_cap=6)
    assert r.verdict == cov.INCONCLUSIVE and len(r.details["path"]) == 6


def test_tree_rank_grid_is_nonincreasing():
    s3 = nh(3)
    e = [Perm.identity(3)]
    # with radii 1 and 1/2 the sequence (1/2, 1) is not explored
    r = cov.tree_rank(s3, [e, e, e], [F(1, 2), F(1)])
    assert r.verdict is True and r.details["rank"] == 3
    # 1 + 2 + 3 + 4 non-increasing sequences of length 0..3
    assert r.details["small_sequences"] == 10


def test_direct_limit_sl():
    stages = [SLGroup(2, 2), SLGroup(4, 2)]
    system = cov.DirectSystem(stages, [lambda a: block_embed(a, 4)])
    r = cov.direct_limit_check(system, F(1, 4), F(101, 100), 8, sample_budget=6, seed=1)
    assert r.verdict is True
    assert r.certificate.verify(lambda x, y: x * y, lambda x: x.inverse(), stages[r.details["certificate_stage"]].identity())


def test_direct_limit_same_element():
    g = SymmetricGroup(5, True)
    system = cov.DirectSystem([g], [])
    fg = cov.finite(g)
    x = fg.index_of(P("(1 2 3)", 5))
    assert fg.conj_ball(x, 1).contains(x, 1)
    assert cov.direct_limit_check(system, F(1, 2), 6, 4, sample_budget=5, seed=0).verdict is True


def test_direct_limit_rejects_non_isometric():
    system = cov.DirectSystem([nh(5), nh(10)], [lambda a: a.extend(10)])
    with pytest.raises(cov.PreconditionError):
        cov.direct_limit_check(system, F(1, 5), F(1), 2, seed=0)


def test_generators_must_generate():
    class Half(SymmetricGroup):
        def generators(self):
            return [Perm.parse("(1 2)", self.n)]

    with pytest.raises(ValueError):
        cov.FiniteGroup(Half(3))
