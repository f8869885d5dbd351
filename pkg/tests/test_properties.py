from fractions import Fraction as F
from math import ceil

from hypothesis import given, settings
from hypothesis import strategies as st

from normcover import coverage as cov
from normcover.groups import CyclicGroup, SymmetricGroup
from normcover.iet import IetMap, compose, inverse, random_iet, support_norm
from normcover.norms import lee_norm, scale_norm, with_catalog_norm
from normcover.perm import Perm

A4 = cov.finite(SymmetricGroup(4, alternating=True))
S4 = cov.finite(SymmetricGroup(4))
S3N = with_catalog_norm(SymmetricGroup(3), "hamming_normalized")
A5N = with_catalog_norm(SymmetricGroup(5, alternating=True), "hamming_normalized")

fin_groups = st.sampled_from([A4, S4])
perms5 = st.permutations(range(1, 6)).map(lambda xs: Perm(tuple(xs)))


@st.composite
def group_and_elements(draw):
    fg = draw(fin_groups)
    idx = st.integers(0, fg.order - 1)
    return fg, draw(idx), draw(idx)


@settings(max_examples=60, deadline=None)
@given(group_and_elements(), st.integers(1, 4))
def test_conj_ball_monotone_symmetric_invariant(data, k):
    fg, g, h = data
    b = fg.conj_ball(g, k + 1, stop_when_full=False)
    cur, nxt = b.mask(k), b.mask(k + 1)
    assert not (cur & ~nxt).any()
    members = b.members(k)
    assert cur[fg.inv[members]].all()
    # conjugating by h permutes C_k
    conj = fg.mul(fg.lmul(fg.inv[h], members), h)
    assert cur[conj].all()


@settings(max_examples=60, deadline=None)
@given(group_and_elements())
def test_normal_generation_is_class_function(data):
    fg, g, h = data
    conj = int(fg.mul(fg.lmul(fg.inv[h], [g]), h)[0])
    assert fg.normal_gen_number(g) == fg.normal_gen_number(conj)


eps_lists = st.lists(st.fractions(min_value=F(1, 10), max_value=1, max_denominator=10), min_size=1, max_size=6)
rt = st.tuples(st.fractions(min_value=F(1, 10), max_value=1, max_denominator=10),
               st.fractions(min_value=0, max_value=F(1, 2), max_denominator=10))


@settings(max_examples=50, deadline=None)
@given(eps_lists, rt, st.fractions(min_value=0, max_value=F(1, 2), max_denominator=10))
def test_rt_big_monotone(eps, rt_pair, bump):
    r, dt = rt_pair
    t = r + dt + F(1, 100)
    base = cov.is_rt_big(S3N, eps, r, t).verdict
    if base is True:
        # larger radii, larger r (fewer g to handle) and a longer sequence keep the property
        assert cov.is_rt_big(S3N, [e + bump for e in eps], r, t).verdict is True
        assert cov.is_rt_big(S3N, eps, (r + t) / 2, t).verdict is True
        assert cov.is_rt_big(S3N, eps + [F(1, 10)], r, t).verdict is True


@given(perms5, st.fractions(min_value=F(1, 10), max_value=5, max_denominator=12),
       st.fractions(min_value=F(1, 10), max_value=5, max_denominator=12))
def test_scale_composition(p, a, b):
    g = with_catalog_norm(SymmetricGroup(5), "hamming")
    assert scale_norm(scale_norm(g, a), b).norm(p) == scale_norm(g, a * b).norm(p) == a * b * g.norm(p)


@given(st.integers(1, 12).flatmap(lambda k: st.tuples(st.just(2**k), st.integers(0, 2**k - 1))))
def test_lee_symmetry(mg):
    m, g = mg
    assert lee_norm(g, m) == lee_norm((m - g) % m, m)
    assert 0 <= lee_norm(g, m) <= 1


seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_iet_group_laws(seed):
    import random

    rng = random.Random(seed)
    f, g, h = random_iet(rng), random_iet(rng), random_iet(rng)
    e = IetMap.identity()
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert compose(f, inverse(f)) == e == compose(inverse(f), f)
    assert support_norm(compose(f, g)) <= support_norm(f) + support_norm(g)
    assert support_norm(inverse(f)) == support_norm(f)
    assert support_norm(compose(compose(inverse(g), f), g)) == support_norm(f)


@given(perms5, perms5, perms5)
def test_perm_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert (a * b)(1) == b(a(1))
    assert (a ** b).cycle_type() == a.cycle_type()
    assert a.sign() * b.sign() == (a * b).sign()


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=F(1, 2), max_value=F(99, 100), max_denominator=100),
       st.fractions(min_value=0, max_value=F(1, 2), max_denominator=100))
def test_uniformity_bound(r, dt):
    t = r + dt + F(1, 100)
    rep = cov.uniformity_scan([A5N], r, t, 0)
    assert rep.verdict is True
    assert rep.details["N"] <= ceil(16 + 4 * t / r)


@given(st.integers(2, 40), st.integers(0, 100), st.integers(0, 100))
def test_lee_triangle(m, a, b):
    a, b = a % m, b % m
    g = with_catalog_norm(CyclicGroup(m), "lee")
    assert g.norm((a + b) % m) <= g.norm(a) + g.norm(b)
