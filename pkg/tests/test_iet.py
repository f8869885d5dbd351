import random
from fractions import Fraction as F

import pytest

from normcover.iet import (
    IetMap,
    apply,
    canonical,
    compose,
    discretize,
    embed_perm,
    grid_perm,
    inverse,
    random_iet,
    support_norm,
)
from normcover.perm import Perm

from oracles import iet_eval


def rot(a):
    return IetMap.rotation(F(a))


def test_rotation_composition():
    assert compose(rot("1/3"), rot("1/3")) == rot("2/3")
    assert compose(rot("1/2"), rot("1/2")) == IetMap.identity()
    assert apply(rot("1/3"), F(5, 6)) == F(1, 6)


def test_support_norm_examples():
    assert support_norm(IetMap.identity()) == 0
    assert support_norm(rot("1/5")) == 1
    swap = IetMap((F(1, 4), F(1, 4), F(1, 2)), (2, 1, 3))
    assert support_norm(swap) == F(1, 2)


def test_apply_matches_pointwise_oracle():
    rng = random.Random(2)
    for _ in range(200):
        f = random_iet(rng)
        for k in range(24):
            x = F(k, 24)
            assert apply(f, x) == iet_eval(f.lengths, f.perm, x)


def test_compose_pointwise():
    rng = random.Random(3)
    for _ in range(200):
        f, g = random_iet(rng), random_iet(rng)
        fg = compose(f, g)
        for k in range(30):
            x = F(k, 30)
            assert apply(fg, x) == apply(g, apply(f, x))


def test_canonical_merges():
    f = IetMap((F(1, 4), F(1, 4), F(1, 2)), (1, 2, 3))
    assert canonical(f) == IetMap.identity()
    assert IetMap.from_json({"lengths": ["1/2", "1/4", "1/4"], "perm": [3, 1, 2]}) == rot("1/2")


def test_validation():
    with pytest.raises(ValueError):
        IetMap((F(1, 2), F(1, 3)), (1, 2))
    with pytest.raises(ValueError):
        IetMap((F(1, 2), F(1, 2)), (1, 1))
    with pytest.raises(ValueError):
        apply(IetMap.identity(), 1)


def test_embed_perm_homomorphism_small():
    a, b = Perm.parse("(1 2 3)", 4), Perm.parse("(2 4)", 4)
    assert embed_perm(a * b) == compose(embed_perm(a), embed_perm(b))
    assert support_norm(embed_perm(a)) == F(3, 4)
    assert grid_perm(embed_perm(a), 4) == a


def test_discretize_grid_input_exact():
    d = discretize(embed_perm(Perm.parse("(1 3)(2 4)", 4)), 8)
    assert d.distance == 0
    assert d.sigma == Perm.parse("(1 5)(2 6)(3 7)(4 8)", 8)


def test_discretize_rotation():
    # snapping floor(5a)/5 for the rotation by 1/3: breakpoint 2/3 -> 3/5
    d = discretize(rot("1/3"), 5)
    assert d.snapped == rot("2/5")
    assert d.sigma == Perm.parse("(1 3 5 2 4)", 5)
    assert d.distance == support_norm(compose(rot("2/5"), inverse(rot("1/3"))))
    with pytest.raises(ValueError):
        discretize(rot("1/3"), 3)


def test_json_roundtrip():
    f = IetMap((F(1, 3), F(1, 6), F(1, 2)), (3, 1, 2))
    assert IetMap.from_json(f.to_json()) == canonical(f)
    assert f.to_json()["lengths"] == ["1/3", "1/6", "1/2"]
