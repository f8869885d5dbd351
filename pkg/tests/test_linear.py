import random
from fractions import Fraction

import numpy as np
import pytest

from normcover.coverage import _closure, finite
from normcover.groups import SLGroup
from normcover.linear import (
    CapabilityError,
    MatFp,
    block_embed,
    det_fp,
    jordan_length,
    ls_constant_probe,
    rank_fp,
    sl_enumerate,
    sl_order,
    transvections,
)

from oracles import det_leibniz, rank_by_kernel


def M(p, *rows):
    return MatFp(p, tuple(tuple(r) for r in rows))


def test_rank_and_det_against_oracles():
    rng = random.Random(5)
    for p in (2, 3, 5):
        for n in (1, 2, 3):
            for _ in range(40):
                rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
                assert rank_fp(rows, p) == rank_by_kernel(rows, p)
                assert det_fp(rows, p) == det_leibniz(rows, p)


def test_jordan_examples():
    assert jordan_length(MatFp.identity(3, 5)) == 0
    assert jordan_length(MatFp.scalar(2, 5, 4)) == 0  # -I is central
    assert jordan_length(M(3, (1, 1), (0, 1))) == Fraction(1, 2)
    assert jordan_length(M(5, (2, 0), (0, 3))) == Fraction(1, 2)


def test_inverse_and_power():
    a = M(5, (1, 2), (3, 2))
    assert a * a.inverse() == MatFp.identity(2, 5)
    assert a**-2 == (a.inverse()) ** 2
    with pytest.raises(ZeroDivisionError):
        M(5, (1, 2), (2, 4)).inverse()


def test_sl_enumeration():
    for n, p in [(2, 2), (2, 3), (2, 5), (3, 2)]:
        elems = list(sl_enumerate(n, p))
        assert len(elems) == sl_order(n, p)
        keys = [a.key() for a in elems]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)
        assert all(a.det() == 1 for a in elems)
    with pytest.raises(CapabilityError):
        list(sl_enumerate(3, 5, budget=100))
    with pytest.raises(ValueError):
        list(sl_enumerate(2, 4))


def test_transvections_generate():
    fg = finite(SLGroup(2, 3))
    gens = [fg.index_of(t) for t in transvections(2, 3)]
    assert _closure(fg, np.array(gens)).size == 24


def test_block_embed():
    a = M(3, (1, 1), (0, 1))
    b = block_embed(a, 4)
    assert b.rows == ((1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1), (0, 0, 0, 1))
    assert jordan_length(b) == jordan_length(a)
    with pytest.raises(ValueError):
        block_embed(a, 5)


def test_matrix_json_roundtrip():
    a = M(5, (1, 2), (3, 2))
    assert MatFp.from_json(a.to_json()) == a
    with pytest.raises(ValueError):
        MatFp.from_json({"p": 5, "n": 3, "rows": [[1, 0], [0, 1]]})
    with pytest.raises(ValueError):
        MatFp(6, ((1,),))


def test_probe_sl2_f5():
    rep = ls_constant_probe(2, 5)
    assert rep.all_finite and rep.self_consistent
    assert len(rep.rows) == 120 - 2
    # 1/2 with an eigenvalue in F_5, 1 for an irreducible characteristic polynomial
    assert {r.jordan for r in rep.rows} == {Fraction(1, 2), Fraction(1)}
    assert rep.c_emp == max(r.jordan * r.normal_gen for r in rep.rows)
