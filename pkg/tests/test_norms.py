import math
from fractions import Fraction

import pytest

from normcover.groups import CyclicGroup, SLGroup, SymmetricGroup
from normcover.linear import CapabilityError
from normcover.lognorm import LogNorm, norm_to_json
from normcover.norms import (
    check_power_monotone,
    conjugacy_length_norm,
    exponent,
    lee_norm,
    scale_norm,
    verify_norm_axioms,
    with_catalog_norm,
)
from normcover.perm import Perm

from oracles import lee_direct


def test_lee_examples():
    assert lee_norm(0, 8) == 0
    assert lee_norm(3, 8) == Fraction(3, 4)
    assert lee_norm(8, 16) == 1
    with pytest.raises(ValueError):
        lee_norm(8, 8)
    with pytest.raises(ValueError):
        lee_norm(0, 1)


def test_lee_matches_power_of_two_formula():
    for n in range(1, 9):
        for g in range(2**n):
            assert lee_norm(g, 2**n) == lee_direct(g, n)


def test_axioms_hamming_s4():
    rep = verify_norm_axioms(SymmetricGroup(4))
    assert rep.is_norm
    assert rep.pairs_checked == 24**2
    assert rep.counterexample is None


def test_conjugacy_length_on_abelian_is_pseudo():
    z4 = with_catalog_norm(CyclicGroup(4), "conjugacy_length")
    rep = verify_norm_axioms(z4)
    assert rep.is_pseudo_norm and not rep.axiom_results["3"]
    g, _ = rep.counterexamples["3"]
    assert g == 1 and z4.norm(g) == 0


def test_conjugacy_length_values():
    s3 = SymmetricGroup(3)
    v = conjugacy_length_norm(Perm.parse("(1 2)", 3), s3)
    assert math.isclose(float(v), math.log(3) / math.log(6))
    assert conjugacy_length_norm(Perm.identity(4), SymmetricGroup(4)) == 0
    with pytest.raises(ValueError):
        conjugacy_length_norm(Perm.identity(1), SymmetricGroup(1))


def test_lognorm_exact_comparisons():
    a = LogNorm.ratio(3, 6)
    b = LogNorm.ratio(2, 6)
    assert b < a < 1
    assert a + b == 1  # log 3 + log 2 = log 6
    assert LogNorm.ratio(4, 6) == b * 2
    assert norm_to_json(a) == f"{math.log(3) / math.log(6):.12f}"
    assert norm_to_json(Fraction(3, 4)) == "3/4"


def test_scaling():
    s5 = SymmetricGroup(5)
    g = Perm.parse("(1 2 3)", 5)
    assert scale_norm(s5, Fraction(1, 5)).norm(g) == Fraction(3, 5)
    assert scale_norm(s5, 1).norm(g) == 3
    assert scale_norm(scale_norm(s5, Fraction(1, 2)), 2).norm(g) == 3
    with pytest.raises(ValueError):
        scale_norm(s5, 0)
    assert scale_norm(s5, Fraction(1, 5)).describe()["norm"] == {"id": "hamming", "scale": "1/5"}


def test_catalog_norm_type_checks():
    with pytest.raises(ValueError):
        with_catalog_norm(SymmetricGroup(3), "lee")
    with pytest.raises(ValueError):
        with_catalog_norm(SymmetricGroup(3), "nope")


def test_sampled_mode_needs_seed():
    with pytest.raises(ValueError):
        verify_norm_axioms(SymmetricGroup(5), mode="sampled")
    rep = verify_norm_axioms(SymmetricGroup(7), mode="sampled", seed=1, samples=300)
    assert rep.is_norm and rep.seed == 1 and rep.word_length == 8


def test_exhaustive_needs_enumeration():
    with pytest.raises(CapabilityError):
        verify_norm_axioms(SLGroup(3, 5, budget=1000))


def test_broken_norm_reports_least_violation():
    # ||g|| = [g moves 1] is not conjugation invariant
    bad = SymmetricGroup(3).with_norm(lambda p: Fraction(int(p(1) != 1)), "moves1")
    rep = verify_norm_axioms(bad)
    assert not rep.axiom_results["2"]
    g, h = rep.counterexamples["2"]
    assert bad.norm(g) != bad.norm(bad.conjugate(g, bad.invert(h))) or bad.norm(g) != bad.norm(bad.invert(g))


def test_power_monotone_examples():
    assert check_power_monotone(SymmetricGroup(5), 10).passed
    sl = SLGroup(2, 5)
    assert check_power_monotone(sl, exponent(sl)).passed
    with pytest.raises(ValueError):
        check_power_monotone(SymmetricGroup(3), 0)
    # the Lee norm is not power monotone: ||1 + 1|| = 1/2 > ||1|| = 1/4 in Z_8
    rep = check_power_monotone(CyclicGroup(8), 4)
    g, k = rep.counterexample
    assert lee_norm(g * k % 8, 8) > lee_norm(g, 8)
