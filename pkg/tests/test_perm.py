from itertools import permutations

import pytest

from normcover.perm import (
    ConjProductCert,
    NoNearbyNonexceptional,
    Perm,
    brenner_cycles,
    find_conjugator_min_support,
    hamming_norm,
    hamming_normalized,
    is_exceptional,
    is_nonexceptional,
    nearby_nonexceptional,
    search_nonexceptional,
    sigma_infinity,
)
from fractions import Fraction

from oracles import hamming, pinv, pmul


def test_parse_one_line_and_cycles():
    assert Perm.parse("[2,1,3]") == Perm((2, 1, 3))
    assert Perm.parse("(1 2)(3 4 5)", 5) == Perm((2, 1, 4, 5, 3))
    assert Perm.parse([3, 1, 2]).cycle_str() == "(1 3 2)"
    assert Perm.parse("()", 3).is_identity()


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Perm.parse("[1,1,2]")
    with pytest.raises(ValueError):
        Perm.parse("(1 2 2)", 3)


def test_right_action_composition():
    a, b = Perm.parse("(1 2)", 3), Perm.parse("(2 3)", 3)
    # apply a first, then b: 1 -> 2 -> 3
    assert (a * b)(1) == 3
    for x in permutations(range(4)):
        for y in [(1, 0, 2, 3), (1, 2, 3, 0)]:
            p, q = Perm(tuple(i + 1 for i in x)), Perm(tuple(i + 1 for i in y))
            assert (p * q).images == tuple(i + 1 for i in pmul(x, y))


def test_inverse_and_conjugation():
    g, h = Perm.parse("(1 2 3)", 4), Perm.parse("(3 4)", 4)
    assert g * g.inverse() == Perm.identity(4)
    # g^h relabels the points of g by h
    assert g**h == Perm.parse("(1 2 4)", 4)


def test_hamming_examples():
    assert hamming_norm(Perm.parse("(1 2 3)", 5)) == 3
    assert hamming_normalized(Perm.parse("(1 2 3)", 5)) == Fraction(3, 5)
    assert hamming_norm(Perm.identity(6)) == 0
    for x in permutations(range(5)):
        assert hamming_norm(Perm(tuple(i + 1 for i in x))) == hamming(x)


def test_exceptional_classification():
    assert is_exceptional(Perm.parse("(1 2 3 4 5)", 5))
    assert is_exceptional(Perm.parse("(1 2 3)", 4))  # lengths 3, 1
    assert not is_exceptional(Perm.parse("(1 2 3)", 5))  # lengths 3, 1, 1
    assert is_nonexceptional(Perm.parse("(1 2)(3 4)", 4))
    assert not is_nonexceptional(Perm.parse("(1 2)", 4))  # odd


def test_exceptional_means_split_class():
    # an even class splits in A_n exactly when it is exceptional
    from normcover.coverage import finite
    from normcover.groups import SymmetricGroup

    for n in (4, 5, 6):
        fs, fa = finite(SymmetricGroup(n)), finite(SymmetricGroup(n, alternating=True))
        for rep in fa.class_reps():
            p = fa.elements[rep]
            split = len(fa.conj_class(rep)) < len(fs.conj_class(fs.index_of(p)))
            assert split == is_exceptional(p), p


def test_conjugator_examples():
    a, b = Perm.parse("(1 2)", 4), Perm.parse("(3 4)", 4)
    h = find_conjugator_min_support(a, b)
    assert a**h == b and h.support() <= {1, 2, 3, 4}
    assert find_conjugator_min_support(Perm.parse("(1 2)", 3), Perm.parse("(1 2 3)", 3)) is None
    with pytest.raises(ValueError):
        find_conjugator_min_support(Perm.identity(3), Perm.identity(4))


def test_brenner_cycles_identity():
    for m in range(5, 16):
        rho, pi = brenner_cycles(m)
        assert rho * pi.inverse() == Perm.from_cycles([(m - 4, m - 2, m)], m)
    with pytest.raises(ValueError):
        brenner_cycles(4)


def test_nearby_nonexceptional_example():
    tau = Perm.parse("(1 2 3 4 5 6 7)", 7)  # even, exceptional (7)
    sigma = nearby_nonexceptional(tau)
    assert sigma.support() == tau.support()
    assert is_nonexceptional(sigma)
    assert hamming_norm(tau * sigma.inverse()) <= 5


def test_nearby_nonexceptional_small_support_errors():
    with pytest.raises(ValueError):
        nearby_nonexceptional(Perm.parse("(1 2 3)", 5))


def test_nearby_nonexceptional_impossible_in_s5():
    # every full-support even permutation of S_5 is a 5-cycle, which is exceptional
    tau = Perm.parse("(1 2 3 4 5)", 5)
    assert search_nonexceptional(tau) is None
    with pytest.raises(NoNearbyNonexceptional):
        nearby_nonexceptional(tau)


def test_certificate_replay():
    g = Perm.parse("(1 2 3)", 4)
    h = Perm.parse("(3 4)", 4)
    cert = ConjProductCert(g, ((1, h), (-1, Perm.identity(4))), (g**h) * g.inverse())
    assert cert.verify()
    assert cert.to_json()["factors"][0][0] == 1


def test_sigma_infinity_full_support():
    sigma = Perm.parse("(1 2)(3 4 5 6)", 6)  # nonexceptional, support 6
    full, cert = sigma_infinity(sigma, 15, seed=3)
    assert full.support() == frozenset(range(1, 16))
    assert cert.verify() and cert.claimed == full
    assert len(cert) <= 4 + 15 // 6


def test_sigma_infinity_exact_division():
    sigma = Perm.parse("(1 2 3)(4 5 6)", 6)
    full, cert = sigma_infinity(sigma, 12, seed=0)
    assert len(cert) == 2 and cert.verify()
    assert full.support() == frozenset(range(1, 13))


def test_sigma_infinity_rejects_exceptional():
    with pytest.raises(ValueError):
        sigma_infinity(Perm.parse("(1 2 3 4 5)", 5), 10)
