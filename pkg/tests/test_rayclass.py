"""Ray class orders (formula vs enumeration) and prime class data."""

import random

import pytest

from congmon import (FractionalIdeal, Modulus, PreconditionError,
                     ResidueSubgroup, hm_order, is_right_lcm, parse_modulus,
                     prime_class_order, primes_above, quotient_group,
                     residue_of)
from conftest import ideal_of
from oracles import euler_phi


def test_hm_order_over_q_is_euler_phi(Q):
    for m0 in (3, 4, 5, 8, 15):
        m = parse_modulus(Q, f"inf:0;fin:{m0}")
        assert hm_order(Q, m) == euler_phi(m0)


def test_hm_order_trivial_modulus(Q):
    assert hm_order(Q, Modulus.trivial(Q)) == 1


def test_hm_order_gaussian(Qi):
    m = parse_modulus(Qi, "fin:1+2*w")
    assert hm_order(Qi, m) == 1


def test_hm_order_class_number(Qm5):
    assert hm_order(Qm5, Modulus.trivial(Qm5)) == 2


@pytest.mark.parametrize("fs,ms,expected", [
    ("Q(sqrt,2)", "inf:0,1;fin:3", 2),
    ("Q(sqrt,2)", "inf:0;fin:3", 1),
    ("Q(sqrt,5)", "inf:0,1;fin:2", 1),
    ("Q(sqrt,-5)", "fin:3", 4),
    ("Q", "inf:0;fin:60", 16),
    ("Q", "fin:60", 8),
])
def test_hm_order_formula_vs_enumeration_stress(fs, ms, expected):
    """hm_order raises internally unless formula and enumeration agree."""
    from congmon import parse_field
    K = parse_field(fs)
    assert hm_order(K, parse_modulus(K, ms)) == expected


def test_quotient_group_examples(Q, m5, gamma_trivial, gamma_full):
    qg = quotient_group(m5, gamma_trivial)
    assert qg.order == 4
    norms = sorted(I.norm_int() for I in qg.classes)
    assert norms == [1, 2, 3, 4]
    assert quotient_group(m5, gamma_full).order == 1


def test_quotient_group_trivial_modulus_is_class_group(Qm5):
    m = Modulus.trivial(Qm5)
    qg = quotient_group(m, ResidueSubgroup.trivial(m))
    assert qg.order == 2


def test_quotient_group_axioms(Q, m5, gamma_trivial):
    qg = quotient_group(m5, gamma_trivial)
    n = qg.order
    ident = qg.identity_index
    table = [[qg.compose(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        assert table[i][ident] == i
        assert ident in table[i]  # inverses exist
        assert sorted(table[i]) == list(range(n))  # cancellation


def test_class_of_multiplicative(Q, m5, gamma_trivial):
    qg = quotient_group(m5, gamma_trivial)
    rng = random.Random(6)
    from congmon.ideals import integral_ideals_up_to
    pool = [I for I in integral_ideals_up_to(Q, 60, avoid=m5.support())]
    for _ in range(50):
        A, B = rng.choice(pool), rng.choice(pool)
        assert qg.class_of(A * B) == qg.compose(qg.class_of(A), qg.class_of(B))


def test_prime_class_data(Q, m5, gamma_trivial):
    qg = quotient_group(m5, gamma_trivial)
    f, t = prime_class_order(primes_above(Q, 2)[0], qg)
    assert (f, t) == (4, Q.element(16))
    f, t = prime_class_order(primes_above(Q, 11)[0], qg)
    assert (f, t) == (1, Q.element(11))
    f, t = prime_class_order(primes_above(Q, 19)[0], qg)
    assert (f, t) == (2, Q.element(361))


def test_prime_class_minimality_by_exhaustion(Q, m5, gamma_trivial):
    """No smaller power of the prime has a generator in the monoid."""
    from congmon import principal_generator
    from congmon.units import torsion_units
    qg = quotient_group(m5, gamma_trivial)
    for p in (2, 19):
        P = primes_above(Q, p)[0]
        f, t = prime_class_order(P, qg)
        assert residue_of(t, m5) in gamma_trivial
        assert ideal_of(Q, t) == P.power(f)
        for smaller in range(1, f):
            g = principal_generator(P.power(smaller))
            assert g is not None  # principal over Q, but out of the monoid
            for u in torsion_units(Q):
                assert residue_of(g * u, m5) not in gamma_trivial


def test_prime_class_rejects_support_prime(Q, m5, gamma_trivial):
    qg = quotient_group(m5, gamma_trivial)
    with pytest.raises(PreconditionError):
        prime_class_order(primes_above(Q, 5)[0], qg)


def test_prime_class_in_quadratic_field(Qi):
    m = parse_modulus(Qi, "fin:1+2*w")
    gamma = ResidueSubgroup.full(m)
    qg = quotient_group(m, gamma)
    P = primes_above(Qi, 2)[0]  # the ramified prime (1+i)
    f, t = prime_class_order(P, qg)
    assert f == 1
    assert ideal_of(Qi, t) == P.ideal
    assert abs(t.norm()) == 2


def test_prime_class_real_field_uses_unit_cycling(Q2):
    m = parse_modulus(Q2, "inf:0,1;fin:3")
    gamma = ResidueSubgroup.trivial(m)
    qg = quotient_group(m, gamma)
    P = primes_above(Q2, 7)[0]
    f, t = prime_class_order(P, qg)
    assert ideal_of(Q2, t) == P.power(f)
    assert residue_of(t, m) in gamma
    assert t.is_totally_positive()


def test_right_lcm(Q, Qm5, m5, gamma_trivial, gamma_full):
    assert is_right_lcm(m5, gamma_full)
    assert not is_right_lcm(m5, gamma_trivial)
    m = Modulus.trivial(Qm5)
    assert not is_right_lcm(m, ResidueSubgroup.full(m))


def test_prime_class_real_field_pinned_values(Q2):
    """Both split primes over 7 in Q(sqrt2) have norm-7 ray generators."""
    m = parse_modulus(Q2, "inf:0,1;fin:3")
    gamma = ResidueSubgroup.trivial(m)
    qg = quotient_group(m, gamma)
    Pa, Pb = primes_above(Q2, 7)
    fa, ta = prime_class_order(Pa, qg)
    fb, tb = prime_class_order(Pb, qg)
    assert (fa, ta) == (1, Q2.element(13, 9))     # N = 169 - 162 = 7
    assert (fb, tb) == (1, Q2.element(157, 111))  # N = 24649 - 24642 = 7
    for t in (ta, tb):
        assert t.is_totally_positive()
        assert residue_of(t, m) in gamma
