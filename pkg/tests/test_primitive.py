"""Primitive-ideal lattice over finite windows and truncated quasi-orbits."""

import random

import pytest

from congmon import (INF, Modulus, PreconditionError, PrimeWindow,
                     PrimitiveIdealDescriptor, ResidueSubgroup, TruncatedPoint,
                     boundary_defect_data, closure_of, extremal_ideals,
                     ideal_leq, orbit_reach_check, parse_modulus, primes_above,
                     quasi_orbit_membership, zero_set)
from congmon.primitive import all_descriptors, _Mover
from oracles import closure_by_basic_opens


@pytest.fixture(scope="module")
def window5(Q):
    m = parse_modulus(Q, "inf:0;fin:5")
    gamma = ResidueSubgroup.trivial(m)
    primes = [primes_above(Q, p)[0] for p in (2, 3, 7)]
    return PrimeWindow(m, gamma, primes, vmax=4)


def _desc(window, unders):
    members = [P for P in window.primes if P.under in unders]
    return PrimitiveIdealDescriptor(window, members)


def test_window_carries_prime_class_data(window5):
    by_under = {P.under: window5.data[P] for P in window5.primes}
    assert by_under[2][0] == 4 and by_under[2][1].p == 16
    assert by_under[3][0] == 4  # orders of 3 mod 5 is 4
    assert by_under[7][0] == 4  # 7 = 2 mod 5, order 4


def test_ideal_leq(window5):
    assert ideal_leq(_desc(window5, {2}), _desc(window5, {2, 3}))
    assert ideal_leq(_desc(window5, set()), _desc(window5, {7}))
    assert not ideal_leq(_desc(window5, {2}), _desc(window5, {3}))


def test_order_isomorphism_exhaustive(window5):
    descs = all_descriptors(window5)
    assert len(descs) == 8
    for A in descs:
        for B in descs:
            assert ideal_leq(A, B) == (A.members <= B.members)


def test_closure_examples(Q):
    m = parse_modulus(Q, "inf:0;fin:5")
    gamma = ResidueSubgroup.trivial(m)
    window = PrimeWindow(m, gamma, [primes_above(Q, p)[0] for p in (2, 3)])
    two = _desc(window, {2})
    cl = closure_of(two)
    assert {frozenset(P.under for P in D.members) for D in cl} == \
        {frozenset({2}), frozenset({2, 3})}
    empty = _desc(window, set())
    assert len(closure_of(empty)) == 4  # all subsets
    full = _desc(window, {2, 3})
    assert closure_of(full) == {full}


def test_closure_matches_basic_open_oracle(window5):
    for A in all_descriptors(window5):
        got = {frozenset(D.members) for D in closure_of(A)}
        want = closure_by_basic_opens(window5, A.members)
        assert got == want


def test_extremal(window5, Q):
    mx, mins = extremal_ideals(window5)
    assert {P.under for P in mx.members} == {2, 3, 7}
    assert sorted({P.under for P in D.members}.pop() for D in mins) == [2, 3, 7]
    m = parse_modulus(Q, "inf:0;fin:5")
    with pytest.raises(PreconditionError):
        PrimeWindow(m, ResidueSubgroup.trivial(m), [])


def test_boundary_defect(Q, window5):
    by_under = {P.under: P for P in window5.primes}
    t, count, reps = boundary_defect_data(window5, by_under[2])
    assert t == Q.element(16) and count == 16
    assert len(reps) == 16
    # the representatives exactly partition: pairwise distinct canonical forms
    from congmon import principal_ideal
    tR = principal_ideal(t)
    assert len({tR.reduce(r).int_coords() for r in reps}) == count


def test_boundary_defect_quadratic(Qi):
    m = parse_modulus(Qi, "fin:1+2*w")
    gamma = ResidueSubgroup.full(m)
    window = PrimeWindow(m, gamma, [primes_above(Qi, 2)[0]])
    t, count, reps = boundary_defect_data(window, window.primes[0])
    assert count == 2 and len(reps) == 2
    assert abs(t.norm()) == 2


def test_zero_set_and_membership(window5):
    x = TruncatedPoint(window5, (INF, 1, 0))
    assert {P.under for P in zero_set(x)} == {2}
    y = TruncatedPoint(window5, (INF, 3, 2))
    assert quasi_orbit_membership(x, y)
    allzero = TruncatedPoint(window5, (0, 0, 0))
    assert quasi_orbit_membership(allzero, x)
    z = TruncatedPoint(window5, (INF, INF, 0))
    w = TruncatedPoint(window5, (INF, 0, 0))
    assert not quasi_orbit_membership(z, w)


def test_orbit_reach_examples(window5):
    x = TruncatedPoint(window5, (INF, 1, 0))
    y = TruncatedPoint(window5, (INF, 2, 1))
    ok, moves = orbit_reach_check(x, y, 12)
    assert ok and moves <= 12
    same = TruncatedPoint(window5, (0, 2, 1), (5, 0))
    assert orbit_reach_check(same, same, 12) == (True, 0)
    bad_x = TruncatedPoint(window5, (INF, INF, 0))
    bad_y = TruncatedPoint(window5, (INF, 0, 0))
    assert orbit_reach_check(bad_x, bad_y, 12) == (False, None)


def test_orbit_reach_randomized(window5):
    rng = random.Random(11)
    for _ in range(20):
        xs, ys = [], []
        for _ in range(3):
            vx = rng.choice([0, 1, 2, 3, INF])
            vy = INF if vx == INF else rng.choice([0, 1, 2, 3, 4, INF])
            xs.append(vx)
            ys.append(vy)
        x = TruncatedPoint(window5, xs, (rng.randint(0, 400), 0))
        y = TruncatedPoint(window5, ys, (rng.randint(0, 400), 0))
        ok, moves = orbit_reach_check(x, y, 12)
        assert ok and moves <= 12


def test_moves_preserve_quasi_orbit_class(window5):
    """No generator move ever clears an infinite coordinate."""
    rng = random.Random(13)
    mover = _Mover(window5)
    n = len(window5.primes)
    for _ in range(25):
        vals = [rng.choice([0, 1, 2, 3, INF]) for _ in range(n)]
        x = TruncatedPoint(window5, vals, (rng.randint(0, 100), 0))
        zs = x.zero_set()
        pat = tuple(rng.randint(0, 2) for _ in range(n))
        y = mover.multiply(x, pat)
        assert zs <= y.zero_set()
        y2 = mover.translate(x, (rng.randint(-9, 9), 0))
        assert y2.zero_set() == zs
        down = tuple(0 if (v == INF or v >= window5.vmax) else rng.randint(0, v)
                     for v in vals)
        if any(down) and mover.can_divide(x, down):
            y3 = mover.divide(x, down)
            assert zs <= y3.zero_set()


def test_truncated_point_residue_consistency(window5, Q):
    x = TruncatedPoint(window5, (2, 1, 0), (100, 0))
    M = x.modulus_ideal()
    assert M.norm_int() == 4 * 3  # 2^2 * 3^1 * 7^0
    assert M.reduce_int(100, 0) == x.res
