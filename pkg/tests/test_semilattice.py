"""Meets, the semigroup action, independence, and faithfulness witnesses."""

import random

import pytest

from congmon import (ConstructibleIdeal, ContextMismatchError,
                     FractionalIdeal, Modulus, ResidueSubgroup,
                     SemigroupElement, act, check_relations, embed_full,
                     faithfulness_witness, independence_witness, meet,
                     parse_constructible, prime_in_class_avoiding,
                     quadratic_field, rational_field)
from congmon.semilattice import SubcosetNotProperError
from conftest import ideal_of
from oracles import coset_intersection_scan


def _trivial_context(K):
    m = Modulus.trivial(K)
    return m, ResidueSubgroup.full(m)


def _ci(K, m, g, rep, ideal_gen):
    ideal = ideal_gen if isinstance(ideal_gen, FractionalIdeal) else ideal_of(K, ideal_gen)
    rep = rep if not isinstance(rep, int) else K.element(rep)
    return ConstructibleIdeal(m, g, rep, ideal)


def test_meet_examples(Q):
    m, g = _trivial_context(Q)
    assert meet(_ci(Q, m, g, 1, 4), _ci(Q, m, g, 3, 6)) == _ci(Q, m, g, 9, 12)
    assert meet(_ci(Q, m, g, 0, 2), _ci(Q, m, g, 1, 2)).is_empty
    X = _ci(Q, m, g, 1, 4)
    assert meet(X, ConstructibleIdeal.unit(m, g)) == X


def test_meet_context_mismatch(Q, m5, gamma_trivial):
    m, g = _trivial_context(Q)
    with pytest.raises(ContextMismatchError):
        meet(_ci(Q, m, g, 0, 2), _ci(Q, m5, gamma_trivial, 0, 2))


@pytest.mark.parametrize("d", [None, -1])
def test_meet_matches_residue_enumeration(d):
    """Exact CRT meet against brute-force coset intersection (norm <= 1000)."""
    K = rational_field() if d is None else quadratic_field(d)
    m, g = _trivial_context(K)
    rng = random.Random(0 if d is None else d)
    from congmon.ideals import integral_ideals_up_to
    ideals = [I for I in integral_ideals_up_to(K, 31) if I.norm_int() > 1]
    done = 0
    while done < 30:
        A, B = rng.choice(ideals), rng.choice(ideals)
        if A.intersect(B).norm_int() > 1000:
            continue
        x = K.element(rng.randint(-20, 20), 0 if K.is_rational else rng.randint(-20, 20))
        y = K.element(rng.randint(-20, 20), 0 if K.is_rational else rng.randint(-20, 20))
        X, Y = ConstructibleIdeal(m, g, x, A), ConstructibleIdeal(m, g, y, B)
        got = meet(X, Y)
        L, hits = coset_intersection_scan(X, Y)
        if got.is_empty:
            assert not hits
        else:
            assert got.ideal == L
            assert hits == frozenset({got.rep.int_coords()})
        done += 1


def test_meet_laws_random(Qi):
    m, g = _trivial_context(Qi)
    rng = random.Random(4)
    from congmon.ideals import integral_ideals_up_to
    ideals = integral_ideals_up_to(Qi, 12)
    pool = [ConstructibleIdeal(m, g, Qi.element(rng.randint(-6, 6), rng.randint(-6, 6)), I)
            for I in ideals for _ in (0, 1)]
    unit = ConstructibleIdeal.unit(m, g)
    empty = ConstructibleIdeal.empty(m, g)
    for _ in range(40):
        X, Y, Z = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        assert meet(X, Y) == meet(Y, X)
        assert meet(meet(X, Y), Z) == meet(X, meet(Y, Z))
        assert meet(X, X) == X
        assert meet(X, unit) == X
        assert meet(X, empty).is_empty


def test_act_examples(Q):
    m, g = _trivial_context(Q)
    two = SemigroupElement(m, g, Q.zero, Q.element(2))
    assert act(two, _ci(Q, m, g, 0, 3)) == _ci(Q, m, g, 0, 6)
    shift = SemigroupElement(m, g, Q.one, Q.one)
    assert act(shift, _ci(Q, m, g, 0, 2)) == _ci(Q, m, g, 1, 2)
    both = SemigroupElement(m, g, Q.one, Q.element(6))
    assert act(both, _ci(Q, m, g, 2, 5)) == _ci(Q, m, g, 13, 30)


def test_act_is_a_semigroup_action(Qi):
    m, g = _trivial_context(Qi)
    rng = random.Random(8)
    els = [SemigroupElement(m, g, Qi.element(rng.randint(-4, 4), rng.randint(-4, 4)),
                            Qi.element(*c))
           for c in ((1, 0), (2, 1), (0, 1), (3, 0)) for rng_ in (0,)]
    Xs = [_ci(Qi, m, g, Qi.element(1, 1), 5), _ci(Qi, m, g, Qi.element(0, 0), 3)]
    for a in els:
        for b in els:
            for X in Xs:
                assert act(a * b, X) == act(a, act(b, X))
                Y = Xs[0]
                assert act(a, meet(X, Y)) == meet(act(a, X), act(a, Y))


def test_containment(Q):
    m, g = _trivial_context(Q)
    X = _ci(Q, m, g, 1, 4)
    assert X.contains(_ci(Q, m, g, 5, 8))
    assert not X.contains(_ci(Q, m, g, 2, 8))
    assert not X.contains(_ci(Q, m, g, 1, 6))  # 6Z is not inside 4Z
    assert X.contains(ConstructibleIdeal.empty(m, g))


def test_independence_examples(Q, m5, gamma_trivial):
    X = ConstructibleIdeal.unit(m5, gamma_trivial)
    covers = [ConstructibleIdeal(m5, gamma_trivial, Q.element(r), ideal_of(Q, 2))
              for r in (0, 1)]
    w = independence_witness(X, covers)
    assert (w.b, w.a) == (Q.zero, Q.one)
    covers3 = [ConstructibleIdeal(m5, gamma_trivial, Q.element(r), ideal_of(Q, 3))
               for r in (0, 1, 2)]
    w = independence_witness(X, covers3)
    assert (w.b, w.a) == (Q.zero, Q.one)
    assert independence_witness(X, [X]) is None


@pytest.mark.parametrize("fs,ms,gs", [("Q", "inf:0;fin:5", "trivial"),
                                      ("Q(sqrt,-1)", "fin:1+2*w", "full")])
def test_independence_randomized(fs, ms, gs):
    from congmon import parse_field, parse_modulus, parse_gamma
    from congmon.ideals import integral_ideals_up_to
    K = parse_field(fs)
    m = parse_modulus(K, ms)
    gamma = parse_gamma(m, gs)
    rng = random.Random(42)
    ideals = [I for I in integral_ideals_up_to(K, 100, avoid=m.support())]
    smalls = [I for I in ideals if I.norm_int() > 1]
    for _ in range(30):
        A = rng.choice(ideals)
        x = K.element(rng.randint(-10, 10), 0 if K.is_rational else rng.randint(-10, 10))
        X = ConstructibleIdeal(m, gamma, x, A)
        covers = []
        for _ in range(rng.randint(1, 5)):
            extra = rng.choice(smalls)
            if (A * extra).norm_int() > 5000:
                continue
            sub = A * extra
            y = X.rep + K.element(rng.randint(0, 3), 0 if K.is_rational else rng.randint(0, 3)) * K.element(*next(iter([A.int_rows()[0]])))
            covers.append(ConstructibleIdeal(m, gamma, y, sub))
        covers = [C for C in covers if X.contains(C) and C != X]
        if not covers:
            continue
        w = independence_witness(X, covers)
        assert w is not None
        # the witness is in X and in no cover
        assert A.contains(w.b - X.rep) or w.b == X.rep
        assert A.contains(w.a)
        for C in covers:
            assert not (C.ideal.contains(w.b - C.rep) and C.ideal.contains(w.a))


def test_embed_full(Q, m5, gamma_trivial):
    X = ConstructibleIdeal(m5, gamma_trivial, Q.one, ideal_of(Q, 4))
    E = embed_full(X)
    assert E.modulus.is_trivial
    assert (E.rep, E.ideal) == (X.rep, X.ideal)
    assert embed_full(ConstructibleIdeal.empty(m5, gamma_trivial)).is_empty
    # meets commute with the embedding (corrected CRT value 17 mod 28)
    Y = ConstructibleIdeal(m5, gamma_trivial, Q.element(3), ideal_of(Q, 7))
    lhs = embed_full(meet(X, Y))
    rhs = meet(embed_full(X), embed_full(Y))
    assert lhs == rhs
    assert lhs.rep == Q.element(17) and lhs.ideal == ideal_of(Q, 28)


def test_relation_sampler_all_clean(Q, m5, gamma_trivial):
    els = [SemigroupElement(m5, gamma_trivial, Q.element(b), Q.element(a))
           for b in range(-2, 3) for a in (1, 6, 11)]
    ids = [ConstructibleIdeal(m5, gamma_trivial, Q.element(r), ideal_of(Q, n))
           for r, n in ((0, 2), (1, 3), (0, 4), (2, 7), (3, 6))]
    for which in ("Ta", "Tb", "Tc", "Td", "I", "II"):
        report = check_relations(which, els, ids)
        assert report.ok, report.violations
        assert report.checked > 0


def test_prime_in_class_avoiding_examples(Q, m5, gamma_trivial):
    cls2 = ideal_of(Q, 2)
    assert prime_in_class_avoiding(cls2, [], [], m5, gamma_trivial).under == 2
    unit = FractionalIdeal.unit_ideal(Q)
    P = prime_in_class_avoiding(unit, [Q.element(2), Q.element(3)], [], m5,
                                gamma_trivial)
    assert P.under == 11
    P = prime_in_class_avoiding(ideal_of(Q, 4), [Q.element(19)], [], m5,
                                gamma_trivial)
    assert P.under == 29


def test_faithfulness_witness_examples(Q, m5, gamma_trivial):
    unit = FractionalIdeal.unit_ideal(Q)
    w = faithfulness_witness(ideal_of(Q, 2), unit,
                             [(Q.element(3), ideal_of(Q, 9))], m5, gamma_trivial)
    assert w.ideal == ideal_of(Q, 2) and w.rep == Q.zero
    w = faithfulness_witness(unit, unit, [], m5, gamma_trivial)
    assert w.ideal == unit
    w = faithfulness_witness(unit, unit, [(Q.zero, ideal_of(Q, 2))], m5,
                             gamma_trivial)
    assert w.ideal == ideal_of(Q, 11)


def test_faithfulness_witness_postconditions_randomized(Q, m5, gamma_trivial):
    rng = random.Random(12)
    unit = FractionalIdeal.unit_ideal(Q)
    for _ in range(15):
        base = ideal_of(Q, rng.choice([1, 2, 3, 4, 6]))
        target = ideal_of(Q, rng.choice([1, 2, 3, 4, 7, 9]))
        subs = []
        for _ in range(rng.randint(0, 3)):
            extra = rng.choice([2, 3, 7, 9])
            sub_ideal = base * ideal_of(Q, extra)
            y = Q.element(rng.randint(0, 7) * base.norm_int())
            ci = ConstructibleIdeal(m5, gamma_trivial, y, sub_ideal)
            subs.append((ci.rep, ci.ideal))
        w = faithfulness_witness(target, base, subs, m5, gamma_trivial)
        base_ci = ConstructibleIdeal(m5, gamma_trivial, Q.zero, base)
        assert base_ci.contains(w)
        for y, A in subs:
            assert not w.contains(ConstructibleIdeal(m5, gamma_trivial, y, A))


def test_faithfulness_witness_rejects_improper_subcoset(Q, m5, gamma_trivial):
    with pytest.raises(SubcosetNotProperError):
        faithfulness_witness(ideal_of(Q, 2), ideal_of(Q, 4),
                             [(Q.zero, ideal_of(Q, 4))], m5, gamma_trivial)
    with pytest.raises(SubcosetNotProperError):
        faithfulness_witness(ideal_of(Q, 2), ideal_of(Q, 4),
                             [(Q.zero, ideal_of(Q, 6))], m5, gamma_trivial)


def test_constructible_literal_round_trip(Q, Qi, m5, gamma_trivial):
    X = parse_constructible(m5, gamma_trivial, "1+4")
    assert X.rep == Q.one and X.ideal == ideal_of(Q, 4)
    assert parse_constructible(m5, gamma_trivial, X.spec()) == X
    mi = Modulus.trivial(Qi)
    gi = ResidueSubgroup.full(mi)
    Y = parse_constructible(mi, gi, "1+w;5,2+w")
    assert parse_constructible(mi, gi, Y.spec()) == Y
    assert parse_constructible(mi, gi, "empty").is_empty
