"""Constructive witnesses inside congruence monoids.

Everything here is a bounded, deterministic search: results are the least
valid answer under the canonical order (norm, then coordinates, positive
signs first), with existence certified up front by an explicit CRT + lift
construction that also caps the search radius.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInKmError, NotInKmGammaError, PreconditionError
from .fields import AlgebraicNumber
from .ideals import (FractionalIdeal, crt_solve, principal_ideal, search_least,
                     totally_positive_lift, uniformizer)
from .residues import (Modulus, ResidueClass, ResidueSubgroup, coordinate_box,
                       in_congruence_monoid, quotient_rep_in_Rm,
                       representative_element, residue_of)


@dataclass(frozen=True)
class QuotientPair:
    numerator: AlgebraicNumber
    denominator: AlgebraicNumber

    def value(self) -> AlgebraicNumber:
        return self.numerator / self.denominator


def in_ray(a: AlgebraicNumber, m: Modulus) -> bool:
    """a = 1 mod m0 and positive at every embedding dividing m."""
    if a.is_zero() or not a.is_integral():
        return False
    if not m.is_coprime_int(*a.int_coords()):
        return False
    return residue_of(a, m) == ResidueClass.identity(m)


def _validate_prescription(prescribed, m: Modulus):
    seen = set()
    support = set(m.support())
    for P, n in prescribed:
        if n < 0:
            raise PreconditionError("exponents must be nonnegative")
        if P in support:
            raise PreconditionError(
                f"prime {P.ideal.spec()} divides the finite part")
        if P in seen:
            raise PreconditionError("primes must be distinct")
        seen.add(P)


def approx_element(prescribed, m: Modulus) -> AlgebraicNumber:
    """Least totally positive element of 1 + m0 with the exact valuations.

    prescribed is a list of (PrimeIdeal, n >= 0) pairs away from the support.
    Existence comes from the CRT-of-uniformizer-powers construction, which
    also bounds the search window.
    """
    prescribed = list(prescribed)
    _validate_prescription(prescribed, m)
    K = m.field
    A = FractionalIdeal.unit_ideal(K)
    for P, n in prescribed:
        A = A * P.power(n)
    m0 = m.finite_part
    base = crt_solve([(K.zero, A), (K.one, m0)])
    lattice = A * m0

    over = [P.power(n + 1) for P, n in prescribed]

    def valid(pt):
        if any(o.contains_int(*pt) for o in over):
            return False
        return K.is_totally_positive_int(pt)

    # explicit witness: uniformizer powers mod p^(n+1), 1 mod m0, then lift
    congruences = [(uniformizer(P) ** n, P.power(n + 1)) for P, n in prescribed]
    congruences.append((K.one, m0))
    lift_lattice = m0
    for P, n in prescribed:
        lift_lattice = lift_lattice * P.power(n + 1)
    witness = totally_positive_lift(crt_solve(congruences), lift_lattice)
    wp, wq = witness.int_coords()
    cap = 2 * max(abs(wp), abs(wq), 4) + 8

    bp, bq = base.int_coords()
    pt = search_least(K, (bp, bq), lattice, valid, cap_radius=cap,
                      what="prescribed-valuation element")
    return K.element(*pt)


def element_with_residue(target: ResidueClass, m: Modulus,
                         cap_radius: int | None = None) -> AlgebraicNumber:
    """Least integral element whose residue mod m equals `target`."""
    K = m.field
    rep = target.rep
    want = target.signs
    idx = sorted(m.infinite_part)

    def valid(pt):
        signs = K.embedding_signs_int(pt)
        return tuple(signs[i] for i in idx) == want

    if cap_radius is None:
        wp, wq = representative_element(target).int_coords()
        cap_radius = 2 * max(abs(wp), abs(wq), 4) + 8
    pt = search_least(K, rep, m.finite_part, valid, cap_radius=cap_radius,
                      what="element with prescribed residue")
    return K.element(*pt)


def monoid_quotient_rep(x: AlgebraicNumber, m: Modulus,
                        gamma: ResidueSubgroup) -> QuotientPair:
    """x = numerator/denominator with both factors in the congruence monoid."""
    try:
        a, b = quotient_rep_in_Rm(x, m)
    except NotInKmError as e:
        raise NotInKmGammaError(str(e)) from e
    ra = residue_of(a, m)
    rb = residue_of(b, m)
    if ra * rb.inverse() not in gamma:
        raise NotInKmGammaError(f"residue of {x} lies outside the subgroup")
    c = element_with_residue(ra.inverse(), m)
    num, den = a * c, b * c
    pair = QuotientPair(num, den)
    if not (in_congruence_monoid(num, m, gamma)
            and in_congruence_monoid(den, m, gamma)):
        raise AssertionError("quotient representation left the monoid")
    return pair


def _require_ray_member_of(A: FractionalIdeal, a: AlgebraicNumber, m: Modulus):
    if not A.is_integral():
        raise PreconditionError("ideal must be integral")
    if not A.is_coprime(m.finite_part):
        raise PreconditionError("ideal must be coprime to the finite part")
    if not A.contains(a):
        raise PreconditionError(f"{a} is not in the ideal")
    if not in_ray(a, m):
        raise PreconditionError(f"{a} is not in the ray mod the modulus")


def second_generator(a: AlgebraicNumber, A: FractionalIdeal,
                     m: Modulus) -> AlgebraicNumber:
    """b in A and in the ray with aR + bR = A exactly."""
    _require_ray_member_of(A, a, m)
    cofactor = principal_ideal(a) * A.inverse()
    vals: dict = {}
    for P, e in A.factorization():
        vals[P] = e
    for P, _ in cofactor.factorization():
        vals.setdefault(P, 0)
    b = approx_element(sorted(vals.items(), key=lambda t: t[0].sort_key()), m)
    if principal_ideal(a) + principal_ideal(b) != A:
        raise AssertionError("two-generator construction failed")
    return b


def integral_part(I: FractionalIdeal) -> FractionalIdeal:
    """I intersected with R, via max(v, 0) on the factorization."""
    out = FractionalIdeal.unit_ideal(I.field)
    for P, e in I.factorization():
        if e > 0:
            out = out * P.power(e)
    return out


def cutdown_pair(A: FractionalIdeal, a: AlgebraicNumber,
                 m: Modulus) -> AlgebraicNumber:
    """b in the ray with (a/b)R intersect R = A exactly."""
    _require_ray_member_of(A, a, m)
    cofactor = principal_ideal(a) * A.inverse()
    b = second_generator(a, cofactor, m)
    if integral_part(principal_ideal(a / b)) != A:
        raise AssertionError("cutdown construction failed")
    return b


def ray_generates_check(A: FractionalIdeal, m: Modulus,
                        norm_bound: int | None = None):
    """Bounded verifier that A is generated by its totally positive ray part.

    Returns (ok, generators).  False only ever means "bound too small".
    """
    if not A.is_integral() or not A.is_coprime(m.finite_part):
        raise PreconditionError("need an integral ideal coprime to the modulus")
    K = m.field
    if norm_bound is None:
        norm_bound = 20 * A.norm_int() * m.finite_norm
    base = crt_solve([(K.zero, A), (K.one, m.finite_part)])
    lattice = A * m.finite_part
    prad, qrad = coordinate_box(K, norm_bound)
    gens = []
    from .ideals import iter_coset_points
    bp, bq = base.int_coords()
    for pt in iter_coset_points(K, (bp, bq), lattice, max(prad, qrad)):
        if pt == (0, 0) or abs(K.norm_int(pt)) > norm_bound:
            continue
        if K.is_totally_positive_int(pt):
            gens.append(K.element(*pt))
    gens.sort(key=lambda g: g.sort_key())
    if not gens:
        return False, []
    return FractionalIdeal.from_elements(K, gens) == A, gens


def in_localization(x: AlgebraicNumber, m: Modulus):
    """(a, b) with a integral, b integral coprime to m0, x = a/b.

    None when x has a negative valuation at a prime of the support.
    """
    K = m.field
    if x.is_zero():
        return K.zero, K.one
    xi = principal_ideal(x)
    support = set(m.support())
    bad = []
    for P, e in xi.factorization():
        if e < 0:
            if P in support:
                return None
            bad.append((P, -e))
    if not bad:
        return x, K.one
    B = FractionalIdeal.unit_ideal(K)
    for P, e in bad:
        B = B * P.power(e)
    witness = crt_solve([(K.zero, B), (K.one, m.finite_part)])
    wp, wq = witness.int_coords()
    cap = 2 * max(abs(wp), abs(wq), 4) + 8
    pt = search_least(K, (0, 0), B, lambda xy: m.is_coprime_int(*xy),
                      cap_radius=cap, what="localization denominator")
    b = K.element(*pt)
    return x * b, b
