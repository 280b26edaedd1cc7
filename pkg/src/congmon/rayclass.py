"""Ray class orders and the finite quotient of ideals by monoid quotients.

The quotient group is materialized concretely: enumerate integral ideals
coprime to m0 up to Minkowski x N(m0), and merge two ideals when their ratio
is principal with a generator whose residue lies in the subgroup generated by
Gamma and the unit image.  The Euler-product order formula is computed
separately and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from functools import lru_cache

from .classgroup import class_group, minkowski_bound, principal_generator
from .errors import CongmonError, PreconditionError, ScaleExceededError
from .fields import AlgebraicNumber, NumberField
from .ideals import FractionalIdeal, PrimeIdeal, integral_ideals_up_to
from .residues import (Modulus, ResidueSubgroup, image_of_units,
                       phi_of_finite_part, residue_of, residue_of_fraction)
from .units import torsion_units, unit_group

MAX_QUOTIENT_SCALE = 20000


@dataclass
class QuotientClassGroup:
    """Classes of ideals coprime to m0 modulo principal monoid quotients."""

    modulus: Modulus
    gamma: ResidueSubgroup
    classes: list[FractionalIdeal]
    _merge: ResidueSubgroup = dfield(repr=False, default=None)
    _memo: dict = dfield(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.classes)

    def equivalent(self, I: FractionalIdeal, J: FractionalIdeal) -> bool:
        g = principal_generator(I * J.inverse())
        if g is None:
            return False
        return residue_of_fraction(g, self.modulus) in self._merge

    def class_of(self, I: FractionalIdeal) -> int:
        key = I.key()
        if key not in self._memo:
            for i, rep in enumerate(self.classes):
                if self.equivalent(I, rep):
                    self._memo[key] = i
                    break
            else:
                raise CongmonError(
                    f"ideal {I.spec()} matched no class representative; "
                    "enumeration bound too small")
        return self._memo[key]

    @property
    def identity_index(self) -> int:
        return self.class_of(FractionalIdeal.unit_ideal(self.modulus.field))

    def compose(self, i: int, j: int) -> int:
        return self.class_of(self.classes[i] * self.classes[j])


@lru_cache(maxsize=None)
def quotient_group(m: Modulus, gamma: ResidueSubgroup,
                   bound_factor: int = 1) -> QuotientClassGroup:
    field = m.field
    if m.finite_norm > MAX_QUOTIENT_SCALE:
        raise ScaleExceededError("finite part beyond desk scale")
    merge = gamma.join(image_of_units(m))
    bound = max(1, minkowski_bound(field)) * max(1, m.finite_norm) * bound_factor
    group = QuotientClassGroup(m, gamma, [], merge)
    for I in integral_ideals_up_to(field, bound, avoid=m.support()):
        if not any(group.equivalent(I, rep) for rep in group.classes):
            group.classes.append(I)
    # re-index the memo now that representatives are final
    group._memo.clear()
    return group


def hm_order(field: NumberField, m: Modulus, bound_factor: int = 1) -> int:
    """Ray class number, by the closed formula AND by enumeration.

    h * [R^* : R^*_{m,1}]^{-1} * 2^r0 * N(m0) * prod(1 - 1/N(p)) must equal
    the brute-force class count; disagreement raises.
    """
    h = class_group(field).order
    unit_index = image_of_units(m).order
    phi = phi_of_finite_part(m)
    num = h * (2 ** m.r0) * phi
    if num % unit_index != 0:
        raise CongmonError("order formula did not divide out the unit index")
    formula = num // unit_index
    from .residues import ResidueSubgroup as RS
    enumerated = quotient_group(m, RS.trivial(m), bound_factor).order
    if formula != enumerated:
        raise CongmonError(
            f"ray class order mismatch: formula {formula}, enumeration "
            f"{enumerated} (raise bound_factor?)")
    return formula


def prime_class_order(P: PrimeIdeal, Q: QuotientClassGroup):
    """(f, t): order f of the class of P, and the least monoid generator t
    of P^f (least over the canonical unit window)."""
    m, gamma = Q.modulus, Q.gamma
    if P in m.support():
        raise PreconditionError("prime divides the modulus")
    ident = Q.identity_index
    f = None
    for k in range(1, Q.order + 1):
        if Q.class_of(P.power(k)) == ident:
            f = k
            break
    if f is None:
        raise CongmonError("class order exceeded the group order")
    g = principal_generator(P.power(f))
    if g is None:
        raise CongmonError("identity class without a principal power")
    candidates = []
    units: list[AlgebraicNumber] = list(torsion_units(m.field))
    eps = unit_group(m.field).fundamental_unit
    if eps is not None:
        r = residue_of(eps, m)
        period = 1
        acc = r
        from .residues import ResidueClass
        ident_cls = ResidueClass.identity(m)
        while acc != ident_cls:
            acc = acc * r
            period += 1
        units = [t * eps ** k for t in units for k in range(period)]
    for u in units:
        cand = g * u
        if residue_of(cand, m) in gamma:
            candidates.append(cand)
    if not candidates:
        raise CongmonError("no generator with residue in the subgroup")
    t = min(candidates, key=lambda x: x.sort_key())
    from .ideals import principal_ideal
    if principal_ideal(t) != P.power(f):
        raise AssertionError("generator does not generate the prime power")
    return f, t


def is_right_lcm(m: Modulus, gamma: ResidueSubgroup,
                 bound_factor: int = 1) -> bool:
    """All constructible ideals principal iff the quotient group is trivial."""
    return quotient_group(m, gamma, bound_factor).order == 1
