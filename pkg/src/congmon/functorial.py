"""Partial order on (modulus, subgroup) pairs and inclusion criteria.

Both the inter-monoid criterion (divisibility plus residue projection) and
the field-inclusion criterion (for Q into a quadratic field) come with an
independent enumeration check; the projection maps are computed residue by
residue through canonical representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .constructions import element_with_residue
from .errors import PreconditionError, SearchBoundExceededError
from .fields import AlgebraicNumber, NumberField
from .ideals import FractionalIdeal
from .residues import (Modulus, ResidueClass, ResidueSubgroup,
                       enumerate_monoid, in_congruence_monoid,
                       phi_of_finite_part)


@dataclass(frozen=True)
class MonoidDescriptor:
    field: NumberField
    modulus: Modulus
    gamma: ResidueSubgroup

    def spec(self) -> str:
        return f"{self.modulus.spec()}@{self.gamma.spec_hint or 'gens'}"


def project_residue(c: ResidueClass, target: Modulus) -> ResidueClass:
    """Projection (R/n)* -> (R/m)* for m | n, through the canonical rep."""
    src = c.modulus
    if not target.divides(src):
        raise PreconditionError("projection needs the target to divide the source")
    src_idx = sorted(src.infinite_part)
    signs = tuple(c.signs[src_idx.index(i)] for i in sorted(target.infinite_part))
    return ResidueClass(target, signs, c.rep)


def leq_pairs(P1: MonoidDescriptor, P2: MonoidDescriptor) -> bool:
    """P1 <= P2: the modulus of P1 divides that of P2 and the projected
    subgroup of P2 lands inside the subgroup of P1."""
    if P1.field != P2.field:
        raise PreconditionError("descriptors over different fields")
    if not P1.modulus.divides(P2.modulus):
        return False
    return all(project_residue(lam, P1.modulus) in P1.gamma
               for lam in P2.gamma.sorted_members())


def reduced_pair(P: MonoidDescriptor) -> MonoidDescriptor:
    """Conductor reduction: the least pair cutting out the same monoid.

    A pair is redundant when its subgroup is the full preimage of its image
    modulo a smaller modulus with the same finite support (the coprimality
    condition only sees the support, the residue condition factors through
    the projection).  The inclusion criterion is an honest iff only on
    reduced pairs: (inf.12, full) and (inf.6, full) describe one monoid.
    """
    m, gamma = P.modulus, P.gamma
    fact = m.finite_part.factorization()
    ranges = [range(1, e + 1) for _, e in fact]
    inf = tuple(sorted(m.infinite_part))
    candidates = []
    for exps in itertools.product(*ranges):
        f0 = FractionalIdeal.unit_ideal(P.field)
        for (Pr, _), e in zip(fact, exps):
            f0 = f0 * Pr.power(e)
        for r in range(len(inf) + 1):
            for sub in itertools.combinations(inf, r):
                candidates.append(Modulus(P.field, sub, f0))
    candidates.sort(key=lambda f: (f.finite_norm, f.r0, f.key()))
    for f in candidates:
        group_ratio = gamma.group_order() // (
            (2 ** f.r0) * phi_of_finite_part(f))
        proj = {project_residue(c, f) for c in gamma.members}
        if len(proj) * group_ratio == gamma.order:
            if f == m:
                return P
            return MonoidDescriptor(P.field, f,
                                    ResidueSubgroup(f, proj, "reduced"))
    return P


def monoid_inclusion_check(P1: MonoidDescriptor, P2: MonoidDescriptor,
                           enum_bound: int = 1000):
    """(verdict, counterexample) for: the monoid of P2 sits inside that of P1.

    Decided by the pair order after conductor reduction of the target; a
    False verdict carries an explicit witness element.
    """
    if P1.field != P2.field:
        raise PreconditionError("descriptors over different fields")
    P1r = reduced_pair(P1)
    verdict = leq_pairs(P1r, P2)
    if verdict:
        return True, None
    if P1r.modulus.divides(P2.modulus):
        bad = next(lam for lam in P2.gamma.sorted_members()
                   if project_residue(lam, P1r.modulus) not in P1r.gamma)
        witness = element_with_residue(bad, P2.modulus)
        return False, witness
    for a in enumerate_monoid(P2.modulus, P2.gamma, enum_bound):
        if not in_congruence_monoid(a, P1.modulus, P1.gamma):
            return False, a
    raise SearchBoundExceededError(
        f"no counterexample of norm <= {enum_bound} found")


def ray_positivity_detect(embedding_index: int, m: Modulus,
                          search_bound: int = 1000):
    """('forced', None) when the embedding divides the modulus; otherwise a
    ray element that is negative there ('counterexample', x)."""
    K = m.field
    if not 0 <= embedding_index < len(K.real_embeddings):
        raise PreconditionError("no such real embedding")
    if embedding_index in m.infinite_part:
        return "forced", None
    trivial = ResidueSubgroup.trivial(m)
    for a in enumerate_monoid(m, trivial, search_bound):
        if a.embedding_signs()[embedding_index] < 0:
            return "counterexample", a
    raise SearchBoundExceededError(
        f"no ray element of norm <= {search_bound} is negative at the embedding")


def induce_element(target: NumberField, x: AlgebraicNumber) -> AlgebraicNumber:
    if not x.field.is_rational:
        raise PreconditionError("field inclusions start from Q here")
    return target.element(x.p)


def induced_modulus(target: NumberField, m: Modulus) -> Modulus:
    """Push a modulus of Q through Q -> K': all compatible embeddings, and
    the extension of the finite part."""
    if not m.field.is_rational:
        raise PreconditionError("field inclusions start from Q here")
    if target.is_rational:
        raise PreconditionError("target field must be quadratic")
    inf = range(len(target.real_embeddings)) if m.infinite_part else ()
    gens = [induce_element(target, e) for e in m.finite_part.basis_elements()]
    return Modulus(target, inf, FractionalIdeal.from_elements(target, gens))


def residue_extension(c: ResidueClass, m_tilde: Modulus) -> ResidueClass:
    """phi: (R/m)* -> (R'/m~)* induced by the inclusion of Q."""
    K2 = m_tilde.field
    a = K2.element(c.rep[0])
    signs = ()
    if m_tilde.infinite_part:
        signs = (c.signs[0],) * len(m_tilde.infinite_part)
    return ResidueClass(m_tilde, signs, a.int_coords())


def field_inclusion_check(P1: MonoidDescriptor, P2: MonoidDescriptor,
                          enum_bound: int = 1000):
    """(verdict, counterexample) for i(R_{m,Gamma}) inside R'_{m',Gamma'}.

    Criterion: m' divides the induced modulus and the projected image of
    Gamma lands in Gamma'.
    """
    if not P1.field.is_rational or P2.field.is_rational:
        raise PreconditionError("need a descriptor over Q and one over a quadratic field")
    m_tilde = induced_modulus(P2.field, P1.modulus)
    P2r = reduced_pair(P2)
    if P2r.modulus.divides(m_tilde):
        bad = None
        for gam in P1.gamma.sorted_members():
            image = project_residue(residue_extension(gam, m_tilde), P2r.modulus)
            if image not in P2r.gamma:
                bad = gam
                break
        if bad is None:
            return True, None
        witness = element_with_residue(bad, P1.modulus)
        return False, witness
    for a in enumerate_monoid(P1.modulus, P1.gamma, enum_bound):
        if not in_congruence_monoid(induce_element(P2.field, a),
                                    P2.modulus, P2.gamma):
            return False, a
    raise SearchBoundExceededError(
        f"no counterexample of norm <= {enum_bound} found")
