"""Moduli, the multiplicative residue group, and congruence monoids.

A modulus is a set of real embeddings together with an integral ideal m0.
The residue of a (coprime to m0) is its sign vector at the chosen embeddings
plus its class mod m0; the group (R/m)* is realized by exhaustive enumeration
of a fundamental domain, which is what makes everything here verifiable.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd, isqrt

from .errors import (NotCoprimeError, NotInKmError, PreconditionError,
                     ScaleExceededError, SpecParseError)
from .fields import AlgebraicNumber, NumberField, format_element, parse_element
from .ideals import (FractionalIdeal, crt_solve, parse_ideal, principal_ideal,
                     search_least, solve_combination, valuation)

MAX_RESIDUE_NORM = 20000


class Modulus:
    """Formal product of real embeddings and an integral ideal."""

    __slots__ = ("field", "infinite_part", "finite_part")

    def __init__(self, field: NumberField, infinite_part, finite_part: FractionalIdeal):
        inf = frozenset(int(i) for i in infinite_part)
        for i in inf:
            if not 0 <= i < len(field.real_embeddings):
                raise SpecParseError(f"embedding index {i} out of range")
        if finite_part.field != field:
            raise SpecParseError("finite part belongs to a different field")
        if not finite_part.is_integral():
            raise SpecParseError("finite part must be an integral ideal")
        self.field = field
        self.infinite_part = inf
        self.finite_part = finite_part

    @classmethod
    def trivial(cls, field: NumberField) -> "Modulus":
        return cls(field, (), FractionalIdeal.unit_ideal(field))

    @property
    def r0(self) -> int:
        return len(self.infinite_part)

    @property
    def is_trivial(self) -> bool:
        return not self.infinite_part and self.finite_norm == 1

    @property
    def finite_norm(self) -> int:
        return self.finite_part.norm_int()

    def support(self):
        return tuple(P for P, _ in self.finite_part.factorization())

    def key(self):
        return (self.field.key(), tuple(sorted(self.infinite_part)),
                self.finite_part.key())

    def __eq__(self, other):
        return isinstance(other, Modulus) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Modulus({self.spec()!r})"

    def spec(self) -> str:
        inf = ",".join(str(i) for i in sorted(self.infinite_part))
        return f"inf:{inf};fin:{self.finite_part.spec()}"

    def divides(self, other: "Modulus") -> bool:
        """Componentwise divisibility: m_inf subset and m0 | n0."""
        if self.field != other.field:
            raise PreconditionError("moduli over different fields")
        return (self.infinite_part <= other.infinite_part
                and self.finite_part.divides(other.finite_part))

    def sign_vector(self, x: AlgebraicNumber) -> tuple[int, ...]:
        signs = x.embedding_signs()
        return tuple(signs[i] for i in sorted(self.infinite_part))

    def is_coprime_element(self, x: AlgebraicNumber) -> bool:
        if x.is_zero():
            return False
        xi = principal_ideal(x)
        return all(valuation(xi, P) == 0 for P in self.support())

    def is_coprime_int(self, p: int, q: int) -> bool:
        """Coprimality of an integral element, by support membership only."""
        if (p, q) == (0, 0):
            return False
        return all(not P.ideal.contains_int(p, q) for P in self.support())


def parse_modulus(field: NumberField, spec: str) -> Modulus:
    inf: list[int] = []
    fin = FractionalIdeal.unit_ideal(field)
    s = spec.strip()
    if s:
        for seg in s.split(";"):
            seg = seg.strip()
            if not seg:
                continue
            if seg.startswith("inf:"):
                body = seg[4:].strip()
                if body:
                    try:
                        inf = [int(t) for t in body.split(",")]
                    except ValueError as e:
                        raise SpecParseError(f"bad embedding list {body!r}") from e
            elif seg.startswith("fin:"):
                body = seg[4:].strip()
                if body:
                    fin = parse_ideal(field, body)
            else:
                raise SpecParseError(f"bad modulus segment {seg!r}")
    return Modulus(field, inf, fin)


class ResidueClass:
    """Point of (R/m)*: a sign vector and a canonical residue mod m0."""

    __slots__ = ("modulus", "signs", "rep")

    def __init__(self, modulus: Modulus, signs: tuple[int, ...], rep: tuple[int, int]):
        if len(signs) != modulus.r0 or any(s not in (1, -1) for s in signs):
            raise ValueError("bad sign vector")
        self.modulus = modulus
        self.signs = tuple(signs)
        self.rep = modulus.finite_part.reduce_int(*rep)

    @classmethod
    def identity(cls, modulus: Modulus) -> "ResidueClass":
        return cls(modulus, (1,) * modulus.r0, (1, 0))

    def rep_element(self) -> AlgebraicNumber:
        return self.modulus.field.element(*self.rep)

    def __mul__(self, other: "ResidueClass") -> "ResidueClass":
        if self.modulus != other.modulus:
            raise PreconditionError("residues modulo different moduli")
        prod = self.modulus.field.mul_int(self.rep, other.rep)
        signs = tuple(a * b for a, b in zip(self.signs, other.signs))
        return ResidueClass(self.modulus, signs, prod)

    def inverse(self) -> "ResidueClass":
        m0 = self.modulus.finite_part
        K = self.modulus.field
        if m0.norm_int() == 1:
            inv = (1, 0)
        else:
            one = K.mul_int(self.rep, (1, 0))
            omega_mult = K.mul_int(self.rep, (0, 1))
            rows = [one, omega_mult] + m0.int_rows()
            sol = solve_combination(rows, (1, 0))
            if sol is None:
                raise NotCoprimeError("residue is not invertible")
            inv = (sol[0], sol[1])
        return ResidueClass(self.modulus, self.signs, inv)

    def __pow__(self, k: int) -> "ResidueClass":
        if k < 0:
            return self.inverse() ** (-k)
        out = ResidueClass.identity(self.modulus)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def key(self):
        return (self.modulus.key(), self.signs, self.rep)

    def __eq__(self, other):
        return isinstance(other, ResidueClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        sgn = "".join("+" if s > 0 else "-" for s in self.signs)
        return f"[{sgn}|{format_element(self.rep_element())}]"


def residue_of(a: AlgebraicNumber, m: Modulus) -> ResidueClass:
    """Residue of a nonzero integral element coprime to m0."""
    if a.is_zero():
        raise PreconditionError("zero has no residue")
    if not a.is_integral():
        raise PreconditionError("integral element required")
    p, q = a.int_coords()
    if not m.is_coprime_int(p, q):
        raise NotCoprimeError(f"{a} is not coprime to the finite part")
    return ResidueClass(m, m.sign_vector(a), (p, q))


def quotient_rep_in_Rm(x: AlgebraicNumber, m: Modulus):
    """Write x = a/b with a, b integral and coprime to m0.

    Requires v_p(x) = 0 at every prime of the support; raises NotInKm else.
    """
    if x.is_zero():
        raise PreconditionError("zero element")
    xi = principal_ideal(x)
    for P in m.support():
        if valuation(xi, P) != 0:
            raise NotInKmError(f"{x} has nonzero valuation at {P.ideal.spec()}")
    K = m.field
    den = x.p.denominator
    den = den * x.q.denominator // gcd(den, x.q.denominator)
    y = x * den
    dden = K.element(den)
    if den == 1:
        return y, K.one
    if m.is_coprime_element(dden):
        return y, dden
    # strip the support part of the denominator with a search over the
    # complementary ideal
    bad = [(P, -e) for P, e in xi.factorization() if e < 0]
    B = FractionalIdeal.unit_ideal(K)
    for P, e in bad:
        B = B * P.power(e)
    witness = crt_solve([(K.zero, B), (K.one, m.finite_part)])
    wp, wq = witness.int_coords()
    cap = 2 * max(abs(wp), abs(wq), 4) + 8
    pt = search_least(K, (0, 0), B, lambda xy: m.is_coprime_int(*xy),
                      cap_radius=cap, what="denominator")
    b = K.element(*pt)
    a = x * b
    return a, b


def residue_of_fraction(x: AlgebraicNumber, m: Modulus) -> ResidueClass:
    """Extension of the residue map to quotients; representation independent."""
    a, b = quotient_rep_in_Rm(x, m)
    return residue_of(a, m) * residue_of(b, m).inverse()


@lru_cache(maxsize=None)
def residue_group(m: Modulus) -> tuple[ResidueClass, ...]:
    """Enumerated (R/m)*; order 2^r0 * phi(m0)."""
    n = m.finite_norm
    if n > MAX_RESIDUE_NORM:
        raise ScaleExceededError(f"N(m0) = {n} beyond desk scale")
    if n == 1:
        reps = [(0, 0)]  # the class of 1 mod the unit ideal
    else:
        reps = [r for r in m.finite_part.residue_reps() if m.is_coprime_int(*r)]
    out = []
    for signs in itertools.product((1, -1), repeat=m.r0):
        for r in reps:
            out.append(ResidueClass(m, signs, r))
    return tuple(out)


def phi_of_finite_part(m: Modulus) -> int:
    """|(R/m0)*| from the factorization (Euler product)."""
    out = 1
    for P, e in m.finite_part.factorization():
        np = P.norm_int()
        out *= np ** (e - 1) * (np - 1)
    return out


class ResidueSubgroup:
    """Subgroup of (R/m)*, stored as its full member set."""

    __slots__ = ("modulus", "members", "spec_hint")

    def __init__(self, modulus: Modulus, members, spec_hint: str = ""):
        self.modulus = modulus
        self.members = frozenset(members)
        self.spec_hint = spec_hint
        if not self.members:
            raise ValueError("empty subgroup")

    @classmethod
    def generated(cls, modulus: Modulus, gens, spec_hint: str = "") -> "ResidueSubgroup":
        """Closure of the generators under product (inverses come for free)."""
        ident = ResidueClass.identity(modulus)
        done = {ident}
        frontier = [ident]
        gens = list(gens)
        while frontier:
            nxt = []
            for cur in frontier:
                for g in gens:
                    v = cur * g
                    if v not in done:
                        done.add(v)
                        nxt.append(v)
            frontier = nxt
        return cls(modulus, done, spec_hint or "gens:" + ",".join(
            format_element(representative_element(g)) for g in gens))

    @classmethod
    def from_classes(cls, modulus: Modulus, members, close: bool = True,
                     spec_hint: str = "") -> "ResidueSubgroup":
        """Subgroup from raw classes; close them, or reject non-closed input."""
        members = list(members)
        if close:
            return cls.generated(modulus, members, spec_hint)
        got = set(members)
        ident = ResidueClass.identity(modulus)
        if ident not in got or any(a * b not in got for a in got for b in got):
            raise PreconditionError("classes do not form a subgroup")
        return cls(modulus, got, spec_hint)

    @classmethod
    def trivial(cls, modulus: Modulus) -> "ResidueSubgroup":
        return cls(modulus, [ResidueClass.identity(modulus)], "trivial")

    @classmethod
    def full(cls, modulus: Modulus) -> "ResidueSubgroup":
        return cls(modulus, residue_group(modulus), "full")

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[ResidueClass]:
        # canonical order: residue coordinates, then positive signs first
        return sorted(self.members,
                      key=lambda c: (c.rep, tuple(s < 0 for s in c.signs)))

    def __contains__(self, c: ResidueClass) -> bool:
        return c in self.members

    def group_order(self) -> int:
        return (2 ** self.modulus.r0) * phi_of_finite_part(self.modulus)

    def index(self) -> int:
        return self.group_order() // self.order

    def cosets(self) -> list[frozenset]:
        seen = set()
        out = []
        for c in residue_group(self.modulus):
            if c in seen:
                continue
            coset = frozenset(c * h for h in self.members)
            seen |= coset
            out.append(coset)
        return out

    def join(self, other: "ResidueSubgroup") -> "ResidueSubgroup":
        return ResidueSubgroup.generated(
            self.modulus, list(self.members | other.members))

    def key(self):
        return (self.modulus.key(), tuple(sorted(c.key() for c in self.members)))

    def __eq__(self, other):
        return isinstance(other, ResidueSubgroup) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.modulus.spec()!r})"


def representative_element(c: ResidueClass) -> AlgebraicNumber:
    """Some integral element with residue exactly c (signs included)."""
    m = c.modulus
    K = m.field
    idx = sorted(m.infinite_part)

    def ok(pt):
        signs = K.embedding_signs_int(pt)
        return tuple(signs[i] for i in idx) == c.signs

    if ok(c.rep):
        return K.element(*c.rep)
    g = m.finite_part.norm_int()
    if K.is_rational or K.d < 0:
        directions = [(1, 0), (-1, 0)]
    else:
        directions = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    k = 1
    while True:
        for dp, dq in directions:
            pt = (c.rep[0] + k * g * dp, c.rep[1] + k * g * dq)
            if pt != (0, 0) and ok(pt):
                return K.element(*pt)
        k *= 2


def parse_gamma(m: Modulus, spec: str) -> ResidueSubgroup:
    s = spec.strip()
    if s == "trivial":
        return ResidueSubgroup.trivial(m)
    if s == "full":
        return ResidueSubgroup.full(m)
    if s.startswith("gens:"):
        body = s[len("gens:"):]
        elems = [parse_element(m.field, t) for t in body.split(",") if t.strip()]
        if not elems:
            raise SpecParseError("empty generator list")
        return ResidueSubgroup.generated(m, [residue_of(e, m) for e in elems])
    raise SpecParseError(f"bad gamma spec {spec!r} (trivial|full|gens:<elements>)")


@lru_cache(maxsize=None)
def image_of_units(m: Modulus) -> ResidueSubgroup:
    """Subgroup {[u]_m : u a unit of R}; finite by residue cycling."""
    from .units import unit_group
    data = unit_group(m.field)
    gens = [residue_of(data.torsion_generator, m)]
    if data.fundamental_unit is not None:
        gens.append(residue_of(data.fundamental_unit, m))
    return ResidueSubgroup.generated(m, gens, spec_hint="units")


def monoid_reject_reason(a: AlgebraicNumber, m: Modulus,
                         gamma: ResidueSubgroup):
    """None when a is in the congruence monoid, else the failing condition."""
    if a.is_zero():
        raise PreconditionError("zero is not in the monoid")
    if not a.is_integral():
        return "not_integral"
    if not m.is_coprime_int(*a.int_coords()):
        return "not_coprime"
    if residue_of(a, m) not in gamma:
        return "not_in_gamma"
    return None


def in_congruence_monoid(a: AlgebraicNumber, m: Modulus,
                         gamma: ResidueSubgroup) -> bool:
    return monoid_reject_reason(a, m, gamma) is None


def coordinate_box(field: NumberField, norm_bound: int) -> tuple[int, int]:
    """(p_radius, q_radius) of the integer box implied by a norm bound."""
    if field.is_rational:
        return norm_bound, 0
    d = abs(field.d)
    qrad = isqrt(4 * norm_bound // d) + 1
    prad = isqrt(norm_bound) + qrad // 2 + 2
    return prad, qrad


def enumerate_monoid(m: Modulus, gamma: ResidueSubgroup,
                     norm_bound: int) -> list[AlgebraicNumber]:
    """Monoid elements in the coordinate box of the norm bound, sorted."""
    if norm_bound < 1:
        return []
    K = m.field
    prad, qrad = coordinate_box(K, norm_bound)
    out = []
    for q in range(-qrad, qrad + 1):
        for p in range(-prad, prad + 1):
            if (p, q) == (0, 0):
                continue
            if abs(K.norm_int((p, q))) > norm_bound:
                continue
            if not m.is_coprime_int(p, q):
                continue
            x = K.element(p, q)
            if residue_of(x, m) in gamma:
                out.append(x)
    out.sort(key=lambda x: x.sort_key())
    return out
