"""The semilattice of constructible ideals of an ax+b congruence semigroup.

A nonempty constructible ideal is a coset x + a (a integral, coprime to the
finite part of the modulus) together with the implicit monoid part a cap
R_{m,Gamma}; the pair is encoded by the canonical residue and the ideal, so
encoding equality is set equality.  Meets go through exact ideal CRT, the
semigroup acts by (b,a).(x+a) = b+ax+a*a, and the witness constructions are
the exact-valuation searches from the constructions module.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .constructions import approx_element
from .errors import (ContextMismatchError, PreconditionError,
                     SearchBoundExceededError, SpecParseError)
from .fields import AlgebraicNumber, format_element, parse_element
from .ideals import (FractionalIdeal,parse_ideal, primes_above, principal_ideal,
                     split_over_sum)
from .rayclass import quotient_group
from .residues import Modulus, ResidueSubgroup, in_congruence_monoid


class SubcosetNotProperError(PreconditionError):
    pass


class ConstructibleIdeal:
    """Empty, or (canonical coset representative, integral ideal)."""

    __slots__ = ("modulus", "gamma", "rep", "ideal")

    def __init__(self, modulus: Modulus, gamma: ResidueSubgroup,
                 rep: AlgebraicNumber | None, ideal: FractionalIdeal | None):
        self.modulus = modulus
        self.gamma = gamma
        if (rep is None) != (ideal is None):
            raise ValueError("rep and ideal must both be set or both empty")
        if ideal is not None:
            if not ideal.is_integral():
                raise PreconditionError("constructible ideal must be integral")
            if not ideal.is_coprime(modulus.finite_part):
                raise PreconditionError(
                    "ideal must be coprime to the finite part of the modulus")
            if not rep.is_integral():
                raise PreconditionError("representative must be integral")
            rep = ideal.reduce(rep)
        self.rep = rep
        self.ideal = ideal

    @classmethod
    def empty(cls, modulus, gamma) -> "ConstructibleIdeal":
        return cls(modulus, gamma, None, None)

    @classmethod
    def unit(cls, modulus, gamma) -> "ConstructibleIdeal":
        K = modulus.field
        return cls(modulus, gamma, K.zero, FractionalIdeal.unit_ideal(K))

    @property
    def is_empty(self) -> bool:
        return self.ideal is None

    def context(self):
        return (self.modulus, self.gamma)

    def _same_context(self, other: "ConstructibleIdeal"):
        if self.modulus != other.modulus or self.gamma != other.gamma:
            raise ContextMismatchError("constructible ideals from different contexts")

    def key(self):
        if self.is_empty:
            return (self.modulus.key(), None)
        return (self.modulus.key(), self.rep.int_coords(), self.ideal.key())

    def __eq__(self, other):
        return (isinstance(other, ConstructibleIdeal)
                and self.gamma == other.gamma and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CI({self.spec()})"

    def spec(self) -> str:
        if self.is_empty:
            return "empty"
        if self.modulus.field.is_rational:
            return f"{self.rep.p}+{self.ideal.spec()}"
        return f"{format_element(self.rep)};{self.ideal.spec()}"

    def contains(self, other: "ConstructibleIdeal") -> bool:
        """Set containment other subset-of self (coset and monoid part)."""
        self._same_context(other)
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        if not self.ideal.divides(other.ideal):
            return False
        return self.ideal.contains(other.rep - self.rep)


def parse_constructible(modulus: Modulus, gamma: ResidueSubgroup,
                        spec: str) -> ConstructibleIdeal:
    s = spec.strip()
    if s == "empty":
        return ConstructibleIdeal.empty(modulus, gamma)
    K = modulus.field
    if ";" in s:
        rep_s, ideal_s = s.split(";", 1)
    elif K.is_rational and "+" in s:
        rep_s, ideal_s = s.split("+", 1)
    else:
        raise SpecParseError(f"bad constructible-ideal literal {spec!r}")
    return ConstructibleIdeal(modulus, gamma, parse_element(K, rep_s),
                              parse_ideal(K, ideal_s))


class SemigroupElement:
    """Pair (b, a): translation by b then scaling by the monoid element a."""

    __slots__ = ("modulus", "gamma", "b", "a")

    def __init__(self, modulus: Modulus, gamma: ResidueSubgroup,
                 b: AlgebraicNumber, a: AlgebraicNumber):
        if not b.is_integral():
            raise PreconditionError("translation part must be integral")
        if not in_congruence_monoid(a, modulus, gamma):
            raise PreconditionError(f"{a} is not in the congruence monoid")
        self.modulus = modulus
        self.gamma = gamma
        self.b = b
        self.a = a

    def __mul__(self, other: "SemigroupElement") -> "SemigroupElement":
        if self.modulus != other.modulus or self.gamma != other.gamma:
            raise ContextMismatchError("elements from different contexts")
        return SemigroupElement(self.modulus, self.gamma,
                                self.b + self.a * other.b, self.a * other.a)

    def key(self):
        return (self.modulus.key(), self.b.int_coords(), self.a.int_coords())

    def __eq__(self, other):
        return (isinstance(other, SemigroupElement)
                and self.gamma == other.gamma and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"({format_element(self.b)}, {format_element(self.a)})"


def meet(X: ConstructibleIdeal, Y: ConstructibleIdeal) -> ConstructibleIdeal:
    """Intersection; Empty exactly when the cosets are disjoint."""
    X._same_context(Y)
    if X.is_empty or Y.is_empty:
        return ConstructibleIdeal.empty(X.modulus, X.gamma)
    pair = split_over_sum(X.ideal, Y.ideal, Y.rep - X.rep)
    if pair is None:
        return ConstructibleIdeal.empty(X.modulus, X.gamma)
    u, _ = pair
    return ConstructibleIdeal(X.modulus, X.gamma, X.rep + u,
                              X.ideal.intersect(Y.ideal))


def act(g: SemigroupElement, X: ConstructibleIdeal) -> ConstructibleIdeal:
    """(b,a).[(x+a) x (a cap monoid)] = (b+ax+a*a) x (a*a cap monoid)."""
    if g.modulus != X.modulus or g.gamma != X.gamma:
        raise ContextMismatchError("element and ideal from different contexts")
    if X.is_empty:
        return X
    return ConstructibleIdeal(X.modulus, X.gamma, g.b + g.a * X.rep,
                              principal_ideal(g.a) * X.ideal)


def independence_witness(X: ConstructibleIdeal, covers):
    """Element of X outside every strictly smaller cover, or None.

    None is returned exactly when some cover equals X.  The monoid part of
    the witness is an exact-valuation ray element missing every smaller
    ideal, per the independence argument.
    """
    covers = list(covers)
    for C in covers:
        if not X.contains(C):
            raise PreconditionError("cover is not contained in the ideal")
    if any(C == X for C in covers):
        return None
    if X.is_empty:
        raise PreconditionError("empty ideal has no witness")
    strict = [C for C in covers if not C.is_empty]
    xfact = dict(X.ideal.factorization())
    primes = set(xfact)
    for C in strict:
        primes.update(P for P, _ in C.ideal.factorization())
    prescription = sorted(((P, xfact.get(P, 0)) for P in primes),
                          key=lambda t: t[0].sort_key())
    a = approx_element(prescription, X.modulus)
    witness = SemigroupElement(X.modulus, X.gamma, X.rep, a)
    for C in strict:
        inside = C.ideal.contains(witness.b - C.rep) and C.ideal.contains(a)
        if inside:
            raise AssertionError("independence witness landed in a cover")
    return witness


def embed_full(X: ConstructibleIdeal) -> ConstructibleIdeal:
    """Re-context the pair into the full ax+b semigroup (trivial modulus)."""
    m0 = Modulus.trivial(X.modulus.field)
    g0 = ResidueSubgroup.full(m0)
    if X.is_empty:
        return ConstructibleIdeal.empty(m0, g0)
    return ConstructibleIdeal(m0, g0, X.rep, X.ideal)


@dataclass
class RelationReport:
    relation: str
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def check_relations(which: str, elements, ideals) -> RelationReport:
    """Sample-verify a presentation relation in the set-level model.

    Any violation is an implementation bug, not a property of the inputs.
    """
    elements = list(elements)
    ideals = [X for X in ideals if not X.is_empty]
    checked = 0
    bad = []

    def base(X):
        return ConstructibleIdeal(X.modulus, X.gamma, X.modulus.field.zero,
                                  X.ideal)

    if which == "Ta":
        for g in elements:
            for h in elements:
                m, ga = g.modulus, g.gamma
                K = m.field
                ux = SemigroupElement(m, ga, g.b, K.one)
                uy = SemigroupElement(m, ga, h.b, K.one)
                sa = SemigroupElement(m, ga, K.zero, g.a)
                sb = SemigroupElement(m, ga, K.zero, h.a)
                checked += 1
                if ux * uy != SemigroupElement(m, ga, g.b + h.b, K.one):
                    bad.append(f"u^x u^y != u^(x+y) at {g}, {h}")
                if sa * sb != SemigroupElement(m, ga, K.zero, g.a * h.a):
                    bad.append(f"s_a s_b != s_ab at {g}, {h}")
                if sa * ux != SemigroupElement(m, ga, g.a * g.b, K.one) * sa:
                    bad.append(f"s_a u^x != u^(ax) s_a at {g}, {h}")
    elif which == "Tb":
        for X in ideals:
            for Y in ideals:
                checked += 1
                got = meet(base(X), base(Y))
                want = ConstructibleIdeal(X.modulus, X.gamma,
                                          X.modulus.field.zero,
                                          X.ideal.intersect(Y.ideal))
                if got != want:
                    bad.append(f"e_a e_b != e_(a cap b) at {X}, {Y}")
    elif which == "Tc":
        for g in elements:
            for X in ideals:
                checked += 1
                sa = SemigroupElement(g.modulus, g.gamma,
                                      g.modulus.field.zero, g.a)
                got = act(sa, base(X))
                want = ConstructibleIdeal(X.modulus, X.gamma,
                                          X.modulus.field.zero,
                                          principal_ideal(g.a) * X.ideal)
                if got != want:
                    bad.append(f"s_a e_b s_a* != e_(ab) at {g}, {X}")
    elif which == "Td":
        for g in elements:
            for X in ideals:
                checked += 1
                x = g.b
                shifted = ConstructibleIdeal(X.modulus, X.gamma, x, X.ideal)
                if X.ideal.contains(x):
                    if shifted != base(X):
                        bad.append(f"u^x e_a != e_a u^x at x={x}, {X}")
                else:
                    if not meet(shifted, base(X)).is_empty:
                        bad.append(f"e_a u^x e_a != 0 at x={x}, {X}")
    elif which == "I":
        for g in elements:
            for h in elements:
                for X in ideals:
                    checked += 1
                    if act(g * h, X) != act(g, act(h, X)):
                        bad.append(f"v_p v_q != v_pq on {g}, {h}, {X}")
    elif which == "II":
        for X in ideals:
            for Y in ideals:
                checked += 1
                if meet(X, Y) != meet(Y, X):
                    bad.append(f"meet not commutative at {X}, {Y}")
                if meet(X, X) != X:
                    bad.append(f"meet not idempotent at {X}")
                E = ConstructibleIdeal.empty(X.modulus, X.gamma)
                if not meet(X, E).is_empty:
                    bad.append(f"empty not absorbing at {X}")
                U = ConstructibleIdeal.unit(X.modulus, X.gamma)
                if meet(X, U) != X:
                    bad.append(f"unit not neutral at {X}")
        for X in ideals[: max(1, len(ideals) // 2)]:
            for Y in ideals:
                for Z in ideals:
                    checked += 1
                    if meet(meet(X, Y), Z) != meet(X, meet(Y, Z)):
                        bad.append(f"meet not associative at {X},{Y},{Z}")
    else:
        raise ValueError(f"unknown relation {which!r}")
    return RelationReport(which, checked, bad)


def prime_in_class_avoiding(target: FractionalIdeal, avoid_elements,
                            avoid_ideals, m: Modulus, gamma: ResidueSubgroup,
                            max_norm: int = 4000):
    """Least prime (by norm) off the support, in the class of `target`,
    not containing any listed element and not dividing any listed ideal."""
    Q = quotient_group(m, gamma)
    want = Q.class_of(target)
    support = set(m.support())
    avoid_elements = [y for y in avoid_elements if not y.is_zero()]
    cap = min(64, max_norm)
    while True:
        cands = []
        for p in range(2, cap + 1):
            if any(p % d == 0 for d in range(2, isqrt(p) + 1)):
                continue
            for P in primes_above(m.field, p):
                if P.norm_int() <= cap and P not in support:
                    cands.append(P)
        cands.sort(key=lambda P: P.sort_key())
        for P in cands:
            if any(P.ideal.contains(y) for y in avoid_elements):
                continue
            if any(P.ideal.divides(A) for A in avoid_ideals):
                continue
            if Q.class_of(P.ideal) == want:
                return P
        if cap >= max_norm:
            raise SearchBoundExceededError(
                f"no prime of norm <= {max_norm} in the target class avoiding "
                "the given data")
        cap = min(cap * 2, max_norm)


def faithfulness_witness(target: FractionalIdeal, base: FractionalIdeal,
                         subcosets, m: Modulus, gamma: ResidueSubgroup,
                         max_norm: int = 4000) -> ConstructibleIdeal:
    """Sub-coset of the base ideal, in the target class, avoiding every given
    strictly smaller sub-coset; witnesses a nonzero defect projection."""
    base_ci = ConstructibleIdeal(m, gamma, m.field.zero, base)
    subs = []
    for y, A in subcosets:
        ci = ConstructibleIdeal(m, gamma, y, A)
        if not base_ci.contains(ci) or ci == base_ci:
            raise SubcosetNotProperError(
                f"{ci.spec()} is not strictly inside {base_ci.spec()}")
        subs.append(ci)
    Q = quotient_group(m, gamma)
    if not subs and Q.class_of(target) == Q.class_of(base):
        return base_ci
    elems = [C.rep for C in subs if not C.rep.is_zero()]
    ideals = [C.ideal for C in subs]
    P = prime_in_class_avoiding(target * base.inverse(), elems, ideals, m,
                                gamma, max_norm)
    witness = ConstructibleIdeal(m, gamma, m.field.zero, P.ideal * base)
    if Q.class_of(witness.ideal) != Q.class_of(target):
        raise AssertionError("witness left the target class")
    if not base_ci.contains(witness):
        raise AssertionError("witness escaped the base coset")
    for C in subs:
        if witness.contains(C):
            raise AssertionError("witness failed to avoid a sub-coset")
    return witness
