"""Primitive-ideal combinatorics over a finite prime window.

Primitive ideals are indexed by subsets of the window; the order is subset
inclusion, the hull-kernel closure of a point is its up-set, the full window
is the unique maximal point and singletons are the minimal ones.  Boundary
data for a prime is the exact coset partition of R by the monoid generator
of its principal power.  Quasi-orbits are explored on truncated points:
valuations live in {0..V_max-1} (exact), V_max ("at least V_max") and
infinity (absorbing), with the additive coordinate kept modulo the matching
ideal.
"""

from __future__ import annotations

from .errors import PreconditionError
from .fields import AlgebraicNumber
from .ideals import FractionalIdeal, PrimeIdeal, principal_ideal, solve_combination
from .rayclass import prime_class_order, quotient_group
from .residues import Modulus, ResidueSubgroup

INF = float("inf")
DEFAULT_VMAX = 4


class PrimeWindow:
    """Finite list of primes off the support, with (f, t) data per prime."""

    __slots__ = ("modulus", "gamma", "primes", "data", "vmax")

    def __init__(self, modulus: Modulus, gamma: ResidueSubgroup, primes,
                 vmax: int = DEFAULT_VMAX):
        primes = tuple(sorted(set(primes), key=lambda P: P.sort_key()))
        support = set(modulus.support())
        for P in primes:
            if P in support:
                raise PreconditionError(
                    f"window prime {P.ideal.spec()} divides the modulus")
        if not primes:
            raise PreconditionError("window must be nonempty")
        self.modulus = modulus
        self.gamma = gamma
        self.primes = primes
        self.vmax = vmax
        Q = quotient_group(modulus, gamma)
        self.data = {P: prime_class_order(P, Q) for P in primes}

    def __len__(self):
        return len(self.primes)

    def key(self):
        return (self.modulus.key(), self.gamma.key(),
                tuple(P.ideal.key() for P in self.primes), self.vmax)

    def __eq__(self, other):
        return isinstance(other, PrimeWindow) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class PrimitiveIdealDescriptor:
    """Subset of the window, standing for the ideal it generates."""

    __slots__ = ("window", "members")

    def __init__(self, window: PrimeWindow, members):
        members = frozenset(members)
        if not members <= set(window.primes):
            raise PreconditionError("descriptor members must lie in the window")
        self.window = window
        self.members = members

    def key(self):
        return (self.window.key(), tuple(sorted(P.ideal.key() for P in self.members)))

    def __eq__(self, other):
        return isinstance(other, PrimitiveIdealDescriptor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        names = ",".join(P.ideal.spec() for P in
                         sorted(self.members, key=lambda P: P.sort_key()))
        return "{" + names + "}"


def ideal_leq(A: PrimitiveIdealDescriptor, B: PrimitiveIdealDescriptor) -> bool:
    """Containment of the generated ideals: exactly subset of descriptors."""
    if A.window != B.window:
        raise PreconditionError("descriptors over different windows")
    return A.members <= B.members


def all_descriptors(window: PrimeWindow):
    n = len(window.primes)
    out = []
    for mask in range(1 << n):
        out.append(PrimitiveIdealDescriptor(
            window, [window.primes[i] for i in range(n) if mask >> i & 1]))
    return out


def closure_of(A: PrimitiveIdealDescriptor):
    """Hull-kernel closure of the point: its up-set in the subset order."""
    rest = [P for P in A.window.primes if P not in A.members]
    out = set()
    for mask in range(1 << len(rest)):
        extra = [rest[i] for i in range(len(rest)) if mask >> i & 1]
        out.add(PrimitiveIdealDescriptor(A.window, A.members | set(extra)))
    return out


def extremal_ideals(window: PrimeWindow):
    """(unique maximal descriptor, minimal descriptors = singletons)."""
    maximal = PrimitiveIdealDescriptor(window, window.primes)
    minimals = [PrimitiveIdealDescriptor(window, [P]) for P in window.primes]
    return maximal, minimals


def boundary_defect_data(window: PrimeWindow, P: PrimeIdeal):
    """(t, coset count, coset representatives) for the generator at P.

    The representatives partition R modulo tR; the count is N(P)^f.
    """
    if P not in window.data:
        raise PreconditionError("prime is not in the window")
    f, t = window.data[P]
    tR = principal_ideal(t)
    count = abs(t.norm())
    if count != P.norm_int() ** f:
        raise AssertionError("defect count mismatch")
    K = window.modulus.field
    reps = [K.element(*r) for r in tR.residue_reps()]
    return t, int(count), reps


class TruncatedPoint:
    """Finite shadow of a point (b, a-bar): one truncated valuation per
    window prime plus the translation coordinate modulo the matching ideal."""

    __slots__ = ("window", "vals", "res")

    def __init__(self, window: PrimeWindow, vals, res=(0, 0)):
        vals = tuple(vals)
        if len(vals) != len(window.primes):
            raise PreconditionError("one valuation per window prime")
        for v in vals:
            if v != INF and (not isinstance(v, int) or v < 0 or v > window.vmax):
                raise PreconditionError(f"bad truncated valuation {v!r}")
        self.window = window
        self.vals = vals
        self.res = self.modulus_ideal().reduce_int(*res)

    def modulus_ideal(self) -> FractionalIdeal:
        out = FractionalIdeal.unit_ideal(self.window.modulus.field)
        for P, v in zip(self.window.primes, self.vals):
            e = self.window.vmax if v == INF else min(v, self.window.vmax)
            if e:
                out = out * P.power(e)
        return out

    def zero_set(self) -> frozenset:
        return frozenset(P for P, v in zip(self.window.primes, self.vals)
                         if v == INF)

    def key(self):
        return (self.window.key(), self.vals, self.res)

    def __eq__(self, other):
        return isinstance(other, TruncatedPoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        vs = ",".join("inf" if v == INF else str(v) for v in self.vals)
        return f"[{self.res};({vs})]"


def zero_set(x: TruncatedPoint) -> frozenset:
    return x.zero_set()


def quasi_orbit_membership(x: TruncatedPoint, y: TruncatedPoint) -> bool:
    """y lies in the closed invariant set cut out by the zeros of x."""
    if x.window != y.window:
        raise PreconditionError("points over different windows")
    return x.zero_set() <= y.zero_set()


class _Mover:
    """Generator moves on truncated points for one window."""

    def __init__(self, window: PrimeWindow):
        self.window = window
        self._elts: dict[tuple, AlgebraicNumber] = {}

    def ray_element(self, pattern) -> AlgebraicNumber:
        pattern = tuple(pattern)
        if pattern not in self._elts:
            from .constructions import approx_element
            self._elts[pattern] = approx_element(
                list(zip(self.window.primes, pattern)), self.window.modulus)
        return self._elts[pattern]

    def multiply(self, x: TruncatedPoint, pattern) -> TruncatedPoint:
        t = self.ray_element(pattern)
        vmax = self.window.vmax
        vals = tuple(v if v == INF else min(v + d, vmax)
                     for v, d in zip(x.vals, pattern))
        out = TruncatedPoint(self.window, vals)
        tp, tq = t.int_coords()
        K = self.window.modulus.field
        prod = K.mul_int((tp, tq), x.res)
        return TruncatedPoint(self.window, vals, prod)

    def can_divide(self, x: TruncatedPoint, pattern) -> bool:
        vmax = self.window.vmax
        for v, d in zip(x.vals, pattern):
            if d == 0:
                continue
            if v == INF or v >= vmax or d > v:
                return False
        # residue must be divisible by the pattern ideal
        D = FractionalIdeal.unit_ideal(self.window.modulus.field)
        for P, d in zip(self.window.primes, pattern):
            if d:
                D = D * P.power(d)
        return D.contains_int(*x.res)

    def divide(self, x: TruncatedPoint, pattern) -> TruncatedPoint:
        t = self.ray_element(pattern)
        vmax = self.window.vmax
        vals = tuple(v if v == INF else v - d for v, d in zip(x.vals, pattern))
        known = FractionalIdeal.unit_ideal(self.window.modulus.field)
        for P, v, d in zip(self.window.primes, vals, pattern):
            e = (vmax if v == INF else min(v, vmax)) + d
            if e:
                known = known * P.power(e)
        K = self.window.modulus.field
        tp, tq = t.int_coords()
        rows = [K.mul_int((tp, tq), (1, 0)), K.mul_int((tp, tq), (0, 1))]
        rows += known.int_rows()
        sol = solve_combination(rows, x.res)
        if sol is None:
            raise AssertionError("division requested without divisibility")
        return TruncatedPoint(self.window, vals, (sol[0], sol[1]))

    def translate(self, x: TruncatedPoint, r: tuple[int, int]) -> TruncatedPoint:
        return TruncatedPoint(self.window, x.vals,
                              (x.res[0] + r[0], x.res[1] + r[1]))


def _matches_target(cur: TruncatedPoint, y: TruncatedPoint) -> bool:
    vmax = cur.window.vmax
    for vc, vt in zip(cur.vals, y.vals):
        if vt == INF or vt >= vmax:
            if vc != INF and vc < vmax:
                return False
        else:
            if vc != vt:
                return False
    My = y.modulus_ideal()
    return My.reduce_int(*cur.res) == y.res


def orbit_reach_check(x: TruncatedPoint, y: TruncatedPoint, move_budget: int):
    """(reached, moves or None): breadth-first search over generator moves.

    Moves: multiply by a ray element with a prescribed window valuation
    pattern, the exact partial inverse when the truncation supports it, and
    translations.  A False answer only ever means the budget ran out (or the
    zero-set invariant rules reachability out immediately).
    """
    if x.window != y.window:
        raise PreconditionError("points over different windows")
    if not x.zero_set() <= y.zero_set():
        return False, None
    mover = _Mover(x.window)
    vmax = x.window.vmax
    n = len(x.window.primes)

    def successors(cur: TruncatedPoint):
        out = []
        # single-prime multiplications
        for i in range(n):
            pat = tuple(1 if j == i else 0 for j in range(n))
            out.append(mover.multiply(cur, pat))
        # target-aware composite multiplication
        up = []
        for vc, vt in zip(cur.vals, y.vals):
            if vc == INF:
                up.append(0)
            else:
                goal = vmax if (vt == INF or vt >= vmax) else vt
                up.append(max(goal - vc, 0))
        if any(up):
            out.append(mover.multiply(cur, tuple(up)))
        # divisions, single and composite
        for i in range(n):
            pat = tuple(1 if j == i else 0 for j in range(n))
            if mover.can_divide(cur, pat):
                out.append(mover.divide(cur, pat))
        down = []
        for vc, vt in zip(cur.vals, y.vals):
            if vc == INF or vt == INF or vt >= vmax:
                down.append(0)
            else:
                down.append(max(vc - vt, 0))
        if any(down) and mover.can_divide(cur, tuple(down)):
            out.append(mover.divide(cur, tuple(down)))
        # translations: zero-align and target-align
        if cur.res != (0, 0):
            out.append(mover.translate(cur, (-cur.res[0], -cur.res[1])))
        delta = (y.res[0] - cur.res[0], y.res[1] - cur.res[1])
        if delta != (0, 0):
            out.append(mover.translate(cur, delta))
        return out

    seen = {x}
    frontier = [x]
    depth = 0
    if _matches_target(x, y):
        return True, 0
    while frontier and depth < move_budget:
        depth += 1
        nxt = []
        for cur in frontier:
            for s in successors(cur):
                if s in seen:
                    continue
                if _matches_target(s, y):
                    return True, depth
                seen.add(s)
                nxt.append(s)
        frontier = nxt
    return False, None
