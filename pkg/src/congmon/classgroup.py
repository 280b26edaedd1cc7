"""Ideal class groups of quadratic fields and exact principality testing.

Principality search enumerates all elements of the right absolute norm inside
a provably complete coordinate box: a positive-definite bound for imaginary
fields, one fundamental-unit window for real fields.  A None answer is a
proof of non-principality, not a timeout.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .fields import AlgebraicNumber, NumberField, sqrt_interval
from .ideals import FractionalIdeal, integral_ideals_up_to
from .units import unit_group


def _generator_of_integral(L: FractionalIdeal) -> AlgebraicNumber | None:
    K = L.field
    n = L.norm_int()
    cands = []
    if K.d < 0:
        d = abs(K.d)
        if K.omega_form == "sqrt":
            qmax = isqrt(n // d)
            for q in range(-qmax, qmax + 1):
                rem = n - d * q * q
                pmax = isqrt(rem)
                for p in range(-pmax, pmax + 1):
                    if K.norm_int((p, q)) == n and L.contains_int(p, q):
                        cands.append((p, q))
        else:
            qmax = isqrt(4 * n // d)
            tmax = isqrt(4 * n)
            for q in range(-qmax, qmax + 1):
                plo = (-tmax - q) // 2
                phi = (tmax - q) // 2
                for p in range(plo, phi + 1):
                    if K.norm_int((p, q)) == n and L.contains_int(p, q):
                        cands.append((p, q))
    else:
        eps = unit_group(K).fundamental_unit
        P, Q = K.sqrt_coords(eps.p, eps.q)
        _, hi = sqrt_interval(K.d, Fraction(1, 64))
        eps_hi = P + Q * hi
        sqrt_n_hi = isqrt(n) + 1
        tb = sqrt_n_hi * (eps_hi + 1)  # bound for |w1 + w2|
        lo_d, _ = sqrt_interval(K.d, Fraction(1, 64))
        gap = lo_d * (2 if K.omega_form == "sqrt" else 1)
        qmax = int(tb / gap) + 1
        t = K._omega_sq_t
        tmax = int(tb) + 1
        for q in range(-qmax, qmax + 1):
            plo = (-tmax - q * t) // 2
            phi = (tmax - q * t) // 2
            for p in range(plo, phi + 1):
                if abs(K.norm_int((p, q))) == n and L.contains_int(p, q):
                    cands.append((p, q))
    if not cands:
        return None
    best = min(cands, key=K.sort_key_int)
    return K.element(*best)


def principal_generator(I: FractionalIdeal) -> AlgebraicNumber | None:
    """A generator g with gR = I, or None when I is provably non-principal."""
    K = I.field
    if K.is_rational:
        return K.element(I.g)
    L = FractionalIdeal(K, den=1, a=I.a, b=I.b, c=I.c)
    g = _generator_of_integral(L)
    if g is None:
        return None
    return g / I.den


def is_principal(I: FractionalIdeal) -> bool:
    return principal_generator(I) is not None


@dataclass
class ClassGroupData:
    order: int
    representatives: list[FractionalIdeal]
    _memo: dict = dfield(default_factory=dict, repr=False)

    def class_of(self, I: FractionalIdeal) -> int:
        key = I.key()
        if key not in self._memo:
            for i, rep in enumerate(self.representatives):
                if is_principal(I * rep.inverse()):
                    self._memo[key] = i
                    break
            else:
                raise ValueError("ideal matches no class representative")
        return self._memo[key]

    def compose(self, i: int, j: int) -> int:
        return self.class_of(self.representatives[i] * self.representatives[j])


def minkowski_bound(field: NumberField) -> int:
    """Safe integer upper bound for the Minkowski constant."""
    if field.is_rational:
        return 1
    D = abs(field.discriminant)
    if field.d < 0:
        return (2 * isqrt(D)) // 3 + 2  # 2/3 > 2/pi, margin for the isqrt
    return isqrt(D) // 2 + 1


@lru_cache(maxsize=None)
def class_group(field: NumberField) -> ClassGroupData:
    """Representatives and order of the ideal class group (desk scale)."""
    if field.is_rational:
        return ClassGroupData(1, [FractionalIdeal.unit_ideal(field)])
    bound = minkowski_bound(field)
    reps: list[FractionalIdeal] = []
    for I in integral_ideals_up_to(field, bound):
        if not any(is_principal(I * rep.inverse()) for rep in reps):
            reps.append(I)
    return ClassGroupData(len(reps), reps)


def reduced_forms_count(D: int) -> int:
    """Number of reduced primitive binary quadratic forms of discriminant D < 0.

    Independent class-number oracle for imaginary quadratic fields.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("need a negative discriminant = 0 or 1 mod 4")
    count = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a) != 0:
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            if a == c and b < 0:
                continue
            count += 1
        a += 1
    return count
