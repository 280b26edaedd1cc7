"""Unit groups of quadratic orders: torsion and the fundamental unit.

The fundamental unit of a real field comes from the classical continued
fraction of sqrt(d) (the PQa recurrence), which yields the smallest unit > 1
of Z[sqrt d] with norm +-1.  When d = 1 mod 4 the maximal order Z[w] can be
strictly larger; the unit index divides 3, and the potential cube root
(a + b sqrt d)/2 is recovered exactly from a(a^2 - 3n) = 2x.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .fields import AlgebraicNumber, NumberField


@dataclass(frozen=True)
class UnitGroupData:
    torsion_order: int
    torsion_generator: AlgebraicNumber
    fundamental_unit: AlgebraicNumber | None


def pell_fundamental(d: int) -> tuple[int, int, int]:
    """(x, y, n) with x^2 - d y^2 = n in {1, -1}, minimal x + y sqrt(d) > 1.

    Continued fraction of sqrt(d); the period-end convergent is fundamental.
    """
    a0 = isqrt(d)
    if a0 * a0 == d:
        raise ValueError("d must not be a perfect square")
    m, q, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    length = 0
    while True:
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        length += 1
        if a == 2 * a0:
            break
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    n = h * h - d * k * k
    return h, k, n


def _icbrt(n: int) -> int:
    if n < 0:
        return -_icbrt(-n)
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def _half_order_unit(d: int, x: int, y: int) -> tuple[int, int, int] | None:
    """(a, b, n) with ((a + b sqrt d)/2)^3 = x + y sqrt(d), if one exists."""
    for n in (1, -1):
        # trace a solves a(a^2 - 3n) = 2x; b = 2y/(a^2 - n)
        a0 = _icbrt(2 * x)
        for a in range(max(1, a0 - 2), a0 + 3):
            if a * (a * a - 3 * n) != 2 * x:
                continue
            if (a * a - n) == 0 or (2 * y) % (a * a - n) != 0:
                continue
            b = 2 * y // (a * a - n)
            if a * a - d * b * b == 4 * n:
                return a, b, n
    return None


def unit_group(field: NumberField) -> UnitGroupData:
    """Torsion part and (for real quadratic fields) the fundamental unit."""
    minus_one = field.element(-1)
    if field.is_rational:
        return UnitGroupData(2, minus_one, None)
    d = field.d
    if d < 0:
        if d == -1:
            return UnitGroupData(4, field.omega, None)
        if d == -3:
            return UnitGroupData(6, field.omega, None)
        return UnitGroupData(2, minus_one, None)
    x, y, _ = pell_fundamental(d)
    if d % 4 == 1:
        half = _half_order_unit(d, x, y)
        if half is not None:
            a, b, _ = half
            # (a + b sqrt d)/2 = (a - b)/2 + b*w since sqrt d = 2w - 1
            eps = field.element((a - b) // 2, b)
            return UnitGroupData(2, minus_one, eps)
        eps = field.element(x - y, 2 * y)
    else:
        eps = field.element(x, y)
    return UnitGroupData(2, minus_one, eps)


def torsion_units(field: NumberField) -> list[AlgebraicNumber]:
    """All roots of unity in the field."""
    data = unit_group(field)
    out = [field.one]
    g = data.torsion_generator
    u = g
    while u != field.one:
        out.append(u)
        u = u * g
    return out
