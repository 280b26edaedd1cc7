"""Exact arithmetic in Q and in quadratic fields Q(sqrt(d)).

Elements are written p + q*w where w generates the ring of integers:
w = sqrt(d) when d % 4 != 1 and w = (1 + sqrt(d))/2 when d % 4 == 1, so the
ring of integers is always Z[w].  All coordinates are exact rationals.
Real-embedding signs are decided by interval refinement of sqrt(d), widened
until the interval excludes zero.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import SpecParseError


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


# interval cache: d -> (lo, hi) rationals with lo < sqrt(d) < hi
_SQRT_CACHE: dict[int, tuple[Fraction, Fraction]] = {}


def sqrt_interval(d: int, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational interval around sqrt(d) narrower than `width` (d > 0, nonsquare)."""
    lo, hi = _SQRT_CACHE.get(d, (Fraction(isqrt(d)), Fraction(isqrt(d) + 1)))
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if mid * mid < d:
            lo = mid
        else:
            hi = mid
    _SQRT_CACHE[d] = (lo, hi)
    return lo, hi


def sign_plus_times_sqrt(P: Fraction, Q: Fraction, d: int) -> int:
    """Exact sign of P + Q*sqrt(d) for d > 0 nonsquare."""
    if Q == 0:
        return (P > 0) - (P < 0)
    if P == 0:
        return 1 if Q > 0 else -1
    width = Fraction(1)
    while True:
        lo, hi = sqrt_interval(d, width)
        if Q > 0:
            val_lo, val_hi = P + Q * lo, P + Q * hi
        else:
            val_lo, val_hi = P + Q * hi, P + Q * lo
        if val_lo > 0:
            return 1
        if val_hi < 0:
            return -1
        width /= 4


class NumberField:
    """Q or a quadratic field, fixed once and shared by all values over it."""

    __slots__ = ("kind", "d", "omega_form", "discriminant", "real_embeddings",
                 "_omega_sq_s", "_omega_sq_t")

    def __init__(self, kind: str, d: int | None = None):
        if kind == "rational":
            self.kind = "rational"
            self.d = None
            self.omega_form = None
            self.discriminant = 1
            self.real_embeddings = ("w",)
            self._omega_sq_s = 0
            self._omega_sq_t = 0
            return
        if kind != "quadratic":
            raise SpecParseError(f"unknown field kind {kind!r}")
        if d is None or d in (0, 1) or not _is_squarefree(d):
            raise SpecParseError(f"d must be a squarefree integer != 0, 1; got {d!r}")
        self.kind = "quadratic"
        self.d = d
        if d % 4 == 1:
            self.omega_form = "half"
            self.discriminant = d
            # w = (1+sqrt d)/2 satisfies w^2 = (d-1)/4 + w
            self._omega_sq_s = (d - 1) // 4
            self._omega_sq_t = 1
        else:
            self.omega_form = "sqrt"
            self.discriminant = 4 * d
            self._omega_sq_s = d
            self._omega_sq_t = 0
        self.real_embeddings = ("w1", "w2") if d > 0 else ()

    @property
    def degree(self) -> int:
        return 1 if self.kind == "rational" else 2

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def key(self):
        return (self.kind, self.d)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.spec()

    def spec(self) -> str:
        return "Q" if self.is_rational else f"Q(sqrt,{self.d})"

    # -- element constructors ------------------------------------------------

    def element(self, p, q=0) -> "AlgebraicNumber":
        return AlgebraicNumber(self, Fraction(p), Fraction(q))

    @property
    def zero(self) -> "AlgebraicNumber":
        return self.element(0)

    @property
    def one(self) -> "AlgebraicNumber":
        return self.element(1)

    @property
    def omega(self) -> "AlgebraicNumber":
        if self.is_rational:
            raise SpecParseError("Q has no omega generator")
        return self.element(0, 1)

    # -- integer-coordinate kernels (hot paths work on bare (p, q) ints) -----

    def mul_int(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        p1, q1 = x
        p2, q2 = y
        s, t = self._omega_sq_s, self._omega_sq_t
        qq = q1 * q2
        return (p1 * p2 + qq * s, p1 * q2 + q1 * p2 + qq * t)

    def conj_int(self, x: tuple[int, int]) -> tuple[int, int]:
        p, q = x
        return (p + q * self._omega_sq_t, -q)

    def norm_int(self, x: tuple[int, int]) -> int:
        p, q = x
        if self.kind == "rational":
            return p
        return p * p + p * q * self._omega_sq_t - q * q * self._omega_sq_s

    def trace_int(self, x: tuple[int, int]) -> int:
        p, q = x
        if self.kind == "rational":
            return p
        return 2 * p + q * self._omega_sq_t

    def sqrt_coords(self, p, q) -> tuple[Fraction, Fraction]:
        """(P, Q) with p + q*w = P + Q*sqrt(d) under the first embedding."""
        p, q = Fraction(p), Fraction(q)
        if self.omega_form == "half":
            return (p + q / 2, q / 2)
        return (p, q)

    def embedding_signs_int(self, x: tuple[int, int]) -> tuple[int, ...]:
        if self.is_rational:
            v = x[0]
            return ((v > 0) - (v < 0),)
        if self.d < 0:
            return ()
        P, Q = self.sqrt_coords(x[0], x[1])
        return (sign_plus_times_sqrt(P, Q, self.d),
                sign_plus_times_sqrt(P, -Q, self.d))

    def is_totally_positive_int(self, x: tuple[int, int]) -> bool:
        if x == (0, 0):
            return False
        return all(s > 0 for s in self.embedding_signs_int(x))

    def sort_key_int(self, x: tuple[int, int]):
        """Canonical search order: norm, then coordinates, positives first."""
        p, q = x
        return (abs(self.norm_int(x)), abs(p), abs(q),
                0 if p >= 0 else 1, 0 if q >= 0 else 1)


@lru_cache(maxsize=None)
def rational_field() -> NumberField:
    return NumberField("rational")


@lru_cache(maxsize=None)
def quadratic_field(d: int) -> NumberField:
    return NumberField("quadratic", d)


def parse_field(spec: str) -> NumberField:
    s = spec.strip()
    if s == "Q":
        return rational_field()
    if s.startswith("Q(sqrt,") and s.endswith(")"):
        try:
            d = int(s[len("Q(sqrt,"):-1])
        except ValueError as e:
            raise SpecParseError(f"bad field spec {spec!r}") from e
        return quadratic_field(d)
    raise SpecParseError(f"bad field spec {spec!r} (want 'Q' or 'Q(sqrt,<d>)')")


class AlgebraicNumber:
    """Element p + q*w of a fixed number field, exact rational coordinates."""

    __slots__ = ("field", "p", "q")

    def __init__(self, field: NumberField, p: Fraction, q: Fraction = Fraction(0)):
        if field.is_rational and q != 0:
            raise SpecParseError("elements of Q have no w component")
        self.field = field
        self.p = Fraction(p)
        self.q = Fraction(q)

    # -- basic predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def is_integral(self) -> bool:
        return self.p.denominator == 1 and self.q.denominator == 1

    def int_coords(self) -> tuple[int, int]:
        if not self.is_integral():
            raise ValueError(f"{self} is not integral")
        return (int(self.p), int(self.q))

    # -- ring operations -----------------------------------------------------

    def _check(self, other: "AlgebraicNumber"):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other):
        self._check(other)
        return AlgebraicNumber(self.field, self.p + other.p, self.q + other.q)

    def __sub__(self, other):
        self._check(other)
        return AlgebraicNumber(self.field, self.p - other.p, self.q - other.q)

    def __neg__(self):
        return AlgebraicNumber(self.field, -self.p, -self.q)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, self.p * other, self.q * other)
        self._check(other)
        K = self.field
        s, t = K._omega_sq_s, K._omega_sq_t
        qq = self.q * other.q
        return AlgebraicNumber(K, self.p * other.p + qq * s,
                               self.p * other.q + self.q * other.p + qq * t)

    __rmul__ = __mul__

    def conjugate(self) -> "AlgebraicNumber":
        K = self.field
        return AlgebraicNumber(K, self.p + self.q * K._omega_sq_t, -self.q)

    def norm(self) -> Fraction:
        K = self.field
        if K.is_rational:
            return self.p
        return (self.p * self.p + self.p * self.q * K._omega_sq_t
                - self.q * self.q * K._omega_sq_s)

    def trace(self) -> Fraction:
        if self.field.is_rational:
            return self.p
        return 2 * self.p + self.q * self.field._omega_sq_t

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("division by zero element")
        if self.field.is_rational:
            return AlgebraicNumber(self.field, 1 / self.p)
        n = self.norm()
        c = self.conjugate()
        return AlgebraicNumber(self.field, c.p / n, c.q / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero element")
            return AlgebraicNumber(self.field, self.p / other, self.q / other)
        self._check(other)
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- embeddings ----------------------------------------------------------

    def embedding_signs(self) -> tuple[int, ...]:
        """Sign of the element under each real embedding."""
        K = self.field
        if K.is_rational:
            v = self.p
            return ((v > 0) - (v < 0),)
        if K.d < 0:
            return ()
        P, Q = K.sqrt_coords(self.p, self.q)
        return (sign_plus_times_sqrt(P, Q, K.d),
                sign_plus_times_sqrt(P, -Q, K.d))

    def is_totally_positive(self) -> bool:
        if self.is_zero():
            return False
        return all(s > 0 for s in self.embedding_signs())

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, AlgebraicNumber) and self.field == other.field
                and self.p == other.p and self.q == other.q)

    def __hash__(self):
        return hash((self.field.key(), self.p, self.q))

    def __repr__(self):
        return format_element(self)

    def sort_key(self):
        n = abs(self.norm())
        return (n, abs(self.p), abs(self.q),
                0 if self.p >= 0 else 1, 0 if self.q >= 0 else 1)


def format_element(x: AlgebraicNumber) -> str:
    """Canonical "p+q*w" form with exact rationals; inverse of parse_element."""
    if x.q == 0:
        return str(x.p)
    if x.q == 1:
        ws = "w"
    elif x.q == -1:
        ws = "-w"
    else:
        ws = f"{x.q}*w"
    if x.p == 0:
        return ws
    return f"{x.p}+{ws}" if x.q > 0 else f"{x.p}{ws}"


def parse_element(field: NumberField, spec: str) -> AlgebraicNumber:
    s = spec.strip().replace(" ", "")
    if not s:
        raise SpecParseError("empty element spec")
    try:
        if "w" not in s:
            return field.element(Fraction(s))
        # split off a leading rational term if present
        split = None
        for i in range(1, len(s)):
            if s[i] in "+-" and s[i - 1].isdigit():
                split = i
        if split is None:
            p_part, q_part = "0", s
        else:
            p_part, q_part = s[:split], s[split:]
            if "w" in p_part or "w" not in q_part:
                raise SpecParseError(f"bad element spec {spec!r}")
        q_part = q_part[:-1]  # drop trailing 'w'
        if q_part.endswith("*"):
            q_part = q_part[:-1]
        if q_part in ("", "+"):
            q = Fraction(1)
        elif q_part == "-":
            q = Fraction(-1)
        else:
            q = Fraction(q_part)
        return field.element(Fraction(p_part), q)
    except (ValueError, ZeroDivisionError) as e:
        raise SpecParseError(f"bad element spec {spec!r}") from e
