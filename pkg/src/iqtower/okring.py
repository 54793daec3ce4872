"""Exact arithmetic in the ring of integers of the nine imaginary quadratic
fields of class number one.

Conventions:
    * K = Q(sqrt(-d)) with d in {1, 2, 3, 7, 11, 19, 43, 67, 163}.
    * Elements are stored as integer pairs (x, y) with respect to the
      integral basis {1, omega}, where omega = sqrt(-d) when -d is not
      1 mod 4 and omega = (1 + sqrt(-d))/2 otherwise.
    * Every ideal is principal (h_K = 1), so primes and factorizations are
      carried by canonical generators.  The canonical associate of a nonzero
      element is the one maximizing (sign(x), x, y) over its unit orbit.
    * Text form: "d=<n>:<u>+<v>*w" where w stands for sqrt(-d); for the
      d = 3 mod 4 fields the coordinates may be exact halves ("-1/2-1/2*w").
      The parser also accepts "<x>+<y>*o" with o = omega.

All values are immutable; all operations are pure functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from sympy import factorint, isprime, jacobi_symbol

CLASS_NUMBER_ONE_DS = (1, 2, 3, 7, 11, 19, 43, 67, 163)


class OkError(ValueError):
    """Precondition violation in ring arithmetic."""


@dataclass(frozen=True)
class FieldTag:
    """One of the nine class-number-one imaginary quadratic fields."""

    d: int

    def __post_init__(self) -> None:
        if self.d not in CLASS_NUMBER_ONE_DS:
            raise OkError(f"d={self.d} is not a class-number-one value "
                          f"{CLASS_NUMBER_ONE_DS}")

    @property
    def discriminant(self) -> int:
        return -self.d if self.d % 4 == 3 else -4 * self.d

    @property
    def omega_is_half(self) -> bool:
        # omega = (1 + sqrt(-d))/2 exactly when -d = 1 mod 4
        return self.d % 4 == 3

    @property
    def min_poly(self) -> tuple[int, int]:
        """(t, n) with omega^2 = t*omega - n."""
        if self.omega_is_half:
            return 1, (1 + self.d) // 4
        return 0, self.d

    @property
    def num_units(self) -> int:
        if self.d == 1:
            return 4
        if self.d == 3:
            return 6
        return 2

    def one(self) -> "OkElement":
        return OkElement(self, 1, 0)

    def zero(self) -> "OkElement":
        return OkElement(self, 0, 0)

    def omega(self) -> "OkElement":
        return OkElement(self, 0, 1)

    def sqrt_minus_d(self) -> "OkElement":
        if self.omega_is_half:
            return OkElement(self, -1, 2)  # 2*omega - 1
        return OkElement(self, 0, 1)

    def unit_gen(self) -> "OkElement":
        """Generator of the root-of-unity group mu_K."""
        if self.d == 1:
            return OkElement(self, 0, 1)   # i
        if self.d == 3:
            return OkElement(self, 0, 1)   # zeta_6 = (1+sqrt(-3))/2
        return OkElement(self, -1, 0)

    def units(self) -> tuple["OkElement", ...]:
        z = self.unit_gen()
        out = [self.one()]
        u = z
        while u != self.one():
            out.append(u)
            u = u * z
        return tuple(out)

    def from_int(self, n: int) -> "OkElement":
        return OkElement(self, n, 0)


@lru_cache(maxsize=None)
def field(d: int) -> FieldTag:
    return FieldTag(d)


@dataclass(frozen=True)
class OkElement:
    """x + y*omega with arbitrary-precision integer coordinates."""

    tag: FieldTag
    x: int
    y: int

    def _check(self, other: "OkElement") -> None:
        if self.tag != other.tag:
            raise OkError("elements belong to different fields")

    def __add__(self, other: "OkElement") -> "OkElement":
        self._check(other)
        return OkElement(self.tag, self.x + other.x, self.y + other.y)

    def __sub__(self, other: "OkElement") -> "OkElement":
        self._check(other)
        return OkElement(self.tag, self.x - other.x, self.y - other.y)

    def __neg__(self) -> "OkElement":
        return OkElement(self.tag, -self.x, -self.y)

    def __mul__(self, other: "OkElement") -> "OkElement":
        self._check(other)
        t, n = self.tag.min_poly
        a, b, c, d = self.x, self.y, other.x, other.y
        # (a + b w)(c + d w) with w^2 = t w - n
        return OkElement(self.tag,
                         a * c - n * b * d,
                         a * d + b * c + t * b * d)

    def __pow__(self, k: int) -> "OkElement":
        if k < 0:
            raise OkError("negative powers leave the ring")
        out = self.tag.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "OkElement":
        t, _ = self.tag.min_poly
        # conj(omega) = t - omega
        return OkElement(self.tag, self.x + t * self.y, -self.y)

    def norm(self) -> int:
        t, n = self.tag.min_poly
        return self.x * self.x + t * self.x * self.y + n * self.y * self.y

    def trace(self) -> int:
        t, _ = self.tag.min_poly
        return 2 * self.x + t * self.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def times_int(self, n: int) -> "OkElement":
        return OkElement(self.tag, self.x * n, self.y * n)

    def divide_exact(self, other: "OkElement") -> "OkElement | None":
        """self / other when the quotient lies in O_K, else None."""
        if other.is_zero():
            raise OkError("division by zero")
        n = other.norm()
        num = self * other.conj()
        if num.x % n or num.y % n:
            return None
        return OkElement(self.tag, num.x // n, num.y // n)

    def sqrt_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates (u, v) with self = u + v*sqrt(-d)."""
        if self.tag.omega_is_half:
            return Fraction(2 * self.x + self.y, 2), Fraction(self.y, 2)
        return Fraction(self.x), Fraction(self.y)

    def __str__(self) -> str:
        u, v = self.sqrt_coords()

        def rat(q: Fraction) -> str:
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        sign = "+" if v >= 0 else "-"
        return f"d={self.tag.d}:{rat(u)}{sign}{rat(abs(v))}*w"

    def __repr__(self) -> str:
        return f"OkElement({self})"


_ELT_RE = re.compile(
    r"^\s*(?:d=(?P<d>\d+):)?\s*"
    r"(?P<u>[+-]?\d+(?:/2)?)\s*"
    r"(?:(?P<sign>[+-])\s*(?P<v>\d+(?:/2)?)\s*\*\s*(?P<basis>[wo]))?\s*$"
)


def parse_element(tag: FieldTag, text: str) -> OkElement:
    """Parse the text form; accepts sqrt(-d) ("w") and omega ("o") coordinates."""
    m = _ELT_RE.match(text)
    if not m:
        raise OkError(f"cannot parse element {text!r}")
    if m.group("d") is not None and int(m.group("d")) != tag.d:
        raise OkError(f"element {text!r} tagged for d={m.group('d')}, expected d={tag.d}")
    u = Fraction(m.group("u").replace("/2", "")) / (2 if m.group("u").endswith("/2") else 1)
    if m.group("v") is None:
        v = Fraction(0)
        basis = "w"
    else:
        v = Fraction(m.group("v").replace("/2", "")) / (2 if m.group("v").endswith("/2") else 1)
        if m.group("sign") == "-":
            v = -v
        basis = m.group("basis")
    if basis == "o":
        if u.denominator != 1 or v.denominator != 1:
            raise OkError("omega coordinates must be integers")
        return OkElement(tag, int(u), int(v))
    # u + v*sqrt(-d): convert to the integral basis
    if tag.omega_is_half:
        y = 2 * v
        x = u - v
        if y.denominator != 1 or x.denominator != 1:
            raise OkError(f"{text!r} is not an algebraic integer of Q(sqrt(-{tag.d}))")
        return OkElement(tag, int(x), int(y))
    if u.denominator != 1 or v.denominator != 1:
        raise OkError(f"{text!r} is not an algebraic integer of Q(sqrt(-{tag.d}))")
    return OkElement(tag, int(u), int(v))


def canonical_associate(e: OkElement) -> OkElement:
    """The associate maximizing (sign(x), x, y); total, unit-free, idempotent."""
    if e.is_zero():
        raise OkError("zero has no canonical associate")
    best = None
    u = e.tag.one()
    z = e.tag.unit_gen()
    for _ in range(e.tag.num_units):
        cand = e * u
        key = ((cand.x > 0) - (cand.x < 0), cand.x, cand.y)
        if best is None or key > best[0]:
            best = (key, cand)
        u = u * z
    return best[1]


@dataclass(frozen=True)
class OkPrime:
    """Prime of O_K carried by its canonical generator."""

    generator: OkElement
    residue_char: int
    kind: str              # "split" | "inert" | "ramified"
    residue_degree: int

    @property
    def tag(self) -> FieldTag:
        return self.generator.tag

    def norm(self) -> int:
        return self.residue_char ** self.residue_degree

    def conjugate(self) -> "OkPrime":
        return OkPrime(canonical_associate(self.generator.conj()),
                       self.residue_char, self.kind, self.residue_degree)

    def divides(self, e: OkElement) -> bool:
        return e.divide_exact(self.generator) is not None

    def __str__(self) -> str:
        return str(self.generator)


def split_type(tag: FieldTag, ell: int) -> str:
    """Kronecker classification of the rational prime ell in K."""
    if ell < 2:
        raise OkError("ell must be a prime >= 2")
    disc = tag.discriminant
    if ell == 2:
        if disc % 2 == 0:
            return "ramified"
        return "split" if disc % 8 == 1 else "inert"
    if disc % ell == 0:
        return "ramified"
    return "split" if jacobi_symbol(disc, ell) == 1 else "inert"


def _cornacchia_prime(dcoef: int, ell: int) -> tuple[int, int]:
    """Solve x^2 + dcoef*y^2 = ell for an odd prime ell with (-dcoef|ell) = 1."""
    from sympy.ntheory.residue_ntheory import sqrt_mod

    r = sqrt_mod(-dcoef % ell, ell)
    if r is None:
        raise OkError(f"{ell} is not split: no square root of {-dcoef} mod {ell}")
    r = max(r, ell - r)
    a, b = ell, r
    while b * b > ell:
        a, b = b, a % b
    c, rem = divmod(ell - b * b, dcoef)
    if rem:
        raise OkError(f"Cornacchia failure for x^2+{dcoef}y^2={ell}")
    y = isqrt(c)
    if y * y != c:
        raise OkError(f"Cornacchia failure for x^2+{dcoef}y^2={ell}")
    return b, y


def _cornacchia_4p(dcoef: int, ell: int) -> tuple[int, int]:
    """Solve u^2 + dcoef*v^2 = 4*ell (dcoef = 3 mod 4) for an odd split prime."""
    from sympy.ntheory.residue_ntheory import sqrt_mod

    r = sqrt_mod(-dcoef % ell, ell)
    if r is None:
        raise OkError(f"{ell} is not split in Q(sqrt(-{dcoef}))")
    if r % 2 == 0:
        r = ell - r   # dcoef odd: need u odd
    a, b = 2 * ell, r
    limit = isqrt(4 * ell)
    while b > limit:
        a, b = b, a % b
    c, rem = divmod(4 * ell - b * b, dcoef)
    if rem:
        raise OkError(f"Cornacchia failure for u^2+{dcoef}v^2={4 * ell}")
    v = isqrt(c)
    if v * v != c:
        raise OkError(f"Cornacchia failure for u^2+{dcoef}v^2={4 * ell}")
    return b, v


def _split_generator(tag: FieldTag, ell: int) -> OkElement:
    """Norm-equation solution for a split ell, tie-broken to the smallest
    nonnegative sqrt(-d) coordinate over its unit orbit."""
    if ell == 2:
        # only d = 7 splits 2 among the nine fields; solve u^2 + d v^2 = 8
        for v in range(1, isqrt(8 // tag.d) + 1):
            u2 = 8 - tag.d * v * v
            u = isqrt(u2)
            if u2 >= 0 and u * u == u2 and (u - v) % 2 == 0:
                e = OkElement(tag, (u - v) // 2, v)
                break
        else:
            raise OkError(f"2 does not split in Q(sqrt(-{tag.d}))")
    elif tag.omega_is_half:
        u, v = _cornacchia_4p(tag.d, ell)
        e = OkElement(tag, (u - v) // 2, v)   # (u + v*sqrt(-d))/2
    else:
        u, v = _cornacchia_prime(tag.d, ell)
        e = OkElement(tag, u, v)
    # deterministic representative: smallest nonnegative sqrt(-d) coordinate
    best = None
    u1 = tag.one()
    z = tag.unit_gen()
    for _ in range(tag.num_units):
        cand = e * u1
        _, v = cand.sqrt_coords()
        if v >= 0 and (best is None or v < best[0]):
            best = (v, cand)
        u1 = u1 * z
    return best[1]


@lru_cache(maxsize=None)
def primes_above(tag: FieldTag, ell: int) -> tuple[OkPrime, ...]:
    """Primes of O_K above the rational prime ell.

    Split primes come as the ordered conjugate pair, with the
    Cornacchia-selected generator first; generators are canonical.
    """
    if not isprime(ell):
        raise OkError(f"{ell} is not prime")
    kind = split_type(tag, ell)
    if kind == "inert":
        return (OkPrime(tag.from_int(ell), ell, "inert", 2),)
    if kind == "ramified":
        if ell == 2:
            gen = OkElement(tag, 1, 1) if tag.d == 1 else tag.omega()  # 1+i / sqrt(-2)
        else:
            gen = tag.sqrt_minus_d()
        return (OkPrime(canonical_associate(gen), ell, "ramified", 1),)
    g = _split_generator(tag, ell)
    p1 = OkPrime(canonical_associate(g), ell, "split", 1)
    p2 = OkPrime(canonical_associate(g.conj()), ell, "split", 1)
    return (p1, p2)


@dataclass(frozen=True)
class PrimeFactorization:
    unit: OkElement
    factors: tuple[tuple[OkPrime, int], ...]

    def value(self) -> OkElement:
        out = self.unit
        for p, k in self.factors:
            out = out * p.generator ** k
        return out


def factor(e: OkElement) -> PrimeFactorization:
    """Factor a nonzero element into the canonical unit and prime powers,
    sorted by (residue characteristic, generator coordinates)."""
    if e.is_zero():
        raise OkError("cannot factor zero")
    tag = e.tag
    rest = e
    found: list[tuple[OkPrime, int]] = []
    for ell in sorted(factorint(e.norm())):
        for p in primes_above(tag, ell):
            k = 0
            while True:
                q = rest.divide_exact(p.generator)
                if q is None:
                    break
                rest = q
                k += 1
            if k:
                found.append((p, k))
    if not rest.is_unit():
        raise OkError(f"factorization of {e} left non-unit remainder {rest}")
    found.sort(key=lambda pk: (pk[0].residue_char, pk[0].generator.x, pk[0].generator.y))
    return PrimeFactorization(rest, tuple(found))


def valuation(e: OkElement, p: OkPrime) -> int:
    if e.is_zero():
        raise OkError("valuation of zero is infinite")
    k = 0
    while True:
        q = e.divide_exact(p.generator)
        if q is None:
            return k
        e = q
        k += 1


def gcd_ok(a: OkElement, b: OkElement) -> OkElement:
    """Canonical generator of the ideal (a) + (b), via factorization.

    O_K is a PID for all nine fields but Euclidean only for d <= 11, so a
    single factorization-based path is used throughout.
    """
    if a.is_zero() and b.is_zero():
        raise OkError("gcd(0, 0) is undefined")
    if a.is_zero():
        return canonical_associate(b)
    if b.is_zero():
        return canonical_associate(a)
    if a.norm() > b.norm():
        a, b = b, a
    out = a.tag.one()
    for p, k in factor(a).factors:
        m = min(k, valuation(b, p))
        if m:
            out = out * p.generator ** m
    return canonical_associate(out)


def is_coprime(a: OkElement, b: OkElement) -> bool:
    return gcd_ok(a, b).is_unit()


def elements_up_to_norm(tag: FieldTag, bound: int) -> list[OkElement]:
    """Canonical ideal generators of norm in [1, bound], sorted by
    (norm, x, y).  One element per nonzero ideal."""
    t, n = tag.min_poly
    out = []
    ymax = isqrt(4 * bound // (4 * n - t * t))  # from the positive definite norm form
    for y in range(-ymax - 1, ymax + 2):
        # x^2 + t x y + n y^2 <= bound
        disc = t * t * y * y - 4 * (n * y * y - bound)
        if disc < 0:
            continue
        r = isqrt(disc)
        lo = (-t * y - r - 2) // 2
        hi = (-t * y + r + 2) // 2
        for x in range(lo, hi + 1):
            e = OkElement(tag, x, y)
            nm = e.norm()
            if 1 <= nm <= bound and canonical_associate(e) == e:
                out.append(e)
    out.sort(key=lambda e: (e.norm(), e.x, e.y))
    return out


def smallest_split_primes(tag: FieldTag, count: int, minimum: int = 5) -> list[int]:
    """The `count` smallest rational primes >= minimum that split in K."""
    out = []
    ell = minimum - 1
    while len(out) < count:
        ell += 1
        if isprime(ell) and split_type(tag, ell) == "split":
            out.append(ell)
    return out
