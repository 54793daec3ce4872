"""Unit groups of residue rings (O_K/h)^x, ray class groups of the nine
class-number-one imaginary quadratic fields, Artin symbols, characters, and
the layers of anticyclotomic towers.

For class number one the ray class group of conductor h is
(O_K/h)^x modulo the image of the roots of unity mu_K, and its order is the
degree of the ray class field over K.  Unit groups are assembled from
prime-power factors of the modulus:

    * factors at split primes are cyclic and handled through the ring
      isomorphism O_K/p^e = Z/l^e (Hensel-lifted root of the minimal
      polynomial of omega), with Pohlig-Hellman discrete logs;
    * inert and ramified factors are enumerated outright and their structure
      recovered by Sylow-counting; enumeration doubles as the oracle of
      record, so no randomized generator search is used.

Residues are reduced to a fixed fundamental domain (rounding division
against the lattice basis {h, h*omega}), which makes representatives
canonical and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, isqrt, prod

from sympy import factorint, isprime

from .abgroup import (AbelianGroupStructure, GroupError, QuotientPresentation,
                      abelian_structure)
from .okring import (FieldTag, OkElement, OkError, OkPrime, canonical_associate,
                     factor, split_type, valuation)

# Largest single non-split prime-power factor handled by enumeration.
ENUM_FACTOR_LIMIT = 2_000_000


def reduce_mod(e: OkElement, modulus: OkElement) -> OkElement:
    """Canonical representative of e modulo (modulus): coordinates of
    e/modulus are rounded to nearest integers (halves round up)."""
    if modulus.is_zero():
        raise OkError("zero modulus")
    n = modulus.norm()
    num = e * modulus.conj()
    q1 = floor(Fraction(num.x, n) + Fraction(1, 2))
    q2 = floor(Fraction(num.y, n) + Fraction(1, 2))
    return e - OkElement(e.tag, q1, q2) * modulus


@dataclass(frozen=True)
class ResidueClass:
    modulus: OkElement
    representative: OkElement

    @classmethod
    def of(cls, e: OkElement, modulus: OkElement) -> "ResidueClass":
        return cls(modulus, reduce_mod(e, modulus))

    def __mul__(self, other: "ResidueClass") -> "ResidueClass":
        return ResidueClass(self.modulus,
                            reduce_mod(self.representative * other.representative,
                                       self.modulus))

    def __str__(self) -> str:
        return str(self.representative)


def _hnf_box(modulus: OkElement) -> tuple[int, int, int]:
    """(alpha, beta, gamma): the ideal lattice (modulus) has Hermite basis
    (alpha, 0), (beta, gamma); residues are x in [0,alpha) x y in [0,gamma)."""
    g = modulus
    gw = modulus * modulus.tag.omega()
    u, v = (g.x, g.y), (gw.x, gw.y)
    while u[1] != 0:
        q = v[1] // u[1]
        v = (v[0] - q * u[0], v[1] - q * u[1])
        u, v = v, u
    alpha, beta, gamma = abs(u[0]), v[0], v[1]
    if gamma < 0:
        beta, gamma = -beta, -gamma
    beta %= alpha
    if alpha * gamma != modulus.norm():
        raise OkError("Hermite basis does not match the modulus norm")
    return alpha, beta, gamma


def residues_mod(modulus: OkElement) -> list[OkElement]:
    """A complete, deterministic transversal of O_K/(modulus)."""
    alpha, _, gamma = _hnf_box(modulus)
    tag = modulus.tag
    return [OkElement(tag, x, y) for y in range(gamma) for x in range(alpha)]


def _crt_int(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    g, p, _ = _xgcd(m1, m2)
    if g != 1:
        raise GroupError("moduli not coprime")
    m = m1 * m2
    return (r1 + (r2 - r1) * p % m2 * m1) % m, m


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _bsgs(h: int, t: int, r: int, mod: int) -> int:
    """Solve h^j = t mod `mod` for 0 <= j < r (h of order r)."""
    step = isqrt(r - 1) + 1
    baby = {}
    acc = 1
    for j in range(step):
        baby.setdefault(acc, j)
        acc = acc * h % mod
    giant = pow(pow(h, step, mod), -1, mod)
    cur = t
    for i in range(step + 1):
        if cur in baby:
            return (i * step + baby[cur]) % r
        cur = cur * giant % mod
    raise GroupError("baby-step giant-step failed: element outside subgroup")


def _dlog_cyclic_int(g: int, x: int, order: int, mod: int) -> int:
    """Discrete log of x base g in the cyclic subgroup of (Z/mod)^x of the
    given order, by Pohlig-Hellman."""
    res, mres = 0, 1
    for r, a in factorint(order).items():
        ra = r ** a
        gr = pow(g, order // ra, mod)
        xr = pow(x, order // ra, mod)
        h = pow(gr, ra // r, mod)   # order r
        e = 0
        grinv = pow(gr, -1, mod)
        for i in range(a):
            t = pow(xr * pow(grinv, e, mod) % mod, ra // r ** (i + 1), mod)
            e += _bsgs(h, t, r, mod) * r ** i
        res, mres = _crt_int(res, mres, e, ra)
    return res


class _SplitFactor:
    """(O_K/p^e)^x for a split prime p over l, via O_K/p^e = Z/l^e."""

    def __init__(self, p: OkPrime, e: int):
        tag = p.tag
        ell = p.residue_char
        self.prime, self.e, self.ell = p, e, ell
        self.modulus = p.generator ** e
        self.int_mod = ell ** e
        t, n = tag.min_poly
        # root of x^2 - t x + n mod l picked out by p, then Hensel-lifted
        root = None
        for s in range(ell):
            if (s * s - t * s + n) % ell == 0 and p.divides(tag.omega() - tag.from_int(s)):
                root = s
                break
        if root is None:
            raise GroupError(f"no residue root for {p}; is it split?")
        mod = ell
        while mod < self.int_mod:
            mod *= ell
            fp = (2 * root - t) % mod
            fval = (root * root - t * root + n) % mod
            root = (root - fval * pow(fp, -1, mod)) % mod
        self.root = root % self.int_mod
        self.gens_int, self.orders = self._unit_gens(ell, e)
        self.gens = [tag.from_int(g) for g in self.gens_int]

    @staticmethod
    def _unit_gens(ell: int, e: int) -> tuple[list[int], list[int]]:
        mod = ell ** e
        if ell == 2:
            if e == 1:
                return [], []
            if e == 2:
                return [3], [2]
            return [mod - 1, 5], [2, mod // 4]
        m = (ell - 1) * ell ** (e - 1)
        g = 2
        while element_order_int(g, ell - 1, ell) != ell - 1:
            g += 1
        if e > 1 and pow(g, ell - 1, ell * ell) == 1:
            g += ell
        return [g], [m]

    def to_int(self, x: OkElement) -> int:
        return (x.x + x.y * self.root) % self.int_mod

    def dlog(self, x: OkElement) -> list[int]:
        r = self.to_int(x)
        if r % self.ell == 0:
            raise GroupError(f"{x} is not a unit modulo {self.modulus}")
        if not self.orders:
            return []
        if self.ell == 2:
            if self.e == 2:
                return [0 if r % 4 == 1 else 1]
            sign = 0 if r % 4 == 1 else 1
            if sign:
                r = (-r) % self.int_mod
            return [sign, _dlog_cyclic_int(5, r, self.orders[1], self.int_mod)]
        return [_dlog_cyclic_int(self.gens_int[0], r, self.orders[0], self.int_mod)]

    def inverse(self, x: OkElement) -> OkElement:
        r = self.to_int(x)
        return x.tag.from_int(pow(r, -1, self.int_mod))


def element_order_int(x: int, group_order: int, mod: int) -> int:
    o = group_order
    for r in factorint(group_order):
        while o % r == 0 and pow(x, o // r, mod) == 1:
            o //= r
    return o


class _EnumFactor:
    """(O_K/p^e)^x for an inert or ramified prime, by full enumeration."""

    def __init__(self, p: OkPrime, e: int):
        self.prime, self.e = p, e
        self.modulus = p.generator ** e
        if self.modulus.norm() > ENUM_FACTOR_LIMIT:
            raise OkError(
                f"non-split factor {p}^{e} has norm {self.modulus.norm()} beyond the "
                f"enumeration limit {ENUM_FACTOR_LIMIT}")
        units = []
        for r in residues_mod(self.modulus):
            if not p.divides(r):
                units.append(reduce_mod(r, self.modulus))
        mod = self.modulus
        op = lambda a, b: reduce_mod(a * b, mod)
        ident = reduce_mod(p.tag.one(), mod)
        self.gens, self.orders, self._dlog = abelian_structure(units, op, ident)

    def dlog(self, x: OkElement) -> list[int]:
        key = reduce_mod(x, self.modulus)
        vec = self._dlog.get(key)
        if vec is None:
            raise GroupError(f"{x} is not a unit modulo {self.modulus}")
        return list(vec)

    def inverse(self, x: OkElement) -> OkElement:
        vec = self.dlog(x)
        out = x.tag.one()
        for g, o, v in zip(self.gens, self.orders, vec):
            out = reduce_mod(out * g ** ((o - v) % o), self.modulus)
        return out


class UnitGroup:
    """(O_K/h)^x with concrete generators, orders and discrete logs."""

    def __init__(self, modulus: OkElement):
        if modulus.is_zero():
            raise OkError("zero modulus")
        self.tag = modulus.tag
        self.modulus = canonical_associate(modulus)
        fac = factor(self.modulus)
        self.prime_powers = fac.factors
        self.factors = []
        for p, e in self.prime_powers:
            if p.kind == "split":
                self.factors.append(_SplitFactor(p, e))
            else:
                self.factors.append(_EnumFactor(p, e))
        self.orders: list[int] = []
        self.gens: list[OkElement] = []
        for i, f in enumerate(self.factors):
            lift = self._crt_idempotent(i)
            for g, o in zip(f.gens, f.orders):
                self.gens.append(reduce_mod(self.tag.one() + lift * (g - self.tag.one()),
                                            self.modulus))
                self.orders.append(o)

    def _crt_idempotent(self, i: int) -> OkElement:
        """u = 1 mod factor i, u = 0 mod the complementary part."""
        f = self.factors[i]
        cof = self.modulus.divide_exact(f.modulus)
        if cof is None:
            raise GroupError("factor modulus does not divide the modulus")
        if cof.is_unit():
            return self.tag.one()
        inv = f.inverse(cof)
        return reduce_mod(cof * inv, self.modulus)

    @property
    def order(self) -> int:
        return prod(self.orders) if self.orders else 1

    def is_unit(self, e: OkElement) -> bool:
        return not any(p.divides(e) for p, _ in self.prime_powers)

    def dlog(self, e: OkElement) -> list[int]:
        if not self.is_unit(e):
            raise GroupError(f"{e} shares a factor with the modulus {self.modulus}")
        out: list[int] = []
        for f in self.factors:
            out.extend(f.dlog(e))
        return out

    def power_word(self, exponents) -> OkElement:
        out = self.tag.one()
        for g, v, o in zip(self.gens, exponents, self.orders):
            out = reduce_mod(out * g ** (v % o), self.modulus)
        return out

    def mu_image_vector(self) -> list[int]:
        return self.dlog(self.tag.unit_gen())

    def mu_image_order(self) -> int:
        vec = self.mu_image_vector()
        o = 1
        for v, n in zip(vec, self.orders):
            d = n // gcd(v, n)
            o = o * d // gcd(o, d)
        return o


def euler_phi(modulus: OkElement) -> int:
    """|(O_K/h)^x| = Nh * prod over primes p | h of (1 - 1/Np)."""
    if modulus.is_zero():
        raise OkError("zero modulus")
    out = 1
    for p, e in factor(modulus).factors:
        np = p.norm()
        out *= np ** (e - 1) * (np - 1)
    return out


def unit_group_structure(modulus: OkElement) -> AbelianGroupStructure:
    """Smith-chain structure of (O_K/h)^x with realized generators."""
    U = UnitGroup(modulus)
    pres = QuotientPresentation.from_relations(U.orders, [])
    gens = tuple(ResidueClass(U.modulus, U.power_word(w)) for w in pres.generator_words())
    return AbelianGroupStructure(pres.invariants, gens)


@dataclass(frozen=True)
class RayClassElement:
    group: "RayClassGroup"
    coords: tuple[int, ...]

    def __mul__(self, other: "RayClassElement") -> "RayClassElement":
        if other.group is not self.group:
            raise GroupError("elements of different ray class groups")
        invs = self.group.presentation.invariants
        return RayClassElement(self.group, tuple((a + b) % n for a, b, n
                                                 in zip(self.coords, other.coords, invs)))

    def order(self) -> int:
        o = 1
        for c, n in zip(self.coords, self.group.presentation.invariants):
            d = n // gcd(c, n)
            o = o * d // gcd(o, d)
        return o

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.coords)


class RayClassGroup:
    """(O_K/h)^x modulo the image of mu_K; its order is [R(h):K]."""

    def __init__(self, modulus: OkElement):
        self.units = UnitGroup(modulus)
        self.modulus = self.units.modulus
        self.tag = self.units.tag
        rels = [self.units.mu_image_vector()] if self.units.orders else []
        self.presentation = QuotientPresentation.from_relations(self.units.orders, rels)
        self.degree = self.presentation.order

    @property
    def structure(self) -> AbelianGroupStructure:
        gens = tuple(ResidueClass(self.modulus, self.units.power_word(w))
                     for w in self.presentation.generator_words())
        return AbelianGroupStructure(self.presentation.invariants, gens)

    def class_of(self, lam: OkElement) -> RayClassElement:
        if lam.is_zero() or lam.is_unit():
            raise OkError("lambda must be a non-unit, nonzero element")
        return RayClassElement(self, self.ideal_class_coords(lam))

    def ideal_class_coords(self, e: OkElement) -> tuple[int, ...]:
        """Quotient coordinates of the ideal (e); associates agree because
        unit images are quotiented out."""
        if not self.units.is_unit(e):
            raise OkError(f"{e} is not coprime to the modulus {self.modulus}")
        return self.presentation.coords(self.units.dlog(e))

    def to_dict(self) -> dict:
        return {"invariants": list(self.presentation.invariants),
                "order": self.degree,
                "modulus": str(self.modulus)}


def ray_class_group(modulus: OkElement) -> RayClassGroup:
    return RayClassGroup(modulus)


def artin_symbol(modulus: OkElement, lam: OkElement) -> RayClassElement:
    """The ray class of the principal ideal (lam); multiplicative in lam."""
    return RayClassGroup(modulus).class_of(lam)


def lcm_ideal(a: OkElement, b: OkElement) -> OkElement:
    """Canonical generator of lcm((a), (b))."""
    if a.is_zero() or b.is_zero():
        raise OkError("lcm with zero")
    fa = {(p.residue_char, p.generator): (p, k) for p, k in factor(a).factors}
    out = a.tag.one()
    seen = set()
    for key, (p, k) in fa.items():
        m = max(k, valuation(b, p))
        out = out * p.generator ** m
        seen.add(key)
    for p, k in factor(b).factors:
        if (p.residue_char, p.generator) not in seen:
            out = out * p.generator ** k
    return canonical_associate(out)


def lcm_degree_check(a: OkElement, b: OkElement, p: int) -> tuple[bool, bool, bool]:
    """(p does not divide [R(a):K], same for b, same for lcm(a,b)).

    For p coprime to |mu_K| (in particular every p >= 5) the first two imply
    the third; see the module tests for a w-divisible counterexample.
    """
    da = RayClassGroup(a).degree
    db = RayClassGroup(b).degree
    dl = RayClassGroup(lcm_ideal(a, b)).degree
    return (da % p != 0, db % p != 0, dl % p != 0)


@dataclass(frozen=True)
class CharacterSpec:
    """A character as an exponent vector against Smith-chain generators.

    q_order carries the order of the anticyclotomic-layer component when the
    group is a tower layer; k is the exponent of the p-power-torsion
    character component (0 for finite-order ray class characters).
    """

    exponents: tuple[int, ...]
    order: int
    q_order: int = 1
    k: int = 0


def characters(group, *, exact_order: int | None = None,
               min_order: int | None = None,
               q: int | None = None,
               limit: int = 10 ** 6) -> list[CharacterSpec]:
    """Enumerate characters of a finite abelian group given by its Smith
    invariants (accepts a RayClassGroup, an AbelianGroupStructure, a
    QuotientPresentation or a bare invariant list)."""
    if isinstance(group, RayClassGroup):
        invariants = group.presentation.invariants
    elif isinstance(group, QuotientPresentation):
        invariants = group.invariants
    elif isinstance(group, AbelianGroupStructure):
        invariants = group.invariants
    else:
        invariants = tuple(group)
    total = prod(invariants) if invariants else 1
    if total > limit:
        raise GroupError(f"character group of order {total} exceeds limit {limit}")
    out = []
    for vec in itertools.product(*(range(n) for n in invariants)):
        o = 1
        for c, n in zip(vec, invariants):
            d = n // gcd(c, n)
            o = o * d // gcd(o, d)
        if exact_order is not None and o != exact_order:
            continue
        if min_order is not None and o < min_order:
            continue
        q_order = 1
        if q is not None:
            q_order = q ** _padic_val(o, q)
        out.append(CharacterSpec(vec, o, q_order=q_order))
    return out


def _padic_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class TowerLevel:
    n: int
    order: int
    invariants: tuple[int, ...]
    layer_degree: int

    def to_dict(self) -> dict:
        return {"n": self.n, "order": self.order,
                "invariants": list(self.invariants),
                "layer_degree": self.layer_degree}


@dataclass(frozen=True)
class AnticyclotomicTower:
    tag: FieldTag
    q: int
    levels: tuple[TowerLevel, ...]


def minus_quotient(modulus: OkElement, q: int) -> QuotientPresentation:
    """q-primary part S of (O_K/h)^x modulo {x*conj(x)}, for a
    conjugation-stable modulus h."""
    U = UnitGroup(modulus)
    if canonical_associate(modulus.conj()) != U.modulus:
        raise OkError(f"modulus {modulus} is not conjugation-stable")
    syl_idx = []
    syl_orders = []
    syl_gens = []
    for i, (g, o) in enumerate(zip(U.gens, U.orders)):
        qpart = q ** _padic_val(o, q)
        if qpart > 1:
            syl_idx.append(i)
            syl_orders.append(qpart)
            syl_gens.append(reduce_mod(g ** (o // qpart), U.modulus))

    def sylow_dlog(e: OkElement) -> list[int]:
        full = U.dlog(e)
        vec = []
        for i, qpart in zip(syl_idx, syl_orders):
            cof = U.orders[i] // qpart
            if full[i] % cof:
                raise GroupError(f"{e} is not in the {q}-primary part")
            vec.append(full[i] // cof % qpart)
        return vec

    rels = []
    for h in syl_gens:
        norm_elt = reduce_mod(h * h.conj(), U.modulus)
        rels.append(sylow_dlog(norm_elt))
    return QuotientPresentation.from_relations(syl_orders, rels)


def anticyclotomic_tower(tag: FieldTag, q: int, depth: int) -> AnticyclotomicTower:
    """Layers 0..depth of the anticyclotomic tower over K at a split prime
    q >= 5: the minus quotient of the q-primary part of (O_K/q^(n+1))^x,
    whose order is the degree q^n of the n-th layer."""
    if not isprime(q) or q < 5:
        raise OkError("q must be a prime >= 5")
    if split_type(tag, q) != "split":
        raise OkError(f"{q} does not split in Q(sqrt(-{tag.d}))")
    if depth < 0:
        raise OkError("depth must be nonnegative")
    levels = []
    prev_order = None
    for n in range(depth + 1):
        modulus = tag.from_int(q) ** (n + 1)
        pres = minus_quotient(modulus, q)
        deg = 1 if prev_order is None else pres.order // prev_order
        levels.append(TowerLevel(n, pres.order, pres.invariants, deg))
        prev_order = pres.order
    return AnticyclotomicTower(tag, q, tuple(levels))
