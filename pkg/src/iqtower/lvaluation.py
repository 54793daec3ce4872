"""Residue-characteristic machinery and numeric Hecke L-series.

The non-vanishing side works in residue fields of characteristic p at a
split prime: a fixed embedding O_K -> F_p (choice of square root of -d
mod p picks the prime above p), images of q-power roots of unity in the
extension F_{p^t} with t = ord(p mod q^m), and the order test on the
residue a = N(lambda) * lambda^(-k) * phi0^(-1) which controls, level by
level, whether the Euler-type factor N(lambda) - lambda^k*phi(sigma) can
vanish mod p.  Valuations are only ever decided as "zero vs positive",
i.e. nonzero vs zero in the residue field.

The L-series side evaluates imprimitive Hecke L-functions of finite-order
ray class characters as truncated ideal sums and truncated Euler products,
with rigorous tail bounds from the ideal-count estimate r_K(n) <= d(n)
(valid for every imaginary quadratic field: r_K(n) = sum over m | n of
chi_disc(m), a sum of n/m terms each at most 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np
from sympy import isprime, n_order, primerange

from .finitefield import FFElement, FieldError, FiniteField, finite_field
from .okring import (FieldTag, OkElement, OkError, factor, primes_above,
                     split_type)
from .rayclass import CharacterSpec, RayClassGroup

# Explicit root-of-unity comparisons are done in F_{p^t} only up to this
# degree; past it the integer certificate path takes over.
EXPLICIT_FIELD_DEGREE_CAP = 400


@dataclass(frozen=True)
class ResidueEmbedding:
    """Reduction O_K -> F_p at a split odd prime, fixed by the root s of
    s^2 = -d (mod p); the kernel is the prime (p, sqrt(-d) - s)."""

    tag: FieldTag
    p: int
    root: int

    @classmethod
    def create(cls, tag: FieldTag, p: int, root: int | None = None) -> "ResidueEmbedding":
        if p == 2 or not isprime(p):
            raise OkError("p must be an odd prime")
        if split_type(tag, p) != "split":
            raise OkError(f"{p} does not split in Q(sqrt(-{tag.d}))")
        roots = sorted(r for r in range(p) if (r * r + tag.d) % p == 0)
        if root is None:
            root = roots[0]
        elif root % p not in roots:
            raise OkError(f"{root} is not a square root of {-tag.d} mod {p}")
        return cls(tag, p, root % p)

    @property
    def omega_image(self) -> int:
        if self.tag.omega_is_half:
            return (1 + self.root) * pow(2, -1, self.p) % self.p
        return self.root

    def embed(self, e: OkElement) -> int:
        """Ring homomorphism to F_p; kernel is exactly the chosen prime."""
        if e.tag != self.tag:
            raise OkError("element from a different field")
        return (e.x + e.y * self.omega_image) % self.p

    def ext_degree(self, m: int) -> int:
        """Degree of F_p(mu_m) over F_p: the order of p mod m."""
        if gcd(m, self.p) != 1:
            raise OkError(f"{m} is divisible by p={self.p}")
        return 1 if m == 1 else int(n_order(self.p, m))


def _projection_candidates(F: FiniteField):
    """Deterministic scan order for elements whose cofactor power is tested
    for primitivity: affine elements c1*x + c0 first (monomial-shaped
    candidates fail in long structured runs), then everything."""
    if F.t == 1:
        yield from F.iter_elements()
        return
    for c1 in range(1, F.p):
        for c0 in range(F.p):
            yield F.element((c0, c1) + (0,) * (F.t - 2))
    yield from F.iter_elements()


@lru_cache(maxsize=None)
def unity_image(p: int, q: int, m: int) -> FFElement:
    """A fixed primitive q^m-th root of unity in F_{p^t}, t = ord(p mod q^m):
    the coefficient-lexicographically smallest element of exact order q^m.

    The q^m-torsion of F_{p^t}^x is unique, so the choice does not depend on
    how the subgroup is first reached.
    """
    if not isprime(q) or not isprime(p):
        raise OkError("p and q must be prime")
    if q == p:
        raise OkError("q = p is excluded: roots of unity collapse mod p")
    qm = q ** m
    if m == 0:
        return finite_field(p, 1).one()
    t = int(n_order(p, qm))
    if t > EXPLICIT_FIELD_DEGREE_CAP:
        raise OkError(f"splitting field degree {t} exceeds the explicit cap "
                      f"{EXPLICIT_FIELD_DEGREE_CAP}")
    F = finite_field(p, t)
    cof = (F.order - 1) // qm
    qm1 = qm // q
    w = None
    for z in _projection_candidates(F):
        if z.is_zero():
            continue
        cand = z ** cof
        if not (cand ** qm1 == F.one()):
            w = cand
            break
    if w is None:
        raise OkError("no primitive root found; degree bookkeeping is wrong")
    # enumerate mu_{q^m} and take the lex-smallest element of exact order
    best = None
    acc = F.one()
    for j in range(qm):
        if j and j % q:
            if best is None or acc.coeffs < best.coeffs:
                best = acc
        acc = acc * w
    return best


DISTINCTNESS_EXPLICIT_CAP = 64


def distinctness_check(p: int, q: int, m: int,
                       explicit_cap: int = DISTINCTNESS_EXPLICIT_CAP) -> bool:
    """Verify that all q^m-th roots of unity stay pairwise distinct under
    reduction mod a prime above p.

    The check always runs on exact integer data: x^(q^m) - 1 is separable
    mod p (its derivative is a unit times a power of x, and 0 is not a
    root), the splitting-degree chain t_j = ord(p mod q^j) is verified to
    carry each q^j into the unit group of F_{p^(t_j)}, and the order
    q^(m - v_q(k)) of every nontrivial power of a primitive root is swept
    over the full exponent range, so no two powers can collide.  When the
    splitting degree is at most explicit_cap, the q^m powers of a primitive
    root are additionally compared element by element in F_{p^t}.
    """
    if not isprime(q) or not isprime(p):
        raise OkError("p and q must be prime")
    if q == p:
        raise OkError("q = p is excluded")
    qm = q ** m
    if m == 0:
        return True
    # separability: gcd(x^qm - 1, qm * x^(qm-1)) = 1 since p does not divide qm
    if qm % p == 0:
        return False
    # exhaustive order sweep over all exponent differences
    for k in range(1, qm):
        e = k
        v = 0
        while e % q == 0:
            e //= q
            v += 1
        if q ** (m - v) <= 1:
            return False
    # splitting-degree chain consistency
    prev_t = 1
    for j in range(1, m + 1):
        tj = int(n_order(p, q ** j))
        if (p ** tj - 1) % q ** j or tj % prev_t:
            return False
        prev_t = tj
    if prev_t <= min(explicit_cap, EXPLICIT_FIELD_DEGREE_CAP):
        zeta = unity_image(p, q, m)
        F = zeta.field
        seen = set()
        acc = F.one()
        for _ in range(qm):
            seen.add(acc.coeffs)
            acc = acc * zeta
        if len(seen) != qm:
            return False
    return True


def _as_field_element(value, field: FiniteField) -> FFElement:
    if isinstance(value, FFElement):
        if value.field is field:
            return value
        if value.field.t == 1:
            return field.lift(value.coeffs[0])
        raise FieldError("cannot mix elements of different extension fields")
    return field.lift(int(value))


def _common_field(p: int, *values) -> FiniteField:
    exts = []
    for v in values:
        if isinstance(v, FFElement):
            if v.field.p != p:
                raise FieldError("wrong characteristic")
            if v.field.t > 1:
                exts.append(v.field)
    if not exts:
        return finite_field(p, 1)
    if any(F is not exts[0] for F in exts[1:]):
        raise FieldError("incompatible extension fields; construct the images "
                         "in one common field")
    return exts[0]


def euler_factor_vanishes(emb: ResidueEmbedding, lam: OkElement, k: int,
                          phi0_image, eta_image) -> bool:
    """True iff N(lambda) = lambda^k * phi0 * eta in the residue field,
    i.e. the factor N(lambda) - lambda^k*phi(sigma_lambda) has positive
    valuation.  False is the non-vanishing case."""
    a0 = emb.embed(lam)
    if a0 == 0:
        raise OkError(f"{lam} lies in the chosen prime above {emb.p}")
    F = _common_field(emb.p, phi0_image, eta_image)
    phi0 = _as_field_element(phi0_image, F)
    eta = _as_field_element(eta_image, F)
    if phi0.is_zero() or eta.is_zero():
        raise OkError("character images must be units")
    lhs = F.lift(lam.norm() % emb.p)
    rhs = F.lift(pow(a0, k, emb.p)) * phi0 * eta
    return lhs == rhs


def compute_N1(emb: ResidueEmbedding, lam: OkElement, k: int, phi0_image,
               q: int) -> int:
    """Level bound from the residue a = N(lambda)*lambda^(-k)*phi0^(-1).

    The factor can vanish for a character component eta of exact order q^m
    only when eta(sigma_lambda), a primitive q^m-th root of unity, equals a;
    that pins a single exact order q^m0.  Returns m0 + 1 when a has exact
    q-power order q^m0 (so vanishing is impossible for all eta of exact
    order >= q^(m0+1)), and 0 when a is not a q-power root of unity at all.
    """
    if not isprime(q) or q == emb.p:
        raise OkError("q must be a prime different from p")
    a0 = emb.embed(lam)
    if a0 == 0:
        raise OkError(f"{lam} lies in the chosen prime above {emb.p}")
    F = _common_field(emb.p, phi0_image)
    phi0 = _as_field_element(phi0_image, F)
    if phi0.is_zero():
        raise OkError("phi0 image must be a unit")
    a = F.lift(lam.norm() % emb.p) * F.lift(pow(a0, k, emb.p)).inverse() * phi0.inverse()
    one = F.one()
    if a == one:
        return 1
    n = F.order - 1
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    if not (a ** (q ** v) == one):
        return 0
    m0 = 1
    while not (a ** (q ** m0) == one):
        m0 += 1
    return m0 + 1


# ---------------------------------------------------------------------------
# Imprimitive L-series of finite-order ray class characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LSeriesValue:
    value: complex | float
    truncation_bound: int
    error_estimate: float

    def to_dict(self) -> dict:
        v = self.value
        out: dict = {"B": self.truncation_bound, "error": self.error_estimate}
        if isinstance(v, complex):
            out["value"] = [v.real, v.imag]
        else:
            out["value"] = v
        return out


def _zeta_upper(s: float) -> float:
    return 1.0 + 1.0 / (s - 1.0)


def dirichlet_tail_bound(bound: int, s: float) -> float:
    """Rigorous bound on sum over n > bound of r_K(n) n^(-s), via
    r_K(n) <= d(n) and sum_{ab > B} (ab)^(-s) <= 2 zeta(s) sum_{b > sqrt(B)}
    b^(-s)."""
    if s <= 1:
        raise OkError("s must exceed 1")
    x = math.isqrt(bound)
    tail = x ** (1.0 - s) / (s - 1.0)
    return 2.0 * _zeta_upper(s) * tail


def _prime_linear_roots(modulus: OkElement) -> list[tuple[str, int, int]]:
    """Divisibility data for the primes of the modulus: entries
    ("lin", ell, s) mean the prime divides x + y*omega iff
    x + y*s = 0 mod ell; ("both", ell, 0) means x = y = 0 mod ell (inert)."""
    out = []
    tag = modulus.tag
    t, n = tag.min_poly
    for p, _ in factor(modulus).factors:
        ell = p.residue_char
        if p.kind == "inert":
            out.append(("both", ell, 0))
            continue
        s = next(s for s in range(ell)
                 if (s * s - t * s + n) % ell == 0
                 and p.divides(tag.omega() - tag.from_int(s)))
        out.append(("lin", ell, s))
    return out


def _ideal_rows(tag: FieldTag, bound: int):
    """Yield (y, xs) numpy rows covering each nonzero ideal of norm <= bound
    exactly once: representatives are canonical up to units.

    For the two-unit fields these are y >= 1 (any x) plus y = 0, x >= 1; for
    d = 1 and d = 3 the sector x >= 1, y >= 0 is a transversal of the unit
    orbits.
    """
    t, n = tag.min_poly
    quarter = tag.num_units >= 4
    ymax = isqrt(4 * bound // (4 * n - t * t))
    for y in range(0, ymax + 1):
        c = n * y * y - bound
        disc = t * t * y * y - 4 * c
        if disc < 0:
            continue
        r = math.sqrt(float(disc))
        lo = int(math.floor((-t * y - r) / 2)) - 1
        hi = int(math.ceil((-t * y + r) / 2)) + 1
        if y == 0 or quarter:
            lo = max(lo, 1)
        if hi < lo:
            continue
        xs = np.arange(lo, hi + 1, dtype=np.int64)
        norms = xs * xs + t * xs * y + n * y * y
        xs = xs[(norms >= 1) & (norms <= bound)]
        if len(xs):
            yield y, xs


def evaluate_imprimitive_L(tag: FieldTag, modulus: OkElement, chi: CharacterSpec,
                           s: float, bound: int) -> LSeriesValue:
    """Truncated Dirichlet sum over ideals of norm <= bound coprime to the
    modulus, with a rigorous tail bound.  chi must be a finite-order ray
    class character (k = 0) modulo the given modulus."""
    if s <= 1:
        raise OkError("s must exceed 1")
    if chi.k != 0:
        raise OkError("only finite-order characters (k = 0) are evaluated")
    group = RayClassGroup(modulus)
    invariants = group.presentation.invariants
    if len(chi.exponents) != len(invariants):
        raise OkError("character exponent vector does not match the group")
    trivial = all(e == 0 for e in chi.exponents)
    t, n = tag.min_poly
    lin = _prime_linear_roots(group.modulus)
    total = 0.0 if trivial else complex(0.0)
    for y, xs in _ideal_rows(tag, bound):
        mask = np.ones(len(xs), dtype=bool)
        for kind, ell, root in lin:
            if kind == "both":
                if y % ell == 0:
                    mask &= (xs % ell) != 0
            else:
                mask &= ((xs + y * root) % ell) != 0
        xs = xs[mask]
        if not len(xs):
            continue
        norms = (xs * xs + t * xs * y + n * y * y).astype(np.float64)
        if trivial:
            total += float(np.sum(norms ** (-s)))
        else:
            for x, nv in zip(xs.tolist(), norms.tolist()):
                cls = group.ideal_class_coords(OkElement(tag, x, int(y)))
                theta = sum(c * e / inv for c, e, inv
                            in zip(cls, chi.exponents, invariants))
                total += cmath.exp(2j * cmath.pi * theta) * nv ** (-s)
    return LSeriesValue(total, bound, dirichlet_tail_bound(bound, s))


def euler_product_L(tag: FieldTag, modulus: OkElement, chi: CharacterSpec,
                    s: float, bound: int) -> LSeriesValue:
    """The same L-value as a truncated Euler product over prime ideals of
    norm <= bound coprime to the modulus."""
    if s <= 1:
        raise OkError("s must exceed 1")
    if chi.k != 0:
        raise OkError("only finite-order characters (k = 0) are evaluated")
    group = RayClassGroup(modulus)
    invariants = group.presentation.invariants
    if len(chi.exponents) != len(invariants):
        raise OkError("character exponent vector does not match the group")
    trivial = all(e == 0 for e in chi.exponents)

    def chi_at(e: OkElement) -> complex:
        if trivial:
            return 1.0
        cls = group.ideal_class_coords(e)
        theta = sum(c * v / inv for c, v, inv in zip(cls, chi.exponents, invariants))
        return cmath.exp(2j * cmath.pi * theta)

    total = 1.0 if trivial else complex(1.0)
    norm_mod = group.modulus.norm()
    disc = tag.discriminant
    for ell in primerange(2, bound + 1):
        if ell == 2:
            kind = split_type(tag, ell)
        else:
            r = pow(disc % ell, (ell - 1) // 2, ell)
            kind = "ramified" if r == 0 else ("split" if r == 1 else "inert")
        touches_mod = norm_mod % ell == 0
        if trivial and not touches_mod:
            # the factor depends only on the splitting behaviour
            if kind == "split":
                total = total / (1.0 - float(ell) ** (-s)) ** 2
            elif kind == "ramified":
                total = total / (1.0 - float(ell) ** (-s))
            elif ell * ell <= bound:
                total = total / (1.0 - float(ell) ** (-2 * s))
            continue
        if kind == "inert":
            if ell * ell > bound:
                continue
            p = primes_above(tag, ell)[0]
            if p.divides(group.modulus):
                continue
            total = total / (1.0 - chi_at(p.generator) * float(ell) ** (-2 * s))
            continue
        for p in primes_above(tag, ell):
            if p.divides(group.modulus):
                continue
            total = total / (1.0 - chi_at(p.generator) * float(ell) ** (-s))
    log_tail = dirichlet_tail_bound(bound, s) / (1.0 - float(bound) ** (-s))
    err = abs(total) * math.expm1(log_tail)
    return LSeriesValue(total, bound, err)
