"""Fine-Selmer p-rank bookkeeping over Z_q-towers.

The whole module works at the level the reduction makes exact: when all
p-torsion of the abelian variety is rational, the mod-p fine Selmer group is
Hom(Cl_S, (Z/p)^2d), so its p-rank is 2d times the p-rank of the S-class
group; everything else is bounded through the four-term-sequence rank lemma
and the kernel sizes of the mod-p control maps.  Groups of the shape
(Q_p/Z_p)^s + T enter as explicit (corank, torsion) models; no Galois
cohomology is computed here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from sympy import isprime, n_order


class IngestError(ValueError):
    """Base for tower-file rejections (CLI exit 4)."""


class SchemaError(IngestError):
    pass


class MonotonicityError(IngestError):
    pass


class RankConsistencyError(IngestError):
    pass


@dataclass(frozen=True)
class CofinPGroup:
    """(Q_p/Z_p)^corank + T with T a finite p-group given by its p-power
    cyclic orders."""

    p: int
    corank: int
    torsion: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.corank < 0:
            raise ValueError("corank must be nonnegative")
        for t in self.torsion:
            if t < self.p or not _is_p_power(t, self.p):
                raise ValueError(f"torsion order {t} is not a power of {self.p}")

    @property
    def p_rank(self) -> int:
        return self.corank + len(self.torsion)

    def iso_key(self) -> tuple:
        return (self.corank, tuple(sorted(self.torsion)))

    def to_dict(self) -> dict:
        return {"s": self.corank, "T": sorted(self.torsion)}


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def fine_selmer_mod_p_rank(r_cls: int, d: int) -> int:
    """p-rank of the mod-p fine Selmer group of a d-dimensional abelian
    variety with rational p-torsion: 2d times the S-class-group p-rank."""
    if r_cls < 0 or d < 1:
        raise ValueError("need r_cls >= 0 and d >= 1")
    return 2 * d * r_cls


def rank_gap_bound(r_first: int, r_last: int) -> int:
    """For an exact sequence P -> Q -> R -> S of cofinitely generated
    groups, |r_p(Q) - r_p(R)| <= 2*r_p(P) + r_p(S)."""
    if r_first < 0 or r_last < 0:
        raise ValueError("p-ranks are nonnegative")
    return 2 * r_first + r_last


def control_gap_bound(d: int, s_f: int) -> int:
    """Bound on |r_p(Sel0(A[p])) - r_p(Sel0(A))| over a layer with s_f
    finite places of ramification/bad reduction: the comparison kernel is
    (Z/p)^2d and the local kernels contribute (Z/p)^2d per finite place,
    so the rank lemma gives 2*(2d) + 2d*s_f.  This constant is this
    package's choice; only finiteness is canonical."""
    if d < 1 or s_f < 0:
        raise ValueError("need d >= 1 and s_f >= 0")
    return 4 * d + 2 * d * s_f


def class_to_selmer_gap_bound(d: int, s_f: int) -> int:
    """Composite bound on |r_p(Sel0(A)) - 2d*r_p(Cl)|: the S-class gap
    contributes 2d * 2*s_f on top of control_gap_bound."""
    return control_gap_bound(d, s_f) + 4 * d * s_f


def stabilization_detect(series: list[CofinPGroup]) -> int | None:
    """Smallest index from which all later groups are isomorphic (equal
    corank and torsion multiset).  Needs a stable tail of length >= 2, since
    one trailing value attests nothing; returns None when the p-ranks are
    still moving at the end of the data."""
    if len(series) < 2:
        return None
    keys = [g.iso_key() for g in series]
    n = len(keys) - 1
    while n > 0 and keys[n - 1] == keys[-1]:
        n -= 1
    if n > len(keys) - 2:
        return None
    return n


def decomposition_counts(ell: int, q: int, n_max: int) -> list[int]:
    """Number of primes above ell in the n-th layer of the cyclotomic
    Z_q-extension of Q, for n = 0..n_max.

    The layer of degree q^n sits inside Q(zeta_{q^(n+1)}); for ell != q the
    Frobenius at ell generates the image of ell in the Z/q^n quotient of
    (Z/q^(n+1))^x, whose order is the q-part of ord(ell mod q^(n+1)); the
    prime count is q^n divided by that order.  ell = q is totally ramified.
    """
    if not isprime(ell) or not isprime(q) or q == 2:
        raise ValueError("ell must be prime and q an odd prime")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if ell == q:
        return [1] * (n_max + 1)
    out = [1]
    for n in range(1, n_max + 1):
        t = int(n_order(ell, q ** (n + 1)))
        f = 1
        while t % q == 0:
            t //= q
            f *= q
        out.append(q ** n // f)
    return out


def fit_iwasawa(e: list[int], q: int) -> tuple[int, int, int, int] | None:
    """Fit e_n = mu*q^n + lambda*n + nu exactly on a tail of the data.

    Returns (mu, lambda, nu, n0) for the smallest n0 whose tail (length
    >= 3) admits integer mu, lambda >= 0 and integer nu fitting exactly;
    None when no such tail exists.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if len(e) < 4:
        raise ValueError("need at least 4 values to fit a growth law")
    for n0 in range(0, len(e) - 2):
        pts = [(n, e[n]) for n in range(n0, n0 + 3)]
        sol = _solve_growth(pts, q)
        if sol is None:
            continue
        mu, lam, nu = sol
        if mu < 0 or lam < 0:
            continue
        if all(e[n] == mu * q ** n + lam * n + nu for n in range(n0, len(e))):
            return (mu, lam, nu, n0)
    return None


def _solve_growth(pts, q: int) -> tuple[int, int, int] | None:
    """Exact solve of mu*q^n + lambda*n + nu = e over three points."""
    rows = [[Fraction(q) ** n, Fraction(n), Fraction(1), Fraction(v)] for n, v in pts]
    # Gaussian elimination on the 3x4 system
    for col in range(3):
        piv = next((r for r in range(col, 3) if rows[r][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [v / pv for v in rows[col]]
        for r in range(3):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    vals = [rows[i][3] for i in range(3)]
    if any(v.denominator != 1 for v in vals):
        return None
    return tuple(int(v) for v in vals)


@dataclass(frozen=True)
class TowerLevelData:
    n: int
    s_f: int
    r_cl: int
    r_cls: int
    e_n: int | None = None
    sel0: CofinPGroup | None = None


@dataclass(frozen=True)
class TowerSeries:
    label: str
    q: int
    d: int
    p: int
    levels: tuple[TowerLevelData, ...]

    def to_dict(self) -> dict:
        out = {"label": self.label, "q": self.q, "d": self.d, "p": self.p, "levels": []}
        for lv in self.levels:
            rec: dict = {"n": lv.n, "s_f": lv.s_f, "r_cl": lv.r_cl, "r_cls": lv.r_cls}
            if lv.e_n is not None:
                rec["e_n"] = lv.e_n
            if lv.sel0 is not None:
                rec["sel0"] = lv.sel0.to_dict()
            out["levels"].append(rec)
        return out


@dataclass(frozen=True)
class RankGapReport:
    level: int
    bound: int
    observed: int | None
    satisfied: bool | None


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def ingest_tower(path) -> TowerSeries:
    """Load and validate a tower file.

    Distinct diagnostics: SchemaError for malformed data, MonotonicityError
    for non-increasing levels or decreasing s_f, RankConsistencyError when
    |r_cl - r_cls| exceeds 2*s_f at some level.
    """
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read tower file: {exc}") from exc
    _require(isinstance(raw, dict), "top level must be an object")
    for key in ("label", "q", "d", "p", "levels"):
        _require(key in raw, f"missing field {key!r}")
    _require(isinstance(raw["label"], str), "label must be a string")
    for key in ("q", "d", "p"):
        _require(isinstance(raw[key], int) and raw[key] >= 1, f"{key} must be a positive integer")
    _require(isprime(raw["p"]) and isprime(raw["q"]), "p and q must be prime")
    _require(raw["p"] != raw["q"], "p and q must be distinct")
    _require(isinstance(raw["levels"], list) and raw["levels"], "levels must be a nonempty list")
    p = raw["p"]
    levels = []
    for i, rec in enumerate(raw["levels"]):
        _require(isinstance(rec, dict), f"level {i} must be an object")
        for key in ("n", "s_f", "r_cl", "r_cls"):
            _require(key in rec and isinstance(rec[key], int) and rec[key] >= 0,
                     f"level {i}: {key} must be a nonnegative integer")
        e_n = rec.get("e_n")
        _require(e_n is None or (isinstance(e_n, int) and e_n >= 0),
                 f"level {i}: e_n must be a nonnegative integer")
        sel0 = None
        if "sel0" in rec and rec["sel0"] is not None:
            raw_sel = rec["sel0"]
            _require(isinstance(raw_sel, dict) and "s" in raw_sel and "T" in raw_sel,
                     f"level {i}: sel0 needs fields s and T")
            _require(isinstance(raw_sel["s"], int) and raw_sel["s"] >= 0,
                     f"level {i}: sel0.s must be a nonnegative integer")
            _require(isinstance(raw_sel["T"], list), f"level {i}: sel0.T must be a list")
            try:
                sel0 = CofinPGroup(p, raw_sel["s"], tuple(raw_sel["T"]))
            except ValueError as exc:
                raise SchemaError(f"level {i}: {exc}") from exc
        levels.append(TowerLevelData(rec["n"], rec["s_f"], rec["r_cl"], rec["r_cls"],
                                     e_n, sel0))
    for prev, cur in zip(levels, levels[1:]):
        if cur.n <= prev.n:
            raise MonotonicityError(f"levels not strictly increasing at n={cur.n}")
        if cur.s_f < prev.s_f:
            raise MonotonicityError(
                f"s_f decreases from {prev.s_f} to {cur.s_f} at level n={cur.n}; "
                f"places only split further up the tower")
    for lv in levels:
        if abs(lv.r_cl - lv.r_cls) > 2 * lv.s_f:
            raise RankConsistencyError(
                f"level n={lv.n}: |r_cl - r_cls| = {abs(lv.r_cl - lv.r_cls)} exceeds "
                f"the S-class bound 2*s_f = {2 * lv.s_f}")
    return TowerSeries(raw["label"], raw["q"], raw["d"], raw["p"], tuple(levels))


def rank_gap_reports(series: TowerSeries) -> list[RankGapReport]:
    """Per-level comparison of the fine-Selmer p-rank model against
    2d * r_p(Cl), bounded by the composite constant of this package."""
    out = []
    for lv in series.levels:
        bound = class_to_selmer_gap_bound(series.d, lv.s_f)
        if lv.sel0 is not None:
            observed = abs(lv.sel0.p_rank - 2 * series.d * lv.r_cl)
            out.append(RankGapReport(lv.n, bound, observed, observed <= bound))
        else:
            out.append(RankGapReport(lv.n, bound, None, None))
    return out


def series_stabilization(series: TowerSeries) -> int | None:
    """Stabilization level of the fine-Selmer models, when every level
    carries one."""
    models = [lv.sel0 for lv in series.levels]
    if any(m is None for m in models):
        return None
    return stabilization_detect(models)
