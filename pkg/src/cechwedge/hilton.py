"""Homotopy decompositions of finite wedges and their inverse limit.

The degree-n homotopy of a finite wedge of spheres splits as a direct
sum indexed by the Hall words whose height stays below n; the summand
of a word w of height h is the degree-n homotopy of a single
(h + 1)-sphere.  Dropping the last wedge sphere kills exactly the
summands whose word mentions the last letter and is the identity on
the rest, so the limit over all finite stages is the direct product
over the full Hall set, organized here by height classes.

For the shrinking wedge of m-spheres (constant grading m - 1) the
product collapses to the closed form

    sum over 1 <= j <= (n-1)/(m-1) of (pi_n(S^{m j - j + 1}))^N,

and the two routes (closed form versus height-class census) are kept
as separate code paths so they can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import (DirectSum, Finite, GroupExpr, Pow, ProdN, SphereSymbol,
                     ZERO, normalize, render_text)
from .hall import (COUNTABLY_INFINITE, GradingSequence, HallWord,
                   dimension_truncation, height, height_class_census)


class SupportError(ValueError):
    """Coordinates mention a word outside the decomposition."""


def sphere_group_expr(n: int, q: int, table) -> GroupExpr:
    group = table.lookup(n, q)
    return SphereSymbol(n, q) if group is None else Finite(group)


@dataclass(frozen=True)
class WedgeDecomposition:
    """Degree-n homotopy of a k-sphere wedge, summand by summand."""

    n: int
    k: int
    grading: GradingSequence
    summands: tuple[tuple[HallWord, GroupExpr], ...]
    trivial_by_connectivity: bool = False

    def words(self) -> list[HallWord]:
        return [w for w, _ in self.summands]

    def total(self) -> GroupExpr:
        return normalize(DirectSum(tuple(g for _, g in self.summands)))


def decompose_wedge(n: int, k: int, grading: GradingSequence,
                    table) -> WedgeDecomposition:
    """Split the degree-n homotopy of the k-fold wedge along Hall words.

    Degrees below the first interesting one (n <= r(1)) give the empty
    decomposition, flagged as trivial by connectivity.
    """
    if n < 2:
        raise ValueError("degree must be >= 2")
    if k < 1:
        raise ValueError("need at least one wedge sphere")
    if n <= grading.r(1):
        return WedgeDecomposition(n, k, grading, (), trivial_by_connectivity=True)
    summands = []
    for w in dimension_truncation(k, n, grading):
        q = height(w, grading) + 1
        summands.append((w, sphere_group_expr(n, q, table)))
    return WedgeDecomposition(n, k, grading, tuple(summands))


@dataclass(frozen=True)
class BondingMap:
    """Coordinate action of dropping sphere k + 1 from a (k+1)-wedge."""

    n: int
    k: int
    grading: GradingSequence
    kept: tuple[HallWord, ...]
    killed: tuple[HallWord, ...]

    def domain(self) -> frozenset[HallWord]:
        return frozenset(self.kept) | frozenset(self.killed)


def bonding(n: int, k: int, grading: GradingSequence) -> BondingMap:
    """The map from the (k+1)-stage to the k-stage in degree n: identity
    on words avoiding the new letter, zero on words using it."""
    if k < 1:
        raise ValueError("stages start at 1")
    kept, killed = [], []
    for w in dimension_truncation(k + 1, n, grading):
        (kept if w.max_letter <= k else killed).append(w)
    return BondingMap(n, k, grading, tuple(kept), tuple(killed))


def apply_bonding(b: BondingMap, coords: dict) -> dict:
    """Push level-(k+1) coordinates down to level k."""
    domain = b.domain()
    for w in coords:
        if w not in domain:
            raise SupportError("word %s is not a degree-%d summand at stage %d"
                               % (w, b.n, b.k + 1))
    killed = frozenset(b.killed)
    return {w: f for w, f in coords.items() if w not in killed}


def cech_decompose(n: int, grading: GradingSequence, table) -> GroupExpr:
    """Limit decomposition over all finite stages, via the height-class
    census: each finite height class contributes a finite power, each
    countable class a countable product."""
    if n < 2:
        raise ValueError("degree must be >= 2")
    parts: list[GroupExpr] = []
    census = height_class_census(n, grading)
    for h in sorted(census):
        expr = sphere_group_expr(n, h + 1, table)
        count = census[h]
        if count is COUNTABLY_INFINITE:
            parts.append(ProdN(expr))
        elif count:
            parts.append(Pow(expr, count))
    return normalize(DirectSum(tuple(parts)))


def earring_formula(n: int, m: int, table) -> GroupExpr:
    """Closed form for the shrinking wedge of m-spheres in degree n:
    one countable power of pi_n(S^{m j - j + 1}) per weight j with
    (m - 1) j <= n - 1.  Independent of cech_decompose by design."""
    if n < 2 or m < 2:
        raise ValueError("need n >= 2 and m >= 2")
    parts = []
    for j in range(1, (n - 1) // (m - 1) + 1):
        parts.append(ProdN(sphere_group_expr(n, (m - 1) * j + 1, table)))
    return normalize(DirectSum(tuple(parts)))


def weight_summand(n: int, m: int, j: int, table) -> GroupExpr:
    """The weight-j block of the closed form; Zero beyond the range."""
    if j < 1:
        raise ValueError("weights start at 1")
    if (m - 1) * j > n - 1:
        return ZERO
    return normalize(ProdN(sphere_group_expr(n, (m - 1) * j + 1, table)))


def relative_cech(n: int, m: int, table) -> GroupExpr:
    """Everything the product of spheres does not see: the blocks of
    weight >= 2."""
    parts = []
    j = 2
    while (m - 1) * j <= n - 1:
        parts.append(weight_summand(n, m, j, table))
        j += 1
    return normalize(DirectSum(tuple(parts)))


@dataclass(frozen=True)
class StabilizationReport:
    """Closed-form values of degree m + s across a range of m."""

    offset: int
    entries: tuple[tuple[int, GroupExpr], ...]
    stable: bool
    stable_value: GroupExpr | None
    warnings: tuple[str, ...] = field(default=())

    def render_stable_value(self) -> str:
        return render_text(self.stable_value) if self.stable_value is not None else "0"


def _has_symbol(e: GroupExpr) -> bool:
    if isinstance(e, SphereSymbol):
        return True
    if isinstance(e, DirectSum):
        return any(_has_symbol(p) for p in e.parts)
    if isinstance(e, (Pow, ProdN)):
        return _has_symbol(e.base)
    return False


def stabilization_report(s: int, m_range, table) -> StabilizationReport:
    """Compare the degree-(m+s) closed forms as m runs over m_range.

    Once m >= s + 2 only the weight-1 block survives and its group is a
    stable one, so all those entries should agree; the verdict records
    whether they do.  Unresolved table entries are reported as warnings
    rather than errors.
    """
    if s < 0:
        raise ValueError("offset must be >= 0")
    ms = sorted(set(m_range))
    if not ms or ms[0] < 2:
        raise ValueError("need sphere dimensions >= 2")
    entries = []
    warnings = []
    for m in ms:
        expr = earring_formula(m + s, m, table)
        if _has_symbol(expr):
            warnings.append("pi_%d of the %d-sphere wedge has unresolved entries"
                            % (m + s, m))
        entries.append((m, expr))
    in_range = [expr for m, expr in entries if m >= s + 2]
    stable = bool(in_range) and all(expr == in_range[0] for expr in in_range)
    stable_value = in_range[0] if stable else None
    return StabilizationReport(offset=s, entries=tuple(entries), stable=stable,
                               stable_value=stable_value, warnings=tuple(warnings))
