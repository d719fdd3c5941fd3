"""Coherent families of Hilton coordinates across all finite stages.

An element of the limit group is a compatible choice of coordinates at
every finite wedge stage.  Three finitary descriptions are supported,
each coherent by construction:

  * FiniteSupport: finitely many words carry a fixed coordinate;
  * Weight2Family: every pair i < j carries eps_{i,j} times the
    degree-one class on the weight-2 word [a_i, a_j] (an upper
    triangular matrix realized by one infinite bracket sum);
  * MinLetterFamilies: finitely many coordinates per least letter on
    words of weight >= 2 (the input tuples of the composition sum).

Levels are plain Hilton coordinates, so the bonding maps of the tower
act on them; check_coherence replays those maps against the stream.
All sphere groups a description mentions must resolve in the given
table when the element is built, so levels never need the table again.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .groups import (DirectSum, GroupElement, GroupExpr, ProdN, SumN, ZERO,
                     distribute_product_over_sum, integer_element, normalize)
from .hall import (GradingSequence, HallWord, _hall_conditions, bracket,
                   dimension_truncation, height, letter)
from .hilton import apply_bonding, bonding, sphere_group_expr
from .whitehead import (CompositionInfiniteSum, EpsilonOracle, SparseEpsilon,
                        UnresolvedGroupError, Weight2InfiniteSum, parse_word,
                        project_level)


class IncompatibleOracleError(ValueError):
    """No supported representation for the requested sum of streams."""


class ElementFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


@dataclass(frozen=True)
class FiniteSupport:
    entries: tuple[tuple[HallWord, GroupElement], ...] = ()


@dataclass(frozen=True)
class Weight2Family:
    eps: EpsilonOracle


@dataclass(frozen=True)
class MinLetterFamilies:
    families: tuple[tuple[int, tuple[tuple[HallWord, GroupElement], ...]], ...] = ()


@dataclass(frozen=True)
class CompositeSupport:
    """Internal: a finite correction on top of an infinite family."""

    finite: FiniteSupport
    infinite: Weight2Family | MinLetterFamilies


@dataclass
class LevelCoordinates:
    level: int
    coords: dict[HallWord, GroupElement]


@dataclass(frozen=True)
class CoherentElement:
    n: int
    m: int
    oracle: FiniteSupport | Weight2Family | MinLetterFamilies | CompositeSupport

    def __post_init__(self):
        if self.n < 2 or self.m < 2:
            raise ValueError("need n >= 2 and m >= 2")

    def grading(self) -> GradingSequence:
        return GradingSequence.constant(self.m - 1)

    def level(self, k: int) -> LevelCoordinates:
        if k < 1:
            raise ValueError("levels start at 1")
        return LevelCoordinates(k, _oracle_level(self.oracle, self.m, k))

    def __add__(self, other: "CoherentElement") -> "CoherentElement":
        if not isinstance(other, CoherentElement):
            return NotImplemented
        if (other.n, other.m) != (self.n, self.m):
            raise ValueError("cannot add elements of different (n, m)")
        return CoherentElement(self.n, self.m,
                               _add_oracles(self.oracle, other.oracle))

    def __neg__(self) -> "CoherentElement":
        return CoherentElement(self.n, self.m, _negate_oracle(self.oracle))

    def __sub__(self, other: "CoherentElement") -> "CoherentElement":
        return self + (-other)


def _oracle_level(oracle, m: int, k: int) -> dict[HallWord, GroupElement]:
    if isinstance(oracle, FiniteSupport):
        return {w: f for w, f in oracle.entries if w.max_letter <= k}
    if isinstance(oracle, Weight2Family):
        out = {}
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                c = oracle.eps.value(i, j)
                if c:
                    out[bracket(letter(i), letter(j))] = integer_element(c)
        return out
    if isinstance(oracle, MinLetterFamilies):
        out = {}
        for _, row in oracle.families:
            for w, f in row:
                if w.max_letter <= k:
                    out[w] = f
        return out
    if isinstance(oracle, CompositeSupport):
        out = _oracle_level(oracle.infinite, m, k)
        for w, f in _oracle_level(oracle.finite, m, k).items():
            out[w] = (out[w] + f) if w in out else f
        return {w: f for w, f in out.items() if not f.is_zero()}
    raise TypeError("not an element oracle: %r" % (oracle,))


def _merge_finite(a: FiniteSupport, b: FiniteSupport) -> FiniteSupport:
    acc = dict(a.entries)
    for w, f in b.entries:
        acc[w] = (acc[w] + f) if w in acc else f
    return FiniteSupport(tuple(sorted(((w, f) for w, f in acc.items()
                                       if not f.is_zero()),
                                      key=lambda wf: wf[0].key)))


def _merge_families(a: MinLetterFamilies, b: MinLetterFamilies) -> MinLetterFamilies:
    acc: dict[int, dict[HallWord, GroupElement]] = {}
    for fam in (a, b):
        for i, row in fam.families:
            tgt = acc.setdefault(i, {})
            for w, f in row:
                tgt[w] = (tgt[w] + f) if w in tgt else f
    rows = []
    for i in sorted(acc):
        row = tuple(sorted(((w, f) for w, f in acc[i].items() if not f.is_zero()),
                           key=lambda wf: wf[0].key))
        if row:
            rows.append((i, row))
    return MinLetterFamilies(tuple(rows))


def _split(oracle):
    if isinstance(oracle, CompositeSupport):
        return oracle.finite, oracle.infinite
    if isinstance(oracle, FiniteSupport):
        return oracle, None
    return FiniteSupport(), oracle


def _rebuild(finite: FiniteSupport, infinite):
    if infinite is None:
        return finite
    if not finite.entries:
        return infinite
    return CompositeSupport(finite, infinite)


def _add_oracles(a, b):
    fa, ia = _split(a)
    fb, ib = _split(b)
    finite = _merge_finite(fa, fb)
    if ia is None:
        infinite = ib
    elif ib is None:
        infinite = ia
    elif isinstance(ia, Weight2Family) and isinstance(ib, Weight2Family):
        infinite = Weight2Family(ia.eps + ib.eps)
    elif isinstance(ia, MinLetterFamilies) and isinstance(ib, MinLetterFamilies):
        infinite = _merge_families(ia, ib)
    else:
        raise IncompatibleOracleError(
            "cannot add a weight-2 family to a least-letter family")
    return _rebuild(finite, infinite)


def _negate_oracle(oracle):
    if isinstance(oracle, FiniteSupport):
        return FiniteSupport(tuple((w, -f) for w, f in oracle.entries))
    if isinstance(oracle, Weight2Family):
        return Weight2Family(oracle.eps.scale(-1))
    if isinstance(oracle, MinLetterFamilies):
        return MinLetterFamilies(tuple((i, tuple((w, -f) for w, f in row))
                                       for i, row in oracle.families))
    return CompositeSupport(_negate_oracle(oracle.finite),
                            _negate_oracle(oracle.infinite))


# ---------------------------------------------------------------------------
# Constructors


def _as_element(group, val) -> GroupElement:
    if isinstance(val, GroupElement):
        if val.group != group:
            raise ValueError("element of %s given where %s was needed"
                             % (val.group, group))
        return val
    if isinstance(val, int):
        val = (val,)
    return GroupElement.from_coordinates(group, val)


def _resolve_group(n: int, q: int, table, what: str):
    group = table.lookup(n, q)
    if group is None:
        raise UnresolvedGroupError("%s needs pi_%d(S^%d), which the table "
                                   "does not resolve" % (what, n, q))
    return group


def zero_element(n: int, m: int) -> CoherentElement:
    return CoherentElement(n, m, FiniteSupport())


def finite_support_element(n: int, m: int, entries, table) -> CoherentElement:
    """Element supported on finitely many Hall words.

    Entries are (word, value) pairs; words parse from text, values may
    be GroupElements or raw coordinate tuples in the resolved group.
    Words whose sphere group is trivial only admit the zero value.
    """
    grading = GradingSequence.constant(m - 1)
    acc: dict[HallWord, GroupElement] = {}
    for w, val in entries:
        if isinstance(w, str):
            w = parse_word(w)
        if not _hall_conditions(w):
            raise ValueError("support word %s is not a Hall word" % w)
        q = height(w, grading) + 1
        group = _resolve_group(n, q, table, "support word %s" % w)
        f = _as_element(group, val)
        if f.is_zero():
            continue
        acc[w] = (acc[w] + f) if w in acc else f
    cleaned = tuple(sorted(((w, f) for w, f in acc.items() if not f.is_zero()),
                           key=lambda wf: wf[0].key))
    return CoherentElement(n, m, FiniteSupport(cleaned))


def weight_two_element(m: int, eps, n: int | None = None) -> CoherentElement:
    """Element carrying eps_{i,j} times the generator on each [a_i, a_j].

    Lives in degree n = 2m - 1, where the weight-2 sphere groups are
    infinite cyclic by the diagonal rule; no table is needed.
    """
    if isinstance(eps, dict):
        eps = SparseEpsilon.from_dict(eps)
    if not isinstance(eps, EpsilonOracle):
        raise TypeError("eps must be an EpsilonOracle or a dict")
    expected = 2 * m - 1
    if n is None:
        n = expected
    if n != expected:
        raise ValueError("weight-2 families live in degree 2m - 1 = %d, not %d"
                         % (expected, n))
    return CoherentElement(n, m, Weight2Family(eps))


def min_letter_element(n: int, m: int, families, table) -> CoherentElement:
    """Element given by finitely many coordinates per least letter.

    `families` maps a letter index i to (word, value) pairs where each
    word has weight >= 2 and least letter i.
    """
    grading = GradingSequence.constant(m - 1)
    rows = []
    for i in sorted(families):
        acc: dict[HallWord, GroupElement] = {}
        for w, val in families[i]:
            if isinstance(w, str):
                w = parse_word(w)
            if not _hall_conditions(w):
                raise ValueError("word %s is not a Hall word" % w)
            if w.length < 2:
                raise ValueError("least-letter families need weight >= 2, got %s" % w)
            if w.min_letter != i:
                raise ValueError("word %s has least letter a%d, filed under a%d"
                                 % (w, w.min_letter, i))
            q = height(w, grading) + 1
            group = _resolve_group(n, q, table, "word %s" % w)
            f = _as_element(group, val)
            if f.is_zero():
                continue
            acc[w] = (acc[w] + f) if w in acc else f
        row = tuple(sorted(((w, f) for w, f in acc.items() if not f.is_zero()),
                           key=lambda wf: wf[0].key))
        if row:
            rows.append((i, row))
    return CoherentElement(n, m, MinLetterFamilies(tuple(rows)))


def weight_one_element(n: int, m: int, coords, table) -> CoherentElement:
    """Right inverse of the product projection: the element whose only
    coordinates are the given weight-1 ones, realized by one infinite
    sum.  coords maps letter index to a value of pi_n(S^m)."""
    return finite_support_element(
        n, m, [(letter(i), val) for i, val in sorted(coords.items())], table)


def weight_one_coordinates(e) -> dict[int, GroupElement]:
    """Per-letter projection to the product of spheres."""
    fs, _ = _split(e.oracle)
    return {w.letter_index: f for w, f in fs.entries if w.is_letter}


def weight_one_part_vanishes(e, kmax: int) -> bool:
    """Whether e projects to zero in the product, letters up to kmax."""
    return all(i > kmax for i in weight_one_coordinates(e))


# ---------------------------------------------------------------------------
# Coherence


@dataclass
class CoherenceReport:
    ok: bool
    checked_levels: int
    failures: tuple[tuple[int, HallWord], ...] = ()

    def __bool__(self):
        return self.ok


def check_coherence(e, kmax: int) -> CoherenceReport:
    """Replay the tower's bonding maps against the element's levels.

    For each k < kmax, pushing the level-(k+1) coordinates through the
    bonding map must reproduce the level-k coordinates exactly.  Works
    for any object with fields n, m and a level(k) method, so raw
    (possibly corrupted) coordinate streams can be checked too.
    """
    if kmax < 1:
        raise ValueError("need kmax >= 1")
    grading = GradingSequence.constant(e.m - 1)
    failures = []
    for k in range(1, kmax):
        pushed = apply_bonding(bonding(e.n, k, grading), e.level(k + 1).coords)
        actual = e.level(k).coords
        for w in sorted(set(pushed) | set(actual), key=lambda w: w.key):
            if pushed.get(w) != actual.get(w):
                failures.append((k, w))
    return CoherenceReport(ok=not failures, checked_levels=kmax,
                           failures=tuple(failures))


@dataclass
class RawLevelStream:
    """Explicit per-level coordinates; the test double for streams that
    did not come from one of the coherent descriptions."""

    n: int
    m: int
    levels: dict[int, dict[HallWord, GroupElement]]

    def level(self, k: int) -> LevelCoordinates:
        if k not in self.levels:
            raise ValueError("no stored level %d" % k)
        return LevelCoordinates(k, dict(self.levels[k]))


def materialize_levels(e: CoherentElement, kmax: int) -> RawLevelStream:
    return RawLevelStream(e.n, e.m,
                          {k: dict(e.level(k).coords) for k in range(1, kmax + 1)})


# ---------------------------------------------------------------------------
# Realization maps and their verifiers


@dataclass
class VerificationReport:
    ok: bool
    checked_levels: int
    failures: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def weight2_realization(e, m: int | None = None) -> Weight2InfiniteSum:
    """The infinite bracket sum realizing a weight-2 family."""
    if isinstance(e, CoherentElement):
        if not isinstance(e.oracle, Weight2Family):
            raise TypeError("element is not a pure weight-2 family")
        return Weight2InfiniteSum(e.m, e.oracle.eps)
    if isinstance(e, dict):
        e = SparseEpsilon.from_dict(e)
    if m is None:
        raise ValueError("m is required when passing a bare epsilon oracle")
    return Weight2InfiniteSum(m, e)


def verify_weight2_realization(eps, m: int, kmax: int, table) -> VerificationReport:
    """Check that projecting the bracket sum reproduces the family's own
    coordinates (the double sum of eps_{i,j} [a_i, a_j]) at each level."""
    elem = weight_two_element(m, eps if not isinstance(eps, dict)
                              else SparseEpsilon.from_dict(eps))
    expr = weight2_realization(elem)
    failures = []
    for k in range(1, kmax + 1):
        got = project_level(expr, k, _DiagonalOnlyTable())
        want = elem.level(k).coords
        if got != want:
            failures.append("level %d: projection %r != coordinates %r"
                            % (k, _render_coords(got), _render_coords(want)))
    if table is not None:
        # same check against the caller's table resolution
        for k in range(1, kmax + 1):
            if project_level(expr, k, table) != elem.level(k).coords:
                failures.append("level %d: table-resolved projection differs" % k)
    return VerificationReport(ok=not failures, checked_levels=kmax,
                              failures=tuple(failures))


class _DiagonalOnlyTable:
    """Lookup that only knows the built-in rules."""

    def lookup(self, n, q):
        from .spheres import builtin_rule
        return builtin_rule(n, q)


def _render_coords(coords) -> str:
    return "{%s}" % ", ".join("%s: %s" % (w, ",".join(str(c) for c in f.coordinates()))
                              for w, f in sorted(coords.items(), key=lambda wf: wf[0].key))


def composition_realization(e: CoherentElement) -> CompositionInfiniteSum:
    """The infinite sum of word-compositions realizing a least-letter
    family."""
    if not isinstance(e.oracle, MinLetterFamilies):
        raise TypeError("element is not a pure least-letter family")
    return CompositionInfiniteSum(e.n, e.m, e.oracle.families)


def verify_composition_additivity(e1: CoherentElement, e2: CoherentElement,
                                  kmax: int, table) -> VerificationReport:
    """Check additivity of the composition realization level by level:
    the sum expression, the expression of the sum, and coordinatewise
    sums must all agree."""
    if (e1.n, e1.m) != (e2.n, e2.m):
        raise ValueError("cannot compare elements of different (n, m)")
    s = e1 + e2
    x1, x2 = composition_realization(e1), composition_realization(e2)
    xs, xsum = composition_realization(s), x1 + x2
    failures = []
    for k in range(1, kmax + 1):
        p1 = project_level(x1, k, table)
        p2 = project_level(x2, k, table)
        want = dict(p1)
        for w, f in p2.items():
            want[w] = (want[w] + f) if w in want else f
        want = {w: f for w, f in want.items() if not f.is_zero()}
        if project_level(xsum, k, table) != want:
            failures.append("level %d: added expressions disagree" % k)
        if project_level(xs, k, table) != want:
            failures.append("level %d: expression of the sum disagrees" % k)
        if s.level(k).coords != want:
            failures.append("level %d: element coordinates disagree" % k)
    return VerificationReport(ok=not failures, checked_levels=kmax,
                              failures=tuple(failures))


@dataclass
class SubgroupForms:
    """The least-letter subgroup shape, before and after regrouping."""

    per_letter: GroupExpr
    weight_split: GroupExpr
    equal: bool


def min_letter_subgroup_expr(n: int, m: int, table) -> SubgroupForms:
    """Shape of the subgroup spanned by weight >= 2 families.

    The per-letter form is a countable product (over least letters) of
    the same finite sum of countable blocks, one block per weight; the
    weight-split form groups by weight first.  They agree by the
    finite-sum/product interchange, checked structurally.
    """
    if n < 2 or m < 2:
        raise ValueError("need n >= 2 and m >= 2")
    blocks = []
    j = 2
    while (m - 1) * j <= n - 1:
        blocks.append(SumN(sphere_group_expr(n, (m - 1) * j + 1, table)))
        j += 1
    if not blocks:
        return SubgroupForms(ZERO, ZERO, True)
    per_letter = normalize(ProdN(DirectSum(tuple(blocks))))
    weight_split = normalize(DirectSum(tuple(ProdN(b) for b in blocks)))
    equal = distribute_product_over_sum(per_letter) == weight_split
    return SubgroupForms(per_letter, weight_split, equal)


# ---------------------------------------------------------------------------
# Element description files


def parse_element_file(text: str, table) -> CoherentElement:
    """Build an element from its text description.

    Grammar, one directive per line ('#' starts a comment):

        element n=<n> m=<m>
        support <word> = <c1,c2,...>
        eps <i> <j> = <c>
        gtuple <i> <word> = <c1,c2,...>

    support/eps and support/gtuple lines may be mixed; eps and gtuple
    lines may not (no supported representation for that sum).
    """
    n = m = None
    support: list[tuple[HallWord, tuple[int, ...]]] = []
    eps: dict[tuple[int, int], int] = {}
    families: dict[int, list[tuple[HallWord, tuple[int, ...]]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == "element":
                opts = dict(f.split("=", 1) for f in fields[1:])
                n, m = int(opts["n"]), int(opts["m"])
            elif fields[0] == "support":
                word_text, value_text = _split_assignment(line[len("support"):])
                support.append((parse_word(word_text), _parse_ints(value_text)))
            elif fields[0] == "eps":
                head, value_text = _split_assignment(line[len("eps"):])
                i, j = (int(t) for t in head.split())
                eps[(i, j)] = eps.get((i, j), 0) + _parse_ints(value_text)[0]
            elif fields[0] == "gtuple":
                head, value_text = _split_assignment(line[len("gtuple"):])
                ps = head.split(None, 1)
                i = int(ps[0])
                families.setdefault(i, []).append(
                    (parse_word(ps[1]), _parse_ints(value_text)))
            else:
                raise ValueError("unknown directive %r" % fields[0])
        except ElementFormatError:
            raise
        except Exception as exc:
            raise ElementFormatError(lineno, str(exc)) from None
    if n is None or m is None:
        raise ElementFormatError(0, "missing 'element n=<n> m=<m>' header")
    out = zero_element(n, m)
    if support:
        out = out + finite_support_element(n, m, support, table)
    if eps:
        out = out + weight_two_element(m, SparseEpsilon.from_dict(eps), n=n)
    if families:
        out = out + min_letter_element(n, m, families, table)
    return out


def _split_assignment(rest: str) -> tuple[str, str]:
    if "=" not in rest:
        raise ValueError("expected '=' in directive")
    head, _, value = rest.partition("=")
    return head.strip(), value.strip()


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(","))


def render_element_file(e: CoherentElement) -> str:
    """Inverse of parse_element_file for elements built here."""
    lines = ["element n=%d m=%d" % (e.n, e.m)]
    fs, inf = _split(e.oracle)
    for w, f in fs.entries:
        lines.append("support %s = %s" % (w, ",".join(str(c) for c in f.coordinates())))
    if isinstance(inf, Weight2Family):
        if not isinstance(inf.eps, SparseEpsilon):
            raise ValueError("only sparse epsilon families have a file form")
        for i, j, c in inf.eps.entries:
            lines.append("eps %d %d = %d" % (i, j, c))
    elif isinstance(inf, MinLetterFamilies):
        for i, row in inf.families:
            for w, f in row:
                lines.append("gtuple %d %s = %s"
                             % (i, w, ",".join(str(c) for c in f.coordinates())))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Seeded random fixtures (shared by the CLI and the test suite)


def random_sparse_epsilon(rng: random.Random, max_index: int = 6,
                          bound: int = 3, density: float = 0.5) -> SparseEpsilon:
    entries = {}
    for i in range(1, max_index):
        for j in range(i + 1, max_index + 1):
            if rng.random() < density:
                c = rng.randint(-bound, bound)
                if c:
                    entries[(i, j)] = c
    return SparseEpsilon.from_dict(entries)


def random_group_element(rng: random.Random, group, bound: int = 3) -> GroupElement:
    free = tuple(rng.randint(-bound, bound) for _ in range(group.rank))
    torsion = tuple(rng.randrange(d) for d in group.torsion)
    return GroupElement(group, free, torsion)


def _resolvable_words(n: int, m: int, table, max_letter: int,
                      min_weight: int = 1) -> list[HallWord]:
    grading = GradingSequence.constant(m - 1)
    out = []
    for w in dimension_truncation(max_letter, n, grading):
        if w.length < min_weight:
            continue
        group = table.lookup(n, height(w, grading) + 1)
        if group is not None and not group.is_zero():
            out.append(w)
    return out


def random_finite_support_element(rng: random.Random, n: int, m: int, table,
                                  max_letter: int = 6,
                                  max_terms: int = 3) -> CoherentElement:
    pool = _resolvable_words(n, m, table, max_letter)
    entries = []
    for w in (rng.sample(pool, min(len(pool), rng.randint(0, max_terms))) if pool else []):
        group = table.lookup(n, height(w, GradingSequence.constant(m - 1)) + 1)
        entries.append((w, random_group_element(rng, group)))
    return finite_support_element(n, m, entries, table)


def random_weight_two_element(rng: random.Random, m: int, max_index: int = 6,
                              bound: int = 3) -> CoherentElement:
    return weight_two_element(m, random_sparse_epsilon(rng, max_index, bound))


def random_min_letter_element(rng: random.Random, n: int, m: int, table,
                              max_letter: int = 4,
                              max_terms: int = 3) -> CoherentElement:
    pool = _resolvable_words(n, m, table, max_letter, min_weight=2)
    families: dict[int, list] = {}
    for w in (rng.sample(pool, min(len(pool), rng.randint(0, max_terms))) if pool else []):
        group = table.lookup(n, height(w, GradingSequence.constant(m - 1)) + 1)
        families.setdefault(w.min_letter, []).append(
            (w, random_group_element(rng, group)))
    return min_letter_element(n, m, families, table)


def random_element(rng: random.Random, n: int, m: int, table,
                   kind: str | None = None) -> CoherentElement:
    if kind is None:
        kinds = ["finite", "gtuple"]
        if n == 2 * m - 1:
            kinds.append("weight2")
        kind = rng.choice(kinds)
    if kind == "finite":
        return random_finite_support_element(rng, n, m, table)
    if kind == "weight2":
        if n != 2 * m - 1:
            raise ValueError("weight-2 families need n = 2m - 1")
        return random_weight_two_element(rng, m)
    if kind == "gtuple":
        return random_min_letter_element(rng, n, m, table)
    raise ValueError("unknown element kind %r" % kind)
