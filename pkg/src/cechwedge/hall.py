"""Coherently nested Hall sets on a growing alphabet.

A Hall word over the letters a1, a2, ... is a nested formal bracket.
Every letter is a Hall word of weight 1, and a bracket w = [x, y] is a
Hall word of weight L(x) + L(y) when

  1. x and y are Hall words,
  2. x < y in the canonical order, and
  3. if y = [a, b] then a <= x.

The canonical order puts lighter words first and orders each weight
stratum by (maximal letter index, key of left factor, key of right
factor), recursively.  Because the maximal letter is the leading
component inside a stratum, the Hall words on k letters form an initial
segment of the Hall words on k + 1 letters and every word in the
difference mentions the new letter: the sets are coherently nested.

Each word also carries a height once a grading r1 <= r2 <= ... is
fixed: h(w) = sum over letter occurrences i of r_i.  The grading is
given as a finite prefix plus an eventually constant tail.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass

DEFAULT_STRATUM_CAP = 10**6


class StratumSizeError(RuntimeError):
    """A requested weight stratum would exceed the configured cap."""


class HallWord:
    """Immutable binary bracket tree over positive letter indices.

    Words compare by the canonical order described in the module
    docstring; equality and hashing are structural.
    """

    __slots__ = ("_letter", "_left", "_right", "_length", "_min_letter",
                 "_max_letter", "_key", "_hash")

    def __init__(self, letter_index=None, left=None, right=None):
        if letter_index is not None:
            if left is not None or right is not None:
                raise ValueError("a letter word has no factors")
            if letter_index < 1:
                raise ValueError("letter indices start at 1")
            self._letter = letter_index
            self._left = None
            self._right = None
            self._length = 1
            self._min_letter = letter_index
            self._max_letter = letter_index
            self._key = (1, letter_index)
        else:
            if left is None or right is None:
                raise ValueError("a bracket needs two factors")
            self._letter = None
            self._left = left
            self._right = right
            self._length = left._length + right._length
            self._min_letter = min(left._min_letter, right._min_letter)
            self._max_letter = max(left._max_letter, right._max_letter)
            self._key = (self._length, self._max_letter, left._key, right._key)
        self._hash = hash(self._key)

    @property
    def is_letter(self):
        return self._letter is not None

    @property
    def letter_index(self):
        if self._letter is None:
            raise ValueError("%s is not a single letter" % self)
        return self._letter

    @property
    def left(self):
        return self._left

    @property
    def right(self):
        return self._right

    @property
    def length(self):
        """Weight: the number of letter occurrences."""
        return self._length

    @property
    def min_letter(self):
        return self._min_letter

    @property
    def max_letter(self):
        return self._max_letter

    @property
    def key(self):
        return self._key

    def iter_letters(self):
        """Yield letter indices with multiplicity, left to right."""
        if self._letter is not None:
            yield self._letter
        else:
            yield from self._left.iter_letters()
            yield from self._right.iter_letters()

    def multiplicity(self, i):
        return sum(1 for c in self.iter_letters() if c == i)

    def multiplicities(self):
        return Counter(self.iter_letters())

    def __eq__(self, other):
        if not isinstance(other, HallWord):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __gt__(self, other):
        return self._key > other._key

    def __ge__(self, other):
        return self._key >= other._key

    def __str__(self):
        if self._letter is not None:
            return "a%d" % self._letter
        return "[%s,%s]" % (self._left, self._right)

    __repr__ = __str__


@functools.lru_cache(maxsize=None)
def letter(i: int) -> HallWord:
    return HallWord(letter_index=i)


def bracket(x: HallWord, y: HallWord) -> HallWord:
    """Free bracket constructor; does not check the Hall conditions."""
    return HallWord(left=x, right=y)


def is_hall(w: HallWord, k: int) -> bool:
    """Whether w is a Hall word on the first k letters."""
    if w.max_letter > k:
        return False
    return _hall_conditions(w)


def _hall_conditions(w: HallWord) -> bool:
    if w.is_letter:
        return True
    x, y = w.left, w.right
    if not (_hall_conditions(x) and _hall_conditions(y)):
        return False
    if not x < y:
        return False
    if not y.is_letter and not y.left <= x:
        return False
    return True


@dataclass(frozen=True)
class HallSet:
    """Hall words on `letters` letters up to weight `max_weight`.

    Strata are stored in canonical order, so iteration is the canonical
    order and the set for k letters is a stratum-wise prefix of the set
    for k + 1 letters.
    """

    letters: int
    max_weight: int
    strata: tuple[tuple[HallWord, ...], ...]

    def stratum(self, j: int) -> tuple[HallWord, ...]:
        if not 1 <= j <= self.max_weight:
            raise ValueError("no stratum of weight %d" % j)
        return self.strata[j - 1]

    def __iter__(self):
        return itertools.chain.from_iterable(self.strata)

    def __len__(self):
        return sum(len(s) for s in self.strata)


@functools.lru_cache(maxsize=256)
def generate(k: int, max_weight: int,
             max_stratum_size: int = DEFAULT_STRATUM_CAP) -> HallSet:
    """Generate the Hall words on k letters up to the given weight.

    Letters are introduced one at a time; the words whose maximal
    letter is the new one are generated, sorted, and appended after the
    existing stratum contents.  This realizes the nesting property by
    construction.
    """
    if k < 1:
        raise ValueError("need at least one letter")
    if max_weight < 1:
        raise ValueError("need at least weight 1")
    for j in range(1, max_weight + 1):
        predicted = necklace_count(k, j)
        if predicted > max_stratum_size:
            raise StratumSizeError(
                "stratum %d on %d letters holds %d words, cap is %d"
                % (j, k, predicted, max_stratum_size))
    strata: list[list[HallWord]] = [[] for _ in range(max_weight + 1)]
    for c in range(1, k + 1):
        strata[1].append(letter(c))
        for m in range(2, max_weight + 1):
            fresh = []
            for i in range(1, m):
                for x in strata[i]:
                    for y in strata[m - i]:
                        if max(x.max_letter, y.max_letter) != c:
                            continue
                        if not x < y:
                            continue
                        if not y.is_letter and not y.left <= x:
                            continue
                        fresh.append(bracket(x, y))
            fresh.sort(key=lambda w: w.key)
            strata[m].extend(fresh)
    return HallSet(letters=k, max_weight=max_weight,
                   strata=tuple(tuple(s) for s in strata[1:]))


def _mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs a positive integer")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        else:
            p += 1
    if n > 1:
        result = -result
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def necklace_count(k: int, j: int) -> int:
    """Number of Hall words of weight j on k letters.

    Computed as (1/j) * sum over d | j of mobius(d) * k**(j//d).
    """
    if k < 1 or j < 1:
        raise ValueError("necklace_count needs k >= 1 and j >= 1")
    total = sum(_mobius(d) * k ** (j // d) for d in _divisors(j))
    assert total % j == 0
    return total // j


@dataclass(frozen=True)
class GradingSequence:
    """Monotone sequence r1 <= r2 <= ... with an eventually constant tail.

    r(i) is prefix[i-1] for i <= len(prefix) and tail beyond.  The word
    a_i contributes r(i) to the height of every word containing it.
    """

    prefix: tuple[int, ...] = ()
    tail: int = 1

    def __post_init__(self):
        if self.tail < 1 or any(p < 1 for p in self.prefix):
            raise ValueError("grading entries must be >= 1")
        seq = self.prefix + (self.tail,)
        if any(a > b for a, b in zip(seq, seq[1:])):
            raise ValueError("grading must be monotone nondecreasing")

    @classmethod
    def constant(cls, r: int) -> "GradingSequence":
        return cls(prefix=(), tail=r)

    @classmethod
    def for_wedge_of_fixed_dimension(cls, m: int) -> "GradingSequence":
        """Grading of the shrinking wedge of m-spheres: r = m - 1."""
        if m < 2:
            raise ValueError("sphere dimension must be >= 2")
        return cls.constant(m - 1)

    @classmethod
    def parse(cls, text: str) -> "GradingSequence":
        """Parse "p1,...,pk;t" or a bare constant "t"."""
        text = text.strip()
        if ";" in text:
            head, _, tail_text = text.partition(";")
            prefix = tuple(int(p) for p in head.split(",")) if head else ()
        else:
            prefix, tail_text = (), text
        try:
            tail = int(tail_text)
        except ValueError:
            raise ValueError("bad grading spec %r" % text) from None
        return cls(prefix=prefix, tail=tail)

    def spec_string(self) -> str:
        if not self.prefix:
            return str(self.tail)
        return "%s;%d" % (",".join(str(p) for p in self.prefix), self.tail)

    def r(self, i: int) -> int:
        if i < 1:
            raise ValueError("letter indices start at 1")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.tail

    def sphere_dimension(self, i: int) -> int:
        """Dimension of the i-th wedge sphere: r(i) + 1."""
        return self.r(i) + 1


def height(w: HallWord, grading: GradingSequence) -> int:
    """h(w) = sum of r(i) over the letter occurrences of w."""
    return sum(grading.r(i) for i in w.iter_letters())


@functools.lru_cache(maxsize=4096)
def dimension_truncation(k: int, n: int,
                         grading: GradingSequence) -> tuple[HallWord, ...]:
    """Hall words on k letters with height + 1 <= n, canonical order.

    These index the summands of the degree-n homotopy of a finite
    wedge, so n must be at least 2.  The result is always finite
    because every letter has grading value >= 1.
    """
    if n < 2:
        raise ValueError("degree must be >= 2")
    max_w = (n - 1) // grading.r(1)
    if max_w < 1:
        return ()
    words = generate(k, max_w)
    return tuple(w for w in words if height(w, grading) + 1 <= n)


def min_letter_partition(i: int, j: int, k: int) -> list[HallWord]:
    """Hall words of weight j on k letters whose least letter is a_i."""
    if j < 2:
        raise ValueError("partition by least letter needs weight >= 2")
    return [w for w in generate(k, j).stratum(j) if w.min_letter == i]


class _CountablyInfinite:
    """Marker cardinality for countably infinite height classes."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "N"


COUNTABLY_INFINITE = _CountablyInfinite()


def height_class_census(n: int, grading: GradingSequence, letters=None):
    """Cardinality of each height class of Hall words below degree n.

    Returns a map from h in [r(1), n - 1] to the number of Hall words
    of height h, on the full infinite alphabet when letters is None and
    on the first `letters` letters otherwise.  Infinite classes map to
    COUNTABLY_INFINITE.

    A class is infinite exactly when some multiset of letters of total
    grading h uses at least one letter from the constant tail: the tail
    letter can then be varied over the infinitely many letters beyond
    the prefix, and every multiset that is not a single repeated letter
    supports at least one Hall word.
    """
    if n < 2:
        raise ValueError("degree must be >= 2")
    lo = grading.r(1)
    domain = range(lo, n)
    if letters is not None:
        tally = Counter(height(w, grading)
                        for w in dimension_truncation(letters, n, grading))
        return {h: tally.get(h, 0) for h in domain}
    if lo > n - 1:
        return {}
    p = len(grading.prefix)
    census = {}
    if grading.tail <= n - 1:
        values = set(grading.prefix) | {grading.tail}
        reachable = [False] * n
        reachable[0] = True
        for v in values:
            for s in range(v, n):
                if reachable[s - v]:
                    reachable[s] = True
        finite_tally = Counter()
        if p >= 1:
            finite_tally = Counter(height(w, grading)
                                   for w in dimension_truncation(p, n, grading))
        for h in domain:
            if h >= grading.tail and reachable[h - grading.tail]:
                census[h] = COUNTABLY_INFINITE
            else:
                census[h] = finite_tally.get(h, 0)
    else:
        # Only the prefix letters with r(i) <= n - 1 can appear at all.
        usable = sum(1 for i in range(1, p + 1) if grading.r(i) <= n - 1)
        tally = Counter()
        if usable >= 1:
            tally = Counter(height(w, grading)
                            for w in dimension_truncation(usable, n, grading))
        for h in domain:
            census[h] = tally.get(h, 0)
    return census
