"""Finitely generated abelian groups, their elements, and group shapes.

Groups are stored in invariant factor form: a free rank together with
torsion orders d1 | d2 | ... | dt.  Group shapes (GroupExpr) extend the
finite groups by unresolved sphere-group symbols, finite powers,
countable direct sums (SumN), and countable direct products (ProdN);
shapes normalize to a canonical sorted form so that equality of shapes
is structural equality after normalize().

SumN and ProdN of the same group are deliberately kept distinct, and
repeated countable powers are never merged: the identity of each
summand is part of the answer.

>>> FGAbelianGroup.from_cyclic(1, [2, 12]).render()
'Z (+) Z/2 (+) Z/12'
>>> render_text(normalize(DirectSum((ProdN(Finite(CYCLIC_2)), ProdN(Finite(Z))))))
'(Z/2)^N (+) Z^N'
"""

from __future__ import annotations

import json
from dataclasses import dataclass


def _factorint(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("positive integers only")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders) -> tuple[int, ...]:
    """Collapse a list of cyclic orders into the divisibility chain."""
    primary: dict[int, list[int]] = {}
    for t in orders:
        if t < 1:
            raise ValueError("cyclic orders must be >= 1")
        for p, e in _factorint(t).items():
            primary.setdefault(p, []).append(e)
    if not primary:
        return ()
    for exps in primary.values():
        exps.sort(reverse=True)
    depth = max(len(exps) for exps in primary.values())
    chain = []
    for slot in range(depth):
        d = 1
        for p, exps in primary.items():
            if slot < len(exps):
                d *= p ** exps[slot]
        chain.append(d)
    chain.reverse()
    return tuple(chain)


@dataclass(frozen=True)
class FGAbelianGroup:
    """rank copies of Z plus cyclic groups of the invariant factors."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be >= 0")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion orders must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion must form a divisibility chain")

    @classmethod
    def zero(cls) -> "FGAbelianGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, t: int) -> "FGAbelianGroup":
        return cls(0, (t,))

    @classmethod
    def from_cyclic(cls, rank: int, orders) -> "FGAbelianGroup":
        return cls(rank, invariant_factors(orders))

    def direct_sum(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup.from_cyclic(self.rank + other.rank,
                                          self.torsion + other.torsion)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def tokens(self) -> list[tuple[str, int]]:
        """Base-string / multiplicity pairs, e.g. [("Z", 2), ("Z/2", 1)]."""
        out: list[tuple[str, int]] = []
        if self.rank:
            out.append(("Z", self.rank))
        i = 0
        while i < len(self.torsion):
            j = i
            while j < len(self.torsion) and self.torsion[j] == self.torsion[i]:
                j += 1
            out.append(("Z/%d" % self.torsion[i], j - i))
            i = j
        return out

    def render(self, joiner: str = " (+) ") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for base, mult in self.tokens():
            if mult == 1:
                parts.append(base)
            elif "/" in base:
                parts.append("(%s)^%d" % (base, mult))
            else:
                parts.append("%s^%d" % (base, mult))
        return joiner.join(parts)

    def __str__(self):
        return self.render()


Z = FGAbelianGroup.free(1)
CYCLIC_2 = FGAbelianGroup.cyclic(2)


class AmbientMismatchError(ValueError):
    """Two elements of different ambient groups were combined."""


class GroupElement:
    """An element of a fixed FGAbelianGroup.

    Coordinates are integers: one per free generator, then one residue
    per invariant factor (stored reduced mod the factor).
    """

    __slots__ = ("group", "free", "torsion")

    def __init__(self, group: FGAbelianGroup, free=(), torsion=()):
        free = tuple(int(c) for c in free)
        torsion = tuple(int(c) for c in torsion)
        if len(free) != group.rank or len(torsion) != len(group.torsion):
            raise ValueError("coordinate shape does not match the group")
        self.group = group
        self.free = free
        self.torsion = tuple(c % d for c, d in zip(torsion, group.torsion))

    @classmethod
    def from_coordinates(cls, group: FGAbelianGroup, coords) -> "GroupElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != group.rank + len(group.torsion):
            raise ValueError(
                "%s needs %d coordinates, got %d"
                % (group, group.rank + len(group.torsion), len(coords)))
        return cls(group, coords[:group.rank], coords[group.rank:])

    @classmethod
    def zero(cls, group: FGAbelianGroup) -> "GroupElement":
        return cls(group, (0,) * group.rank, (0,) * len(group.torsion))

    def coordinates(self) -> tuple[int, ...]:
        return self.free + self.torsion

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def _check(self, other):
        if not isinstance(other, GroupElement):
            raise TypeError("cannot combine GroupElement with %r" % (other,))
        if other.group != self.group:
            raise AmbientMismatchError(
                "elements of %s and %s" % (self.group, other.group))

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.group,
                            tuple(a + b for a, b in zip(self.free, other.free)),
                            tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c: int) -> "GroupElement":
        return GroupElement(self.group,
                            tuple(c * a for a in self.free),
                            tuple(c * a for a in self.torsion))

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (self.group == other.group and self.free == other.free
                and self.torsion == other.torsion)

    def __hash__(self):
        return hash((self.group, self.free, self.torsion))

    def __repr__(self):
        return "<%s in %s>" % (",".join(str(c) for c in self.coordinates()) or "0",
                               self.group)


def integer_element(c: int) -> GroupElement:
    """The integer c as an element of Z."""
    return GroupElement(Z, (c,), ())


# ---------------------------------------------------------------------------
# Group shapes


class GroupExpr:
    """Base class for group shapes; subclasses are frozen dataclasses."""

    __slots__ = ()


@dataclass(frozen=True)
class Zero(GroupExpr):
    pass


@dataclass(frozen=True)
class Finite(GroupExpr):
    group: FGAbelianGroup


@dataclass(frozen=True)
class SphereSymbol(GroupExpr):
    """Unresolved symbol for the degree-n homotopy group of a q-sphere."""

    n: int
    q: int


@dataclass(frozen=True)
class DirectSum(GroupExpr):
    parts: tuple[GroupExpr, ...]


@dataclass(frozen=True)
class Pow(GroupExpr):
    base: GroupExpr
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("finite powers need exponent >= 1")


@dataclass(frozen=True)
class SumN(GroupExpr):
    """Countable direct sum of copies of the base shape."""

    base: GroupExpr


@dataclass(frozen=True)
class ProdN(GroupExpr):
    """Countable direct product of copies of the base shape."""

    base: GroupExpr


ZERO = Zero()


def _sort_key(e: GroupExpr):
    if isinstance(e, Zero):
        return (0,)
    if isinstance(e, Finite):
        return (1, e.group.rank, e.group.torsion)
    if isinstance(e, SphereSymbol):
        return (2, e.n, e.q)
    if isinstance(e, DirectSum):
        return (3, tuple(_sort_key(p) for p in e.parts))
    if isinstance(e, Pow):
        return (4, _sort_key(e.base), e.exponent)
    if isinstance(e, SumN):
        return (5, _sort_key(e.base))
    if isinstance(e, ProdN):
        return (6, _sort_key(e.base))
    raise TypeError("not a group shape: %r" % (e,))


def normalize(e: GroupExpr) -> GroupExpr:
    """Canonical form: flatten sums, drop zeros, collapse Pow(x, 1),
    sort direct summands by a fixed structural key."""
    if isinstance(e, Zero):
        return ZERO
    if isinstance(e, Finite):
        return ZERO if e.group.is_zero() else e
    if isinstance(e, SphereSymbol):
        return e
    if isinstance(e, Pow):
        base = normalize(e.base)
        if isinstance(base, Zero):
            return ZERO
        if e.exponent == 1:
            return base
        return Pow(base, e.exponent)
    if isinstance(e, SumN):
        base = normalize(e.base)
        return ZERO if isinstance(base, Zero) else SumN(base)
    if isinstance(e, ProdN):
        base = normalize(e.base)
        return ZERO if isinstance(base, Zero) else ProdN(base)
    if isinstance(e, DirectSum):
        flat: list[GroupExpr] = []
        for part in e.parts:
            p = normalize(part)
            if isinstance(p, Zero):
                continue
            if isinstance(p, DirectSum):
                flat.extend(p.parts)
            else:
                flat.append(p)
        if not flat:
            return ZERO
        if len(flat) == 1:
            return flat[0]
        flat.sort(key=_sort_key)
        return DirectSum(tuple(flat))
    raise TypeError("not a group shape: %r" % (e,))


def resolve(e: GroupExpr, table) -> GroupExpr:
    """Replace every SphereSymbol the table knows by its group.

    `table` only needs a lookup(n, q) method returning FGAbelianGroup
    or None.  Unknown symbols survive unchanged.
    """
    if isinstance(e, SphereSymbol):
        known = table.lookup(e.n, e.q)
        return e if known is None else Finite(known)
    if isinstance(e, DirectSum):
        return DirectSum(tuple(resolve(p, table) for p in e.parts))
    if isinstance(e, Pow):
        return Pow(resolve(e.base, table), e.exponent)
    if isinstance(e, SumN):
        return SumN(resolve(e.base, table))
    if isinstance(e, ProdN):
        return ProdN(resolve(e.base, table))
    return e


def distribute_product_over_sum(e: GroupExpr) -> GroupExpr:
    """Rewrite ProdN(A (+) B (+) ...) as ProdN(A) (+) ProdN(B) (+) ...

    A countable product of a finite direct sum regroups coordinatewise;
    this is the only product/sum interchange the engine performs.
    """
    if isinstance(e, ProdN) and isinstance(e.base, DirectSum):
        return normalize(DirectSum(tuple(ProdN(p) for p in e.base.parts)))
    return normalize(e)


def _atom_text(e: GroupExpr) -> str | None:
    """Rendering of shapes that may take a ^ exponent directly."""
    if isinstance(e, Finite):
        return e.group.render()
    if isinstance(e, SphereSymbol):
        return "pi_%d(S^%d)" % (e.n, e.q)
    return None


def _powered(base_text: str, suffix: str) -> str:
    if any(ch in base_text for ch in " /^"):
        return "(%s)%s" % (base_text, suffix)
    return base_text + suffix


def render_text(e: GroupExpr) -> str:
    if isinstance(e, Zero):
        return "0"
    atom = _atom_text(e)
    if atom is not None:
        return atom
    if isinstance(e, DirectSum):
        return " (+) ".join(render_text(p) for p in e.parts)
    if isinstance(e, Pow):
        inner = _atom_text(e.base)
        if inner is None:
            return "(%s)^%d" % (render_text(e.base), e.exponent)
        return _powered(inner, "^%d" % e.exponent)
    if isinstance(e, ProdN):
        inner = _atom_text(e.base)
        if inner is not None:
            return _powered(inner, "^N")
        if isinstance(e.base, DirectSum):
            return "PROD_N (%s)" % render_text(e.base)
        return "PROD_N %s" % render_text(e.base)
    if isinstance(e, SumN):
        if isinstance(e.base, DirectSum):
            return "SUM_N (%s)" % render_text(e.base)
        return "SUM_N %s" % render_text(e.base)
    raise TypeError("not a group shape: %r" % (e,))


_KINDS = {"zero": Zero, "finite": Finite, "sphere": SphereSymbol,
          "direct_sum": DirectSum, "pow": Pow, "sum_n": SumN, "prod_n": ProdN}


def to_machine(e: GroupExpr) -> dict:
    if isinstance(e, Zero):
        return {"kind": "zero"}
    if isinstance(e, Finite):
        return {"kind": "finite", "rank": e.group.rank,
                "torsion": list(e.group.torsion)}
    if isinstance(e, SphereSymbol):
        return {"kind": "sphere", "n": e.n, "q": e.q}
    if isinstance(e, DirectSum):
        return {"kind": "direct_sum",
                "children": [to_machine(p) for p in e.parts]}
    if isinstance(e, Pow):
        return {"kind": "pow", "exponent": e.exponent,
                "children": [to_machine(e.base)]}
    if isinstance(e, SumN):
        return {"kind": "sum_n", "children": [to_machine(e.base)]}
    if isinstance(e, ProdN):
        return {"kind": "prod_n", "children": [to_machine(e.base)]}
    raise TypeError("not a group shape: %r" % (e,))


def from_machine(doc: dict) -> GroupExpr:
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise ValueError("unknown shape kind %r" % (kind,))
    if kind == "zero":
        return ZERO
    if kind == "finite":
        return Finite(FGAbelianGroup(doc["rank"], tuple(doc["torsion"])))
    if kind == "sphere":
        return SphereSymbol(doc["n"], doc["q"])
    children = [from_machine(c) for c in doc.get("children", [])]
    if kind == "direct_sum":
        return DirectSum(tuple(children))
    if kind == "pow":
        return Pow(children[0], doc["exponent"])
    if kind == "sum_n":
        return SumN(children[0])
    return ProdN(children[0])


def render_machine(e: GroupExpr) -> str:
    return json.dumps(to_machine(e), sort_keys=True)


def parse_machine(text: str) -> GroupExpr:
    return from_machine(json.loads(text))
