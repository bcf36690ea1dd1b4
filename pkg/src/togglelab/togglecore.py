"""Set families, their toggles and toggle-disjoint Cartesian factorizations.

A family ``L`` of subsets of a ground set ``E`` is stored with subsets as
bit masks over the ground ordering, and points of the toggle group are the
indices of ``L`` in ingestion order. The toggle for ``e`` sends the set ``X``
to ``X ^ {e}`` when that set is also a member, and fixes ``X`` otherwise.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

from . import permgroup as pg
from .errors import BlockSystemError, FactorizationError, FamilyError, NotTransitiveError
from .permgroup import BlockSystem, GroupDescription, Permutation

MAX_GROUND = 64
MAX_SETS = 2**20


@dataclass(frozen=True)
class SetFamily:
    """A duplicate-free list of subsets of an ordered ground set.

    Subsets are stored as tuples of labels sorted by ground order. Set order
    is preserved: index ``i`` is point ``i`` of the toggle group.
    """

    ground: tuple[str, ...]
    sets: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        ground = tuple(str(e) for e in self.ground)
        if len(set(ground)) != len(ground):
            dup = next(e for e in ground if ground.count(e) > 1)
            raise FamilyError(f"duplicate ground element {dup!r}")
        if len(ground) > MAX_GROUND:
            raise FamilyError(f"ground set has {len(ground)} elements; at most {MAX_GROUND} supported")
        position = {e: i for i, e in enumerate(ground)}
        canon = []
        seen = {}
        for raw in self.sets:
            members = [str(x) for x in raw]
            for x in members:
                if x not in position:
                    raise FamilyError(f"set {sorted(members)!r} contains {x!r}, which is not in the ground set")
            if len(set(members)) != len(members):
                raise FamilyError(f"set {members!r} lists an element twice")
            subset = tuple(sorted(members, key=position.__getitem__))
            if subset in seen:
                raise FamilyError(f"duplicate set {_fmt(subset)} (positions {seen[subset]} and {len(canon)})")
            seen[subset] = len(canon)
            canon.append(subset)
        if not canon:
            raise FamilyError("a family needs at least one set")
        if len(canon) > MAX_SETS:
            raise FamilyError(f"family has {len(canon)} sets; at most {MAX_SETS} supported")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "sets", tuple(canon))

    @classmethod
    def from_masks(cls, ground: Sequence[str], masks: Iterable[int]) -> SetFamily:
        ground = tuple(ground)
        return cls(ground, [tuple(e for i, e in enumerate(ground) if m >> i & 1) for m in masks])

    @property
    def n(self) -> int:
        return len(self.sets)

    @cached_property
    def position(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.ground)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        pos = self.position
        return tuple(sum(1 << pos[x] for x in s) for s in self.sets)

    @cached_property
    def index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.masks)}

    def mask_of(self, elements: Iterable[str]) -> int:
        pos = self.position
        return sum(1 << pos[x] for x in elements)

    def same_sets(self, other: SetFamily) -> bool:
        """Equality as a set of sets, ignoring ground and set order."""
        return {frozenset(s) for s in self.sets} == {frozenset(s) for s in other.sets}

    def to_dict(self) -> dict:
        return {"ground": list(self.ground), "sets": [list(s) for s in self.sets]}

    def __str__(self) -> str:
        return "{" + ", ".join(_fmt(s) for s in self.sets) + "}"


def _fmt(subset: Sequence[str]) -> str:
    return "{" + ",".join(subset) + "}" if subset else "∅"


def format_set(subset: Sequence[str]) -> str:
    return _fmt(subset)


def parse_family(text: str) -> SetFamily:
    """Read a family document: a JSON object with ``ground`` and ``sets``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "ground" not in doc or "sets" not in doc:
        raise FamilyError("family document must be an object with fields 'ground' and 'sets'")
    ground, sets = doc["ground"], doc["sets"]
    if not isinstance(ground, list) or not all(isinstance(e, str) for e in ground):
        raise FamilyError("'ground' must be a list of strings")
    if not isinstance(sets, list) or not all(
        isinstance(s, list) and all(isinstance(x, str) for x in s) for s in sets
    ):
        raise FamilyError("'sets' must be a list of lists of strings")
    return SetFamily(ground, sets)


def dump_family(f: SetFamily) -> str:
    return json.dumps(f.to_dict(), indent=2) + "\n"


def normalize(f: SetFamily) -> tuple[SetFamily, list[str]]:
    """Drop ground elements that lie in every set or in no set.

    Returns the reduced family (same set order) and the removed elements in
    ground order.
    """
    full = (1 << len(f.ground)) - 1
    union = 0
    inter = full
    for m in f.masks:
        union |= m
        inter &= m
    removed = [e for i, e in enumerate(f.ground) if not (union >> i & 1) or (inter >> i & 1)]
    if not removed:
        return f, []
    drop = set(removed)
    kept = tuple(e for e in f.ground if e not in drop)
    return SetFamily(kept, [tuple(x for x in s if x not in drop) for s in f.sets]), removed


@dataclass(frozen=True)
class ToggleSet:
    toggles: dict[str, Permutation] = field(hash=False)
    identity_toggles: tuple[str, ...]

    def generators(self) -> list[Permutation]:
        """Non-identity toggles, in ground order."""
        skip = set(self.identity_toggles)
        return [t for e, t in self.toggles.items() if e not in skip]

    def active(self) -> dict[str, Permutation]:
        skip = set(self.identity_toggles)
        return {e: t for e, t in self.toggles.items() if e not in skip}


def build_toggles(f: SetFamily) -> ToggleSet:
    index = f.index
    masks = f.masks
    toggles = {}
    identity = []
    for bit, e in enumerate(f.ground):
        flip = 1 << bit
        images = tuple(index.get(m ^ flip, i) for i, m in enumerate(masks))
        toggles[e] = pg._raw(images)
        if all(i == x for i, x in enumerate(images)):
            identity.append(e)
    return ToggleSet(toggles, tuple(identity))


@functools.lru_cache(maxsize=4096)
def toggle_group(f: SetFamily) -> GroupDescription:
    """Stabilizer chain of the group generated by the non-identity toggles."""
    return pg.schreier_sims(build_toggles(f).generators(), f.n)


def is_transitive_family(f: SetFamily) -> bool:
    return pg.is_transitive(build_toggles(f).generators(), f.n)


def cartesian_product(f1: SetFamily, f2: SetFamily) -> SetFamily:
    """All unions ``X1 | X2``, ordered with ``f1`` major (index ``i*|f2| + j``)."""
    overlap = set(f1.ground) & set(f2.ground)
    if overlap:
        raise FamilyError(f"ground sets overlap on {sorted(overlap)!r}")
    return SetFamily(f1.ground + f2.ground, [a + b for a in f1.sets for b in f2.sets])


class ToggleType(enum.Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"


@dataclass(frozen=True)
class ToggleTypeMap:
    block_system: BlockSystem
    type_of: dict[str, ToggleType] = field(hash=False)

    def elements(self, kind: ToggleType) -> list[str]:
        return [e for e, t in self.type_of.items() if t is kind]


def fixes_every_block(bs: BlockSystem, g: Permutation) -> bool:
    """True iff ``g`` maps each block of ``bs`` onto itself (a type 2 element)."""
    return all(bs.block_of[g.images[p]] == bs.block_of[p] for p in range(bs.n))


def classify_toggles(f: SetFamily, ts: ToggleSet, bs: BlockSystem) -> ToggleTypeMap:
    if bs.n != f.n:
        raise BlockSystemError(f"block system on {bs.n} points for a family of {f.n} sets")
    type_of = {}
    for e, t in ts.active().items():
        bad = pg.block_law_violation(bs, t)
        if bad is not None:
            raise BlockSystemError(f"toggle of {e!r} splits block {bad!r}")
        type_of[e] = ToggleType.TYPE2 if fixes_every_block(bs, t) else ToggleType.TYPE1
    return ToggleTypeMap(bs, type_of)


@dataclass(frozen=True)
class LayerPartition:
    layers: tuple[tuple[int, ...], ...]

    def one_per_block(self, bs: BlockSystem) -> bool:
        return all(
            sorted(bs.block_of[p] for p in layer) == list(range(bs.num_blocks)) for layer in self.layers
        )


def layers(f: SetFamily, ts: ToggleSet, bs: BlockSystem) -> LayerPartition:
    """Orbits of the points under the type 1 toggles only."""
    types = classify_toggles(f, ts, bs)
    type1 = [ts.toggles[e] for e in types.elements(ToggleType.TYPE1)]
    return LayerPartition(tuple(tuple(o) for o in pg.orbits(type1, f.n)))


@dataclass(frozen=True)
class Factorization:
    """``L`` written as ``L1 ⊗ L2`` with ``L1`` over ``E1`` and ``L2`` over ``E2``.

    ``E1`` holds the ground elements whose toggles move blocks, ``E2`` those
    whose toggles fix every block. Point ``i`` of the parent family
    corresponds to the pair ``coordinates[i]`` of indices into ``L1``, ``L2``.
    """

    E1: tuple[str, ...]
    E2: tuple[str, ...]
    L1: SetFamily
    L2: SetFamily
    block_system: BlockSystem | None = None

    @property
    def ell(self) -> int:
        return self.L1.n

    @property
    def m(self) -> int:
        return self.L2.n

    def coordinates(self, f: SetFamily) -> list[tuple[int, int]]:
        i1 = self.L1.index
        i2 = self.L2.index
        e1, e2 = set(self.E1), set(self.E2)
        out = []
        for s in f.sets:
            a = self.L1.mask_of(x for x in s if x in e1)
            b = self.L2.mask_of(x for x in s if x in e2)
            if a not in i1 or b not in i2:
                raise FactorizationError(f"set {_fmt(s)} has no coordinates in the factors")
            out.append((i1[a], i2[b]))
        return out

    def validate(self, f: SetFamily) -> None:
        """Raise FactorizationError unless this record factors ``f`` exactly."""
        if set(self.E1) & set(self.E2):
            raise FactorizationError("factor grounds overlap")
        if set(self.E1) | set(self.E2) != set(f.ground):
            raise FactorizationError("factor grounds do not cover the ground set")
        if tuple(self.L1.ground) != tuple(self.E1) or tuple(self.L2.ground) != tuple(self.E2):
            raise FactorizationError("factor families are not over E1 and E2")
        if self.ell * self.m != f.n:
            raise FactorizationError(f"|L1|*|L2| = {self.ell}*{self.m} != {f.n}")
        if not cartesian_product(self.L1, self.L2).same_sets(f):
            raise FactorizationError("L1 ⊗ L2 does not reproduce the family")


def _distinct(items):
    return list(dict.fromkeys(items))


def try_factor(f: SetFamily, bs: BlockSystem) -> Factorization | None:
    """Split ``f`` along ``bs`` into a toggle-disjoint Cartesian product.

    ``E1``/``E2`` are the type 1/type 2 ground elements and ``Li`` the
    distinct traces ``A & Ei``. The product equation and both factor sizes
    are checked; ``None`` means the family is not a product along ``bs``.
    """
    ts = build_toggles(f)
    types = classify_toggles(f, ts, bs)
    kind = {e: types.type_of.get(e) for e in f.ground}
    if any(k is None for k in kind.values()):
        return None
    e1 = tuple(e for e in f.ground if kind[e] is ToggleType.TYPE1)
    e2 = tuple(e for e in f.ground if kind[e] is ToggleType.TYPE2)
    s1, s2 = set(e1), set(e2)
    l1 = SetFamily(e1, _distinct(tuple(x for x in s if x in s1) for s in f.sets))
    l2 = SetFamily(e2, _distinct(tuple(x for x in s if x in s2) for s in f.sets))
    if l1.n != bs.num_blocks or l2.n != bs.block_size:
        return None
    if not cartesian_product(l1, l2).same_sets(f):
        return None
    return Factorization(e1, e2, l1, l2, bs)


@dataclass(frozen=True)
class Leaf:
    family: SetFamily
    group: GroupDescription

    @property
    def degree(self) -> int:
        return self.family.n

    def leaves(self) -> list[Leaf]:
        return [self]


@dataclass(frozen=True)
class Node:
    family: SetFamily
    group: GroupDescription
    factorization: Factorization
    children: tuple[FactorizationTree, ...]

    @property
    def degree(self) -> int:
        return self.family.n

    def leaves(self) -> list[Leaf]:
        return [leaf for child in self.children for leaf in child.leaves()]


FactorizationTree = Union[Leaf, Node]


def decompose(f: SetFamily) -> FactorizationTree:
    """Recursively factor ``f`` along its block systems.

    Block systems are tried in the order of ``nontrivial_block_systems``; the
    first successful split is taken and both factors are decomposed again.
    """
    group = toggle_group(f)
    gens = build_toggles(f).generators()
    if not pg.is_transitive(gens, f.n):
        raise NotTransitiveError(f"toggle group of {f} is not transitive")
    if f.n >= 2:
        for bs in pg.nontrivial_block_systems(gens, f.n):
            fact = try_factor(f, bs)
            if fact is not None:
                return Node(f, group, fact, (decompose(fact.L1), decompose(fact.L2)))
    return Leaf(f, group)


def verify_direct_product(f: SetFamily, fact: Factorization) -> bool:
    """Check ``T(L) = T(L1) x T(L2)`` on orders and on every toggle's action.

    Raises FactorizationError first if ``fact`` is malformed.
    """
    fact.validate(f)
    g, g1, g2 = toggle_group(f), toggle_group(fact.L1), toggle_group(fact.L2)
    if g.order != g1.order * g2.order:
        return False
    coords = fact.coordinates(f)
    at = {c: i for i, c in enumerate(coords)}
    ts = build_toggles(f).toggles
    t1 = build_toggles(fact.L1).toggles
    t2 = build_toggles(fact.L2).toggles
    for e, tau in ts.items():
        for i, (a, b) in enumerate(coords):
            expected = (t1[e](a), b) if e in t1 else (a, t2[e](b))
            if tau(i) != at[expected]:
                return False
    return True
