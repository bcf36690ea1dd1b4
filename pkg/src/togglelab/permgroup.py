"""Exact permutation groups on the points ``0 .. n-1``.

Composition convention (used everywhere in the package): ``compose(p, q)``
and ``p * q`` apply ``q`` first and then ``p``, i.e. ``(p * q)(x) == p(q(x))``.

The group engine is a deterministic Schreier-Sims stabilizer chain. Base
points are chosen as the smallest point moved by the element that forces a
new level, so orders and bases are reproducible run to run. Element
enumeration walks the coset representatives of the chain in numpy batches;
it backs the exact cycle-containment oracle for groups below a size limit.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BlockSystemError, DegreeMismatchError, NotTransitiveError

DEFAULT_ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        """Build a permutation of degree ``n`` from disjoint cycles.

        >>> Permutation.from_cycles(3, (0, 1, 2)).images
        (1, 2, 0)
        """
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            if seen.intersection(cycle) or len(set(cycle)) != len(cycle):
                raise ValueError(f"cycles are not disjoint: {cycles!r}")
            seen.update(cycle)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __len__(self) -> int:
        return len(self.images)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return _raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def restricted(self, points: Iterable[int]) -> dict[int, int]:
        """Mapping of ``points`` under self; only meaningful if the set is invariant."""
        return {p: self.images[p] for p in points}

    def __str__(self) -> str:
        cycles = cycle_decomposition(self).cycles
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def _raw(images: tuple[int, ...]) -> Permutation:
    # Skips validation for images produced by trusted internal arithmetic.
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p ∘ q``: apply ``q`` first, then ``p``."""
    if p.n != q.n:
        raise DegreeMismatchError(f"degree mismatch: {p.n} vs {q.n}")
    pi = p.images
    return _raw(tuple(pi[x] for x in q.images))


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


@dataclass(frozen=True)
class CycleStructure:
    """Disjoint cycles (each of length >= 2) plus the number of fixed points.

    Each cycle starts at its least point; cycles are sorted by least point.
    """

    cycles: tuple[tuple[int, ...], ...]
    fixed_points: int

    @property
    def n(self) -> int:
        return self.fixed_points + sum(len(c) for c in self.cycles)

    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def is_single_cycle(self) -> bool:
        return len(self.cycles) == 1


def cycle_decomposition(p: Permutation) -> CycleStructure:
    images = p.images
    seen = [False] * len(images)
    cycles = []
    fixed = 0
    for start in range(len(images)):
        if seen[start]:
            continue
        if images[start] == start:
            seen[start] = True
            fixed += 1
            continue
        cycle = [start]
        seen[start] = True
        x = images[start]
        while x != start:
            seen[x] = True
            cycle.append(x)
            x = images[x]
        cycles.append(tuple(cycle))
    return CycleStructure(tuple(cycles), fixed)


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    def __xor__(self, other: Parity) -> Parity:
        return Parity.ODD if (self is Parity.ODD) != (other is Parity.ODD) else Parity.EVEN


def parity(p: Permutation) -> Parity:
    even_cycles = sum(1 for c in cycle_decomposition(p).cycles if len(c) % 2 == 0)
    return Parity.ODD if even_cycles % 2 else Parity.EVEN


def _check_degrees(gens: Sequence[Permutation], n: int) -> None:
    for g in gens:
        if g.n != n:
            raise DegreeMismatchError(f"generator of degree {g.n} in a group of degree {n}")


def orbits(gens: Sequence[Permutation], n: int) -> list[list[int]]:
    """Orbits of ``<gens>`` on ``range(n)``, each sorted, ordered by least point."""
    _check_degrees(gens, n)
    seen = [False] * n
    result = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        orbit = [start]
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g.images[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
                    frontier.append(y)
        result.append(sorted(orbit))
    return result


def is_transitive(gens: Sequence[Permutation], n: int) -> bool:
    return n >= 1 and len(orbits(gens, n)) == 1


# --------------------------------------------------------------------------
# Stabilizer chain
# --------------------------------------------------------------------------


def _orbit_transversal(point: int, gens: Sequence[Permutation], n: int) -> dict[int, Permutation]:
    # transversal[y](point) == y
    transversal = {point: _raw(tuple(range(n)))}
    queue = [point]
    for x in queue:
        ux = transversal[x]
        for g in gens:
            y = g.images[x]
            if y not in transversal:
                transversal[y] = compose(g, ux)
                queue.append(y)
    return transversal


@dataclass(frozen=True)
class GroupDescription:
    """A permutation group given by generators and a base/strong generating set.

    ``order`` is an exact Python int. ``transversals[i]`` maps each point of
    the i-th fundamental orbit to a coset representative carrying ``base[i]``
    there; it is excluded from equality and hashing.
    """

    degree: int
    generators: tuple[Permutation, ...]
    base: tuple[int, ...]
    strong_generators: tuple[Permutation, ...]
    order: int
    transversals: tuple[dict, ...] = field(default=(), compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.degree

    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.transversals)

    def is_symmetric(self) -> bool:
        return self.order == math.factorial(self.degree)

    def is_alternating(self) -> bool:
        return self.degree >= 2 and 2 * self.order == math.factorial(self.degree)

    def contains_alternating(self) -> bool:
        return self.is_symmetric() or self.is_alternating()


def _sift(h: Permutation, base, transversals, start: int):
    for level in range(start, len(base)):
        x = h.images[base[level]]
        t = transversals[level]
        if x not in t:
            return h, level
        h = compose(t[x].inverse(), h)
    return h, len(base)


def schreier_sims(gens: Sequence[Permutation], n: int) -> GroupDescription:
    """Compute a base and strong generating set for ``<gens>``.

    Deterministic Schreier-Sims: every Schreier generator at a level is sifted
    through the deeper levels; a non-trivial residue becomes a new strong
    generator (and a new base point, the smallest point it moves, when it
    survives the whole chain). Transversals only ever grow, so a Schreier
    generator that sifted once never needs rechecking.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    gens = tuple(gens)
    _check_degrees(gens, n)
    ident = tuple(range(n))
    strong: list[tuple[int, ...]] = []
    base: list[int] = []
    members: list[list[int]] = []  # strong generator indices fixing base[:i]
    trans: list[dict] = []
    trans_inv: list[dict] = []
    checked: list[set] = []

    def add_level(point):
        base.append(point)
        members.append([])
        trans.append({point: ident})
        trans_inv.append({point: ident})
        checked.append(set())

    def add_strong(g, depth):
        strong.append(g)
        for level in range(depth + 1):
            members[level].append(len(strong) - 1)

    def extend(level):
        t, tinv = trans[level], trans_inv[level]
        level_gens = [strong[j] for j in members[level]]
        queue = list(t)
        for x in queue:
            ux = t[x]
            for g in level_gens:
                y = g[x]
                if y not in t:
                    u = tuple(g[v] for v in ux)
                    inv = [0] * n
                    for a, b in enumerate(u):
                        inv[b] = a
                    t[y] = u
                    tinv[y] = tuple(inv)
                    queue.append(y)

    def sift(h, start):
        for level in range(start, len(base)):
            x = h[base[level]]
            inv = trans_inv[level].get(x)
            if inv is None:
                return h, level
            h = tuple(inv[v] for v in h)
        return h, len(base)

    for g in gens:
        images = g.images
        if images == ident or images in strong:
            continue
        depth = next((i for i, b in enumerate(base) if images[b] != b), None)
        if depth is None:
            add_level(min(i for i, x in enumerate(images) if i != x))
            depth = len(base) - 1
        add_strong(images, depth)
    for level in range(len(base)):
        extend(level)

    i = len(base) - 1
    while i >= 0:
        found = False
        t, tinv, done = trans[i], trans_inv[i], checked[i]
        for beta in list(t):
            u_beta = t[beta]
            for idx in list(members[i]):
                if (beta, idx) in done:
                    continue
                done.add((beta, idx))
                s = strong[idx]
                inv = tinv[s[beta]]
                h = tuple(inv[s[v]] for v in u_beta)
                if h == ident:
                    continue
                residue, j = sift(h, i + 1)
                if residue == ident:
                    continue
                if j == len(base):
                    add_level(min(p for p, x in enumerate(residue) if p != x))
                add_strong(residue, j)
                for level in range(i + 1, j + 1):
                    extend(level)
                i = j
                found = True
                break
            if found:
                break
        if not found:
            i -= 1

    order = math.prod(len(t) for t in trans)
    return GroupDescription(
        degree=n,
        generators=gens,
        base=tuple(base),
        strong_generators=tuple(_raw(g) for g in strong),
        order=order,
        transversals=tuple({pt: _raw(u) for pt, u in t.items()} for t in trans),
    )


def contains_element(group: GroupDescription, p: Permutation) -> bool:
    """Membership test by sifting ``p`` through the stabilizer chain."""
    if p.n != group.degree:
        raise DegreeMismatchError(f"degree mismatch: {p.n} vs {group.degree}")
    residue, _ = _sift(p, group.base, group.transversals, 0)
    return residue.is_identity()


def iter_element_batches(group: GroupDescription) -> Iterator[np.ndarray]:
    """Yield every group element exactly once, as rows of int arrays.

    Each batch holds the elements of one left coset of the first base point's
    stabilizer, so peak memory is ``order / |first orbit|`` rows.
    """
    n = group.degree
    rows = np.arange(n, dtype=np.int32)[None, :]
    levels = [np.array([u.images for u in t.values()], dtype=np.int32) for t in group.transversals]
    if not levels:
        yield rows
        return
    for reps in reversed(levels[1:]):
        rows = reps[:, rows].reshape(-1, n)
    for u in levels[0]:
        yield u[rows]


def enumerate_elements(group: GroupDescription) -> list[Permutation]:
    return [_raw(tuple(int(x) for x in row)) for batch in iter_element_batches(group) for row in batch]


def _single_cycle_lengths(batch: np.ndarray) -> np.ndarray:
    """Length k of each row if the row is a single k-cycle, else 0."""
    m, n = batch.shape
    moved = batch != np.arange(n)
    count = moved.sum(axis=1)
    result = np.zeros(m, dtype=np.int64)
    cand = np.nonzero(count >= 2)[0]
    if cand.size == 0:
        return result
    sub = batch[cand]
    start = moved[cand].argmax(axis=1)
    rows = np.arange(cand.size)
    x = start.copy()
    orbit_len = np.zeros(cand.size, dtype=np.int64)
    for step in range(1, n + 1):
        x = sub[rows, x]
        hit = (x == start) & (orbit_len == 0)
        orbit_len[hit] = step
        if (orbit_len > 0).all():
            break
    single = orbit_len == count[cand]
    result[cand[single]] = orbit_len[single]
    return result


@functools.lru_cache(maxsize=512)
def _enumerated_cycle_witnesses(group: GroupDescription) -> dict[int, Permutation]:
    # length -> first single cycle of that length met during enumeration
    witnesses: dict[int, Permutation] = {}
    for batch in iter_element_batches(group):
        lengths = _single_cycle_lengths(batch)
        for k in np.unique(lengths):
            k = int(k)
            if k and k not in witnesses:
                row = batch[int(np.argmax(lengths == k))]
                witnesses[k] = _raw(tuple(int(v) for v in row))
        if len(witnesses) == group.degree - 1:
            break
    return witnesses


class Containment(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class CycleContainment:
    """Answer of the cycle-containment oracle, with the rule that decided it.

    ``reason`` is one of ``symmetric``, ``alternating``, ``parity``,
    ``enumeration`` or ``limit``. A YES answer always carries a witness
    single cycle of length ``k`` that lies in the group.
    """

    k: int
    answer: Containment
    reason: str
    witness: Permutation | None = None

    @property
    def yes(self) -> bool:
        return self.answer is Containment.YES

    @property
    def no(self) -> bool:
        return self.answer is Containment.NO

    @property
    def undecided(self) -> bool:
        return self.answer is Containment.UNDECIDED


def standard_cycle(n: int, k: int) -> Permutation:
    """The k-cycle ``(0 1 ... k-1)`` on ``n`` points."""
    return Permutation.from_cycles(n, tuple(range(k)))


def cycle_containment(
    group: GroupDescription, k: int, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> CycleContainment:
    """Decide whether ``group`` contains a single cycle of length ``k``.

    Rules, first match wins: full symmetric group by order; alternating group
    by order (k-cycles are even exactly when k is odd); an odd k-cycle cannot
    live in a group with only even generators; exhaustive enumeration when the
    order is at most ``limit``; otherwise UNDECIDED.
    """
    n = group.degree
    if not 2 <= k <= n:
        raise ValueError(f"cycle length {k} out of range 2..{n}")
    if limit < 1:
        raise ValueError("enumeration limit must be positive")
    if group.is_symmetric():
        return CycleContainment(k, Containment.YES, "symmetric", standard_cycle(n, k))
    if group.is_alternating():
        if k % 2:
            return CycleContainment(k, Containment.YES, "alternating", standard_cycle(n, k))
        return CycleContainment(k, Containment.NO, "alternating")
    if k % 2 == 0 and all(parity(g) is Parity.EVEN for g in group.generators):
        return CycleContainment(k, Containment.NO, "parity")
    if group.order <= limit:
        witness = _enumerated_cycle_witnesses(group).get(k)
        if witness is None:
            return CycleContainment(k, Containment.NO, "enumeration")
        return CycleContainment(k, Containment.YES, "enumeration", witness)
    return CycleContainment(k, Containment.UNDECIDED, "limit")


def cycle_spectrum(group: GroupDescription, limit: int = DEFAULT_ENUMERATION_LIMIT) -> dict[int, CycleContainment]:
    return {k: cycle_containment(group, k, limit) for k in range(2, group.degree + 1)}


# --------------------------------------------------------------------------
# Blocks
# --------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class BlockSystem:
    """Partition of the points into equal-size blocks.

    ``block_of`` is canonical: blocks are numbered by first occurrence.
    """

    block_of: tuple[int, ...]
    num_blocks: int
    block_size: int

    @classmethod
    def from_labels(cls, labels: Sequence) -> BlockSystem:
        renumber: dict = {}
        block_of = tuple(renumber.setdefault(x, len(renumber)) for x in labels)
        sizes = [0] * len(renumber)
        for b in block_of:
            sizes[b] += 1
        if len(set(sizes)) > 1:
            raise BlockSystemError(f"blocks of unequal sizes {sorted(set(sizes))}")
        return cls(block_of, len(renumber), sizes[0] if sizes else 0)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> BlockSystem:
        labels: list = [None] * n
        for i, block in enumerate(blocks):
            for p in block:
                if labels[p] is not None:
                    raise BlockSystemError(f"point {p} lies in two blocks")
                labels[p] = i
        if None in labels:
            raise BlockSystemError("blocks do not cover every point")
        return cls.from_labels(labels)

    @property
    def n(self) -> int:
        return len(self.block_of)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for p, b in enumerate(self.block_of):
            out[b].append(p)
        return out

    def is_trivial(self) -> bool:
        return self.block_size in (1, self.n)

    def sort_key(self):
        return (self.block_size, self.block_of)


def block_law_violation(bs: BlockSystem, g: Permutation):
    """Return a block that ``g`` splits across several blocks, or None."""
    for block in bs.blocks():
        targets = {bs.block_of[g.images[p]] for p in block}
        if len(targets) > 1:
            return block
    return None


def is_block_system(bs: BlockSystem, gens: Sequence[Permutation]) -> bool:
    return all(block_law_violation(bs, g) is None for g in gens)


def _require_transitive(gens, n):
    if not is_transitive(gens, n):
        raise NotTransitiveError("group is not transitive")


def minimal_block(gens: Sequence[Permutation], n: int, alpha: int, beta: int) -> BlockSystem:
    """Finest block system in which ``alpha`` and ``beta`` share a block.

    Union-find closure: every merged pair is pushed, and the images of a pushed
    pair under each generator are merged in turn. The resulting equivalence is
    the smallest ``<gens>``-invariant one containing ``(alpha, beta)``.
    """
    _check_degrees(gens, n)
    if alpha == beta:
        raise ValueError("alpha and beta must differ")
    _require_transitive(gens, n)
    uf = _UnionFind(n)
    uf.union(alpha, beta)
    pending = [(alpha, beta)]
    while pending:
        x, y = pending.pop()
        for g in gens:
            gx, gy = g.images[x], g.images[y]
            if uf.union(gx, gy):
                pending.append((gx, gy))
    return BlockSystem.from_labels([uf.find(p) for p in range(n)])


@functools.lru_cache(maxsize=1024)
def _nontrivial_block_systems(gens: tuple[Permutation, ...], n: int) -> tuple[BlockSystem, ...]:
    found = {}
    for beta in range(1, n):
        bs = minimal_block(gens, n, 0, beta)
        if not bs.is_trivial():
            found.setdefault(bs.block_of, bs)
    return tuple(sorted(found.values(), key=BlockSystem.sort_key))


def nontrivial_block_systems(gens: Sequence[Permutation], n: int) -> list[BlockSystem]:
    """Distinct non-trivial minimal block systems ``minimal_block(0, beta)``.

    Sorted by block size, then by ``block_of``.
    """
    gens = tuple(gens)
    _check_degrees(gens, n)
    _require_transitive(gens, n)
    return list(_nontrivial_block_systems(gens, n))


def is_primitive(gens: Sequence[Permutation], n: int) -> bool:
    # n == 1 is reported as trivially primitive; callers flag it separately.
    if n == 1:
        return True
    return not nontrivial_block_systems(gens, n)


# --------------------------------------------------------------------------
# Brute-force oracle
# --------------------------------------------------------------------------


def closure(gens: Sequence[Permutation], n: int, cap: int | None = None) -> set[Permutation]:
    """All products of ``gens`` by breadth-first multiplication until closed.

    Independent of the stabilizer chain; used to cross-check orders. Raises
    OverflowError if more than ``cap`` elements appear.
    """
    _check_degrees(gens, n)
    ident = Permutation.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if cap is not None and len(seen) > cap:
                        raise OverflowError(f"closure exceeds {cap} elements")
        frontier = nxt
    return seen


def word_ball(gens: Sequence[Permutation], n: int, radius: int, cap: int | None = None) -> list[Permutation]:
    """Distinct elements expressible as words of length <= ``radius`` in ``gens``.

    Breadth-first, so the result is deterministic and contains the identity,
    every generator and every product of two generators first. Stops after
    ``cap`` elements when given.
    """
    _check_degrees(gens, n)
    ident = Permutation.identity(n)
    found = {ident: None}
    frontier = [ident]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in found:
                    found[y] = None
                    nxt.append(y)
                    if cap is not None and len(found) >= cap:
                        return list(found)
        if not nxt:
            break
        frontier = nxt
    return list(found)
