"""Sources of set families: order ideals of posets and bulk enumeration."""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import InfeasibleRequestError, PosetError
from .togglecore import SetFamily, is_transitive_family, normalize

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_GROUND = 5
MAX_SAMPLED_GROUND = 10


@dataclass(frozen=True)
class Poset:
    """A finite poset given by its cover relations ``(lower, upper)``."""

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    def lower_covers(self) -> dict[str, list[str]]:
        below: dict[str, list[str]] = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            below[hi].append(lo)
        return below


def _reachable(start: str, edges: dict[str, list[str]], skip_edge=None) -> set[str]:
    seen: set[str] = set()
    stack = [start]
    while stack:
        x = stack.pop()
        for y in edges[x]:
            if (x, y) == skip_edge or y in seen:
                continue
            seen.add(y)
            stack.append(y)
    return seen


def make_poset(elements, covers) -> Poset:
    """Validate and build a Poset.

    Raises PosetError on unknown labels, duplicate elements or a cycle.
    Covers implied by transitivity of the others are dropped with a warning.
    """
    elements = tuple(str(e) for e in elements)
    if len(set(elements)) != len(elements):
        raise PosetError("duplicate poset element")
    known = set(elements)
    pairs = []
    for pair in covers:
        if len(pair) != 2:
            raise PosetError(f"cover {pair!r} is not a pair")
        lo, hi = str(pair[0]), str(pair[1])
        for x in (lo, hi):
            if x not in known:
                raise PosetError(f"cover ({lo}, {hi}) uses unknown element {x!r}")
        if lo == hi:
            raise PosetError(f"cycle detected: {lo} covers itself")
        if (lo, hi) not in pairs:
            pairs.append((lo, hi))
    above: dict[str, list[str]] = {e: [] for e in elements}
    for lo, hi in pairs:
        above[lo].append(hi)
    for e in elements:
        if e in _reachable(e, above):
            raise PosetError(f"cycle detected through {e!r}")
    kept = []
    for lo, hi in pairs:
        if hi in _reachable(lo, above, skip_edge=(lo, hi)):
            logger.warning("dropping redundant cover (%s, %s)", lo, hi)
            above[lo].remove(hi)
        else:
            kept.append((lo, hi))
    return Poset(elements, tuple(kept))


def parse_poset(text: str) -> Poset:
    """Read a poset document: JSON with ``elements`` and ``covers``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PosetError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "elements" not in doc or "covers" not in doc:
        raise PosetError("poset document must be an object with fields 'elements' and 'covers'")
    if not isinstance(doc["elements"], list) or not isinstance(doc["covers"], list):
        raise PosetError("'elements' and 'covers' must be lists")
    return make_poset(doc["elements"], doc["covers"])


def dump_poset(p: Poset) -> str:
    return json.dumps({"elements": list(p.elements), "covers": [list(c) for c in p.covers]}, indent=2) + "\n"


def order_ideals(p: Poset) -> SetFamily:
    """All down-closed subsets, sorted by size and then lexicographically by
    element position."""
    below = p.lower_covers()
    # depth-first over a linear extension; every leaf is an ideal
    order: list[str] = []
    placed: set[str] = set()
    while len(order) < len(p.elements):
        for e in p.elements:
            if e not in placed and all(x in placed for x in below[e]):
                order.append(e)
                placed.add(e)
                break
    ideals = []

    def extend(i: int, chosen: set[str]):
        if i == len(order):
            ideals.append(frozenset(chosen))
            return
        e = order[i]
        extend(i + 1, chosen)
        if all(x in chosen for x in below[e]):
            chosen.add(e)
            extend(i + 1, chosen)
            chosen.remove(e)

    extend(0, set())
    pos = {e: i for i, e in enumerate(p.elements)}
    keyed = sorted((sorted(pos[x] for x in ideal) for ideal in ideals), key=lambda s: (len(s), s))
    return SetFamily(p.elements, [[p.elements[i] for i in s] for s in keyed])


def hasse_connected(p: Poset) -> bool:
    """Connectivity of the undirected cover graph; the empty poset counts as connected."""
    if not p.elements:
        return True
    adj: dict[str, list[str]] = {e: [] for e in p.elements}
    for lo, hi in p.covers:
        adj[lo].append(hi)
        adj[hi].append(lo)
    start = p.elements[0]
    return len(_reachable(start, adj) | {start}) == len(p.elements)


def chain(k: int) -> Poset:
    labels = [chr(ord("a") + i) for i in range(k)]
    return Poset(tuple(labels), tuple(zip(labels, labels[1:])))


def antichain(k: int) -> Poset:
    return Poset(tuple(chr(ord("a") + i) for i in range(k)), ())


def all_posets(k: int) -> Iterator[Poset]:
    """Every labelled poset on elements ``p0 .. p{k-1}`` (no isomorphism reduction)."""
    labels = [f"p{i}" for i in range(k)]
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    for mask in range(1 << len(pairs)):
        rel = {pairs[b] for b in range(len(pairs)) if mask >> b & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, l) not in rel for i, j in rel for jj, l in rel if j == jj):
            continue
        covers = [
            (labels[i], labels[j])
            for i, j in sorted(rel)
            if not any((i, m) in rel and (m, j) in rel for m in range(k))
        ]
        yield Poset(tuple(labels), tuple(covers))


@dataclass(frozen=True)
class FamilyStream:
    """What to enumerate.

    ``mode`` is ``"exhaustive"`` or ``"sampled"``. In sampled mode ``count``
    families are yielded after filtering; each candidate includes every
    subset of the ground independently with probability 1/2. ``min_size``
    drops families with fewer sets after normalization.
    """

    ground_size: int
    mode: str = "exhaustive"
    seed: int = 0
    count: int = 0
    transitive_only: bool = False
    min_size: int = 2

    def describe(self) -> dict:
        return {
            "ground_size": self.ground_size,
            "mode": self.mode,
            "seed": self.seed if self.mode == "sampled" else None,
            "count": self.count if self.mode == "sampled" else None,
            "transitive_only": self.transitive_only,
            "min_size": self.min_size,
        }


def check_stream(stream: FamilyStream) -> None:
    k = stream.ground_size
    if k < 0:
        raise InfeasibleRequestError("ground size must be non-negative")
    if stream.mode == "exhaustive":
        if k > MAX_EXHAUSTIVE_GROUND:
            raise InfeasibleRequestError(
                f"exhaustive enumeration over {k} ground elements is infeasible (max {MAX_EXHAUSTIVE_GROUND})"
            )
    elif stream.mode == "sampled":
        if k > MAX_SAMPLED_GROUND:
            raise InfeasibleRequestError(f"sampling supports ground size at most {MAX_SAMPLED_GROUND}")
        if stream.count < 0:
            raise InfeasibleRequestError("sample count must be non-negative")
        if stream.count and (1 << k) < stream.min_size:
            raise InfeasibleRequestError(f"no family over {k} ground elements has {stream.min_size} sets")
    else:
        raise ValueError(f"unknown stream mode {stream.mode!r}")


def _accept(f: SetFamily, stream: FamilyStream) -> bool:
    if f.n < stream.min_size:
        return False
    return not stream.transitive_only or is_transitive_family(f)


def _family_key(f: SetFamily):
    return f.ground, frozenset(f.masks)


def enumerate_families(stream: FamilyStream) -> Iterator[SetFamily]:
    """Yield normalized families over the ground ``e0 .. e{k-1}``.

    Exhaustive mode walks every family in increasing bit-mask order over
    the ``2**k`` subsets and yields each distinct normalized family once (set
    order: increasing mask). Sampled mode is reproducible from ``seed``.
    """
    check_stream(stream)
    k = stream.ground_size
    ground = tuple(f"e{i}" for i in range(k))
    subsets = 1 << k
    if stream.mode == "exhaustive":
        seen = set()
        duplicates = 0
        for fam in range(1, 1 << subsets):
            masks = [m for m in range(subsets) if fam >> m & 1]
            f, _ = normalize(SetFamily.from_masks(ground, masks))
            key = _family_key(f)
            if key in seen:
                duplicates += 1
                continue
            seen.add(key)
            if _accept(f, stream):
                yield f
        logger.debug("exhaustive k=%d: %d duplicates collapsed", k, duplicates)
        return
    rng = random.Random(stream.seed)
    produced = 0
    while produced < stream.count:
        masks = [m for m in range(subsets) if rng.random() < 0.5]
        if not masks:
            continue
        f, _ = normalize(SetFamily.from_masks(ground, masks))
        if _accept(f, stream):
            produced += 1
            yield f


def relabel(f: SetFamily, prefix: str) -> SetFamily:
    """Copy of ``f`` with every ground label prefixed (for disjoint grounds)."""
    return SetFamily(tuple(prefix + e for e in f.ground), [[prefix + x for x in s] for s in f.sets])

