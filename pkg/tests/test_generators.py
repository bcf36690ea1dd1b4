import logging
from itertools import combinations

import pytest

from togglelab.errors import InfeasibleRequestError, PosetError
from togglelab.generators import (
    FamilyStream,
    all_posets,
    antichain,
    chain,
    dump_poset,
    enumerate_families,
    hasse_connected,
    make_poset,
    order_ideals,
    parse_poset,
    relabel,
)
from togglelab.togglecore import SetFamily

import oracles
from conftest import F_BOOLEAN2, F_CHAIN2, F_CHAIN3


def brute_ideals(p):
    """Down-closed subsets by checking every subset against the transitive closure."""
    below = {e: set() for e in p.elements}
    changed = True
    for lo, hi in p.covers:
        below[hi].add(lo)
    while changed:
        changed = False
        for e in p.elements:
            extra = set().union(*(below[x] for x in below[e])) - below[e] if below[e] else set()
            if extra:
                below[e] |= extra
                changed = True
    out = set()
    for r in range(len(p.elements) + 1):
        for sub in combinations(p.elements, r):
            if all(below[x] <= set(sub) for x in sub):
                out.add(frozenset(sub))
    return out


def brute_families(k):
    """Distinct normalized families over k elements with at least two sets."""
    ground = [f"e{i}" for i in range(k)]
    subsets = [frozenset(c) for r in range(k + 1) for c in combinations(ground, r)]
    seen = set()
    for mask in range(1, 1 << len(subsets)):
        fam = [subsets[i] for i in range(len(subsets)) if mask >> i & 1]
        everywhere = frozenset.intersection(*fam)
        anywhere = frozenset.union(*fam)
        kept = frozenset(s - everywhere for s in fam)
        live = tuple(e for e in ground if e in anywhere and e not in everywhere)
        if len(kept) >= 2:
            seen.add((live, kept))
    return seen


def transitive_by_closure(f):
    gens = list(oracles.toggles_by_definition(f.sets).values())
    return len({g[0] for g in oracles.closure(gens, f.n)}) == f.n


# -- posets ----------------------------------------------------------------


def test_parse_chain():
    p = parse_poset('{"elements": ["a", "b"], "covers": [["a", "b"]]}')
    assert p == chain(2)
    assert parse_poset(dump_poset(p)) == p


def test_parse_antichain():
    assert parse_poset('{"elements": ["a", "b"], "covers": []}') == antichain(2)


def test_cycle_rejected():
    with pytest.raises(PosetError, match="cycle"):
        make_poset("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def test_self_cover_rejected():
    with pytest.raises(PosetError, match="cycle"):
        make_poset("a", [("a", "a")])


def test_unknown_label_rejected():
    with pytest.raises(PosetError, match="unknown element 'z'"):
        make_poset("ab", [("a", "z")])


def test_bad_json_reports_position():
    with pytest.raises(PosetError, match="line 1"):
        parse_poset('{"elements": [}')


def test_redundant_cover_dropped(caplog):
    with caplog.at_level(logging.WARNING):
        p = make_poset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert p.covers == (("a", "b"), ("b", "c"))
    assert "redundant" in caplog.text


def test_hasse_connected():
    assert hasse_connected(chain(3))
    assert not hasse_connected(antichain(2))
    assert hasse_connected(antichain(1))
    assert hasse_connected(antichain(0))
    assert hasse_connected(make_poset("abc", [("a", "c"), ("b", "c")]))


def test_all_posets_count():
    # labelled posets on 1..4 points: 1, 3, 19, 219
    assert [sum(1 for _ in all_posets(k)) for k in range(1, 5)] == [1, 3, 19, 219]


# -- order ideals ----------------------------------------------------------


def test_ideals_chain2():
    assert order_ideals(chain(2)) == F_CHAIN2


def test_ideals_antichain2():
    assert order_ideals(antichain(2)) == F_BOOLEAN2


def test_ideals_chain3():
    assert order_ideals(chain(3)) == F_CHAIN3


@pytest.mark.parametrize("k", range(0, 6))
def test_ideal_counts(k):
    assert order_ideals(chain(k)).n == k + 1
    assert order_ideals(antichain(k)).n == 2**k


def test_ideals_match_brute_force_and_form_lattice():
    for k in range(0, 5):
        for p in all_posets(k):
            f = order_ideals(p)
            ideals = {frozenset(s) for s in f.sets}
            assert ideals == brute_ideals(p)
            for x in ideals:
                for y in ideals:
                    assert x | y in ideals and x & y in ideals


# -- bulk enumeration ------------------------------------------------------


def test_exhaustive_k1():
    assert list(enumerate_families(FamilyStream(1))) == [SetFamily(["e0"], [[], ["e0"]])]


@pytest.mark.parametrize("k", [2, 3])
def test_exhaustive_matches_brute_force(k):
    got = {(f.ground, frozenset(frozenset(s) for s in f.sets)) for f in enumerate_families(FamilyStream(k))}
    assert got == brute_families(k)


def test_transitive_filter():
    every = list(enumerate_families(FamilyStream(3)))
    trans = list(enumerate_families(FamilyStream(3, transitive_only=True)))
    assert trans == [f for f in every if transitive_by_closure(f)]


def test_exhaustive_families_are_normalized():
    for f in enumerate_families(FamilyStream(3)):
        ms = f.masks
        full = (1 << len(f.ground)) - 1
        assert all(any(m >> i & 1 for m in ms) and not all(m >> i & 1 for m in ms) for i in range(len(f.ground)))
        assert all(0 <= m <= full for m in ms)


def test_sampled_is_deterministic():
    s = FamilyStream(4, mode="sampled", seed=7, count=20, transitive_only=True)
    first = list(enumerate_families(s))
    assert len(first) == 20
    assert first == list(enumerate_families(s))
    other = list(enumerate_families(FamilyStream(4, mode="sampled", seed=8, count=20, transitive_only=True)))
    assert other != first


@pytest.mark.parametrize(
    "stream",
    [
        FamilyStream(6),
        FamilyStream(11, mode="sampled", count=1),
        FamilyStream(0, mode="sampled", count=1),
    ],
)
def test_infeasible_requests(stream):
    with pytest.raises(InfeasibleRequestError):
        next(enumerate_families(stream))


def test_relabel():
    f = relabel(F_CHAIN2, "x_")
    assert f.ground == ("x_a", "x_b")
    assert f.sets == ((), ("x_a",), ("x_a", "x_b"))
