import math
from itertools import permutations

import pytest

from togglelab import permgroup as pg
from togglelab.errors import DegreeMismatchError, NotTransitiveError
from togglelab.permgroup import BlockSystem, Containment, Parity, Permutation
from togglelab.togglecore import build_toggles, toggle_group

import oracles


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def toggles_of(f):
    return build_toggles(f).generators()


# -- compose ---------------------------------------------------------------


def test_compose_identity():
    p = cyc(4, (0, 2, 3))
    assert pg.compose(Permutation.identity(4), p) == p
    assert pg.compose(p, Permutation.identity(4)) == p


def test_compose_right_to_left():
    # (0 1)∘(1 2): 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0
    result = pg.compose(cyc(3, (0, 1)), cyc(3, (1, 2)))
    assert result == cyc(3, (0, 1, 2))
    assert result.images == oracles.mul((1, 0, 2), (0, 2, 1))


def test_compose_inverse():
    p = cyc(5, (0, 3, 1), (2, 4))
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        pg.compose(Permutation.identity(3), Permutation.identity(4))


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


# -- cycles and parity ------------------------------------------------------


def test_cycle_decomposition_identity():
    cs = pg.cycle_decomposition(Permutation.identity(5))
    assert cs.cycles == () and cs.fixed_points == 5


def test_cycle_decomposition_double_transposition():
    cs = pg.cycle_decomposition(cyc(4, (0, 1), (2, 3)))
    assert cs.cycles == ((0, 1), (2, 3))
    assert cs.fixed_points == 0


def test_cycle_decomposition_canonical_order():
    cs = pg.cycle_decomposition(Permutation((3, 4, 2, 1, 0)))
    assert cs.cycles == ((0, 3, 1, 4),)
    assert cs.fixed_points == 1


def test_prod23_six_cycle(prod23):
    t = build_toggles(prod23).toggles
    three_cycle = t["b"] * t["c"]
    assert pg.cycle_decomposition(three_cycle).cycles == ((0, 1, 2), (3, 4, 5))
    six = t["a"] * three_cycle
    # product computed independently on raw tuples
    raw = oracles.mul(t["a"].images, oracles.mul(t["b"].images, t["c"].images))
    assert six.images == raw
    assert pg.cycle_decomposition(six).cycles == ((0, 4, 2, 3, 1, 5),)


@pytest.mark.parametrize(
    "perm, expected",
    [
        (cyc(4, (0, 1)), Parity.ODD),
        (cyc(4, (0, 1, 2)), Parity.EVEN),
        (cyc(6, (0, 1, 2, 3, 4, 5)), Parity.ODD),
        (Permutation.identity(3), Parity.EVEN),
    ],
)
def test_parity(perm, expected):
    assert pg.parity(perm) is expected


# -- orbits -----------------------------------------------------------------


def test_orbits_no_generators():
    assert pg.orbits([], 3) == [[0], [1], [2]]


def test_orbits_transitive():
    assert pg.orbits([cyc(3, (0, 1)), cyc(3, (1, 2))], 3) == [[0, 1, 2]]


def test_orbits_partial():
    assert pg.orbits([cyc(3, (0, 1))], 3) == [[0, 1], [2]]


# -- stabilizer chain -------------------------------------------------------


def test_schreier_sims_trivial():
    assert pg.schreier_sims([], 4).order == 1


def test_schreier_sims_s3():
    gens = [cyc(3, (0, 1)), cyc(3, (1, 2))]
    g = pg.schreier_sims(gens, 3)
    assert g.order == len(oracles.closure([p.images for p in gens], 3)) == 6


def test_schreier_sims_chain3(chain3):
    gens = toggles_of(chain3)
    g = pg.schreier_sims(gens, 4)
    assert g.order == len(oracles.closure([p.images for p in gens], 4)) == 24


def test_schreier_sims_base_is_smallest_moved_point():
    g = pg.schreier_sims([cyc(6, (3, 4)), cyc(6, (2, 5))], 6)
    assert g.base == (3, 2)


def test_schreier_sims_large_symmetric_order_exact():
    n = 21
    g = pg.schreier_sims([cyc(n, (0, 1)), cyc(n, tuple(range(n)))], n)
    assert g.order == math.factorial(n)
    assert g.order > 2**63


def test_contains_element():
    s3 = pg.schreier_sims([cyc(3, (0, 1)), cyc(3, (1, 2))], 3)
    c3 = pg.schreier_sims([cyc(3, (0, 1, 2))], 3)
    assert pg.contains_element(c3, Permutation.identity(3))
    assert not pg.contains_element(c3, cyc(3, (0, 1)))
    assert pg.contains_element(s3, cyc(3, (0, 2)))
    with pytest.raises(DegreeMismatchError):
        pg.contains_element(s3, Permutation.identity(4))


def test_enumerate_elements_matches_closure():
    gens = [cyc(5, (0, 1, 2)), cyc(5, (2, 3, 4))]
    g = pg.schreier_sims(gens, 5)
    elements = {p.images for p in pg.enumerate_elements(g)}
    assert elements == oracles.closure([p.images for p in gens], 5)
    assert len(elements) == g.order == 60


# -- blocks ----------------------------------------------------------------


def test_minimal_block_boolean2(boolean2):
    # points: 0 = ∅, 1 = {a}, 2 = {b}, 3 = {a,b}
    bs = pg.minimal_block(toggles_of(boolean2), 4, 0, 3)
    assert sorted(map(sorted, bs.blocks())) == [[0, 3], [1, 2]]
    assert pg.is_block_system(bs, toggles_of(boolean2))


@pytest.mark.parametrize("beta", [1, 2])
def test_minimal_block_chain2_is_everything(chain2, beta):
    bs = pg.minimal_block(toggles_of(chain2), 3, 0, beta)
    assert bs.num_blocks == 1 and bs.block_size == 3


def test_minimal_block_requires_transitivity():
    with pytest.raises(NotTransitiveError):
        pg.minimal_block([cyc(3, (0, 1))], 3, 0, 1)


def test_minimal_block_requires_distinct_points(boolean2):
    with pytest.raises(ValueError):
        pg.minimal_block(toggles_of(boolean2), 4, 1, 1)


def test_block_systems_chain2(chain2):
    assert pg.nontrivial_block_systems(toggles_of(chain2), 3) == []
    assert pg.is_primitive(toggles_of(chain2), 3)


def test_block_systems_boolean2(boolean2):
    systems = pg.nontrivial_block_systems(toggles_of(boolean2), 4)
    assert len(systems) == 3
    assert BlockSystem.from_blocks([[0, 1], [2, 3]], 4) in systems
    assert [s.sort_key() for s in systems] == sorted(s.sort_key() for s in systems)
    assert not pg.is_primitive(toggles_of(boolean2), 4)


def test_block_systems_degree_two():
    assert pg.nontrivial_block_systems([cyc(2, (0, 1))], 2) == []


def test_prod23_imprimitive(prod23):
    systems = pg.nontrivial_block_systems(toggles_of(prod23), 6)
    assert BlockSystem.from_blocks([[0, 1, 2], [3, 4, 5]], 6) in systems
    assert not pg.is_primitive(toggles_of(prod23), 6)


def test_degree_one_is_trivially_primitive():
    assert pg.is_primitive([], 1)
    assert pg.is_transitive([], 1)


def test_block_systems_match_partition_oracle(boolean2, prod23, chain3):
    for f in (boolean2, prod23, chain3):
        gens = toggles_of(f)
        raw = [g.images for g in gens]
        truth = {
            BlockSystem.from_blocks(part, f.n).block_of
            for part in oracles.invariant_partitions(raw, f.n)
            if 1 < len(part[0]) < f.n
        }
        found = {bs.block_of for bs in pg.nontrivial_block_systems(gens, f.n)}
        # minimal systems are a subset of all systems; every minimal one must be listed
        assert found <= truth
        minimal = {
            b for b in truth
            if not any(o != b and _finer(o, b) for o in truth)
        }
        assert minimal <= found


def _finer(a, b):
    return all(b[i] == b[j] for i in range(len(a)) for j in range(len(a)) if a[i] == a[j])


# -- cycle containment -----------------------------------------------------


def test_containment_symmetric():
    n = 7
    g = pg.schreier_sims([cyc(n, (0, 1)), cyc(n, tuple(range(n)))], n)
    for k in range(2, n + 1):
        c = pg.cycle_containment(g, k)
        assert c.answer is Containment.YES and c.reason == "symmetric"
        assert pg.contains_element(g, c.witness)


def test_containment_alternating():
    gens = [cyc(6, (0, 1, 2)), cyc(6, (1, 2, 3, 4, 5))]
    g = pg.schreier_sims(gens, 6)
    assert g.order == 360
    assert pg.cycle_containment(g, 5).answer is Containment.YES
    assert pg.cycle_containment(g, 4).answer is Containment.NO
    assert pg.cycle_containment(g, 3).reason == "alternating"


def test_containment_boolean2(boolean2):
    g = toggle_group(boolean2)
    assert pg.cycle_containment(g, 4).answer is Containment.NO
    elements = oracles.closure([p.images for p in toggles_of(boolean2)], 4)
    assert not oracles.has_single_cycle(elements, 4)


def test_containment_prod23(prod23):
    g = toggle_group(prod23)
    c = pg.cycle_containment(g, 6)
    assert c.answer is Containment.YES and c.reason == "enumeration"
    assert oracles.cycle_lengths(c.witness.images) == [6]
    assert c.witness.images in oracles.closure([p.images for p in toggles_of(prod23)], 6)
    assert pg.cycle_containment(g, 3).answer is Containment.NO


def test_containment_parity_rule():
    # even generators only: no transposition, decided without enumeration
    g = pg.schreier_sims([cyc(5, (0, 1), (2, 3)), cyc(5, (1, 2), (3, 4))], 5)
    assert pg.cycle_containment(g, 2).reason == "parity"


def test_containment_undecided_above_limit():
    # C2 wr S4 style group of order > limit that is neither S_n nor A_n
    gens = [cyc(8, (0, 1)), cyc(8, (0, 2), (1, 3)), cyc(8, (0, 2, 4, 6), (1, 3, 5, 7))]
    g = pg.schreier_sims(gens, 8)
    assert not g.contains_alternating()
    c = pg.cycle_containment(g, 3, limit=10)
    assert c.answer is Containment.UNDECIDED and c.witness is None
    assert pg.cycle_containment(g, 3).answer is not Containment.UNDECIDED


def test_containment_range_checked():
    g = pg.schreier_sims([], 3)
    with pytest.raises(ValueError):
        pg.cycle_containment(g, 1)
    with pytest.raises(ValueError):
        pg.cycle_containment(g, 4)


def test_enumeration_oracle_all_small_groups_of_s4():
    # every 2-generated subgroup of S4: containment matches brute force
    perms = [Permutation(p) for p in permutations(range(4))]
    for a in perms[::5]:
        for b in perms[::7]:
            g = pg.schreier_sims([a, b], 4)
            elements = oracles.closure([a.images, b.images], 4)
            for k in range(2, 5):
                c = pg.cycle_containment(g, k)
                assert c.yes == oracles.has_single_cycle(elements, k)
