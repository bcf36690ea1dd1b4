from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from togglelab import permgroup as pg
from togglelab.permgroup import BlockSystem, Permutation
from togglelab.togglecore import SetFamily, build_toggles, cartesian_product, normalize

import oracles

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def perms(draw, n):
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def perm_triples(draw):
    n = draw(st.integers(1, 7))
    return draw(perms(n)), draw(perms(n)), draw(perms(n))


@st.composite
def small_groups(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(perms(n), min_size=0, max_size=3))
    return n, gens


@st.composite
def transitive_groups(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    gens = draw(st.lists(perms(n), min_size=1, max_size=3))
    # add an n-cycle conjugate so the group is transitive
    sigma = draw(perms(n))
    long_cycle = Permutation(tuple((i + 1) % n for i in range(n)))
    gens.append(sigma * long_cycle * sigma.inverse())
    return n, gens


@st.composite
def families(draw, max_ground=3):
    k = draw(st.integers(1, max_ground))
    ground = [f"x{i}" for i in range(k)]
    masks = draw(st.sets(st.integers(0, 2**k - 1), min_size=1))
    return SetFamily.from_masks(ground, sorted(masks))


@FAST
@given(perm_triples())
def test_compose_associative_with_inverses(t):
    p, q, r = t
    assert (p * q) * r == p * (q * r)
    assert (p * p.inverse()).is_identity()
    assert (p * q).images == oracles.mul(p.images, q.images)


@FAST
@given(perm_triples())
def test_parity_is_a_homomorphism(t):
    p, q, _ = t
    assert pg.parity(p * q) is pg.parity(p) ^ pg.parity(q)


@FAST
@given(st.integers(1, 8).flatmap(perms))
def test_cycle_decomposition_round_trip(p):
    cs = pg.cycle_decomposition(p)
    assert Permutation.from_cycles(p.n, *cs.cycles) == p
    assert sorted(cs.lengths()) == oracles.cycle_lengths(p.images)
    assert sum(cs.lengths()) + cs.fixed_points == p.n


@FAST
@given(small_groups())
def test_schreier_sims_order_matches_closure(g):
    n, gens = g
    elements = oracles.closure([p.images for p in gens], n)
    desc = pg.schreier_sims(gens, n)
    assert desc.order == len(elements)
    assert {p.images for p in pg.enumerate_elements(desc)} == elements


@FAST
@given(small_groups(), st.data())
def test_membership_matches_closure(g, data):
    n, gens = g
    elements = oracles.closure([p.images for p in gens], n)
    desc = pg.schreier_sims(gens, n)
    q = data.draw(perms(n))
    assert pg.contains_element(desc, q) == (q.images in elements)


@settings(max_examples=40, deadline=None)
@given(transitive_groups(max_n=7), st.data())
def test_minimal_block_is_minimal(g, data):
    n, gens = g
    beta = data.draw(st.integers(1, n - 1))
    bs = pg.minimal_block(gens, n, 0, beta)
    assert pg.is_block_system(bs, gens)
    assert bs.block_of[0] == bs.block_of[beta]
    raw = [p.images for p in gens]
    candidates = [
        part for part in oracles.invariant_partitions(raw, n)
        if any(0 in b and beta in b for b in part)
    ]
    smallest = min(len(next(b for b in part if 0 in b)) for part in candidates)
    assert bs.block_size == smallest


@settings(max_examples=40, deadline=None)
@given(transitive_groups(max_n=8))
def test_every_reported_block_system_is_invariant(g):
    n, gens = g
    for bs in pg.nontrivial_block_systems(gens, n):
        assert all(pg.block_law_violation(bs, g) is None for g in gens)
        assert 1 < bs.block_size < n
        assert sorted(p for b in bs.blocks() for p in b) == list(range(n))


@FAST
@given(small_groups(max_n=6), st.data())
def test_containment_witnesses_are_single_cycles(g, data):
    n, gens = g
    if n < 2:
        return
    k = data.draw(st.integers(2, n))
    desc = pg.schreier_sims(gens, n)
    c = pg.cycle_containment(desc, k)
    elements = oracles.closure([p.images for p in gens], n)
    assert c.yes == oracles.has_single_cycle(elements, k)
    if c.yes:
        assert oracles.cycle_lengths(c.witness.images) == [k]
        assert c.witness.images in elements


@FAST
@given(families())
def test_toggles_are_involutions_matching_definition(f):
    truth = oracles.toggles_by_definition(f.sets)
    for e, t in build_toggles(f).toggles.items():
        assert (t * t).is_identity()
        # elements in no set never appear in the oracle and toggle trivially
        assert t.images == truth.get(e, tuple(range(f.n)))


@FAST
@given(families())
def test_normalize_idempotent(f):
    g, _ = normalize(f)
    assert normalize(g) == (g, [])
    assert g.n == f.n


@FAST
@given(families(max_ground=2), families(max_ground=2))
def test_product_matches_oracle(f1, f2):
    f2 = SetFamily([e.replace("x", "y") for e in f2.ground], [[e.replace("x", "y") for e in s] for s in f2.sets])
    prod = cartesian_product(f1, f2)
    assert {frozenset(s) for s in prod.sets} == {
        frozenset(s) for s in oracles.product_family(f1.sets, f2.sets)
    }
    assert prod.n == f1.n * f2.n
    o1 = len(oracles.closure(list(oracles.toggles_by_definition(f1.sets).values()), f1.n))
    o2 = len(oracles.closure(list(oracles.toggles_by_definition(f2.sets).values()), f2.n))
    assert pg.schreier_sims(build_toggles(prod).generators(), prod.n).order == o1 * o2


def test_block_system_from_labels_canonical():
    assert BlockSystem.from_labels([5, 5, 2, 2]).block_of == (0, 0, 1, 1)
