"""Executable certifiers for structural facts about toggle groups.

Every certifier returns a :class:`CertResult` whose status separates a
hypothesis that fired and held (PASS), a hypothesis that never fired
(VACUOUSLY_TRUE), a hypothesis that could not be decided within the
enumeration limit (UNDECIDED) and a genuine counterexample (FAIL). A FAIL
always carries a witness that :func:`replay` can rerun in isolation.
"""

from __future__ import annotations

import enum
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import permgroup as pg
from .errors import NotTransitiveError
from .generators import FamilyStream, check_stream, enumerate_families
from .permgroup import DEFAULT_ENUMERATION_LIMIT, BlockSystem, Permutation
from .togglecore import (
    SetFamily,
    ToggleSet,
    ToggleType,
    build_toggles,
    cartesian_product,
    classify_toggles,
    decompose,
    toggle_group,
    try_factor,
    verify_direct_product,
)

SCHEMA_VERSION = 1
DEFAULT_WORD_BOUND = 8
DEFAULT_WORD_CAP = 5000


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUSLY_TRUE = "vacuously_true"
    UNDECIDED = "undecided"


# FAIL dominates when combining clause results over several block systems.
_SEVERITY = {Status.VACUOUSLY_TRUE: 0, Status.PASS: 1, Status.UNDECIDED: 2, Status.FAIL: 3}


@dataclass(frozen=True)
class CertResult:
    name: str
    status: Status
    witness: dict | None = None
    detail: str = ""
    timing: float = field(default=0.0, compare=False)

    def to_dict(self, timings: bool = False) -> dict:
        out = {"name": self.name, "status": self.status.value, "detail": self.detail, "witness": self.witness}
        if timings:
            out["timing"] = self.timing
        return out


def _perm(p: Permutation | None):
    return None if p is None else str(p)


def _result(name, status, f=None, detail="", **witness) -> CertResult:
    payload = None
    if status in (Status.FAIL, Status.UNDECIDED) or witness:
        payload = {"certifier": name}
        if f is not None:
            payload["family"] = f.to_dict()
        payload.update(witness)
    return CertResult(name, status, payload, detail)


def _transitive_group(f: SetFamily):
    gens = build_toggles(f).generators()
    if not pg.is_transitive(gens, f.n):
        raise NotTransitiveError(f"toggle group of {f} is not transitive")
    return gens, toggle_group(f)


def _hypothesis(group, lengths: Iterable[int], limit: int):
    """Combine containment answers: the first YES, else any UNDECIDED, else NO."""
    undecided = None
    for k in lengths:
        c = pg.cycle_containment(group, k, limit)
        if c.yes:
            return c
        if c.undecided and undecided is None:
            undecided = c
    return undecided


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        object.__setattr__(res, "timing", time.perf_counter() - start)
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def _cycle_implies(name, f, lengths, conclusion, conclusion_text, limit):
    gens, group = _transitive_group(f)
    hyp = _hypothesis(group, lengths, limit)
    if hyp is None:
        return _result(name, Status.VACUOUSLY_TRUE, detail="no cycle of the required length")
    if hyp.undecided:
        return _result(name, Status.UNDECIDED, f, f"order {group.order} exceeds the enumeration limit", k=hyp.k)
    ok = conclusion(gens, group)
    status = Status.PASS if ok else Status.FAIL
    detail = f"{hyp.k}-cycle present ({hyp.reason}); {conclusion_text} {'holds' if ok else 'fails'}"
    if ok:
        return _result(name, status, detail=detail)
    return _result(name, status, f, detail, cycle=_perm(hyp.witness), order=str(group.order))


@_timed
def certify_transposition(f: SetFamily, limit: int = DEFAULT_ENUMERATION_LIMIT) -> CertResult:
    """A transitive toggle group containing a transposition is the full symmetric group."""
    lengths = [2] if f.n >= 2 else []
    return _cycle_implies(
        "transposition", f, lengths, lambda gens, g: g.is_symmetric(), "order = n!", limit
    )


@_timed
def certify_three_cycle(f: SetFamily, limit: int = DEFAULT_ENUMERATION_LIMIT) -> CertResult:
    lengths = [3] if f.n >= 3 else []
    return _cycle_implies(
        "three-cycle", f, lengths, lambda gens, g: g.contains_alternating(), "alternating subgroup", limit
    )


@_timed
def certify_short_cycle_primitive(f: SetFamily, limit: int = DEFAULT_ENUMERATION_LIMIT) -> CertResult:
    """Any single cycle of length 2..n-1 forces primitivity."""
    return _cycle_implies(
        "short-cycle-primitive",
        f,
        range(2, f.n),
        lambda gens, g: pg.is_primitive(gens, f.n),
        "primitivity",
        limit,
    )


@_timed
def certify_jordan_jones(f: SetFamily, limit: int = DEFAULT_ENUMERATION_LIMIT) -> CertResult:
    """A cycle with at least three fixed points forces the alternating group."""
    return _cycle_implies(
        "jordan-jones",
        f,
        range(2, f.n - 2),
        lambda gens, g: g.contains_alternating(),
        "alternating subgroup",
        limit,
    )


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


@_timed
def certify_prime_power_primitive(f: SetFamily, limit: int = DEFAULT_ENUMERATION_LIMIT) -> CertResult:
    name = "prime-power-primitive"
    gens, group = _transitive_group(f)
    if not is_prime_power(f.n):
        return _result(name, Status.VACUOUSLY_TRUE, detail=f"degree {f.n} is not a prime power")
    return _cycle_implies(name, f, [f.n], lambda gens, g: pg.is_primitive(gens, f.n), "primitivity", limit)


def pairwise_coprime(values: Sequence[int]) -> bool:
    return all(math.gcd(a, b) == 1 for i, a in enumerate(values) for b in values[i + 1 :])


def _splits(tree):
    if hasattr(tree, "children"):
        yield tree
        for child in tree.children:
            yield from _splits(child)


@_timed
def certify_imprimitive_decomposition(f: SetFamily, limit: int = DEFAULT_ENUMERATION_LIMIT) -> CertResult:
    """Imprimitive with a long cycle: the family splits into coprime primitive factors,
    each with a long cycle, and the group is their direct product."""
    name = "imprimitive-decomposition"
    gens, group = _transitive_group(f)
    if f.n < 2 or pg.is_primitive(gens, f.n):
        return _result(name, Status.VACUOUSLY_TRUE, detail="primitive")
    long_cycle = pg.cycle_containment(group, f.n, limit)
    if long_cycle.no:
        return _result(name, Status.VACUOUSLY_TRUE, detail="imprimitive, no long cycle")
    if long_cycle.undecided:
        return _result(name, Status.UNDECIDED, f, f"order {group.order} exceeds the enumeration limit", k=f.n)

    tree = decompose(f)
    leaves = tree.leaves()
    degrees = [leaf.degree for leaf in leaves]
    problems = []
    if len(leaves) < 2:
        problems.append("no factorization found")
    if any(d < 2 for d in degrees):
        problems.append("a factor has degree 1")
    if not pairwise_coprime(degrees):
        problems.append("factor degrees are not pairwise coprime")
    if math.prod(degrees) != f.n:
        problems.append("factor degrees do not multiply to n")
    if math.prod(leaf.group.order for leaf in leaves) != group.order:
        problems.append("factor orders do not multiply to the group order")
    undecided = []
    for leaf in leaves:
        lg = build_toggles(leaf.family).generators()
        if leaf.degree >= 2 and not pg.is_primitive(lg, leaf.degree):
            problems.append(f"factor {leaf.family} is imprimitive")
        if leaf.degree >= 2:
            c = pg.cycle_containment(leaf.group, leaf.degree, limit)
            if c.no:
                problems.append(f"factor {leaf.family} has no long cycle")
            elif c.undecided:
                undecided.append(str(leaf.family))
    for node in _splits(tree):
        if not verify_direct_product(node.family, node.factorization):
            problems.append(f"split of {node.family} is not a direct product")
    witness = {"degrees": degrees, "long_cycle": _perm(long_cycle.witness)}
    if problems:
        return _result(name, Status.FAIL, f, "; ".join(problems), **witness)
    if undecided:
        return _result(name, Status.UNDECIDED, f, "long cycle in a factor undecided", factors=undecided)
    return _result(name, Status.PASS, detail=f"degrees {degrees}")


def product_long_cycle(f1: SetFamily, f2: SetFamily, gamma: Permutation, delta: Permutation) -> Permutation:
    """The element ``(i, j) -> (gamma(i), delta(j))`` on ``cartesian_product(f1, f2)``.

    With ``gamma`` and ``delta`` long cycles of coprime lengths this is a
    long cycle of the product.
    """
    m = f2.n
    return Permutation(tuple(gamma(i) * m + delta(j) for i in range(f1.n) for j in range(m)))


@_timed
def certify_product_long_cycle(
    f1: SetFamily, f2: SetFamily, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> CertResult:
    """Both directions of: the product has a long cycle iff the factor sizes are
    coprime and both factors have long cycles. Each side is computed on its own."""
    name = "product-long-cycle"
    if f1.n < 2 or f2.n < 2:
        raise ValueError("both factors need at least two sets")
    f = cartesian_product(f1, f2)
    ell, m = f1.n, f2.n
    group = toggle_group(f)
    left = pg.cycle_containment(group, ell * m, limit)

    c1 = c2 = None
    if math.gcd(ell, m) != 1:
        right: bool | None = False
    else:
        c1 = pg.cycle_containment(toggle_group(f1), ell, limit)
        c2 = pg.cycle_containment(toggle_group(f2), m, limit)
        if c1.no or c2.no:
            right = False
        elif c1.undecided or c2.undecided:
            right = None
        else:
            right = True

    factors = {"factors": [f1.to_dict(), f2.to_dict()]}
    if left.undecided or right is None:
        return _result(name, Status.UNDECIDED, detail="containment undecided", **factors)
    if right:
        built = product_long_cycle(f1, f2, c1.witness, c2.witness)
        cyc = pg.cycle_decomposition(built)
        if not (cyc.is_single_cycle() and cyc.fixed_points == 0 and pg.contains_element(group, built)):
            return _result(
                name, Status.FAIL, detail="constructed product cycle is not a long cycle of the group",
                constructed=str(built), **factors,
            )
    if left.yes != right:
        return _result(
            name, Status.FAIL,
            detail=f"product long cycle: {left.answer.value}; factor condition: {right}",
            **factors,
        )
    return _result(name, Status.PASS, detail=f"l={ell}, m={m}, long cycle {'present' if right else 'absent'}")


# --------------------------------------------------------------------------
# Block-system lemma suite
# --------------------------------------------------------------------------


def _restriction_lengths(g: Permutation, block: Sequence[int]) -> tuple[int, ...]:
    inside = set(block)
    seen = set()
    lengths = []
    for start in block:
        if start in seen:
            continue
        x, length = start, 0
        while True:
            seen.add(x)
            x = g(x)
            length += 1
            if x == start:
                break
            if x not in inside:
                return ()
        if length > 1:
            lengths.append(length)
    return tuple(sorted(lengths))


def _restriction_is_odd(g: Permutation, block) -> bool:
    return sum(1 for c in _restriction_lengths(g, block) if c % 2 == 0) % 2 == 1


def _clause(name, violations: list, fired: int, f: SetFamily, bs: BlockSystem, detail="") -> CertResult:
    if violations:
        return _result(
            name, Status.FAIL, f, violations[0].pop("detail", detail),
            block_system=list(bs.block_of), **violations[0],
        )
    if not fired:
        return _result(name, Status.VACUOUSLY_TRUE, detail="hypothesis never met")
    return _result(name, Status.PASS, detail=f"{fired} instance(s) checked")


def check_lemma_suite(
    f: SetFamily,
    bs: BlockSystem,
    word_bound: int = DEFAULT_WORD_BOUND,
    word_cap: int = DEFAULT_WORD_CAP,
    toggles: dict[str, Permutation] | None = None,
    seed: int = 0,
) -> list[CertResult]:
    """Check the structural facts about type 1 / type 2 toggles on one block system.

    Products of toggles are taken from the breadth-first word ball of radius
    ``word_bound`` (all single toggles and all pairs come first), truncated
    at ``word_cap`` elements. ``toggles`` replaces the family's own toggles,
    which is how negative controls are injected.
    """
    if toggles is None:
        ts = build_toggles(f)
    else:
        ident = tuple(e for e, t in toggles.items() if t.is_identity())
        ts = ToggleSet(dict(toggles), ident)
    types = classify_toggles(f, ts, bs)
    active = ts.active()
    e1 = types.elements(ToggleType.TYPE1)
    e2 = types.elements(ToggleType.TYPE2)
    t1 = [active[e] for e in e1]
    t2 = [active[e] for e in e2]
    blocks = bs.blocks()
    masks = f.masks
    n = f.n
    results = []

    # type 1 toggle fixing a block setwise fixes it pointwise
    violations, fired = [], 0
    for e in e1:
        tau = active[e]
        for block in blocks:
            if all(bs.block_of[tau(p)] == bs.block_of[block[0]] for p in block):
                fired += 1
                if any(tau(p) != p for p in block):
                    violations.append({"toggle": e, "block": block})
    results.append(_clause("type1-setwise-fixed-block-is-pointwise", violations, fired, f, bs))

    # type 1 toggles commute with type 2 toggles
    violations, fired = [], 0
    for x in e1:
        for y in e2:
            fired += 1
            a, b = active[x], active[y]
            if a * b != b * a:
                violations.append({"type1": x, "type2": y, "ab": str(a * b), "ba": str(b * a)})
    results.append(_clause("type1-commutes-with-type2", violations, fired, f, bs))

    # a type 2 toggle has the same cycle type on every block
    violations, fired = [], 0
    for e in e2:
        fired += 1
        shapes = {tuple(block): _restriction_lengths(active[e], block) for block in blocks}
        if len(set(shapes.values())) > 1:
            violations.append({"toggle": e, "shapes": {str(list(k)): list(v) for k, v in shapes.items()}})
    results.append(_clause("type2-cycle-type-uniform-across-blocks", violations, fired, f, bs))

    ball2 = pg.word_ball(t2, n, word_bound, word_cap)
    ball1 = pg.word_ball(t1, n, word_bound, word_cap)

    # a product of type 2 toggles fixing one block pointwise is the identity
    violations, fired = [], 0
    for rho in ball2:
        for block in blocks:
            if all(rho(p) == p for p in block):
                fired += 1
                if not rho.is_identity():
                    violations.append({"element": str(rho), "block": block})
                break
    results.append(_clause("type2-product-fixing-a-block-is-trivial", violations, fired, f, bs))

    # a product of type 1 toggles acts on each block as symmetric difference with one set
    violations, fired = [], 0
    for sigma in ball1:
        for block in blocks:
            fired += 1
            delta = masks[block[0]] ^ masks[sigma(block[0])]
            bad = [p for p in block if masks[sigma(p)] != masks[p] ^ delta]
            if bad:
                violations.append({"element": str(sigma), "block": block, "point": bad[0]})
                break
    results.append(_clause("type1-product-is-symmetric-difference", violations, fired, f, bs))

    # words over disjoint ground subsets agree at A only where both fix A
    violations, fired = [], 0
    rng = random.Random(seed)
    splits = [(e1, e2)]
    for _ in range(3):
        labels = list(active)
        rng.shuffle(labels)
        cut = rng.randint(0, len(labels))
        splits.append((sorted(labels[:cut], key=f.position.get), sorted(labels[cut:], key=f.position.get)))
    for xs, ys in splits:
        sig = pg.word_ball([active[e] for e in xs], n, word_bound, word_cap)
        rho = pg.word_ball([active[e] for e in ys], n, word_bound, word_cap)
        fired += 1
        for a in range(n):
            moved_s = {s(a) for s in sig} - {a}
            moved_r = {r(a) for r in rho} - {a}
            common = moved_s & moved_r
            if common:
                violations.append({"X": xs, "Y": ys, "point": a, "image": min(common)})
                break
    results.append(_clause("disjoint-words-agree-only-at-common-fixed-points", violations, fired, f, bs))

    nontrivial = not bs.is_trivial()

    # odd block size: the family factors along this block system
    violations, fired = [], 0
    if nontrivial and bs.block_size % 2 == 1:
        fired += 1
        fact = try_factor(f, bs)
        if fact is None or fact.ell < 2 or fact.m < 2:
            violations.append({"detail": "odd block size but no Cartesian factorization"})
    results.append(_clause("odd-block-size-factors", violations, fired, f, bs))

    # a type 1 product returning a block to itself nontrivially makes every type 2
    # restriction even; an odd type 2 restriction forces a factorization
    violations, fired = [], 0
    if nontrivial:
        returning = next(
            (s for s in ball1 for block in blocks
             if fixes_block_setwise(s, block, bs) and any(s(p) != p for p in block)),
            None,
        )
        if returning is not None:
            fired += 1
            odd = [(e, block) for e in e2 for block in blocks if _restriction_is_odd(active[e], block)]
            if odd:
                violations.append({
                    "detail": "type 2 toggle odd on a block despite a nontrivial returning type 1 product",
                    "type1_product": str(returning), "toggle": odd[0][0], "block": odd[0][1],
                })
        odd_any = any(_restriction_is_odd(active[e], block) for e in e2 for block in blocks)
        if odd_any:
            fired += 1
            fact = try_factor(f, bs)
            if fact is None or fact.ell < 2 or fact.m < 2:
                violations.append({"detail": "odd type 2 restriction but no Cartesian factorization"})
    results.append(_clause("odd-type2-restriction-factors", violations, fired, f, bs))
    return results


def fixes_block_setwise(g: Permutation, block: Sequence[int], bs: BlockSystem) -> bool:
    target = bs.block_of[block[0]]
    return all(bs.block_of[g(p)] == target for p in block)


LEMMA_CLAUSES = (
    "type1-setwise-fixed-block-is-pointwise",
    "type1-commutes-with-type2",
    "type2-cycle-type-uniform-across-blocks",
    "type2-product-fixing-a-block-is-trivial",
    "type1-product-is-symmetric-difference",
    "disjoint-words-agree-only-at-common-fixed-points",
    "odd-block-size-factors",
    "odd-type2-restriction-factors",
)


def lemma_results(
    f: SetFamily, word_bound=DEFAULT_WORD_BOUND, word_cap=DEFAULT_WORD_CAP, seed=0
) -> list[CertResult]:
    """Run the lemma suite on every nontrivial block system of ``f``; one combined
    result per clause (the most severe status wins)."""
    gens, _ = _transitive_group(f)
    combined: dict[str, CertResult] = {}
    systems = pg.nontrivial_block_systems(gens, f.n) if f.n >= 2 else []
    for bs in systems:
        for res in check_lemma_suite(f, bs, word_bound, word_cap, seed=seed):
            prev = combined.get(res.name)
            if prev is None or _SEVERITY[res.status] > _SEVERITY[prev.status]:
                combined[res.name] = res
    return [
        combined.get(name, CertResult(name, Status.VACUOUSLY_TRUE, None, "primitive")) for name in LEMMA_CLAUSES
    ]


FAMILY_CERTIFIERS: dict[str, Callable[..., CertResult]] = {
    "transposition": certify_transposition,
    "three-cycle": certify_three_cycle,
    "short-cycle-primitive": certify_short_cycle_primitive,
    "jordan-jones": certify_jordan_jones,
    "imprimitive-decomposition": certify_imprimitive_decomposition,
    "prime-power-primitive": certify_prime_power_primitive,
}

SUITES = tuple(FAMILY_CERTIFIERS) + ("lemmas",)


def resolve_suite(selection: str | Iterable[str] | None) -> list[str]:
    if selection is None or selection == "all":
        return list(SUITES)
    if isinstance(selection, str):
        selection = [s.strip() for s in selection.split(",") if s.strip()]
    names = list(selection)
    if "all" in names:
        return list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown certifier(s) {unknown}; choose from {', '.join(SUITES)}")
    return [s for s in SUITES if s in names]


def certify_family(
    f: SetFamily,
    suite: Sequence[str] = SUITES,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    word_bound: int = DEFAULT_WORD_BOUND,
    word_cap: int = DEFAULT_WORD_CAP,
    seed: int = 0,
) -> list[CertResult]:
    out = []
    for name in suite:
        if name == "lemmas":
            out.extend(lemma_results(f, word_bound, word_cap, seed))
        else:
            out.append(FAMILY_CERTIFIERS[name](f, limit=limit))
    return out


def replay(witness: dict, limit: int = DEFAULT_ENUMERATION_LIMIT, **kwargs) -> CertResult:
    """Rerun the certifier named in a witness payload on the family it records."""
    name = witness["certifier"]
    if name == "product-long-cycle":
        f1, f2 = (SetFamily(d["ground"], d["sets"]) for d in witness["factors"])
        return certify_product_long_cycle(f1, f2, limit=limit)
    f = SetFamily(witness["family"]["ground"], witness["family"]["sets"])
    if name in FAMILY_CERTIFIERS:
        return FAMILY_CERTIFIERS[name](f, limit=limit)
    if name in LEMMA_CLAUSES:
        bs = BlockSystem.from_labels(witness["block_system"])
        return next(r for r in check_lemma_suite(f, bs, **kwargs) if r.name == name)
    raise KeyError(f"unknown certifier {name!r}")


# --------------------------------------------------------------------------
# Sweeps
# --------------------------------------------------------------------------


@dataclass
class SweepReport:
    families_examined: int = 0
    skipped_intransitive: int = 0
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[CertResult] = field(default_factory=list)
    undecided: list[dict] = field(default_factory=list)
    settings: dict = field(default_factory=dict)

    @property
    def undecided_rate(self) -> float:
        return len(self.undecided) / self.families_examined if self.families_examined else 0.0

    @property
    def fail_count(self) -> int:
        return sum(t.get(Status.FAIL.value, 0) for t in self.tallies.values())

    def record(self, f: SetFamily, results: Sequence[CertResult]) -> None:
        self.families_examined += 1
        open_names = []
        for res in results:
            tally = self.tallies.setdefault(res.name, {s.value: 0 for s in Status})
            tally[res.status.value] += 1
            if res.status is Status.FAIL:
                self.failures.append(res)
            elif res.status is Status.UNDECIDED:
                open_names.append(res.name)
        if open_names:
            self.undecided.append({"family": f.to_dict(), "certifiers": open_names})

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "sweep",
            "settings": self.settings,
            "families_examined": self.families_examined,
            "skipped_intransitive": self.skipped_intransitive,
            "tallies": self.tallies,
            "undecided_rate": round(self.undecided_rate, 6),
            "undecided": self.undecided,
            "failures": [r.to_dict() for r in self.failures],
        }

    def summary_table(self) -> str:
        cols = [s.value for s in Status]
        width = max([len("certifier")] + [len(k) for k in self.tallies])
        lines = [f"{'certifier':<{width}}  " + "  ".join(f"{c:>14}" for c in cols)]
        for name, tally in self.tallies.items():
            lines.append(f"{name:<{width}}  " + "  ".join(f"{tally[c]:>14}" for c in cols))
        lines.append(
            f"families examined: {self.families_examined}  (skipped intransitive: {self.skipped_intransitive})"
        )
        lines.append(f"undecided rate: {self.undecided_rate:.4f}   failures: {len(self.failures)}")
        return "\n".join(lines)


def _work(args):
    f, suite, limit, word_bound, word_cap, seed = args
    if not pg.is_transitive(build_toggles(f).generators(), f.n):
        return f, None
    return f, certify_family(f, suite, limit, word_bound, word_cap, seed)


def sweep_families(
    families: Iterable[SetFamily],
    suite=None,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    word_bound: int = DEFAULT_WORD_BOUND,
    word_cap: int = DEFAULT_WORD_CAP,
    seed: int = 0,
    workers: int = 1,
    settings: dict | None = None,
) -> SweepReport:
    """Certify every transitive family in ``families``; results keep input order."""
    names = resolve_suite(suite)
    report = SweepReport(settings=dict(settings or {}))
    report.settings.update(
        {"certifiers": names, "enumeration_limit": limit, "word_bound": word_bound, "word_cap": word_cap}
    )
    jobs = ((f, names, limit, word_bound, word_cap, seed) for f in families)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_work, jobs, chunksize=16))
    else:
        outcomes = map(_work, jobs)
    for f, results in outcomes:
        if results is None:
            report.skipped_intransitive += 1
        else:
            report.record(f, results)
    return report


def sweep(stream: FamilyStream, certifiers=None, **kwargs) -> SweepReport:
    check_stream(stream)
    settings = {"stream": stream.describe()}
    return sweep_families(enumerate_families(stream), certifiers, settings=settings, **kwargs)


def survey_exceptionals(stream: FamilyStream, limit: int = DEFAULT_ENUMERATION_LIMIT) -> dict:
    """Primitive toggle groups with a cycle of length n, n-1 or n-2 that miss A_n.

    Only decided containment answers count. Each candidate is re-verified
    against a brute-force closure of the toggles. An empty list is a bounded
    search result, not a statement about all toggle groups.
    """
    check_stream(stream)
    examined = primitive = undecided = 0
    candidates = []
    for f in enumerate_families(stream):
        gens = build_toggles(f).generators()
        if f.n < 3 or not pg.is_transitive(gens, f.n):
            continue
        examined += 1
        if not pg.is_primitive(gens, f.n):
            continue
        primitive += 1
        group = toggle_group(f)
        if group.contains_alternating():
            continue
        lengths = [k for k in (f.n, f.n - 1, f.n - 2) if k >= 2]
        hyp = _hypothesis(group, lengths, limit)
        if hyp is None:
            continue
        if hyp.undecided:
            undecided += 1
            continue
        candidates.append(
            {
                "family": f.to_dict(),
                "degree": f.n,
                "order": str(group.order),
                "cycle_length": hyp.k,
                "witness": str(hyp.witness),
                "reverified": _reverify(f, group, hyp, limit),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "survey",
        "stream": stream.describe(),
        "enumeration_limit": limit,
        "families_examined": examined,
        "primitive": primitive,
        "undecided": undecided,
        "candidates": candidates,
        "search_bound": f"families over at most {stream.ground_size} ground elements ({stream.mode})",
    }


def _reverify(f: SetFamily, group, hyp, limit: int) -> bool:
    gens = build_toggles(f).generators()
    try:
        elements = pg.closure(gens, f.n, cap=limit)
    except OverflowError:
        return False
    cyc = pg.cycle_decomposition(hyp.witness)
    return (
        len(elements) == group.order
        and hyp.witness in elements
        and cyc.is_single_cycle()
        and len(cyc.cycles[0]) == hyp.k
    )
