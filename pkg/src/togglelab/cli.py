"""Command-line front end.

Exit status: 0 success, 1 certification failure, 2 input error.
Settings resolve as flag > ``TOGGLE_LAB_*`` environment variable > default,
and the effective values are echoed into every report.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import permgroup as pg
from .certify import (
    SCHEMA_VERSION,
    SUITES,
    resolve_suite,
    survey_exceptionals,
    sweep,
    sweep_families,
)
from .errors import ToggleLabError
from .generators import FamilyStream, order_ideals, parse_poset
from .togglecore import (
    Leaf,
    SetFamily,
    build_toggles,
    decompose,
    dump_family,
    format_set,
    normalize,
    parse_family,
    toggle_group,
    verify_direct_product,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
ENV_PREFIX = "TOGGLE_LAB_"


@dataclass(frozen=True)
class RunConfig:
    enumeration_limit: int = pg.DEFAULT_ENUMERATION_LIMIT
    word_bound: int = 8
    seed: int = 42
    output_mode: str = "human"
    workers: int = 1

    def __post_init__(self):
        for name in ("enumeration_limit", "word_bound", "workers"):
            if getattr(self, name) < 1:
                raise ToggleLabError(f"{name} must be positive")
        if self.output_mode not in ("human", "structured"):
            raise ToggleLabError(f"output mode must be 'human' or 'structured', not {self.output_mode!r}")


def resolve_config(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    values = {}
    for name, kind in (("enumeration_limit", int), ("word_bound", int), ("seed", int),
                       ("output_mode", str), ("workers", int)):
        flag = getattr(args, name, None)
        env = environ.get(ENV_PREFIX + name.upper())
        if flag is not None:
            values[name] = flag
        elif env is not None:
            try:
                values[name] = kind(env)
            except ValueError:
                raise ToggleLabError(f"{ENV_PREFIX + name.upper()}={env!r} is not a valid {kind.__name__}")
    return RunConfig(**values)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ToggleLabError(f"cannot read {path}: {exc.strerror}") from None


def _load_family(path: str) -> SetFamily:
    try:
        return parse_family(_read(path))
    except ToggleLabError as exc:
        raise ToggleLabError(f"{path}: {exc}") from None


def _emit(args, config: RunConfig, doc: dict, human: str) -> None:
    if config.output_mode == "structured":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = human.rstrip("\n") + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _envelope(kind: str, config: RunConfig, **body) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "config": asdict(config), **body}


def cmd_analyze(args, config: RunConfig) -> int:
    raw = _load_family(args.family_file)
    f, removed = normalize(raw)
    ts = build_toggles(f)
    gens = ts.generators()
    group = toggle_group(f)
    transitive = pg.is_transitive(gens, f.n)
    lines = [f"family: {f}", f"removed ground elements: {removed or 'none'}", "toggles:"]
    toggles = {}
    for e, t in ts.toggles.items():
        toggles[e] = str(t)
        lines.append(f"  {e}: {t}" + ("  (identity)" if e in ts.identity_toggles else ""))
    lines += [f"degree: {f.n}", f"order: {group.order}", f"transitive: {transitive}"]
    doc = {
        "family": f.to_dict(),
        "removed": removed,
        "toggles": toggles,
        "identity_toggles": list(ts.identity_toggles),
        "degree": f.n,
        "order": str(group.order),
        "transitive": transitive,
    }
    if transitive:
        systems = pg.nontrivial_block_systems(gens, f.n) if f.n >= 2 else []
        primitive = not systems
        doc["block_systems"] = [[[format_set(f.sets[p]) for p in b] for b in bs.blocks()] for bs in systems]
        doc["primitive"] = primitive
        doc["primitivity_applicable"] = f.n >= 2
        lines.append(f"nontrivial block systems: {len(systems)}")
        for bs in systems:
            lines.append("  " + " | ".join(" ".join(format_set(f.sets[p]) for p in b) for b in bs.blocks()))
        lines.append(f"primitive: {primitive}" + ("" if f.n >= 2 else " (degree 1, not applicable)"))
    else:
        doc["orbits"] = pg.orbits(gens, f.n)
        lines.append(f"orbits: {doc['orbits']}")
    spectrum = {}
    if f.n >= 2:
        lines.append("cycle spectrum:")
        for k, c in pg.cycle_spectrum(group, config.enumeration_limit).items():
            spectrum[str(k)] = {"answer": c.answer.value, "reason": c.reason, "witness": c.witness and str(c.witness)}
            lines.append(f"  {k}-cycle: {c.answer.value} ({c.reason})" + (f" e.g. {c.witness}" if c.witness else ""))
    doc["cycle_spectrum"] = spectrum
    _emit(args, config, _envelope("analysis", config, **doc), "\n".join(lines))
    return EXIT_OK


def _tree_doc(tree, limit):
    if isinstance(tree, Leaf):
        c = pg.cycle_containment(tree.group, tree.degree, limit) if tree.degree >= 2 else None
        return {
            "leaf": True,
            "ground": list(tree.family.ground),
            "degree": tree.degree,
            "order": str(tree.group.order),
            "long_cycle": c.answer.value if c else "n/a",
        }
    return {
        "leaf": False,
        "ground": list(tree.family.ground),
        "degree": tree.degree,
        "order": str(tree.group.order),
        "E1": list(tree.factorization.E1),
        "E2": list(tree.factorization.E2),
        "direct_product": verify_direct_product(tree.family, tree.factorization),
        "children": [_tree_doc(c, limit) for c in tree.children],
    }


def _tree_lines(doc, depth=0):
    pad = "  " * depth
    if doc["leaf"]:
        return [f"{pad}leaf  degree {doc['degree']}  order {doc['order']}  ground {doc['ground']}  "
                f"long cycle: {doc['long_cycle']}"]
    lines = [f"{pad}split degree {doc['degree']}  order {doc['order']}  E1 {doc['E1']}  E2 {doc['E2']}  "
             f"direct product: {doc['direct_product']}"]
    for child in doc["children"]:
        lines += _tree_lines(child, depth + 1)
    return lines


def cmd_decompose(args, config: RunConfig) -> int:
    f, _ = normalize(_load_family(args.family_file))
    tree = decompose(f)
    leaves = tree.leaves()
    leaf_orders = [leaf.group.order for leaf in leaves]
    identity_holds = math.prod(leaf_orders) == tree.group.order
    doc = _tree_doc(tree, config.enumeration_limit)
    lines = _tree_lines(doc)
    lines.append(
        f"order identity: {tree.group.order} = {' * '.join(map(str, leaf_orders))}  "
        f"({'holds' if identity_holds else 'FAILS'})"
    )
    _emit(args, config, _envelope("decomposition", config, tree=doc,
                                  leaf_degrees=[leaf.degree for leaf in leaves],
                                  leaf_orders=[str(o) for o in leaf_orders],
                                  order_identity=identity_holds), "\n".join(lines))
    return EXIT_OK


def cmd_certify(args, config: RunConfig) -> int:
    suite = resolve_suite(args.suite)
    kwargs = dict(limit=config.enumeration_limit, word_bound=config.word_bound, seed=config.seed,
                  workers=config.workers)
    if args.family:
        f, _ = normalize(_load_family(args.family))
        if not pg.is_transitive(build_toggles(f).generators(), f.n):
            raise ToggleLabError(f"{args.family}: toggle group is not transitive")
        report = sweep_families([f], suite, settings={"stream": {"family_file": args.family}}, **kwargs)
    else:
        if args.exhaustive is not None:
            stream = FamilyStream(args.exhaustive, "exhaustive", transitive_only=True)
        else:
            k, count = args.sample
            stream = FamilyStream(k, "sampled", seed=config.seed, count=count, transitive_only=True)
        report = sweep(stream, suite, **kwargs)
    doc = _envelope("certification", config, report=report.to_dict())
    human = report.summary_table()
    for res in report.failures:
        human += f"\nFAIL {res.name}: {res.detail}\n  witness: {json.dumps(res.witness, sort_keys=True)}"
    if report.undecided_rate > 0.05:
        human += "\nundecided families:\n" + "\n".join(json.dumps(u, sort_keys=True) for u in report.undecided)
    _emit(args, config, doc, human)
    return EXIT_FAIL if report.fail_count else EXIT_OK


def cmd_gen_ideals(args, config: RunConfig) -> int:
    try:
        poset = parse_poset(_read(args.poset_file))
    except ToggleLabError as exc:
        raise ToggleLabError(f"{args.poset_file}: {exc}") from None
    text = dump_family(order_ideals(poset))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_survey(args, config: RunConfig) -> int:
    if args.sample is not None:
        stream = FamilyStream(args.ground_size, "sampled", seed=config.seed, count=args.sample, transitive_only=True)
    else:
        stream = FamilyStream(args.ground_size, "exhaustive")
    result = survey_exceptionals(stream, config.enumeration_limit)
    lines = [
        f"search bound: {result['search_bound']}",
        f"transitive families examined: {result['families_examined']}  primitive: {result['primitive']}  "
        f"undecided: {result['undecided']}",
        f"candidates: {len(result['candidates'])}",
    ]
    for c in result["candidates"]:
        lines.append(f"  degree {c['degree']} order {c['order']} {c['cycle_length']}-cycle {c['witness']} "
                     f"re-verified: {c['reverified']}  {c['family']}")
    _emit(args, config, _envelope("survey", config, survey=result), "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--enumeration-limit", dest="enumeration_limit", type=int,
                        help="largest group order enumerated for exact cycle containment")
    common.add_argument("--word-bound", dest="word_bound", type=int, help="word length for lemma checks")
    common.add_argument("--seed", type=int, help="sampling seed")
    common.add_argument("--output", dest="output_mode", choices=("human", "structured"))
    common.add_argument("--workers", type=int, help="worker processes for sweeps")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="togglelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="group structure of one family")
    p.add_argument("family_file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", parents=[common], help="factor a family into Cartesian factors")
    p.add_argument("family_file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("certify", parents=[common], help="run certifiers over families")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--exhaustive", type=int, metavar="K")
    src.add_argument("--sample", type=int, nargs=2, metavar=("K", "COUNT"))
    src.add_argument("--family", metavar="FILE")
    p.add_argument("--suite", default="all", help="comma-separated subset of: all, " + ", ".join(SUITES))
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gen-ideals", parents=[common], help="write the order-ideal family of a poset")
    p.add_argument("poset_file")
    p.set_defaults(func=cmd_gen_ideals)

    p = sub.add_parser("survey", parents=[common], help="search for primitive groups with long cycles missing A_n")
    p.add_argument("--ground-size", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int, metavar="COUNT")
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        return args.func(args, config)
    except (ToggleLabError, ValueError) as exc:
        print(f"togglelab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
