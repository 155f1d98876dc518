"""Command-line interface.

Problems are JSON files describing a based root datum, a finite
component group, and its action on the based datum.  Every command is
deterministic: reports are emitted with sorted keys and stable ordering,
so identical inputs give byte-identical output.

Exit codes: 0 success, 1 invalid input, 2 budget exceeded, 3 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .abgroup import DiagonalizableGroup
from .autbrd import (AdHom, ad_from_element_images, ad_from_generator_images,
                     require_valid_ad, trivial_ad)
from .errors import BudgetExceededError, InternalCheckError, ValidationError
from .extension import Classification, classify
from .grouptable import FiniteGroup, cyclic, from_generators, validate_table
from .rootdatum import (BasedRootDatum, RootDatum, center, dynkin,
                        positive_systems, require_valid_based, weyl_generate)
from .standard import from_simple

SCHEMA_VERSION = 1


def load_problem(path):
    """Parse and validate a problem file; raises ValidationError on any
    malformed input."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ValidationError(f"cannot read problem file: {e}")
    except json.JSONDecodeError as e:
        raise ValidationError(f"problem file is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ValidationError("problem file must contain a JSON object")
    if data.get("schema") != SCHEMA_VERSION:
        raise ValidationError(
            f"unsupported schema version {data.get('schema')!r}; "
            f"expected {SCHEMA_VERSION}")
    return data


def _parse_based(data) -> BasedRootDatum:
    try:
        d = data["datum"]
        rank = int(d["rank"])
        if "roots" in d:
            datum = RootDatum(rank, tuple(map(tuple, d["roots"])),
                              tuple(map(tuple, d["coroots"])))
            based = BasedRootDatum(datum, tuple(d["simple_indices"]))
        else:
            based = from_simple(rank, d["simple_roots"], d["simple_coroots"])
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"malformed datum section: {e}")
    require_valid_based(based)
    return based


def _parse_gamma(data) -> FiniteGroup:
    try:
        g = data["gamma"]
        kind = g["type"]
        if kind == "cyclic":
            return cyclic(int(g["n"]))
        if kind == "permutations":
            return from_generators(int(g["degree"]), g["generators"])
        if kind == "table":
            return validate_table(g["table"])
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"malformed gamma section: {e}")
    raise ValidationError(f"unknown gamma type {kind!r}")


def _parse_ad(data, based, gamma) -> AdHom:
    try:
        a = data.get("ad", {"type": "trivial"})
        kind = a["type"]
        if kind == "trivial":
            ad = trivial_ad(based, gamma)
        elif kind == "generators":
            ad = ad_from_generator_images(based, gamma, a["matrices"])
        elif kind == "elements":
            ad = ad_from_element_images(based, gamma, a["matrices"])
        else:
            raise ValidationError(f"unknown ad type {kind!r}")
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"malformed ad section: {e}")
    require_valid_ad(based, ad)
    return ad


def _group_json(G):
    return {"free_rank": G.free_rank,
            "invariant_factors": list(G.invariant_factors),
            "description": G.describe()}


def _diag_json(Z: DiagonalizableGroup):
    return {"torus_rank": Z.torus_rank,
            "finite_invariant_factors": list(Z.finite_part.invariant_factors),
            "description": Z.describe()}


def _cochain_json(c):
    return [[list(k), list(v)] for k, v in c.values]


def _classification_json(cls: Classification):
    return {
        "center": _diag_json(cls.center),
        "h2": _group_json(cls.group),
        "k_used": cls.k_used,
        "torsion_level": cls.torsion_level,
        "tower_orders": list(cls.tower_orders),
        "coefficient_group": _group_json(cls.module.coeff),
        "classes": [
            {"coordinates": list(d.coordinates),
             "is_split": d.is_split,
             "torsion_level": d.torsion_level,
             "cocycle": _cochain_json(d.cocycle)}
            for d in cls.descriptors
        ],
    }


def emit(report, fmt, text_lines):
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_check(args):
    data = load_problem(args.input)
    based = _parse_based(data)
    gamma = _parse_gamma(data)
    _parse_ad(data, based, gamma)
    report = {"command": "check", "ok": True,
              "problem": data.get("name"),
              "rank": based.datum.rank,
              "num_roots": based.datum.nroots,
              "gamma_order": gamma.order}
    emit(report, args.format, [
        f"problem: {data.get('name')}",
        f"datum: rank {based.datum.rank}, {based.datum.nroots} roots",
        f"gamma: order {gamma.order}",
        "all validations passed",
    ])
    return 0


def cmd_center(args):
    data = load_problem(args.input)
    based = _parse_based(data)
    Z = center(based.datum)
    report = {"command": "center", "problem": data.get("name"),
              "center": _diag_json(Z)}
    emit(report, args.format, [f"Z(G) = {Z.describe()}"])
    return 0


def cmd_weyl(args):
    data = load_problem(args.input)
    based = _parse_based(data)
    W = weyl_generate(based)
    systems = positive_systems(based.datum, W, based)
    report = {"command": "weyl", "problem": data.get("name"),
              "order": W.order, "positive_systems": len(systems)}
    emit(report, args.format, [
        f"|W| = {W.order}",
        f"positive systems: {len(systems)}",
    ])
    return 0


def cmd_dynkin(args):
    data = load_problem(args.input)
    based = _parse_based(data)
    diag = dynkin(based)
    report = {"command": "dynkin", "problem": data.get("name"),
              "vertices": list(diag.vertices),
              "edges": [list(e) for e in diag.edges]}
    lines = [f"vertices: {len(diag.vertices)}"]
    for i, j, down, up in diag.edges:
        lines.append(f"edge {i} -- {j}  pairings ({down}, {up})")
    emit(report, args.format, lines)
    return 0


def cmd_classify(args):
    data = load_problem(args.input)
    based = _parse_based(data)
    gamma = _parse_gamma(data)
    ad = _parse_ad(data, based, gamma)
    max_k = args.max_k if args.max_k is not None else int(data.get("max_k", 4))
    cls = classify(based, ad, max_k=max_k, budget=args.budget)
    report = {"command": "classify", "problem": data.get("name"),
              "seed": args.seed}
    report.update(_classification_json(cls))
    lines = [
        f"Z(G) = {cls.center.describe()}",
        f"H^2(Gamma, Z_fin) = {cls.group.describe()}"
        f"  (stable at torsion level {cls.torsion_level})",
        f"classes: {len(cls.descriptors)}",
    ]
    for d in cls.descriptors:
        tag = "split" if d.is_split else "nonsplit"
        lines.append(f"  class {list(d.coordinates)} [{tag}] "
                     f"cocycle {_cochain_json(d.cocycle)}")
    emit(report, args.format, lines)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="discred",
        description="Disconnected reductive groups over a based root datum: "
                    "centers, Weyl groups, and extension classification.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, desc in [
        ("check", cmd_check, "validate a problem file"),
        ("center", cmd_center, "center of the connected group"),
        ("weyl", cmd_weyl, "Weyl group order and positive systems"),
        ("dynkin", cmd_dynkin, "Dynkin diagram of the based datum"),
        ("classify", cmd_classify,
         "classify disconnected groups with the given component data"),
    ]:
        sp = sub.add_parser(name, description=desc)
        sp.add_argument("--input", required=True, help="problem JSON file")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--budget", type=int, default=2_000_000,
                        help="cap on intermediate problem size")
        sp.add_argument("--seed", type=int, default=0,
                        help="recorded in reports; all computations are "
                             "deterministic")
        if name == "classify":
            sp.add_argument("--max-k", type=int, default=None,
                            help="torsion tower depth limit")
        sp.set_defaults(fn=fn)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    except InternalCheckError as e:
        print(f"internal check failed: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
