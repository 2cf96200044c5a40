"""Command line front-end: ``groupoidal <command> FILE... [options]``.

Exit codes: 0 success, 1 validation or domain failure, 2 search budget
exceeded, 3 input, schema or usage error.  Failures print an error object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import algebra, bibundle, cocycles, fundamental, homology, io, leaves
from .errors import GroupoidalError, SchemaError, default_budget
from .groupoid import FiniteGroupoid, effect, is_essential_equivalence, orbit_space, vertex_group
from .intlinalg import AbelianGroupDescriptor
from .simplicial import SimplicialActionGroupoid


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(f"usage: {message}")


def _load(kind: str, path: str) -> Any:
    return io.load(kind, path)


def _groupoidish(path: str):
    data = io.read_json(path)
    loader = io.Loader(Path(path).parent)
    return loader.action(data) if io.is_simplicial(data) else loader.groupoid(data)


def _detect(data: Any) -> str:
    if not isinstance(data, dict):
        raise SchemaError("top-level JSON value must be an object")
    keys = set(data)
    if io.is_simplicial(data):
        return "action"
    if {"vertices", "facets"} <= keys:
        return "complex"
    if {"generators", "relators"} <= keys:
        return "presentation"
    if "pieces" in keys or data.get("standard") == "circle":
        return "cocycle"
    if keys & {"total", "angs", "tensor", "invert"} or ("unit" in keys and "objects" not in keys):
        return "bibundle"
    if {"source", "target"} <= keys or keys & {"identity", "effect"}:
        return "functor"
    if "compose" in keys and "objects" not in keys:
        return "functor"
    return "groupoid"


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


def _groupoid_summary(G: FiniteGroupoid) -> dict:
    return G.summary()


def _bundle_summary(E: bibundle.Bibundle) -> dict:
    return {
        "left": E.left.summary(),
        "right": E.right.summary(),
        "total": len(E.total),
        **bibundle.classify_bundle(E).to_json(),
    }


def _csv(text: Optional[str]) -> list:
    """Comma separated names, or a JSON list when ids contain commas."""
    text = (text or "").strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
        except ValueError as exc:
            raise SchemaError(f"bad list argument: {exc}") from exc
        if not (isinstance(items, list) and all(isinstance(t, str) for t in items)):
            raise SchemaError("list argument must be a JSON list of strings")
        return items
    return [t for t in text.split(",") if t]


# commands


def cmd_validate(args) -> dict:
    data = io.read_json(args.file)
    kind = _detect(data)
    obj = getattr(io.Loader(Path(args.file).parent), kind)(data)
    out: dict = {"kind": kind, "valid": True}
    if kind == "groupoid":
        out.update(_groupoid_summary(obj))
    elif kind == "bibundle":
        out.update(_bundle_summary(obj))
    elif kind == "functor":
        out.update({"source": obj.source.summary(), "target": obj.target.summary()})
    elif kind == "cocycle":
        out.update({"pieces": len(obj.cover.pieces), "base": len(obj.cover.base), "target": obj.target.summary()})
    elif kind == "action":
        out.update({"group_order": obj.group.order, "vertices": len(obj.complex.vertices), "dimension": obj.complex.dimension})
    elif kind == "complex":
        out.update({"vertices": len(obj.vertices), "dimension": obj.dimension})
    elif kind == "presentation":
        out.update({"generators": len(obj.generators), "relators": len(obj.relators)})
    return out


def cmd_info(args) -> dict:
    G = _load("groupoid", args.file)
    orbits = orbit_space(G)
    return {
        **G.summary(),
        "orbit_blocks": [list(b) for b in orbits.blocks],
        "vertex_group_orders": {b[0]: vertex_group(G, b[0]).order for b in orbits.blocks},
    }


def cmd_orbits(args) -> dict:
    G = _load("groupoid", args.file)
    return {"orbits": [list(b) for b in orbit_space(G).blocks]}


def cmd_vertex_group(args) -> dict:
    G = _load("groupoid", args.file)
    base = args.base or G.objects[0]
    V = fundamental.pi1_discrete(G, base)
    return {
        "base": base,
        "order": V.order,
        "elements": list(V.elements),
        "generators": list(V.generators),
        "abelian": V.is_abelian(),
    }


def cmd_effect(args) -> dict:
    G = _load("groupoid", args.file)
    E, psi = effect(G)
    return {"groupoid": G.summary(), "effect": E.summary(), "functor": dict(sorted(psi.mor_map.items()))}


def cmd_ess_equiv(args) -> dict:
    phi = _load("functor", args.file)
    return is_essential_equivalence(phi).to_json()


def cmd_tensor(args) -> dict:
    E, F = _load("bibundle", args.file), _load("bibundle", args.second)
    T = bibundle.tensor(E, F)
    return {**_bundle_summary(T), "bundle": io.bibundle_to_json(T)}


def cmd_invert(args) -> dict:
    E = _load("bibundle", args.file)
    inv = bibundle.invert(E, budget=_budget(args))
    return {**_bundle_summary(inv), "bundle": io.bibundle_to_json(inv)}


def cmd_iso(args) -> dict:
    E, F = _load("bibundle", args.file), _load("bibundle", args.second)
    f = bibundle.are_isomorphic(E, F, _budget(args))
    return {"isomorphic": f is not None, "map": None if f is None else f.to_json()}


def cmd_morita(args) -> dict:
    G, H = _load("groupoid", args.file), _load("groupoid", args.second)
    v = bibundle.morita_equivalent(G, H, _budget(args))
    out = {"equivalent": v.equivalent}
    if v.witness is not None:
        out["witness"] = _bundle_summary(v.witness)
    if v.reason is not None:
        out["reason"] = v.reason
    return out


def cmd_leaves(args) -> dict:
    E = _load("bibundle", args.file)
    return {"leaves": [leaf.to_json() for leaf in leaves.leaves(E)]}


def cmd_holonomy(args) -> dict:
    E = _load("bibundle", args.file)
    steps = tuple(_csv(args.loop))
    e = args.element or E.total[0]
    if e not in E.w:
        raise SchemaError("unknown bundle element", element=e)
    loop = leaves.HLoop(E.w[e], steps)
    return {"element": e, "loop": list(steps), "holonomy": leaves.holonomy_of_loop(E, e, loop)}


def cmd_sigma(args) -> dict:
    c = _load("cocycle", args.file)
    S = cocycles.sigma(c)
    return {**_bundle_summary(S), "bundle": io.bibundle_to_json(S)}


def cmd_extract_cocycle(args) -> dict:
    E = _load("bibundle", args.file)
    c = cocycles.extract_cocycle(E)
    return {"cocycle": io.cocycle_to_json(c)}


def cmd_cohomologous(args) -> dict:
    c, c2 = _load("cocycle", args.file), _load("cocycle", args.second)
    b = cocycles.cohomologous(c, c2)
    return {
        "cohomologous": b is not None,
        "intertwiner": None if b is None else sorted([i, x, g] for (i, x), g in b.items()),
    }


def _coefficients(args) -> AbelianGroupDescriptor:
    try:
        return AbelianGroupDescriptor.parse(args.coefficients or "Z")
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def cmd_homology(args) -> dict:
    X = _groupoidish(args.file)
    A = _coefficients(args)
    fn = homology.groupoid_cohomology if args.cohomology else homology.groupoid_homology
    return fn(X, args.n, A).to_json(args.n)


def cmd_balanced(args) -> dict:
    X = _groupoidish(args.file)
    A = _coefficients(args)
    les = homology.balanced_les(X, A, None if isinstance(X, SimplicialActionGroupoid) else max(homology.DEFAULT_DISCRETE_TOP, args.n + 2))
    return {**homology.balanced_homology(X, args.n, A).to_json(args.n), "les_exact": les.all_exact}


def cmd_mv_check(args) -> dict:
    X = _groupoidish(args.file)
    return homology.mayer_vietoris_check(X, _csv(args.u), _csv(args.v)).to_json()


def cmd_pi1(args) -> dict:
    X = _groupoidish(args.file)
    if isinstance(X, SimplicialActionGroupoid):
        r = fundamental.pi1_action_groupoid(X, args.base)
        return {**r.to_json(), "abelianization": fundamental.abelianization(r.presentation).to_json()}
    base = args.base or X.objects[0]
    V = fundamental.pi1_discrete(X, base)
    return {"base": base, "order": V.order, "elements": list(V.elements), "abelian": V.is_abelian()}


def cmd_algebra(args) -> dict:
    A = algebra.GroupoidAlgebra(_load("groupoid", args.file))
    return {"dim": A.dim, "associative": not A.associativity_failures(), **A.to_json()}


def cmd_bimodule(args) -> dict:
    M = algebra.bimodule_of_bibundle(_load("bibundle", args.file))
    return {"dim": M.dim, "axioms_hold": not M.axiom_failures(), **M.to_json()}


def cmd_mho_check(args) -> dict:
    r = algebra.mho_iso_check(_load("bibundle", args.file), _load("bibundle", args.second))
    return r.to_json()


def cmd_algebra_morita(args) -> dict:
    G, H = _load("groupoid", args.file), _load("groupoid", args.second)
    return algebra.algebra_morita_check(G, H, _budget(args)).to_json()


COMMANDS = {
    "validate": (cmd_validate, 1),
    "info": (cmd_info, 1),
    "orbits": (cmd_orbits, 1),
    "vertex-group": (cmd_vertex_group, 1),
    "effect": (cmd_effect, 1),
    "ess-equiv": (cmd_ess_equiv, 1),
    "tensor": (cmd_tensor, 2),
    "invert": (cmd_invert, 1),
    "iso": (cmd_iso, 2),
    "morita": (cmd_morita, 2),
    "leaves": (cmd_leaves, 1),
    "holonomy": (cmd_holonomy, 1),
    "sigma": (cmd_sigma, 1),
    "extract-cocycle": (cmd_extract_cocycle, 1),
    "cohomologous": (cmd_cohomologous, 2),
    "homology": (cmd_homology, 1),
    "balanced": (cmd_balanced, 1),
    "mv-check": (cmd_mv_check, 1),
    "pi1": (cmd_pi1, 1),
    "algebra": (cmd_algebra, 1),
    "bimodule": (cmd_bimodule, 1),
    "mho-check": (cmd_mho_check, 2),
    "algebra-morita": (cmd_algebra_morita, 2),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="groupoidal", description="Finite groupoids, bibundles and their invariants.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, arity) in COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("file")
        if arity == 2:
            p.add_argument("second")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--n", type=int, default=0)
        p.add_argument("--base", default=None)
        p.add_argument("--coefficients", default=None)
        p.add_argument("--cohomology", action="store_true")
        p.add_argument("--u", default=None)
        p.add_argument("--v", default=None)
        p.add_argument("--element", default=None)
        p.add_argument("--loop", default=None)
    return parser


def render(report: Any, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(report)
    lines = []
    for key in sorted(report):
        value = report[key]
        text = value if isinstance(value, str) else " ".join(io.dumps(value).split())
        lines.append(f"{key}: {text}")
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str]) -> tuple:
    """``(exit code, output text)`` without touching the process streams."""
    fmt = "json"
    try:
        args = build_parser().parse_args(list(argv))
        fmt = args.format
        report = COMMANDS[args.command][0](args)
        return 0, render(report, fmt)
    except GroupoidalError as exc:
        return exc.exit_code, render(exc.to_json(), fmt)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
