"""Command-line front end.  Every subcommand prints JSON (or writes it to --out).

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import complex as cx
from .coloring import extend_coloring
from .corpus import corpus
from .cover_builder import (
    ReferenceOracle,
    TrivialOracle,
    build_cover,
    check_color_equivalence,
)
from .errors import ComplexError
from .io import (
    canonical_json,
    coloring_from_attrs,
    coloring_to_attrs,
    complex_to_dict,
    digest,
    dumps_complex,
    read_complex,
)
from .parity import cycle_edges, plan_parity, search_cycle_target
from .projectivity import odd_subcomplex, projectivity_group
from .subdivision import SubdivisionScript, apply_script
from .unfolding import components, partial_unfold, resolve, verify_cover


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        K, attrs = read_complex(path)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a complex file: {exc}") from None
    return K, attrs, digest(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None


def _faces(arg):
    """Face list from a JSON file or an inline JSON string."""
    if arg is None:
        return []
    data = json.loads(arg) if arg.lstrip().startswith("[") else _load_json(arg)
    if isinstance(data, dict):
        data = data.get("odd_faces", data.get("faces", []))
    return [tuple(sorted(int(v) for v in f)) for f in data]


def _write(path: str, text: str, outputs: dict, key: str) -> None:
    Path(path).write_text(text)
    outputs[key] = {"path": path, "digest": digest(text)}


# -- subcommands --------------------------------------------------------------


def cmd_gen(a, ctx):
    kind = {"cyclic": "cyclic_sphere", "simplex": "boundary_simplex", "cross": "cross_polytope",
            "starred": "starred_simplex"}.get(a.kind, a.kind)
    if kind == "corpus":
        items = corpus(a.seed)
        if a.index is None:
            return {"corpus": [{"name": n, **complex_to_dict(K)} for n, K in items]}
        name, K = items[a.index]
        return complex_to_dict(K)
    if kind == "cyclic_sphere":
        if a.n is None:
            raise UsageError("cyclic needs --n")
        K = cx.cyclic_sphere(a.d, a.n)
    elif kind == "polygon":
        K = cx.polygon(a.n if a.n is not None else a.d)
    elif kind == "cone_polygon":
        K = cx.cone(cx.polygon(a.n if a.n is not None else a.d))
    elif kind in cx.GENERATORS:
        K = cx.generate(kind, a.d)
    else:
        raise UsageError(f"unknown kind {a.kind!r}")
    return complex_to_dict(K)


def cmd_fvector(a, ctx):
    K = ctx["K"]
    return {"dim": K.dim, "f_vector": list(cx.f_vector(K)), "euler": cx.euler_characteristic(K)}


def cmd_shelling(a, ctx):
    K = ctx["K"]
    if a.verify:
        order = [tuple(f) for f in _load_json(a.verify)["shelling"]]
        res = cx.verify_shelling(K, order)
        return {"valid": bool(res), "shelling": [list(f) for f in order],
                "failed_at": res.violation_index}
    start = K.facets[a.start] if a.start is not None else None
    order = cx.find_shelling(K, start=start)
    if order is None:
        return {"shellable": False, "shelling": None}
    return {"shellable": True, "shelling": [list(f) for f in order]}


def cmd_odd(a, ctx):
    return {"odd_faces": odd_subcomplex(ctx["K"]).as_list()}


def cmd_group(a, ctx):
    G = projectivity_group(ctx["K"], a.base)
    out = G.as_dict()
    out["abelian"] = G.is_abelian()
    return out


def cmd_unfold(a, ctx):
    K = ctx["K"]
    U = partial_unfold(K)
    rep = components(U)
    cov = verify_cover(U)
    out = {
        "components": [
            {"cells": len(c.cells), "facets_per_base": c.facets_per_base, "euler": c.euler,
             "simplicial": c.simplicial, "f_vector": list(c.f_vector)}
            for c in rep.components
        ],
        "branching": [list(f) for f in cov.branching],
        "cover_ok": cov.ok,
    }
    if a.resolve:
        _write(a.resolve, dumps_complex(resolve(U)), ctx["outputs"], "resolved")
    return out


def cmd_extend(a, ctx):
    K, attrs = ctx["K"], ctx["attrs"]
    colors = coloring_from_attrs(attrs)
    if a.subcomplex:
        L, lattrs, _ = _load(a.subcomplex)
        colors = coloring_from_attrs(lattrs) or colors
    else:
        L = None
        if colors:
            L = sorted(cx._maximal(f for f in cx.all_faces(K) if set(f) <= set(colors)))
    ext = extend_coloring(K, L, colors, a.k, make_induced=a.make_induced, greedy=a.greedy)
    text = dumps_complex(ext.complex, coloring_to_attrs(ext.coloring.colors))
    if a.script:
        _write(a.script, canonical_json(ext.script.to_json(ctx["digest"])), ctx["outputs"], "script")
    return json.loads(text) | {"rounds": [r.__dict__ for r in ext.rounds], "subdivisions": len(ext.script)}


def cmd_make_odd(a, ctx):
    K = ctx["K"]
    if a.cycle_search:
        res = search_cycle_target(K, max_edges=a.max_edges, seed=a.seed)
        plan, extra = res.plan, {"cycle": list(res.cycle), "group_order": res.group_order,
                                 "orbit_sizes": res.orbit_sizes, "tried": res.tried}
    else:
        target = _faces(a.target)
        if a.cycle:
            target = sorted(cycle_edges(json.loads(a.cycle)))
        plan = plan_parity(K, target, max_edges=a.max_edges)
        extra = {}
    if a.complex_out:
        _write(a.complex_out, dumps_complex(plan.complex), ctx["outputs"], "complex")
    return plan.script.to_json(ctx["digest"]) | {
        "target": sorted(list(f) for f in plan.target),
        "prefix": plan.prefix,
        "f_vector": list(cx.f_vector(plan.complex)),
        **extra,
    }


def _oracle(spec: dict, d: int, ctx: dict):
    kind = spec.get("kind", "trivial")
    if kind == "trivial":
        return TrivialOracle(d + 1)
    if kind == "reference":
        Kref, _, _ = _load(spec["complex"])
        carrier = None
        if "script" in spec:
            data = _load_json(spec["script"])
            if isinstance(data.get("base"), str):
                # base given by digest: it must be the sphere being refined
                if data["base"] != ctx["digest"]:
                    raise UsageError("reference script is based on a different complex")
                script = SubdivisionScript.from_json(data, ctx["K"])
            else:
                script = SubdivisionScript.from_json(data)
            K2, carrier = apply_script(script.base, script)
            if K2 != Kref:
                raise UsageError("reference script does not reproduce the reference complex")
        iota = spec.get("iota")
        base = spec.get("base", 0)
        if isinstance(base, list):
            base = tuple(base)
        if iota is not None:
            iota = dict(zip(Kref.facet(base), iota))
        return ReferenceOracle(Kref, base, iota, carrier)
    raise UsageError(f"unknown oracle kind {kind!r}")


def cmd_build_cover(a, ctx):
    K = ctx["K"]
    F = _faces(a.branching)
    spec = _load_json(a.oracle) if a.oracle else {"kind": "trivial"}
    res = build_cover(K, F=F, oracle=_oracle(spec, K.dim, ctx))
    outs = ctx["outputs"]
    if a.complex_out:
        _write(a.complex_out, dumps_complex(res.complex), outs, "complex")
    if a.script:
        _write(a.script, canonical_json(res.script.to_json(ctx["digest"])), outs, "script")
    if a.certificate:
        _write(a.certificate, canonical_json(res.certificate.as_dict()), outs, "certificate")
    G = projectivity_group(res.complex, res.shelling[0])
    return {
        "f_vector": list(cx.f_vector(res.complex)),
        "subdivisions": len(res.script),
        "certificate_ok": res.certificate.ok,
        "cases": res.certificate.case_counts(),
        "group_order": G.order,
        "orbit_sizes": G.orbit_sizes,
        "odd_faces": odd_subcomplex(res.complex, check=False).as_list(),
    }


def cmd_check_equiv(a, ctx):
    K = ctx["K"]
    K2, _, d2 = _load(a.other)
    carrier = None
    if a.script:
        script = SubdivisionScript.from_json(_load_json(a.script), K)
        K3, carrier = apply_script(K, script)
        if K3 != K2:
            raise UsageError("script does not turn the first complex into the second")
    rep = check_color_equivalence(K, K2, carrier)
    ctx["inputs"].append({"path": a.other, "digest": d2})
    return rep.as_dict()


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON result here instead of stdout")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--report", default=argparse.SUPPRESS, help="write a run report (inputs, outputs, timing)")
    p = argparse.ArgumentParser(prog="branchcover", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name, fn, help):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.add_argument("input", help="complex JSON file")
        sp.set_defaults(fn=fn, needs_input=True)
        return sp

    g = sub.add_parser("gen", help="generate an example complex", parents=[common])
    g.add_argument("--kind", required=True,
                   help="boundary_simplex|simplex, cross_polytope|cross, cyclic, starred_simplex|starred, "
                        "polygon, cone_polygon, corpus")
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--n", type=int)
    g.add_argument("--index", type=int, help="pick one corpus member")
    g.set_defaults(fn=cmd_gen, needs_input=False)

    with_input("fvector", cmd_fvector, "f-vector and Euler characteristic")
    sp = with_input("shelling", cmd_shelling, "find or verify a shelling")
    sp.add_argument("--start", type=int, help="index of the first facet")
    sp.add_argument("--verify", help="JSON file with a 'shelling' list to check")
    with_input("odd", cmd_odd, "odd subcomplex")
    sp = with_input("group", cmd_group, "group of projectivities")
    sp.add_argument("--base", type=int, default=0, help="index of the base facet")
    sp = with_input("unfold", cmd_unfold, "partial unfolding summary")
    sp.add_argument("--resolve", help="write the barycentric resolution here")
    sp = with_input("extend-coloring", cmd_extend, "extend a partial coloring by edge subdivisions")
    sp.add_argument("--subcomplex", help="complex file for L (its attrs may carry the colors)")
    sp.add_argument("--k", type=int)
    sp.add_argument("--make-induced", action="store_true")
    sp.add_argument("--greedy", action="store_true")
    sp.add_argument("--script", help="write the subdivision script here")
    sp = with_input("make-odd", cmd_make_odd, "plan subdivisions making a target the odd subcomplex")
    sp.add_argument("--target", help="face list (JSON file or inline)")
    sp.add_argument("--cycle", help="inline JSON vertex cycle, target is its edges")
    sp.add_argument("--cycle-search", action="store_true", help="search a cycle giving a nonabelian group")
    sp.add_argument("--max-edges", type=int, default=10)
    sp.add_argument("--complex-out", help="write the refined complex here")
    sp = with_input("build-cover", cmd_build_cover, "refine a sphere to realize a branched cover")
    sp.add_argument("--branching", help="face list (JSON file or inline)")
    sp.add_argument("--oracle", help="oracle spec JSON file")
    sp.add_argument("--complex-out")
    sp.add_argument("--script")
    sp.add_argument("--certificate")
    sp = with_input("check-equiv", cmd_check_equiv, "check color equivalence")
    sp.add_argument("other", help="the refined complex")
    sp.add_argument("--script", help="subdivision script from the first complex to the second")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # not via set_defaults: the parent's actions are shared with the subparsers
    for k, v in (("out", None), ("seed", 0), ("report", None)):
        if not hasattr(a, k):
            setattr(a, k, v)
    ctx = {"outputs": {}, "inputs": []}
    t0 = time.perf_counter()
    try:
        if a.needs_input:
            K, attrs, dg = _load(a.input)
            ctx.update(K=K, attrs=attrs, digest=dg)
            ctx["inputs"].append({"path": a.input, "digest": dg})
        result = a.fn(a, ctx)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return 2
    except ComplexError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    text = canonical_json(result)
    if a.out:
        Path(a.out).write_text(text)
        ctx["outputs"]["result"] = {"path": a.out, "digest": digest(text)}
    else:
        sys.stdout.write(text)
    if a.report:
        report = {"command": a.command, "argv": list(argv if argv is not None else sys.argv[1:]),
                  "inputs": ctx["inputs"], "outputs": ctx["outputs"],
                  "seconds": round(time.perf_counter() - t0, 6)}
        Path(a.report).write_text(canonical_json(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
