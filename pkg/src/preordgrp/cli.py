"""Command-line interface: one JSON document in, one JSON report out.

The workspace document has four top-level maps: ``groups``, ``cones``,
``objects`` and ``morphisms``.  Finite groups are Cayley tables over named
elements, f.g. abelian groups are (rank, torsion) pairs; cones are element
lists (finite) or integer generator vectors (fgab); morphisms are element
maps (finite) or matrix blocks "free", "mixed", "torsion" (fgab).

Reports are deterministic: keys sorted, no timestamps, bounds and window
sizes echoed.  Exit codes: 0 success, 1 input error, 2 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import errors
from .cones import (
    ExplicitCone,
    GeneratorCone,
    cone_contains,
    explicit_cone,
    extract_generators,
    generator_cone,
    is_reduced,
)
from .groups import (
    fgab_presentation,
    make_finite_group,
    make_hom,
)
from .pog import (
    classify,
    is_short_exact,
    make_pog,
    make_pog_morphism,
    morphism_class,
    pog_coequalizer,
    pog_cokernel,
    pog_equalizer,
    pog_kernel,
    pog_product,
    pog_pullback,
)


@dataclass
class Workspace:
    groups: dict
    presentations: dict       # fgab name -> Presentation (declared coords)
    cones: dict
    objects: dict
    morphisms: dict


def _fail_parse(path, why):
    raise errors.ParseError(f"at {path}: {why}")


def parse_workspace(document):
    """Validated workspace from a parsed JSON document.

    >>> ws = parse_workspace({"groups": {"Z": {"kind": "fgab", "rank": 1,
    ...     "torsion": []}}, "cones": {"N": {"group": "Z",
    ...     "generators": [[1]]}}, "objects": {"X": {"group": "Z",
    ...     "cone": "N"}}, "morphisms": {}})
    >>> ws.objects["X"].group.rank
    1
    """
    if not isinstance(document, dict):
        _fail_parse("$", "document must be a JSON object")
    groups, presentations = {}, {}
    for name, spec in document.get("groups", {}).items():
        path = f"$.groups.{name}"
        kind = spec.get("kind")
        try:
            if kind == "finite":
                groups[name] = make_finite_group(spec["elements"], spec["table"])
            elif kind == "fgab":
                rank = spec.get("rank", 0)
                torsion = spec.get("torsion", [])
                if rank < 0 or any(not isinstance(d, int) or d <= 0
                                   for d in torsion):
                    raise errors.BadInvariantFactors(
                        "rank must be >= 0 and torsion entries positive")
                rels = []
                n = rank + len(torsion)
                for j, d in enumerate(torsion):
                    col = [0] * n
                    col[rank + j] = d
                    rels.append(col)
                pres = fgab_presentation(n, rels)
                groups[name] = pres.group
                presentations[name] = pres
            else:
                _fail_parse(path, f"unknown kind {kind!r}")
        except (errors.NotAGroup, errors.BadInvariantFactors) as exc:
            raise errors.ValidationError(f"group {name}: {exc}") from exc
        except KeyError as exc:
            _fail_parse(path, f"missing key {exc}")
    cones = {}
    for name, spec in document.get("cones", {}).items():
        path = f"$.cones.{name}"
        gname = spec.get("group")
        if gname not in groups:
            _fail_parse(path, f"unknown group {gname!r}")
        G = groups[gname]
        try:
            if "elements" in spec:
                if G.backend != "finite":
                    _fail_parse(path, "element lists need a finite group")
                cones[name] = explicit_cone(
                    G, [G.elem(e) for e in spec["elements"]])
            elif "generators" in spec:
                if G.backend != "fgab":
                    _fail_parse(path, "generator vectors need an fgab group")
                pres = presentations.get(gname)
                gens = []
                for vec in spec["generators"]:
                    if pres is not None and len(vec) == pres.ncoords:
                        gens.append(pres.project(vec))
                    else:
                        gens.append(G.elem(vec))
                cones[name] = generator_cone(G, gens)
            else:
                _fail_parse(path, "need either 'elements' or 'generators'")
        except (ValueError, IndexError) as exc:
            raise errors.ValidationError(f"cone {name}: {exc}") from exc
    objects = {}
    for name, spec in document.get("objects", {}).items():
        path = f"$.objects.{name}"
        gname, cname = spec.get("group"), spec.get("cone")
        if gname not in groups:
            _fail_parse(path, f"unknown group {gname!r}")
        if cname not in cones:
            _fail_parse(path, f"unknown cone {cname!r}")
        try:
            objects[name] = make_pog(groups[gname], cones[cname])
        except errors.ConeAxiomViolation as exc:
            raise errors.ValidationError(
                f"object {name}: cone axioms fail "
                f"(witness {exc.witness})") from exc
    morphisms = {}
    for name, spec in document.get("morphisms", {}).items():
        path = f"$.morphisms.{name}"
        src, dst = spec.get("from"), spec.get("to")
        if src not in objects or dst not in objects:
            _fail_parse(path, "unknown endpoint object")
        dom, cod = objects[src], objects[dst]
        try:
            if "map" in spec:
                if dom.group.backend != "finite":
                    _fail_parse(path, "'map' needs a finite domain")
                images = [cod.group.elem(i) for i in spec["map"]]
                hom = make_hom(dom.group, cod.group, images)
            elif "matrix" in spec:
                hom = _hom_from_blocks(dom.group, cod.group, spec["matrix"])
            else:
                _fail_parse(path, "need either 'map' or 'matrix'")
            morphisms[name] = make_pog_morphism(hom, dom, cod)
        except errors.ConeNotPreserved as exc:
            raise errors.ValidationError(
                f"morphism {name}: cone not preserved at generator "
                f"{exc.generator}") from exc
        except ValueError as exc:
            raise errors.ValidationError(f"morphism {name}: {exc}") from exc
    return Workspace(groups, presentations, cones, objects, morphisms)


def _hom_from_blocks(dom, cod, blocks):
    """Assemble an fgab -> fgab hom from 'free' / 'mixed' / 'torsion' blocks."""
    if dom.backend != "fgab" or cod.backend != "fgab":
        raise ValueError("matrix blocks need fgab groups on both sides")
    free = blocks.get("free", [])
    mixed = blocks.get("mixed", [])
    tors = blocks.get("torsion", [])
    images = []
    for j in range(dom.rank):
        coords = [row[j] if j < len(row) else 0 for row in free]
        coords += [row[j] if j < len(row) else 0 for row in mixed]
        coords = coords + [0] * (cod.ncoords - len(coords))
        images.append(cod.elem(coords))
    for j in range(len(dom.torsion)):
        coords = [0] * cod.rank
        coords += [row[j] if j < len(row) else 0 for row in tors]
        coords = coords + [0] * (cod.ncoords - len(coords))
        images.append(cod.elem(coords))
    return make_hom(dom, cod, images)


# ---------------------------------------------------------------------------
# report helpers
# ---------------------------------------------------------------------------

def group_json(G):
    if G.backend == "finite":
        return {"kind": "finite", "order": G.order()}
    return {"kind": "fgab", "rank": G.rank, "torsion": list(G.torsion)}


def cone_json(c):
    if isinstance(c, ExplicitCone):
        return {"kind": "elements", "size": len(c.members)}
    if isinstance(c, GeneratorCone):
        return {"kind": "generators",
                "generators": [list(g.coords) for g in c.cone_generators]}
    gens = extract_generators(c)
    out = {"kind": "recipe", "node": type(c).__name__}
    if gens is not None:
        out["generators"] = [list(g.coords) for g in gens]
    return out


def object_json(P):
    out = {"group": group_json(P.group), "cone": cone_json(P.cone)}
    if P.group.backend == "finite":
        out["cone"]["size"] = len(_members(P.cone))
    return out


def _members(cone):
    if isinstance(cone, ExplicitCone):
        return cone.members
    return [x for x in cone.group.elements() if cone_contains(cone, x)]


def classification_json(cls):
    return {"flags": sorted(cls.flags), "exact": cls.exact,
            "window": cls.window}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _need(ws, mapping, name, what):
    store = getattr(ws, mapping)
    if name not in store:
        raise errors.ValidationError(f"unknown {what} {name!r}")
    return store[name]


def cmd_validate(ws, args, opts):
    return {"valid": True,
            "groups": sorted(ws.groups),
            "objects": sorted(ws.objects),
            "morphisms": sorted(ws.morphisms)}, 0


def cmd_classify(ws, args, opts):
    P = _need(ws, "objects", args.object, "object")
    cls = classify(P, opts["window"])
    return {"object": args.object,
            "classification": classification_json(cls)}, 0


def cmd_torsion(ws, args, opts):
    from .torsion import torsion_sequence
    P = _need(ws, "objects", args.object, "object")
    dec = torsion_sequence(P, opts["window"])
    report = {
        "object": args.object,
        "torsion_part": {"order": dec.torsion_part.group.order(),
                         "group": group_json(dec.torsion_part.group)},
        "torsion_free": {"group": group_json(dec.free_part.group),
                         "reduced": is_reduced(dec.free_part.cone)},
        "short_exact": dec.certificate.holds,
        "exact_checks": dec.certificate.exact_checks,
        "window": dec.certificate.window,
    }
    if dec.free_part.group.backend == "finite":
        report["torsion_free"]["cone_size"] = len(_members(dec.free_part.cone))
    return report, 0 if dec.certificate.holds else 2


def cmd_pretorsion(ws, args, opts):
    from .torsion import pretorsion_sequence
    P = _need(ws, "objects", args.object, "object")
    dec = pretorsion_sequence(P, opts["window"])
    report = {
        "object": args.object,
        "torsion_part": object_json(dec.torsion_part),
        "torsion_part_classification":
            classification_json(classify(dec.torsion_part, opts["window"])),
        "torsion_free": object_json(dec.free_part),
        "preexact": dec.certificate.holds,
    }
    return report, 0 if dec.certificate.holds else 2


def cmd_reflect(ws, args, opts):
    from .torsion import reflect_F, torsion_sequence
    name = args.name
    if name in ws.morphisms:
        Fm = reflect_F(ws.morphisms[name], opts["window"])
        from .pog import pog_is_iso
        iso, exact = pog_is_iso(Fm, opts["window"])
        return {"morphism": name,
                "reflected": {"from": object_json(Fm.dom),
                              "to": object_json(Fm.cod)},
                "iso": iso, "exact": exact}, 0
    P = _need(ws, "objects", name, "object or morphism")
    dec = torsion_sequence(P, opts["window"])
    rep = morphism_class(dec.unit, opts["window"])
    return {"object": name,
            "torsion_free": object_json(dec.free_part),
            "unit_normal_epi": rep.normal_epi}, 0


def cmd_proto_reflect(ws, args, opts):
    from .torsion import proto_reflect
    P = _need(ws, "objects", args.object, "object")
    EP, unit = proto_reflect(P, opts["window"])
    return {"object": args.object,
            "reflection": object_json(EP),
            "classification": classification_json(classify(EP, opts["window"]))}, 0


def cmd_factor(ws, args, opts):
    from .factor import em_factor, ml_factor
    m = _need(ws, "morphisms", args.morphism, "morphism")
    fr = (em_factor if args.system == "em" else ml_factor)(m, opts["window"])
    ok = fr.e_class.holds and fr.m_class.holds and fr.recomposes(m)
    return {"morphism": args.morphism,
            "system": fr.system,
            "mid": object_json(fr.mid),
            "e_class": {"name": fr.e_class.cls, "holds": fr.e_class.holds},
            "m_class": {"name": fr.m_class.cls, "holds": fr.m_class.holds},
            "recomposes": fr.recomposes(m)}, 0 if ok else 2


def cmd_class(ws, args, opts):
    from .factor import in_class
    m = _need(ws, "morphisms", args.morphism, "morphism")
    rep = in_class(m, args.of, opts["window"])
    return {"morphism": args.morphism, "class": args.of,
            "in_class": rep.holds, "exact": rep.exact,
            "detail": rep.detail}, 0 if rep.holds else 2


def cmd_covering(ws, args, opts):
    from .descent import is_covering
    m = _need(ws, "morphisms", args.morphism, "morphism")
    ok = is_covering(m, opts["window"])
    return {"morphism": args.morphism, "covering": ok}, 0 if ok else 2


def cmd_cover(ws, args, opts):
    from .descent import canonical_cover
    P = _need(ws, "objects", args.object, "object")
    cover = canonical_cover(P, opts["window"])
    report = {
        "object": args.object,
        "window": cover.scan.window,
        "scan": {
            "positives_checked": cover.scan.positives_checked,
            "submonoid_violations": cover.scan.submonoid_violations,
            "conjugation_violations": cover.scan.conjugation_violations,
            "reducedness_violations": cover.scan.reducedness_violations,
        },
        "surjectivity": cover.surjectivity_note,
        "realized": cover.realized is not None,
    }
    if cover.projection is not None:
        rep = morphism_class(cover.projection, opts["window"])
        report["projection_normal_epi"] = rep.normal_epi
        report["effective_descent"] = rep.effective_descent
    return report, 0 if cover.scan.clean else 2


def cmd_kernel(ws, args, opts):
    m = _need(ws, "morphisms", args.morphism, "morphism")
    K, inj = pog_kernel(m)
    return {"morphism": args.morphism,
            "kernel": object_json(K),
            "classification": classification_json(classify(K, opts["window"]))}, 0


def cmd_cokernel(ws, args, opts):
    m = _need(ws, "morphisms", args.morphism, "morphism")
    Q, proj = pog_cokernel(m)
    rep = morphism_class(proj, opts["window"])
    return {"morphism": args.morphism,
            "cokernel": object_json(Q),
            "projection_normal_epi": rep.normal_epi}, 0


def cmd_limit(ws, args, opts):
    if args.kind == "product":
        P1 = _need(ws, "objects", args.args[0], "object")
        P2 = _need(ws, "objects", args.args[1], "object")
        lim = pog_product(P1, P2)
    elif args.kind == "pullback":
        m1 = _need(ws, "morphisms", args.args[0], "morphism")
        m2 = _need(ws, "morphisms", args.args[1], "morphism")
        lim = pog_pullback(m1, m2)
    elif args.kind == "equalizer":
        m1 = _need(ws, "morphisms", args.args[0], "morphism")
        m2 = _need(ws, "morphisms", args.args[1], "morphism")
        lim = pog_equalizer(m1, m2)
    else:
        raise errors.UnknownCommand(f"unknown limit kind {args.kind!r}")
    return {"kind": args.kind, "inputs": list(args.args),
            "limit": object_json(lim.obj)}, 0


def cmd_sequence_check(ws, args, opts):
    k = _need(ws, "morphisms", args.k, "morphism")
    f = _need(ws, "morphisms", args.f, "morphism")
    cert = is_short_exact(k, f, opts["window"])
    return {"k": args.k, "f": args.f, "short_exact": cert.holds,
            "exact_checks": cert.exact_checks, "window": cert.window,
            "reasons": list(cert.reasons)}, 0 if cert.holds else 2


def cmd_stable_units(ws, args, opts):
    from .factor import check_stable_units_instance
    B = _need(ws, "objects", args.object, "object")
    g = _need(ws, "morphisms", args.morphism, "morphism")
    rep = check_stable_units_instance(B, g, opts["window"])
    return {"object": args.object, "morphism": args.morphism,
            "preserved": rep.holds, "exact": rep.exact,
            "window": rep.window}, 0 if rep.holds else 2


def cmd_orthogonal(ws, args, opts):
    from .factor import check_orthogonality
    e = _need(ws, "morphisms", args.e, "morphism")
    m = _need(ws, "morphisms", args.m, "morphism")
    a = _need(ws, "morphisms", args.a, "morphism")
    b = _need(ws, "morphisms", args.b, "morphism")
    rep = check_orthogonality(e, m, a, b, opts["window"])
    return {"e": args.e, "m": args.m,
            "orthogonal": rep.holds, "unique": rep.unique,
            "detail": rep.detail}, 0 if rep.holds else 2


def cmd_schreier(ws, args, opts):
    from .schreier import is_special_schreier
    m = _need(ws, "morphisms", args.morphism, "morphism")
    rep = is_special_schreier(m.dom.cone, m.hom, opts["window"])
    return {"morphism": args.morphism,
            "special_schreier": rep.holds,
            "window": rep.window,
            "exhaustive": rep.exhaustive,
            "pairs_checked": rep.checked}, 0 if rep.holds else 2


def cmd_enumerate(ws, args, opts):
    from .oracle import enumerate_cones, enumerate_pog_morphisms
    if args.cones:
        G = _need(ws, "groups", args.cones, "group")
        if G.backend != "finite":
            raise errors.ValidationError("cone enumeration needs a finite group")
        cones = enumerate_cones(G)
        return {"group": args.cones,
                "cones": [sorted(G.describe_element(x) for x in c.members)
                          for c in cones]}, 0
    src = _need(ws, "objects", args.morphisms[0], "object")
    dst = _need(ws, "objects", args.morphisms[1], "object")
    ms = enumerate_pog_morphisms(src, dst, opts["hom_bound"])
    return {"from": args.morphisms[0], "to": args.morphisms[1],
            "bound": opts["hom_bound"], "count": len(ms)}, 0


def cmd_oracle(ws, args, opts):
    from .oracle import UniversalPropertyQuery, verify_universal_property
    test = tuple(ws.objects[k] for k in sorted(ws.objects))
    kind = args.kind
    if kind == "kernel":
        m = _need(ws, "morphisms", args.args[0], "morphism")
        K, inj = pog_kernel(m)
        q = UniversalPropertyQuery("Kernel", (m, K, inj), test, opts["hom_bound"])
    elif kind == "cokernel":
        m = _need(ws, "morphisms", args.args[0], "morphism")
        Q, proj = pog_cokernel(m)
        q = UniversalPropertyQuery("Cokernel", (m, Q, proj), test, opts["hom_bound"])
    elif kind == "product":
        P1 = _need(ws, "objects", args.args[0], "object")
        P2 = _need(ws, "objects", args.args[1], "object")
        lim = pog_product(P1, P2)
        q = UniversalPropertyQuery(
            "Product", (P1, P2, lim.obj, lim.legs[0], lim.legs[1]),
            test, opts["hom_bound"])
    elif kind == "pullback":
        m1 = _need(ws, "morphisms", args.args[0], "morphism")
        m2 = _need(ws, "morphisms", args.args[1], "morphism")
        lim = pog_pullback(m1, m2)
        q = UniversalPropertyQuery(
            "Pullback", (m1, m2, lim.obj, lim.legs[0], lim.legs[1]),
            test, opts["hom_bound"])
    elif kind == "coequalizer":
        m1 = _need(ws, "morphisms", args.args[0], "morphism")
        m2 = _need(ws, "morphisms", args.args[1], "morphism")
        Q, proj = pog_coequalizer(m1, m2)
        q = UniversalPropertyQuery(
            "Coequalizer", (m1, m2, Q, proj), test, opts["hom_bound"])
    else:
        raise errors.UnknownCommand(f"unknown oracle kind {kind!r}")
    rep = verify_universal_property(q)
    return {"kind": rep.kind, "holds": rep.holds, "tested": rep.tested,
            "bound": rep.bound,
            "counterexample": rep.counterexample}, 0 if rep.holds else 2


def cmd_search(ws, args, opts):
    from .oracle import search_counterexample
    witness = search_counterexample(args.law, args.bound)
    return {"law": args.law, "bound": args.bound,
            "counterexample": witness}, 0 if witness is None else 2


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _corpus_workspace():
    from .corpus import corpus_objects, finite_corpus_groups
    objects = dict(corpus_objects())
    groups = dict(finite_corpus_groups())
    for name, P in objects.items():
        groups.setdefault(name.split("/")[0], P.group)
    return Workspace(groups, {}, {}, objects, {})


def build_parser():
    parser = argparse.ArgumentParser(
        prog="preordgrp",
        description="exact computations with preordered groups")
    parser.add_argument("--workspace", help="path to a JSON workspace document")
    parser.add_argument("--corpus", action="store_true",
                        help="use the bundled corpus as the workspace")
    parser.add_argument("--window", type=int, default=8,
                        help="coordinate window for bounded verification")
    parser.add_argument("--hom-bound", type=int, default=10,
                        help="matrix-entry bound for fgab hom enumeration")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate")
    p = sub.add_parser("classify"); p.add_argument("object")
    p = sub.add_parser("torsion"); p.add_argument("object")
    p = sub.add_parser("pretorsion"); p.add_argument("object")
    p = sub.add_parser("reflect"); p.add_argument("name")
    p = sub.add_parser("proto-reflect"); p.add_argument("object")
    p = sub.add_parser("factor")
    p.add_argument("--system", choices=("em", "ml"), required=True)
    p.add_argument("morphism")
    p = sub.add_parser("class")
    p.add_argument("--of", choices=("E", "M", "Eprime", "Mstar"), required=True)
    p.add_argument("morphism")
    p = sub.add_parser("covering"); p.add_argument("morphism")
    p = sub.add_parser("cover"); p.add_argument("object")
    p = sub.add_parser("kernel"); p.add_argument("morphism")
    p = sub.add_parser("cokernel"); p.add_argument("morphism")
    p = sub.add_parser("limit")
    p.add_argument("--kind", choices=("product", "pullback", "equalizer"),
                   required=True)
    p.add_argument("args", nargs=2)
    p = sub.add_parser("sequence-check")
    p.add_argument("k"); p.add_argument("f")
    p = sub.add_parser("stable-units")
    p.add_argument("object"); p.add_argument("morphism")
    p = sub.add_parser("orthogonal")
    p.add_argument("e"); p.add_argument("m"); p.add_argument("a"); p.add_argument("b")
    p = sub.add_parser("schreier"); p.add_argument("morphism")
    p = sub.add_parser("enumerate")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cones", metavar="GROUP")
    g.add_argument("--morphisms", nargs=2, metavar=("FROM", "TO"))
    p = sub.add_parser("oracle")
    p.add_argument("--kind", required=True,
                   choices=("kernel", "cokernel", "product", "pullback",
                            "coequalizer"))
    p.add_argument("args", nargs="+")
    p = sub.add_parser("search")
    p.add_argument("law")
    p.add_argument("--bound", type=int, default=6)
    return parser


_COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "torsion": cmd_torsion,
    "pretorsion": cmd_pretorsion,
    "reflect": cmd_reflect,
    "proto-reflect": cmd_proto_reflect,
    "factor": cmd_factor,
    "class": cmd_class,
    "covering": cmd_covering,
    "cover": cmd_cover,
    "kernel": cmd_kernel,
    "cokernel": cmd_cokernel,
    "limit": cmd_limit,
    "sequence-check": cmd_sequence_check,
    "stable-units": cmd_stable_units,
    "orthogonal": cmd_orthogonal,
    "schreier": cmd_schreier,
    "enumerate": cmd_enumerate,
    "oracle": cmd_oracle,
    "search": cmd_search,
}


def run_command(ws, command, args, opts):
    handler = _COMMANDS.get(command)
    if handler is None:
        raise errors.UnknownCommand(f"unknown command {command!r}")
    report, code = handler(ws, args, opts)
    report = {"command": command, "window": opts["window"],
              "hom_bound": opts["hom_bound"], **report}
    return report, code


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    opts = {"window": args.window, "hom_bound": args.hom_bound}
    try:
        if args.corpus:
            ws = _corpus_workspace()
        elif args.workspace:
            with open(args.workspace, encoding="utf-8") as fh:
                try:
                    document = json.load(fh)
                except json.JSONDecodeError as exc:
                    raise errors.ParseError(f"invalid JSON: {exc}") from exc
            ws = parse_workspace(document)
        else:
            try:
                document = json.load(sys.stdin)
            except json.JSONDecodeError as exc:
                raise errors.ParseError(f"invalid JSON: {exc}") from exc
            ws = parse_workspace(document)
        report, code = run_command(ws, args.command, args, opts)
    except errors.PreordGrpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(report, sort_keys=True, separators=(",", ": "),
                     indent=1))
    return code


if __name__ == "__main__":
    sys.exit(main())
