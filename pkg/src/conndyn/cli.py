"""File-driven command line: parse JSON fixtures, run one operation, emit a
JSON report on standard output.

Every report is a single newline-terminated document ``{"ok": ..., "result":
...}`` with sorted keys, so identical inputs give identical bytes.  Exit
status 0 means the operation ran and, for check-style commands, the check
passed; 1 means a check came back false; 2 means the input was malformed,
violated a precondition, or exceeded a capacity cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import conncat as cc
from . import conndynamics as cd
from . import dynamics as dy
from . import fincat as fc
from . import foliations as fo
from . import io as cio
from . import order as od
from . import representations as rp
from . import spaces as sx
from .core import CapacityError, DomainError, InputError, bits, mask_of, sorted_family


def _load(path: str) -> tuple[Any, str]:
    """JSON document and its base directory; '-' reads standard input."""
    if path == "-":
        return json.loads(sys.stdin.read()), "."
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle), os.path.dirname(path) or "."


def _subset_option(text: str, n: int) -> int:
    if not text.strip():
        return 0
    return mask_of((int(v) for v in text.split(",")), n)


def _report(ok: bool, result: Any) -> int:
    sys.stdout.write(json.dumps({"ok": ok, "result": result}, sort_keys=True) + "\n")
    return 0 if ok else 1


def _family_lists(fam) -> list[list[int]]:
    return [list(t) for t in sorted_family(fam) if t]


# --- handlers, one per subcommand ------------------------------------------


def cmd_validate(args) -> int:
    doc, _ = _load(args.input)
    n, fam = cio.parse_family(doc)
    ok = sx.validate_structure(n, fam)
    return _report(ok, {"valid": ok})


def cmd_generate(args) -> int:
    doc, _ = _load(args.input)
    n, fam = cio.parse_family(doc)
    return _report(True, cio.emit_space(sx.Space(n, sx.generate(n, fam, args.integral))))


def cmd_components(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    comps, absent = sx.connected_components(sp)
    return _report(True, {"components": [list(bits(c)) for c in comps], "absent": list(bits(absent))})


def cmd_induce(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    return _report(True, cio.emit_space(sx.induced(sp, _subset_option(args.subset, sp.n))))


def cmd_quotient(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    pe = cio.parse_classes_option(args.classes, sp.n)
    return _report(True, cio.emit_space(sx.quotient(sp, pe)))


def cmd_quotient_partial(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    pe = cio.parse_classes_option(args.classes, sp.n)
    return _report(True, cio.emit_space(sx.quotient_partial(sp, pe)))


def cmd_structural_quotient(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    pe = cio.parse_classes_option(args.classes, sp.n)
    return _report(True, cio.emit_space(sx.structural_quotient(sp, pe)))


def cmd_saturate(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    return _report(True, cio.emit_space(sx.saturate(sp)))


def cmd_separate(args) -> int:
    dev = cio.parse_device(_load(args.input)[0])
    verdict = sx.separated(dev, _subset_option(args.subset, dev.n))
    return _report(True, {"separated": verdict})


def cmd_from_device(args) -> int:
    dev = cio.parse_device(_load(args.input)[0])
    return _report(True, cio.emit_space(sx.space_from_device(dev.n, dev)))


def cmd_canonical_device(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    return _report(True, cio.emit_device(sx.canonical_device(sp)))


def cmd_morphism_check(args) -> int:
    source = cio.parse_space(_load(args.source)[0])
    target = cio.parse_space(_load(args.target)[0])
    pointmap = cio.parse_pointmap_option(args.map, source.n, target.n)
    ok = sx.morphism_check(pointmap, source, target)
    return _report(ok, {"connective": ok})


def cmd_order(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    report = od.order_report(sp)
    report["irreducibles"] = [list(t) for t in report["irreducibles"]]
    return _report(True, report)


def cmd_leaves(args) -> int:
    fol = cio.parse_foliation(_load(args.input)[0])
    return _report(True, {"leaves": [list(bits(m)) for m in fo.leaves(fol)]})


def cmd_leaf_space(args) -> int:
    fol = cio.parse_foliation(_load(args.input)[0])
    space = fo.leaf_space_induced(fol) if args.entrant else fo.leaf_space_quotient(fol)
    return _report(True, cio.emit_space(space))


def cmd_rep_validate(args) -> int:
    rho = cio.parse_representation(_load(args.input)[0])
    ok = rp.rep_validate(rho, require_connected_images=args.connected_images)
    return _report(ok, {"valid": ok})


def cmd_rep_classify(args) -> int:
    rho = cio.parse_representation(_load(args.input)[0])
    valid = rp.rep_validate(rho)
    return _report(
        True,
        {
            "valid": valid,
            "clear": rp.is_clear(rho),
            "distinct": rp.is_distinct(rho),
        },
    )


def cmd_rep_compose(args) -> int:
    tau = cio.parse_representation(_load(args.outer)[0])
    rho = cio.parse_representation(_load(args.inner)[0])
    return _report(True, cio.emit_representation(rp.compose(tau, rho)))


def cmd_double(args) -> int:
    sp = cio.parse_space(_load(args.input)[0])
    return _report(True, cio.emit_representation(rp.canonical_double(sp)))


def cmd_phi(args) -> int:
    rho = cio.parse_representation(_load(args.input)[0])
    return _report(True, cio.emit_foliation(rp.phi(rho, args.gamma0, args.gamma1)))


def cmd_rdown(args) -> int:
    fol = cio.parse_foliation(_load(args.input)[0])
    return _report(True, cio.emit_representation(rp.r_down(fol)))


def cmd_rup(args) -> int:
    fol = cio.parse_foliation(_load(args.input)[0])
    return _report(True, cio.emit_representation(rp.r_up(fol)))


def cmd_adjunction_verify(args) -> int:
    fol = cio.parse_foliation(_load(args.foliation)[0])
    rho = cio.parse_representation(_load(args.representation)[0])
    report = rp.adjunction_verify(fol, rho)
    return _report(report["bijection"] and report["naturality"], report)


def cmd_prop18(args) -> int:
    rho = cio.parse_representation(_load(args.input)[0])
    fwd, bwd = rp.prop18_iso(rho)
    result = {
        "alpha": list(fwd.alpha),
        "beta": list(fwd.beta),
        "inverse_alpha": list(bwd.alpha),
        "verified": True,
    }
    return _report(True, result)


def cmd_cat_validate(args) -> int:
    doc, base = _load(args.input)
    cat = cio.parse_category(doc, base)
    ok = fc.cat_validate(cat)
    return _report(ok, {"valid": ok})


def cmd_dyn_validate(args) -> int:
    doc, base = _load(args.input)
    dyn = cio.parse_dynamics(doc, base)
    ok = dy.dynamics_validate(dyn)
    return _report(ok, {"valid": ok, "proper": dy.is_proper(dyn)})


def cmd_zeta(args) -> int:
    doc, base = _load(args.input)
    return _report(True, cio.emit_dynamics(dy.zeta(cio.parse_category(doc, base))))


def cmd_xi(args) -> int:
    doc, base = _load(args.input)
    return _report(True, cio.emit_dynamics(dy.xi(cio.parse_category(doc, base))))


def cmd_preorder(args) -> int:
    doc, base = _load(args.input)
    dyn = cio.parse_dynamics(doc, base)
    pairs = sorted(dy.state_preorder(dyn))
    return _report(True, {"pairs": [list(p) for p in pairs]})


def cmd_orbit(args) -> int:
    doc, base = _load(args.input)
    dyn = cio.parse_dynamics(doc, base)
    return _report(True, {"orbit": sorted(dy.orbit(dyn, args.state))})


def cmd_tc(args) -> int:
    doc, base = _load(args.input)
    dyn = cio.parse_dynamics(doc, base)
    return _report(True, cio.emit_category(dy.tc(dyn)))


def cmd_essentialize(args) -> int:
    doc, base = _load(args.input)
    dyn = cio.parse_dynamics(doc, base)
    return _report(True, cio.emit_dynamics(dy.essentialize(dyn)))


def cmd_verticalize(args) -> int:
    doc, base = _load(args.input)
    return _report(True, cio.emit_category(dy.verticalize(cio.parse_category(doc, base))))


def cmd_av(args) -> int:
    doc, base = _load(args.input)
    dyn = cio.parse_dynamics(doc, base)
    cover = dy.av(dyn)
    ess = dy.essentialize(dyn)
    flags = dy.dynamorphism_check(cover, ess, dyn)
    result = {"dynamorphism": cio.emit_dynamorphism(cover, ess, dyn), "flags": flags}
    return _report(flags["valid"], result)


def _load_dynamorphism(args) -> tuple[dy.Dynamorphism, dy.Dynamics, dy.Dynamics]:
    source_doc, source_base = _load(args.source)
    target_doc, target_base = _load(args.target)
    source = cio.parse_dynamics(source_doc, source_base)
    target = cio.parse_dynamics(target_doc, target_base)
    m_doc, _ = _load(args.morphism)
    return cio.parse_dynamorphism(m_doc, source, target), source, target


def cmd_dynamorphism_check(args) -> int:
    m, source, target = _load_dynamorphism(args)
    flags = dy.dynamorphism_check(m, source, target)
    return _report(flags["valid"], flags)


def cmd_solution_check(args) -> int:
    m, tau, alpha = _load_dynamorphism(args)
    flags = dy.solution_check(m, tau, alpha)
    return _report(flags["is_solution"], flags)


def cmd_interp_in(args) -> int:
    m, alpha, beta = _load_dynamorphism(args)
    flags = dy.interp_in_check(m, alpha, beta)
    return _report(flags["entrante"], flags)


def cmd_interp_out(args) -> int:
    m, beta, alpha = _load_dynamorphism(args)
    flags = dy.interp_out_check(m, beta, alpha)
    return _report(flags["sortante"], flags)


def cmd_interp_associate(args) -> int:
    if args.kind == "in":
        m, alpha, beta = _load_dynamorphism(args)
        tilde, flags = dy.interp_associate(m, alpha, beta, "in")
        emitted = cio.emit_dynamorphism(tilde, beta, alpha)
    else:
        m, beta, alpha = _load_dynamorphism(args)
        tilde, flags = dy.interp_associate(m, alpha, beta, "out")
        emitted = cio.emit_dynamorphism(tilde, alpha, beta)
    return _report(flags["mixte"], {"tilde": emitted, **flags})


def cmd_interp_trans(args) -> int:
    m, beta, alpha = _load_dynamorphism(args)
    flags = dy.interp_trans_check(m, beta, alpha)
    return _report(flags["interpretation"], flags)


def cmd_conncat_validate(args) -> int:
    doc, base = _load(args.input)
    conn = cio.parse_conncat(doc, base)
    ok = cc.conncat_validate(conn)
    return _report(ok, {"valid": ok})


def cmd_conncat_generate(args) -> int:
    doc, base = _load(args.input)
    cat, fam = cio.parse_arrow_family(doc, base)
    generated = cc.conncat_generate(cat, fam, args.integral)
    names = [[cat.arrows[i] for i in bits(m)] for m in sorted(generated)]
    return _report(True, {"family": sorted(names)})


def cmd_brunnian_order(args) -> int:
    doc, base = _load(args.input)
    cat = cio.parse_category(doc, base)
    structure = cc.brunnian_structure(cat)
    report = od.order_report(sx.Space(len(cat.arrows), structure))
    report["irreducibles"] = [[cat.arrows[i] for i in t] for t in report["irreducibles"]]
    return _report(True, report)


def cmd_monoid_check(args) -> int:
    elements, table, _unit, fam = cio.parse_monoid(_load(args.input)[0])
    flags = cc.monoid_connective_check(elements, table, fam)
    return _report(flags["connective"], flags)


def cmd_object_connectivity(args) -> int:
    doc, base = _load(args.input)
    cat = cio.parse_category(doc, base)
    space = cc.object_connectivity(cat)
    return _report(True, {"objects": list(cat.obs), **cio.emit_space(space)})


def cmd_dyn_foliation(args) -> int:
    doc, base = _load(args.input)
    conn = cio.parse_conndynamics(doc, base)
    fol = cd.dyn_foliation(conn)
    return _report(
        True,
        {
            "states": list(conn.state_order),
            "foliation": cio.emit_foliation(fol),
            "leaves": cd.dyn_leaves(conn),
        },
    )


def cmd_dyn_order(args) -> int:
    doc, base = _load(args.input)
    conn = cio.parse_conndynamics(doc, base)
    return _report(True, {"order": cd.dyn_order(conn), "leaves": cd.dyn_leaves(conn)})


# --- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conndyn",
        description="exact finite connectivity structures, foliations, representations and categorical dynamics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, *, inputs=("input",), help=""):
        p = sub.add_parser(name, help=help)
        for inp in inputs:
            p.add_argument(inp, help="JSON file, or - for standard input")
        p.set_defaults(handler=handler)
        return p

    add("validate", cmd_validate, help="check a subset family is a connectivity structure")
    p = add("generate", cmd_generate, help="close a family into a structure")
    p.add_argument("--integral", action="store_true")
    add("components", cmd_components, help="maximal connected parts and the absent part")
    p = add("induce", cmd_induce, help="structure induced on a subset")
    p.add_argument("--subset", required=True, help="comma-separated point indices")
    for name, handler in (
        ("quotient", cmd_quotient),
        ("quotient-partial", cmd_quotient_partial),
        ("structural-quotient", cmd_structural_quotient),
    ):
        p = add(name, handler, help="collapse classes of points")
        p.add_argument("--classes", required=True, help="classes as 'i,j;k,...'")
    add("saturate", cmd_saturate, help="saturation of a structure")
    p = add("separate", cmd_separate, help="does the device separate the subset")
    p.add_argument("--subset", required=True)
    add("from-device", cmd_from_device, help="space defined by a separation device")
    add("canonical-device", cmd_canonical_device, help="separating pairs recovering an integral space")
    p = add("morphism-check", cmd_morphism_check, inputs=("source", "target"), help="is a point map connective")
    p.add_argument("--map", required=True, help="images f(0),f(1),... comma-separated")
    add("order", cmd_order, help="irreducible parts and connectivity order")
    add("leaves", cmd_leaves, help="leaves of a foliation")
    p = add("leaf-space", cmd_leaf_space, help="space on the leaves")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--entrant", action="store_true", help="induced flavour")
    grp.add_argument("--sortant", action="store_true", help="quotient flavour")
    p = add("rep-validate", cmd_rep_validate, help="is the map a representation")
    p.add_argument("--connected-images", action="store_true", help="require every image connected")
    add("rep-classify", cmd_rep_classify, help="validity, clarity, distinctness")
    add("rep-compose", cmd_rep_compose, inputs=("outer", "inner"), help="Kleisli composite outer⊙inner")
    add("double", cmd_double, help="clear distinct doubling representation")
    p = add("phi", cmd_phi, help="foliation of a representation")
    p.add_argument("--gamma0", default="K", choices=["D", "K", "G"])
    p.add_argument("--gamma1", default="K", choices=["D", "K", "G"])
    add("rdown", cmd_rdown, help="representation of the induced leaf space")
    add("rup", cmd_rup, help="representation of the quotient leaf space")
    add(
        "adjunction-verify",
        cmd_adjunction_verify,
        inputs=("foliation", "representation"),
        help="hom-set bijection between the two leaf constructions",
    )
    add("prop18", cmd_prop18, help="isomorphism with the leaf representation of the image foliation")
    add("cat-validate", cmd_cat_validate, help="category laws")
    add("dyn-validate", cmd_dyn_validate, help="functor laws of a dynamics")
    add("zeta", cmd_zeta, help="essential dynamics of a category")
    add("xi", cmd_xi, help="existential dynamics of a category")
    add("preorder", cmd_preorder, help="one-step reachability preorder on states")
    p = add("orbit", cmd_orbit, help="orbit of a state")
    p.add_argument("--state", required=True)
    add("tc", cmd_tc, help="transition category of a proper dynamics")
    add("essentialize", cmd_essentialize, help="essential dynamics of the transition category")
    add("verticalize", cmd_verticalize, help="transition category of the existential dynamics")
    add("av", cmd_av, help="covering of a dynamics by its essentialization")
    for name, handler in (
        ("dynamorphism-check", cmd_dynamorphism_check),
        ("solution-check", cmd_solution_check),
        ("interp-in", cmd_interp_in),
        ("interp-out", cmd_interp_out),
        ("interp-trans", cmd_interp_trans),
    ):
        add(name, handler, inputs=("morphism", "source", "target"), help="check a dynamorphism")
    p = add("interp-associate", cmd_interp_associate, inputs=("morphism", "source", "target"))
    p.add_argument("--kind", required=True, choices=["in", "out"])
    add("conncat-validate", cmd_conncat_validate, help="categorical connectivity structure laws")
    p = add("conncat-generate", cmd_conncat_generate, help="least categorical structure over a family")
    p.add_argument("--integral", action="store_true")
    add("brunnian-order", cmd_brunnian_order, help="connectivity order of the arrow structure")
    add("monoid-check", cmd_monoid_check, help="product closure of a monoid structure")
    add("object-connectivity", cmd_object_connectivity, help="object components of a category")
    add("dyn-foliation", cmd_dyn_foliation, help="foliation of a connective dynamics")
    add("dyn-order", cmd_dyn_order, help="connectivity order of a connective dynamics")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (InputError, CapacityError, DomainError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stdout.write(json.dumps({"error": str(exc), "ok": False}, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
