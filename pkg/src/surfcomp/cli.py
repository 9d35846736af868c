"""Command-line front end.

Exit codes: 0 for OK or EMPTY, 2 for OUT_OF_RANGE, 1 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .components import (
    SurfaceSpec,
    Status,
    applicability,
    component_group,
    flat_bundle_report,
)
from .conjugacy import KacPoint, MarkingSpec, format_rational, preimage_components
from .groups import build_model, named_group, spec_from_dict, spec_to_dict
from .rootdata import CartanType, center_group, extended_diagram
from .spincheck import construct_witness, evaluate_obstruction, obstruction_values

EXIT_OK, EXIT_ERROR, EXIT_OUT_OF_RANGE = 0, 1, 2


class InputError(ValueError):
    pass


def _load_json_arg(value: str, what: str):
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            text = path.read_text()
        except OSError as e:
            raise InputError(f"{what}: cannot read {path}: {e.strerror}") from None
    else:
        text = value
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{what}: invalid JSON ({e.msg})") from None


def parse_group(value: str):
    if value.startswith("@") or value.lstrip().startswith("{"):
        return spec_from_dict(_load_json_arg(value, "--group"))
    return named_group(value)


def parse_markings(value: str | None) -> list[MarkingSpec]:
    if value is None:
        return []
    data = _load_json_arg(value, "--markings")
    if isinstance(data, dict):
        data = data.get("markings")
    if not isinstance(data, list):
        raise InputError("--markings: expected a list of markings or {\"markings\": [...]}")
    return [MarkingSpec.from_dict(m, f"markings[{k}]") for k, m in enumerate(data)]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) and v or isinstance(v, list) and any(isinstance(x, dict) for x in v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(map(_scalar, v)) + "]"
    if v is None:
        return "-"
    return str(v)


def cmd_count(args) -> tuple[dict, int]:
    surface = SurfaceSpec.parse(args.surface)
    app = applicability(surface)
    if not app.ok:
        return {"status": Status.OUT_OF_RANGE.value, "reason": app.reason}, EXIT_OUT_OF_RANGE
    model = build_model(parse_group(args.group))
    report = component_group(surface, parse_markings(args.markings), model)
    out = report.to_dict()
    if args.flat_bundles and report.status is Status.OK and not report.trivial:
        out["flat_bundle"] = flat_bundle_report(surface, model).to_dict()
    code = EXIT_OUT_OF_RANGE if report.status is Status.OUT_OF_RANGE else EXIT_OK
    return out, code


def _center_of_type(t: CartanType) -> dict:
    c = center_group(t)
    d = extended_diagram(t)
    return {
        "type": str(t),
        "marks": list(d.marks),
        "center": str(c.group.iso_type()),
        "order": len(c.elements),
        "elements": [{"label": z.label, "perm": list(z.perm)} for z in c.elements],
    }


def cmd_center(args) -> tuple[dict, int]:
    if args.type:
        return _center_of_type(CartanType.parse(args.type)), EXIT_OK
    if not args.group:
        raise InputError("center: give --group or --type")
    model = build_model(parse_group(args.group))
    return {
        "group": spec_to_dict(model.spec),
        "factors": [_center_of_type(t) for t in model.factors],
        "pi1_G": str(model.pi1_G_type),
        "pi1_Gss": str(model.pi1_Gss_type),
        "ker_rho_ss": [list(z.labels) for z in model.ker_rho_ss],
        "lambda_check": [list(v) for v in model.lambda_check],
        "D_order": model.D_order,
    }, EXIT_OK


def cmd_classes(args) -> tuple[dict, int]:
    model = build_model(parse_group(args.group))
    markings = parse_markings(args.markings)
    if not markings:
        raise InputError("--markings: classes needs at least one marking")
    rows = []
    for m in markings:
        info = preimage_components(m, model)
        rows.append({"marking": m.to_dict(), "count": info.count, "degree": info.degree,
                     "K_D": [list(z.labels) for z in info.K_D]})
    return {"group": str(model.spec), "classes": rows}, EXIT_OK


def cmd_spincheck(args) -> tuple[dict, int]:
    if args.group:
        spec = parse_group(args.group)
        if spec.name is None or spec.name.replace(" ", "").upper() != "SO(3)":
            raise InputError("--group: spincheck only supports SO(3)")
    surface = SurfaceSpec.parse(args.surface)
    app = applicability(surface)
    if not app.ok or app.trivial:
        return {"status": Status.OUT_OF_RANGE.value, "reason": app.reason}, EXIT_OUT_OF_RANGE
    markings = parse_markings(args.markings)
    phis: list[Fraction] = []
    for k, m in enumerate(markings):
        if m.torus or len(m.alcove.coords) != 1 or len(m.alcove.coords[0]) != 2:
            raise InputError(f"markings[{k}]: spincheck markings are SO(3) Kac points [[s0, s1]]")
        phis.append(m.alcove.coords[0][1])
    if args.phi:
        phis = [Fraction(p) for p in args.phi.split(",")]
    if len(phis) != surface.boundary:
        raise InputError(f"markings: surface has r={surface.boundary} boundary components "
                         f"but {len(phis)} class angles were given")
    model = build_model(named_group("SO(3)"))
    markings = [MarkingSpec((), _a1_kac(p)) for p in phis]
    report = component_group(surface, markings, model)
    rng = np.random.default_rng(args.seed) if args.seed is not None else None
    witnesses = []
    value_sets = []
    for target in (1, -1):
        w = construct_witness(surface, phis, target, rng)
        ob = evaluate_obstruction(w)
        vals = obstruction_values(w)
        value_sets.append(vals)
        witnesses.append({"target": target, "obstruction": ob.sign, "residual": ob.residual,
                          "ambiguous_lifts": list(ob.ambiguous), "values_mod_J": sorted(vals),
                          "tuple": w.to_dict()})
    distinct = 1 if value_sets[0] & value_sets[1] else 2
    return {
        "surface": surface.to_dict(),
        "phi_over_pi": [format_rational(p) for p in phis],
        "witnesses": witnesses,
        "distinct_components": distinct,
        "predicted_count": report.count,
        "agrees": distinct == report.count,
    }, EXIT_OK


def _a1_kac(p: Fraction) -> KacPoint:
    return KacPoint(((1 - p, p),))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surfcomp",
        description="Connected components of marked surface group representation spaces.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group_required=True):
        p.add_argument("--group", required=group_required,
                       help="group name such as 'SO(3)', 'U(2) x SU(3)', or @file.json")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("count", help="component group of Hom_C(pi_1(Sigma), G)/G")
    common(p)
    p.add_argument("--surface", required=True, help="l=<handles>,r=<boundary>,kind=<0|1|2>")
    p.add_argument("--markings", help="@file.json or inline JSON list of markings")
    p.add_argument("--flat-bundles", action="store_true",
                   help="add the flat bundle summary for closed surfaces")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("center", help="center and fundamental group data")
    common(p, group_required=False)
    p.add_argument("--type", help="a single Cartan type such as E6")
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("classes", help="preimage components and covering degrees of markings")
    common(p)
    p.add_argument("--markings", required=True)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("spincheck", help="numerical SO(3) obstruction check")
    common(p, group_required=False)
    p.add_argument("--surface", required=True)
    p.add_argument("--markings")
    p.add_argument("--phi", help="comma-separated class angles as multiples of pi, e.g. 1/4,1/2")
    p.add_argument("--seed", type=int, help="randomize and conjugate the witnesses")
    p.set_defaults(func=cmd_spincheck)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        out, code = args.func(args)
    except (ValueError, AssertionError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_ERROR
    if args.format == "json":
        print(dumps(out), file=stdout)
    else:
        print(_text(out), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
