"""Command-line front end.

Every command prints one JSON document with ``command``, ``status``,
``inputs`` and ``result`` keys.  Exit codes: 0 ok, 2 not-applicable (a width
or radius budget rules the operation out), 1 error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Callable

from . import constructions, covering, pipeline, verify
from .core import DEFAULT_TOL, angular_distance, distance_to_great_sphere, dualize_cap, dualize_zone
from .errors import BudgetError, ConditionsViolated, ZoneCoverError
from .instance import (
    Instance,
    InstanceError,
    cap_to_dict,
    instance_to_dict,
    load_instance,
    parse_instance,
    zone_to_dict,
)
from .plot import render_svg

log = logging.getLogger("zonecover")

EXIT_OK, EXIT_ERROR, EXIT_NOT_APPLICABLE = 0, 1, 2


class NotApplicable(Exception):
    pass


def _coords(v) -> list[float]:
    return [float(c) for c in getattr(v, "coords", v)]


def _certificate_dict(cert: covering.MergeCertificate) -> dict:
    return {
        "merged": cap_to_dict(cert.merged),
        "w": _coords(cert.w),
        "alpha": cert.alpha,
        "slack_norm": cert.slack_norm,
        "slack_per_cap": list(cert.slack_per_cap),
    }


def _coverage_dict(report: verify.CoverageReport, listed: int = 10) -> dict:
    return {
        "method": report.method.value,
        "total_samples": report.total_samples,
        "covered": report.covered,
        "uncovered_count": int(len(report.uncovered)),
        "uncovered": [_coords(p) for p in report.uncovered[:listed]],
        "min_margin": report.min_margin,
    }


# each command returns (result payload, extra points for the svg plot)


def cmd_refute(inst: Instance, args):
    inst.require("zones")
    outcome = pipeline.refute_or_report(inst.zones, args.tol)
    if isinstance(outcome, pipeline.TotalWidthAtLeastPi):
        raise NotApplicable(f"total width {outcome.total_width!r} is not below pi")
    result = {
        "witness": _coords(outcome.witness),
        "clearances": list(outcome.clearances),
        "iterations": outcome.iterations,
        "merges": len(outcome.trace),
    }
    if args.trace:
        result["trace"] = [
            {
                "merged_indices": sorted(step.merged_indices),
                "covers": sorted(step.covers),
                "replacement": zone_to_dict(step.replacement),
                "certificate": _certificate_dict(step.certificate),
            }
            for step in outcome.trace
        ]
    return result, [outcome.witness]


def cmd_verify(inst: Instance, args):
    inst.require("zones")
    d = inst.dimension
    samples = verify.sample_sphere(d, args.samples, args.seed)
    reports = [verify.verify_covering(inst.zones, samples, args.tol)]
    if d == 1:
        reports.append(verify.exact_cover_circle(inst.zones, args.tol))
    elif d == 2:
        cand = verify.arrangement_candidates_s2(inst.zones)
        reports.append(
            verify.verify_covering(inst.zones, cand, args.tol, method=verify.Method.ARRANGEMENT_S2)
        )
    result = {"coverage": [_coverage_dict(r) for r in reports]}
    result["covered"] = all(r.covered for r in reports)
    if inst.points:
        flags = verify.classify_points(inst.zones, inst.points, args.tol)
        result["points"] = [
            {"point": _coords(p), "uncovered": flag} for p, flag in zip(inst.points, flags)
        ]
        if any(flags):
            result["covered"] = False
    return result, list(inst.points)


def cmd_merge(inst: Instance, args):
    inst.require("caps")
    cert = covering.merge_caps(inst.caps, args.tol)
    strict, index = covering.strict_shrink_possible(inst.caps)
    result = _certificate_dict(cert)
    result["strict_shrink_possible"] = strict
    result["equality_index"] = index
    return result, []


def cmd_generate_tight(inst: Instance, args):
    if args.widths:
        widths = [math.radians(w) if args.degrees else w for w in args.widths]
    elif args.n and args.equal:
        widths = [math.pi / args.n] * args.n
    else:
        raise InstanceError("generate-tight needs --n N --equal or --widths W1 W2 ...")
    zones = constructions.tight_configuration([w / 2.0 for w in widths], args.dimension)
    generated = Instance(args.dimension, zones=zones)
    return {"instance": instance_to_dict(generated)}, []


def cmd_check_tight(inst: Instance, args):
    inst.require("zones")
    cert = constructions.check_tightness(inst.zones, args.tol)
    if isinstance(cert, constructions.NotTight):
        return {"tight": False, "condition": cert.condition, "reason": cert.reason}, []
    return {
        "tight": True,
        "ordering": list(cert.ordering),
        "plane_basis": [_coords(v) for v in cert.plane_basis],
        "line_angles": list(cert.line_angles),
        "residuals": list(cert.residuals),
        "coplanarity_defect": cert.coplanarity_defect,
    }, []


def cmd_dualize(inst: Instance, args):
    if not inst.caps and not inst.zones:
        raise InstanceError("dualize needs 'caps' or 'zones'")
    dual = Instance(
        inst.dimension,
        zones=[dualize_cap(c) for c in inst.caps],
        caps=[dualize_zone(z) for z in inst.zones],
    )
    return {"instance": instance_to_dict(dual)}, []


def cmd_antipodal_point(inst: Instance, args):
    inst.require("caps")
    p = constructions.antipodal_common_point(inst.caps, args.tol)
    dist = [min(angular_distance(p, c.center), angular_distance(p, -c.center)) for c in inst.caps]
    return {"point": _coords(p), "distances": dist}, [p]


def cmd_avoiding_cap(inst: Instance, args):
    inst.require("great_spheres")
    cap = constructions.avoiding_cap(inst.great_spheres, args.tol)
    clear = [distance_to_great_sphere(cap.center, g.normal) for g in inst.great_spheres]
    return {"point": _coords(cap.center), "cap": cap_to_dict(cap), "clearances": clear}, [cap.center]


def cmd_refute_cap(inst: Instance, args):
    inst.require("caps")
    if len(inst.caps) != 1:
        raise InstanceError("field 'caps': refute-cap takes exactly one target cap")
    target = inst.caps[0]
    p = constructions.refute_cap_covering(target, inst.zones, args.tol)
    clear = list(pipeline.clearances(inst.zones, p.array)) if inst.zones else []
    return {
        "point": _coords(p),
        "target_distance": angular_distance(p, target.center),
        "clearances": [float(c) for c in clear],
    }, [p]


def cmd_separate(inst: Instance, args):
    inst.require("caps")
    g = constructions.separating_great_sphere(inst.caps, args.tol)
    dist = [distance_to_great_sphere(c.center, g.normal) for c in inst.caps]
    return {"great_sphere": {"normal": _coords(g.normal)}, "center_distances": dist}, []


COMMANDS: dict[str, Callable] = {
    "refute": cmd_refute,
    "verify": cmd_verify,
    "merge": cmd_merge,
    "generate-tight": cmd_generate_tight,
    "check-tight": cmd_check_tight,
    "dualize": cmd_dualize,
    "antipodal-point": cmd_antipodal_point,
    "avoiding-cap": cmd_avoiding_cap,
    "refute-cap": cmd_refute_cap,
    "separate": cmd_separate,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zonecover", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("instance", nargs="?", help="instance or report JSON file, '-' for stdin")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--svg", metavar="PATH", help="write an orthographic plot (d = 2 only)")
    p.add_argument("--trace", action="store_true", help="include the merge trace")
    p.add_argument("--degrees", action="store_true", help="angles in the input are degrees")
    p.add_argument("-o", "--output", metavar="PATH", help="write the report here instead of stdout")
    g = p.add_argument_group("generate-tight")
    g.add_argument("--n", type=int)
    g.add_argument("--equal", action="store_true", help="n equal zones of width pi/n")
    g.add_argument("--widths", type=float, nargs="+")
    g.add_argument("--dimension", type=int, default=2)
    return p


def _write_svg(path: str, inst: Instance, extra_points) -> None:
    if inst.dimension != 2:
        log.warning("--svg ignored: plots need d = 2, instance has d = %d", inst.dimension)
        return
    svg = render_svg(
        zones=inst.zones,
        caps=inst.caps,
        great_spheres=inst.great_spheres,
        points=extra_points,
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    doc: dict = {"command": args.command}
    status, code = "ok", EXIT_OK
    inst = None
    try:
        if args.command == "generate-tight":
            inst = Instance(args.dimension)
        else:
            if args.instance is None:
                raise InstanceError(f"{args.command} needs an instance file")
            inst = load_instance(args.instance, degrees=args.degrees)
        doc["inputs"] = instance_to_dict(inst)
        result, points = COMMANDS[args.command](inst, args)
        doc["result"] = result
        if args.svg:
            shown = inst
            if "instance" in result:
                shown = parse_instance(result["instance"])
            _write_svg(args.svg, shown, points)
    except (NotApplicable, BudgetError, ConditionsViolated) as exc:
        status, code = "not-applicable", EXIT_NOT_APPLICABLE
        doc["reason"] = str(exc)
    except (ZoneCoverError, ValueError) as exc:
        status, code = "error", EXIT_ERROR
        doc["error"] = f"{type(exc).__name__}: {exc}"
    doc.setdefault("inputs", None)
    doc["status"] = status
    text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
