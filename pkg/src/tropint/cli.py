"""Command-line front end: ``tropint <command> SYSTEM.json [options]``."""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import tempfile

from . import __version__
from .degree import empirical_degree
from .errors import (DimensionMismatch, DimensionTooLarge, InvalidCodimension,
                     NonGenericInstance, NonGenericPerturbation, NotTransverse,
                     TropintError, UnsupportedDimension)
from .intersect import bezout_table, stable_intersection_2d, total_multiplicity
from .polytope import mixed_volume_ie, mixed_volume_interp
from .svg import hypersurface_svg, intersection_svg
from .systems import ParseError, dumps, parse_system
from .tropical import hypersurface

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_DIMENSION_CAP = 3
EXIT_ARITY = 4
EXIT_NON_GENERIC = 5
EXIT_BOUND_VIOLATION = 6
DEFAULT_SAMPLES = 200


class BoundViolation(TropintError):
    pass


class AlgorithmDisagreement(TropintError):
    pass


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, (DimensionTooLarge, UnsupportedDimension)):
        return EXIT_DIMENSION_CAP
    if isinstance(exc, (DimensionMismatch, InvalidCodimension)):
        return EXIT_ARITY
    if isinstance(exc, (NonGenericInstance, NonGenericPerturbation, NotTransverse)):
        return EXIT_NON_GENERIC
    if isinstance(exc, BoundViolation):
        return EXIT_BOUND_VIOLATION
    return EXIT_INTERNAL


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tropint-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _pick(system, index: int):
    if not 0 <= index < len(system.polynomials):
        raise DimensionMismatch(
            f"polynomial index {index} out of range 0..{len(system.polynomials) - 1}")
    return system.polynomials[index]


# -- commands -----------------------------------------------------------------

def cmd_hypersurface(system, args):
    p = _pick(system, args.poly)
    h = hypersurface(p)
    facets = []
    for f in h.facets:
        entry = {
            "base": f.base_point,
            "directions": f.directions,
            "normal": f.normal,
            "weight": f.weight,
            "dual_edge": f.dual_edge,
        }
        if h.cells is not None:
            entry["vertices"] = f.cell.vertices
            entry["rays"] = f.cell.rays
            entry["lineality"] = f.cell.lineality
        facets.append(entry)
    results = {"ambient_dim": p.ambient_dim, "facets": facets}
    if h.cells is not None:
        results["vertices"] = h.vertices
        results["balanced"] = h.is_balanced()
    svg = None
    if args.svg:
        if p.ambient_dim != 2:
            raise DimensionMismatch("SVG output needs a plane curve (vars = 2)")
        svg = hypersurface_svg(h)
    return {"poly": args.poly}, results, svg


def cmd_mixed_volume(system, args):
    n = system.vars
    indices = args.indices if args.indices is not None else list(range(len(system.polynomials)))
    if len(indices) != n:
        raise DimensionMismatch(f"mixed volume in R^{n} needs exactly {n} indices, got {len(indices)}")
    polys = [_pick(system, i).newton_polytope() for i in indices]
    ie = mixed_volume_ie(*polys)
    interp = mixed_volume_interp(*polys)
    results = {"indices": indices, "inclusion_exclusion": ie, "interpolation": interp,
               "normalized_mixed_volume": ie}
    if ie != interp:
        raise AlgorithmDisagreement(
            f"mixed volume algorithms disagree: inclusion-exclusion {ie}, interpolation {interp}")
    return {"indices": indices}, results, None


def cmd_stable_intersect(system, args):
    if system.vars != 2 or len(system.polynomials) != 2:
        raise DimensionMismatch(
            "stable-intersect needs exactly 2 polynomials in 2 variables, "
            f"got {len(system.polynomials)} in {system.vars}")
    p1, p2 = system.polynomials
    h1, h2 = hypersurface(p1), hypersurface(p2)
    points = stable_intersection_2d(h1, h2)
    total = total_multiplicity(points)
    mv = mixed_volume_ie(p1.newton_polytope(), p2.newton_polytope())
    if total != mv:
        raise NonGenericInstance(
            f"stable intersection total {total} differs from the mixed volume {mv}")
    results = {
        "points": [{"location": q.location, "multiplicity": q.multiplicity,
                    "normals": q.contributing_normals, "weights": q.contributing_weights,
                    "transverse": q.transverse} for q in points],
        "total": total,
        "normalized_mixed_volume": mv,
    }
    svg = intersection_svg(h1, h2, points) if args.svg else None
    return {}, results, svg


def _seed(args, system) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TROPINT_SEED")
    if env is not None:
        if not env.strip().isdigit():
            raise ParseError(f"TROPINT_SEED must be a decimal integer, got {env!r}")
        return int(env)
    return system.seed if system.seed is not None else 0


def cmd_degree_bound(system, args):
    p = _pick(system, args.poly)
    samples = args.samples or system.samples or DEFAULT_SAMPLES
    seed = _seed(args, system)
    kwargs = {"box": system.box} if system.box is not None else {}
    report = empirical_degree(p, samples, seed=seed, workers=args.threads, **kwargs)
    results = {
        "support": report.support,
        "diameter_bound": report.diameter_bound,
        "max_transverse_count": report.max_transverse_count,
        "samples": report.samples,
        "bound_satisfied": report.bound_satisfied,
        "weak_bound": report.weak_bound,
        "weak_bound_satisfied": report.weak_bound_satisfied,
        "discarded": report.discarded,
        "count_histogram": report.count_histogram,
    }
    echo = {"poly": args.poly, "samples": samples, "seed": seed}
    if not report.bound_satisfied:
        raise BoundViolation(
            f"transverse count {report.max_transverse_count} exceeds the diameter "
            f"{report.diameter_bound}", (echo, results))
    return echo, results, None


def cmd_bezout_bound(system, args):
    supports = [p.support for p in system.polynomials]
    rows = bezout_table(supports, args.codim, system.vars)
    best = max(v for _, v in rows)
    witness = next(s for s, v in rows if v == best)
    results = {
        "table": [{"subset": s, "normalized_mixed_volume": v} for s, v in rows],
        "bound": best,
        "witness": witness,
    }
    return {"codim": args.codim}, results, None


COMMANDS = {
    "hypersurface": cmd_hypersurface,
    "mixed-volume": cmd_mixed_volume,
    "stable-intersect": cmd_stable_intersect,
    "degree-bound": cmd_degree_bound,
    "bezout-bound": cmd_bezout_bound,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropint", description=__doc__)
    parser.add_argument("--version", action="version", version=f"tropint {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="SystemFile JSON")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hypersurface", parents=[common], help="cells of one tropical hypersurface")
    p.add_argument("--poly", type=int, default=0)
    p.add_argument("--svg")

    p = sub.add_parser("mixed-volume", parents=[common], help="normalized mixed volume, two ways")
    p.add_argument("--indices", type=int, nargs="+")

    p = sub.add_parser("stable-intersect", parents=[common], help="stable intersection of two plane curves")
    p.add_argument("--svg")

    p = sub.add_parser("degree-bound", parents=[common], help="sampled tropical degree vs diameter")
    p.add_argument("--poly", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("bezout-bound", parents=[common], help="Bezout-type bound for k hypersurfaces")
    p.add_argument("--codim", type=int, required=True)
    return parser


def _report(command, echo, raw: bytes, results) -> str:
    return dumps({
        "command": {"name": command, "options": echo},
        "input_digest": "sha256:" + hashlib.sha256(raw).hexdigest(),
        "results": results,
        "version": __version__,
    })


def _emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_ARITY
    try:
        try:
            with open(args.input, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            print(f"error: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
            return EXIT_PARSE
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError("input is not valid UTF-8") from None
        system = parse_system(text)
        echo, results, svg = COMMANDS[args.command](system, args)
    except BoundViolation as exc:
        echo, results = exc.args[1]
        _emit(args, _report(args.command, echo, raw, results))
        print(f"error: bound violated: {exc.args[0]}", file=sys.stderr)
        return EXIT_BOUND_VIOLATION
    except ParseError as exc:
        print(f"error: parse error at {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (TropintError, ArithmeticError, ValueError) as exc:
        code = _exit_code(exc)
        print(f"error: {exc}", file=sys.stderr)
        if code == EXIT_NON_GENERIC:
            print("hint: perturb coefficients so the instance is generic", file=sys.stderr)
        return code
    _emit(args, _report(args.command, echo, raw, results))
    if svg is not None:
        write_atomic(args.svg, svg)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
