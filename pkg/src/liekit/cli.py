"""Command-line front end: ``liekit {algebra,roots,dynkin,weyl,orbit} SPEC``."""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from .algebra import (
    FAMILIES,
    build_classical,
    direct_sum,
    is_compact_type,
    is_semisimple,
    killing_form,
)
from .cartan import CLUSTER_TOL, root_system, root_system_to_json
from .dynkin import diagram_to_json, dynkin_diagram, render_ascii
from .errors import CompactTypeError, LieError, PreconditionError, RegularityError
from .geometry import orbit_report
from .weyl import generate, weyl_group_to_json

EXIT_OK, EXIT_PARSE, EXIT_STRUCTURE, EXIT_INPUT, EXIT_TOLERANCE = 0, 2, 3, 4, 5

_SPEC = re.compile(r"^(su|so|sp|u|sl|gl)(\d+)(?:_(r|c))?$")


class SpecError(ValueError):
    pass


def parse_spec(text: str):
    """'su3', 'so7', 'sl2_r', 'su2+su3' -> LieAlgebra."""
    parts = text.strip().lower().split("+")
    algebras = []
    for part in parts:
        m = _SPEC.match(part)
        if not m:
            raise SpecError(f"cannot parse algebra spec {part!r}")
        fam, n, field = m.group(1), int(m.group(2)), m.group(3)
        if fam in ("sl", "gl"):
            if field is None:
                raise SpecError(f"{fam} needs a field suffix, e.g. {fam}{n}_r or {fam}{n}_c")
            fam = f"{fam}_{field}"
        elif field is not None:
            raise SpecError(f"{fam} takes no field suffix")
        if fam not in FAMILIES:
            raise SpecError(f"unknown family {fam!r}")
        try:
            algebras.append(build_classical(fam, n))
        except LieError as exc:
            raise SpecError(str(exc)) from exc
    L = algebras[0]
    for other in algebras[1:]:
        L = direct_sum(L, other)
    return L


def _fmt(x):
    x = float(x)
    return f"{0.0 if x == 0 else x:.12g}"


def _round(obj):
    """Floats to 12 significant digits, recursively; -0 becomes 0."""
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(_fmt(obj))
    return obj


def _emit(obj):
    print(json.dumps(_round(obj), indent=2, sort_keys=False, ensure_ascii=False))


def _vec(v):
    return "[" + ", ".join(_fmt(x) for x in v) + "]"


def _roots(args):
    L = parse_spec(args.spec)
    return L, root_system(L, seed=args.seed, cluster_tol=args.tol)


def cmd_algebra(args):
    L = parse_spec(args.spec)
    sig = killing_form(L).signature
    semi = is_semisimple(L)
    compact = bool(semi and is_compact_type(L))
    rank = root_system(L, seed=args.seed, cluster_tol=args.tol).rank if compact else None
    info = {
        "name": L.name,
        "dim": L.dim,
        "ambient_size": L.ambient_size,
        "rank": rank,
        "killing_signature": list(sig),
        "semisimple": bool(semi),
        "compact_type": compact,
    }
    if args.json:
        _emit(info)
    else:
        for k, v in info.items():
            if k == "rank" and v is None:
                continue
            print(f"{k}: {str(v).lower() if isinstance(v, bool) else v}")
    return EXIT_OK


def cmd_roots(args):
    _, rs = _roots(args)
    if args.json:
        _emit(root_system_to_json(rs))
        return EXIT_OK
    print(f"rank: {rs.rank}")
    print(f"roots: {len(rs.roots)}")
    print(f"positive: {len(rs.positive)}")
    print("simple:")
    for m in rs.simple:
        print(f"  {_vec(rs.roots[m])}")
    print("all roots:")
    for m, a in enumerate(rs.roots):
        mark = "+" if m in rs.positive else "-"
        print(f"  {mark} {_vec(a)}")
    return EXIT_OK


def cmd_dynkin(args):
    _, rs = _roots(args)
    dg = dynkin_diagram(rs)
    if args.json:
        out = diagram_to_json(dg)
        out["ascii"] = render_ascii(dg)
        _emit(out)
        return EXIT_OK
    print(render_ascii(dg))
    print("labels: " + ", ".join(label for _, label in dg.components))
    return EXIT_OK


def cmd_weyl(args):
    _, rs = _roots(args)
    W = generate(rs)
    if args.json:
        _emit({"order": W.order} if args.order_only else weyl_group_to_json(W))
    elif args.order_only:
        print(W.order)
    else:
        print(f"order: {W.order}")
        print(f"generators: {list(W.generators)}")
    return EXIT_OK


def cmd_orbit(args):
    _, rs = _roots(args)
    r = rs.rank
    Z = np.array(args.z, dtype=float) if args.z is not None else rs.cartan.preferred
    N = np.array(args.n, dtype=float) if args.n is not None else np.zeros(r)
    if len(Z) != r or len(N) != r:
        print(f"error: --z and --n need {r} coordinates", file=sys.stderr)
        return EXIT_PARSE
    rep = orbit_report(rs, Z, N, samples=args.samples, seed=args.seed)
    if args.json:
        _emit(rep)
    else:
        print(f"Z: {_vec(Z)}")
        print(f"N: {_vec(N)}")
        print(f"canonical Z+N: {_vec(rep['canonical_Z_plus_N'])}")
        print(f"orbit dimension: {rep['orbit_dim']}")
        if rep["dimension_drop"]:
            print(f"orbit dimension drop: {rep['orbit_dim']} -> {rep['orbit_dim_Z_plus_N']}")
        print("principal curvatures:")
        for pc in rep["principal_curvatures"]:
            print(f"  root {_vec(pc['root'])}: {_fmt(pc['value'])} (x{pc['multiplicity']})")
        print(f"parallel orbit check: {rep['parallel_orbit_check']}")
    return EXIT_OK if rep["parallel_orbit_check"] == "PASS" else EXIT_TOLERANCE


def _global_flags(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for random retries")
    parser.add_argument("--tol", type=float, default=d(CLUSTER_TOL),
                        help="weight clustering tolerance")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liekit", description="Compact Lie algebra toolkit")
    _global_flags(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("algebra", parents=[common], help="dimension, Killing signature, compactness")
    s.add_argument("spec")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("roots", parents=[common], help="root system")
    s.add_argument("spec")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("dynkin", parents=[common], help="Dynkin diagram and classification")
    s.add_argument("spec")
    s.add_argument("--ascii", action="store_true", help="ASCII diagram (default)")
    s.set_defaults(func=cmd_dynkin)

    s = sub.add_parser("weyl", parents=[common], help="Weyl group")
    s.add_argument("spec")
    s.add_argument("--order-only", action="store_true")
    s.set_defaults(func=cmd_weyl)

    s = sub.add_parser("orbit", parents=[common], help="adjoint orbit through Z in t")
    s.add_argument("spec")
    s.add_argument("--z", type=float, nargs="+")
    s.add_argument("--n", type=float, nargs="+")
    s.add_argument("--samples", type=int, default=8)
    s.set_defaults(func=cmd_orbit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_PARSE
    except RegularityError as exc:
        print(f"error: {exc}; vanishing roots: {exc.vanishing}", file=sys.stderr)
        return EXIT_INPUT
    except (CompactTypeError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE
    except LieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
