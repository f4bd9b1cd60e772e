"""Batch command-line front end.

All subcommands are deterministic: identical inputs and seed produce
byte-identical output. Rationals print as p/q in lowest terms, floats
with 12 significant digits. Validation failures exit with status 2 and a
JSON diagnostic on stderr.
"""

import argparse
import csv
import io as _io
import json
import sys
from fractions import Fraction

import numpy as np

from . import adiabatic as adiabatic_mod
from . import curvature as curvature_mod
from . import euler as euler_mod
from . import morse as morse_mod
from . import pushforwards as pushforward_mod
from .complexes import PLFunction, barycentric_subdivide, product, signature_census
from .curvature import Embedding, equilateral_embedding
from .errors import CurvCalcError
from .euler import ConstructibleFunction, chi_c
from .io import (
    ComplexDocument,
    parse_complex,
    parse_constructible,
    parse_map,
    serialize_complex,
    serialize_constructible,
)

# Operation names per module, used by the dispatch-coverage test: every
# one of these must be exercised by at least one subcommand.
ALL_OPERATIONS = frozenset(
    {
        "complex_core.validate",
        "complex_core.star_link",
        "complex_core.barycentric_subdivide",
        "complex_core.signature_census",
        "complex_core.product",
        "complex_core.parse_serialize",
        "euler_calc.chi_c",
        "euler_calc.euler_integral",
        "euler_calc.floor_integral",
        "euler_calc.ceil_integral",
        "euler_calc.floor_integral_oracle_1d",
        "euler_calc.tentative_integral",
        "euler_calc.weight",
        "curvature.excess_angle",
        "curvature.vertex_curvature",
        "curvature.equilateral_embedding",
        "curvature.curvature_integral",
        "curvature.final_integral",
        "morse.morse_index",
        "morse.chi_sum_check",
        "morse.curvature_measure",
        "pushforward.pushforward",
        "pushforward.fiber_euler",
        "pushforward.check_functoriality",
        "pushforward.fubini_chi",
        "pushforward.fubini_curvature",
        "adiabatic.curvature_density",
        "adiabatic.adiabatic_sweep",
        "adiabatic.nonsplit_demo",
        "cli.run",
    }
)


def _fmt(x: float) -> float:
    return float(f"{x:.12g}")


def _dump_json(obj, out) -> None:
    out.write(json.dumps(obj) + "\n")


def _write_csv(rows, header, out) -> None:
    buffer = _io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    out.write(buffer.getvalue())


def _load_document(path: str) -> ComplexDocument:
    with open(path, encoding="utf-8") as handle:
        return parse_complex(handle.read())


def _embedding_for(doc: ComplexDocument, equilateral: bool) -> Embedding:
    if equilateral:
        return equilateral_embedding(doc.complex)
    if doc.coordinates is None:
        raise CurvCalcError("complex file has no coordinates; pass --equilateral")
    return Embedding(doc.complex, doc.coordinates)


def _require_alpha(doc: ComplexDocument):
    if doc.alpha is None:
        raise CurvCalcError("complex file defines no vertex values (alpha)")
    return doc.alpha


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def _cmd_validate(args, out) -> int:
    doc = _load_document(args.complex)
    report = {
        "ok": True,
        "vertices": len(doc.names),
        "simplices": len(doc.complex),
        "dim": doc.complex.dim,
        "chi": doc.complex.euler_characteristic(),
        "chi_c": chi_c(doc.complex, doc.complex.cells()),
    }
    if args.vertex is not None:
        vid = doc.name_to_id[args.vertex]
        report["star"] = len(doc.complex.star(vid))
        report["link"] = len(doc.complex.link(vid))
    _dump_json(report, out)
    return 0


def _cmd_integrate(args, out) -> int:
    doc = _load_document(args.complex)
    if args.kind == "simple":
        if args.function is None:
            raise CurvCalcError("--kind simple needs --function")
        with open(args.function, encoding="utf-8") as handle:
            s = parse_constructible(handle.read(), doc)
        value = euler_mod.euler_integral(s)
    elif args.kind == "weights":
        weights = euler_mod.weights(doc.complex)
        _dump_json({doc.names[v]: str(w) for v, w in sorted(weights.items())}, out)
        return 0
    else:
        alpha = _require_alpha(doc)
        if args.kind == "floor":
            value = euler_mod.floor_integral(alpha)
        elif args.kind == "ceil":
            value = euler_mod.ceil_integral(alpha)
        elif args.kind == "tentative":
            value = euler_mod.tentative_integral(alpha)
        else:  # floor-oracle
            value = euler_mod.floor_integral_oracle_1d(alpha, args.oracle_n)
    _dump_json({"value": str(value)}, out)
    return 0


def _cmd_subdivide(args, out) -> int:
    if args.census is not None:
        census = signature_census(args.census)
        _dump_json(
            {",".join(map(str, sig)): count for sig, count in sorted(census.items())},
            out,
        )
        return 0
    if args.complex is None:
        raise CurvCalcError("subdivide needs a complex file (or --census)")
    doc = _load_document(args.complex)
    complex, alpha = doc.complex, doc.alpha
    for _ in range(args.times):
        complex, alpha = barycentric_subdivide(complex, alpha)
    names = [f"b{i}" for i in range(len(complex.vertices))]
    out.write(serialize_complex(ComplexDocument(complex, names, None, alpha)))
    return 0


def _cmd_curvature(args, out) -> int:
    doc = _load_document(args.complex)
    embedding = _embedding_for(doc, args.equilateral)
    if args.alpha:
        alpha = _require_alpha(doc)
        value = curvature_mod.curvature_integral(
            alpha, embedding, args.method, args.samples, args.seed
        )
        _dump_json({"value": _fmt(value.value), "bound": _fmt(value.bound)}, out)
        return 0
    kappa = curvature_mod.curvature_measure(
        embedding, args.method, args.samples, args.seed
    )
    rows = [
        (doc.names[v], f"{kappa[v].value:.12g}", f"{kappa[v].bound:.12g}")
        for v in sorted(kappa)
    ]
    if args.format == "json":
        _dump_json(
            {name: {"kappa": float(k), "stderr": float(b)} for name, k, b in rows}, out
        )
    else:
        _write_csv(rows, ("vertex", "kappa", "stderr"), out)
    return 0


def _cmd_gauss_bonnet(args, out) -> int:
    doc = _load_document(args.complex)
    embedding = _embedding_for(doc, args.equilateral)
    report = curvature_mod.gauss_bonnet_check(
        embedding, args.method, args.samples, args.seed
    )
    # cross-check through the compact-piece integral of the constant 1
    ones = PLFunction(doc.complex, {v: Fraction(1) for v in doc.complex.vertices})
    piece_value = curvature_mod.final_integral(
        embedding, [(doc.complex, ones)], args.method, args.samples, args.seed
    )
    _dump_json(
        {
            "sum_kappa": _fmt(report["sum_kappa"]),
            "chi": report["chi"],
            "bound": _fmt(report["bound"]),
            "discrepancy": _fmt(report["discrepancy"]),
            "final_integral": _fmt(piece_value.value),
            "method": report["method"],
        },
        out,
    )
    return 0


def _cmd_morse_curvature(args, out) -> int:
    doc = _load_document(args.complex)
    embedding = _embedding_for(doc, args.equilateral)
    kappa = morse_mod.morse_curvature_measure(embedding, args.samples, args.seed)
    rows = [
        (doc.names[v], f"{kappa[v].value:.12g}", f"{kappa[v].bound:.12g}")
        for v in sorted(kappa)
    ]
    if args.format == "json":
        _dump_json(
            {name: {"kappa": float(k), "stderr": float(b)} for name, k, b in rows}, out
        )
    else:
        _write_csv(rows, ("vertex", "kappa", "stderr"), out)
    return 0


def _cmd_morse_index(args, out) -> int:
    doc = _load_document(args.complex)
    embedding = _embedding_for(doc, False)
    direction = morse_mod.as_direction([float(t) for t in args.direction.split(",")])
    indices = {
        v: morse_mod.morse_index(v, direction, embedding)
        for v in doc.complex.vertices
    }
    total = morse_mod.chi_sum_check(direction, embedding)
    assert total == sum(indices.values())
    rows = [(doc.names[v], str(indices[v])) for v in sorted(indices)]
    if args.format == "json":
        _dump_json({name: int(i) for name, i in rows}, out)
    else:
        _write_csv(rows, ("vertex", "index"), out)
    return 0


def _cmd_pushforward(args, out) -> int:
    source = _load_document(args.source)
    target = _load_document(args.target)
    with open(args.map, encoding="utf-8") as handle:
        first = parse_map(handle.read(), source, target)
    if args.function is not None:
        with open(args.function, encoding="utf-8") as handle:
            s = parse_constructible(handle.read(), source)
    else:
        s = ConstructibleFunction.ones(source.complex)
    if args.compose is not None:
        if args.compose_target is None:
            raise CurvCalcError("--compose needs --compose-target")
        final = _load_document(args.compose_target)
        with open(args.compose, encoding="utf-8") as handle:
            second = parse_map(handle.read(), target, final)
        if not pushforward_mod.check_functoriality(second, first, s):
            raise CurvCalcError("functoriality check failed")  # pragma: no cover
        result = pushforward_mod.pushforward(second.compose(first), s)
        out.write(serialize_constructible(result, final))
        return 0
    result = pushforward_mod.pushforward(first, s)
    fibers = {
        "|".join(target.names[v] for v in cell): pushforward_mod.fiber_euler(first, cell)
        for cell in target.complex.cells()
    }
    out.write(serialize_constructible(result, target))
    _dump_json({"fiber_chi": fibers}, out)
    return 0


def _seeded_product_function(carrier, seed: int) -> ConstructibleFunction:
    rng = np.random.Generator(
        np.random.Philox(key=np.uint64(seed & 0xFFFFFFFFFFFFFFFF))
    )
    coeffs = {cell: Fraction(int(rng.integers(-6, 7))) for cell in carrier.cells()}
    return ConstructibleFunction(carrier, coeffs)


def _cmd_fubini_check(args, out) -> int:
    left = _load_document(args.left)
    right = _load_document(args.right)
    if args.kind == "chi":
        carrier = product(left.complex, right.complex)
        s = _seeded_product_function(carrier, args.seed)
        direct, first, second = pushforward_mod.fubini_chi(s)
        _dump_json(
            {
                "direct": str(direct),
                "left_factor_last": str(first),
                "right_factor_last": str(second),
                "equal": direct == first == second,
            },
            out,
        )
        return 0
    ex = _embedding_for(left, False)
    ey = _embedding_for(right, False)
    rows = pushforward_mod.fubini_curvature(ex, ey, args.samples, args.seed)
    table = [
        (
            f"{left.names[r['vertex'][0]]}*{right.names[r['vertex'][1]]}",
            f"{r['kappa_product']:.12g}",
            f"{r['kappa_factor_product']:.12g}",
            f"{r['joint_bound']:.12g}",
        )
        for r in rows
    ]
    if args.format == "json":
        _dump_json(
            [
                {
                    "vertex": name,
                    "kappa_product": float(a),
                    "kappa_factor_product": float(b),
                    "joint_bound": float(c),
                }
                for name, a, b, c in table
            ],
            out,
        )
    else:
        _write_csv(
            table,
            ("vertex", "kappa_product", "kappa_factor_product", "joint_bound"),
            out,
        )
    return 0


def _cmd_adiabatic(args, out) -> int:
    warp = adiabatic_mod.profile(args.profile, args.grid)
    eps_grid = [float(t) for t in args.eps.split(",")]
    report = adiabatic_mod.adiabatic_sweep(warp, eps_grid)
    if args.format == "csv":
        rows = []
        for eps in eps_grid:
            measure = adiabatic_mod.curvature_density(warp, eps)
            rows.extend(
                (f"{eps:.12g}", f"{t:.12g}", f"{lam:.12g}")
                for t, lam in zip(measure.t, measure.density)
            )
        _write_csv(rows, ("eps", "t", "lambda"), out)
    summary = {
        "chi": report["chi"],
        "results": [
            {
                "eps": _fmt(r["eps"]),
                "interior_mass": _fmt(r["interior_mass"]),
                "atom_a": _fmt(r["atom_start"]),
                "atom_b": _fmt(r["atom_end"]),
                "total": _fmt(r["total"]),
            }
            for r in report["rows"]
        ],
    }
    if "limit_ambiguity" in report:
        summary["limit_ambiguity"] = report["limit_ambiguity"]
    if args.nonsplit:
        demo = adiabatic_mod.nonsplit_demo(warp)
        summary["nonsplit"] = {
            "pushforward_density_support": _fmt(demo["pushforward_density_support"]),
            "base_atoms": [
                _fmt(demo["base_measure"]["atom_start"]),
                _fmt(demo["base_measure"]["atom_end"]),
            ],
            "absolutely_continuous": demo["absolutely_continuous"],
        }
    _dump_json(summary, out)
    return 0


DISPATCH = {
    "validate": (
        _cmd_validate,
        frozenset(
            {
                "complex_core.validate",
                "complex_core.parse_serialize",
                "complex_core.star_link",
                "euler_calc.chi_c",
            }
        ),
    ),
    "integrate": (
        _cmd_integrate,
        frozenset(
            {
                "euler_calc.floor_integral",
                "euler_calc.ceil_integral",
                "euler_calc.tentative_integral",
                "euler_calc.euler_integral",
                "euler_calc.floor_integral_oracle_1d",
                "euler_calc.weight",
            }
        ),
    ),
    "subdivide": (
        _cmd_subdivide,
        frozenset(
            {
                "complex_core.barycentric_subdivide",
                "complex_core.signature_census",
                "complex_core.parse_serialize",
            }
        ),
    ),
    "curvature": (
        _cmd_curvature,
        frozenset(
            {
                "curvature.excess_angle",
                "curvature.vertex_curvature",
                "curvature.equilateral_embedding",
                "curvature.curvature_integral",
            }
        ),
    ),
    "gauss-bonnet-check": (
        _cmd_gauss_bonnet,
        frozenset({"curvature.vertex_curvature", "curvature.final_integral"}),
    ),
    "morse-curvature": (
        _cmd_morse_curvature,
        frozenset({"morse.curvature_measure"}),
    ),
    "morse-index": (
        _cmd_morse_index,
        frozenset({"morse.morse_index", "morse.chi_sum_check"}),
    ),
    "pushforward": (
        _cmd_pushforward,
        frozenset(
            {
                "pushforward.pushforward",
                "pushforward.fiber_euler",
                "pushforward.check_functoriality",
            }
        ),
    ),
    "fubini-check": (
        _cmd_fubini_check,
        frozenset(
            {
                "complex_core.product",
                "pushforward.fubini_chi",
                "pushforward.fubini_curvature",
            }
        ),
    ),
    "adiabatic": (
        _cmd_adiabatic,
        frozenset(
            {
                "adiabatic.curvature_density",
                "adiabatic.adiabatic_sweep",
                "adiabatic.nonsplit_demo",
            }
        ),
    ),
}

# cli.run is exercised by definition whenever any subcommand runs
COVERED_OPERATIONS = frozenset({"cli.run"}).union(*(ops for _, ops in DISPATCH.values()))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--samples", type=int, default=10_000)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--grid", type=int, default=4096)

    parser = argparse.ArgumentParser(
        prog="curvcalc",
        description="Euler and curvature calculus on finite simplicial complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a complex file")
    p.add_argument("complex")
    p.add_argument("--vertex", help="also report star/link sizes of a vertex")

    p = sub.add_parser("integrate", parents=[common], help="Euler integrals of file data")
    p.add_argument("complex")
    p.add_argument(
        "--kind",
        choices=("floor", "ceil", "tentative", "simple", "floor-oracle", "weights"),
        required=True,
    )
    p.add_argument("--function", help="constructible-function JSON (for --kind simple)")
    p.add_argument("--oracle-n", type=int, default=16)

    p = sub.add_parser("subdivide", parents=[common], help="barycentric subdivision")
    p.add_argument("complex", nargs="?")
    p.add_argument("--times", type=int, default=1)
    p.add_argument(
        "--census",
        type=int,
        help="print the signature census of a standard simplex instead",
    )

    for name in ("curvature", "gauss-bonnet-check"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("complex")
        p.add_argument("--method", choices=("exact", "mc"), default="exact")
        p.add_argument("--equilateral", action="store_true")
        if name == "curvature":
            p.add_argument(
                "--alpha",
                action="store_true",
                help="integrate the file's vertex values against curvature",
            )

    p = sub.add_parser("morse-curvature", parents=[common])
    p.add_argument("complex")
    p.add_argument("--equilateral", action="store_true")

    p = sub.add_parser("morse-index", parents=[common])
    p.add_argument("complex")
    p.add_argument("--direction", required=True, help="comma-separated vector")

    p = sub.add_parser("pushforward", parents=[common])
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--function")
    p.add_argument("--compose", help="second map file, applied after --map")
    p.add_argument("--compose-target", help="target complex of the second map")

    p = sub.add_parser("fubini-check", parents=[common])
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--kind", choices=("chi", "curvature"), default="chi")

    p = sub.add_parser("adiabatic", parents=[common])
    p.add_argument("--profile", required=True)
    p.add_argument("--eps", default="0,0.5,0.9,0.99")
    p.add_argument("--nonsplit", action="store_true")

    return parser


def run(argv, stdout=None, stderr=None) -> int:
    """Parse arguments and dispatch; returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handler, _ = DISPATCH[args.command]
    try:
        if args.samples < 1:
            raise CurvCalcError("--samples must be at least 1")
        if args.grid < 5:
            raise CurvCalcError("--grid must be at least 5")
        return handler(args, stdout)
    except CurvCalcError as exc:
        _dump_json({"error": exc.code, "message": str(exc)}, stderr)
        return 2
    except (OSError, ValueError) as exc:
        _dump_json({"error": type(exc).__name__, "message": str(exc)}, stderr)
        return 2


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
