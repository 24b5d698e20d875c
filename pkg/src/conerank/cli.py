"""Command-line interface.

Subcommands: ``efficiency`` (dominance screen plus multiplier test),
``rank`` (assessment-function rankings), ``contours`` (grid export), and
``verify`` (self-contained numerical checks).

Exit codes: 0 success, 1 I/O error, 2 validation error, 3 internal
consistency failure (screen and multiplier test disagree), 4 verification
failure.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys

from . import assess, data_io, efficiency, ranking
from .assess import AssessmentSpec, P_TO_NEG_INF, P_TO_POS_INF, P_TO_ZERO
from .cones import AttributeVector, PolyCone, cone_coordinates
from .data_io import DatasetSchema, dumps_json, write_text
from .ranking import EPI_WEIGHTS, WeightVector

EPSILON_ENV = "CONERANK_EPSILON"

_EXIT_OK = 0
_EXIT_IO = 1
_EXIT_VALIDATION = 2
_EXIT_INCONSISTENT = 3
_EXIT_VERIFY = 4


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from exc


def _resolve_rho(token: str, k: int) -> float:
    if token.strip() == "-1/k":
        return -1.0 / k
    try:
        return float(token)
    except ValueError as exc:
        raise ValueError(f"rho must be a decimal or the literal -1/k, got {token!r}") from exc


def _parse_p(token: str):
    t = token.strip().lower()
    if t == "0":
        return P_TO_ZERO
    if t == "-inf":
        return P_TO_NEG_INF
    if t in ("inf", "+inf"):
        return P_TO_POS_INF
    return float(token)


def _load_input(args) -> tuple[efficiency.AlternativeSet, bool]:
    """Returns the alternative set and whether it is the bundled sample."""
    if args.input is None:
        print("no --input given; using the bundled 20-country sample", file=sys.stderr)
        return data_io.fixture_epi_sample(), True
    schema = DatasetSchema(
        label_column=args.label_col,
        attribute_columns=tuple(args.attr_cols.split(",")),
    )
    zset, warnings = data_io.load_csv(args.input, schema)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return zset, False


def _emit(text: str, args) -> None:
    if args.output:
        write_text(text, args.output)
    else:
        sys.stdout.write(text)


def _build_spec(args, k: int) -> tuple[AssessmentSpec, str]:
    fn = args.function
    if fn == "leontief":
        return AssessmentSpec.leontief(), "leontief"
    if fn == "chebyshev":
        if args.y_ref is None:
            raise ValueError("chebyshev requires --y-ref")
        return AssessmentSpec.chebyshev(_parse_floats(args.y_ref)), "chebyshev"
    if fn in ("auglf", "glf"):
        if args.rho is None:
            raise ValueError(f"{fn} requires --rho")
        rho = _resolve_rho(args.rho, k)
        if fn == "auglf":
            return AssessmentSpec.augmented_leontief(rho), f"auglf rho={rho:g}"
        if rho < -1.0 / k:
            raise ValueError(f"rho below -1/k={-1.0 / k:g} for k={k}")
        return AssessmentSpec.generalized_leontief(rho), f"glf rho={rho:g}"
    if fn == "meanp":
        if args.p is None:
            raise ValueError("meanp requires --p")
        return AssessmentSpec.mean_order(_parse_p(args.p)), f"meanp p={args.p}"
    if fn == "ces":
        if args.p is None or args.coeffs is None:
            raise ValueError("ces requires --p and --coeffs")
        return (
            AssessmentSpec.ces(args.scale, _parse_floats(args.coeffs), float(args.p)),
            "ces",
        )
    if fn == "cobb":
        if args.exponents is None:
            raise ValueError("cobb requires --exponents")
        return (
            AssessmentSpec.cobb_douglas(args.scale, _parse_floats(args.exponents)),
            "cobb",
        )
    if fn == "piecewise":
        if args.rho is None or args.b is None:
            raise ValueError("piecewise requires --rho and --b")
        rho = _resolve_rho(args.rho, k)
        return AssessmentSpec.piecewise_balance(rho, args.b), f"piecewise rho={rho:g}"
    if fn == "smoothpdia":
        if args.p is None or args.rho is None or args.ideal is None:
            raise ValueError("smoothpdia requires --p, --rho and --ideal")
        rho = _resolve_rho(args.rho, k)
        return (
            AssessmentSpec.smooth_balance(_parse_p(args.p), rho, _parse_floats(args.ideal)),
            "smoothpdia",
        )
    raise ValueError(f"unknown function {fn!r}")


# --- efficiency ------------------------------------------------------------


def cmd_efficiency(args) -> int:
    zset, _ = _load_input(args)
    k = zset.k
    if args.rho is None:
        raise ValueError("efficiency requires --rho")
    rho = _resolve_rho(args.rho, k)
    if rho < -1.0 / k:
        raise ValueError(f"rho below -1/k={-1.0 / k:g} for k={k}")
    if rho == -1.0 / k:
        raise ValueError(
            "the multiplier test is undefined at rho == -1/k "
            "(positivity offsets do not exist there)"
        )
    cone = PolyCone(k, rho)
    epsilon = None
    if os.environ.get(EPSILON_ENV):
        epsilon = float(os.environ[EPSILON_ENV])
    offset = efficiency.offset_set(zset, cone, epsilon)
    screen = efficiency.efficient_subset(offset.base, cone)

    rows = []
    consistent = True
    for record in screen.records:
        test_verdict, lam = efficiency.efficiency_test(offset, record.label, cone)
        agree = test_verdict == record.efficient
        consistent &= agree
        row = {
            "label": record.label,
            "efficient": record.efficient,
            "efficient_lambda_test": test_verdict,
            "agree": agree,
            "dominator_label": record.dominator_label,
            "lambda_used": list(lam),
        }
        if args.sigma is not None and record.efficient:
            certified, bound = efficiency.proper_efficiency_certificate(
                offset, record.label, cone, args.sigma
            )
            row["certified"] = certified
            row["tradeoff_bound"] = bound
            row["tradeoff_constant"] = efficiency.tradeoff_constant(
                offset, record.label, cone
            )
        rows.append(row)

    payload = {
        "rho": rho,
        "epsilon": offset.epsilon,
        "shift": offset.shift.components[0],
        "alternatives": rows,
        "consistent": consistent,
    }
    if args.format == "json":
        _emit(dumps_json(payload), args)
    else:
        width = max(len(r["label"]) for r in rows)
        lines = []
        for r in rows:
            status = "efficient" if r["efficient"] else f"dominated by {r['dominator_label']}"
            mark = "" if r["agree"] else "  [TEST DISAGREES]"
            lines.append(f"{r['label'].ljust(width)}  {status}{mark}")
        _emit("\n".join(lines) + "\n", args)
    if not consistent:
        print("error: screen and multiplier test disagree", file=sys.stderr)
        return _EXIT_INCONSISTENT
    return _EXIT_OK


# --- rank ------------------------------------------------------------------


def _preset_specs(k: int) -> list[tuple[str, AssessmentSpec]]:
    if k != 3:
        raise ValueError("the epi-table1 preset needs exactly 3 attributes")
    return [
        ("EPI", AssessmentSpec.mean_order(1.0)),
        ("rho=0", AssessmentSpec.generalized_leontief(0.0)),
        ("rho=-0.25", AssessmentSpec.generalized_leontief(-0.25)),
        ("PBR", AssessmentSpec.generalized_leontief(-1.0 / 3.0)),
    ]


def cmd_rank(args) -> int:
    zset, is_fixture = _load_input(args)
    k = zset.k
    if args.weights is not None:
        weights = WeightVector(_parse_floats(args.weights))
    elif is_fixture:
        weights = EPI_WEIGHTS
    else:
        weights = WeightVector((1.0,) * k)

    if args.preset == "epi-table1":
        named_specs = _preset_specs(k)
    elif args.function:
        spec, name = _build_spec(args, k)
        named_specs = [(name, spec)]
    else:
        raise ValueError("rank requires --function or --preset")

    results = [
        ranking.rank(zset, spec, weights, name=name) for name, spec in named_specs
    ]

    comparisons = []
    if args.compare:
        for i in range(len(results)):
            for j in range(i + 1, len(results)):
                cmp = ranking.compare_rankings(results[i], results[j])
                comparisons.append(
                    {
                        "a": results[i].name,
                        "b": results[j].name,
                        "metrics": cmp,
                    }
                )

    if args.format == "table":
        text = data_io.rankings_table(results)
        if comparisons:
            lines = [text, ""]
            for c in comparisons:
                m = c["metrics"]
                lines.append(
                    f"{c['a']} vs {c['b']}: tau={m.kendall_tau:.4f} "
                    f"max_displacement={m.max_displacement}"
                )
            text = "\n".join(lines) + "\n"
        _emit(text, args)
    else:
        payload = {"rankings": results}
        if comparisons:
            payload["comparisons"] = comparisons
        if len(results) == 1 and not comparisons:
            payload = results[0]
        _emit(dumps_json(payload), args)
    return _EXIT_OK


# --- contours --------------------------------------------------------------


def _parse_axes(args) -> tuple[assess.GridAxis, ...]:
    if args.grid is None:
        raise ValueError("contours requires --grid start:stop:step[,...]")
    specs = args.grid.split(",")
    axes = []
    for spec in specs:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad axis spec {spec!r}; expected start:stop:step")
        axes.append(assess.GridAxis(*(float(p) for p in parts)))
    if len(axes) == 1:
        axes = axes * args.dims
    return tuple(axes)


def cmd_contours(args) -> int:
    axes = _parse_axes(args)
    k = len(axes)
    spec, _ = _build_spec(args, k)
    if args.format == "table":
        raise ValueError("contour grids are JSON-only; drop --format table")
    grid = assess.contour_sample(spec, axes)
    _emit(dumps_json(grid), args)
    return _EXIT_OK


# --- verify ----------------------------------------------------------------


def _check_tangency() -> tuple[bool, str]:
    s5 = math.sqrt(5.0)
    point = AttributeVector((2.0 * s5 / 5.0, s5 / 5.0))
    coords = cone_coordinates(point, PolyCone(2, 1.0)).components
    radius = point.components[0] ** 2 + point.components[1] ** 2
    errs = (
        abs(coords[0] - s5),
        abs(coords[1] - 4.0 * s5 / 5.0),
        abs(radius - 1.0),
    )
    return max(errs) <= 1e-12, f"max error {max(errs):.2e} (tol 1e-12)"


def _check_ratio_growth() -> tuple[bool, str]:
    deltas = [10.0**-i for i in range(1, 7)]
    pairs = efficiency.improperness_witness_circle(deltas)
    ratios = [r for _, r in pairs]
    increasing = all(b > a for a, b in zip(ratios, ratios[1:]))
    positive = all(r > 0 for r in ratios)
    ok = increasing and positive and ratios[-1] > 1e3
    return ok, f"ratios rise to {ratios[-1]:.4g} (threshold 1e3)"


def _check_curve_benchmark() -> tuple[bool, str]:
    values = dict(assess.benchmark_curve_values(-1.0 / 3.0))
    # independent recomputation straight from the curve definition
    expected = {}
    expected_steep = {}
    for name, t in assess.BENCHMARK_CURVE_MARKS:
        x = 6.0 * math.cos(t) - (6.0 * math.cos(math.pi / 4.0) - 2.0)
        y = 10.0 * math.sin(t) + (2.0 + 10.0 * math.sin(math.pi / 4.0))
        z = 2.0 + 5.0 * (t + math.pi / 4.0) / (math.pi / 4.0)
        total = x + y + z
        expected[name] = min(v - total / 3.0 for v in (x, y, z))
        expected_steep[name] = min(v - total / 2.0 for v in (x, y, z))
    checks = [
        abs(values["diagonal"]) <= 1e-9,
        abs(values["circle"] - expected["circle"]) <= 1e-9,
        abs(values["bullet"] - expected["bullet"]) <= 1e-9,
        # at the steeper balance parameter -1/2 the marked points reproduce
        # the reference decimals -3.3269 and -6.1568
        abs(expected_steep["circle"] - (-3.3269)) <= 5e-4,
        abs(expected_steep["bullet"] - (-6.1568)) <= 5e-4,
    ]
    detail = (
        f"diagonal={values['diagonal']:.2e} circle={values['circle']:.6f} "
        f"bullet={values['bullet']:.6f}; at rho=-1/2: "
        f"{expected_steep['circle']:.4f}/{expected_steep['bullet']:.4f}"
    )
    return all(checks), detail


def _check_balance_invariance() -> tuple[bool, str]:
    rng = random.Random(20260810)
    worst = 0.0
    for _ in range(100):
        k = rng.choice((2, 3, 4, 5))
        spec = AssessmentSpec.generalized_leontief(-1.0 / k)
        y = tuple(rng.uniform(-50.0, 50.0) for _ in range(k))
        t = rng.uniform(0.0, 100.0)
        shifted = tuple(v + t for v in y)
        base = assess.evaluate(spec, AttributeVector(y))
        moved = assess.evaluate(spec, AttributeVector(shifted))
        scale = (1.0 + abs(t)) * k * max(abs(v) for v in y)
        worst = max(worst, abs(moved - base) / (1e-12 * scale))
        diag = assess.evaluate(spec, AttributeVector((t,) * k))
        if abs(diag) > 1e-12:
            return False, f"diagonal value {diag:.2e} exceeds 1e-12"
    return worst <= 1.0, f"worst scaled drift {worst:.3f} (must be <= 1)"


def cmd_verify(args) -> int:
    checks = [
        ("tangency-algebra", _check_tangency),
        ("tradeoff-growth", _check_ratio_growth),
        ("curve-benchmark", _check_curve_benchmark),
        ("balance-invariance", _check_balance_invariance),
    ]
    lines = []
    first_failure = None
    for name, fn in checks:
        ok, detail = fn()
        lines.append(f"{name}: {detail} ... {'PASS' if ok else 'FAIL'}")
        if not ok and first_failure is None:
            first_failure = name
    text = "\n".join(lines) + "\n"
    _emit(text, args)
    if first_failure:
        print(f"error: check {first_failure!r} failed", file=sys.stderr)
        return _EXIT_VERIFY
    return _EXIT_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conerank",
        description="Cone dominance screening and balanced-attribute ranking",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--input", help="CSV input (default: bundled sample)")
        p.add_argument("--label-col", default="country")
        p.add_argument("--attr-cols", default="PCC,HLT,ECO")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "table"), default="json")

    def add_function(p):
        p.add_argument(
            "--function",
            choices=(
                "leontief", "chebyshev", "auglf", "glf", "meanp",
                "ces", "cobb", "piecewise", "smoothpdia",
            ),
        )
        p.add_argument("--rho", help="decimal, or the literal -1/k")
        p.add_argument("--p", help="order parameter; 0, -inf and +inf are limits")
        p.add_argument("--y-ref", help="chebyshev reference point, comma-separated")
        p.add_argument("--ideal", help="smoothpdia ideal point, comma-separated")
        p.add_argument("--b", type=float, help="piecewise sum-cap slope")
        p.add_argument("--scale", type=float, default=1.0)
        p.add_argument("--coeffs", help="ces coefficients, comma-separated")
        p.add_argument("--exponents", help="cobb exponents, comma-separated")

    p_eff = sub.add_parser("efficiency", help="dominance screen + multiplier test")
    add_io(p_eff)
    p_eff.add_argument("--rho", required=True, help="decimal, or the literal -1/k")
    p_eff.add_argument("--sigma", type=float, help="certify trade-off bounds")
    p_eff.add_argument(
        "--k-check",
        action="store_true",
        help="validate rho against the data dimension (always on; kept for "
        "script compatibility)",
    )
    p_eff.set_defaults(func=cmd_efficiency)

    p_rank = sub.add_parser("rank", help="assessment-function rankings")
    add_io(p_rank)
    add_function(p_rank)
    p_rank.add_argument("--weights", help="comma-separated positive weights")
    p_rank.add_argument("--preset", choices=("epi-table1",))
    p_rank.add_argument("--compare", action="store_true")
    p_rank.set_defaults(func=cmd_rank)

    p_cont = sub.add_parser("contours", help="export a dense evaluation grid")
    add_io(p_cont)
    add_function(p_cont)
    p_cont.add_argument("--grid", help="start:stop:step per axis, comma-separated")
    p_cont.add_argument("--dims", type=int, default=2, choices=(2, 3))
    p_cont.set_defaults(func=cmd_contours)

    p_ver = sub.add_parser("verify", help="run the built-in numerical checks")
    p_ver.add_argument("--output", help="transcript file (default: stdout)")
    p_ver.add_argument("--format", choices=("json", "table"), default="table")
    p_ver.set_defaults(func=cmd_verify)

    return parser


_VALUE_FLAGS = {
    "--rho", "--p", "--weights", "--y-ref", "--ideal",
    "--coeffs", "--exponents", "--grid",
}


def _join_dash_values(argv):
    """Fold ``--rho -1/k`` into ``--rho=-1/k`` so argparse does not mistake
    leading-dash values (negative numbers, -1/k, -inf) for option names."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok in _VALUE_FLAGS and nxt.startswith("-") and not nxt.startswith("--"):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_join_dash_values(list(argv)))
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_IO
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
