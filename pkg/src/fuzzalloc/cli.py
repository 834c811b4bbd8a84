"""Command-line entry point.

Exit codes: 0 success, 2 input or usage error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import contextmanager

import numpy as np

from fuzzalloc import capm, control, fuzziness, fuzzy, utility
from fuzzalloc.errors import FuzzAllocError, PreferenceRelationError, ScenarioError
from fuzzalloc.scenario import Scenario, load_scenario

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID = 3


class Formatter:
    """Rounds numbers to a fixed count of significant digits."""

    def __init__(self, digits: int = 6):
        self.digits = digits

    def text(self, v) -> str:
        if isinstance(v, bool):
            return "yes" if v else "no"
        if isinstance(v, (float, np.floating)):
            s = f"{float(v):.{self.digits}g}"
            return "0" if s == "-0" else s
        if isinstance(v, (list, tuple)):
            return ", ".join(self.text(i) for i in v) if v else "-"
        return str(v)

    def value(self, v):
        """JSON-ready copy of ``v`` with floats rounded the same way as :meth:`text`."""
        if isinstance(v, bool) or v is None:
            return v
        if isinstance(v, (float, np.floating)):
            return float(self.text(v))
        if isinstance(v, (list, tuple)):
            return [self.value(i) for i in v]
        if isinstance(v, dict):
            return {k: self.value(i) for k, i in v.items()}
        return v


def render(record: dict, fmt: Formatter, machine: bool) -> str:
    if machine:
        return json.dumps(fmt.value(record), ensure_ascii=False) + "\n"
    width = max(len(k) for k in record)
    return "".join(f"{k.rjust(width)}: {fmt.text(v)}\n" for k, v in record.items())


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _require(scenario: Scenario, *sections: str):
    missing = [s for s in sections if getattr(scenario, s) is None]
    if missing:
        raise ScenarioError(f"{scenario.source}: scenario needs a [{'], ['.join(missing)}] section for this command")


def cmd_classify(scenario: Scenario, args) -> tuple[dict, int]:
    _require(scenario, "utility")
    params = scenario.utility
    sol = utility.solve_allocation(params)
    klass = utility.classify(sol, scenario.tolerances.class_tol)
    rec = {
        "command": "classify",
        "a": float(params.a),
        "b": float(params.b),
        "x*": sol.x_star,
        "y*": sol.y_star,
        "lambda*": sol.lambda_star,
        "U*": sol.u_star,
        "hessian": utility.bordered_hessian(params),
        "class": klass.label,
        "description": klass.description,
        "flags": list(sol.flags),
    }
    if scenario.market is not None:
        market = scenario.market
        expected = capm.portfolio_expected_return(sol, market)
        risk = capm.optimal_portfolio_risk(params, market)
        rec["E(Rp)*"] = expected
        rec["Sp*"] = risk
        if args.figure:
            if risk < 0:
                raise ScenarioError("cannot place an infeasible (x* < 0) allocation on the Capital Market Line")
            from fuzzalloc.plotting import plot_cml

            plot_cml(market, risk, expected, args.figure, label=f"class {klass.label}")
            rec["figure"] = str(args.figure)
    elif args.figure:
        raise ScenarioError("a figure for classify needs a [market] section")
    return rec, EXIT_OK


def cmd_fuzziness(scenario: Scenario, args) -> tuple[dict, int]:
    _require(scenario, "fuzzy")
    f = scenario.fuzzy
    if len(f) == 0:
        raise ScenarioError("[fuzzy] subset is empty")
    tol = scenario.tolerances
    orders = [1, 2]
    extra = list(args.rho or [])
    if tol.metric_order is not None:
        extra.append(tol.metric_order.rho)
    for rho in extra:
        fuzziness.MetricOrder(rho)
        if rho not in orders:
            orders.append(rho)
    rec = {
        "command": "fuzziness",
        "labels": list(f.labels),
        "degrees": list(f.degrees),
        "height": fuzzy.height(f),
        "support": fuzzy.support(f),
        "normal": fuzzy.is_normal(f),
        "crisp": f.is_crisp,
        "fuzz_entropy": fuzziness.fuzz_entropy(f, tol.entropy_config(len(f))),
        "hamming_distance": fuzziness.hamming_distance(f),
    }
    for rho in orders:
        rec[f"minkowski_distance[rho={rho}]"] = fuzziness.minkowski_distance(f, rho)
    for rho in orders:
        rec[f"fuzz_metric[rho={rho}]"] = fuzziness.fuzz_metric(f, rho)
    if args.figure:
        from fuzzalloc.plotting import plot_membership

        plot_membership(f, args.figure, title=f"entropy fuzziness {rec['fuzz_entropy']:.3g}")
        rec["figure"] = str(args.figure)
    return rec, EXIT_OK


def cmd_preference_check(scenario: Scenario, args) -> tuple[dict, int]:
    _require(scenario, "preference")
    violations = fuzzy.preference_violations(scenario.preference)
    rec = {
        "command": "preference-check",
        "size": len(scenario.preference),
        "valid": not violations,
        "violations": [str(v) for v in violations],
    }
    return rec, EXIT_OK if not violations else EXIT_INVALID


TRAJECTORY_COLUMNS = ("t", "x", "y", "x_analytic", "abs_error")


def trajectory_table(integrated, analytic, fmt: Formatter, delimiter: str = ",") -> str:
    buf = io.StringIO()
    buf.write(delimiter.join(TRAJECTORY_COLUMNS) + "\n")
    err = np.abs(integrated.x - analytic.x)
    for row in zip(integrated.t, integrated.x, integrated.y, analytic.x, err):
        buf.write(delimiter.join(fmt.text(float(v)) for v in row) + "\n")
    return buf.getvalue()


def cmd_trajectory(scenario: Scenario, args) -> tuple[dict, int]:
    _require(scenario, "utility", "control")
    settings = scenario.control
    problem = control.ControlProblem(scenario.utility, settings.x0, settings.horizon, settings.step)
    integrated = control.integrate_trajectory(problem)
    analytic = control.analytic_trajectory(problem)
    fmt = Formatter(args.digits)
    table = trajectory_table(integrated, analytic, fmt, args.delimiter)
    with _sink(args.out) as fh:
        fh.write(table)
    rec = {
        "command": "trajectory",
        "a": float(problem.params.a),
        "b": float(problem.params.b),
        "x0": float(problem.x0),
        "T": float(problem.horizon_T),
        "step": float(problem.step),
        "samples": len(integrated),
        "J": control.performance_index(problem.params, integrated),
        "x(T)": float(integrated.x[-1]),
        "x_analytic(T)": float(analytic.x[-1]),
        "max_abs_error": float(np.max(np.abs(integrated.x - analytic.x))),
        "boundary_crossings": integrated.boundary_crossings,
        "note": "initial-value problem from x0; no terminal condition, x not clipped at 0",
    }
    if args.out:
        rec["table"] = str(args.out)
    if args.figure:
        from fuzzalloc.plotting import plot_trajectory

        plot_trajectory(integrated, analytic, args.figure)
        rec["figure"] = str(args.figure)
    return rec, EXIT_OK


COMMANDS = {
    "classify": (cmd_classify, "solve the allocation problem and classify the investor"),
    "fuzziness": (cmd_fuzziness, "entropy and metric fuzziness of a fuzzy subset"),
    "preference-check": (cmd_preference_check, "check a fuzzy preference matrix for reciprocity"),
    "trajectory": (cmd_trajectory, "allocation time path under the optimal-control formulation"),
}


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    # flags are accepted before or after the subcommand; only the top-level copy carries defaults
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--scenario", metavar="PATH", default=d(None), help="scenario file (sectioned key = value text)")
    p.add_argument("--machine", action="store_true", default=d(False), help="emit one JSON record instead of a table")
    p.add_argument("--digits", type=int, metavar="N", default=d(6), help="significant digits for numbers (default 6)")
    p.add_argument("--out", metavar="PATH", default=d(None), help="write the report (or trajectory table) to PATH")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzalloc",
        description="Fund allocation, investor risk classes and fuzziness of allocation preferences.",
        parents=[_common_flags(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = _common_flags(False)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_, description=help_, parents=[common])
        if name != "preference-check":
            p.add_argument("--figure", metavar="PATH", help="also render a matplotlib figure to PATH")
        if name == "fuzziness":
            p.add_argument("--rho", type=int, action="append", metavar="N", help="extra Minkowski order (repeatable)")
        if name == "trajectory":
            p.add_argument("--delimiter", default=",", help="column delimiter of the table (default ',')")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.digits < 1 or args.digits > 17:
        parser.error("--digits must be between 1 and 17")
    if args.scenario is None:
        parser.error("--scenario is required")
    for attr in ("figure", "rho"):
        if not hasattr(args, attr):
            setattr(args, attr, None)

    handler, _ = COMMANDS[args.command]
    try:
        scenario = load_scenario(args.scenario)
        record, code = handler(scenario, args)
    except PreferenceRelationError as exc:
        print(f"fuzzalloc: malformed preference matrix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FuzzAllocError, OSError) as exc:
        print(f"fuzzalloc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    fmt = Formatter(args.digits)
    report = render(record, fmt, args.machine)
    if args.command == "trajectory":
        # the table owns stdout unless it went to --out
        (sys.stdout if args.out else sys.stderr).write(report)
    else:
        try:
            with _sink(args.out) as fh:
                fh.write(report)
        except OSError as exc:
            print(f"fuzzalloc: error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
