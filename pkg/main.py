#!/usr/bin/env python3
"""
Scarf Hypersphere Verifier - Main Entry Point
Exact decompositions, spectral audits and operator identities for the
trigonometric Scarf I potential on hyperspheres

Exit status: 0 success, 1 verification mismatch or failed computation,
2 usage error, 130 interrupted.

Version: 2.0.0 (Exact Decompositions + Spectral Audit)
Developer: 8roku8.hl
"""

import argparse
import os
import sys
import traceback

# Add current directory to path to import local modules
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config import build_run_config, resolve_output_path, validate_config
from constants import (
    DEVELOPER, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, MEASURE_DCHI, MEASURES, OUTPUT_FORMATS,
    RICH_THEMES, SPECTRAL_SCHEMES, TABLE_STYLES, VERIFY_TARGETS, VERSION
)
from display import RichDisplayManager
from errors import ScarfVerifyError, UsageError
from utils import dumps_json, format_float, format_residual, rows_to_csv, write_artifact

EXIT_INTERRUPTED = 130


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scarf-verify",
        description="Verification engine for the trigonometric Scarf I potential on hyperspheres",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION} by {DEVELOPER}")
    parser.add_argument("--debug", action="store_true", help="show 🔍 debug lines and tracebacks")
    parser.add_argument("--no-rich", action="store_true", help="plain-text status output")
    parser.add_argument("--quiet", action="store_true", help="only failures on stderr")
    parser.add_argument("--output", help="write the artifact here instead of stdout")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="json", help="artifact format")
    parser.add_argument("--theme", choices=tuple(RICH_THEMES), help="colour scheme of the rich console")
    parser.add_argument("--table-style", choices=tuple(TABLE_STYLES), help="border style of report tables")

    # Same flags after the subcommand; SUPPRESS keeps an earlier value when absent
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--output", default=argparse.SUPPRESS, help="write the artifact here instead of stdout")
    shared.add_argument("--format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS, help="artifact format")
    shared.add_argument("--theme", choices=tuple(RICH_THEMES), default=argparse.SUPPRESS)
    shared.add_argument("--table-style", choices=tuple(TABLE_STYLES), default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[shared], help="exact Jacobi -> Gegenbauer split of phi_{N l}",
                       description="P_{N-1-l}^{l-b+1/2,l+b+1/2}(s) = sum_K c_{K l}(b) C_{K-l}^{l+1}(s), "
                                   "exact in b; equivalently phi_{N l} = sum_K c_{K l}(b) S~_{K l}.")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--b", help="evaluate the coefficients at this exact b (p/q or decimal)")
    p.add_argument("--b-values", help="comma-separated float b values for CSV output")

    p = sub.add_parser("table", parents=[shared], help="closed-form rows and structural sweep",
                       description="Closed forms for l = N-1..N-4 against the exact split, plus the "
                                   "reconstruction, b -> 0 limit, parity c_K(-b) = (-1)^(N-1-K) c_K(b) "
                                   "and degree bound deg_b c_K <= N-1-K for every N <= N-max.")
    p.add_argument("--N-max", type=int)

    p = sub.add_parser("spectrum", parents=[shared], help="lowest levels of one channel",
                       description="Sturm-bisection eigenvalues of -U'' + V U with "
                                   "V = (b^2+a(a+1))/cos^2 - b(2a+1) tan/cos, a = channel + (d-2)/2, "
                                   "Richardson-extrapolated and compared with (a+n+1)^2.")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--channel", type=int, default=0)
    p.add_argument("--b", default="0")
    p.add_argument("--grid", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--scheme", choices=SPECTRAL_SCHEMES)

    p = sub.add_parser("audit", parents=[shared], help="degeneracy audit of one level",
                       description="Level K = N-1 on S^{d+1}: every channel must hold "
                                   "eps = K(K+d) + d^2/4 (N^2 for d = 2) at node index K - channel, "
                                   "and the channel multiplicities must add up to the level's "
                                   "harmonic count (N^2 for d = 2).")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--b", default="0")
    p.add_argument("--grid", type=int)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--scheme", choices=SPECTRAL_SCHEMES)
    p.add_argument("--workers", type=int)

    p = sub.add_parser("verify", parents=[shared], help="operator identities on S^3",
                       description="gradient: N^2 phi = (K~^2+1) phi - 2b F^-1 cos^l dP/ds. "
                                   "commutator: [H_Sc, K~^2] phi vanishes iff b = 0 or l = N-1. "
                                   "polynomial: Casimir polynomials acting on sum_K Y~_{K l m}. "
                                   "ledger: (K+1)^2 c_K - g_K = N^2 c_K component by component.")
    p.add_argument("--which", choices=VERIFY_TARGETS, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--b", default="0")
    p.add_argument("--grid", type=int)

    p = sub.add_parser("gram", parents=[shared], help="Gram matrix of Scarf states",
                       description="Inner products of U_{N l} (measure dchi) or phi_{N l} "
                                   "(measure cos^d dchi) for fixed l and b; distinct N are orthogonal.")
    p.add_argument("--N-list", required=True, help="e.g. 1,2,3 or 1-8")
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--b", default="0")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--measure", choices=MEASURES, default=MEASURE_DCHI)
    return parser


# Subcommand handlers return (artifact text, passed)

def run_decompose(config, display):
    from decomp import coefficient_text, jacobi_to_gegenbauer

    params = config["params"]
    table = jacobi_to_gegenbauer(params["N"], params["ell"])
    display.progress(f"Decomposed phi_({params['N']},{params['ell']}) into {len(table.coefficients)} components")
    if config["format"] == "csv":
        return table.to_csv(params.get("b_values", [0.0, 0.5, 1.0])), True

    payload = table.to_json()
    if "b" in params:
        payload["b"] = params["b"]
        payload["c_at_b"] = {str(K): text for K, text in coefficient_text(table, params["b"]).items()}
    display.print_table("Mixing coefficients c_K(b)", ["K", "c_K(b)"],
                        [(K, text) for K, text in coefficient_text(table).items()])
    return dumps_json(payload), True


def run_table(config, display):
    from decomp import closed_form_sweep, decomposition_sweep

    N_max = config["params"].get("N_max", config["decomp"]["max_N"])
    display.progress(f"Comparing closed forms and sweeping structure up to N = {N_max}")
    closed = closed_form_sweep(range(1, N_max + 1))
    sweep = decomposition_sweep(N_max, max_workers=config["spectral"]["max_workers"])

    display.print_table(
        "Closed-form rows",
        ["N", "rows", "match"],
        [(r["N"], ", ".join(r["rows"]), r["all_match"]) for r in closed["reports"]],
        verdict_column=2,
    )
    passed = closed["all_match"] and sweep["all_pass"]
    display.print_verdict(sweep["all_pass"], f"Structural sweep: {sweep['checked']} (N, l) pairs, "
                                             f"{len(sweep['failures'])} failures")
    payload = {"schema": closed["schema"], "N_max": N_max, "closed_forms": closed,
               "structure": sweep, "pass": passed}
    if config["format"] == "csv":
        rows = [(e["row"], r["N"], e["ell"], e["K"], " ".join(e["computed"]), e["match"])
                for r in closed["reports"] for e in r["entries"]]
        return rows_to_csv(["row", "N", "ell", "K", "c_K", "match"], rows), passed
    return dumps_json(payload), passed


def run_spectrum(config, display):
    from spectral import SpectralProblem, exact_eigenvalue, solve_extrapolated

    params, spectral = config["params"], config["spectral"]
    count = params.get("count", spectral["count"])
    problem = SpectralProblem(d=params.get("d", 2), channel=params.get("channel", 0),
                              b=float(params.get("b", 0.0)), M=spectral["grid"], scheme=spectral["scheme"])
    display.progress(f"Solving channel {problem.channel} on S^{problem.d + 1} with M = {problem.M} "
                     f"and M = {problem.refined().M} ({problem.scheme})")
    result = solve_extrapolated(problem, count)
    display.debug(f"Sturm consistent: coarse={result.coarse.sturm_consistent} fine={result.fine.sturm_consistent}")

    rows = []
    for n in range(count):
        exact = exact_eigenvalue(problem.d, problem.channel, n)
        rows.append((n, float(result.coarse.eigenvalues[n]), float(result.extrapolated[n]), exact))
    display.print_table("Eigenvalues", ["n", "raw", "richardson", "(a+n+1)^2"],
                        [(n, format_float(r), format_float(x), format_float(e)) for n, r, x, e in rows])

    if config["format"] == "csv":
        return rows_to_csv(["index", "eigenvalue_raw", "eigenvalue_richardson", "eigenvalue_exact"], rows), True
    payload = {
        "schema": 1, "d": problem.d, "channel": problem.channel, "b": problem.b,
        "grid": problem.M, "scheme": problem.scheme,
        "sturm_consistent": result.coarse.sturm_consistent and result.fine.sturm_consistent,
        "levels": [{"index": n, "eigenvalue_raw": r, "eigenvalue_richardson": x, "eigenvalue_exact": e}
                   for n, r, x, e in rows],
    }
    return dumps_json(payload), True


def run_audit(config, display):
    from spectral import degeneracy_audit

    params, spectral = config["params"], config["spectral"]
    report = degeneracy_audit(params["N"], d=params.get("d", 2), b=float(params.get("b", 0.0)),
                              M=spectral["grid"], tol=spectral["audit_tolerance"],
                              scheme=spectral["scheme"], max_workers=spectral["max_workers"],
                              progress=display.progress)
    display.print_table(
        f"Level {format_float(report['level'])} on S^{report['d'] + 1}",
        ["channel", "n", "eigenvalue", "deviation", "mult", "present"],
        [(e["channel"], e["node_index"], format_float(e.get("eigenvalue")),
          format_residual(e.get("relative_deviation")), e["multiplicity"], e["present"])
         for e in report["channels"]],
        verdict_column=5,
    )
    display.print_verdict(report["pass"], f"Multiplicity {report['multiplicity']} of "
                                          f"{report['expected_multiplicity']}")
    if config["format"] == "csv":
        rows = [(e["channel"], e["node_index"], e.get("eigenvalue"), e.get("expected"),
                 e["multiplicity"], e["present"]) for e in report["channels"]]
        return rows_to_csv(["channel", "node_index", "eigenvalue", "expected", "multiplicity", "present"],
                           rows), report["pass"]
    return dumps_json(report), report["pass"]


def run_verify(config, display):
    import operators

    params, limits = config["params"], config["operators"]
    N, ell, which = params["N"], params["ell"], params["which"]
    b_exact = params.get("b", 0)
    b = float(b_exact)
    grid = limits["grid"]

    if which == "gradient":
        residual = operators.gradient_identity_residual(N, ell, b, grid)
        passed = residual <= limits["residual_tolerance"]
        payload = {"schema": 1, "which": which, "N": N, "ell": ell, "b": b, "grid": grid,
                   "max_residual": residual, "tolerance": limits["residual_tolerance"], "pass": passed}
        display.print_verdict(passed, f"Gradient identity residual {format_residual(residual)}")
    elif which == "commutator":
        norm = operators.commutator_probe(N, ell, b, grid)
        q = operators.commutator_polynomial(N, ell)
        routes_agree = q == operators.commutator_polynomial_differential(N, ell)
        expect_zero = b == 0.0 or ell == N - 1
        if expect_zero:
            passed = norm <= limits["commutator_zero_tolerance"]
        else:
            passed = norm >= limits["commutator_nonzero_floor"]
        passed = passed and routes_agree
        payload = {"schema": 1, "which": which, "N": N, "ell": ell, "b": b, "grid": grid,
                   "norm": norm, "expected_zero": expect_zero,
                   "commutator_polynomial": str(q), "routes_agree": routes_agree, "pass": passed}
        display.debug(f"Eigenvalue and differential Casimir routes agree: {routes_agree}")
        display.print_verdict(passed, f"Commutator norm {format_residual(norm)} "
                                      f"({'zero' if expect_zero else 'nonzero'} expected)")
    elif which == "polynomial":
        payload = operators.dynamical_polynomial_apply(N, ell, b_exact)
        payload["which"] = which
        passed = payload["generalized_ok"]
        display.print_table(
            "Casimir polynomials on sum_K Y~_K",
            ["K", "target N^2 c_K", "generalized", "literal"],
            [(e["K"], e["target"], e["generalized"], e.get("literal", "-")) for e in payload["components"]],
        )
        if "literal_all_match" in payload and not payload["literal_all_match"]:
            display.warning("Printed polynomial differs from N^2 c_K in the top component")
        display.print_verdict(passed, "Generalized Casimir polynomial reproduces N^2 psi")
    else:
        payload = operators.degeneracy_ledger(N, ell)
        payload["which"] = which
        passed = payload["all_match"]
        display.print_table(
            "Degeneracy ledger",
            ["K", "(K+1)^2 c_K - g_K", "N^2 c_K", "match"],
            [(e["K"], " ".join(e["lhs"]), " ".join(e["target"]), e["match"]) for e in payload["entries"]],
            verdict_column=3,
        )
    if config["format"] == "csv":
        scalar_rows = [(key, value) for key, value in payload.items() if not isinstance(value, (list, dict))]
        return rows_to_csv(["field", "value"], scalar_rows), passed
    return dumps_json(payload), passed


def run_gram(config, display):
    from quadrature import gram_matrix, orthogonality_report, scarf_states
    from operators import PHI, U

    params = config["params"]
    measure = params.get("measure", MEASURE_DCHI)
    kind = U if measure == MEASURE_DCHI else PHI
    N_values = params["N_list"]
    ell = params.get("ell", 0)
    states = scarf_states(N_values, ell, float(params.get("b", 0.0)), params.get("d", 2), kind=kind)
    result = gram_matrix(states, measure=measure)
    display.debug(f"Quadrature: {result.rule_kind} order {result.order} (Gauss-Legendre stable: {result.stable})")
    labels = [f"N={N}" for N in N_values]
    report = orthogonality_report(result, labels)
    display.print_verdict(report["orthonormal"], f"Max off-diagonal {format_residual(report['max_off_diagonal'])}")

    if config["format"] == "csv":
        rows = [[label] + [float(v) for v in row] for label, row in zip(labels, result.normalized)]
        return rows_to_csv([""] + labels, rows), report["orthonormal"]
    report["matrix"] = result.normalized
    return dumps_json(report), report["orthonormal"]


HANDLERS = {
    "decompose": run_decompose,
    "table": run_table,
    "spectrum": run_spectrum,
    "audit": run_audit,
    "verify": run_verify,
    "gram": run_gram,
}


def main(argv=None):
    """Parse flags, dispatch one subcommand, emit its artifact, return the exit status"""
    parser = build_parser()
    args = parser.parse_args(argv)
    display = RichDisplayManager({"display_settings": {
        "use_rich_ui": not args.no_rich, "debug_mode": args.debug, "quiet": args.quiet}})

    try:
        config = build_run_config(args)
        display = RichDisplayManager(config)
        problems = validate_config(config)
        if problems:
            for problem in problems:
                display.failure(f"Usage error: {problem}")
            return EXIT_USAGE

        display.print_banner(f"{config['subcommand']}")
        text, passed = HANDLERS[config["subcommand"]](config, display)
        path = resolve_output_path(config)
        write_artifact(text, path)
        if path:
            display.info(f"Artifact written to {path}")
        return EXIT_OK if passed else EXIT_MISMATCH

    except UsageError as e:
        display.failure(f"Usage error: {e}")
        return EXIT_USAGE
    except ScarfVerifyError as e:
        display.failure(f"{type(e).__name__}: {e}")
        return EXIT_MISMATCH
    except ValueError as e:
        display.failure(f"Invalid parameters: {e}")
        return EXIT_USAGE
    except KeyboardInterrupt:
        display.warning("Interrupted by user")
        return EXIT_INTERRUPTED
    except Exception as e:
        display.failure(f"Unexpected error: {e}")
        if args.debug:
            traceback.print_exc()
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
