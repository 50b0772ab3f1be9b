"""
Command-line entry point for the correlation toolkit.
Usage: python -m app.main <subcommand> [options]
"""
import argparse
import csv
import io
import json
import logging
import sys
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from app.analytics import (
    DEFAULT_PRECISION_N,
    DEFAULT_THRESHOLD_J,
    asymptotic_constant,
    expected_longest_border,
    format_ratio,
    longest_border_counts,
    longest_border_range,
    population_table,
    ratio_convergence_probe,
)
from app.errors import BudgetExceededError, CorrPopError
from app.lattice import check_jordan_dedekind, export_dot, hasse
from app.oracle import (
    brute_g_table,
    brute_pair_classes,
    brute_population_table,
    brute_right_population,
    default_workers,
)
from app.population import Method, pop_corr, pop_right
from app.realize import realize_autocorrelation, realize_correlation, verify_realization
from app.schemas import CheckResult, RunConfig, VerifyReport
from app.sets import cardinalities, decompose, enumerate_delta, enumerate_gamma
from app.words import Correlation, autocorrelation

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text", "dot")


def _emit(text: str) -> None:
    print(text.rstrip("\n"))


def _emit_json(payload) -> None:
    _emit(json.dumps(payload, indent=2))


def _emit_csv(header: List[str], rows: List[List]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit(buffer.getvalue())


def _workers(config: RunConfig) -> int:
    return config.threads or default_workers()


def verify(n: int, sigma: int, budget: Optional[int] = None, workers: Optional[int] = None) -> VerifyReport:
    """
    Cross-validate every t in Δn: the four population methods, p(t) = g(t),
    normalization to sigma^(2n), the realization round trip and the right
    population against brute force.
    """
    members = enumerate_delta(n).members
    brute = brute_population_table(n, sigma, budget, workers)
    g_table = brute_g_table(n, sigma, budget, workers)
    logger.info("[VERIFY] Checking %d correlations (n=%d, sigma=%d)", len(members), n, sigma)

    populations: Dict[str, int] = {}
    disagreements, g_failures, realize_failures, right_failures = [], [], [], []
    for t in members:
        values = {m.value: pop_corr(t, sigma, m, budget, workers) for m in Method}
        populations[t.bits] = values[Method.REC1.value]
        if len(set(values.values())) != 1:
            disagreements.append(f"{t.bits}: {values}")
        if populations[t.bits] != g_table.get(t.bits, 0):
            g_failures.append(t.bits)
        if not verify_realization(t, realize_correlation(t)):
            realize_failures.append(t.bits)
        if decompose(t)[0] >= 1 and pop_right(t, sigma) != brute_right_population(t, sigma, budget):
            right_failures.append(t.bits)
    # Correlations of pairs outside Δn would show up only in the oracle table.
    strays = sorted(set(brute) - set(populations))

    total = sum(populations.values())
    expected = sigma ** (2 * n)
    checks = [
        CheckResult(name="method_agreement", passed=not disagreements, detail="; ".join(disagreements)),
        CheckResult(name="population_equals_g", passed=not g_failures, detail=", ".join(g_failures)),
        CheckResult(name="normalization", passed=total == expected and not strays, detail=f"sum = {total}, expected {expected}"),
        CheckResult(name="realization_round_trip", passed=not realize_failures, detail=", ".join(realize_failures)),
        CheckResult(name="right_population", passed=not right_failures, detail=", ".join(right_failures)),
    ]
    passed = all(c.passed for c in checks)
    if passed:
        summary = f"all methods agree, sum = {total}"
    else:
        summary = "FAILED: " + ", ".join(c.name for c in checks if not c.passed)
        logger.warning("[VERIFY] %s", summary)
    return VerifyReport(
        n=n,
        sigma=sigma,
        correlations=len(members),
        checks=checks,
        populations=populations,
        total=total,
        passed=passed,
        summary=summary,
    )


def _list_set(config: RunConfig, bits: List[str], key: str) -> None:
    if config.format == "csv":
        _emit_csv(["correlation"], [[b] for b in bits])
    elif config.format == "text":
        _emit("\n".join(b or "ε" for b in bits))
    else:
        _emit_json({"n": config.n, key: len(bits), "members": bits})


def cmd_gamma(config: RunConfig) -> int:
    _list_set(config, enumerate_gamma(config.n).bit_strings(), "kappa")
    return 0


def cmd_delta(config: RunConfig) -> int:
    _list_set(config, enumerate_delta(config.n).bit_strings(), "delta")
    return 0


def cmd_card(config: RunConfig) -> int:
    rows = cardinalities(config.n)
    if config.format == "csv":
        _emit_csv(["n", "kappa", "delta", "log_ratio", "kappa_upper_bound"],
                  [[r.n, r.kappa, r.delta, r.log_ratio, r.kappa_upper_bound] for r in rows])
    elif config.format == "text":
        _emit("\n".join(f"{r.n:>3} {r.kappa:>8} {r.delta:>8}" for r in rows))
    else:
        _emit_json([r.model_dump(mode="json") for r in rows])
    return 0


def cmd_pop(config: RunConfig) -> int:
    t = Correlation(bits=config.corr)
    value = pop_corr(t, config.sigma, config.method, config.budget, _workers(config))
    _emit(str(value))
    return 0


def cmd_pop_table(config: RunConfig) -> int:
    sigmas = config.sigmas or [config.sigma]
    rows = population_table(config.n, sigmas, config.method)
    if config.format == "csv":
        _emit_csv(["correlation"] + [str(s) for s in sigmas],
                  [[row.correlation] + [row.populations[s] for s in sigmas] for row in rows])
    elif config.format == "text":
        _emit("\n".join(row.correlation + "".join(f" {row.populations[s]:>10}" for s in sigmas) for row in rows))
    else:
        _emit_json([row.model_dump(mode="json") for row in rows])
    return 0


def cmd_realize(config: RunConfig) -> int:
    t = Correlation(bits=config.corr)
    if config.auto:
        w = realize_autocorrelation(t)
        verified = autocorrelation(w) == t
        payload = {"correlation": t.bits, "word": str(w), "verified": verified}
    else:
        pair = realize_correlation(t)
        verified = verify_realization(t, pair)
        payload = {"correlation": t.bits, "u": str(pair.u), "v": str(pair.v), "verified": verified}
    if config.format == "json":
        _emit_json(payload)
    else:
        witness = payload["word"] if config.auto else f"{payload['u']} {payload['v']}"
        _emit(f"{witness}\nverified: {str(verified).lower()}")
    return 0 if verified else 1


def cmd_lattice(config: RunConfig) -> int:
    collection = enumerate_gamma(config.n) if config.gamma else enumerate_delta(config.n)
    diagram = hasse(collection)
    dot = export_dot(diagram, "gamma" if config.gamma else "delta")
    if config.dot_file:
        with open(config.dot_file, "w", encoding="utf-8") as handle:
            handle.write(dot)
        logger.info("[LATTICE] Wrote %s", config.dot_file)
    result = check_jordan_dedekind(diagram) if config.check_jd else None
    if config.format == "dot":
        _emit(dot)
    elif config.format == "text":
        lines = [f"{a} -> {b}" for a, b in diagram.edges]
        if result is not None:
            lines.append(f"jordan-dedekind: {'holds' if result.holds else 'fails'} "
                         f"(chains of length {result.shortest_length} and {result.longest_length})")
        _emit("\n".join(lines))
    else:
        payload = {"n": config.n, "nodes": diagram.nodes, "gamma": diagram.gamma_nodes(), "adjacency": diagram.to_adjacency()}
        if result is not None:
            payload["jordan_dedekind"] = result.model_dump()
        _emit_json(payload)
    return 0


def cmd_borders(config: RunConfig) -> int:
    if config.border_range:
        i, k = (int(part) for part in config.border_range.split(":"))
        value = longest_border_range(config.n, config.sigma, i, k)
        _emit(str(value))
        return 0
    table = longest_border_counts(config.n, config.sigma, config.method)
    if config.format == "csv":
        _emit_csv(["j", "count"], [[j, c] for j, c in enumerate(table.counts)] + [[config.n, table.equal_pairs]])
    elif config.format == "text":
        _emit("\n".join(f"L{j} = {c}" for j, c in enumerate(table.counts)) + f"\nL{config.n} (u = v) = {table.equal_pairs}")
    else:
        _emit_json(table.model_dump(mode="json"))
    return 0


def cmd_expect(config: RunConfig) -> int:
    result = expected_longest_border(
        config.n,
        config.sigma,
        include_equal_pairs=config.include_equal_pairs,
        threshold_j=config.threshold_j or DEFAULT_THRESHOLD_J,
        precision_n=config.precision_n,
    )
    if config.format == "text":
        _emit(f"E(X) = {result.value} ~ {float(result.value):.6f} (upper bound {result.upper_bound})")
    else:
        _emit(result.model_dump_json(indent=2))
    return 0


def cmd_ratio(config: RunConfig) -> int:
    s = Correlation(bits=config.corr or "")
    precision = config.precision_n or DEFAULT_PRECISION_N
    estimate = asymptotic_constant(s, config.sigma, precision)
    probe = ratio_convergence_probe(s, config.sigma, config.n_max or 10, precision)
    if config.format == "csv":
        _emit_csv(["n", "ratio", "value", "within_bounds"], [[r.n, str(r.ratio), r.value, r.within_bounds] for r in probe])
    elif config.format == "text":
        lines = [f"s = {s.bits or 'ε'}, sigma = {config.sigma}: "
                 f"[{format_ratio(estimate.lower)}, {format_ratio(estimate.upper)})"]
        lines += [f"{r.n:>3} {r.value:.6f}{'' if r.within_bounds else ' (outside)'}" for r in probe]
        _emit("\n".join(lines))
    else:
        _emit_json({
            "estimate": estimate.model_dump(mode="json"),
            "probe": [r.model_dump(mode="json") for r in probe],
        })
    return 0


def cmd_verify(config: RunConfig) -> int:
    report = verify(config.n, config.sigma, config.budget, _workers(config))
    if config.format == "text":
        lines = [f"{c.name}: {'pass' if c.passed else 'FAIL'}" for c in report.checks]
        lines.append(report.summary)
        _emit("\n".join(lines))
    else:
        _emit(report.model_dump_json(indent=2))
    return 0 if report.passed else 1


def cmd_classes(config: RunConfig) -> int:
    counts = brute_pair_classes(config.n, config.sigma, config.budget)
    if config.format == "text":
        _emit("\n".join(f"{key}: {value}" for key, value in counts.items()))
    else:
        _emit_json(counts)
    return 0


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "gamma": cmd_gamma,
    "delta": cmd_delta,
    "card": cmd_card,
    "pop": cmd_pop,
    "pop-table": cmd_pop_table,
    "realize": cmd_realize,
    "lattice": cmd_lattice,
    "borders": cmd_borders,
    "expect": cmd_expect,
    "ratio": cmd_ratio,
    "verify": cmd_verify,
    "classes": cmd_classes,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="output format (default: json)")
    common.add_argument("--budget", type=int, help="brute-force cell budget (env CORRPOP_BRUTE_BUDGET)")
    common.add_argument("--threads", type=int, help="brute-force worker threads (env CORRPOP_THREADS)")
    common.add_argument("--verbose", action="store_true", help="log diagnostics to stderr")

    parser = argparse.ArgumentParser(prog="corrpop", description="Correlations of word pairs and their population sizes.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, help_text: str, with_n: bool = True, with_sigma: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if with_n:
            p.add_argument("n", type=int, help="word length")
        if with_sigma:
            p.add_argument("--sigma", type=int, default=2, help="alphabet size (default: 2)")
        return p

    add("gamma", "list the autocorrelations Γn")
    add("delta", "list the correlations Δn")
    add("card", "cardinalities κn and δn up to n")

    p = add("pop", "population size of one correlation", with_n=False, with_sigma=True)
    p.add_argument("--corr", required=True, help="correlation bit string")
    p.add_argument("--method", default="rec1", help="rec1, rec2, nfc or brute (default: rec1)")

    p = add("pop-table", "population sizes of all of Δn")
    p.add_argument("--sigma", type=int, nargs="+", default=[2], help="one or more alphabet sizes")
    p.add_argument("--method", default="rec1", help="rec1, rec2, nfc or brute (default: rec1)")

    p = add("realize", "witness pair (or word) for a correlation", with_n=False)
    p.add_argument("bits", help="correlation bit string")
    p.add_argument("--auto", action="store_true", help="realize an autocorrelation by a single word")

    p = add("lattice", "Hasse diagram of Δn (or Γn)")
    p.add_argument("--gamma", action="store_true", help="restrict to Γn")
    p.add_argument("--dot", dest="dot_file", metavar="FILE", help="write the Graphviz text to FILE")
    p.add_argument("--check-jd", action="store_true", help="check the Jordan-Dedekind chain condition")

    p = add("borders", "counts of pairs by longest-border length", with_sigma=True)
    p.add_argument("--range", dest="border_range", metavar="I:K", help="sum over longest-border lengths i..k")

    p = add("expect", "expected longest-border length", with_sigma=True)
    p.add_argument("--include-equal-pairs", action="store_true", help="add the u = v term")
    p.add_argument("--threshold", dest="threshold_j", type=int, help=f"threshold J (default: {DEFAULT_THRESHOLD_J})")
    p.add_argument("--precision", dest="precision_n", type=int, help="series truncation length")

    p = add("ratio", "asymptotic ratio bounds and exact ratios", with_n=False, with_sigma=True)
    p.add_argument("--suffix", dest="corr", default="empty", help="autocorrelation s, or 'empty'")
    p.add_argument("--n-max", type=int, default=10, help="largest n probed (default: 10)")
    p.add_argument("--precision", dest="precision_n", type=int, help=f"series truncation length (default: {DEFAULT_PRECISION_N})")

    add("verify", "cross-validate every population method against brute force", with_sigma=True)
    add("classes", "bordered and mutually unbordered pair counts by brute force", with_sigma=True)
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if v is not None and k != "verbose"}
    if args.subcommand == "pop-table":
        values["sigmas"] = values.pop("sigma")
    if args.subcommand == "realize":
        values["corr"] = values.pop("bits")
    return RunConfig(**values)


def dispatch(config: RunConfig) -> int:
    """Run the selected subcommand; domain errors propagate to main."""
    Method.parse(config.method)
    return COMMANDS[config.subcommand](config)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return dispatch(build_config(args))
    except ValidationError as e:
        print(f"error: {e.errors()[0]['msg']}", file=sys.stderr)
        return 3
    except CorrPopError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except MemoryError:
        logger.error("[MAIN] Out of memory in %s", args.subcommand)
        print("error: computation ran out of memory; lower n or the budget", file=sys.stderr)
        return BudgetExceededError.exit_code


if __name__ == "__main__":
    sys.exit(main())
