"""Command-line surface: graph export, metrics, routing, verification and fault runs."""
from __future__ import annotations

import argparse
from collections import Counter
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
import logging
import math
import sys
import time
from typing import Any, TextIO

import voluptuous as vol

from .const import (
    BOUND_TABLE,
    CMD_CONNECTIVITY,
    CMD_FAULT,
    CMD_GEN,
    CMD_METRICS,
    CMD_ROUTE,
    CMD_VERIFY,
    DEFAULT_FAULT_BUDGET,
    DEFAULT_ROUTE_SAMPLE,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_VERTEX_BUDGET,
    DOMAIN,
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    FORMAT_DOT,
    FORMAT_EDGE_LIST,
    FORMAT_JSON,
    FORMATS,
    MAX_RADIX,
    MODE_EXHAUSTIVE,
    MODE_SAMPLED,
    MODES,
    VERDICT_FAIL,
    VERDICT_PASS,
    VERSION,
)
from .cube import E3CParams, E3CVertex, graph_census, vertex_from_flat
from .exceptions import (
    CodecError,
    ConfigurationError,
    ConstructionDefect,
    DomainError,
    ResourceBudgetExceeded,
)
from .export import (
    census_to_dict,
    connectivity_sweep_to_dict,
    dot_lines,
    dump_json,
    edge_list_lines,
    metric_report_to_dict,
    path_system_to_dict,
    qnk_dot_lines,
    qnk_edge_list_lines,
    sandwich_to_dict,
    stamp,
    witness_to_dict,
)
from .oracles import graph_metrics, iter_pairs, min_pair_connectivity, sandwich_verdict
from .router import (
    BoundTable,
    classify_pair,
    lower_bound_witness,
    normalize_params,
    route_pair,
    validate_path_system,
)

_LOGGER = logging.getLogger(__name__)

LEMMA_ALL = "all"

positive = vol.All(vol.Coerce(int), vol.Range(min=1))
non_negative = vol.All(vol.Coerce(int), vol.Range(min=0))

# Subcommand schemas
BASE_SCHEMA = {
    vol.Required("command"): vol.In(
        [CMD_GEN, CMD_METRICS, CMD_ROUTE, CMD_VERIFY, CMD_FAULT, CMD_CONNECTIVITY]
    ),
    vol.Optional("params", default=None): vol.Any(None, vol.ExactSequence([positive] * 3)),
    vol.Optional("output", default=None): vol.Any(None, str),
    vol.Optional("verbose", default=False): bool,
    vol.Optional("debug", default=False): bool,
}

GEN_SCHEMA = vol.Schema(
    {
        **BASE_SCHEMA,
        vol.Optional("format", default=FORMAT_EDGE_LIST): vol.In(FORMATS),
        vol.Optional("kary", default=None): vol.Any(
            None, vol.ExactSequence([positive, vol.All(vol.Coerce(int), vol.Range(2, MAX_RADIX))])
        ),
    }
)

METRICS_SCHEMA = vol.Schema(
    {
        **BASE_SCHEMA,
        vol.Optional("seed", default=DEFAULT_SEED): vol.Coerce(int),
        vol.Optional("trials", default=0): non_negative,
        vol.Optional("route_pairs", default=0): non_negative,
        vol.Optional("budget", default=DEFAULT_VERTEX_BUDGET): positive,
    }
)

ROUTE_SCHEMA = vol.Schema(
    {
        **BASE_SCHEMA,
        vol.Required("u"): str,
        vol.Required("v"): str,
    }
)

VERIFY_SCHEMA = vol.Schema(
    {
        **BASE_SCHEMA,
        vol.Optional("lemma", default=LEMMA_ALL): vol.Any(
            LEMMA_ALL, vol.All(vol.Coerce(int), vol.Range(1, 15))
        ),
        vol.Optional("mode", default=MODE_EXHAUSTIVE): vol.In(MODES),
        vol.Optional("seed", default=DEFAULT_SEED): vol.Coerce(int),
        vol.Optional("trials", default=DEFAULT_ROUTE_SAMPLE): positive,
        vol.Optional("budget", default=DEFAULT_FAULT_BUDGET): positive,
    }
)

FAULT_SCHEMA = vol.Schema(
    {
        **BASE_SCHEMA,
        vol.Optional("mode", default=MODE_EXHAUSTIVE): vol.In(MODES),
        vol.Optional("seed", default=DEFAULT_SEED): vol.Coerce(int),
        vol.Optional("trials", default=DEFAULT_TRIALS): positive,
        vol.Optional("pairs", default=100): non_negative,
        vol.Optional("budget", default=DEFAULT_FAULT_BUDGET): positive,
        vol.Optional("faults", default=None): vol.Any(None, non_negative),
        vol.Optional("witness_only", default=False): bool,
    }
)

CONNECTIVITY_SCHEMA = vol.Schema(
    {
        **BASE_SCHEMA,
        vol.Optional("mode", default=MODE_EXHAUSTIVE): vol.In(MODES),
        vol.Optional("seed", default=DEFAULT_SEED): vol.Coerce(int),
        vol.Optional("trials", default=DEFAULT_TRIALS): positive,
    }
)


def _require_params(data: dict[str, Any]) -> dict[str, Any]:
    if data["params"] is None:
        raise vol.Invalid("r, s and t are required")
    return data


def _gen_source(data: dict[str, Any]) -> dict[str, Any]:
    if (data["params"] is None) == (data["kary"] is None):
        raise vol.Invalid("give either r s t or --kary N K")
    if data["kary"] is not None and data["format"] == FORMAT_JSON:
        raise vol.Invalid("--kary exports edge-list or dot only")
    return data


def _fault_size(data: dict[str, Any]) -> dict[str, Any]:
    if data["faults"] is not None:
        r, s, t = data["params"]
        limit = 2 * min(r, s, t) + 1
        if data["faults"] > limit:
            raise vol.Invalid(f"--faults {data['faults']} exceeds min degree - 1 = {limit}")
    return data


def _witness_mode(data: dict[str, Any]) -> dict[str, Any]:
    if data["witness_only"] and data["mode"] == MODE_SAMPLED:
        raise vol.Invalid("--exhaustive-pair-witness cannot be combined with sampled mode")
    return data


SCHEMAS: dict[str, Callable[[Any], Any]] = {
    CMD_GEN: vol.Schema(vol.All(GEN_SCHEMA, _gen_source)),
    CMD_METRICS: vol.Schema(vol.All(METRICS_SCHEMA, _require_params)),
    CMD_ROUTE: vol.Schema(vol.All(ROUTE_SCHEMA, _require_params)),
    CMD_VERIFY: vol.Schema(vol.All(VERIFY_SCHEMA, _require_params)),
    CMD_FAULT: vol.Schema(vol.All(FAULT_SCHEMA, _require_params, _fault_size, _witness_mode)),
    CMD_CONNECTIVITY: vol.Schema(vol.All(CONNECTIVITY_SCHEMA, _require_params)),
}


@dataclass(frozen=True)
class CommandConfig:
    """A validated command line."""

    command: str
    params: E3CParams | None
    output: str | None = None
    format: str = FORMAT_EDGE_LIST
    kary: tuple[int, int] | None = None
    mode: str = MODE_EXHAUSTIVE
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    budget: int = DEFAULT_FAULT_BUDGET
    lemma: int | str = LEMMA_ALL
    u: str | None = None
    v: str | None = None
    faults: int | None = None
    pairs: int = 100
    route_pairs: int = 0
    witness_only: bool = False

    @property
    def sampled(self) -> bool:
        """True in sampled mode."""
        return self.mode == MODE_SAMPLED


def build_config(raw: dict[str, Any]) -> CommandConfig:
    """Validate parsed arguments against the schema of their subcommand.

    Raises:
        ConfigurationError: If the arguments violate the schema
    """
    command = raw.get("command")
    if command not in SCHEMAS:
        raise ConfigurationError(f"Unknown command {command!r}")
    try:
        data = SCHEMAS[command](raw)
    except vol.Invalid as err:
        raise ConfigurationError(f"Invalid {command} arguments: {err}") from err
    params = None if data["params"] is None else E3CParams(*data["params"])
    fields = {
        key: value
        for key, value in data.items()
        if key in CommandConfig.__dataclass_fields__ and key not in ("params", "kary")
    }
    kary = None if data.get("kary") is None else (data["kary"][0], data["kary"][1])
    return CommandConfig(params=params, kary=kary, **fields)


def _write_lines(lines: Iterator[str], stream: TextIO) -> None:
    count = 0
    for line in lines:
        stream.write(line + "\n")
        count += 1
    _LOGGER.debug("Wrote %d lines", count)


def _emit(config: CommandConfig, render: Callable[[TextIO], object]) -> None:
    """Send output to ``config.output`` or standard output."""
    if config.output is None:
        render(sys.stdout)
        return
    with open(config.output, "w", encoding="utf-8") as stream:
        render(stream)
    _LOGGER.info("Wrote %s", config.output)


def _emit_json(
    config: CommandConfig, document: dict[str, Any], started: float, mode: str | None = None
) -> None:
    stamped = stamp(
        document,
        config.params,
        config.seed,
        mode or config.mode,
        time.perf_counter() - started,
    )
    _emit(config, lambda stream: stream.write(dump_json(stamped) + "\n"))


def _params(config: CommandConfig) -> E3CParams:
    if config.params is None:
        raise ConfigurationError(f"{config.command} needs r, s and t")
    return config.params


def cmd_gen(config: CommandConfig) -> int:
    """Export E3C(r,s,t) or Q_n^k as an edge list, DOT or a JSON census."""
    started = time.perf_counter()
    if config.kary is not None:
        n, k = config.kary
        lines = qnk_dot_lines(n, k) if config.format == FORMAT_DOT else qnk_edge_list_lines(n, k)
        _emit(config, lambda stream: _write_lines(lines, stream))
        return EXIT_OK
    params = _params(config)
    if config.format == FORMAT_JSON:
        _emit_json(config, {"census": census_to_dict(graph_census(params))}, started)
        return EXIT_OK
    lines = dot_lines(params) if config.format == FORMAT_DOT else edge_list_lines(params)
    _emit(config, lambda stream: _write_lines(lines, stream))
    return EXIT_OK


def cmd_metrics(config: CommandConfig) -> int:
    """Print the metric report of a graph."""
    started = time.perf_counter()
    report = graph_metrics(
        _params(config),
        trials=config.trials,
        seed=config.seed,
        budget=config.budget,
        route_pairs=config.route_pairs,
    )
    _emit_json(config, metric_report_to_dict(report), started, report.mode)
    return EXIT_OK


def _vertex(params: E3CParams, text: str | None) -> E3CVertex:
    if text is None:
        raise ConfigurationError("Missing vertex")
    return vertex_from_flat(params, text)


def cmd_route(config: CommandConfig, bound_table: BoundTable | None = None) -> int:
    """Print the path system of one pair; unsorted graphs are normalized first."""
    started = time.perf_counter()
    params = _params(config)
    system = route_pair(_vertex(params, config.u), _vertex(params, config.v), bound_table)
    _emit_json(config, path_system_to_dict(system), started)
    return EXIT_OK


def cmd_verify(config: CommandConfig, bound_table: BoundTable | None = None) -> int:
    """Route every (or every sampled) pair and tally contract violations per case.

    Args:
        config: Validated command line
        bound_table: Replacement bound table

    Returns:
        0 when no pair violates its contract, 1 otherwise

    Raises:
        ResourceBudgetExceeded: If an exhaustive sweep has more pairs than the budget
    """
    started = time.perf_counter()
    params = _params(config)
    table = BOUND_TABLE if bound_table is None else bound_table
    if not config.sampled:
        required = math.comb(params.vertex_count, 2)
        if required > config.budget:
            raise ResourceBudgetExceeded(
                f"{params} has {required} pairs, budget is {config.budget}; use --sampled",
                required,
                config.budget,
            )

    cases: dict[str, dict[str, Any]] = {}
    strategies: dict[str, Counter[str]] = {}
    checked = violations = 0
    for u, v in iter_pairs(params, config.mode, config.seed, config.trials):
        label = classify_pair(u, v, table)
        if config.lemma != LEMMA_ALL and label.lemma != config.lemma:
            continue
        key = f"{label.lemma}.{label.subcase}"
        tally = cases.setdefault(
            key, {"pairs": 0, "bound": label.bound, "max_length": 0, "violations": 0}
        )
        tally["pairs"] += 1
        checked += 1
        try:
            system = route_pair(u, v, bound_table)
        except ConstructionDefect as err:
            _LOGGER.error("Construction defect on %s -> %s: %s", u, v, err)
            tally["violations"] += 1
            violations += 1
            continue
        problems = validate_path_system(system)
        for problem in problems:
            _LOGGER.error("Pair %s -> %s (%s): %s", u, v, system.label, problem)
        if problems:
            tally["violations"] += 1
            violations += 1
        tally["max_length"] = max(tally["max_length"], system.max_length)
        strategies.setdefault(key, Counter())[system.strategy] += 1

    for key, counts in strategies.items():
        cases[key]["strategies"] = dict(sorted(counts.items()))
    _LOGGER.info("Verified %d pairs of %s: %d violations", checked, params, violations)
    document = {
        "lemma": config.lemma,
        "pairs_checked": checked,
        "violations": violations,
        "verdict": VERDICT_FAIL if violations else VERDICT_PASS,
        "cases": dict(sorted(cases.items(), key=lambda item: tuple(map(int, item[0].split("."))))),
    }
    _emit_json(config, document, started)
    return EXIT_VERIFICATION_FAILED if violations else EXIT_OK


def cmd_fault(config: CommandConfig) -> int:
    """Run the fault experiment and print the lower witness, maxima and verdict."""
    started = time.perf_counter()
    params = _params(config)
    normalization = None
    if not params.is_sorted:
        params, isomorphism = normalize_params(params)
        normalization = f"{config.params} -> {params} ({isomorphism.describe()})"
        _LOGGER.info("Running the fault experiment on %s", params)
    witness = lower_bound_witness(params)
    report = sandwich_verdict(
        params,
        MODE_EXHAUSTIVE if config.witness_only else config.mode,
        seed=config.seed,
        pairs=0 if config.witness_only else config.pairs,
        trials=config.trials,
        budget=config.budget,
        f=config.faults,
    )
    document = {
        "normalization": normalization,
        "witness": witness_to_dict(witness),
        **sandwich_to_dict(report),
    }
    _emit_json(config, document, started)
    return EXIT_OK if report.verdict == VERDICT_PASS else EXIT_VERIFICATION_FAILED


def cmd_connectivity(config: CommandConfig) -> int:
    """Print the smallest pair connectivity with its Menger paths."""
    started = time.perf_counter()
    params = _params(config)
    sweep = min_pair_connectivity(params, config.mode, config.seed, config.trials)
    passed = sweep.value >= params.connectivity
    document = {
        "expected": params.connectivity,
        **connectivity_sweep_to_dict(sweep),
        "verdict": VERDICT_PASS if passed else VERDICT_FAIL,
    }
    _emit_json(config, document, started)
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED


def run(config: CommandConfig, bound_table: BoundTable | None = None) -> int:
    """Dispatch a validated command."""
    if config.command == CMD_GEN:
        return cmd_gen(config)
    if config.command == CMD_METRICS:
        return cmd_metrics(config)
    if config.command == CMD_ROUTE:
        return cmd_route(config, bound_table)
    if config.command == CMD_VERIFY:
        return cmd_verify(config, bound_table)
    if config.command == CMD_FAULT:
        return cmd_fault(config)
    return cmd_connectivity(config)


def _add_params(parser: argparse.ArgumentParser, nargs: str | int = 3) -> None:
    parser.add_argument(
        "params", nargs=nargs, type=int, metavar="N", help="block lengths r s t"
    )
    parser.add_argument("-o", "--output", help="write to this file instead of standard output")


def _add_sampling(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=MODES, help="exhaustive (default) or sampled")
    parser.add_argument(
        "--sampled", dest="mode", action="store_const", const=MODE_SAMPLED, help="--mode sampled"
    )
    parser.add_argument(
        "--exhaustive",
        dest="mode",
        action="store_const",
        const=MODE_EXHAUSTIVE,
        help="--mode exhaustive",
    )
    parser.add_argument("--seed", type=int, help=f"sampler seed (default {DEFAULT_SEED})")
    parser.add_argument("--trials", type=int, help="number of sampled draws")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog=DOMAIN, description="Exchanged 3-ary n-cube generator, router and fault oracles"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    parser.add_argument("--debug", action="store_true", help="log every routing decision")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser(CMD_GEN, help="export a graph")
    _add_params(gen, nargs="*")
    gen.add_argument("--format", choices=FORMATS, help=f"default {FORMAT_EDGE_LIST}")
    gen.add_argument("--kary", nargs=2, type=int, metavar=("N", "K"), help="export Q_N^K")

    metrics = commands.add_parser(CMD_METRICS, help="census, degrees, diameter, connectivity")
    _add_params(metrics)
    metrics.add_argument("--seed", type=int)
    metrics.add_argument("--trials", type=int, help="sampled fault draws (default 0)")
    metrics.add_argument("--route-pairs", type=int, help="sampled pairs for the router bound")
    metrics.add_argument("--budget", type=int, help="largest vertex count to analyse")

    route = commands.add_parser(CMD_ROUTE, help="disjoint paths between two vertices")
    _add_params(route)
    route.add_argument("u", help="flat source vertex, e.g. 0000")
    route.add_argument("v", help="flat target vertex")

    verify = commands.add_parser(CMD_VERIFY, help="check the router on every pair")
    _add_params(verify)
    _add_sampling(verify)
    verify.add_argument("--lemma", help="case index 1-15 or 'all'")
    verify.add_argument("--budget", type=int, help="largest number of pairs in exhaustive mode")

    fault = commands.add_parser(CMD_FAULT, help="fault-distance sandwich experiment")
    _add_params(fault)
    _add_sampling(fault)
    fault.add_argument("--pairs", type=int, help="random pairs besides the witness pair")
    fault.add_argument("--budget", type=int, help="largest number of enumerated fault sets")
    fault.add_argument("--faults", type=int, help="fault set size (default 2r+1)")
    fault.add_argument(
        "--exhaustive-pair-witness",
        dest="witness_only",
        action="store_true",
        default=None,
        help="enumerate every fault set of the witness pair only",
    )

    connectivity = commands.add_parser(CMD_CONNECTIVITY, help="minimum pair connectivity")
    _add_params(connectivity)
    _add_sampling(connectivity)
    return parser


def configure_logging(verbose: bool, debug: bool) -> None:
    """Send log records to standard error at the requested level."""
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    logging.getLogger(DOMAIN).setLevel(level)


def main(argv: Sequence[str] | None = None, bound_table: BoundTable | None = None) -> int:
    """Run the command line and return its exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.debug)
    raw = {key: value for key, value in vars(args).items() if value is not None and value != []}
    try:
        return run(build_config(raw), bound_table)
    except (ConfigurationError, CodecError, DomainError) as err:
        _LOGGER.error("Usage error: %s", err)
        return EXIT_USAGE
    except ConstructionDefect as err:
        _LOGGER.error("Construction defect: %s", err)
        return EXIT_VERIFICATION_FAILED
    except ResourceBudgetExceeded as err:
        _LOGGER.error("%s", err)
        return EXIT_BUDGET
    except OSError as err:
        _LOGGER.error("Cannot write output: %s", err)
        return EXIT_USAGE
    except Exception:
        _LOGGER.exception("Unexpected failure running %s", raw.get("command"))
        raise
