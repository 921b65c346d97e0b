"""Subcommand handlers. Each returns (exit code, report payload, optional CSV text)."""

import argparse
import csv
import io
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError as PydanticValidationError

from src.belltest import (
    DeviceModel,
    Test2Report,
    calibrate_c1,
    depolarized_device,
    device_from_state,
    honest_bell_device,
    honest_graph_device,
    honest_pass_probability,
    product_state_device,
    qutrit_device,
    rotated_device,
    rotated_state_device,
    run_test2,
)
from src.certify import (
    AdaptivePlan,
    CertificationMargins,
    incorrect_accept_bound,
    povm_bound,
    state_error_bound,
)
from src.cli.models import OracleReport, RunConfig
from src.cli.oracles import run_oracles
from src.config import protocol_settings, resolve_thread_count
from src.delegation import (
    MEASURERS,
    PREPARERS,
    DelegationResult,
    PartyMessage,
    ScenarioConfig,
    load_scenario,
    run_delegation,
    write_transcript,
)
from src.exceptions import ValidationError
from src.extraction import ExtractionResult, extract
from src.graphs import ColoredGraph, with_partitions
from src.graphtest import Test4Report, precision_level, run_test4, site_table_csv, theorem2_outputs
from src.hilbert import PAULI_Z, PureState, apply_local
from src.stats import threshold_table

logger = logging.getLogger(__name__)

Outcome = tuple[int, dict[str, Any], str | None]

SCHEMAS: dict[str, type[BaseModel]] = {
    "test2": Test2Report,
    "test4": Test4Report,
    "extraction": ExtractionResult,
    "certification": CertificationMargins,
    "delegation": DelegationResult,
    "transcript": PartyMessage,
    "scenario": ScenarioConfig,
    "oracle": OracleReport,
}

DATA_GRAPHS = Path(__file__).resolve().parents[2] / "data" / "graphs"


def _parameters(args: argparse.Namespace, **extra: Any) -> RunConfig:
    """Validated run parameters; alpha and beta fall back to the configuration.

    Raises:
        ValidationError: If the seed is negative or alpha, beta lie outside (0, 1)
    """
    settings = protocol_settings()
    try:
        return RunConfig(
            command=args.command,
            seed=getattr(args, "seed", None),
            m=getattr(args, "m", None),
            alpha=args.alpha if getattr(args, "alpha", None) is not None else settings.alpha,
            beta=args.beta if getattr(args, "beta", None) is not None else settings.beta,
            extra=extra,
        )
    except PydanticValidationError as exc:
        raise ValidationError("Invalid run parameters", details={"errors": exc.errors()}) from exc


def _load_graph(path: str, partition: str = "file") -> ColoredGraph:
    graph = ColoredGraph.from_json(path)
    if partition != "file":
        return with_partitions(graph, partition)
    if graph.partition_mode == "none":
        logger.info("Graph %s has no partitions; computing them greedily", graph.name)
        return with_partitions(graph)
    return graph


def bell_device(args: argparse.Namespace) -> DeviceModel:
    """Two-site device selected by the bell-test flags."""
    kind = "honest" if args.honest else args.device
    if kind == "honest":
        return honest_bell_device()
    if kind == "product":
        return product_state_device()
    if kind == "rotated":
        return rotated_device(honest_bell_device(), args.site, args.label, args.theta)
    if kind == "depolarized":
        return depolarized_device(args.p)
    if kind == "qutrit":
        return qutrit_device(args.leak, args.theta)
    raise ValidationError("Unknown device", details={"device": kind})


def graph_device(graph: ColoredGraph, adversary: str, site: int, theta: float) -> DeviceModel:
    """Graph-state device, optionally corrupted on one site."""
    honest = honest_graph_device(graph)
    if adversary == "honest":
        return honest
    if not 0 <= site < graph.n:
        raise ValidationError("Corrupted site outside the graph", details={"site": site, "n": graph.n})
    if adversary == "z-corrupt":
        return device_from_state(apply_local(honest.state, site, PAULI_Z), name=f"z-corrupt({site})")
    if adversary == "rotated-state":
        return rotated_state_device(honest, site, theta)
    if adversary == "product":
        return device_from_state(PureState.basis_state((2,) * graph.n, (0,) * graph.n), name="product")
    raise ValidationError("Unknown adversary", details={"adversary": adversary})


def cmd_bell_test(args: argparse.Namespace) -> Outcome:
    params = _parameters(args)
    params.c1 = args.c1 or protocol_settings().c1 or calibrate_c1(params.beta)
    device = bell_device(args)
    report = run_test2(device, args.m, params.c1, args.seed, alpha=params.alpha,
                       threads=args.threads or resolve_thread_count())
    payload: dict[str, Any] = {"parameters": params.model_dump(), "report": report.model_dump(mode="json")}
    if args.extract:
        payload["extraction"] = extract(device, report.epsilons if report.passed else None).model_dump(mode="json")
    return (0 if report.passed else 1), payload, None


def cmd_graph_test(args: argparse.Namespace) -> Outcome:
    params = _parameters(args, adversary=args.adversary)
    graph = _load_graph(args.graph, args.partition)
    params.extra["graph"] = graph.name
    params.c1 = args.c1 or protocol_settings().c1 or calibrate_c1(params.beta, num_tests=4, sites_n=graph.n)
    device = graph_device(graph, args.adversary, args.site, args.theta)
    report = run_test4(device, graph, args.m, params.c1, args.seed, alpha=params.alpha,
                       threads=args.threads or resolve_thread_count())
    payload: dict[str, Any] = {"parameters": params.model_dump(), "report": report.model_dump(mode="json")}
    if report.passed:
        payload["precision"] = theorem2_outputs(report, alpha=params.alpha).model_dump(mode="json")
    return (0 if report.passed else 1), payload, site_table_csv(report)


def _scenario_from_args(args: argparse.Namespace) -> tuple[ScenarioConfig, Path | None]:
    if args.scenario_file:
        path = Path(args.scenario_file)
        return load_scenario(path), path.parent
    if not args.graph:
        raise ValidationError("delegate needs --scenario-file or --graph")
    config = ScenarioConfig(
        name="command-line",
        scenario=args.mode,
        graph=args.graph,
        m=args.m,
        c1=args.c1,
        seed=args.seed,
        preparer=args.preparer,
        measurer=args.measurer,
        transcript=args.transcript,
    )
    return config, None


def cmd_delegate(args: argparse.Namespace) -> Outcome:
    params = _parameters(args)
    config, base = _scenario_from_args(args)
    graph = _load_graph(str(config.graph_path(base)))
    params.seed, params.m = config.seed, config.m
    params.extra.update(scenario=config.name, mode=config.scenario, graph=graph.name)
    params.c1 = config.c1 or protocol_settings().c1 or calibrate_c1(params.beta, num_tests=4, sites_n=graph.n)
    device = honest_graph_device(graph)
    plan = AdaptivePlan.from_dict(config.plan) if config.plan else None
    transcript, result = run_delegation(
        graph, config.m, params.c1, config.scenario, PREPARERS[config.preparer](device),
        MEASURERS[config.measurer](), config.seed, plan=plan, alpha=params.alpha,
    )
    transcript_path = args.transcript or config.transcript
    if transcript_path:
        write_transcript(transcript, transcript_path)
    payload = {"parameters": params.model_dump(), "report": result.model_dump(mode="json")}
    return (0 if result.accepted else 1), payload, None


def cmd_calibrate(args: argparse.Namespace) -> Outcome:
    params = _parameters(args)
    params.c1 = calibrate_c1(params.beta, num_tests=args.num_tests, sites_n=args.n)
    result: dict[str, Any] = {"c1": params.c1, "n": args.n, "num_tests": args.num_tests}
    if args.n == 1:
        result["honest_pass_probability"] = honest_pass_probability(params.c1)
    rows = threshold_table(args.m_values, args.p_star, params.alpha, args.beta_tail) if args.m_values else []
    text = None
    if rows:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
        text = buffer.getvalue()
        result["thresholds"] = rows
    return 0, {"parameters": params.model_dump(), "report": result}, text


def cmd_bounds(args: argparse.Namespace) -> Outcome:
    params = _parameters(args)
    settings = protocol_settings()
    if args.delta is None:
        delta = precision_level(args.n, args.m, args.c2 if args.c2 is not None else settings.c2)
    else:
        delta = args.delta
    result: dict[str, Any] = {
        "n": args.n,
        "delta": delta,
        "s": args.s or settings.s,
        "povm_bound": povm_bound(args.n, delta, args.s),
        "state_error_bound": state_error_bound(args.n, delta, params.alpha, args.m),
        "incorrect_accept_bound": incorrect_accept_bound(args.n, delta, params.alpha, args.m),
    }
    result["vacuous"] = result["incorrect_accept_bound"] >= 1.0
    return 0, {"parameters": params.model_dump(), "report": result}, None


def cmd_oracle(args: argparse.Namespace) -> Outcome:
    params = _parameters(args)
    paths = args.graph or sorted(str(p) for p in DATA_GRAPHS.glob("*.json"))
    graphs = [_load_graph(p) for p in paths]
    params.extra["graphs"] = [g.name for g in graphs]
    report = run_oracles(graphs, max_n=args.max_n, max_m=args.max_m, alpha=params.alpha, seed=args.seed)
    payload = {"parameters": params.model_dump(), "report": report.model_dump(mode="json")}
    return (0 if report.passed else 1), payload, None



def cmd_schema(args: argparse.Namespace) -> Outcome:
    if args.model not in SCHEMAS:
        raise ValidationError("Unknown model", details={"model": args.model, "known": sorted(SCHEMAS)})
    return 0, SCHEMAS[args.model].model_json_schema(), None


HANDLERS = {
    "bell-test": cmd_bell_test,
    "graph-test": cmd_graph_test,
    "delegate": cmd_delegate,
    "calibrate": cmd_calibrate,
    "bounds": cmd_bounds,
    "oracle": cmd_oracle,
    "schema": cmd_schema,
}
