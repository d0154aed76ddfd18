"""Command line entry point: ``stable-set <command> --graph PATH [options]``.

Exit codes: 0 ok, 2 unreadable input, 3 graph outside the decomposable class
(or beyond the configured caps), 4 verification mismatch, 5 internal bound
violation.
"""

import argparse
import sys
from collections.abc import Callable, Sequence
from enum import IntEnum
from pathlib import Path

from pydantic import BaseModel, ValidationError

from .core.config import default_limits
from .core.exceptions.decomposition_exceptions import (
    BoundViolated,
    DomainMismatch,
    NoLeafMethod,
    NotInClass,
    UnresolvedSigma,
)
from .core.exceptions.graph_exceptions import CapExceeded, GraphParseError
from .core.exceptions.polytope_exceptions import BlowUpGuard, MissingLeaf, SizeBoundViolated
from .core.logger import logging, silence
from .core.utils.dimacs import read_graph, read_weights
from .decomposition.pipeline import solve_pipeline
from .graphs.recognition import recognize
from .polytope.builder import build_formulation
from .polytope.emit import emit_lp
from .schemas.report import class_report_of
from .schemas.run_config import Command, RunConfig
from .schemas.solution import rational, solution_of
from .schemas.trace import DecompositionRead, trace_of
from .verification import verify_graph

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    PARSE = 2
    NOT_IN_CLASS = 3
    MISMATCH = 4
    BOUND_VIOLATION = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stable-set",
        description="Maximum weight stable sets and stable set polytope formulations by decomposition.",
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--graph", required=True, type=Path, help="DIMACS edge file")
    parser.add_argument("--weights", type=Path, help="one rational per line in node order, default 1")
    parser.add_argument("--out", type=Path, help="output file, default stdout")
    parser.add_argument("--trace", type=Path, help="write the decomposition trace JSON here")
    parser.add_argument("--samples", type=int, help="random weight vectors checked by verify")
    parser.add_argument("--seed", type=int, help="seed of the weight sampler")
    parser.add_argument("--leaf-cap", type=int, dest="leaf_cap")
    parser.add_argument("--record-cap", type=int, dest="record_cap")
    parser.add_argument("--fm-guard", type=int, dest="fm_guard")
    parser.add_argument("-q", "--quiet", action="store_true", help="log warnings and errors only")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    values = {key: value for key, value in vars(args).items() if value is not None and key != "quiet"}
    return RunConfig.model_validate(values)


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


def cmd_solve(cfg: RunConfig) -> ExitCode:
    g = read_graph(cfg.graph)
    w = read_weights(cfg.weights, g.n)
    solution = solve_pipeline(g, w, cfg.limits(default_limits()))
    _write(cfg.out, _json(solution_of(g, solution)))
    if cfg.trace is not None:
        cfg.trace.write_text(_json(trace_of(solution.lists)))
    return ExitCode.OK


def cmd_emit_lp(cfg: RunConfig) -> ExitCode:
    g = read_graph(cfg.graph)
    f = build_formulation(g, cfg.limits(default_limits()))
    objective = dict(zip(f.original, read_weights(cfg.weights, g.n)))
    _write(cfg.out, emit_lp(f, objective, title=f"stable set polytope of {cfg.graph.name}"))
    print(f"{len(f.variables)} variables, {len(f.rows)} rows", file=sys.stderr)
    return ExitCode.OK


def cmd_verify(cfg: RunConfig) -> ExitCode:
    g = read_graph(cfg.graph)
    report = verify_graph(g, cfg.samples, cfg.seed, cfg.limits(default_limits()))
    _write(cfg.out, _json(report))
    return ExitCode.OK if report.ok else ExitCode.MISMATCH


def cmd_recognize(cfg: RunConfig) -> ExitCode:
    g = read_graph(cfg.graph)
    _write(cfg.out, _json(class_report_of(g, recognize(g, cfg.limits(default_limits())))))
    return ExitCode.OK


def cmd_decompose(cfg: RunConfig) -> ExitCode:
    g = read_graph(cfg.graph)
    w = read_weights(cfg.weights, g.n)
    solution = solve_pipeline(g, w, cfg.limits(default_limits()))
    read = DecompositionRead(
        value=rational(solution.value), history=list(solution.history), trace=trace_of(solution.lists)
    )
    _write(cfg.out, _json(read))
    if cfg.trace is not None:
        cfg.trace.write_text(_json(read.trace))
    return ExitCode.OK


COMMANDS: dict[Command, Callable[[RunConfig], ExitCode]] = {
    Command.SOLVE: cmd_solve,
    Command.EMIT_LP: cmd_emit_lp,
    Command.VERIFY: cmd_verify,
    Command.RECOGNIZE: cmd_recognize,
    Command.DECOMPOSE: cmd_decompose,
}


def run(cfg: RunConfig) -> ExitCode:
    """Run one command, translating domain errors into exit codes."""
    try:
        return COMMANDS[cfg.command](cfg)
    except (GraphParseError, OSError) as err:
        logger.error(f"cannot read input: {getattr(err, 'message', err)}")
        return ExitCode.PARSE
    except NotInClass as err:
        logger.error(f"not in class: {err.message}")
        for line in err.history:
            logger.error(f"  after: {line}")
        return ExitCode.NOT_IN_CLASS
    except (NoLeafMethod, CapExceeded, BlowUpGuard) as err:
        logger.error(f"cannot decompose within the caps: {err.message}")
        return ExitCode.NOT_IN_CLASS
    except (BoundViolated, SizeBoundViolated, MissingLeaf, UnresolvedSigma, DomainMismatch) as err:
        logger.error(f"internal bound violated: {err.message}")
        return ExitCode.BOUND_VIOLATION


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.quiet:
        silence("src.app")
    try:
        cfg = _config(args)
    except ValidationError as err:
        logger.error(f"invalid options: {err}")
        return ExitCode.PARSE
    return int(run(cfg))


if __name__ == "__main__":
    sys.exit(main())
