"""Command-line interface.

    params    code parameters and decoding radii
    encode    message coefficients -> codeword
    decode    decode an explicit word or a seeded demo instance
    simulate  success-probability campaign from a JSON config
    bench     median phase timings from a JSON config
    reports   saved reports, most recent first

Exit codes: 0 success, 1 usage or validation error, 2 runtime failure.
"""

import argparse
import asyncio
import json
import sys
import time
from math import floor
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from src import __version__
from src.codec import HermitianCode, apply_errors, encode, message_basis, random_message
from src.config import config
from src.console import visualizer
from src.decoder.base import DecoderFactory
from src.decoder.gs import (
    best_gs_parameters,
    johnson_radius,
    tau_gs_bound,
    tau_gs_exact,
    tau_gs_extended,
)
from src.decoder.power import best_power_l, tau_pow, tau_pow_guaranteed, unique_radius
from src.environment.base import EnvironmentFactory, EnvironmentType
from src.exceptions import EncodingError, FieldError, HermitianError, ParameterError
from src.logger import define_log_level, logger
from src.schema import DECODER_VALUES, DecoderKind, SimConfig
from src.utils.report_manager import ReportManager


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

USAGE_ERRORS = (ValidationError, ParameterError, FieldError, EncodingError, ValueError)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_word(text: str, code: HermitianCode):
    """Comma or whitespace separated field elements (integer representation)."""
    values = [int(tok) for tok in text.replace(",", " ").split()]
    if len(values) != code.n:
        raise ParameterError(f"received word needs {code.n} symbols, got {len(values)}")
    if any(not 0 <= v < code.GF.order for v in values):
        raise ParameterError(f"symbols must lie in [0, {code.GF.order})")
    return code.GF(values)


def parse_message(text: str, code: HermitianCode):
    """Coefficients over the message basis, lowest order first; missing ones are zero."""
    basis = message_basis(code)
    values = [int(tok) for tok in text.replace(",", " ").split()]
    if len(values) > len(basis):
        raise EncodingError(f"at most k = {code.k} coefficients, got {len(values)}")
    if any(not 0 <= v < code.GF.order for v in values):
        raise ParameterError(f"coefficients must lie in [0, {code.GF.order})")
    return code.curve.from_terms({ij: code.GF(v) for ij, v in zip(basis, values)})


def _read_text(value: Optional[str], path: Optional[str]) -> Optional[str]:
    if path is not None:
        return Path(path).read_text(encoding="utf-8")
    return value


def load_sim_config(path: str, overrides: Dict) -> SimConfig:
    """Campaign config from a JSON file; non-None overrides win over the file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ValueError(f"cannot read config {path}: {e}")
    except json.JSONDecodeError as e:
        raise ValueError(f"config {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ValueError(f"config {path} must hold a JSON object")
    data.update({k: v for k, v in overrides.items() if v is not None})
    return SimConfig.model_validate(data)


# subcommands


def cmd_params(args) -> int:
    code = HermitianCode(args.q, args.m)
    s, l = args.s, args.l
    rows = {
        "q": code.q,
        "m": code.m,
        "n": code.n,
        "k": code.k,
        "d*": code.d_star,
        "g": code.g,
        "Unique radius": unique_radius(code),
        "Key-equation guarantee": tau_pow_guaranteed(code),
        "Johnson radius": f"{johnson_radius(code):.2f}",
    }
    try:
        rows[f"τ_GS exact (s={s}, l={l})"] = tau_gs_exact(code, s, l)
        rows[f"τ_GS bound (s={s}, l={l})"] = tau_gs_bound(code, s, l)
        rows[f"τ_GS + g/s (s={s}, l={l})"] = tau_gs_extended(code, s, l)
    except ParameterError as e:
        rows[f"τ_GS (s={s}, l={l})"] = f"n/a: {e.message}"
    if l * code.m < code.n:
        exact = tau_pow(code, l)
        rows[f"τ_Pow (l={l})"] = f"{floor(exact)} ({exact})"
    else:
        rows[f"τ_Pow (l={l})"] = "n/a: l*m >= n"

    try:
        bs, bl, btau = best_gs_parameters(code, args.max_l)
        rows[f"Best GS up to l={args.max_l}"] = f"s={bs}, l={bl}, τ={btau}"
    except ParameterError:
        rows[f"Best GS up to l={args.max_l}"] = "n/a"
    try:
        pl = best_power_l(code)
        rows["Best Power"] = f"l={pl}, τ={floor(tau_pow(code, pl))}"
    except ParameterError:
        rows["Best Power"] = "n/a"

    visualizer.show_params_table(repr(code), rows)
    return EXIT_OK


def cmd_encode(args) -> int:
    code = HermitianCode(args.q, args.m)
    text = _read_text(args.coeffs, args.coeffs_file)
    if text is None:
        message = random_message(code, np.random.default_rng(args.seed))
    else:
        message = parse_message(text, code)
    codeword = encode(code, message)

    if args.json:
        print(json.dumps({"message": repr(message), "codeword": [int(v) for v in codeword]}))
        return EXIT_OK
    visualizer.show_section_header(repr(code), "🧮")
    visualizer.show_word("message", [repr(message)])
    visualizer.show_word("codeword", [int(v) for v in codeword], style="green")
    return EXIT_OK


def cmd_decode(args) -> int:
    code = HermitianCode(args.q, args.m)
    decoder = DecoderFactory.create(args.alg, code, s=args.s, l=args.l, tau=args.tau)

    sent, positions = None, None
    text = _read_text(args.received, args.received_file)
    if text is not None:
        received = parse_word(text, code)
    else:
        rng = np.random.default_rng(args.seed)
        sent = random_message(code, rng)
        if args.errors is not None:
            weight = args.errors
        elif args.alg == DecoderKind.GS.value:
            weight = decoder.tau
        else:
            weight = floor(tau_pow(code, decoder.l))
        received, positions = apply_errors(encode(code, sent), weight, rng)

    report = decoder.decode(received)

    if args.json:
        payload = report.model_dump(mode="json", exclude={"candidates"})
        payload["candidates"] = [
            {"message": repr(c.message), "codeword": c.codeword} for c in report.candidates
        ]
        if sent is not None:
            payload["sent"] = repr(sent)
            payload["error_positions"] = positions
            payload["sent_in_output"] = report.contains(sent)
        print(json.dumps(payload))
    else:
        visualizer.show_section_header(f"{decoder.name} decoding, {code!r}", "🔎")
        visualizer.show_word("received", [int(v) for v in received])
        visualizer.show_decode_result(report, sent=sent, errors=positions)
    return EXIT_OK


async def _run_campaign(environment_type: EnvironmentType, sim_config: SimConfig, **kwargs):
    total = len(sim_config.weights) * sim_config.trials
    with visualizer.progress() as progress:
        if environment_type == EnvironmentType.SIMULATION:
            task = progress.add_task("trials", total=total)
        else:
            task = progress.add_task("bench", total=None)

        async def on_progress(update: dict):
            if update.get("type") == "trial_progress":
                progress.update(task, completed=update["completed"])
            elif update.get("type") == "bench_progress":
                progress.update(
                    task,
                    description=f"weight {update['weight']}: {update['successes']} ok",
                    completed=update["attempts"],
                )

        env = await EnvironmentFactory.create_environment(
            environment_type,
            sim_config=sim_config,
            progress_callback=on_progress,
            **kwargs,
        )
        try:
            return await env.run()
        finally:
            await env.cleanup()


def _save(paths: List[Path], expected: bool) -> int:
    if expected and not paths:
        visualizer.show_error("No report could be written", "see the log file for details")
        return EXIT_RUNTIME
    visualizer.show_saved(paths)
    return EXIT_OK


def _check_outputs(
    manager: ReportManager, report_type: str, sim_config: SimConfig, config_path: str
) -> None:
    """Refuse an output stem whose files would overwrite the campaign config."""
    if not sim_config.out:
        return
    config_file = Path(config_path).resolve()
    stem = manager.resolve_stem(report_type, "", sim_config.out)
    for path in manager.output_paths(stem, sim_config.format):
        if path.resolve() == config_file:
            raise ValueError(f"output {path} would overwrite the config file")


def cmd_simulate(args) -> int:
    sim_config = load_sim_config(
        args.config, {"out": args.out, "format": args.format, "workers": args.workers}
    )
    manager = ReportManager(args.report_dir)
    _check_outputs(manager, "sim", sim_config, args.config)
    start = time.time()
    report = asyncio.run(_run_campaign(EnvironmentType.SIMULATION, sim_config))
    visualizer.show_sim_summary(report)
    paths = manager.save_sim_report(report, sim_config.format, sim_config.out)
    status = _save(paths, expected=True)
    visualizer.show_completion(time.time() - start)
    return status


def cmd_bench(args) -> int:
    sim_config = load_sim_config(args.config, {"out": args.out, "format": args.format})
    manager = ReportManager(args.report_dir)
    _check_outputs(manager, "bench", sim_config, args.config)
    start = time.time()
    report = asyncio.run(
        _run_campaign(
            EnvironmentType.BENCH, sim_config, runs=args.runs, max_attempts=args.max_attempts
        )
    )
    visualizer.show_bench_table(report)
    paths = manager.save_bench_report(report, sim_config.format, sim_config.out)
    status = _save(paths, expected=True)
    visualizer.show_completion(time.time() - start)
    return status


def cmd_reports(args) -> int:
    reports = ReportManager(args.report_dir).list_reports(args.type, args.limit)
    if args.json:
        print(json.dumps(reports))
    else:
        visualizer.show_reports(reports)
    return EXIT_OK


# parser


def _add_code_args(parser: argparse.ArgumentParser):
    parser.add_argument("--q", type=int, required=True, help="Field parameter, F = GF(q^2)")
    parser.add_argument("--m", type=int, required=True, help="Message order bound, 2g-2 < m < n")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="hermitian",
        description="Encode, decode and simulate one-point Hermitian codes",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Log to the terminal (-vv for debug)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="Code parameters and decoding radii")
    _add_code_args(p)
    p.add_argument("--s", type=int, default=1, help="GS multiplicity")
    p.add_argument("--l", type=int, default=1, help="GS list size / Power degree")
    p.add_argument("--max-l", type=int, default=4, help="Largest l searched for best parameters")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("encode", help="Encode a message")
    _add_code_args(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--coeffs", help="Coefficients over the message basis, lowest order first")
    group.add_argument("--coeffs-file", help="File holding the coefficients")
    p.add_argument("--seed", type=int, default=0, help="Seed of a random message")
    p.add_argument("--json", action="store_true", help="Print JSON instead of panels")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="Decode a received word")
    _add_code_args(p)
    p.add_argument("--alg", choices=DECODER_VALUES, default=DecoderKind.POWER.value)
    p.add_argument("--s", type=int, default=1, help="GS multiplicity")
    p.add_argument("--l", type=int, default=1, help="GS list size / Power degree")
    p.add_argument("--tau", type=int, default=None, help="GS radius (default: exact τ_GS)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--received", help="Received word, n symbols")
    group.add_argument("--received-file", help="File holding the received word")
    p.add_argument("--errors", type=int, default=None, help="Demo error weight (default: radius)")
    p.add_argument("--seed", type=int, default=0, help="Demo seed")
    p.add_argument("--json", action="store_true", help="Print JSON instead of panels")
    p.set_defaults(func=cmd_decode)

    for name, func, help_text in (
        ("simulate", cmd_simulate, "Success-probability campaign"),
        ("bench", cmd_bench, "Median phase timings"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON file with SimConfig fields")
        p.add_argument("--out", default=None, help="Output stem (overrides the config)")
        p.add_argument("--format", choices=("csv", "json", "both"), default=None)
        p.add_argument(
            "--report-dir", default=None, help=f"Report root (default: {config.report_root})"
        )
        if name == "simulate":
            p.add_argument("--workers", type=int, default=None, help="Worker processes")
        else:
            p.add_argument("--runs", type=int, default=None, help="Successful decodes per weight")
            p.add_argument("--max-attempts", type=int, default=None, help="Attempt cap per weight")
        p.set_defaults(func=func)

    p = sub.add_parser("reports", help="List saved reports, most recent first")
    p.add_argument("--type", choices=("sim", "bench"), default=None, help="Only this report type")
    p.add_argument("--limit", type=int, default=20, help="Largest number of reports listed")
    p.add_argument(
        "--report-dir", default=None, help=f"Report root (default: {config.report_root})"
    )
    p.add_argument("--json", action="store_true", help="Print JSON instead of a table")
    p.set_defaults(func=cmd_reports)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        define_log_level(
            print_level="DEBUG" if args.verbose > 1 else "INFO",
            logfile_level=config.logging.logfile_level,
            logfile=config.logging.logfile,
        )

    try:
        return args.func(args)
    except USAGE_ERRORS as e:
        logger.error(f"{args.command}: {e}")
        visualizer.show_error(getattr(e, "message", str(e)), f"command: {args.command}")
        return EXIT_USAGE
    except (HermitianError, OSError) as e:
        logger.exception(f"{args.command} failed")
        visualizer.show_error(getattr(e, "message", str(e)), f"command: {args.command}")
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        visualizer.show_error("Interrupted")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
