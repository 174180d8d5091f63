"""
Interface de linha de comando do orlicz-lab.

Saída principal em stdout (text, json ou csv); diagnósticos em stderr.
Códigos de saída: 0 sucesso, 1 alguma verificação falhou, 2 erro de uso
ou de entrada.
"""

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError

from orlicz_lab import __version__
from orlicz_lab.cli.suite import VerificationSuite, summary_frame
from orlicz_lab.config import RunConfig, load_config
from orlicz_lab.core.algebra.trace_algebra import mu, synthetic_projection
from orlicz_lab.core.compactness.diagnostics import (
    isometry_image_check,
    projection_norm_sandwich,
    rademacher_image_check,
    structure_report,
)
from orlicz_lab.core.errors import OrliczLabError
from orlicz_lab.core.functions.growth import GrowthProber
from orlicz_lab.core.multipliers.multipliers import (
    check_constants,
    condition_a,
    condition_b,
    krasnoselskii_check,
    remark_witness,
    search_constants,
    verify_bound,
)
from orlicz_lab.core.norms.norms import luxemburg_norm, orlicz_norm
from orlicz_lab.core.rescaling.rescaling import (
    equivalent_measure_map,
    lemma_lm_check,
    rescale_down,
    rescale_up,
)
from orlicz_lab.infrastructure.data_loader import (
    DataLoader,
    dumps,
    export_rearrangement,
    rearrangement_frame,
    to_serializable,
)
from orlicz_lab.models import ConstantWitness

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {message}"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class CheckFailed(Exception):
    """Uma verificação terminou com holds/valid falso."""


def configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level=level)


def format_number(value: float) -> str:
    """12 algarismos significativos, sem ruído de ponto flutuante (5.0, 2.25, inf)."""
    if not np.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return repr(float(f"{value:.12g}"))


class Printer:
    """Escreve o resultado principal no formato configurado."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def _write(self, text: str) -> None:
        self.stream.write(text if text.endswith("\n") else text + "\n")

    def number(self, value: float, **extra: Any) -> None:
        if self.fmt == "json":
            self._write(dumps({"value": value, **extra}))
        else:
            self._write(format_number(value))

    def numbers(self, points: Sequence[float], values: Sequence[float]) -> None:
        if len(points) == 1:
            self.number(values[0])
            return
        frame = pd.DataFrame({"at": list(points), "value": list(values)})
        self.frame(frame)

    def frame(self, frame: pd.DataFrame) -> None:
        if self.fmt == "json":
            self._write(dumps(frame.to_dict(orient="records")))
        elif self.fmt == "csv":
            self._write(frame.to_csv(index=False, float_format="%.17g"))
        else:
            self._write(frame.to_string(index=False))

    def report(self, report: Any) -> None:
        data = to_serializable(report)
        if self.fmt == "json":
            self._write(dumps(data))
        elif self.fmt == "csv" and isinstance(data, dict):
            flat = {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in data.items()}
            self._write(pd.DataFrame([flat]).to_csv(index=False))
        elif isinstance(data, dict):
            for key, value in data.items():
                shown = json.dumps(value) if isinstance(value, (dict, list)) else value
                self._write(f"{key}: {shown}")
        else:
            self._write(dumps(data))


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise CheckFailed(message)


def _parse_constants(text: str) -> ConstantWitness:
    try:
        m, a, b, c = (float(x) for x in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError("constants must be 'M,alpha,beta,gamma'") from e
    return ConstantWitness(M=m, alpha=a, beta=b, gamma=c)


# Subcomandos
def cmd_fn(args: argparse.Namespace, loader: DataLoader, out: Printer, config: RunConfig) -> None:
    phi = loader.load_function(args.spec)
    prober = GrowthProber(config)
    action = args.fn_command

    if action in ("eval", "inverse", "conjugate") and args.at:
        if action == "eval":
            target = phi.evaluate
        elif action == "inverse":
            target = phi.formal_inverse
        else:
            target = phi.conjugate(numeric=args.numeric).evaluate
        out.numbers(args.at, [target(t) for t in args.at])
    elif action == "conjugate":
        out.report(phi.conjugate(numeric=args.numeric).to_dict())
    elif action in ("eval", "inverse"):
        raise OrliczLabError(f"fn {action} requires --at")
    elif action == "check":
        report = phi.is_orlicz()
        out.report(report)
        _require(report.valid, f"{phi.label}: {report.violation} at {report.witness}")
    elif action == "probe":
        probes: Dict[str, Callable] = {
            "delta2": lambda: prober.probe_delta2(phi),
            "delta-prime": lambda: prober.probe_delta_prime(phi, u0=args.u0),
            "a-form": lambda: prober.probe_delta_prime_a_form(phi, u0=args.u0),
            "nabla-prime": lambda: prober.probe_nabla_prime(phi, u0=args.u0),
        }
        out.report(probes[args.condition]())
    elif action == "limits":
        out.report(prober.n_function_limits(phi))
    elif action == "powerfit":
        out.report(prober.power_fit(phi, x0=args.x0))
    elif action == "lemma":
        report = prober.lemma_nfn_check(phi, args.q)
        out.report(report)
        _require(report.holds, f"{phi.label}: N-function lemma fails for q={args.q:g}")


def cmd_rearrange(args: argparse.Namespace, loader: DataLoader, out: Printer, config: RunConfig) -> None:
    steps = mu(loader.load_element(args.element), config.tolerances)
    if args.out:
        export_rearrangement(steps, args.out)
    out.frame(rearrangement_frame(steps))


def cmd_norm(args: argparse.Namespace, loader: DataLoader, out: Printer, config: RunConfig) -> None:
    phi = loader.load_function(args.fn)
    element = loader.load_element(args.element)
    norm = luxemburg_norm if args.which == "luxemburg" else orlicz_norm
    result = norm(phi, element, config)
    out.number(result.value, method=result.method, iterations=result.iterations)


def cmd_mult(args: argparse.Namespace, loader: DataLoader, out: Printer, config: RunConfig) -> None:
    action = args.mult_command
    if action == "corollary":
        psi, phi2 = loader.load_function(args.psi), loader.load_function(args.phi2)
        condition = condition_a if args.condition == "a" else condition_b
        _, _, report = condition(psi, phi2)
        out.report(report)
        _require(report.applicable and report.check.holds, f"condition ({args.condition}): {report.reason}")
        return

    zeta, phi1, phi2 = (loader.load_function(p) for p in (args.zeta, args.phi1, args.phi2))
    if action == "search" or (action == "check" and args.search):
        result = search_constants(zeta, phi1, phi2, args.budget, config)
        out.report(result)
        _require(result.witness is not None, f"no constants found: {result.reason}")
    elif action == "check":
        if args.constants is None:
            raise OrliczLabError("mult check needs --constants or --search")
        report = check_constants(zeta, phi1, phi2, args.constants, config=config)
        out.report(report)
        _require(report.holds, f"violation at {report.violation}")
    elif action == "verify":
        check = check_constants(zeta, phi1, phi2, args.constants, config=config)
        _require(check.holds, f"constants rejected by check_constants at {check.violation}")
        f, g, h = (loader.load_element(p) for p in (args.f, args.g, args.h))
        report = verify_bound(zeta, phi1, phi2, check.witness, f, g, h, config)
        out.report(report)
        _require(report.holds, f"bound violated: trace {report.trace_fgh:.6g}")
    elif action == "kr":
        if args.witness:
            kr, check = remark_witness(zeta, phi1, phi2, args.variant, args.alpha, args.beta, config)
            out.report({"condition": kr, "check": check})
            _require(kr.holds and (check is None or check.holds), f"variant {args.variant}: {kr.reason or kr.witness_u}")
        else:
            kr = krasnoselskii_check(zeta, phi1, phi2, args.variant, args.alpha, args.beta, args.u0, config)
            out.report(kr)
            _require(kr.holds, f"variant {args.variant} fails at u={kr.witness_u} ({kr.reason})")


def cmd_rescale(args: argparse.Namespace, loader: DataLoader, out: Printer, config: RunConfig) -> None:
    element = loader.load_element(args.element)
    phi2 = loader.load_function(args.phi2)
    psi = loader.load_function(args.psi) if args.psi else None
    if args.direction == "lemma":
        if psi is None:
            raise OrliczLabError("rescale lemma requires --psi")
        report = lemma_lm_check(psi, phi2, element, config)
        out.report(report)
        _require(not report.applicable or report.holds, "norm of the image exceeds the composed norm")
        return
    if args.direction == "up":
        if psi is None:
            raise OrliczLabError("rescale up requires --psi")
        image, report = rescale_up(psi, phi2, element, config)
    else:
        image, report = rescale_down(phi2, element, psi, config)
    out.report({"report": report, "image": image})
    _require(not report.applicable or report.holds, f"rescale {args.direction} bound violated")


def cmd_measure_map(args: argparse.Namespace, loader: DataLoader, out: Printer, config: RunConfig) -> None:
    phi = loader.load_function(args.fn)
    pair = loader.load_measure_pair(args.nu1, args.nu2)
    _, report = equivalent_measure_map(phi, pair, loader.load_vector(args.f), config)
    out.report(report)
    _require(report.holds, f"norm ratio {report.ratio:.12g} outside the derived bounds")


def cmd_compact(args: argparse.Namespace, loader: DataLoader, out: Printer, config: RunConfig) -> None:
    case = args.compact_command
    suite_names = {"case1": "rademacher_images", "case2": "isometry_chain", "case3": "projection_sandwich"}
    if case != "diag" and not (args.g or args.element or args.tau):
        _run_suite(VerificationSuite(config), [suite_names[case]], out)
        return

    phi = loader.load_function(args.fn)
    if case == "diag":
        g = loader.load_element(args.g)
        report = structure_report(g.algebra, g, phi, config)
    elif case == "case1":
        report = rademacher_image_check(loader.load_element(args.g), phi, config)
    elif case == "case2":
        report = isometry_image_check(loader.load_element(args.g), args.lam, phi, config)
    else:
        e = loader.load_element(args.element) if args.element else synthetic_projection(args.tau)[1]
        report = projection_norm_sandwich(phi, e, config)
    out.report(report)
    _require(report.holds, f"compact {case} identity fails")


def _run_suite(suite: VerificationSuite, only: Optional[List[str]], out: Printer) -> None:
    outcomes = suite.run(only)
    out.frame(summary_frame(outcomes))
    failed = [o for o in outcomes if not o.passed]
    _require(not failed, f"{failed[0].name}: {failed[0].detail}" if failed else "")


def cmd_verify_suite(args: argparse.Namespace, loader: DataLoader, out: Printer, config: RunConfig) -> None:
    _run_suite(VerificationSuite(config), args.only, out)


# Parser
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orlicz-lab", description="Espaços de Orlicz não comutativos em escala de bancada"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=str, help="Arquivo JSON de configuração")
    parser.add_argument("--seed", type=int, help="Semente das execuções aleatórias")
    parser.add_argument("--format", choices=["json", "csv", "text"], help="Formato da saída")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    parser.add_argument("--show-config", action="store_true", help="Imprime a configuração efetiva")
    commands = parser.add_subparsers(dest="command")

    fn = commands.add_parser("fn", help="Funções de Orlicz")
    fn_commands = fn.add_subparsers(dest="fn_command", required=True)
    for name in ("conjugate", "inverse", "eval", "check", "probe", "limits", "powerfit", "lemma"):
        sub = fn_commands.add_parser(name)
        sub.add_argument("--spec", required=True, help="Arquivo JSON da função")
        if name in ("conjugate", "inverse", "eval"):
            sub.add_argument("--at", type=float, nargs="+", help="Pontos de avaliação")
        if name == "conjugate":
            sub.add_argument("--numeric", action="store_true", help="Força o conjugado numérico")
        if name == "probe":
            sub.add_argument(
                "--condition", choices=["delta2", "delta-prime", "a-form", "nabla-prime"], default="delta2"
            )
            sub.add_argument("--u0", type=float, default=0.0)
        if name == "powerfit":
            sub.add_argument("--x0", type=float, default=0.0)
        if name == "lemma":
            sub.add_argument("--q", type=float, required=True)
    fn.set_defaults(handler=cmd_fn)

    rearrange = commands.add_parser("rearrange", help="Valores singulares generalizados μ(x)")
    rearrange.add_argument("--element", required=True)
    rearrange.add_argument("--out", help="CSV de saída (t_start,t_end,value)")
    rearrange.set_defaults(handler=cmd_rearrange)

    norm = commands.add_parser("norm", help="Normas de Luxemburg e de Orlicz")
    norm.add_argument("--which", choices=["luxemburg", "orlicz"], default="luxemburg")
    norm.add_argument("--fn", required=True)
    norm.add_argument("--element", required=True)
    norm.set_defaults(handler=cmd_norm)

    mult = commands.add_parser("mult", help="Multiplicadores e desigualdade de Young generalizada")
    mult_commands = mult.add_subparsers(dest="mult_command", required=True)
    for name in ("check", "search", "verify", "kr"):
        sub = mult_commands.add_parser(name)
        sub.add_argument("--zeta", required=True)
        sub.add_argument("--phi1", required=True)
        sub.add_argument("--phi2", required=True)
        if name in ("check", "verify"):
            sub.add_argument("--constants", type=_parse_constants, required=name == "verify", help="M,alpha,beta,gamma")
        if name in ("check", "search"):
            sub.add_argument("--budget", type=int)
        if name == "check":
            sub.add_argument("--search", action="store_true")
        if name == "verify":
            for element in ("--f", "--g", "--h"):
                sub.add_argument(element, required=True)
        if name == "kr":
            sub.add_argument("--variant", type=int, choices=[1, 2], required=True)
            sub.add_argument("--alpha", type=float, required=True)
            sub.add_argument("--beta", type=float, required=True)
            sub.add_argument("--u0", type=float, default=0.0)
            sub.add_argument("--witness", action="store_true", help="Deriva e valida (M, α, β, γ)")
    corollary = mult_commands.add_parser("corollary")
    corollary.add_argument("--condition", choices=["a", "b"], required=True)
    corollary.add_argument("--psi", required=True)
    corollary.add_argument("--phi2", required=True)
    mult.set_defaults(handler=cmd_mult)

    rescale = commands.add_parser("rescale", help="Reescalonamento de multiplicadores")
    rescale.add_argument("direction", choices=["up", "down", "lemma"])
    rescale.add_argument("--psi")
    rescale.add_argument("--phi2", required=True, help="φ₂ (ou φ interna em 'lemma')")
    rescale.add_argument("--element", required=True)
    rescale.set_defaults(handler=cmd_rescale)

    measure = commands.add_parser("measure-map", help="Troca de medidas equivalentes")
    measure.add_argument("--fn", required=True)
    measure.add_argument("--nu1", required=True)
    measure.add_argument("--nu2", required=True)
    measure.add_argument("--f", required=True)
    measure.set_defaults(handler=cmd_measure_map)

    compact = commands.add_parser("compact", help="Identidades da prova de compacidade")
    compact.add_argument("compact_command", choices=["diag", "case1", "case2", "case3"])
    compact.add_argument("--fn")
    compact.add_argument("--g")
    compact.add_argument("--lam", type=float, default=0.1)
    compact.add_argument("--element", help="Projeção para case3")
    compact.add_argument("--tau", type=float, help="τ(e) de uma projeção sintética para case3")
    compact.set_defaults(handler=cmd_compact)

    suite = commands.add_parser("verify-suite", help="Executa todas as propriedades")
    suite.add_argument("--only", nargs="+", help="Nomes das verificações")
    suite.set_defaults(handler=cmd_verify_suite)
    return parser


def _validate_compact(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if getattr(args, "command", None) != "compact":
        return
    needs_input = args.compact_command == "diag" or args.g or args.element or args.tau
    if args.compact_command == "diag" and not args.g:
        parser.error("compact diag requires --g")
    if needs_input and not args.fn:
        parser.error(f"compact {args.compact_command} requires --fn")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Executa a CLI.

    Args:
        argv: Argumentos (padrão: sys.argv[1:])

    Returns:
        Código de saída (0, 1 ou 2)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate_compact(args, parser)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    level = {0: None, 1: "INFO"}.get(args.verbose, "DEBUG")
    configure_logging(level or "WARNING")
    try:
        config = load_config(args.config).with_overrides(
            seed=args.seed, output_format=args.format, log_level=level
        )
        configure_logging(config.log_level)
        out = Printer(config.output_format)

        if args.show_config:
            sys.stdout.write(json.dumps(config.model_dump(), indent=2) + "\n")
            if args.command is None:
                return EXIT_OK
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE

        args.handler(args, DataLoader(config=config), out, config)
        return EXIT_OK
    except CheckFailed as e:
        logger.error(f"❌ Verificação falhou: {e}")
        return EXIT_FAILED
    except (OrliczLabError, ValidationError, FileNotFoundError, argparse.ArgumentTypeError) as e:
        logger.error(f"Erro de entrada: {e}")
        return EXIT_USAGE
    except json.JSONDecodeError as e:
        logger.error(f"JSON malformado na linha {e.lineno}, coluna {e.colno}: {e.msg}")
        return EXIT_USAGE


def run() -> None:
    """Ponto de entrada do script orlicz-lab."""
    sys.exit(main())


if __name__ == "__main__":
    run()
