"""
Command-line front end.

Exit codes: 0 pass, 1 claim failure, 2 contract violation (p | D_F or non-integral
coefficients), 3 usage error.
"""
import argparse
import json
import logging
import logging.config
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from pydantic import BaseModel, ValidationError

from src.conf.config import settings
from src.exceptions import (
    ArithmeticDomainError,
    CacheIntegrityError,
    CacheLockedError,
    CatalogError,
    ContractViolation,
    LabelError,
    PredictionError,
    SiegelError,
)
from src.repository.catalog import display_name, dumps_catalog, get_catalog, product_label, root_system_data
from src.repository.forms import FORM_KEYS, FormCache
from src.schemas import Certificate, PredictionReport, RunConfig
from src.services import prediction
from src.services.congruence import check_singular, scan_primes
from src.services.laplace import compare_printings
from src.services.selftest import run_selftest

logger = logging.getLogger("src.cli")

EXIT_PASS, EXIT_FAIL, EXIT_CONTRACT, EXIT_USAGE = 0, 1, 2, 3

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _name_list(text: str) -> list[str]:
    return [x for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG")
    common.add_argument("--cache-dir", type=Path, default=None, help="form cache (default: SIEGEL_CACHE_DIR)")

    parser = _Parser(prog="siegel", description="Congruences of Siegel and orthogonal modular forms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fourier(name: str, help_text: str) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        cmd.add_argument("--prec", type=int, default=settings.default_precision)
        return cmd

    fourier("build", "build the Igusa tower into the form cache")

    check = fourier("check", "certify singularity of a form modulo a prime")
    check.add_argument("--form", choices=FORM_KEYS, required=True)
    check.add_argument("--prime", type=int, required=True)

    scan = fourier("scan", "certificates for every prime up to a bound")
    scan.add_argument("--form", choices=FORM_KEYS, required=True)
    scan.add_argument("--max-prime", type=int, default=settings.max_scan_prime)

    fourier("bracket-check", "evaluate both bracket formulas at Psi5 and Phi30")
    fourier("selftest", "run the acceptance scoreboard")

    predict = sub.add_parser("predict", parents=[common], help="predict primes from bracket weights")
    predict.add_argument("--n", type=int, required=True)
    predict.add_argument("--weights", type=_int_list)
    predict.add_argument("--k", type=int)
    predict.add_argument("--l", type=int)
    predict.add_argument("--rhs", help="nonzero constant of a bracket identity")
    predict.add_argument("--names", type=_name_list)
    predict.add_argument("--mode", choices=["strict", "valuation"], default="valuation")

    identity = sub.add_parser("predict-identity", parents=[common], help="predict primes from a bracket identity")
    identity.add_argument("--n", type=int, required=True)
    identity.add_argument("--k", type=int, required=True)
    identity.add_argument("--l", type=int, required=True)
    identity.add_argument("--rhs", required=True)
    identity.add_argument("--names", type=_name_list)

    constant = sub.add_parser("eisenstein-constant", parents=[common], help="constant of an Eisenstein pairing")
    constant.add_argument("--root", choices=["E6", "E7", "E8"], required=True)
    constant.add_argument("--k", type=int, required=True)
    constant.add_argument("--l", type=int, required=True)

    catalog = sub.add_parser("catalog", parents=[common], help="check every catalog claim")
    catalog.add_argument("--mode", choices=["strict", "valuation"], default="valuation")
    catalog.add_argument("--catalog", dest="catalog_path", type=Path, default=None)
    catalog.add_argument("--export", type=Path, default=None, help="write the catalog JSON and exit")

    serve = sub.add_parser("serve", parents=[common], help="run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def configure_logging(verbose: bool = False) -> None:
    if settings.log_config.is_file():
        logging.config.fileConfig(settings.log_config, disable_existing_loggers=False)
    else:
        logging.basicConfig(format=LOG_FORMAT, level=settings.log_level)
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


def _run_config(args: argparse.Namespace) -> RunConfig:
    try:
        return RunConfig(
            command=args.command,
            prec=getattr(args, "prec", settings.default_precision),
            cache_dir=args.cache_dir or settings.cache_dir,
            primes=[args.prime] if getattr(args, "prime", None) else [],
            forms=[args.form] if getattr(args, "form", None) else [],
            catalog_path=getattr(args, "catalog_path", None),
            mode=getattr(args, "mode", "valuation"),
            output_format=args.output_format,
        )
    except ValidationError as err:
        raise UsageError(err.errors()[0]["msg"]) from err


def _emit(config: RunConfig, payload: BaseModel | list | dict, text: Callable[[], str]) -> None:
    if config.output_format == "json":
        if isinstance(payload, BaseModel):
            print(payload.model_dump_json(indent=2))
        else:
            print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text())


def _certificate_line(cert: Certificate) -> str:
    name = display_name(cert.form)
    if cert.status == "pass":
        return f"{name} is singular modulo p={cert.prime} (P={cert.prec}, {cert.witnesses_nonvacuous} witnesses)"
    if cert.status == "vacuous":
        return f"{name} modulo p={cert.prime}: vacuous, no index with Q nonzero mod p"
    first = cert.violations[0]
    return (
        f"{name} is not singular modulo p={cert.prime}: {len(cert.violations)} violations, "
        f"first at {tuple(first.index)}"
    )


def _report_lines(report: PredictionReport) -> str:
    lines = []
    for r in report.results:
        power = f" (exponent {r.exponent})" if r.exponent > 1 else ""
        lines.append(f"{product_label(r.target)} is singular modulo p={r.prime}{power}")
    return "\n".join(lines) if lines else "no predictions"


def cmd_build(config: RunConfig, args) -> int:
    manifest = FormCache(config.cache_dir).build(config.prec)
    _emit(
        config,
        manifest,
        lambda: "\n".join(f"{f.key}: {f.terms} terms, weight {f.weight}" for f in manifest.forms),
    )
    return EXIT_PASS


def cmd_check(config: RunConfig, args) -> int:
    form = FormCache(config.cache_dir).get(args.form, config.prec)
    cert = check_singular(form.series, args.prime, config.prec, form.name)
    _emit(config, cert, lambda: _certificate_line(cert))
    return EXIT_PASS if cert.passed else EXIT_FAIL


def cmd_scan(config: RunConfig, args) -> int:
    form = FormCache(config.cache_dir).get(args.form, config.prec)
    certs = scan_primes(form.series, config.prec, args.max_prime, form.name)
    _emit(
        config,
        [c.model_dump(mode="json") for c in certs],
        lambda: "\n".join(f"p={c.prime}: {c.status}" for c in certs),
    )
    return EXIT_PASS


def cmd_bracket_check(config: RunConfig, args) -> int:
    cache = FormCache(config.cache_dir)
    psi, phi = cache.get("psi5", config.prec), cache.get("phi30", config.prec)
    result = compare_printings(psi.series, 5, phi.series, 30, 3)
    payload = {
        "two_form_vanishes": result.two_form_vanishes,
        "many_form_vanishes": result.many_form_vanishes,
        "difference_identity_holds": result.difference_identity_holds,
    }
    _emit(config, payload, lambda: "\n".join(f"{key}: {value}" for key, value in payload.items()))
    return EXIT_PASS if result.two_form_vanishes and result.difference_identity_holds else EXIT_FAIL


def cmd_predict(config: RunConfig, args) -> int:
    if args.weights:
        if args.rhs is not None or args.k is not None or args.l is not None:
            raise UsageError("give either --weights or --k/--l")
        if len(args.weights) == 2 and not args.names:
            k, l = args.weights
            report = prediction.predict_pair(args.n, k, l, config.mode)
        else:
            report = prediction.predict_family(args.n, args.weights, config.mode, args.names)
    elif args.k is not None and args.l is not None:
        f, g = _pair_names(args.names)
        if args.rhs is not None:
            report = prediction.predict_identity(args.n, args.k, args.l, _rational(args.rhs), f, g)
        else:
            report = prediction.predict_pair(args.n, args.k, args.l, config.mode, f, g)
    else:
        raise UsageError("predict needs --weights or both --k and --l")
    _emit(config, report, lambda: _report_lines(report))
    return EXIT_PASS


def cmd_predict_identity(config: RunConfig, args) -> int:
    f, g = _pair_names(args.names)
    report = prediction.predict_identity(args.n, args.k, args.l, _rational(args.rhs), f, g)
    _emit(config, report, lambda: _report_lines(report))
    return EXIT_PASS


def cmd_eisenstein_constant(config: RunConfig, args) -> int:
    value = prediction.eisenstein_constant(root_system_data(args.root), args.k, args.l)
    _emit(config, {"root": args.root, "k": args.k, "l": args.l, "value": str(value)}, lambda: str(value))
    return EXIT_PASS


def cmd_catalog(config: RunConfig, args) -> int:
    entries = get_catalog(config.catalog_path)
    if args.export:
        args.export.write_text(dumps_catalog(entries) + "\n", encoding="utf-8")
        print(f"wrote {len(entries)} entries to {args.export}")
        return EXIT_PASS
    report = prediction.run_catalog(entries, config.mode)

    def text() -> str:
        lines = []
        for entry in report.entries:
            extras = ", ".join(f"{product_label(e.product)}:{e.prime}" for e in entry.extras)
            line = f"{entry.label}: {len(entry.verified)}/{entry.claims} verified"
            if entry.missed:
                line += " MISSED " + ", ".join(f"{product_label(c.product)}:{c.prime}" for c in entry.missed)
            if entry.out_of_mode:
                line += f", {len(entry.out_of_mode)} out of mode"
            if extras:
                line += f", extras {extras}"
            if entry.mode_exact_ok is False:
                line += ", NOT mode-exact"
            lines.append(line)
        lines.append(f"{report.missed_total} missed / {report.verified_total} claims verified")
        return "\n".join(lines)

    _emit(config, report, text)
    return EXIT_PASS if report.ok else EXIT_FAIL


def cmd_selftest(config: RunConfig, args) -> int:
    report = run_selftest(config.prec, FormCache(config.cache_dir))

    def text() -> str:
        lines = [
            f"[{'PASS' if c.passed else 'FAIL'}] {c.number}. {c.name}: {c.detail}" for c in report.criteria
        ]
        passed = sum(c.passed for c in report.criteria)
        lines.append(f"{passed}/{len(report.criteria)} criteria passed at P={report.prec}")
        return "\n".join(lines)

    _emit(config, report, text)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_serve(config: RunConfig, args) -> int:
    import uvicorn

    uvicorn.run("main:app", host=args.host, port=args.port)
    return EXIT_PASS


def _pair_names(names: list[str] | None) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if not names:
        return ("F",), ("G",)
    if len(names) != 2:
        raise UsageError("--names takes exactly two names for a pair")
    return (names[0],), (names[1],)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


COMMANDS = {
    "build": cmd_build,
    "check": cmd_check,
    "scan": cmd_scan,
    "bracket-check": cmd_bracket_check,
    "predict": cmd_predict,
    "predict-identity": cmd_predict_identity,
    "eisenstein-constant": cmd_eisenstein_constant,
    "catalog": cmd_catalog,
    "selftest": cmd_selftest,
    "serve": cmd_serve,
}


def main(argv: Sequence[str] | None = None) -> int:
    """
    Runs one command.

    Parameters:
        argv: Arguments without the program name; defaults to ``sys.argv[1:]``.

    Returns:
        The exit code.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = _run_config(args)
        return COMMANDS[args.command](config, args)
    except UsageError as err:
        print(f"siegel: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as err:
        print(f"contract violation: {err}", file=sys.stderr)
        return EXIT_CONTRACT
    except (PredictionError, LabelError, ArithmeticDomainError) as err:
        print(f"siegel: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (CacheIntegrityError, CacheLockedError, CatalogError) as err:
        logger.error("%s", err)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAIL
    except SiegelError as err:
        print(f"{args.command} failed: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
