"""Command-line entry point."""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from app.config import settings
from app.models.report import ProductReport, SuiteReport
from app.models.stream_spec import StreamSpec
from app.monoid import VerificationParams
from app.monoid.registry import InstanceRegistry
from app.services import demo_service, factor_service, product_service, suite_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window", type=int, help=f"search window (default {settings.window})")
    parser.add_argument("--depth", type=int, help=f"stream depth D (default {settings.depth})")
    parser.add_argument("--level", type=int, help=f"neighbourhood level k (default {settings.level})")
    parser.add_argument("--seed", type=int, help=f"sampling seed (default {settings.seed})")
    parser.add_argument("--qmax", type=int, help=f"denominator bound (default {settings.qmax})")
    parser.add_argument("--max-factors", type=int, help=f"product length bound (default {settings.max_factors})")
    parser.add_argument("--degree", type=int, help=f"exponent total bound (default {settings.degree})")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--output", type=Path, help="also write the structured report to this path")


def _add_instance(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("instance", help=f"one of {', '.join(InstanceRegistry.kinds())}")
    parser.add_argument("--gens", type=int, help="free monoid generators")
    parser.add_argument("--vars", type=int, help="series variables")
    parser.add_argument("--precision", type=int, help="series truncation degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topmon", description="Bounded verification of topological commutative monoids."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    laws = commands.add_parser("check-laws", help="run the law suite of an instance")
    _add_instance(laws)
    _add_common(laws)

    demo = commands.add_parser("demo", help="run a counterexample demo")
    demo.add_argument("name", help=f"one of {', '.join(demo_service.list_demos())}")
    _add_common(demo)

    product = commands.add_parser("eval-product", help="evaluate a stream specification file")
    product.add_argument("spec", type=Path, help="UTF-8 JSON stream specification")
    _add_common(product)

    factor = commands.add_parser("factor", help="factor an element into atoms")
    _add_instance(factor)
    factor.add_argument("element", help="element text")
    _add_common(factor)
    return parser


def _params(args: argparse.Namespace) -> VerificationParams:
    return VerificationParams.from_settings(settings).with_overrides(
        window=args.window,
        depth=args.depth,
        level=args.level,
        seed=args.seed,
        qmax=args.qmax,
        max_factors=args.max_factors,
        degree=args.degree,
    )


def _instance_params(args: argparse.Namespace, params: VerificationParams) -> dict[str, Any]:
    """Flags accepted by the instance kind; the window flag sizes windowed instances."""
    kind = InstanceRegistry.ALIASES.get(args.instance, args.instance)
    accepted = InstanceRegistry.PARAMETERS.get(kind, ())
    given = {"gens": args.gens, "nvars": args.vars, "precision": args.precision, "window": params.window}
    return {k: v for k, v in given.items() if k in accepted and v is not None}


def _emit(report: SuiteReport | ProductReport, args: argparse.Namespace) -> None:
    text = report.to_json() if args.format == "structured" else report.to_text()
    sys.stdout.write(text)
    if args.output is not None:
        args.output.write_text(report.to_json(), encoding="utf-8")


def run(args: argparse.Namespace) -> int:
    params = _params(args)
    if args.command == "check-laws":
        report = asyncio.run(
            suite_service.check_laws(args.instance, params, _instance_params(args, params))
        )
    elif args.command == "demo":
        report = asyncio.run(demo_service.run_demo(args.name, params))
    elif args.command == "eval-product":
        spec = StreamSpec.parse(args.spec.read_text(encoding="utf-8"))
        product = product_service.eval_product(spec, params)
        _emit(product, args)
        return EXIT_OK
    else:
        report = factor_service.factor(args.instance, args.element, params, _instance_params(args, params))
    _emit(report, args)
    return EXIT_OK if report.exit_code == 0 else EXIT_CHECK_FAILURE


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(
        level=settings.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (ValueError, OSError) as e:
        logger.debug("Usage error", exc_info=True)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
