"""Command line interface for the evaluation pipeline.

    facteval run --run-dir runs/demo --prompts prompts.jsonl \
        --responses responses.jsonl --kind qa \
        --mock-llm llm.json --mock-search search.json

Subcommands run the full pipeline or a single stage over a resumable run
directory. Settings resolve with precedence: flags, then environment
(LLM_API_KEY, LLM_BASE_URL, VERIFIER_API_KEY, VERIFIER_BASE_URL,
SEARCH_API_KEY, SEARCH_BASE_URL), then --config JSON, then defaults.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from .backends import BackendError
from .corpus import IngestError
from .pipeline import (
    ConfigError,
    Pipeline,
    StageError,
    analyze_score_files,
    resolve_config,
)
from .retrieval import SearchError
from .scoring import ScoringError

logger = logging.getLogger(__name__)

STAGE_COMMANDS = ("extract", "retrieve", "verify", "score", "analyze")


def _k_override(value: str) -> tuple[str, Fraction]:
    domain, sep, amount = value.partition("=")
    if not sep or not domain or not amount:
        raise argparse.ArgumentTypeError(
            f"expected domain=value, got {value!r}"
        )
    try:
        k = Fraction(amount)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid K value in {value!r}: {exc}") from None
    return domain, k


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--run-dir", help="run directory holding stage files")
    parser.add_argument("--config", help="JSON config file (lowest precedence)")
    parser.add_argument("--prompts", help="prompts JSONL: {id, domain, text[, kind]}")
    parser.add_argument("--responses", help="responses JSONL: {prompt_id, model_id, text}")
    parser.add_argument("--kind", choices=["qa", "nonqa"], help="default prompt kind")
    parser.add_argument("--concurrency", type=int, help="parallel backend calls (default 8)")
    parser.add_argument("--num-results", type=int, dest="num_results",
                        help="search results per claim, 1-10 (default 10)")
    parser.add_argument("--label-mode", choices=["binary", "ternary"], dest="label_mode",
                        help="verification label set (default binary)")
    parser.add_argument("--field-order", choices=["standard", "claude"], dest="field_order",
                        help="verification prompt layout (default standard)")
    parser.add_argument("--k", action="append", type=_k_override, metavar="DOMAIN=VALUE",
                        help="pin K for a domain (repeatable)")
    parser.add_argument("--mock-llm", dest="mock_llm",
                        help="chat transcript file; replays canned completions")
    parser.add_argument("--mock-search", dest="mock_search",
                        help="search transcript file; replays canned results")
    parser.add_argument("--extractor-model", dest="extractor_model", help="chat model for extraction")
    parser.add_argument("--verifier-model", dest="verifier_model", help="chat model for verification")
    parser.add_argument("--force", action="store_true", default=None,
                        help="recompute stages even if outputs exist")
    parser.add_argument("--dry-run", action="store_true", default=None, dest="dry_run",
                        help="print planned backend call counts and exit")
    parser.add_argument("-v", "--verbose", action="store_true", default=None,
                        help="debug logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="facteval",
        description="Claim-level factuality evaluation for long-form model output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run every stage (resumes finished stages)")
    _add_common_flags(run)

    for name, summary in (
        ("extract", "segment responses and extract claims"),
        ("retrieve", "fetch search evidence for extracted claims"),
        ("verify", "judge claims against their evidence"),
        ("score", "compute response and domain scores"),
        ("analyze", "build leaderboard and rank correlations"),
    ):
        stage = sub.add_parser(name, help=summary)
        _add_common_flags(stage)
        if name == "analyze":
            stage.add_argument(
                "--scores",
                nargs="+",
                help="summary CSVs from one or more runs to merge",
            )
    return parser


def _cli_settings(args: argparse.Namespace) -> dict:
    settings = {
        key: getattr(args, key, None)
        for key in (
            "run_dir", "prompts", "responses", "kind", "concurrency", "num_results",
            "label_mode", "field_order", "mock_llm", "mock_search",
            "extractor_model", "verifier_model", "force", "dry_run",
        )
    }
    if getattr(args, "k", None):
        settings["k"] = dict(args.k)
    return settings


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = resolve_config(_cli_settings(args), config_path=args.config)
        if args.command == "analyze" and getattr(args, "scores", None):
            analyze_score_files(args.scores, config.run_dir)
            return 0
        pipeline = Pipeline(config)
        if args.command == "run":
            pipeline.run()
        else:
            stages = [args.command]
            # A stage invocation ingests on the fly when raw inputs are given.
            if args.command == "extract" and config.prompts_path is not None:
                stages = ["ingest", "extract"]
            pipeline.run(stages)
        return 0
    except (ConfigError, IngestError, StageError, ScoringError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BackendError, SearchError) as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
