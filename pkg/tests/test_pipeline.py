"""Pipeline orchestration, configuration, resume, and the CLI."""

from __future__ import annotations

import json
import shutil
from fractions import Fraction
from pathlib import Path

import pytest

from facteval.cli import main
from facteval.corpus import read_jsonl
from facteval.pipeline import (
    ConfigError,
    FIXED_CLOCK_VALUE,
    Pipeline,
    PipelineConfig,
    StageError,
    analyze_score_files,
    resolve_config,
    run_pipeline,
)
from facteval.scoring import read_domain_summary

FIXTURES = Path(__file__).parent / "fixtures"
E2E = FIXTURES / "e2e"


def e2e_config(run_dir: Path, **overrides) -> PipelineConfig:
    settings = dict(
        run_dir=run_dir,
        prompts_path=E2E / "prompts.jsonl",
        responses_path=E2E / "responses.jsonl",
        mock_llm=E2E / "llm_transcript.json",
        mock_search=E2E / "search_transcript.json",
    )
    settings.update(overrides)
    return PipelineConfig(**settings)


def quiet(_: str) -> None:
    pass


@pytest.fixture(scope="module")
def e2e_run(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """One completed end-to-end run shared by read-only tests."""
    run_dir = tmp_path_factory.mktemp("pipeline") / "run"
    result = run_pipeline(e2e_config(run_dir), emit=quiet)
    assert result.stages_run == list(
        ("ingest", "extract", "retrieve", "verify", "score", "analyze")
    )
    return run_dir


def test_config_requires_run_dir() -> None:
    with pytest.raises(ConfigError):
        resolve_config({}, env={})


def test_config_precedence_cli_env_file(tmp_path: Path) -> None:
    config_file = tmp_path / "config.json"
    config_file.write_text(
        json.dumps({"num_results": 3, "llm_api_key": "from-file", "k": {"bio": 4}}),
        encoding="utf-8",
    )
    env = {"LLM_API_KEY": "from-env", "SEARCH_API_KEY": "env-search"}
    cfg = resolve_config(
        {"run_dir": str(tmp_path / "run"), "k": {"bio": Fraction(7)}},
        env=env,
        config_path=config_file,
    )
    # CLI beats env beats file beats default.
    assert cfg.k_overrides == {"bio": Fraction(7)}
    assert cfg.llm_api_key == "from-env"
    assert cfg.search_api_key == "env-search"
    assert cfg.num_results == 3
    assert cfg.concurrency == 8

    cfg = resolve_config(
        {"run_dir": str(tmp_path / "run"), "num_results": 9},
        env=env,
        config_path=config_file,
    )
    assert cfg.num_results == 9

    cfg = resolve_config({"run_dir": str(tmp_path / "run")}, env={}, config_path=config_file)
    assert cfg.llm_api_key == "from-file"
    assert cfg.k_overrides == {"bio": Fraction(4)}


def test_config_validation_errors(tmp_path: Path) -> None:
    with pytest.raises(ConfigError):
        PipelineConfig(run_dir=tmp_path, concurrency=0)
    with pytest.raises(ConfigError):
        PipelineConfig(run_dir=tmp_path, num_results=11)
    with pytest.raises(ConfigError):
        PipelineConfig(run_dir=tmp_path, k_overrides={"bio": Fraction(0)})


def test_offline_mode_uses_fixed_clock(tmp_path: Path) -> None:
    cfg = e2e_config(tmp_path / "run")
    assert cfg.offline is True
    assert cfg.clock()() == FIXED_CLOCK_VALUE

    live = PipelineConfig(run_dir=tmp_path / "live")
    assert live.offline is False
    stamp = live.clock()()
    assert stamp != FIXED_CLOCK_VALUE
    assert stamp.endswith("Z")


def test_live_mode_requires_credentials(tmp_path: Path) -> None:
    cfg = PipelineConfig(
        run_dir=tmp_path / "run",
        prompts_path=E2E / "prompts.jsonl",
        responses_path=E2E / "responses.jsonl",
    )
    with pytest.raises(ConfigError, match="LLM_API_KEY"):
        Pipeline(cfg, emit=quiet).run()

    with_llm_mock = e2e_config(tmp_path / "run2", mock_search=None)
    with pytest.raises(ConfigError, match="SEARCH_API_KEY"):
        Pipeline(with_llm_mock, emit=quiet).run()


def test_stage_requires_prerequisites(tmp_path: Path) -> None:
    cfg = e2e_config(tmp_path / "run")
    with pytest.raises(StageError, match="missing prerequisite"):
        Pipeline(cfg, emit=quiet).run(["extract"])


def test_unknown_stage_rejected(tmp_path: Path) -> None:
    cfg = e2e_config(tmp_path / "run")
    with pytest.raises(ConfigError, match="unknown stages"):
        Pipeline(cfg, emit=quiet).run(["polish"])


def test_full_run_outputs(e2e_run: Path) -> None:
    expected = {
        "manifest.json",
        "prompts.jsonl",
        "responses.jsonl",
        "claims.jsonl",
        "evidence.jsonl",
        "verdicts.jsonl",
        "scores.jsonl",
        "summary.csv",
        "leaderboard.csv",
        "leaderboard.txt",
        "correlations.csv",
    }
    names = {p.name for p in e2e_run.iterdir()}
    assert expected <= names
    assert (e2e_run / "search_cache").is_dir()

    manifest = json.loads((e2e_run / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["models"] == ["alpha", "beta"]
    assert manifest["domains"] == ["bio", "eli5"]
    assert manifest["created_at"] == FIXED_CLOCK_VALUE

    claims = read_jsonl(e2e_run / "claims.jsonl")
    assert len(claims) == 40
    verdicts = read_jsonl(e2e_run / "verdicts.jsonl")
    assert len(verdicts) == 40
    assert all(v["ternary"] is None for v in verdicts)


def test_summary_matches_hand_computation(e2e_run: Path) -> None:
    rows = {(r["domain"], r["model"]): r for r in read_domain_summary(e2e_run / "summary.csv")}
    assert rows[("bio", "alpha")]["K"] == 2.0
    assert rows[("eli5", "beta")]["K"] == 2.0
    assert rows[("bio", "alpha")]["F"] == float(Fraction(52, 75))
    assert rows[("bio", "beta")]["F"] == float(Fraction(9, 25))
    assert rows[("eli5", "alpha")]["F"] == float(Fraction(119, 150))
    assert rows[("eli5", "beta")]["F"] == float(Fraction(7, 15))


def test_resume_skips_everything(e2e_run: Path) -> None:
    result = run_pipeline(e2e_config(e2e_run), emit=quiet)
    assert result.stages_run == []
    assert len(result.stages_skipped) == 6
    assert (result.extractor_calls, result.verifier_calls, result.search_calls) == (0, 0, 0)


def test_dry_run_reports_plan_without_calls(tmp_path: Path, e2e_run: Path) -> None:
    fresh = e2e_config(tmp_path / "fresh", dry_run=True)
    lines: list[str] = []
    result = Pipeline(fresh, emit=lines.append).run()
    assert result.plan["extract"] == 50
    assert isinstance(result.plan["retrieve"], str)
    assert isinstance(result.plan["verify"], str)
    assert not (tmp_path / "fresh").exists()
    assert any("dry run" in line for line in lines)

    done = e2e_config(e2e_run, dry_run=True)
    result = Pipeline(done, emit=quiet).run()
    assert result.plan == {"extract": 0, "retrieve": 0, "verify": 0}


def test_plan_counts_pending_searches_after_extract(tmp_path: Path) -> None:
    run_dir = tmp_path / "run"
    pipeline = Pipeline(e2e_config(run_dir), emit=quiet)
    pipeline.run(["ingest", "extract"])
    plan = Pipeline(e2e_config(run_dir, dry_run=True), emit=quiet).run()
    assert plan.plan["retrieve"] == 35
    assert plan.plan["verify"] == 40


def test_ternary_verification_records_both_labels(tmp_path: Path, e2e_run: Path) -> None:
    run_dir = tmp_path / "run"
    shutil.copytree(e2e_run, run_dir)
    cfg = e2e_config(run_dir, label_mode="ternary", force=True)
    Pipeline(cfg, emit=quiet).run(["verify"])
    verdicts = read_jsonl(run_dir / "verdicts.jsonl")
    labelled = [v for v in verdicts if not v["parse_failed"]]
    assert labelled and all(v["ternary"] in ("Supported", "Contradicted") for v in labelled)
    supported = [v for v in labelled if v["ternary"] == "Supported"]
    assert all(v["binary"] == "Supported" for v in supported)


def test_k_override_changes_summary(tmp_path: Path, e2e_run: Path) -> None:
    run_dir = tmp_path / "run"
    shutil.copytree(e2e_run, run_dir)
    cfg = e2e_config(run_dir, k_overrides={"bio": Fraction(3)}, force=True)
    Pipeline(cfg, emit=quiet).run(["score"])
    rows = {(r["domain"], r["model"]): r for r in read_domain_summary(run_dir / "summary.csv")}
    assert rows[("bio", "alpha")]["K"] == 3.0
    assert rows[("eli5", "alpha")]["K"] == 2.0


def test_ingest_rejects_unknown_prompt_reference(tmp_path: Path) -> None:
    prompts = tmp_path / "prompts.jsonl"
    responses = tmp_path / "responses.jsonl"
    prompts.write_text(
        '{"id": "p1", "domain": "d", "text": "Write."}\n', encoding="utf-8"
    )
    responses.write_text(
        '{"prompt_id": "ghost", "model_id": "m", "text": "Hi."}\n', encoding="utf-8"
    )
    cfg = e2e_config(tmp_path / "run", prompts_path=prompts, responses_path=responses)
    with pytest.raises((StageError, ValueError), match="ghost"):
        Pipeline(cfg, emit=quiet).run(["ingest"])


def test_ingest_rejects_duplicate_response_pair(tmp_path: Path) -> None:
    prompts = tmp_path / "prompts.jsonl"
    responses = tmp_path / "responses.jsonl"
    prompts.write_text(
        '{"id": "p1", "domain": "d", "text": "Write."}\n', encoding="utf-8"
    )
    responses.write_text(
        '{"prompt_id": "p1", "model_id": "m", "text": "Hi."}\n'
        '{"prompt_id": "p1", "model_id": "m", "text": "Hi again."}\n',
        encoding="utf-8",
    )
    cfg = e2e_config(tmp_path / "run", prompts_path=prompts, responses_path=responses)
    with pytest.raises((StageError, ValueError)):
        Pipeline(cfg, emit=quiet).run(["ingest"])


def test_analyze_score_files_merges_summaries(tmp_path: Path, e2e_run: Path) -> None:
    rows = (e2e_run / "summary.csv").read_text(encoding="utf-8").splitlines()
    header, body = rows[0], rows[1:]
    bio = tmp_path / "bio.csv"
    eli5 = tmp_path / "eli5.csv"
    bio.write_text("\n".join([header] + [r for r in body if r.startswith("bio")]) + "\n", encoding="utf-8")
    eli5.write_text("\n".join([header] + [r for r in body if r.startswith("eli5")]) + "\n", encoding="utf-8")
    out_dir = tmp_path / "merged"
    analyze_score_files([bio, eli5], out_dir, emit=quiet)
    text = (out_dir / "leaderboard.txt").read_text(encoding="utf-8")
    assert "alpha" in text and "beta" in text
    assert (out_dir / "correlations.csv").exists()

    with pytest.raises(ValueError):
        analyze_score_files([bio, bio], tmp_path / "dup", emit=quiet)


def test_cli_run_and_resume(tmp_path: Path) -> None:
    run_dir = tmp_path / "run"
    argv = [
        "run",
        "--run-dir", str(run_dir),
        "--prompts", str(E2E / "prompts.jsonl"),
        "--responses", str(E2E / "responses.jsonl"),
        "--mock-llm", str(E2E / "llm_transcript.json"),
        "--mock-search", str(E2E / "search_transcript.json"),
    ]
    assert main(argv) == 0
    assert (run_dir / "leaderboard.txt").exists()
    assert main(argv) == 0


def test_cli_stage_command_respects_order(tmp_path: Path) -> None:
    run_dir = tmp_path / "run"
    argv = [
        "retrieve",
        "--run-dir", str(run_dir),
        "--mock-llm", str(E2E / "llm_transcript.json"),
        "--mock-search", str(E2E / "search_transcript.json"),
    ]
    assert main(argv) == 2


def test_cli_reports_backend_failures(tmp_path: Path) -> None:
    empty = tmp_path / "empty.json"
    empty.write_text('{"responses": {}}', encoding="utf-8")
    argv = [
        "run",
        "--run-dir", str(tmp_path / "run"),
        "--prompts", str(E2E / "prompts.jsonl"),
        "--responses", str(E2E / "responses.jsonl"),
        "--mock-llm", str(empty),
        "--mock-search", str(E2E / "search_transcript.json"),
    ]
    assert main(argv) == 3


def test_cli_rejects_bad_k_flag(tmp_path: Path) -> None:
    argv = ["run", "--run-dir", str(tmp_path / "run"), "--k", "bio"]
    with pytest.raises(SystemExit):
        main(argv)


def test_cli_analyze_scores(tmp_path: Path, e2e_run: Path) -> None:
    out = tmp_path / "analysis"
    argv = [
        "analyze",
        "--run-dir", str(out),
        "--scores", str(e2e_run / "summary.csv"),
    ]
    assert main(argv) == 0
    assert (out / "leaderboard.csv").exists()
