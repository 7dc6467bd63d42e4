"""End-to-end evaluation pipeline over a resumable run directory.

Stages: ingest -> extract -> retrieve -> verify -> score -> analyze.
Each stage reads its inputs from the run directory and persists its
outputs there, so any stage can be re-run or resumed; stages whose
outputs already exist are skipped unless forced. With mock transcripts
for both the chat and search backends, a run touches no network and is
byte-for-byte reproducible.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Mapping

from . import corpus
from .backends import (
    DEFAULT_WIDTH,
    ChatBackend,
    HttpChatBackend,
    MockChatBackend,
    RateLimiter,
    run_parallel,
)
from .corpus import Claim, IngestError, Prompt, PromptKind, Response, RunManifest
from .extraction import extract_claims
from .retrieval import (
    EvidenceList,
    EvidenceRetriever,
    HttpSearchClient,
    MockSearchClient,
    SearchClient,
    utc_now,
)
from .scoring import (
    ResponseStats,
    ScoringError,
    compute_k,
    score_domain,
    write_domain_summary,
    read_domain_summary,
)
from .analysis import ModelDomainMatrix, render_leaderboard, write_correlation_csv, write_leaderboard_csv
from .segmenter import build_windows, make_response
from .verification import BinaryLabel, FieldOrder, LabelMode, VerificationRecord, verify_claim

logger = logging.getLogger(__name__)

FIXED_CLOCK_VALUE = "1970-01-01T00:00:00Z"

DEFAULT_LLM_BASE_URL = "https://api.openai.com/v1"
DEFAULT_SEARCH_BASE_URL = "https://google.serper.dev"
DEFAULT_MODEL = "gpt-4o"

STAGE_ORDER = ("ingest", "extract", "retrieve", "verify", "score", "analyze")

ENV_KEYS = {
    "llm_api_key": "LLM_API_KEY",
    "llm_base_url": "LLM_BASE_URL",
    "verifier_api_key": "VERIFIER_API_KEY",
    "verifier_base_url": "VERIFIER_BASE_URL",
    "search_api_key": "SEARCH_API_KEY",
    "search_base_url": "SEARCH_BASE_URL",
}


class ConfigError(ValueError):
    """Invalid or incomplete pipeline configuration."""


class StageError(RuntimeError):
    """A stage could not run, usually from missing prerequisites."""


@dataclass
class PipelineConfig:
    run_dir: Path
    prompts_path: Path | None = None
    responses_path: Path | None = None
    kind: PromptKind = PromptKind.NONQA
    concurrency: int = DEFAULT_WIDTH
    num_results: int = 10
    label_mode: LabelMode = LabelMode.BINARY
    field_order: FieldOrder = FieldOrder.STANDARD
    k_overrides: dict[str, Fraction] = field(default_factory=dict)
    mock_llm: Path | None = None
    mock_search: Path | None = None
    llm_base_url: str = DEFAULT_LLM_BASE_URL
    llm_api_key: str = ""
    extractor_model: str = DEFAULT_MODEL
    verifier_base_url: str = ""
    verifier_api_key: str = ""
    verifier_model: str = ""
    search_base_url: str = DEFAULT_SEARCH_BASE_URL
    search_api_key: str = ""
    llm_rps: float = 0.0
    search_rps: float = 0.0
    force: bool = False
    dry_run: bool = False

    def __post_init__(self) -> None:
        self.run_dir = Path(self.run_dir)
        self.kind = PromptKind(self.kind)
        self.label_mode = LabelMode(self.label_mode)
        self.field_order = FieldOrder(self.field_order)
        if self.concurrency < 1:
            raise ConfigError(f"concurrency must be >= 1, got {self.concurrency}")
        if not 1 <= self.num_results <= 10:
            raise ConfigError(f"num-results must be in [1, 10], got {self.num_results}")
        for domain, k in self.k_overrides.items():
            if Fraction(k) <= 0:
                raise ConfigError(f"K override for domain {domain!r} must be positive")

    @property
    def offline(self) -> bool:
        return self.mock_llm is not None and self.mock_search is not None

    def clock(self) -> Callable[[], str]:
        if self.offline:
            return lambda: FIXED_CLOCK_VALUE
        return utc_now


@dataclass
class RunResult:
    run_dir: Path
    stages_run: list[str] = field(default_factory=list)
    stages_skipped: list[str] = field(default_factory=list)
    extractor_calls: int = 0
    verifier_calls: int = 0
    search_calls: int = 0
    plan: dict[str, Any] = field(default_factory=dict)


def resolve_config(
    cli: Mapping[str, Any],
    env: Mapping[str, str] | None = None,
    config_path: Path | str | None = None,
) -> PipelineConfig:
    """Merge settings with precedence CLI > environment > config file > defaults.

    ``cli`` holds flag values with None meaning "not given".
    """
    import os

    env = os.environ if env is None else env
    file_cfg: dict[str, Any] = {}
    if config_path:
        try:
            file_cfg = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config file {config_path}: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError(f"config file {config_path} must hold a JSON object")

    def pick(key: str, default: Any) -> Any:
        if cli.get(key) is not None:
            return cli[key]
        env_key = ENV_KEYS.get(key)
        if env_key and env.get(env_key):
            return env[env_key]
        if file_cfg.get(key) is not None:
            return file_cfg[key]
        return default

    run_dir = pick("run_dir", None)
    if run_dir is None:
        raise ConfigError("a run directory is required (--run-dir)")

    k_overrides: dict[str, Fraction] = {}
    for source in (file_cfg.get("k", {}), cli.get("k") or {}):
        for domain, value in dict(source).items():
            k_overrides[domain] = Fraction(str(value))

    def pick_path(key: str) -> Path | None:
        value = pick(key, None)
        return Path(value) if value is not None else None

    return PipelineConfig(
        run_dir=Path(run_dir),
        prompts_path=pick_path("prompts"),
        responses_path=pick_path("responses"),
        kind=PromptKind(pick("kind", PromptKind.NONQA.value)),
        concurrency=int(pick("concurrency", DEFAULT_WIDTH)),
        num_results=int(pick("num_results", 10)),
        label_mode=LabelMode(pick("label_mode", LabelMode.BINARY.value)),
        field_order=FieldOrder(pick("field_order", FieldOrder.STANDARD.value)),
        k_overrides=k_overrides,
        mock_llm=pick_path("mock_llm"),
        mock_search=pick_path("mock_search"),
        llm_base_url=str(pick("llm_base_url", DEFAULT_LLM_BASE_URL)),
        llm_api_key=str(pick("llm_api_key", "")),
        extractor_model=str(pick("extractor_model", DEFAULT_MODEL)),
        verifier_base_url=str(pick("verifier_base_url", "")),
        verifier_api_key=str(pick("verifier_api_key", "")),
        verifier_model=str(pick("verifier_model", "")),
        search_base_url=str(pick("search_base_url", DEFAULT_SEARCH_BASE_URL)),
        search_api_key=str(pick("search_api_key", "")),
        llm_rps=float(pick("llm_rps", 0.0)),
        search_rps=float(pick("search_rps", 0.0)),
        force=bool(cli.get("force") or False),
        dry_run=bool(cli.get("dry_run") or False),
    )


def _limiter(rps: float) -> RateLimiter | None:
    return RateLimiter(1.0 / rps) if rps > 0 else None


class Pipeline:
    """Runs stages over one run directory, constructing backends lazily."""

    STAGE_OUTPUTS = {
        "ingest": ("prompts.jsonl", "responses.jsonl", "manifest.json"),
        "extract": ("claims.jsonl",),
        "retrieve": ("evidence.jsonl",),
        "verify": ("verdicts.jsonl",),
        "score": ("scores.jsonl", "summary.csv"),
        "analyze": ("leaderboard.csv", "leaderboard.txt"),
    }

    def __init__(self, config: PipelineConfig, emit: Callable[[str], None] = print) -> None:
        self.config = config
        self.emit = emit
        self._extractor: ChatBackend | None = None
        self._verifier: ChatBackend | None = None
        self._search: SearchClient | None = None
        # Backends may be first touched from worker threads; construct under
        # a lock so call counters never fragment across duplicate instances.
        self._backend_lock = threading.Lock()
        self._clock = config.clock()

    # Backend plumbing ----------------------------------------------------

    @property
    def extractor_backend(self) -> ChatBackend:
        with self._backend_lock:
            if self._extractor is None:
                cfg = self.config
                if cfg.mock_llm is not None:
                    self._extractor = MockChatBackend(cfg.mock_llm, name="mock-extractor")
                else:
                    self._extractor = HttpChatBackend(
                        base_url=cfg.llm_base_url,
                        api_key=cfg.llm_api_key,
                        model=cfg.extractor_model,
                        rate_limiter=_limiter(cfg.llm_rps),
                    )
            return self._extractor

    @property
    def verifier_backend(self) -> ChatBackend:
        with self._backend_lock:
            if self._verifier is None:
                cfg = self.config
                if cfg.mock_llm is not None:
                    self._verifier = MockChatBackend(cfg.mock_llm, name="mock-verifier")
                else:
                    self._verifier = HttpChatBackend(
                        base_url=cfg.verifier_base_url or cfg.llm_base_url,
                        api_key=cfg.verifier_api_key or cfg.llm_api_key,
                        model=cfg.verifier_model or cfg.extractor_model,
                        rate_limiter=_limiter(cfg.llm_rps),
                    )
            return self._verifier

    @property
    def search_client(self) -> SearchClient:
        with self._backend_lock:
            if self._search is None:
                cfg = self.config
                if cfg.mock_search is not None:
                    self._search = MockSearchClient(cfg.mock_search)
                else:
                    self._search = HttpSearchClient(
                        base_url=cfg.search_base_url,
                        api_key=cfg.search_api_key,
                        rate_limiter=_limiter(cfg.search_rps),
                    )
            return self._search

    def call_counts(self) -> tuple[int, int, int]:
        def calls(backend: Any) -> int:
            return getattr(backend, "calls", 0) if backend is not None else 0

        return calls(self._extractor), calls(self._verifier), calls(self._search)

    # Paths and state -----------------------------------------------------

    def path(self, name: str) -> Path:
        return self.config.run_dir / name

    def stage_done(self, stage: str) -> bool:
        return all(self.path(name).exists() for name in self.STAGE_OUTPUTS[stage])

    def _require(self, filename: str, hint: str) -> Path:
        p = self.path(filename)
        if not p.exists():
            raise StageError(f"missing prerequisite file {p} ({hint})")
        return p

    def validate_live_credentials(self, stages: list[str]) -> None:
        cfg = self.config
        if cfg.mock_llm is None and not cfg.llm_api_key and not {"extract", "verify"}.isdisjoint(stages):
            raise ConfigError("LLM_API_KEY is required in live mode (or pass --mock-llm)")
        if cfg.mock_search is None and not cfg.search_api_key and "retrieve" in stages:
            raise ConfigError("SEARCH_API_KEY is required in live mode (or pass --mock-search)")

    # Entry points ---------------------------------------------------------

    def run(self, stages: list[str] | None = None) -> RunResult:
        stages = list(STAGE_ORDER) if stages is None else stages
        unknown = [s for s in stages if s not in STAGE_ORDER]
        if unknown:
            raise ConfigError(f"unknown stages: {unknown}")
        if self.config.dry_run:
            return self.plan(stages)
        self.validate_live_credentials(stages)
        self.config.run_dir.mkdir(parents=True, exist_ok=True)
        result = RunResult(run_dir=self.config.run_dir)
        for stage in STAGE_ORDER:
            if stage not in stages:
                continue
            if self.stage_done(stage) and not self.config.force:
                outputs = ", ".join(self.STAGE_OUTPUTS[stage])
                self.emit(f"{stage}: skipped ({outputs} up to date; use --force to recompute)")
                result.stages_skipped.append(stage)
                continue
            getattr(self, f"_{stage}")()
            result.stages_run.append(stage)
        result.extractor_calls, result.verifier_calls, result.search_calls = self.call_counts()
        self.emit(
            "backend calls: extractor=%d verifier=%d search=%d"
            % (result.extractor_calls, result.verifier_calls, result.search_calls)
        )
        return result

    def plan(self, stages: list[str]) -> RunResult:
        """Report planned backend call counts without touching any backend."""
        result = RunResult(run_dir=self.config.run_dir)
        plan: dict[str, Any] = {}
        if "extract" in stages:
            if self.stage_done("extract") and not self.config.force:
                plan["extract"] = 0
            else:
                windows = self._count_windows()
                plan["extract"] = windows if windows is not None else "unknown (needs ingested inputs)"
        if "retrieve" in stages:
            if self.stage_done("retrieve") and not self.config.force:
                plan["retrieve"] = 0
            elif self.path("claims.jsonl").exists():
                claims = self._load_claims()
                retriever = EvidenceRetriever(
                    _NullSearchClient(), self.path("search_cache"), self.config.num_results
                )
                pending = {c.text for c in claims if not retriever.is_cached(c.text)}
                plan["retrieve"] = len(pending)
            else:
                plan["retrieve"] = "unknown (run extract first)"
        if "verify" in stages:
            if self.stage_done("verify") and not self.config.force:
                plan["verify"] = 0
            elif self.path("claims.jsonl").exists():
                plan["verify"] = len(self._load_claims())
            else:
                plan["verify"] = "unknown (run extract first)"
        self.emit("dry run: no backend or network calls will be made")
        for stage, count in plan.items():
            noun = {"extract": "chat", "retrieve": "search", "verify": "chat"}[stage]
            self.emit(f"  {stage}: {count} {noun} call(s)")
        result.plan = plan
        return result

    def _count_windows(self) -> int | None:
        try:
            prompts, responses = self._load_inputs_for_plan()
        except (StageError, IngestError, FileNotFoundError):
            return None
        by_id = {p.id: p for p in prompts}
        return sum(len(build_windows(r, by_id[r.prompt_id])) for r in responses)

    def _load_inputs_for_plan(self) -> tuple[list[Prompt], list[Response]]:
        if self.path("prompts.jsonl").exists() and self.path("responses.jsonl").exists():
            return self._load_prompts(), self._load_responses()
        cfg = self.config
        if cfg.prompts_path is None or cfg.responses_path is None:
            raise StageError("no ingested inputs and no --prompts/--responses given")
        prompts = corpus.ingest_prompts(cfg.prompts_path, cfg.kind)
        responses = _ingest_responses(cfg.responses_path, {p.id for p in prompts})
        return prompts, responses

    # Stage implementations -------------------------------------------------

    def _ingest(self) -> None:
        cfg = self.config
        if cfg.prompts_path is None or cfg.responses_path is None:
            raise StageError(
                "ingest needs --prompts and --responses"
                f" (run directory {cfg.run_dir} has no ingested inputs)"
            )
        prompts = corpus.ingest_prompts(cfg.prompts_path, cfg.kind)
        responses = _ingest_responses(cfg.responses_path, {p.id for p in prompts})
        corpus.write_jsonl(self.path("prompts.jsonl"), [p.to_record() for p in prompts])
        corpus.write_jsonl(self.path("responses.jsonl"), [r.to_record() for r in responses])
        prompt_by_id = {p.id: p for p in prompts}
        manifest = RunManifest(
            run_id=cfg.run_dir.name,
            models=sorted({r.model_id for r in responses}),
            domains=sorted({prompt_by_id[r.prompt_id].domain for r in responses}),
            settings={
                "kind": cfg.kind.value,
                "label_mode": cfg.label_mode.value,
                "field_order": cfg.field_order.value,
                "num_results": cfg.num_results,
                "concurrency": cfg.concurrency,
                "k_overrides": {d: str(k) for d, k in sorted(cfg.k_overrides.items())},
            },
            created_at=self._clock(),
        )
        corpus.atomic_write_text(
            self.path("manifest.json"),
            corpus.dumps_record(manifest.to_record()) + "\n",
        )
        self.emit(f"ingest: {len(prompts)} prompts, {len(responses)} responses")

    def _load_prompts(self) -> list[Prompt]:
        path = self._require("prompts.jsonl", "run ingest first")
        return [Prompt.from_record(r) for r in corpus.read_jsonl(path)]

    def _load_responses(self) -> list[Response]:
        path = self._require("responses.jsonl", "run ingest first")
        return [Response.from_record(r) for r in corpus.read_jsonl(path)]

    def _load_claims(self) -> list[Claim]:
        path = self._require("claims.jsonl", "run extract first")
        return [Claim.from_record(r) for r in corpus.read_jsonl(path)]

    def _extract(self) -> None:
        prompts = {p.id: p for p in self._load_prompts()}
        responses = self._load_responses()
        claims: list[Claim] = []
        windows = 0
        for response in responses:
            prompt = prompts.get(response.prompt_id)
            if prompt is None:
                raise StageError(
                    f"response {response.response_id} references unknown prompt {response.prompt_id!r}"
                )
            windows += len(build_windows(response, prompt))
            claims.extend(
                extract_claims(response, prompt, self.extractor_backend, width=self.config.concurrency)
            )
        corpus.persist_stage(self.config.run_dir, "claims", [c.to_record() for c in claims])
        self.emit(f"extract: {len(claims)} claims from {windows} windows")

    def _retrieve(self) -> None:
        claims = self._load_claims()
        retriever = EvidenceRetriever(
            self.search_client,
            self.path("search_cache"),
            num_results=self.config.num_results,
            clock=self._clock,
        )
        pending: list[str] = []
        seen: set[str] = set()
        for claim in claims:
            if claim.text not in seen:
                seen.add(claim.text)
                if not retriever.is_cached(claim.text):
                    pending.append(claim.text)
        run_parallel(retriever.fetch, pending, self.config.concurrency)
        fresh = set(pending)
        evidences: list[EvidenceList] = []
        hits = 0
        for claim in claims:
            evidence = retriever.retrieve(claim)
            if claim.text in fresh:
                # This claim triggered the network fetch moments ago.
                evidence.cache_hit = False
                fresh.discard(claim.text)
            hits += evidence.cache_hit
            evidences.append(evidence)
        corpus.persist_stage(self.config.run_dir, "evidence", [e.to_record() for e in evidences])
        self.emit(
            f"retrieve: {len(evidences)} evidence lists"
            f" ({len(pending)} searches, {hits} cache hits)"
        )

    def _verify(self) -> None:
        claims = self._load_claims()
        evidence_path = self._require("evidence.jsonl", "run retrieve first")
        evidence_by_claim = {
            rec["claim_id"]: EvidenceList.from_record(rec)
            for rec in corpus.read_jsonl(evidence_path)
        }
        known = {c.id for c in claims}
        for claim_id in evidence_by_claim:
            if claim_id not in known:
                raise StageError(f"evidence references unknown claim {claim_id!r}")
        missing = [c.id for c in claims if c.id not in evidence_by_claim]
        if missing:
            raise StageError(f"no evidence for claims: {missing[:5]} (run retrieve)")
        cfg = self.config
        backend = self.verifier_backend

        def verify_one(claim: Claim) -> VerificationRecord:
            return verify_claim(
                claim,
                evidence_by_claim[claim.id],
                backend,
                label_mode=cfg.label_mode,
                field_order=cfg.field_order,
            )

        records = run_parallel(verify_one, claims, cfg.concurrency)
        corpus.persist_stage(self.config.run_dir, "verdicts", [r.to_record() for r in records])
        failures = sum(r.parse_failed for r in records)
        plural = "s" if failures != 1 else ""
        note = f" ({failures} parse failure{plural})" if failures else ""
        self.emit(f"verify: {len(records)} verdicts{note}")

    def _score(self) -> None:
        prompts = {p.id: p for p in self._load_prompts()}
        responses = self._load_responses()
        claims = self._load_claims()
        verdicts_path = self._require("verdicts.jsonl", "run verify first")
        verdicts = {
            rec["claim_id"]: VerificationRecord.from_record(rec)
            for rec in corpus.read_jsonl(verdicts_path)
        }
        claims_by_response: dict[str, list[Claim]] = {}
        for claim in claims:
            claims_by_response.setdefault(claim.response_id, []).append(claim)

        stats: list[tuple[str, str, ResponseStats]] = []
        for response in responses:
            rid = response.response_id
            domain = prompts[response.prompt_id].domain
            own_claims = claims_by_response.get(rid, [])
            supported = 0
            for claim in own_claims:
                verdict = verdicts.get(claim.id)
                if verdict is None:
                    raise ScoringError(f"missing verdict for claim {claim.id!r}")
                supported += verdict.binary is BinaryLabel.SUPPORTED
            stats.append(
                (
                    domain,
                    response.model_id,
                    ResponseStats(
                        response_id=rid,
                        claim_count=len(own_claims),
                        supported_count=supported,
                        sentence_count=len(response.sentences),
                    ),
                )
            )

        domains = sorted({d for d, _, _ in stats})
        score_records: list[dict[str, Any]] = []
        scorecards = []
        for domain in domains:
            domain_stats = [(m, s) for d, m, s in stats if d == domain]
            pooled_k = compute_k(
                [s.claim_count for _, s in domain_stats],
                self.config.k_overrides.get(domain),
            )
            for model in sorted({m for m, _ in domain_stats}):
                card = score_domain(
                    domain,
                    [s for m, s in domain_stats if m == model],
                    k_override=pooled_k,
                    model_id=model,
                )
                scorecards.append(card)
        by_response = {
            score.response_id: (card, score)
            for card in scorecards
            for score in card.response_scores
        }
        for response in responses:
            card, score = by_response[response.response_id]
            rec = score.to_record()
            rec["model_id"] = card.model_id
            rec["domain"] = card.domain
            rec["sentence_count"] = len(response.sentences)
            score_records.append(rec)
        corpus.persist_stage(self.config.run_dir, "scores", score_records)
        write_domain_summary(scorecards, self.path("summary.csv"))
        self.emit(f"score: {len(scorecards)} scorecards over {len(domains)} domains")

    def _analyze(self) -> None:
        summary_path = self._require("summary.csv", "run score first")
        rows = read_domain_summary(summary_path)
        matrix = ModelDomainMatrix.from_records(
            [{"model": r["model"], "domain": r["domain"], "score": r["F"]} for r in rows]
        )
        write_leaderboard_csv(matrix, self.path("leaderboard.csv"))
        corpus.atomic_write_text(self.path("leaderboard.txt"), render_leaderboard(matrix))
        outputs = ["leaderboard.csv", "leaderboard.txt"]
        if len(matrix.models) >= 2 and len(matrix.domains) >= 2:
            try:
                write_correlation_csv(matrix, self.path("correlations.csv"))
                outputs.append("correlations.csv")
            except ValueError as exc:
                logger.warning("skipping correlation matrix: %s", exc)
        self.emit(f"analyze: wrote {', '.join(outputs)}")


class _NullSearchClient(SearchClient):
    """Refuses to search; used for dry-run cache inspection."""

    def search(self, query: str, num: int) -> list[dict[str, str]]:
        raise AssertionError("dry run must not search")


def _ingest_responses(path: Path, known_prompts: set[str]) -> list[Response]:
    """Read {prompt_id, model_id, text} records and segment each response."""
    responses = []
    seen: set[tuple[str, str]] = set()
    for lineno, rec in enumerate(corpus.read_jsonl(path), start=1):
        for key in ("prompt_id", "model_id", "text"):
            if not isinstance(rec.get(key), str):
                raise IngestError(f"{path}: record {lineno}: missing or invalid field {key!r}")
        if rec["prompt_id"] not in known_prompts:
            raise IngestError(
                f"{path}: record {lineno}: unknown prompt id {rec['prompt_id']!r}"
            )
        pair = (rec["prompt_id"], rec["model_id"])
        if pair in seen:
            raise IngestError(
                f"{path}: record {lineno}: duplicate response for prompt {pair[0]!r}"
                f" and model {pair[1]!r}"
            )
        seen.add(pair)
        responses.append(make_response(rec["prompt_id"], rec["model_id"], rec["text"]))
    return responses


def analyze_score_files(
    score_csvs: list[Path | str], run_dir: Path | str, emit: Callable[[str], None] = print
) -> list[Path]:
    """Merge per-run summary CSVs into one cross-model leaderboard."""
    records = []
    seen: set[tuple[str, str]] = set()
    for csv_path in score_csvs:
        for row in read_domain_summary(csv_path):
            key = (row["model"], row["domain"])
            if key in seen:
                raise ValueError(
                    f"{csv_path}: duplicate scores for model {key[0]!r} in domain {key[1]!r}"
                )
            seen.add(key)
            records.append({"model": row["model"], "domain": row["domain"], "score": row["F"]})
    matrix = ModelDomainMatrix.from_records(records)
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    outputs = [
        write_leaderboard_csv(matrix, run_dir / "leaderboard.csv"),
    ]
    leaderboard_txt = run_dir / "leaderboard.txt"
    corpus.atomic_write_text(leaderboard_txt, render_leaderboard(matrix))
    outputs.append(leaderboard_txt)
    if len(matrix.models) >= 2 and len(matrix.domains) >= 2:
        try:
            outputs.append(write_correlation_csv(matrix, run_dir / "correlations.csv"))
        except ValueError as exc:
            logger.warning("skipping correlation matrix: %s", exc)
    emit(f"analyze: wrote {', '.join(p.name for p in outputs)}")
    return outputs


def run_pipeline(config: PipelineConfig, emit: Callable[[str], None] = print) -> RunResult:
    """Run every stage of the pipeline (resuming where outputs exist)."""
    return Pipeline(config, emit=emit).run()
