"""Claim-level factuality evaluation for long-form model output.

The pipeline slides a window over each response sentence, extracts
verifiable atomic claims with a few-shot prompted model, retrieves web
search evidence using each claim verbatim as the query, judges every
claim against its evidence, and aggregates response-level F1@K into
domain scores, leaderboards, and rank correlations. Transcript-backed
mock backends make whole runs reproducible offline.
"""

from .analysis import (
    ModelDomainMatrix,
    correlation_matrix,
    kendall_tau,
    leaderboard_records,
    render_leaderboard,
)
from .backends import (
    BackendError,
    ChatBackend,
    HttpChatBackend,
    MockChatBackend,
    RateLimiter,
    run_parallel,
)
from .corpus import (
    Claim,
    IngestError,
    Prompt,
    PromptKind,
    Response,
    RunManifest,
    ingest_prompts,
    load_stage,
    persist_stage,
)
from .extraction import (
    NO_CLAIM_SENTINEL,
    ExtractionResult,
    assemble_extraction_prompt,
    extract_claims,
    parse_claim_lines,
)
from .pipeline import (
    ConfigError,
    Pipeline,
    PipelineConfig,
    RunResult,
    StageError,
    resolve_config,
    run_pipeline,
)
from .retrieval import (
    EvidenceList,
    EvidenceRetriever,
    HttpSearchClient,
    MockSearchClient,
    SearchError,
    SearchResult,
    render_evidence,
    retrieve,
)
from .scoring import (
    DomainScorecard,
    ResponseScore,
    ResponseStats,
    ScoringError,
    compute_k,
    f1_at_k,
    score_domain,
    score_response,
)
from .segmenter import SentenceWindow, build_windows, make_response, render_window, segment
from .verification import (
    AlgebraLabel,
    BinaryLabel,
    FieldOrder,
    Judgment,
    LabelMode,
    PartJudgmentMatrix,
    TernaryLabel,
    VerificationRecord,
    assemble_verification_prompt,
    classify_by_algebra,
    collapse,
    parse_decision,
    verify_claim,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraLabel",
    "BackendError",
    "BinaryLabel",
    "ChatBackend",
    "Claim",
    "ConfigError",
    "DomainScorecard",
    "EvidenceList",
    "EvidenceRetriever",
    "ExtractionResult",
    "FieldOrder",
    "HttpChatBackend",
    "HttpSearchClient",
    "IngestError",
    "Judgment",
    "LabelMode",
    "MockChatBackend",
    "MockSearchClient",
    "ModelDomainMatrix",
    "NO_CLAIM_SENTINEL",
    "PartJudgmentMatrix",
    "Pipeline",
    "PipelineConfig",
    "Prompt",
    "PromptKind",
    "RateLimiter",
    "Response",
    "ResponseScore",
    "ResponseStats",
    "RunManifest",
    "RunResult",
    "ScoringError",
    "SearchError",
    "SearchResult",
    "SentenceWindow",
    "StageError",
    "TernaryLabel",
    "VerificationRecord",
    "assemble_extraction_prompt",
    "assemble_verification_prompt",
    "build_windows",
    "classify_by_algebra",
    "collapse",
    "compute_k",
    "correlation_matrix",
    "extract_claims",
    "f1_at_k",
    "ingest_prompts",
    "kendall_tau",
    "leaderboard_records",
    "load_stage",
    "make_response",
    "parse_claim_lines",
    "parse_decision",
    "persist_stage",
    "render_evidence",
    "render_leaderboard",
    "render_window",
    "resolve_config",
    "retrieve",
    "run_parallel",
    "run_pipeline",
    "score_domain",
    "score_response",
    "segment",
    "verify_claim",
]
