"""Record types and line-delimited persistence for evaluation runs.

A run directory holds one JSON record per line for each pipeline stage
(claims, evidence, verdicts, scores) plus the normalized inputs and a
manifest. All writes go through an atomic replace so a crashed run never
leaves a half-written stage file behind.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Sequence

STAGES = ("claims", "evidence", "verdicts", "scores")

_WRITE_LOCK = threading.Lock()


class IngestError(ValueError):
    """An input file could not be parsed into records."""


class PromptKind(str, Enum):
    QA = "qa"
    NONQA = "nonqa"


@dataclass(frozen=True)
class Prompt:
    """One evaluation prompt. For QA prompts, ``text`` is the question."""

    id: str
    domain: str
    kind: PromptKind
    text: str

    def to_record(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "domain": self.domain,
            "kind": self.kind.value,
            "text": self.text,
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "Prompt":
        return cls(
            id=rec["id"],
            domain=rec["domain"],
            kind=PromptKind(rec["kind"]),
            text=rec["text"],
        )


@dataclass
class Response:
    """One model response, segmented into sentences and paragraphs.

    ``sentences`` holds character-offset (start, end) spans into ``text``,
    ordered and non-overlapping, covering all non-whitespace prose.
    ``paragraphs`` holds half-open (start, stop) ranges of sentence indices
    that partition the sentence list.
    """

    prompt_id: str
    model_id: str
    text: str
    sentences: list[tuple[int, int]] = field(default_factory=list)
    paragraphs: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.sentences = [tuple(s) for s in self.sentences]
        self.paragraphs = [tuple(p) for p in self.paragraphs]
        self._check_spans()

    @property
    def response_id(self) -> str:
        return f"{self.prompt_id}--{self.model_id}"

    def sentence_text(self, index: int) -> str:
        start, end = self.sentences[index]
        return self.text[start:end]

    def _check_spans(self) -> None:
        prev_end = 0
        for start, end in self.sentences:
            if not (0 <= start < end <= len(self.text)):
                raise ValueError(f"sentence span ({start}, {end}) out of bounds")
            if start < prev_end:
                raise ValueError(f"sentence span ({start}, {end}) overlaps its predecessor")
            prev_end = end
        cursor = 0
        for start, stop in self.paragraphs:
            if start != cursor or stop <= start:
                raise ValueError("paragraph ranges must be non-empty and partition the sentences")
            cursor = stop
        if cursor != len(self.sentences):
            raise ValueError("paragraph ranges must cover every sentence")

    def to_record(self) -> dict[str, Any]:
        return {
            "prompt_id": self.prompt_id,
            "model_id": self.model_id,
            "text": self.text,
            "sentences": [list(s) for s in self.sentences],
            "paragraphs": [list(p) for p in self.paragraphs],
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "Response":
        return cls(
            prompt_id=rec["prompt_id"],
            model_id=rec["model_id"],
            text=rec["text"],
            sentences=[tuple(s) for s in rec["sentences"]],
            paragraphs=[tuple(p) for p in rec["paragraphs"]],
        )


@dataclass(frozen=True)
class Claim:
    """One verifiable claim extracted from a response sentence."""

    id: str
    response_id: str
    sentence_index: int
    text: str

    def __post_init__(self) -> None:
        if not self.text or self.text != self.text.strip():
            raise ValueError(f"claim {self.id!r} text must be non-empty and trimmed")
        if self.sentence_index < 0:
            raise ValueError(f"claim {self.id!r} has negative sentence index")

    def to_record(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "response_id": self.response_id,
            "sentence_index": self.sentence_index,
            "text": self.text,
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "Claim":
        return cls(
            id=rec["id"],
            response_id=rec["response_id"],
            sentence_index=rec["sentence_index"],
            text=rec["text"],
        )


@dataclass
class RunManifest:
    """Identity and settings of one evaluation run."""

    run_id: str
    models: list[str]
    domains: list[str]
    settings: dict[str, Any] = field(default_factory=dict)
    created_at: str = ""

    def to_record(self) -> dict[str, Any]:
        return {
            "run_id": self.run_id,
            "models": list(self.models),
            "domains": list(self.domains),
            "settings": dict(self.settings),
            "created_at": self.created_at,
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "RunManifest":
        return cls(
            run_id=rec["run_id"],
            models=list(rec["models"]),
            domains=list(rec["domains"]),
            settings=dict(rec.get("settings", {})),
            created_at=rec.get("created_at", ""),
        )


def dumps_record(record: dict[str, Any]) -> str:
    """Serialize one record canonically (sorted keys, raw unicode)."""
    return json.dumps(record, ensure_ascii=False, sort_keys=True)


def atomic_write_text(path: Path, content: str) -> None:
    """Write ``content`` to ``path`` via a temp file and atomic replace."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with _WRITE_LOCK:
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(content)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def write_jsonl(path: Path, records: Iterable[dict[str, Any]]) -> Path:
    """Atomically write records as one JSON object per line."""
    path = Path(path)
    lines = [dumps_record(rec) for rec in records]
    atomic_write_text(path, "".join(line + "\n" for line in lines))
    return path


def read_jsonl(path: Path) -> list[dict[str, Any]]:
    """Read a JSONL file, raising IngestError with the offending line number."""
    path = Path(path)
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"{path}: line {lineno}: invalid JSON: {exc.msg}") from exc
            if not isinstance(rec, dict):
                raise IngestError(f"{path}: line {lineno}: expected a JSON object")
            records.append(rec)
    return records


def stage_path(run_dir: Path, stage: str) -> Path:
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}, expected one of {STAGES}")
    return Path(run_dir) / f"{stage}.jsonl"


def persist_stage(run_dir: Path, stage: str, records: Sequence[dict[str, Any]]) -> Path:
    """Write one stage's records under the run directory.

    Re-running with identical records is idempotent: the file is replaced
    atomically with identical bytes.
    """
    path = stage_path(run_dir, stage)
    return write_jsonl(path, records)


def load_stage(run_dir: Path, stage: str) -> list[dict[str, Any]]:
    path = stage_path(run_dir, stage)
    if not path.exists():
        raise FileNotFoundError(f"stage file not found: {path}")
    return read_jsonl(path)


def ingest_prompts(path: Path, kind: PromptKind | str = PromptKind.NONQA) -> list[Prompt]:
    """Read prompts from a JSONL file of {id, domain, text[, kind]} objects.

    ``kind`` is the default applied to records that do not carry their own.
    Malformed lines and duplicate ids raise IngestError naming the line.
    """
    default_kind = PromptKind(kind)
    path = Path(path)
    prompts: list[Prompt] = []
    seen: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"{path}: line {lineno}: invalid JSON: {exc.msg}") from exc
            if not isinstance(rec, dict):
                raise IngestError(f"{path}: line {lineno}: expected a JSON object")
            for key in ("id", "domain", "text"):
                if not isinstance(rec.get(key), str) or not rec[key]:
                    raise IngestError(f"{path}: line {lineno}: missing or empty field {key!r}")
            pid = rec["id"]
            if pid in seen:
                raise IngestError(
                    f"{path}: line {lineno}: duplicate prompt id {pid!r}"
                    f" (first seen at line {seen[pid]})"
                )
            seen[pid] = lineno
            try:
                rec_kind = PromptKind(rec["kind"]) if "kind" in rec else default_kind
            except ValueError as exc:
                raise IngestError(f"{path}: line {lineno}: invalid kind {rec['kind']!r}") from exc
            prompts.append(Prompt(id=pid, domain=rec["domain"], kind=rec_kind, text=rec["text"]))
    return prompts


def check_references(referrers: Iterable[tuple[str, str]], known: set[str], what: str) -> None:
    """Reject dangling references. ``referrers`` yields (referrer id, target id)."""
    for rid, target in referrers:
        if target not in known:
            raise IngestError(f"{what} {rid!r} references unknown id {target!r}")
