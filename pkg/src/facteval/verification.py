"""Claim verification: prompted judgments and the label algebra.

Two verification routes share one label vocabulary. The prompted route
sends the claim plus its rendered evidence to a chat backend and parses
the ###-marked decision. The reference route classifies directly from a
matrix of per-part, per-evidence judgments:

  Supported     every part has supporting evidence and none contradicting
  Contradicted  some part has contradicting evidence and no support
  Inconclusive  some part is unverified (a) or some part is both
                supported and contradicted by different evidence (b)

When several non-supported conditions hold at once, precedence is
Contradicted, then inconclusive(b), then inconclusive(a). Both ternary
outcomes collapse to a binary Supported/Unsupported for scoring.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Any

from .backends import BackendError, ChatBackend
from .corpus import Claim
from .retrieval import EvidenceList, render_evidence

logger = logging.getLogger(__name__)

_CLAIM_SLOT = "{claim to be verified}"
_EVIDENCE_SLOT = "{search results}"

_DECISION_RE = re.compile(r"###(.*?)###", re.DOTALL)
_DECISION_TRIM = " \t\r\n.,!?;:\"'"


class LabelMode(str, Enum):
    BINARY = "binary"
    TERNARY = "ternary"


class FieldOrder(str, Enum):
    STANDARD = "standard"
    CLAUDE = "claude"


class BinaryLabel(str, Enum):
    SUPPORTED = "Supported"
    UNSUPPORTED = "Unsupported"


class TernaryLabel(str, Enum):
    SUPPORTED = "Supported"
    CONTRADICTED = "Contradicted"
    INCONCLUSIVE = "Inconclusive"


class AlgebraLabel(str, Enum):
    SUPPORTED = "Supported"
    CONTRADICTED = "Contradicted"
    INCONCLUSIVE_A = "InconclusiveA"
    INCONCLUSIVE_B = "InconclusiveB"


class Judgment(str, Enum):
    """How one piece of evidence bears on one claim part."""

    SUPPORTS = "supports"
    CONTRADICTS = "contradicts"
    NEITHER = "neither"


@dataclass
class PartJudgmentMatrix:
    """Judgments indexed [part][evidence]; evidence may be empty."""

    parts: list[str]
    judgments: list[list[Judgment]]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a claim must have at least one part")
        if len(self.judgments) != len(self.parts):
            raise ValueError("one judgment row required per part")
        widths = {len(row) for row in self.judgments}
        if len(widths) > 1:
            raise ValueError("judgment rows must all cover the same evidence")


def classify_by_algebra(matrix: PartJudgmentMatrix) -> AlgebraLabel:
    """Classify a claim from per-part evidence judgments.

    With no evidence at all, every part is unverified, so the result is
    inconclusive(a).
    """
    supported = [any(j is Judgment.SUPPORTS for j in row) for row in matrix.judgments]
    contradicted = [any(j is Judgment.CONTRADICTS for j in row) for row in matrix.judgments]
    if all(s and not c for s, c in zip(supported, contradicted)):
        return AlgebraLabel.SUPPORTED
    if any(c and not s for s, c in zip(supported, contradicted)):
        return AlgebraLabel.CONTRADICTED
    if any(s and c for s, c in zip(supported, contradicted)):
        return AlgebraLabel.INCONCLUSIVE_B
    return AlgebraLabel.INCONCLUSIVE_A


def to_ternary(label: AlgebraLabel) -> TernaryLabel:
    if label is AlgebraLabel.SUPPORTED:
        return TernaryLabel.SUPPORTED
    if label is AlgebraLabel.CONTRADICTED:
        return TernaryLabel.CONTRADICTED
    return TernaryLabel.INCONCLUSIVE


def collapse(label: AlgebraLabel | TernaryLabel) -> BinaryLabel:
    """Collapse any richer label to the binary scoring vocabulary."""
    if label in (AlgebraLabel.SUPPORTED, TernaryLabel.SUPPORTED):
        return BinaryLabel.SUPPORTED
    return BinaryLabel.UNSUPPORTED


_template_cache: dict[str, str] = {}


def _load_template(label_mode: LabelMode, field_order: FieldOrder) -> str:
    filename = f"verification_{label_mode.value}_{field_order.value}.txt"
    if filename not in _template_cache:
        text = resources.files(__package__).joinpath("templates", filename).read_text(encoding="utf-8")
        _template_cache[filename] = text[:-1] if text.endswith("\n") else text
    return _template_cache[filename]


def assemble_verification_prompt(
    claim_text: str,
    evidence_render: str,
    label_mode: LabelMode | str = LabelMode.BINARY,
    field_order: FieldOrder | str = FieldOrder.STANDARD,
) -> str:
    """Fill the verification template for the given label set and layout.

    The standard layout is task description, label definitions, worked
    example, then the claim, its search results, and the decision slot.
    The claude layout puts the search results first, then the claim and a
    short task line. Both end exactly with "Your decision:".
    """
    template = _load_template(LabelMode(label_mode), FieldOrder(field_order))
    return template.replace(_CLAIM_SLOT, claim_text).replace(_EVIDENCE_SLOT, evidence_render)


def parse_decision(
    raw_output: str, label_mode: LabelMode | str = LabelMode.BINARY
) -> BinaryLabel | TernaryLabel | None:
    """Extract the last ###-marked decision, or None if unparseable.

    The marked span is trimmed of whitespace and punctuation and matched
    case-insensitively against the mode's label names.
    """
    spans = _DECISION_RE.findall(raw_output)
    if not spans:
        return None
    token = spans[-1].strip(_DECISION_TRIM).lower()
    labels = BinaryLabel if LabelMode(label_mode) is LabelMode.BINARY else TernaryLabel
    for label in labels:
        if token == label.value.lower():
            return label
    return None


@dataclass
class VerificationRecord:
    """Outcome of verifying one claim."""

    claim_id: str
    binary: BinaryLabel
    ternary: TernaryLabel | None
    verifier_id: str
    raw_output: str
    parse_failed: bool

    def to_record(self) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "binary": self.binary.value,
            "ternary": self.ternary.value if self.ternary is not None else None,
            "verifier_id": self.verifier_id,
            "raw_output": self.raw_output,
            "parse_failed": self.parse_failed,
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "VerificationRecord":
        return cls(
            claim_id=rec["claim_id"],
            binary=BinaryLabel(rec["binary"]),
            ternary=TernaryLabel(rec["ternary"]) if rec.get("ternary") else None,
            verifier_id=rec["verifier_id"],
            raw_output=rec["raw_output"],
            parse_failed=rec["parse_failed"],
        )


def verify_claim(
    claim: Claim,
    evidence: EvidenceList,
    backend: ChatBackend,
    label_mode: LabelMode | str = LabelMode.BINARY,
    field_order: FieldOrder | str = FieldOrder.STANDARD,
) -> VerificationRecord:
    """Verify one claim against its evidence with a prompted backend.

    Unparseable verifier output is conservatively recorded as Unsupported
    with parse_failed set.
    """
    label_mode = LabelMode(label_mode)
    prompt_text = assemble_verification_prompt(
        claim.text, render_evidence(evidence), label_mode, field_order
    )
    try:
        raw = backend.complete(prompt_text)
    except BackendError as exc:
        raise BackendError(f"verification failed for claim {claim.id}: {exc}") from exc
    decision = parse_decision(raw, label_mode)
    if decision is None:
        logger.warning("unparseable verifier output for claim %s", claim.id)
        return VerificationRecord(
            claim_id=claim.id,
            binary=BinaryLabel.UNSUPPORTED,
            ternary=None,
            verifier_id=backend.name,
            raw_output=raw,
            parse_failed=True,
        )
    if label_mode is LabelMode.TERNARY:
        assert isinstance(decision, TernaryLabel)
        return VerificationRecord(
            claim_id=claim.id,
            binary=collapse(decision),
            ternary=decision,
            verifier_id=backend.name,
            raw_output=raw,
            parse_failed=False,
        )
    assert isinstance(decision, BinaryLabel)
    return VerificationRecord(
        claim_id=claim.id,
        binary=decision,
        ternary=None,
        verifier_id=backend.name,
        raw_output=raw,
        parse_failed=False,
    )
