"""Response- and domain-level factuality scores.

For one response with |C| extracted claims, S of them supported, and a
domain-level claim budget K:

  precision = S / |C|          (0 when no claims were extracted)
  recall    = min(S / K, 1)
  f1_at_k   = harmonic mean of the two, 0 when S = 0

K defaults to the median claim count over all of the domain's responses
(mean of the middle pair for even counts, kept as an exact fraction).
The domain score is the mean f1_at_k over responses; the verifiable-claim
ratio is the mean of claims-per-sentence over responses.

All arithmetic is exact (Fraction) until values leave through records.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .corpus import atomic_write_text

SUMMARY_COLUMNS = ("domain", "K", "L", "P", "R", "F", "VerRatio", "N", "model")


class ScoringError(ValueError):
    """Inconsistent or insufficient inputs for scoring."""


def compute_k(claim_counts: Sequence[int], override: int | float | Fraction | None = None) -> Fraction:
    """Median claim count for a domain, or the positive override if given."""
    if override is not None:
        k = Fraction(override)
        if k <= 0:
            raise ScoringError(f"K override must be positive, got {override}")
        return k
    if not claim_counts:
        raise ScoringError("cannot compute K for a domain with no responses")
    if any(c < 0 for c in claim_counts):
        raise ScoringError("claim counts must be non-negative")
    ordered = sorted(claim_counts)
    mid = len(ordered) // 2
    if len(ordered) % 2 == 1:
        k = Fraction(ordered[mid])
    else:
        k = Fraction(ordered[mid - 1] + ordered[mid], 2)
    if k == 0:
        raise ScoringError("no factual claims in domain: median claim count is 0")
    return k


def f1_at_k(claim_count: int, supported_count: int, k: Fraction | int | float) -> Fraction:
    """Exact F1@K for one response."""
    precision, recall = precision_recall(claim_count, supported_count, k)
    if supported_count == 0:
        return Fraction(0)
    return 2 * precision * recall / (precision + recall)


def precision_recall(
    claim_count: int, supported_count: int, k: Fraction | int | float
) -> tuple[Fraction, Fraction]:
    k = Fraction(k)
    if k <= 0:
        raise ScoringError(f"K must be positive, got {k}")
    if not 0 <= supported_count <= claim_count:
        raise ScoringError(
            f"supported count {supported_count} out of range for {claim_count} claims"
        )
    precision = Fraction(supported_count, claim_count) if claim_count else Fraction(0)
    recall = min(Fraction(supported_count) / k, Fraction(1))
    return precision, recall


@dataclass
class ResponseScore:
    response_id: str
    claim_count: int
    supported_count: int
    precision: float
    recall: float
    f1_at_k: float

    def to_record(self) -> dict[str, Any]:
        return {
            "response_id": self.response_id,
            "claim_count": self.claim_count,
            "supported_count": self.supported_count,
            "precision": self.precision,
            "recall": self.recall,
            "f1_at_k": self.f1_at_k,
        }


def score_response(
    response_id: str, claim_count: int, supported_count: int, k: Fraction | int | float
) -> ResponseScore:
    """Score one response against the domain's claim budget K."""
    precision, recall = precision_recall(claim_count, supported_count, k)
    return ResponseScore(
        response_id=response_id,
        claim_count=claim_count,
        supported_count=supported_count,
        precision=float(precision),
        recall=float(recall),
        f1_at_k=float(f1_at_k(claim_count, supported_count, k)),
    )


@dataclass
class ResponseStats:
    """Per-response inputs to domain scoring."""

    response_id: str
    claim_count: int
    supported_count: int
    sentence_count: int


@dataclass
class DomainScorecard:
    """Aggregates for one (domain, model) group of responses."""

    domain: str
    model_id: str
    k: Fraction
    response_scores: list[ResponseScore] = field(default_factory=list)
    veriscore: float = 0.0
    ver_ratio: float = 0.0
    mean_precision: float = 0.0
    mean_recall: float = 0.0
    mean_sentences: float = 0.0

    @property
    def n_responses(self) -> int:
        return len(self.response_scores)


def score_domain(
    domain: str,
    stats: Sequence[ResponseStats],
    k_override: int | float | Fraction | None = None,
    model_id: str = "",
) -> DomainScorecard:
    """Score a group of responses from one domain.

    K comes from the group's own claim counts unless ``k_override`` pins
    it (used to share a pooled K across models). A response with zero
    sentences contributes zero to the claim ratio.
    """
    if not stats:
        raise ScoringError(f"domain {domain!r} has no responses to score")
    k = compute_k([s.claim_count for s in stats], k_override)
    scores = []
    sum_p = sum_r = sum_f = Fraction(0)
    for s in stats:
        p, r = precision_recall(s.claim_count, s.supported_count, k)
        f = f1_at_k(s.claim_count, s.supported_count, k)
        sum_p, sum_r, sum_f = sum_p + p, sum_r + r, sum_f + f
        scores.append(
            ResponseScore(
                response_id=s.response_id,
                claim_count=s.claim_count,
                supported_count=s.supported_count,
                precision=float(p),
                recall=float(r),
                f1_at_k=float(f),
            )
        )
    n = Fraction(len(stats))
    veriscore = sum_f / n
    ver_ratio = (
        sum(Fraction(s.claim_count, s.sentence_count) for s in stats if s.sentence_count) / n
    )
    mean_p = sum_p / n
    mean_r = sum_r / n
    mean_l = sum(Fraction(s.sentence_count) for s in stats) / n
    return DomainScorecard(
        domain=domain,
        model_id=model_id,
        k=k,
        response_scores=scores,
        veriscore=float(veriscore),
        ver_ratio=float(ver_ratio),
        mean_precision=float(mean_p),
        mean_recall=float(mean_r),
        mean_sentences=float(mean_l),
    )


def summary_rows(scorecards: Iterable[DomainScorecard]) -> list[dict[str, Any]]:
    rows = []
    for card in scorecards:
        rows.append(
            {
                "domain": card.domain,
                "K": float(card.k),
                "L": card.mean_sentences,
                "P": card.mean_precision,
                "R": card.mean_recall,
                "F": card.veriscore,
                "VerRatio": card.ver_ratio,
                "N": card.n_responses,
                "model": card.model_id,
            }
        )
    return rows


def write_domain_summary(scorecards: Sequence[DomainScorecard], path: Path | str) -> Path:
    """Write the per-(domain, model) summary CSV."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in summary_rows(scorecards):
        writer.writerow(row)
    path = Path(path)
    atomic_write_text(path, buffer.getvalue())
    return path


def read_domain_summary(path: Path | str) -> list[dict[str, Any]]:
    """Read a summary CSV back into typed rows."""
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            missing = [c for c in SUMMARY_COLUMNS if c not in row or row[c] is None]
            if missing:
                raise ScoringError(f"{path}: missing columns {missing}")
            rows.append(
                {
                    "domain": row["domain"],
                    "K": float(row["K"]),
                    "L": float(row["L"]),
                    "P": float(row["P"]),
                    "R": float(row["R"]),
                    "F": float(row["F"]),
                    "VerRatio": float(row["VerRatio"]),
                    "N": int(row["N"]),
                    "model": row["model"],
                }
            )
    return rows
