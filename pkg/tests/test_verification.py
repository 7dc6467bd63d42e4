"""Verification prompts, decision parsing, and the part-judgment algebra."""

from __future__ import annotations

import itertools
import json
from pathlib import Path

import pytest

from facteval.backends import BackendError, ChatBackend
from facteval.corpus import Claim
from facteval.retrieval import EvidenceList, SearchResult, render_evidence
from facteval.verification import (
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
    to_ternary,
    verify_claim,
)

FIXTURES = Path(__file__).parent / "fixtures"

S, C, N = Judgment.SUPPORTS, Judgment.CONTRADICTS, Judgment.NEITHER


def label_of(rows: list[list[Judgment]]) -> AlgebraLabel:
    parts = [f"part {i}" for i in range(len(rows))]
    return classify_by_algebra(PartJudgmentMatrix(parts=parts, judgments=rows))


def test_all_parts_supported_only() -> None:
    assert label_of([[S, N], [N, S]]) is AlgebraLabel.SUPPORTED


def test_contradicted_part_without_support() -> None:
    assert label_of([[S], [C]]) is AlgebraLabel.CONTRADICTED


def test_part_with_both_is_inconclusive_b() -> None:
    assert label_of([[S, C]]) is AlgebraLabel.INCONCLUSIVE_B


def test_unjudged_part_is_inconclusive_a() -> None:
    assert label_of([[S], [N]]) is AlgebraLabel.INCONCLUSIVE_A


def test_contradicted_takes_precedence_over_inconclusive_b() -> None:
    # One part both supported and contradicted, another contradicted only.
    assert label_of([[S, C], [C, N]]) is AlgebraLabel.CONTRADICTED


def test_empty_evidence_is_inconclusive_a() -> None:
    assert label_of([[], []]) is AlgebraLabel.INCONCLUSIVE_A


def test_matrix_validation() -> None:
    with pytest.raises(ValueError):
        PartJudgmentMatrix(parts=[], judgments=[])
    with pytest.raises(ValueError):
        PartJudgmentMatrix(parts=["a", "b"], judgments=[[S]])
    with pytest.raises(ValueError):
        PartJudgmentMatrix(parts=["a", "b"], judgments=[[S], [S, N]])


def test_to_ternary_and_collapse() -> None:
    assert to_ternary(AlgebraLabel.SUPPORTED) is TernaryLabel.SUPPORTED
    assert to_ternary(AlgebraLabel.CONTRADICTED) is TernaryLabel.CONTRADICTED
    assert to_ternary(AlgebraLabel.INCONCLUSIVE_A) is TernaryLabel.INCONCLUSIVE
    assert to_ternary(AlgebraLabel.INCONCLUSIVE_B) is TernaryLabel.INCONCLUSIVE

    assert collapse(AlgebraLabel.SUPPORTED) is BinaryLabel.SUPPORTED
    assert collapse(TernaryLabel.SUPPORTED) is BinaryLabel.SUPPORTED
    for label in (
        AlgebraLabel.CONTRADICTED,
        AlgebraLabel.INCONCLUSIVE_A,
        AlgebraLabel.INCONCLUSIVE_B,
        TernaryLabel.CONTRADICTED,
        TernaryLabel.INCONCLUSIVE,
    ):
        assert collapse(label) is BinaryLabel.UNSUPPORTED


def test_parse_decision_fixture_cases() -> None:
    cases = json.loads((FIXTURES / "parse_cases.json").read_text(encoding="utf-8"))
    for case in cases["decisions"]:
        got = parse_decision(case["raw"], case["mode"])
        expected = case["expected"]
        if expected is None:
            assert got is None, case["raw"]
        else:
            assert got is not None, case["raw"]
            assert got.value == expected, case["raw"]


def test_prompt_slots_are_filled() -> None:
    for mode in LabelMode:
        for order in FieldOrder:
            full = assemble_verification_prompt(
                "The moon is made of rock.", "No search results found.\n", mode, order
            )
            assert "{claim to be verified}" not in full
            assert "{search results}" not in full
            assert full.endswith("Your decision:")
            assert "The moon is made of rock." in full


def test_claude_order_puts_evidence_before_claim() -> None:
    full = assemble_verification_prompt(
        "CLAIM-TEXT", "EVIDENCE-BLOCK\n", LabelMode.BINARY, FieldOrder.CLAUDE
    )
    assert full.index("EVIDENCE-BLOCK") < full.index("Claim: CLAIM-TEXT")


def test_standard_order_puts_claim_before_evidence() -> None:
    full = assemble_verification_prompt(
        "CLAIM-TEXT", "EVIDENCE-BLOCK\n", LabelMode.BINARY, FieldOrder.STANDARD
    )
    assert full.index("Claim: CLAIM-TEXT") < full.index("EVIDENCE-BLOCK")


class OneReplyBackend(ChatBackend):
    def __init__(self, reply: str) -> None:
        self.reply = reply
        self.prompts: list[str] = []

    @property
    def name(self) -> str:
        return "one-reply"

    def complete(self, prompt: str) -> str:
        self.prompts.append(prompt)
        return self.reply


def make_claim() -> Claim:
    return Claim(id="r-c000", response_id="r", sentence_index=0, text="Snow is white.")


def make_evidence() -> EvidenceList:
    return EvidenceList(
        claim_id="r-c000",
        results=[SearchResult(rank=1, title="t", snippet="Snow is white.", link="l")],
        retrieved_at="1970-01-01T00:00:00Z",
        cache_hit=False,
    )


def test_verify_claim_binary() -> None:
    backend = OneReplyBackend("###Supported.###")
    record = verify_claim(make_claim(), make_evidence(), backend)
    assert record.binary is BinaryLabel.SUPPORTED
    assert record.ternary is None
    assert record.parse_failed is False
    assert record.verifier_id == "one-reply"
    assert render_evidence(make_evidence()) in backend.prompts[0]


def test_verify_claim_ternary_records_both_labels() -> None:
    backend = OneReplyBackend("###Contradicted.###")
    record = verify_claim(
        make_claim(), make_evidence(), backend, label_mode=LabelMode.TERNARY
    )
    assert record.ternary is TernaryLabel.CONTRADICTED
    assert record.binary is BinaryLabel.UNSUPPORTED


def test_verify_claim_unparseable_is_unsupported() -> None:
    backend = OneReplyBackend("Hard to say, really.")
    record = verify_claim(make_claim(), make_evidence(), backend)
    assert record.binary is BinaryLabel.UNSUPPORTED
    assert record.parse_failed is True


def test_verify_claim_wraps_backend_errors() -> None:
    class FailingBackend(ChatBackend):
        def complete(self, prompt: str) -> str:
            raise BackendError("offline")

    with pytest.raises(BackendError, match="r-c000"):
        verify_claim(make_claim(), make_evidence(), FailingBackend())


def test_verification_record_round_trip() -> None:
    record = VerificationRecord(
        claim_id="c",
        binary=BinaryLabel.SUPPORTED,
        ternary=TernaryLabel.SUPPORTED,
        verifier_id="v",
        raw_output="###Supported.###",
        parse_failed=False,
    )
    assert VerificationRecord.from_record(record.to_record()) == record
