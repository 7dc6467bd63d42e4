"""Data model validation and jsonl ingestion."""

from __future__ import annotations

from pathlib import Path

import pytest

from facteval.corpus import (
    Claim,
    IngestError,
    Prompt,
    PromptKind,
    Response,
    atomic_write_text,
    dumps_record,
    ingest_prompts,
    load_stage,
    persist_stage,
    read_jsonl,
    stage_path,
    write_jsonl,
)
from facteval.segmenter import make_response


def test_prompt_record_round_trip() -> None:
    prompt = Prompt(id="p1", domain="bio", kind=PromptKind.QA, text="Who was Ada?")
    assert Prompt.from_record(prompt.to_record()) == prompt


def test_response_id_combines_prompt_and_model() -> None:
    response = make_response("p1", "gpt-4o", "A sentence.")
    assert response.response_id == "p1--gpt-4o"


def test_response_sentence_text() -> None:
    response = make_response("p1", "m", "First one. Second one.")
    assert response.sentence_text(0) == "First one."
    assert response.sentence_text(1) == "Second one."


def test_response_rejects_out_of_bounds_spans() -> None:
    with pytest.raises(ValueError):
        Response(
            prompt_id="p1",
            model_id="m",
            text="short",
            sentences=[(0, 99)],
            paragraphs=[(0, 1)],
        )


def test_response_rejects_overlapping_spans() -> None:
    with pytest.raises(ValueError):
        Response(
            prompt_id="p1",
            model_id="m",
            text="abcdef",
            sentences=[(0, 4), (2, 6)],
            paragraphs=[(0, 2)],
        )


def test_response_rejects_bad_paragraph_partition() -> None:
    with pytest.raises(ValueError):
        Response(
            prompt_id="p1",
            model_id="m",
            text="One. Two.",
            sentences=[(0, 4), (5, 9)],
            paragraphs=[(0, 1)],
        )


def test_claim_requires_text() -> None:
    with pytest.raises(ValueError):
        Claim(id="c0", response_id="r", sentence_index=0, text="   ")


def test_write_and_read_jsonl_round_trip(tmp_path: Path) -> None:
    path = tmp_path / "records.jsonl"
    records = [{"id": "a", "text": "café"}, {"id": "b", "text": "plain"}]
    write_jsonl(path, records)
    assert read_jsonl(path) == records
    # Unicode survives unescaped on disk.
    assert "café" in path.read_text(encoding="utf-8")


def test_read_jsonl_names_bad_line(tmp_path: Path) -> None:
    path = tmp_path / "records.jsonl"
    path.write_text('{"ok": 1}\nnot json\n', encoding="utf-8")
    with pytest.raises(IngestError, match="line 2"):
        read_jsonl(path)


def test_dumps_record_sorts_keys() -> None:
    assert dumps_record({"b": 1, "a": 2}) == '{"a": 2, "b": 1}'


def test_atomic_write_replaces_content(tmp_path: Path) -> None:
    path = tmp_path / "out.txt"
    atomic_write_text(path, "first")
    atomic_write_text(path, "second")
    assert path.read_text(encoding="utf-8") == "second"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]


def test_ingest_prompts_happy_path(tmp_path: Path) -> None:
    path = tmp_path / "prompts.jsonl"
    write_jsonl(
        path,
        [
            {"id": "p1", "domain": "bio", "kind": "nonqa", "text": "Write."},
            {"id": "p2", "domain": "eli5", "kind": "qa", "text": "Why?"},
        ],
    )
    prompts = ingest_prompts(path, PromptKind.NONQA)
    assert [p.id for p in prompts] == ["p1", "p2"]
    assert prompts[1].kind is PromptKind.QA


def test_ingest_prompts_applies_default_kind(tmp_path: Path) -> None:
    path = tmp_path / "prompts.jsonl"
    write_jsonl(path, [{"id": "p1", "domain": "bio", "text": "Write."}])
    (prompt,) = ingest_prompts(path, PromptKind.QA)
    assert prompt.kind is PromptKind.QA


def test_ingest_prompts_rejects_duplicate_ids(tmp_path: Path) -> None:
    path = tmp_path / "prompts.jsonl"
    write_jsonl(
        path,
        [
            {"id": "p1", "domain": "bio", "text": "Write."},
            {"id": "p1", "domain": "bio", "text": "Write again."},
        ],
    )
    with pytest.raises(IngestError, match="p1"):
        ingest_prompts(path, PromptKind.NONQA)


def test_ingest_prompts_rejects_missing_fields(tmp_path: Path) -> None:
    path = tmp_path / "prompts.jsonl"
    write_jsonl(path, [{"id": "p1", "domain": "bio"}])
    with pytest.raises(IngestError):
        ingest_prompts(path, PromptKind.NONQA)


def test_persist_and_load_stage(tmp_path: Path) -> None:
    records = [{"id": "x", "v": 1}, {"id": "y", "v": 2}]
    persist_stage(tmp_path, "claims", records)
    assert stage_path(tmp_path, "claims").name == "claims.jsonl"
    assert load_stage(tmp_path, "claims") == records


def test_stage_path_rejects_unknown_stage(tmp_path: Path) -> None:
    with pytest.raises(ValueError):
        stage_path(tmp_path, "unheard-of")
