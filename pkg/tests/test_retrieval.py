"""Search clients, evidence caching, and evidence rendering."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from facteval.corpus import Claim
from facteval.retrieval import (
    EMPTY_EVIDENCE_LINE,
    EvidenceList,
    EvidenceRetriever,
    HttpSearchClient,
    MockSearchClient,
    SearchError,
    SearchResult,
    render_evidence,
    write_search_transcript,
)

GOLDEN = Path(__file__).parent / "golden"


class FakeResponse:
    def __init__(self, status_code: int, payload=None, text: str = "") -> None:
        self.status_code = status_code
        self._payload = payload
        self.text = text or (json.dumps(payload) if payload is not None else "")

    def json(self):
        if self._payload is None:
            raise ValueError("no json")
        return self._payload


class FakeSession:
    def __init__(self, outcomes) -> None:
        self.outcomes = list(outcomes)
        self.requests: list[dict] = []

    def post(self, url, json=None, headers=None, timeout=None):
        self.requests.append(
            {"url": url, "json": json, "headers": headers, "timeout": timeout}
        )
        outcome = self.outcomes.pop(0)
        if isinstance(outcome, Exception):
            raise outcome
        return outcome


class CountingClient:
    """Minimal SearchClient returning one generated hit per query."""

    def __init__(self) -> None:
        self.calls = 0

    def search(self, query: str, num: int) -> list[dict[str, str]]:
        self.calls += 1
        return [
            {
                "title": f"About {query}",
                "snippet": f"Snippet for {query}",
                "link": "https://example.org/hit",
            }
        ]


def make_claim(text: str = "Water boils at 100C.", cid: str = "r-c000") -> Claim:
    return Claim(id=cid, response_id="r", sentence_index=0, text=text)


def ticking_clock(start: int = 0):
    state = {"t": start}

    def clock() -> str:
        state["t"] += 1
        return f"2024-01-01T00:00:{state['t']:02d}Z"

    return clock


def test_mock_search_client_replays_and_truncates(tmp_path: Path) -> None:
    path = tmp_path / "search.json"
    organic = [
        {"title": f"t{i}", "snippet": f"s{i}", "link": f"https://x/{i}"}
        for i in range(5)
    ]
    write_search_transcript(path, {"query one": organic})
    client = MockSearchClient(path)
    assert len(client.search("query one", 10)) == 5
    assert len(client.search("query one", 2)) == 2
    assert client.calls == 2
    with pytest.raises(SearchError):
        client.search("unknown query", 10)


def test_mock_search_client_drops_extra_fields(tmp_path: Path) -> None:
    path = tmp_path / "search.json"
    write_search_transcript(
        path,
        {"q": [{"title": "t", "snippet": "s", "link": "l", "position": 3}]},
    )
    (hit,) = MockSearchClient(path).search("q", 10)
    assert hit == {"title": "t", "snippet": "s", "link": "l"}


def test_http_search_client_request_shape() -> None:
    payload = {"organic": [{"title": "t", "snippet": "s", "link": "l"}]}
    session = FakeSession([FakeResponse(200, payload)])
    client = HttpSearchClient(
        base_url="https://search.example/", api_key="sk", session=session
    )
    results = client.search("some query", 7)
    assert results == [{"title": "t", "snippet": "s", "link": "l"}]
    request = session.requests[0]
    assert request["url"] == "https://search.example/search"
    assert request["json"] == {"q": "some query", "num": 7}
    assert request["headers"]["X-API-KEY"] == "sk"


def test_http_search_client_retries_then_fails() -> None:
    session = FakeSession([FakeResponse(429, text="limit")] * 10)
    slept: list[float] = []
    client = HttpSearchClient(
        base_url="https://search.example",
        api_key="sk",
        session=session,
        sleep=slept.append,
    )
    with pytest.raises(SearchError):
        client.search("q", 10)
    assert client.calls == 4
    assert slept == [1.0, 2.0, 4.0]


def test_retriever_caches_by_query(tmp_path: Path) -> None:
    client = CountingClient()
    retriever = EvidenceRetriever(client, tmp_path / "cache", clock=ticking_clock())
    first = retriever.retrieve(make_claim())
    assert first.cache_hit is False
    assert client.calls == 1
    assert first.results[0].rank == 1

    # Same query text from a different claim id is served from the cache,
    # keeping the original retrieval timestamp.
    second = retriever.retrieve(make_claim(cid="other-c003"))
    assert second.cache_hit is True
    assert client.calls == 1
    assert second.retrieved_at == first.retrieved_at
    assert [r.to_record() for r in second.results] == [
        r.to_record() for r in first.results
    ]


def test_retriever_cache_layout_is_content_addressed(tmp_path: Path) -> None:
    cache = tmp_path / "cache"
    retriever = EvidenceRetriever(CountingClient(), cache, clock=ticking_clock())
    retriever.retrieve(make_claim())
    (bucket,) = [p for p in cache.iterdir() if p.is_dir()]
    assert len(bucket.name) == 2
    (entry,) = list(bucket.iterdir())
    assert entry.name.startswith(bucket.name)
    assert entry.suffix == ".json"
    payload = json.loads(entry.read_text(encoding="utf-8"))
    assert payload["query"] == "Water boils at 100C."
    assert set(payload) == {"query", "retrieved_at", "organic"}


def test_retriever_is_cached(tmp_path: Path) -> None:
    retriever = EvidenceRetriever(CountingClient(), tmp_path, clock=ticking_clock())
    assert retriever.is_cached("Water boils at 100C.") is False
    retriever.retrieve(make_claim())
    assert retriever.is_cached("Water boils at 100C.") is True


def test_retriever_validates_num_results(tmp_path: Path) -> None:
    with pytest.raises(ValueError):
        EvidenceRetriever(CountingClient(), tmp_path, num_results=0)
    with pytest.raises(ValueError):
        EvidenceRetriever(CountingClient(), tmp_path, num_results=11)


def test_retriever_names_claim_on_failure(tmp_path: Path) -> None:
    class FailingClient:
        def search(self, query: str, num: int):
            raise SearchError("backend down")

    retriever = EvidenceRetriever(FailingClient(), tmp_path, clock=ticking_clock())
    with pytest.raises(SearchError, match="r-c000"):
        retriever.retrieve(make_claim())


def test_render_evidence_empty_sentinel() -> None:
    empty = EvidenceList(claim_id="c", results=[], retrieved_at="t", cache_hit=False)
    assert render_evidence(empty) == EMPTY_EVIDENCE_LINE + "\n"


def test_render_evidence_blocks_and_newline_collapse() -> None:
    evidence = EvidenceList(
        claim_id="c",
        results=[
            SearchResult(rank=1, title="Line\nbroken title", snippet="a\nb", link="l1"),
            SearchResult(rank=2, title="t2", snippet="s2", link="l2"),
        ],
        retrieved_at="t",
        cache_hit=False,
    )
    assert render_evidence(evidence) == (
        "Search result 1\n"
        "Title: Line broken title\n"
        "Content: a b\n"
        "Link: l1\n"
        "Search result 2\n"
        "Title: t2\n"
        "Content: s2\n"
        "Link: l2\n"
    )


def test_render_evidence_matches_golden() -> None:
    golden = (GOLDEN / "evidence_render.txt").read_text(encoding="utf-8")
    evidence = EvidenceList(
        claim_id="golden",
        results=[
            SearchResult(
                rank=1,
                title="Ada Lovelace - Encyclopedia",
                snippet=(
                    "Augusta Ada King, Countess of Lovelace, was born on "
                    "10 December 1815."
                ),
                link="https://encyclopedia.example/ada-lovelace",
            ),
            SearchResult(
                rank=2,
                title="Lovelace\nBiography portal",
                snippet="Born 1815.\nDied 1852.",
                link="https://biography.example/lovelace",
            ),
            SearchResult(
                rank=3,
                title="Analytical Engine notes — archive",
                snippet="Scans of the 1843 translation with Lovelace's notes.",
                link="https://archive.example/notes",
            ),
        ],
        retrieved_at="1970-01-01T00:00:00Z",
        cache_hit=False,
    )
    assert render_evidence(evidence) == golden


def test_evidence_record_round_trip() -> None:
    evidence = EvidenceList(
        claim_id="c1",
        results=[SearchResult(rank=1, title="t", snippet="s", link="l")],
        retrieved_at="2024-01-01T00:00:00Z",
        cache_hit=True,
    )
    assert EvidenceList.from_record(evidence.to_record()) == evidence
