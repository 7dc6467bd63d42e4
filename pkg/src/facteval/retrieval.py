"""Web-search evidence retrieval with a content-addressed disk cache.

Each claim's exact text is used verbatim as the search query. Raw result
lists are cached under <cache_dir>/<hash[:2]>/<hash>.json keyed by the
sha256 of the query, so re-runs and repeated claims never touch the
network. Only organic results are kept, in wire order, truncated to the
configured count.
"""

from __future__ import annotations

import json
import logging
import re
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

import requests

from .backends import RateLimiter, call_with_retries, sha256_hex
from .corpus import Claim, atomic_write_text

logger = logging.getLogger(__name__)

MAX_RESULTS = 10
DEFAULT_SEARCH_TIMEOUT = 30.0

EMPTY_EVIDENCE_LINE = "No search results found."

_NEWLINES_RE = re.compile(r"[\r\n]+")


class SearchError(RuntimeError):
    """A search request failed permanently (after retries if retriable)."""


def utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class SearchResult:
    """One organic search hit, ranked from 1 in wire order."""

    rank: int
    title: str
    snippet: str
    link: str

    def to_record(self) -> dict[str, Any]:
        return {"rank": self.rank, "title": self.title, "snippet": self.snippet, "link": self.link}

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "SearchResult":
        return cls(rank=rec["rank"], title=rec["title"], snippet=rec["snippet"], link=rec["link"])


@dataclass
class EvidenceList:
    """Evidence retrieved for one claim."""

    claim_id: str
    results: list[SearchResult]
    retrieved_at: str
    cache_hit: bool

    def to_record(self) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "results": [r.to_record() for r in self.results],
            "retrieved_at": self.retrieved_at,
            "cache_hit": self.cache_hit,
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "EvidenceList":
        return cls(
            claim_id=rec["claim_id"],
            results=[SearchResult.from_record(r) for r in rec["results"]],
            retrieved_at=rec["retrieved_at"],
            cache_hit=rec["cache_hit"],
        )


def _normalize_organic(raw: Any) -> list[dict[str, str]]:
    """Keep title/snippet/link of each organic entry, preserving order."""
    if not isinstance(raw, list):
        return []
    organic = []
    for entry in raw:
        if not isinstance(entry, dict):
            continue
        organic.append(
            {
                "title": str(entry.get("title", "")),
                "snippet": str(entry.get("snippet", "")),
                "link": str(entry.get("link", "")),
            }
        )
    return organic


class SearchClient:
    """Interface: query text in, normalized organic result dicts out."""

    def search(self, query: str, num: int) -> list[dict[str, str]]:
        raise NotImplementedError


class HttpSearchClient(SearchClient):
    """Serper-compatible endpoint (POST <base_url>/search with q/num)."""

    def __init__(
        self,
        base_url: str,
        api_key: str,
        timeout: float = DEFAULT_SEARCH_TIMEOUT,
        session: requests.Session | None = None,
        rate_limiter: RateLimiter | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self.base_url = base_url.rstrip("/")
        self.api_key = api_key
        self.timeout = timeout
        self.session = session or requests.Session()
        self.rate_limiter = rate_limiter
        self._sleep = sleep
        self.calls = 0

    def search(self, query: str, num: int) -> list[dict[str, str]]:
        return call_with_retries(
            lambda: self._search_once(query, num),
            what="search request",
            is_retriable=lambda exc: isinstance(exc, _RetriableSearchError),
            sleep=self._sleep,
        )

    def _search_once(self, query: str, num: int) -> list[dict[str, str]]:
        if self.rate_limiter is not None:
            self.rate_limiter.wait()
        self.calls += 1
        try:
            resp = self.session.post(
                f"{self.base_url}/search",
                json={"q": query, "num": num},
                headers={"X-API-KEY": self.api_key, "Content-Type": "application/json"},
                timeout=self.timeout,
            )
        except requests.RequestException as exc:
            raise _RetriableSearchError(str(exc)) from exc
        if resp.status_code in (429, 500, 502, 503, 504):
            raise _RetriableSearchError(f"HTTP {resp.status_code}: {resp.text[:200]}")
        if resp.status_code != 200:
            raise SearchError(f"search failed with HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            payload = resp.json()
        except ValueError as exc:
            raise SearchError(f"malformed search response: {exc}") from exc
        return _normalize_organic(payload.get("organic", []))


class _RetriableSearchError(SearchError):
    pass


class MockSearchClient(SearchClient):
    """Replays canned organic results keyed by sha256 of the query."""

    def __init__(self, transcript_path: Path | str) -> None:
        self.transcript_path = Path(transcript_path)
        data = json.loads(self.transcript_path.read_text(encoding="utf-8"))
        self.responses: dict[str, Any] = dict(data.get("responses", {}))
        self.default: Any = data.get("default")
        self.calls = 0
        self._lock = threading.Lock()

    def search(self, query: str, num: int) -> list[dict[str, str]]:
        with self._lock:
            self.calls += 1
        key = sha256_hex(query)
        entry = self.responses.get(key, self.default)
        if entry is None:
            raise SearchError(
                f"{self.transcript_path}: no canned results for query hash {key[:16]}..."
            )
        organic = entry.get("organic", []) if isinstance(entry, dict) else entry
        return _normalize_organic(organic)[:num]


def write_search_transcript(
    path: Path | str,
    responses: dict[str, list[dict[str, str]]],
    default: list[dict[str, str]] | None = None,
) -> None:
    """Write a mock search transcript keyed by query text (hashed here)."""
    payload: dict[str, Any] = {
        "responses": {sha256_hex(q): {"organic": organic} for q, organic in responses.items()}
    }
    if default is not None:
        payload["default"] = {"organic": default}
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )


class EvidenceRetriever:
    """Cache-first retrieval of search evidence for claims."""

    def __init__(
        self,
        client: SearchClient,
        cache_dir: Path | str,
        num_results: int = MAX_RESULTS,
        clock: Callable[[], str] = utc_now,
    ) -> None:
        if not 1 <= num_results <= MAX_RESULTS:
            raise ValueError(f"num_results must be in [1, {MAX_RESULTS}], got {num_results}")
        self.client = client
        self.cache_dir = Path(cache_dir)
        self.num_results = num_results
        self.clock = clock

    def _cache_path(self, query: str) -> Path:
        key = sha256_hex(query)
        return self.cache_dir / key[:2] / f"{key}.json"

    def is_cached(self, query: str) -> bool:
        return self._cache_path(query).exists()

    def _read_cache(self, query: str) -> dict[str, Any] | None:
        path = self._cache_path(query)
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))

    def fetch(self, query: str) -> tuple[dict[str, Any], bool]:
        """Return (cache entry, was_cached), fetching and caching on miss."""
        entry = self._read_cache(query)
        if entry is not None:
            return entry, True
        organic = self.client.search(query, self.num_results)
        entry = {"query": query, "retrieved_at": self.clock(), "organic": organic}
        atomic_write_text(
            self._cache_path(query),
            json.dumps(entry, ensure_ascii=False, sort_keys=True) + "\n",
        )
        return entry, False

    def retrieve(self, claim: Claim) -> EvidenceList:
        """Evidence for one claim, from cache when available.

        A cache hit reuses the stored retrieval time, so identical claim
        text always yields the same results and timestamp; only cache_hit
        reflects whether the network was touched this time.
        """
        try:
            entry, was_cached = self.fetch(claim.text)
        except SearchError as exc:
            raise SearchError(f"retrieval failed for claim {claim.id}: {exc}") from exc
        results = [
            SearchResult(rank=i + 1, title=r["title"], snippet=r["snippet"], link=r["link"])
            for i, r in enumerate(entry["organic"][: self.num_results])
        ]
        return EvidenceList(
            claim_id=claim.id,
            results=results,
            retrieved_at=entry["retrieved_at"],
            cache_hit=was_cached,
        )


def retrieve(claim: Claim, client: SearchClient, cache_dir: Path | str, **kwargs: Any) -> EvidenceList:
    """One-shot convenience wrapper around EvidenceRetriever.retrieve."""
    return EvidenceRetriever(client, cache_dir, **kwargs).retrieve(claim)


def _sanitize(field: str) -> str:
    return _NEWLINES_RE.sub(" ", field)


def render_evidence(evidence: EvidenceList) -> str:
    """Render results as numbered blocks for the verification prompt.

    Each block is "Search result <rank>", then Title/Content/Link lines,
    each block ending with a newline. Field newlines are collapsed to
    single spaces. An empty list renders as the sentinel line
    "No search results found." (with trailing newline) so substitution
    into templates stays concatenation-safe.
    """
    if not evidence.results:
        return EMPTY_EVIDENCE_LINE + "\n"
    blocks = [
        f"Search result {r.rank}\n"
        f"Title: {_sanitize(r.title)}\n"
        f"Content: {_sanitize(r.snippet)}\n"
        f"Link: {_sanitize(r.link)}\n"
        for r in evidence.results
    ]
    return "".join(blocks)
