"""Chat-completion backends shared by the extractor and the verifier.

Live traffic goes to an OpenAI-compatible chat endpoint. Offline runs use
a transcript-backed mock keyed by the sha256 of the exact request content,
which makes recorded runs reproducible and lets tests count calls.
"""

from __future__ import annotations

import hashlib
import json
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence, TypeVar

import requests

logger = logging.getLogger(__name__)

T = TypeVar("T")
U = TypeVar("U")

DEFAULT_TEMPERATURE = 0.0
DEFAULT_MAX_TOKENS = 1024
DEFAULT_TIMEOUT = 60.0
DEFAULT_WIDTH = 8

# One initial call plus up to three retries, sleeping 1s, 2s, 4s between.
RETRY_DELAYS = (1.0, 2.0, 4.0)
RETRIABLE_STATUS = frozenset({429, 500, 502, 503, 504})


class BackendError(RuntimeError):
    """A backend request failed permanently (after retries if retriable)."""


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def call_with_retries(
    fn: Callable[[], T],
    *,
    what: str,
    is_retriable: Callable[[Exception], bool],
    delays: Sequence[float] = RETRY_DELAYS,
    sleep: Callable[[float], None] = time.sleep,
) -> T:
    """Run ``fn``, retrying retriable failures with exponential backoff."""
    for attempt, delay in enumerate([*delays, None]):
        try:
            return fn()
        except Exception as exc:
            if delay is None or not is_retriable(exc):
                raise
            logger.warning("%s failed (attempt %d): %s; retrying in %.0fs", what, attempt + 1, exc, delay)
            sleep(delay)
    raise AssertionError("unreachable")


class RateLimiter:
    """Thread-safe minimum-interval limiter. interval <= 0 disables it."""

    def __init__(
        self,
        min_interval: float,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self.min_interval = min_interval
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._next_slot = float("-inf")

    def wait(self) -> None:
        if self.min_interval <= 0:
            return
        with self._lock:
            now = self._clock()
            slot = max(now, self._next_slot)
            self._next_slot = slot + self.min_interval
        delay = slot - now
        if delay > 0:
            self._sleep(delay)


def run_parallel(fn: Callable[[T], U], items: Iterable[T], width: int) -> list[U]:
    """Map ``fn`` over ``items`` with bounded parallelism.

    Results come back in input order regardless of completion order, so
    downstream stage files stay deterministic.
    """
    items = list(items)
    if width <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=width) as pool:
        return list(pool.map(fn, items))


class ChatBackend:
    """Interface: send one user message, get the model's text back."""

    name: str = "unknown"

    def complete(self, prompt: str) -> str:
        raise NotImplementedError


class HttpChatBackend(ChatBackend):
    """OpenAI-compatible chat endpoint (POST <base_url>/chat/completions)."""

    def __init__(
        self,
        base_url: str,
        api_key: str,
        model: str,
        temperature: float = DEFAULT_TEMPERATURE,
        max_tokens: int = DEFAULT_MAX_TOKENS,
        timeout: float = DEFAULT_TIMEOUT,
        session: requests.Session | None = None,
        rate_limiter: RateLimiter | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self.base_url = base_url.rstrip("/")
        self.api_key = api_key
        self.model = model
        self.temperature = temperature
        self.max_tokens = max_tokens
        self.timeout = timeout
        self.session = session or requests.Session()
        self.rate_limiter = rate_limiter
        self._sleep = sleep
        self.calls = 0
        self._lock = threading.Lock()

    @property
    def name(self) -> str:  # type: ignore[override]
        return self.model

    def complete(self, prompt: str) -> str:
        return call_with_retries(
            lambda: self._complete_once(prompt),
            what=f"chat request to {self.model}",
            is_retriable=_is_retriable,
            sleep=self._sleep,
        )

    def _complete_once(self, prompt: str) -> str:
        if self.rate_limiter is not None:
            self.rate_limiter.wait()
        with self._lock:
            self.calls += 1
        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.temperature,
            "max_tokens": self.max_tokens,
        }
        try:
            resp = self.session.post(
                f"{self.base_url}/chat/completions",
                json=body,
                headers={"Authorization": f"Bearer {self.api_key}"},
                timeout=self.timeout,
            )
        except requests.RequestException as exc:
            raise _TransportError(str(exc)) from exc
        if resp.status_code in RETRIABLE_STATUS:
            raise _TransportError(f"HTTP {resp.status_code}: {resp.text[:200]}")
        if resp.status_code != 200:
            raise BackendError(f"chat request failed with HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            content = resp.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise BackendError(f"malformed chat response: {exc}") from exc
        if not isinstance(content, str):
            raise BackendError("chat response content is not a string")
        return content


class _TransportError(BackendError):
    """Retriable failure: connection trouble, timeouts, 5xx, or quota."""


def _is_retriable(exc: Exception) -> bool:
    return isinstance(exc, _TransportError)


class MockChatBackend(ChatBackend):
    """Replays canned responses from a transcript file.

    The transcript maps sha256(prompt) -> response text under "responses",
    with an optional "default" used for unknown prompts. ``calls`` counts
    every complete() invocation.
    """

    def __init__(self, transcript_path: Path | str, name: str = "mock-llm") -> None:
        self.transcript_path = Path(transcript_path)
        self.name = name
        data = json.loads(self.transcript_path.read_text(encoding="utf-8"))
        self.responses: dict[str, str] = dict(data.get("responses", {}))
        self.default: str | None = data.get("default")
        self.calls = 0
        self._lock = threading.Lock()

    def complete(self, prompt: str) -> str:
        with self._lock:
            self.calls += 1
        key = sha256_hex(prompt)
        if key in self.responses:
            return self.responses[key]
        if self.default is not None:
            return self.default
        raise BackendError(
            f"{self.transcript_path}: no canned response for request hash {key[:16]}..."
        )


def write_transcript(path: Path | str, responses: dict[str, str], default: str | None = None) -> None:
    """Write a mock transcript keyed by request content (hashed here)."""
    payload: dict[str, Any] = {"responses": {sha256_hex(k): v for k, v in responses.items()}}
    if default is not None:
        payload["default"] = default
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
