"""Few-shot claim extraction over sliding windows.

Each window gets one chat call. The model is asked for "- " bulleted
atomic facts, or the sentinel line "No verifiable claim." when the focus
sentence carries nothing checkable. Claims are deduplicated by exact
string within a response, keeping the first occurrence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources

from .backends import BackendError, ChatBackend, run_parallel
from .corpus import Claim, Prompt, PromptKind, Response
from .segmenter import EOS, SOS, SentenceWindow, build_windows, render_window

logger = logging.getLogger(__name__)

NO_CLAIM_SENTINEL = "No verifiable claim."

_WINDOW_SLOT = "{sliding window}"
_FOCUS_SLOT = "{sentence}"

_TEMPLATE_FILES = {
    PromptKind.QA: "extraction_qa.txt",
    PromptKind.NONQA: "extraction_nonqa.txt",
}

_template_cache: dict[str, str] = {}


def _load_template(filename: str) -> str:
    if filename not in _template_cache:
        text = resources.files(__package__).joinpath("templates", filename).read_text(encoding="utf-8")
        # Template files end with a newline for the benefit of text tools;
        # the prompt itself must end exactly at the final slot line.
        _template_cache[filename] = text[:-1] if text.endswith("\n") else text
    return _template_cache[filename]


@dataclass
class ExtractionResult:
    """Parsed output of one window's extraction call."""

    window: SentenceWindow
    raw_output: str
    claims: list[str]
    is_no_claim: bool
    parse_error: bool


def assemble_extraction_prompt(window_render: str, focus: str, kind: PromptKind) -> str:
    """Fill the few-shot template for the given input kind.

    The rendered window goes into the sliding-window slot (labelled
    "Text:" for non-QA inputs) and the focus sentence into the
    "Sentence to be focused on:" slot. The result ends with "Facts:".
    """
    template = _load_template(_TEMPLATE_FILES[PromptKind(kind)])
    return template.replace(_WINDOW_SLOT, window_render).replace(_FOCUS_SLOT, focus)


def parse_claim_lines(raw_output: str) -> tuple[list[str], bool]:
    """Parse extractor output into (claims, is_no_claim).

    Lines starting with "- " (after trimming) become claims with the
    bullet stripped, so a bulleted sentinel still counts as a claim. The
    bare sentinel line sets is_no_claim, which is reported only when no
    claims were found, keeping the two outcomes mutually exclusive. Blank
    lines are ignored; anything else is ignored with a warning.
    """
    claims: list[str] = []
    saw_sentinel = False
    for line in raw_output.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("- "):
            text = line[2:].strip()
            if text:
                claims.append(text)
            else:
                logger.warning("ignoring empty claim bullet")
        elif _is_sentinel(line):
            saw_sentinel = True
        else:
            logger.warning("ignoring unrecognized extractor line: %r", line)
    return claims, saw_sentinel and not claims


def _is_sentinel(line: str) -> bool:
    return line.rstrip(".").lower() == NO_CLAIM_SENTINEL.rstrip(".").lower()


def _sanitize_claim(text: str) -> str:
    if SOS in text or EOS in text:
        logger.warning("stripping window markers from claim: %r", text)
        text = text.replace(SOS, "").replace(EOS, "").strip()
    return text


def extract_window(window: SentenceWindow, kind: PromptKind, backend: ChatBackend) -> ExtractionResult:
    """Run one extraction call and parse its output."""
    prompt_text = assemble_extraction_prompt(render_window(window), window.focus, kind)
    try:
        raw = backend.complete(prompt_text)
    except BackendError as exc:
        raise BackendError(
            f"extraction failed for window {window.index} of response"
            f" {window.response_id}: {exc}"
        ) from exc
    claims, is_no_claim = parse_claim_lines(raw)
    claims = [c for c in (_sanitize_claim(c) for c in claims) if c]
    parse_error = not claims and not is_no_claim
    if parse_error:
        logger.warning(
            "unparseable extractor output for window %d of response %s",
            window.index,
            window.response_id,
        )
    return ExtractionResult(
        window=window,
        raw_output=raw,
        claims=claims,
        is_no_claim=is_no_claim,
        parse_error=parse_error,
    )


def extract_claims(
    response: Response,
    prompt: Prompt,
    backend: ChatBackend,
    width: int = 1,
) -> list[Claim]:
    """Extract deduplicated claims from every window of a response.

    Claim ids are assigned in first-occurrence order and each claim keeps
    the sentence index of the window that first produced it.
    """
    windows = build_windows(response, prompt)
    results = run_parallel(lambda w: extract_window(w, prompt.kind, backend), windows, width)
    claims: list[Claim] = []
    seen: set[str] = set()
    for result in results:
        for text in result.claims:
            if text in seen:
                continue
            seen.add(text)
            claims.append(
                Claim(
                    id=f"{response.response_id}-c{len(claims):03d}",
                    response_id=response.response_id,
                    sentence_index=result.window.index,
                    text=text,
                )
            )
    return claims
