"""Sentence segmentation and sliding-window construction.

Segmentation is rule based: paragraphs split on blank lines, list-item
lines stand alone as single sentences, and prose is split at terminal
punctuation with an abbreviation exception list. Each sentence then
becomes the focus of one window carrying up to three preceding and one
following sentence from the same paragraph, plus an optional anchor
sentence prepended for context recovery.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import Prompt, PromptKind, Response

SOS = "<SOS>"
EOS = "<EOS>"

LEFT_CONTEXT_SIZE = 3
RIGHT_CONTEXT_SIZE = 1

# Paragraphs longer than this many sentences get their first sentence
# prepended as the anchor of every non-initial window (non-QA inputs only).
ANCHOR_PARAGRAPH_THRESHOLD = 5

# Tokens that do not terminate a sentence when followed by a period.
# Compared case-sensitively against the word (including internal periods)
# immediately before the candidate boundary.
_ABBREVIATIONS = frozenset(
    (
        "Dr", "Mr", "Mrs", "Ms", "Prof", "Rev", "Hon", "St", "Jr", "Sr",
        "Capt", "Col", "Gen", "Lt", "Maj", "Sgt", "Gov", "Sen", "Rep",
        "Mt", "Ft", "Ave", "Blvd", "Rd", "Inc", "Ltd", "Co", "Corp",
        "No", "Nos", "Vol", "vol", "pp", "Fig", "fig", "Eq", "eq",
        "vs", "etc", "approx", "dept", "est", "cf", "ca", "al",
        "e.g", "i.e", "E.g", "I.e",
        "U.S", "U.K", "U.N", "D.C", "a.m", "p.m",
        "Ph.D", "B.A", "M.A", "M.S", "B.S", "M.D",
    )
)

_TERMINATORS = ".!?"
_CLOSERS = "\"')]’”"

_LIST_ITEM_RE = re.compile(r"^[ \t]*(?:-|\*|\d+\.)[ \t]+\S")
_BLANK_LINE_RE = re.compile(r"\n[ \t]*\n")


@dataclass(frozen=True)
class SentenceWindow:
    """One extraction window centered on a focus sentence."""

    response_id: str
    index: int
    focus: str
    left_context: tuple[str, ...]
    right_context: tuple[str, ...]
    anchor: str | None


def _trailing_token(text: str, end: int) -> str:
    """The word (letters and internal periods) ending just before ``end``."""
    start = end
    while start > 0 and (text[start - 1].isalpha() or text[start - 1] == "."):
        start -= 1
    return text[start:end].strip(".")


def _is_boundary(text: str, i: int, stop: int) -> int:
    """Return the index just past a sentence boundary at ``i``, or -1.

    ``i`` points at a terminator character inside text[:stop].
    """
    j = i
    while j < stop and text[j] in _TERMINATORS:
        j += 1
    if text[i] == "." and j == i + 1:
        token = _trailing_token(text, i)
        if token in _ABBREVIATIONS:
            return -1
    while j < stop and text[j] in _CLOSERS:
        j += 1
    if j < stop and not text[j].isspace():
        # Mid-token punctuation such as decimals, URLs, or e.g.'s comma.
        return -1
    k = j
    while k < stop and text[k].isspace():
        k += 1
    if k < stop and text[k].islower():
        return -1
    return j


def _split_prose(text: str, start: int, stop: int) -> list[tuple[int, int]]:
    """Split a prose region into trimmed sentence spans."""
    spans = []
    sent_start = start
    i = start
    while i < stop:
        if text[i] in _TERMINATORS:
            boundary = _is_boundary(text, i, stop)
            if boundary >= 0:
                spans.append((sent_start, boundary))
                i = boundary
                while i < stop and text[i].isspace():
                    i += 1
                sent_start = i
                continue
        i += 1
    if sent_start < stop:
        spans.append((sent_start, stop))
    trimmed = []
    for s, e in spans:
        while s < e and text[s].isspace():
            s += 1
        while e > s and text[e - 1].isspace():
            e -= 1
        if s < e:
            trimmed.append((s, e))
    return trimmed


def segment(text: str) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Segment ``text`` into sentence spans and paragraph ranges.

    Returns (sentences, paragraphs) where sentences are character-offset
    (start, end) spans and paragraphs are half-open (start, stop) ranges
    of sentence indices. Whitespace-only input yields ([], []).
    """
    sentences: list[tuple[int, int]] = []
    paragraphs: list[tuple[int, int]] = []

    block_start = 0
    blocks = []
    for match in _BLANK_LINE_RE.finditer(text):
        blocks.append((block_start, match.start()))
        block_start = match.end()
    blocks.append((block_start, len(text)))

    for bstart, bstop in blocks:
        para_first = len(sentences)
        # Walk the block line by line so list items stay whole sentences
        # while consecutive prose lines merge into one run.
        run_start = -1
        pos = bstart
        while pos < bstop:
            eol = text.find("\n", pos, bstop)
            if eol == -1:
                eol = bstop
            line = text[pos:eol]
            if _LIST_ITEM_RE.match(line):
                if run_start >= 0:
                    sentences.extend(_split_prose(text, run_start, pos))
                    run_start = -1
                s, e = pos, eol
                while s < e and text[s].isspace():
                    s += 1
                while e > s and text[e - 1].isspace():
                    e -= 1
                sentences.append((s, e))
            elif line.strip():
                if run_start < 0:
                    run_start = pos
            elif run_start >= 0:
                sentences.extend(_split_prose(text, run_start, pos))
                run_start = -1
            pos = eol + 1
        if run_start >= 0:
            sentences.extend(_split_prose(text, run_start, bstop))
        if len(sentences) > para_first:
            paragraphs.append((para_first, len(sentences)))

    return sentences, paragraphs


def make_response(prompt_id: str, model_id: str, text: str) -> Response:
    """Build a Response with sentence spans and paragraph ranges filled in."""
    sentences, paragraphs = segment(text)
    return Response(
        prompt_id=prompt_id,
        model_id=model_id,
        text=text,
        sentences=sentences,
        paragraphs=paragraphs,
    )


def build_windows(response: Response, prompt: Prompt) -> list[SentenceWindow]:
    """Build one window per response sentence.

    Context never crosses paragraph boundaries. QA prompts anchor every
    window with the question; non-QA windows are anchored with the
    paragraph's first sentence when the paragraph has more than
    ANCHOR_PARAGRAPH_THRESHOLD sentences and the focus is not that first
    sentence itself.
    """
    texts = [response.sentence_text(i) for i in range(len(response.sentences))]
    windows = []
    for pstart, pstop in response.paragraphs:
        for i in range(pstart, pstop):
            left = tuple(texts[max(pstart, i - LEFT_CONTEXT_SIZE):i])
            right = tuple(texts[i + 1:min(pstop, i + 1 + RIGHT_CONTEXT_SIZE)])
            if prompt.kind is PromptKind.QA:
                anchor = prompt.text
            elif pstop - pstart > ANCHOR_PARAGRAPH_THRESHOLD and i != pstart:
                anchor = texts[pstart]
            else:
                anchor = None
            windows.append(
                SentenceWindow(
                    response_id=response.response_id,
                    index=i,
                    focus=texts[i],
                    left_context=left,
                    right_context=right,
                    anchor=anchor,
                )
            )
    return windows


def render_window(window: SentenceWindow) -> str:
    """Render a window as anchor, left context, marked focus, right context,
    joined by single spaces with no leading or trailing whitespace."""
    parts = []
    if window.anchor is not None:
        parts.append(window.anchor)
    parts.extend(window.left_context)
    parts.append(f"{SOS}{window.focus}{EOS}")
    parts.extend(window.right_context)
    return " ".join(parts)
