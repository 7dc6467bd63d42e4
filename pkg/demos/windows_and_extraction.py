"""Walk through sentence segmentation, context windows, and claim extraction.

Runs entirely offline: a tiny canned backend stands in for the extractor
model so the script can show real prompts and real parsing without any
API key.

    python3 demos/windows_and_extraction.py
"""

from __future__ import annotations

from facteval.corpus import Prompt, PromptKind
from facteval.extraction import assemble_extraction_prompt, extract_window
from facteval.segmenter import build_windows, make_response, render_window


class CannedExtractor:
    """Replies with bullets for one focus sentence and a sentinel otherwise."""

    name = "canned-extractor"
    calls = 0

    def complete(self, prompt_text: str) -> str:
        self.calls += 1
        if "<SOS>Lovelace was born in London in 1815.<EOS>" in prompt_text:
            return (
                "- Ada Lovelace was born in 1815.\n"
                "- Ada Lovelace was born in London.\n"
            )
        return "No verifiable claim."


PROMPT = Prompt(
    id="demo-bio",
    domain="bio",
    kind=PromptKind.NONQA,
    text="Write a short biography of Ada Lovelace.",
)
TEXT = (
    "Ada Lovelace was an English mathematician.\n\n"
    "Lovelace was born in London in 1815. "
    "Her father was the poet Lord Byron. "
    "She studied mathematics from an early age. "
    "In 1843 she translated an article about the Analytical Engine. "
    "Her notes include what many call the first computer program. "
    "She died in 1852 at the age of 36."
)


def main() -> None:
    response = make_response(PROMPT.id, "demo-model", TEXT)
    print(f"response has {len(response.sentences)} sentences in "
          f"{len(response.paragraphs)} paragraphs\n")

    windows = build_windows(response, PROMPT)
    for window in windows:
        anchor = f" anchor={window.anchor!r}" if window.anchor else ""
        print(f"window {window.index}:{anchor}")
        print(f"  {render_window(window)}")
    print()

    # The second paragraph has more than five sentences, so every window
    # after its first carries the paragraph opener as an anchor.
    sample = windows[2]
    prompt_text = assemble_extraction_prompt(
        render_window(sample), sample.focus, PROMPT.kind
    )
    print("extraction prompt for window 2:")
    print("-" * 60)
    print(prompt_text)
    print("-" * 60)

    backend = CannedExtractor()
    for window in windows:
        result = extract_window(window, PROMPT.kind, backend)
        if result.claims:
            print(f"window {window.index} claims: {result.claims}")
        elif result.is_no_claim:
            print(f"window {window.index}: no verifiable claim")
    print(f"\nbackend calls: {backend.calls}")


if __name__ == "__main__":
    main()
