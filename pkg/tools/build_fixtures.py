"""Regenerate the frozen test fixtures under tests/fixtures/ and tests/golden/.

The fixture data is authored here as plain tables (prompt texts, response
texts, per-window extraction outputs, per-claim verdicts and search results).
The script runs the real prompt-assembly code to key the mock transcripts, so
the fixtures stay in sync with the templates whenever they are regenerated.

Run from the repository root:

    python tools/build_fixtures.py

The script asserts the design invariants (claim counts, supported counts,
expected medians) before writing anything, so a bad edit fails loudly instead
of freezing a broken fixture.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from facteval.backends import ChatBackend, sha256_hex
from facteval.corpus import Prompt, PromptKind, dumps_record
from facteval.extraction import (
    NO_CLAIM_SENTINEL,
    assemble_extraction_prompt,
    extract_claims,
)
from facteval.retrieval import EvidenceList, render_evidence, SearchResult
from facteval.segmenter import build_windows, make_response, render_window
from facteval.verification import (
    FieldOrder,
    LabelMode,
    assemble_verification_prompt,
)

FIXTURES = REPO / "tests" / "fixtures"
GOLDEN = REPO / "tests" / "golden"


class TableBackend(ChatBackend):
    """In-memory backend mapping exact prompt text to a scripted reply."""

    def __init__(self, table: dict[str, str]) -> None:
        self.table = table

    @property
    def name(self) -> str:
        return "fixture-builder"

    def complete(self, prompt: str) -> str:
        return self.table[prompt]


def bullets(*claims: str) -> str:
    return "\n".join(f"- {c}" for c in claims)


def write_json(path: Path, payload: object) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def write_jsonl(path: Path, records: list[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        "".join(dumps_record(r) + "\n" for r in records), encoding="utf-8"
    )


# ---------------------------------------------------------------------------
# End-to-end fixture: two mock models, two domains, five prompts per domain.
# ---------------------------------------------------------------------------

E2E_PROMPTS = [
    ("b1", "bio", "nonqa", "Write a short biography of Ada Lovelace."),
    ("b2", "bio", "nonqa", "Write a short biography of Alan Turing."),
    ("b3", "bio", "nonqa", "Write a short biography of Grace Hopper."),
    ("b4", "bio", "nonqa", "Write a short biography of Katherine Johnson."),
    ("b5", "bio", "nonqa", "Write a short biography of Carl Sagan."),
    ("e1", "eli5", "qa", "Why is the sky blue?"),
    ("e2", "eli5", "qa", "How do magnets work?"),
    ("e3", "eli5", "qa", "Why do onions make you cry?"),
    ("e4", "eli5", "qa", "How does yeast make bread rise?"),
    ("e5", "eli5", "qa", "Why is the ocean salty?"),
]

# Response text plus one extraction output per sentence window.  "none" means
# the no-claim sentinel.  The duplicated bullet in alpha/b1 exercises the
# exact-text dedup in extract_claims.
E2E_RESPONSES: dict[tuple[str, str], tuple[str, list[str]]] = {
    ("alpha", "b1"): (
        "Ada Lovelace was an English mathematician born in 1815. "
        "She collaborated with Charles Babbage on the Analytical Engine. "
        "Many people admire her story today.",
        [
            bullets("Ada Lovelace was born in 1815."),
            bullets(
                "Ada Lovelace wrote the first computer program.",
                "Ada Lovelace worked with Charles Babbage.",
                "Ada Lovelace was born in 1815.",
            ),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("alpha", "b2"): (
        "Alan Turing was a British mathematician born in 1912. "
        "His work shaped modern computing. "
        "Turing died in 1954 after a remarkable career.",
        [
            bullets("Alan Turing was born in 1912."),
            NO_CLAIM_SENTINEL,
            bullets("Alan Turing died in 1954."),
        ],
    ),
    ("alpha", "b3"): (
        "Grace Hopper was born in 1906 and served as a rear admiral. "
        "She helped popularize the term debugging. "
        "Her legacy inspires programmers everywhere.",
        [
            bullets(
                "Grace Hopper was born in 1906.",
                "Grace Hopper was a United States Navy rear admiral.",
            ),
            bullets("Grace Hopper popularized the term debugging."),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("alpha", "b4"): (
        "Katherine Johnson was born in 1918 in West Virginia. "
        "At NASA she calculated orbital trajectories by hand. "
        "She later received the Presidential Medal of Freedom.",
        [
            bullets("Katherine Johnson was born in 1918."),
            bullets(
                "Katherine Johnson worked at NASA.",
                "Katherine Johnson calculated orbital trajectories.",
            ),
            bullets("Katherine Johnson received the Presidential Medal of Freedom."),
        ],
    ),
    ("alpha", "b5"): (
        "Carl Sagan was an American astronomer born in 1934. "
        "He hosted the television series Cosmos. "
        "Audiences loved his sense of wonder.",
        [
            bullets("Carl Sagan was born in 1934."),
            bullets("Carl Sagan hosted Cosmos."),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("beta", "b1"): (
        "Ada Lovelace, born in 1815, is a celebrated figure. "
        "Some say she invented the telephone. "
        "Her notes are still widely read.",
        [
            bullets("Ada Lovelace was born in 1815."),
            bullets("Ada Lovelace invented the telephone."),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("beta", "b2"): (
        "Alan Turing is remembered as a pioneer. "
        "He was reportedly born in 1913. "
        "People still debate his favorite puzzle.",
        [
            NO_CLAIM_SENTINEL,
            bullets("Alan Turing was born in 1913."),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("beta", "b3"): (
        "Grace Hopper, born in 1906, had a storied career. "
        "Legend holds that she invented COBOL entirely alone. "
        "Sailors tell her stories fondly.",
        [
            bullets("Grace Hopper was born in 1906."),
            bullets("Grace Hopper invented COBOL alone."),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("beta", "b4"): (
        "Katherine Johnson was born in 1918. "
        "She spent decades at NASA. "
        "One tall tale claims she was born on the moon.",
        [
            bullets("Katherine Johnson was born in 1918."),
            bullets("Katherine Johnson worked at NASA."),
            bullets("Katherine Johnson was born on the moon."),
        ],
    ),
    ("beta", "b5"): (
        "Carl Sagan was born in 1935 according to this account. "
        "He loved the stars. "
        "His voice remains unmistakable.",
        [
            bullets("Carl Sagan was born in 1935."),
            NO_CLAIM_SENTINEL,
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("alpha", "e1"): (
        "Air molecules scatter blue light much more than red light. "
        "That scattered blue light arrives from every part of the sky.",
        [
            bullets(
                "Rayleigh scattering affects short wavelengths more.",
                "The sky appears blue because blue light is scattered more.",
            ),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("alpha", "e2"): (
        "Every magnet has a north pole and a south pole. "
        "Fields from aligned electrons add up inside the material.",
        [
            bullets("Magnets have two poles."),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("alpha", "e3"): (
        "Cutting an onion releases syn-propanethial-S-oxide. "
        "The vapor reacts in your eyes and forms sulfuric acid.",
        [
            bullets("Onions release syn-propanethial-S-oxide when cut."),
            bullets("Onion vapors form sulfuric acid in the eyes."),
        ],
    ),
    ("alpha", "e4"): (
        "Yeast ferments the sugars in dough and releases carbon dioxide. "
        "The gas bubbles collapse the dough into a dense loaf.",
        [
            bullets(
                "Yeast ferments sugars.",
                "Fermentation produces carbon dioxide.",
            ),
            bullets("Carbon dioxide bubbles collapse bread dough."),
        ],
    ),
    ("alpha", "e5"): (
        "Rivers dissolve minerals from rock and carry them to the sea. "
        "Sodium and chloride build up because they stay dissolved.",
        [
            bullets("Rivers carry dissolved salts to the ocean."),
            bullets(
                "Sodium and chloride are the most common ions in seawater."
            ),
        ],
    ),
    ("beta", "e1"): (
        "The sky simply reflects the ocean below it. "
        "That is why both look blue on a sunny day.",
        [
            bullets("The sky is blue because it reflects the ocean."),
            NO_CLAIM_SENTINEL,
        ],
    ),
    ("beta", "e2"): (
        "Think of tiny arrows lining up inside the metal. "
        "Every magnet ends up with exactly two poles.",
        [
            NO_CLAIM_SENTINEL,
            bullets("Magnets have two poles."),
        ],
    ),
    ("beta", "e3"): (
        "Chopping an onion lets a volatile gas escape. "
        "Onions are technically a fruit, which surprises people.",
        [
            bullets("Cutting onions releases a volatile gas."),
            bullets("Onions are a type of fruit."),
        ],
    ),
    ("beta", "e4"): (
        "Yeast is a tiny fungus that eats sugar. "
        "The oxygen it makes pushes the dough upward.",
        [
            bullets("Yeast is a fungus."),
            bullets("Bread rises because of oxygen production."),
        ],
    ),
    ("beta", "e5"): (
        "Seawater is full of dissolved sodium chloride. "
        "Tasting it makes that obvious.",
        [
            bullets("Seawater contains dissolved sodium chloride."),
            NO_CLAIM_SENTINEL,
        ],
    ),
}

# Verdict script per claim text.  Values: "sup", "unsup", or "garbled" (the
# verifier reply has no ### span, so parsing fails and the claim is recorded
# as Unsupported with parse_failed set).
E2E_VERDICTS: dict[str, str] = {
    "Ada Lovelace was born in 1815.": "sup",
    "Ada Lovelace wrote the first computer program.": "unsup",
    "Ada Lovelace worked with Charles Babbage.": "sup",
    "Alan Turing was born in 1912.": "sup",
    "Alan Turing died in 1954.": "unsup",
    "Grace Hopper was born in 1906.": "sup",
    "Grace Hopper was a United States Navy rear admiral.": "sup",
    "Grace Hopper popularized the term debugging.": "sup",
    "Katherine Johnson was born in 1918.": "sup",
    "Katherine Johnson worked at NASA.": "sup",
    "Katherine Johnson calculated orbital trajectories.": "unsup",
    "Katherine Johnson received the Presidential Medal of Freedom.": "unsup",
    "Carl Sagan was born in 1934.": "sup",
    "Carl Sagan hosted Cosmos.": "unsup",
    "Ada Lovelace invented the telephone.": "unsup",
    "Alan Turing was born in 1913.": "unsup",
    "Grace Hopper invented COBOL alone.": "unsup",
    "Katherine Johnson was born on the moon.": "unsup",
    "Carl Sagan was born in 1935.": "unsup",
    "Rayleigh scattering affects short wavelengths more.": "sup",
    "The sky appears blue because blue light is scattered more.": "sup",
    "Magnets have two poles.": "sup",
    "Onions release syn-propanethial-S-oxide when cut.": "sup",
    "Onion vapors form sulfuric acid in the eyes.": "unsup",
    "Yeast ferments sugars.": "sup",
    "Fermentation produces carbon dioxide.": "sup",
    "Carbon dioxide bubbles collapse bread dough.": "unsup",
    "Rivers carry dissolved salts to the ocean.": "sup",
    "Sodium and chloride are the most common ions in seawater.": "sup",
    "The sky is blue because it reflects the ocean.": "unsup",
    "Cutting onions releases a volatile gas.": "sup",
    "Onions are a type of fruit.": "garbled",
    "Yeast is a fungus.": "sup",
    "Bread rises because of oxygen production.": "unsup",
    "Seawater contains dissolved sodium chloride.": "sup",
}

BINARY_REPLY = {
    "sup": "###Supported.###",
    "unsup": "###Unsupported.###",
    "garbled": "The evidence is thin, so I will not commit to a label here.",
}
TERNARY_REPLY = {
    "sup": "###Supported.###",
    "unsup": "###Contradicted.###",
    "garbled": "The evidence is thin, so I will not commit to a label here.",
}

# Design invariants, checked before anything is written and re-checked by the
# acceptance tests against pipeline output.
EXPECTED_CLAIMS = {
    ("alpha", "b1"): 3, ("alpha", "b2"): 2, ("alpha", "b3"): 3,
    ("alpha", "b4"): 4, ("alpha", "b5"): 2,
    ("beta", "b1"): 2, ("beta", "b2"): 1, ("beta", "b3"): 2,
    ("beta", "b4"): 3, ("beta", "b5"): 1,
    ("alpha", "e1"): 2, ("alpha", "e2"): 1, ("alpha", "e3"): 2,
    ("alpha", "e4"): 3, ("alpha", "e5"): 2,
    ("beta", "e1"): 1, ("beta", "e2"): 1, ("beta", "e3"): 2,
    ("beta", "e4"): 2, ("beta", "e5"): 1,
}
EXPECTED_SUPPORTED = {
    ("alpha", "b1"): 2, ("alpha", "b2"): 1, ("alpha", "b3"): 3,
    ("alpha", "b4"): 2, ("alpha", "b5"): 1,
    ("beta", "b1"): 1, ("beta", "b2"): 0, ("beta", "b3"): 1,
    ("beta", "b4"): 2, ("beta", "b5"): 0,
    ("alpha", "e1"): 2, ("alpha", "e2"): 1, ("alpha", "e3"): 1,
    ("alpha", "e4"): 2, ("alpha", "e5"): 2,
    ("beta", "e1"): 0, ("beta", "e2"): 1, ("beta", "e3"): 1,
    ("beta", "e4"): 1, ("beta", "e5"): 1,
}


def search_results_for(text: str) -> list[dict]:
    """Deterministic mock organic results for one claim query."""
    if text == "Katherine Johnson was born on the moon.":
        return []
    slug = "".join(ch for ch in text.lower() if ch.isalnum() or ch == " ")
    slug = "-".join(slug.split())[:60]
    results = [
        {
            "title": f"Reference: {text.rstrip('.')}",
            "snippet": f"Background reading about the statement '{text}'",
            "link": f"https://reference.example/{slug}",
        }
    ]
    if text == "Carl Sagan hosted Cosmos.":
        results.append(
            {
                "title": "Cosmos (TV series)\nWikipedia",
                "snippet": "Cosmos aired in 1980.\nIt was widely watched.",
                "link": "https://encyclopedia.example/cosmos",
            }
        )
    return results


def build_corpus_fixture(
    out_dir: Path,
    prompt_rows: list[tuple[str, str, str, str]],
    response_table: dict[tuple[str, str], tuple[str, list[str]]],
    verdicts: dict[str, str],
    search_table: dict[str, list[dict]],
) -> dict[tuple[str, str], list[str]]:
    """Write one pipeline input fixture and return claims per response."""
    prompts = {
        pid: Prompt(id=pid, domain=domain, kind=PromptKind(kind), text=text)
        for pid, domain, kind, text in prompt_rows
    }
    write_jsonl(
        out_dir / "prompts.jsonl",
        [prompts[pid].to_record() for pid, _, _, _ in prompt_rows],
    )
    response_records = []
    extraction_map: dict[str, str] = {}
    claims_by_response: dict[tuple[str, str], list[str]] = {}

    for (model_id, prompt_id), (text, outputs) in response_table.items():
        prompt = prompts[prompt_id]
        response = make_response(prompt_id, model_id, text)
        response_records.append(
            {"prompt_id": prompt_id, "model_id": model_id, "text": text}
        )
        windows = build_windows(response, prompt)
        if len(windows) != len(outputs):
            raise SystemExit(
                f"{model_id}/{prompt_id}: {len(windows)} windows but "
                f"{len(outputs)} scripted outputs"
            )
        for window, output in zip(windows, outputs):
            rendered = render_window(window)
            full = assemble_extraction_prompt(
                rendered, window.focus, prompt.kind
            )
            extraction_map[full] = output
        backend = TableBackend(extraction_map)
        claims = extract_claims(response, prompt, backend)
        claims_by_response[(model_id, prompt_id)] = [c.text for c in claims]

    response_records.sort(key=lambda r: (r["model_id"], r["prompt_id"]))
    write_jsonl(out_dir / "responses.jsonl", response_records)

    all_claim_texts = sorted(
        {t for texts in claims_by_response.values() for t in texts}
    )
    missing = [t for t in all_claim_texts if t not in verdicts]
    if missing:
        raise SystemExit(f"claims without scripted verdicts: {missing}")

    verification_map: dict[str, str] = {}
    for text in all_claim_texts:
        organic = search_table[text]
        evidence = render_evidence(
            EvidenceList(
                claim_id="builder",
                results=[
                    SearchResult(
                        rank=i + 1,
                        title=r["title"],
                        snippet=r["snippet"],
                        link=r["link"],
                    )
                    for i, r in enumerate(organic)
                ],
                retrieved_at="1970-01-01T00:00:00Z",
                cache_hit=False,
            )
        )
        for mode, replies in (
            (LabelMode.BINARY, BINARY_REPLY),
            (LabelMode.TERNARY, TERNARY_REPLY),
        ):
            full = assemble_verification_prompt(
                text, evidence, mode, FieldOrder.STANDARD
            )
            verification_map[full] = replies[verdicts[text]]

    llm_map = dict(extraction_map)
    llm_map.update(verification_map)
    write_json(
        out_dir / "llm_transcript.json",
        {"responses": {sha256_hex(k): v for k, v in llm_map.items()}},
    )
    write_json(
        out_dir / "search_transcript.json",
        {
            "responses": {
                sha256_hex(t): {"organic": search_table[t]}
                for t in all_claim_texts
            }
        },
    )
    return claims_by_response


def build_e2e() -> None:
    out = FIXTURES / "e2e"
    search_table = {t: search_results_for(t) for t in E2E_VERDICTS}
    claims = build_corpus_fixture(
        out, E2E_PROMPTS, E2E_RESPONSES, E2E_VERDICTS, search_table
    )
    for key, texts in claims.items():
        if len(texts) != EXPECTED_CLAIMS[key]:
            raise SystemExit(
                f"{key}: designed {EXPECTED_CLAIMS[key]} claims, got "
                f"{len(texts)}: {texts}"
            )
        supported = sum(1 for t in texts if E2E_VERDICTS[t] == "sup")
        if supported != EXPECTED_SUPPORTED[key]:
            raise SystemExit(
                f"{key}: designed {EXPECTED_SUPPORTED[key]} supported, got "
                f"{supported}"
            )
    counts = sorted(
        len(v) for (m, p), v in claims.items() if p.startswith("b")
    )
    assert counts == [1, 1, 2, 2, 2, 2, 3, 3, 3, 4], counts
    counts = sorted(
        len(v) for (m, p), v in claims.items() if p.startswith("e")
    )
    assert counts == [1, 1, 1, 1, 2, 2, 2, 2, 2, 3], counts
    print(f"e2e fixture written to {out} "
          f"({sum(len(v) for v in claims.values())} claim instances, "
          f"{len({t for v in claims.values() for t in v})} unique texts)")


# ---------------------------------------------------------------------------
# Fiction fixture: almost every window yields no claim.
# ---------------------------------------------------------------------------


def fiction_sentences(tag: str) -> str:
    parts = []
    for i in range(1, 51):
        parts.append(f"In chapter {i} of {tag} the hero wanders onward.")
    return " ".join(parts)


FICTION_PROMPTS = [
    ("f1", "fiction", "nonqa", "Write a fantasy story about a wandering hero."),
    ("f2", "fiction", "nonqa", "Write a gothic tale set in an old manor."),
]

FICTION_CLAIM_WINDOWS = {
    ("gamma", "f1"): {9: bullets("The novel Dune was published in 1965.")},
    ("gamma", "f2"): {
        4: bullets("Frankenstein was written by Mary Shelley."),
        29: bullets("Dracula was published in 1897."),
    },
}

FICTION_VERDICTS = {
    "The novel Dune was published in 1965.": "sup",
    "Frankenstein was written by Mary Shelley.": "sup",
    "Dracula was published in 1897.": "sup",
}


def build_fiction() -> None:
    out = FIXTURES / "fiction"
    responses = {}
    for (model_id, prompt_id), claim_windows in FICTION_CLAIM_WINDOWS.items():
        text = fiction_sentences(prompt_id)
        outputs = [
            claim_windows.get(i, NO_CLAIM_SENTINEL) for i in range(50)
        ]
        responses[(model_id, prompt_id)] = (text, outputs)
    search_table = {t: search_results_for(t) for t in FICTION_VERDICTS}
    claims = build_corpus_fixture(
        out, FICTION_PROMPTS, responses, FICTION_VERDICTS, search_table
    )
    counts = sorted(len(v) for v in claims.values())
    assert counts == [1, 2], counts
    total_windows = 100
    claim_windows = sum(len(w) for w in FICTION_CLAIM_WINDOWS.values())
    no_claim_share = Fraction(total_windows - claim_windows, total_windows)
    assert no_claim_share == Fraction(97, 100), no_claim_share
    print(f"fiction fixture written to {out} "
          f"(no-claim windows: {float(no_claim_share):.0%})")


# ---------------------------------------------------------------------------
# Golden renders: twelve windows plus the assembled prompt texts.
# ---------------------------------------------------------------------------

GOLDEN_QA_PROMPT = Prompt(
    id="g-qa", domain="eli5", kind=PromptKind.QA, text="Why is the sky blue?"
)
GOLDEN_QA_TEXT = (
    "The sky looks blue on clear days. "
    "Sunlight contains every visible wavelength. "
    "Air molecules scatter short wavelengths strongly. "
    "Blue light reaches your eyes from all directions. "
    "Sunsets turn red because the light path lengthens."
)
GOLDEN_NONQA_PROMPT = Prompt(
    id="g-bio",
    domain="bio",
    kind=PromptKind.NONQA,
    text="Write a short biography of Ada Lovelace.",
)
GOLDEN_NONQA_TEXT = (
    "Ada Lovelace was an English mathematician.\n\n"
    "Lovelace was born in London in 1815. "
    "Her father was the poet Lord Byron. "
    "She studied mathematics from an early age. "
    "In 1843 she translated an article about the Analytical Engine. "
    "Her notes include what many call the first computer program. "
    "She died in 1852 at the age of 36."
)

GOLDEN_CLAIM = "Ada Lovelace was born in 1815."
GOLDEN_EVIDENCE = [
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
]


def build_goldens() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    windows = []
    for prompt, text in (
        (GOLDEN_QA_PROMPT, GOLDEN_QA_TEXT),
        (GOLDEN_NONQA_PROMPT, GOLDEN_NONQA_TEXT),
    ):
        response = make_response(prompt.id, "golden-model", text)
        for window in build_windows(response, prompt):
            windows.append(
                {
                    "prompt_id": prompt.id,
                    "kind": prompt.kind.value,
                    "index": window.index,
                    "focus": window.focus,
                    "anchor": window.anchor,
                    "left_context": list(window.left_context),
                    "right_context": list(window.right_context),
                    "render": render_window(window),
                }
            )
    if len(windows) != 12:
        raise SystemExit(f"expected 12 golden windows, got {len(windows)}")
    write_json(GOLDEN / "windows.json", windows)

    prompt_dir = GOLDEN / "extraction_prompts"
    prompt_dir.mkdir(parents=True, exist_ok=True)
    for i, row in enumerate(windows):
        kind = PromptKind(row["kind"])
        full = assemble_extraction_prompt(row["render"], row["focus"], kind)
        (prompt_dir / f"window_{i:02d}.txt").write_text(full, encoding="utf-8")

    evidence_text = render_evidence(
        EvidenceList(
            claim_id="golden",
            results=GOLDEN_EVIDENCE,
            retrieved_at="1970-01-01T00:00:00Z",
            cache_hit=False,
        )
    )
    (GOLDEN / "evidence_render.txt").write_text(evidence_text, encoding="utf-8")
    for mode in LabelMode:
        for order in FieldOrder:
            full = assemble_verification_prompt(
                GOLDEN_CLAIM, evidence_text, mode, order
            )
            name = f"verification_{mode.value}_{order.value}.txt"
            (GOLDEN / name).write_text(full, encoding="utf-8")
    print(f"golden renders written to {GOLDEN}")


def main() -> None:
    build_e2e()
    build_fiction()
    build_goldens()


if __name__ == "__main__":
    main()
