"""Show how evidence judgments become labels and labels become scores.

    python3 demos/label_algebra_and_scoring.py
"""

from __future__ import annotations

from fractions import Fraction

from facteval.analysis import ModelDomainMatrix, render_leaderboard
from facteval.scoring import compute_k, f1_at_k
from facteval.verification import (
    Judgment,
    PartJudgmentMatrix,
    classify_by_algebra,
    collapse,
    to_ternary,
)

S = Judgment.SUPPORTS
C = Judgment.CONTRADICTS
N = Judgment.NEITHER


def show_label(description: str, parts: list[str], rows: list[list[Judgment]]) -> None:
    matrix = PartJudgmentMatrix(parts=parts, judgments=rows)
    label = classify_by_algebra(matrix)
    print(f"{description}:")
    for part, row in zip(parts, rows):
        print(f"  {part}: {[j.value for j in row]}")
    print(f"  -> {label.value} (ternary {to_ternary(label).value},"
          f" binary {collapse(label).value})\n")


def main() -> None:
    print("== evidence judgment algebra ==\n")
    show_label(
        "every part supported somewhere, nothing contradicts",
        ["born in 1815", "born in London"],
        [[S, N, N], [N, S, N]],
    )
    show_label(
        "one part contradicted and never supported",
        ["born in 1815", "born in Paris"],
        [[S, N, N], [N, C, N]],
    )
    show_label(
        "conflicting evidence on the same part",
        ["died in 1852"],
        [[S, C, N]],
    )
    show_label(
        "no evidence bears on the claim at all",
        ["wrote the first program"],
        [[N, N, N]],
    )

    print("== response scoring ==\n")
    counts = [12, 7, 9, 15, 11]
    k = compute_k(counts)
    print(f"claim counts per response in this domain: {counts}")
    print(f"pooled K (median): {k}\n")
    for claims, supported in ((12, 11), (12, 4), (30, 11), (3, 3)):
        score = f1_at_k(claims, supported, k)
        print(f"  {supported:>2} of {claims:>2} claims supported"
              f" -> F1@{k} = {score} ~ {float(score):.4f}")

    print("\n== leaderboard over two domains ==\n")
    matrix = ModelDomainMatrix(
        domains=["bio", "eli5"],
        models=["large-chat", "small-chat"],
        scores=[
            [float(f1_at_k(12, 11, k)), 0.81],
            [float(f1_at_k(12, 4, k)), 0.55],
        ],
    )
    print(render_leaderboard(matrix))

    # K rejects a domain where the median response makes no claims.
    try:
        compute_k([0, 0, 0, 2])
    except Exception as exc:
        print(f"degenerate domain is rejected: {exc}")


if __name__ == "__main__":
    main()
