"""Cross-domain analysis: leaderboards and rank correlations.

Kendall's tau is computed with the tie-corrected (tau-b) definition via
exact integer pair counting; ties are common in score tables rounded to
one decimal, and the uncorrected variant visibly understates agreement
there.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

from .corpus import atomic_write_text

AVG_LABEL = "Avg."


def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float:
    """Tie-corrected Kendall rank correlation (tau-b) of two score lists.

    Pair counting is exact integer arithmetic; only the final square root
    leaves the rationals. Lists where either side is fully tied have an
    undefined tau and raise ValueError, as do mismatched or short inputs.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 2:
        raise ValueError("need at least two paired observations")
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = (x[i] > x[j]) - (x[i] < x[j])
            dy = (y[i] > y[j]) - (y[i] < y[j])
            product = dx * dy
            if product > 0:
                concordant += 1
            elif product < 0:
                discordant += 1
    n0 = n * (n - 1) // 2
    n1 = _tie_pairs(x)
    n2 = _tie_pairs(y)
    denom = (n0 - n1) * (n0 - n2)
    if denom == 0:
        raise ValueError("tau is undefined when either list is fully tied")
    return (concordant - discordant) / math.sqrt(denom)


def _tie_pairs(values: Sequence[float]) -> int:
    counts: dict[float, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return sum(c * (c - 1) // 2 for c in counts.values())


@dataclass
class ModelDomainMatrix:
    """Dense score matrix: one row per model, one column per domain.

    Row averages are always recomputed from the scores, never supplied.
    """

    models: list[str]
    domains: list[str]
    scores: list[list[float]]

    def __post_init__(self) -> None:
        if len(self.scores) != len(self.models):
            raise ValueError("one score row required per model")
        for model, row in zip(self.models, self.scores):
            if len(row) != len(self.domains):
                raise ValueError(f"model {model!r} row does not cover every domain")
        if len(set(self.models)) != len(self.models):
            raise ValueError("duplicate model ids")
        if len(set(self.domains)) != len(self.domains):
            raise ValueError("duplicate domains")

    @property
    def averages(self) -> list[float]:
        return [sum(row) / len(row) for row in self.scores]

    def column(self, domain: str) -> list[float]:
        idx = self.domains.index(domain)
        return [row[idx] for row in self.scores]

    @classmethod
    def from_records(cls, records: Iterable[dict[str, Any]]) -> "ModelDomainMatrix":
        """Build from {model, domain, score} records; cells must be unique
        and every (model, domain) pair present."""
        cells: dict[tuple[str, str], float] = {}
        models: list[str] = []
        domains: list[str] = []
        for rec in records:
            key = (rec["model"], rec["domain"])
            if key in cells:
                raise ValueError(f"duplicate score for model {key[0]!r} in domain {key[1]!r}")
            cells[key] = float(rec["score"])
            if key[0] not in models:
                models.append(key[0])
            if key[1] not in domains:
                domains.append(key[1])
        missing = [
            (m, d) for m in models for d in domains if (m, d) not in cells
        ]
        if missing:
            raise ValueError(f"missing scores for {missing}")
        return cls(
            models=models,
            domains=domains,
            scores=[[cells[(m, d)] for d in domains] for m in models],
        )


def correlation_matrix(matrix: ModelDomainMatrix) -> tuple[list[str], list[list[float]]]:
    """Pairwise tau-b between domain columns and the per-model average.

    Returns (labels, grid) where labels are the domains plus "Avg."; the
    grid is symmetric with a unit diagonal.
    """
    columns = [matrix.column(d) for d in matrix.domains] + [matrix.averages]
    labels = list(matrix.domains) + [AVG_LABEL]
    size = len(columns)
    grid = [[1.0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            tau = kendall_tau(columns[i], columns[j])
            grid[i][j] = tau
            grid[j][i] = tau
    return labels, grid


def leaderboard_order(matrix: ModelDomainMatrix) -> list[int]:
    """Row indices sorted by average descending, ties by model id."""
    averages = matrix.averages
    return sorted(
        range(len(matrix.models)),
        key=lambda i: (-averages[i], matrix.models[i]),
    )


def leaderboard_records(matrix: ModelDomainMatrix) -> list[dict[str, Any]]:
    averages = matrix.averages
    records = []
    for rank, i in enumerate(leaderboard_order(matrix), start=1):
        rec: dict[str, Any] = {"rank": rank, "model": matrix.models[i]}
        for d, score in zip(matrix.domains, matrix.scores[i]):
            rec[d] = score
        rec[AVG_LABEL] = averages[i]
        records.append(rec)
    return records


def _pct(value: float) -> str:
    return f"{100 * value:.1f}"


def render_leaderboard(matrix: ModelDomainMatrix) -> str:
    """Aligned text leaderboard with one-decimal percentage scores."""
    headers = ["model"] + list(matrix.domains) + [AVG_LABEL]
    rows = []
    averages = matrix.averages
    for i in leaderboard_order(matrix):
        rows.append(
            [matrix.models[i]]
            + [_pct(s) for s in matrix.scores[i]]
            + [_pct(averages[i])]
        )
    widths = [
        max(len(headers[c]), *(len(row[c]) for row in rows)) if rows else len(headers[c])
        for c in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[c]) if c == 0 else h.rjust(widths[c]) for c, h in enumerate(headers))
    ]
    for row in rows:
        lines.append(
            "  ".join(
                cell.ljust(widths[c]) if c == 0 else cell.rjust(widths[c])
                for c, cell in enumerate(row)
            )
        )
    return "\n".join(lines) + "\n"


def write_leaderboard_csv(matrix: ModelDomainMatrix, path: Path | str) -> Path:
    columns = ["rank", "model"] + list(matrix.domains) + [AVG_LABEL]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for rec in leaderboard_records(matrix):
        writer.writerow(rec)
    path = Path(path)
    atomic_write_text(path, buffer.getvalue())
    return path


def write_correlation_csv(matrix: ModelDomainMatrix, path: Path | str) -> Path:
    labels, grid = correlation_matrix(matrix)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([""] + labels)
    for label, row in zip(labels, grid):
        writer.writerow([label] + list(row))
    path = Path(path)
    atomic_write_text(path, buffer.getvalue())
    return path
