"""Presentation helpers shared by the CLI and the HTTP service.

All numeric output is fixed at three decimal places with half-up
rounding, independent of locale, so byte-for-byte comparisons of
rendered results are meaningful.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

from .engine import DiagnosisResult
from .knowledge_base import KnowledgeBase

_Q3 = Decimal("0.001")


def round3(x: float) -> float:
    """Half-up rounding to three decimals (round() would round half-even)."""
    return float(Decimal(repr(x)).quantize(_Q3, rounding=ROUND_HALF_UP))


def fmt3(x: float) -> str:
    return str(Decimal(repr(x)).quantize(_Q3, rounding=ROUND_HALF_UP))


def result_document(kb: KnowledgeBase, results: list[DiagnosisResult]) -> list[dict]:
    """JSON-ready ranked results with all numbers rounded to 3 decimals."""
    return [
        {
            "disease_id": r.disease_id,
            "display_name": kb.diseases[r.disease_id].display_name,
            "final_probability": round3(r.final_probability),
            "label": r.label,
            "memberships": {name: round3(m) for name, m in r.memberships.items()},
            "confidence": round3(r.confidence),
            "rank": r.rank,
        }
        for r in results
    ]


def results_table(kb: KnowledgeBase, results: list[DiagnosisResult]) -> str:
    """Deterministic plain-text ranking shown by the CLI."""
    rows = [("rank", "disease", "probability", "label", "confidence")]
    for r in results:
        rows.append(
            (
                str(r.rank),
                kb.diseases[r.disease_id].display_name,
                fmt3(r.final_probability),
                r.label,
                fmt3(r.confidence),
            )
        )
    widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [value.ljust(widths[col]) for col, value in enumerate(row)]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def confidence_chart_csv(kb: KnowledgeBase, drop_per_test: float = 15.0) -> str:
    """Per-disease system vs. full confidence, CSV with a header row.

    ``full_confidence`` is the constant 100 a diagnosis would carry once
    every required pathological test has been observed.
    """
    from .engine import confidence  # local import keeps module deps one-way

    lines = ["disease_id,system_confidence,full_confidence"]
    for did in kb.diseases:
        lines.append(f"{did},{fmt3(confidence(kb, did, drop_per_test))},{fmt3(100.0)}")
    return "\n".join(lines) + "\n"
