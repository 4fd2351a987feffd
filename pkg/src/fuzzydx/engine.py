"""Pure scoring engine: weighted symptom scores, catalyst rule, fuzzy output.

Every operation here is a pure function of (kb, answers, config); nothing
is cached or mutated, so concurrent calls against a shared KB are safe.

The per-disease probability is a normalized weighted sum:

    temp = (raw_score - major_penalty - min_th) / (max_th - min_th) * 100

where ``raw_score`` adds the weight of each selected symptom at its
answered level and ``major_penalty`` subtracts the best-case weight of
every must-have symptom the user did not select. History (catalyst)
points are then added to the single top-scoring disease, and the result
is clamped to [0, 100].
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import MalformedAnswersError
from .knowledge_base import FuzzyLabelConfig, KnowledgeBase, max_level_weight


@dataclass
class AnswerSet:
    """A patient's accumulated answers.

    ``level_answers`` must cover ``selected_symptom_ids`` exactly by the
    time a diagnosis is requested; while a session is underway it may
    lag behind.
    """

    selected_symptom_ids: set[str] = field(default_factory=set)
    level_answers: dict[str, str] = field(default_factory=dict)
    catalyst_answers: dict[str, bool] = field(default_factory=dict)

    def copy(self) -> "AnswerSet":
        return AnswerSet(
            selected_symptom_ids=set(self.selected_symptom_ids),
            level_answers=dict(self.level_answers),
            catalyst_answers=dict(self.catalyst_answers),
        )


@dataclass(frozen=True)
class EngineConfig:
    """Tunables that are deliberately not part of the knowledge base."""

    filter_threshold: float = 5.0  # hide results below this percentage; 0 disables
    drop_per_test: float = 15.0    # confidence points lost per required pathological test


@dataclass(frozen=True)
class DiagnosisResult:
    disease_id: str
    raw_score: float
    penalty: float
    temp_probability: float     # unclamped, before catalyst points
    catalyst_added: float
    final_probability: float    # clamp(temp + catalyst_added, 0, 100)
    label: str
    memberships: dict[str, float]
    confidence: float
    rank: int


def _clamp(x: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, x))


def check_answers(kb: KnowledgeBase, area_id: str, answers: AnswerSet) -> None:
    """Raise ``MalformedAnswersError`` unless the answers are complete.

    Complete means: every selected symptom belongs to the area and has a
    level answer naming one of its levels, no level answer exists for an
    unselected symptom, and every catalyst answer references a question
    defined in the KB.
    """
    area = kb.area(area_id)
    area_symptoms = set(area.symptom_ids)
    for sid in answers.selected_symptom_ids:
        if sid not in area_symptoms:
            raise MalformedAnswersError(
                f"symptom {sid!r} is not part of area {area_id!r}")
    for sid, level in answers.level_answers.items():
        if sid not in answers.selected_symptom_ids:
            raise MalformedAnswersError(
                f"level answer for unselected symptom {sid!r}")
        if level not in kb.symptom(sid).levels:
            raise MalformedAnswersError(
                f"symptom {sid!r} has no level {level!r}")
    missing = answers.selected_symptom_ids - answers.level_answers.keys()
    if missing:
        raise MalformedAnswersError(
            f"selected symptoms missing a level answer: {sorted(missing)}")
    for qid in answers.catalyst_answers:
        if qid not in kb.catalyst_questions:
            raise MalformedAnswersError(f"unknown history question {qid!r}")


def raw_score(kb: KnowledgeBase, disease_id: str, answers: AnswerSet) -> float:
    """Sum of the disease's weights for each selected symptom at its level.

    Pairs without a weight entry contribute 0.
    """
    disease = kb.disease(disease_id)
    total = 0.0
    # sorted so the float sum is identical across processes (set order is not)
    for sid in sorted(answers.selected_symptom_ids):
        level = answers.level_answers.get(sid)
        if level is not None:
            total += disease.weights.get((sid, level), 0.0)
    return total


def major_penalty(kb: KnowledgeBase, disease_id: str, answers: AnswerSet) -> float:
    """Best-case weight of every must-have symptom the user did not select."""
    disease = kb.disease(disease_id)
    return sum(
        max_level_weight(kb, disease_id, sid)
        for sid in sorted(disease.major_symptom_ids)
        if sid not in answers.selected_symptom_ids
    )


def temp_probability(kb: KnowledgeBase, disease_id: str, answers: AnswerSet) -> float:
    """Normalized score as a percentage, before catalyst points.

    May fall below 0 or exceed 100; clamping happens once, after the
    catalyst rule, so the unclamped value stays visible.
    """
    disease = kb.disease(disease_id)
    score = raw_score(kb, disease_id, answers) - major_penalty(kb, disease_id, answers)
    return (score - disease.min_th) / (disease.max_th - disease.min_th) * 100.0


def apply_catalysts(
    kb: KnowledgeBase,
    temp_map: dict[str, float],
    answers: AnswerSet,
) -> dict[str, tuple[float, float]]:
    """Credit affirmed history questions to the top-scoring disease only.

    Returns ``disease_id -> (temp, catalyst_added)``. The winner is the
    argmax of ``temp_map`` (ties resolved to the lexicographically first
    disease_id); it gains the summed factors of every question targeting
    it that was answered yes. All other diseases gain 0.
    """
    if not temp_map:
        raise ValueError("temp_map must not be empty")
    best = max(temp_map.values())
    winner = min(did for did, temp in temp_map.items() if temp == best)
    added = sum(
        q.factor
        for qid, q in kb.catalyst_questions.items()
        if q.target_disease_id == winner and answers.catalyst_answers.get(qid)
    )
    return {
        did: (temp, added if did == winner else 0.0)
        for did, temp in temp_map.items()
    }


def fuzzify(p: float, label_config: FuzzyLabelConfig) -> tuple[str, dict[str, float]]:
    """Linguistic label and full membership map for a percentage.

    Evaluates every label's trapezoid at clamp(p, 0, 100); the reported
    label is the membership argmax, with ties going to the later-ordered
    (higher) label.
    """
    x = _clamp(p, 0.0, 100.0)
    memberships = label_config.memberships(x)
    label = ""
    best = -1.0
    for lab in label_config.labels:
        if memberships[lab.label] >= best:
            best = memberships[lab.label]
            label = lab.label
    return label, memberships


def confidence(kb: KnowledgeBase, disease_id: str, drop_per_test: float = 15.0) -> float:
    """System confidence for a disease, in [0, 100].

    Falls linearly by ``drop_per_test`` for each pathological test the
    disease needs for real confirmation, clamped at 0.
    """
    disease = kb.disease(disease_id)
    return _clamp(100.0 - drop_per_test * disease.pathological_test_count, 0.0, 100.0)


def diagnose(
    kb: KnowledgeBase,
    area_id: str,
    answers: AnswerSet,
    config: EngineConfig = EngineConfig(),
) -> list[DiagnosisResult]:
    """Rank the area's diseases for a complete answer set.

    Results are sorted by final probability (descending, ties broken by
    disease_id), filtered below ``config.filter_threshold``, and assigned
    ranks 1..n. Deterministic: identical inputs give identical output.
    """
    area = kb.area(area_id)
    check_answers(kb, area_id, answers)

    temps = {did: temp_probability(kb, did, answers) for did in area.disease_ids}
    with_catalysts = apply_catalysts(kb, temps, answers)

    results = []
    for did in area.disease_ids:
        temp, added = with_catalysts[did]
        final = _clamp(temp + added, 0.0, 100.0)
        label, memberships = fuzzify(final, kb.label_config)
        results.append(
            DiagnosisResult(
                disease_id=did,
                raw_score=raw_score(kb, did, answers),
                penalty=major_penalty(kb, did, answers),
                temp_probability=temp,
                catalyst_added=added,
                final_probability=final,
                label=label,
                memberships=memberships,
                confidence=confidence(kb, did, config.drop_per_test),
                rank=0,
            )
        )
    results.sort(key=lambda r: (-r.final_probability, r.disease_id))
    kept = [r for r in results if r.final_probability >= config.filter_threshold]
    return [replace(r, rank=i) for i, r in enumerate(kept, start=1)]
