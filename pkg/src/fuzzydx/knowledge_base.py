"""Declarative knowledge base: types, loading, validation, serialization.

A knowledge base is a single JSON document describing problem areas,
symptoms with their follow-up levels, diseases with per-(symptom, level)
weights and score thresholds, history (catalyst) questions, and the fuzzy
label map used to phrase results. The engine only ever sees a fully
validated, immutable ``KnowledgeBase``.

Validation is a linter: it walks the whole document and reports every
violation it can find instead of stopping at the first one. Error codes
are stable strings (see ``ERROR_CODES``) so tooling can match on them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, NamedTuple

from .errors import KnowledgeBaseParseError, KnowledgeBaseValidationError, UnknownIdError

# Codes emitted by validate_kb. Errors make the document unloadable;
# warnings flag suspicious authoring but do not block loading.
ERROR_CODES = (
    "UNKNOWN_FIELD",        # strict schema: key not in the format
    "SCHEMA_TYPE",          # missing required field or wrong JSON type
    "NO_AREAS",             # document defines no problem areas
    "EMPTY_AREA",           # area lists no symptoms or no diseases
    "DUPLICATE_ID",         # repeated area_id
    "DUPLICATE_REF",        # repeated entry in an id list
    "EMPTY_LEVELS",         # symptom with no answer levels
    "DUPLICATE_LEVEL",      # repeated level label within a symptom
    "DANGLING_REF",         # id does not resolve anywhere in the document
    "WEIGHT_RANGE",         # weight outside [0, 1]
    "THRESHOLD_RANGE",      # min_th below 0
    "THRESHOLD_DEGENERATE", # min_th >= max_th (zero or negative score span)
    "MAJOR_NOT_WEIGHTED",   # major symptom carries no positive weight
    "FACTOR_RANGE",         # catalyst factor below 0
    "TEST_COUNT_RANGE",     # pathological test count below 0
    "LABEL_SHAPE",          # trapezoid corners not ordered or outside [0, 100]
    "LABEL_COVERAGE",       # some percentage has no label with membership > 0
)
WARNING_CODES = (
    "WEIGHT_SUM_EXCEEDS_MAXTH",  # best possible raw score above max_th
    "MAXTH_UNREACHABLE",         # best possible raw score below max_th
)

_SUM_TOLERANCE = 1e-9


class ValidationIssue(NamedTuple):
    code: str
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of linting a knowledge-base document."""

    errors: tuple[ValidationIssue, ...] = ()
    warnings: tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass(frozen=True)
class ProblemArea:
    area_id: str
    display_name: str
    symptom_ids: tuple[str, ...]
    disease_ids: tuple[str, ...]


@dataclass(frozen=True)
class Symptom:
    symptom_id: str
    display_name: str
    level_question: str
    levels: tuple[str, ...]


@dataclass(frozen=True)
class Disease:
    """One diagnosable condition.

    ``weights`` maps (symptom_id, level_label) to the contribution that
    answer makes to this disease's raw score; pairs without an entry
    contribute 0. ``min_th``/``max_th`` normalize the raw score to a
    percentage, so ``min_th < max_th`` is a hard requirement.
    """

    disease_id: str
    display_name: str
    weights: dict[tuple[str, str], float]
    major_symptom_ids: frozenset[str]
    min_th: float
    max_th: float
    catalyst_question_ids: frozenset[str]
    pathological_test_count: int


@dataclass(frozen=True)
class CatalystQuestion:
    """A yes/no patient-history question worth ``factor`` percentage points.

    The factor is credited to ``target_disease_id`` only when that disease
    is the top-scoring one (see ``engine.apply_catalysts``).
    """

    question_id: str
    prompt: str
    target_disease_id: str
    factor: float


@dataclass(frozen=True)
class FuzzyLabel:
    """A linguistic label with a trapezoidal membership over [0, 100]."""

    label: str
    a: float
    b: float
    c: float
    d: float

    def membership(self, x: float) -> float:
        if x < self.a or x > self.d:
            return 0.0
        if x <= self.b:
            return 1.0 if self.a == self.b else (x - self.a) / (self.b - self.a)
        if x <= self.c:
            return 1.0
        return 1.0 if self.c == self.d else (self.d - x) / (self.d - self.c)


@dataclass(frozen=True)
class FuzzyLabelConfig:
    labels: tuple[FuzzyLabel, ...]

    def memberships(self, x: float) -> dict[str, float]:
        return {lab.label: lab.membership(x) for lab in self.labels}


DEFAULT_LABELS = FuzzyLabelConfig(
    labels=(
        FuzzyLabel("very unlikely", 0, 0, 10, 25),
        FuzzyLabel("unlikely", 10, 25, 35, 45),
        FuzzyLabel("possible", 35, 45, 55, 65),
        FuzzyLabel("likely", 55, 65, 75, 85),
        FuzzyLabel("very likely", 75, 90, 100, 100),
    )
)


@dataclass(frozen=True)
class KnowledgeBase:
    """Immutable, fully resolved knowledge base.

    Safe to share across threads; all mappings preserve document order.
    """

    kb_id: str
    version: str
    areas: tuple[ProblemArea, ...]
    symptoms: dict[str, Symptom]
    diseases: dict[str, Disease]
    catalyst_questions: dict[str, CatalystQuestion]
    label_config: FuzzyLabelConfig = field(default=DEFAULT_LABELS)

    def area(self, area_id: str) -> ProblemArea:
        for a in self.areas:
            if a.area_id == area_id:
                return a
        raise UnknownIdError(f"unknown area: {area_id!r}")

    def disease(self, disease_id: str) -> Disease:
        try:
            return self.diseases[disease_id]
        except KeyError:
            raise UnknownIdError(f"unknown disease: {disease_id!r}") from None

    def symptom(self, symptom_id: str) -> Symptom:
        try:
            return self.symptoms[symptom_id]
        except KeyError:
            raise UnknownIdError(f"unknown symptom: {symptom_id!r}") from None


def max_level_weight(kb: KnowledgeBase, disease_id: str, symptom_id: str) -> float:
    """Largest weight the symptom could contribute to the disease.

    Maximum over the symptom's levels of the disease's weight for that
    (symptom, level) pair; 0 when the disease has no entry for the symptom.
    """
    disease = kb.disease(disease_id)
    symptom = kb.symptom(symptom_id)
    return max(
        (disease.weights.get((symptom_id, level), 0.0) for level in symptom.levels),
        default=0.0,
    )


# ---------------------------------------------------------------------------
# Validation


class _Linter:
    def __init__(self, doc: Mapping[str, Any]):
        self.doc = doc
        self.errors: list[ValidationIssue] = []
        self.warnings: list[ValidationIssue] = []

    def error(self, code: str, path: str, message: str) -> None:
        self.errors.append(ValidationIssue(code, path, message))

    def warn(self, code: str, path: str, message: str) -> None:
        self.warnings.append(ValidationIssue(code, path, message))

    # -- primitive checks ---------------------------------------------------

    def _check_keys(self, obj: Mapping[str, Any], path: str,
                    required: Iterable[str], optional: Iterable[str] = ()) -> bool:
        ok = True
        allowed = set(required) | set(optional)
        for key in obj:
            if key not in allowed:
                self.error("UNKNOWN_FIELD", f"{path}.{key}" if path else key,
                           f"unexpected field {key!r}")
                ok = False
        for key in required:
            if key not in obj:
                self.error("SCHEMA_TYPE", f"{path}.{key}" if path else key,
                           f"missing required field {key!r}")
                ok = False
        return ok

    def _string(self, obj: Mapping[str, Any], key: str, path: str) -> str | None:
        value = obj.get(key)
        if not isinstance(value, str):
            if key in obj:
                self.error("SCHEMA_TYPE", f"{path}.{key}", "expected a string")
            return None
        return value

    def _number(self, obj: Mapping[str, Any], key: str, path: str) -> float | None:
        value = obj.get(key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            if key in obj:
                self.error("SCHEMA_TYPE", f"{path}.{key}", "expected a number")
            return None
        return float(value)

    def _string_list(self, obj: Mapping[str, Any], key: str, path: str) -> list[str] | None:
        value = obj.get(key)
        if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
            if key in obj:
                self.error("SCHEMA_TYPE", f"{path}.{key}", "expected a list of strings")
            return None
        return value

    def _no_duplicates(self, values: list[str], path: str, code: str = "DUPLICATE_REF") -> None:
        seen = set()
        for i, v in enumerate(values):
            if v in seen:
                self.error(code, f"{path}[{i}]", f"duplicate entry {v!r}")
            seen.add(v)

    # -- sections -----------------------------------------------------------

    def run(self) -> ValidationReport:
        if not isinstance(self.doc, Mapping):
            self.error("SCHEMA_TYPE", "", "document root must be a JSON object")
            return self._report()

        self._check_keys(
            self.doc, "",
            required=("kb_id", "version", "areas", "symptoms", "diseases"),
            optional=("catalyst_questions", "labels"),
        )
        self._string(self.doc, "kb_id", "")
        self._string(self.doc, "version", "")

        symptoms = self._symptoms_section()
        diseases = self._diseases_section(symptoms)
        self._catalysts_section(diseases)
        self._areas_section(symptoms, diseases)
        self._labels_section()
        return self._report()

    def _symptoms_section(self) -> dict[str, list[str]]:
        """Returns symptom_id -> level labels for the well-formed symptoms."""
        section = self.doc.get("symptoms")
        if not isinstance(section, Mapping):
            if "symptoms" in self.doc:
                self.error("SCHEMA_TYPE", "symptoms", "expected an object keyed by symptom id")
            return {}
        known: dict[str, list[str]] = {}
        for sid, spec in section.items():
            path = f"symptoms.{sid}"
            if not isinstance(spec, Mapping):
                self.error("SCHEMA_TYPE", path, "expected an object")
                continue
            self._check_keys(spec, path, required=("display_name", "level_question", "levels"))
            self._string(spec, "display_name", path)
            self._string(spec, "level_question", path)
            levels = self._string_list(spec, "levels", path)
            if levels is None:
                continue
            if not levels:
                self.error("EMPTY_LEVELS", f"{path}.levels", "symptom must offer at least one level")
                continue
            self._no_duplicates(levels, f"{path}.levels", code="DUPLICATE_LEVEL")
            known[sid] = levels
        return known

    def _diseases_section(self, symptoms: dict[str, list[str]]) -> dict[str, dict[str, float]]:
        """Returns disease_id -> {symptom_id: max level weight} for warnings."""
        section = self.doc.get("diseases")
        if not isinstance(section, Mapping):
            if "diseases" in self.doc:
                self.error("SCHEMA_TYPE", "diseases", "expected an object keyed by disease id")
            return {}
        known: dict[str, dict[str, float]] = {}
        for did, spec in section.items():
            path = f"diseases.{did}"
            if not isinstance(spec, Mapping):
                self.error("SCHEMA_TYPE", path, "expected an object")
                continue
            self._check_keys(
                spec, path,
                required=("display_name", "weights", "min_th", "max_th"),
                optional=("major_symptom_ids", "catalyst_question_ids", "pathological_test_count"),
            )
            self._string(spec, "display_name", path)
            maxima = self._weights(spec.get("weights"), f"{path}.weights", symptoms)
            known[did] = maxima

            min_th = self._number(spec, "min_th", path)
            max_th = self._number(spec, "max_th", path)
            if min_th is not None and min_th < 0:
                self.error("THRESHOLD_RANGE", f"{path}.min_th", "min_th must be >= 0")
            if min_th is not None and max_th is not None and min_th >= max_th:
                self.error(
                    "THRESHOLD_DEGENERATE", f"{path}.min_th",
                    f"min_th ({min_th}) must be strictly below max_th ({max_th})",
                )

            majors = self._string_list(spec, "major_symptom_ids", path) or []
            self._no_duplicates(majors, f"{path}.major_symptom_ids")
            for i, sid in enumerate(majors):
                mpath = f"{path}.major_symptom_ids[{i}]"
                if sid not in symptoms:
                    self.error("DANGLING_REF", mpath, f"unknown symptom {sid!r}")
                elif maxima.get(sid, 0.0) <= 0.0:
                    self.error(
                        "MAJOR_NOT_WEIGHTED", mpath,
                        f"major symptom {sid!r} has no positive weight for {did!r}",
                    )

            count = spec.get("pathological_test_count", 0)
            if isinstance(count, bool) or not isinstance(count, int):
                self.error("SCHEMA_TYPE", f"{path}.pathological_test_count", "expected an integer")
            elif count < 0:
                self.error("TEST_COUNT_RANGE", f"{path}.pathological_test_count",
                           "test count must be >= 0")

            if max_th is not None and maxima:
                best = sum(maxima.values())
                if best > max_th + _SUM_TOLERANCE:
                    self.warn(
                        "WEIGHT_SUM_EXCEEDS_MAXTH", f"{path}.max_th",
                        f"best possible raw score {best:g} exceeds max_th {max_th:g}",
                    )
                elif best < max_th - _SUM_TOLERANCE:
                    self.warn(
                        "MAXTH_UNREACHABLE", f"{path}.max_th",
                        f"best possible raw score {best:g} cannot reach max_th {max_th:g}",
                    )
        return known

    def _weights(self, section: Any, path: str,
                 symptoms: dict[str, list[str]]) -> dict[str, float]:
        if not isinstance(section, Mapping):
            if section is not None:
                self.error("SCHEMA_TYPE", path, "expected an object keyed by symptom id")
            return {}
        maxima: dict[str, float] = {}
        for sid, by_level in section.items():
            spath = f"{path}.{sid}"
            if sid not in symptoms:
                self.error("DANGLING_REF", spath, f"unknown symptom {sid!r}")
                continue
            if not isinstance(by_level, Mapping):
                self.error("SCHEMA_TYPE", spath, "expected an object keyed by level label")
                continue
            for level, weight in by_level.items():
                wpath = f"{spath}.{level}"
                if level not in symptoms[sid]:
                    self.error("DANGLING_REF", wpath,
                               f"symptom {sid!r} has no level {level!r}")
                    continue
                if isinstance(weight, bool) or not isinstance(weight, (int, float)):
                    self.error("SCHEMA_TYPE", wpath, "expected a number")
                    continue
                if not 0.0 <= weight <= 1.0:
                    self.error("WEIGHT_RANGE", wpath,
                               f"weight {weight} outside [0, 1]")
                    continue
                maxima[sid] = max(maxima.get(sid, 0.0), float(weight))
        return maxima

    def _catalysts_section(self, diseases: dict[str, Any]) -> None:
        section = self.doc.get("catalyst_questions", {})
        if not isinstance(section, Mapping):
            self.error("SCHEMA_TYPE", "catalyst_questions",
                       "expected an object keyed by question id")
            return
        for qid, spec in section.items():
            path = f"catalyst_questions.{qid}"
            if not isinstance(spec, Mapping):
                self.error("SCHEMA_TYPE", path, "expected an object")
                continue
            self._check_keys(spec, path, required=("prompt", "target_disease_id", "factor"))
            self._string(spec, "prompt", path)
            target = self._string(spec, "target_disease_id", path)
            if target is not None and target not in diseases:
                self.error("DANGLING_REF", f"{path}.target_disease_id",
                           f"unknown disease {target!r}")
            factor = self._number(spec, "factor", path)
            if factor is not None and factor < 0:
                self.error("FACTOR_RANGE", f"{path}.factor", "factor must be >= 0")
        # question ids referenced by diseases must exist
        disease_section = self.doc.get("diseases")
        if isinstance(disease_section, Mapping):
            for did, spec in disease_section.items():
                if not isinstance(spec, Mapping):
                    continue
                qids = spec.get("catalyst_question_ids", [])
                if not isinstance(qids, list):
                    continue
                self._no_duplicates([q for q in qids if isinstance(q, str)],
                                    f"diseases.{did}.catalyst_question_ids")
                for i, qid in enumerate(qids):
                    if isinstance(qid, str) and qid not in section:
                        self.error("DANGLING_REF",
                                   f"diseases.{did}.catalyst_question_ids[{i}]",
                                   f"unknown catalyst question {qid!r}")

    def _areas_section(self, symptoms: dict[str, Any], diseases: dict[str, Any]) -> None:
        section = self.doc.get("areas")
        if not isinstance(section, list):
            if "areas" in self.doc:
                self.error("SCHEMA_TYPE", "areas", "expected a list")
            return
        if not section:
            self.error("NO_AREAS", "areas", "at least one problem area is required")
            return
        seen_ids: set[str] = set()
        for i, spec in enumerate(section):
            path = f"areas[{i}]"
            if not isinstance(spec, Mapping):
                self.error("SCHEMA_TYPE", path, "expected an object")
                continue
            self._check_keys(spec, path,
                             required=("area_id", "display_name", "symptom_ids", "disease_ids"))
            area_id = self._string(spec, "area_id", path)
            if area_id is not None:
                if area_id in seen_ids:
                    self.error("DUPLICATE_ID", f"{path}.area_id", f"duplicate area {area_id!r}")
                seen_ids.add(area_id)
            self._string(spec, "display_name", path)
            for key, known in (("symptom_ids", symptoms), ("disease_ids", diseases)):
                ids = self._string_list(spec, key, path)
                if ids is None:
                    continue
                if not ids:
                    self.error("EMPTY_AREA", f"{path}.{key}",
                               f"area must list at least one of {key}")
                self._no_duplicates(ids, f"{path}.{key}")
                for j, ref in enumerate(ids):
                    if ref not in known:
                        self.error("DANGLING_REF", f"{path}.{key}[{j}]",
                                   f"unknown id {ref!r}")

    def _labels_section(self) -> None:
        section = self.doc.get("labels")
        if section is None:
            return
        if not isinstance(section, list):
            self.error("SCHEMA_TYPE", "labels", "expected a list")
            return
        labels: list[FuzzyLabel] = []
        for i, spec in enumerate(section):
            path = f"labels[{i}]"
            if not isinstance(spec, Mapping):
                self.error("SCHEMA_TYPE", path, "expected an object")
                continue
            self._check_keys(spec, path, required=("label", "trapezoid"))
            name = self._string(spec, "label", path)
            trap = spec.get("trapezoid")
            if (not isinstance(trap, list) or len(trap) != 4
                    or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in trap)):
                self.error("SCHEMA_TYPE", f"{path}.trapezoid", "expected four numbers")
                continue
            a, b, c, d = (float(v) for v in trap)
            if not (0 <= a <= b <= c <= d <= 100):
                self.error("LABEL_SHAPE", f"{path}.trapezoid",
                           "corners must satisfy 0 <= a <= b <= c <= d <= 100")
                continue
            if name is not None:
                labels.append(FuzzyLabel(name, a, b, c, d))
        if len(labels) == len(section):
            self._check_label_coverage(labels)

    def _check_label_coverage(self, labels: list[FuzzyLabel]) -> None:
        """Every percentage in [0, 100] needs a label with membership > 0.

        Memberships are piecewise linear with breakpoints at the trapezoid
        corners, so checking all corners plus the midpoints between
        consecutive distinct corners is exact.
        """
        points = {0.0, 100.0}
        for lab in labels:
            points.update((lab.a, lab.b, lab.c, lab.d))
        ordered = sorted(points)
        probes = list(ordered)
        probes.extend((p + q) / 2 for p, q in zip(ordered, ordered[1:]))
        for x in probes:
            if not any(lab.membership(x) > 0 for lab in labels):
                self.error("LABEL_COVERAGE", "labels",
                           f"no label has positive membership at {x:g}")
                return

    def _report(self) -> ValidationReport:
        return ValidationReport(errors=tuple(self.errors), warnings=tuple(self.warnings))


def validate_kb(candidate: Any) -> ValidationReport:
    """Lint a parsed knowledge-base document.

    Pure: the same candidate always yields the same report. Never raises;
    structural problems come back as SCHEMA_TYPE / UNKNOWN_FIELD errors.
    """
    return _Linter(candidate).run()


# ---------------------------------------------------------------------------
# Loading and serialization


def load_kb(document: str | bytes | Mapping[str, Any]) -> KnowledgeBase:
    """Parse, validate, and freeze a knowledge-base document.

    Accepts JSON text or an already-parsed mapping. Raises
    ``KnowledgeBaseParseError`` for malformed JSON and
    ``KnowledgeBaseValidationError`` (carrying the first report entry)
    when any invariant is violated.
    """
    if isinstance(document, (str, bytes)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise KnowledgeBaseParseError(f"malformed JSON: {exc}") from exc
    else:
        doc = document
    if not isinstance(doc, Mapping):
        raise KnowledgeBaseParseError("document root must be a JSON object")

    report = validate_kb(doc)
    if report.errors:
        first = report.errors[0]
        raise KnowledgeBaseValidationError(first.code, first.path, first.message)

    symptoms = {
        sid: Symptom(
            symptom_id=sid,
            display_name=spec["display_name"],
            level_question=spec["level_question"],
            levels=tuple(spec["levels"]),
        )
        for sid, spec in doc["symptoms"].items()
    }
    diseases = {}
    for did, spec in doc["diseases"].items():
        weights = {
            (sid, level): float(w)
            for sid, by_level in spec["weights"].items()
            for level, w in by_level.items()
        }
        diseases[did] = Disease(
            disease_id=did,
            display_name=spec["display_name"],
            weights=weights,
            major_symptom_ids=frozenset(spec.get("major_symptom_ids", [])),
            min_th=float(spec["min_th"]),
            max_th=float(spec["max_th"]),
            catalyst_question_ids=frozenset(spec.get("catalyst_question_ids", [])),
            pathological_test_count=int(spec.get("pathological_test_count", 0)),
        )
    questions = {
        qid: CatalystQuestion(
            question_id=qid,
            prompt=spec["prompt"],
            target_disease_id=spec["target_disease_id"],
            factor=float(spec["factor"]),
        )
        for qid, spec in doc.get("catalyst_questions", {}).items()
    }
    if "labels" in doc:
        label_config = FuzzyLabelConfig(
            labels=tuple(
                FuzzyLabel(spec["label"], *(float(v) for v in spec["trapezoid"]))
                for spec in doc["labels"]
            )
        )
    else:
        label_config = DEFAULT_LABELS
    areas = tuple(
        ProblemArea(
            area_id=spec["area_id"],
            display_name=spec["display_name"],
            symptom_ids=tuple(spec["symptom_ids"]),
            disease_ids=tuple(spec["disease_ids"]),
        )
        for spec in doc["areas"]
    )
    return KnowledgeBase(
        kb_id=doc["kb_id"],
        version=doc["version"],
        areas=areas,
        symptoms=symptoms,
        diseases=diseases,
        catalyst_questions=questions,
        label_config=label_config,
    )


def load_kb_file(path: str) -> KnowledgeBase:
    """Read and load a knowledge base from a UTF-8 JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return load_kb(fh.read())


def kb_to_document(kb: KnowledgeBase) -> dict[str, Any]:
    """Canonical document form of a loaded KB (labels always materialized)."""
    weights_by_disease: dict[str, dict[str, dict[str, float]]] = {}
    for did, disease in kb.diseases.items():
        nested: dict[str, dict[str, float]] = {}
        for (sid, level), w in disease.weights.items():
            nested.setdefault(sid, {})[level] = w
        weights_by_disease[did] = nested
    return {
        "kb_id": kb.kb_id,
        "version": kb.version,
        "areas": [
            {
                "area_id": a.area_id,
                "display_name": a.display_name,
                "symptom_ids": list(a.symptom_ids),
                "disease_ids": list(a.disease_ids),
            }
            for a in kb.areas
        ],
        "symptoms": {
            sid: {
                "display_name": s.display_name,
                "level_question": s.level_question,
                "levels": list(s.levels),
            }
            for sid, s in kb.symptoms.items()
        },
        "diseases": {
            did: {
                "display_name": d.display_name,
                "weights": weights_by_disease[did],
                "major_symptom_ids": sorted(d.major_symptom_ids),
                "min_th": d.min_th,
                "max_th": d.max_th,
                "catalyst_question_ids": sorted(d.catalyst_question_ids),
                "pathological_test_count": d.pathological_test_count,
            }
            for did, d in kb.diseases.items()
        },
        "catalyst_questions": {
            qid: {
                "prompt": q.prompt,
                "target_disease_id": q.target_disease_id,
                "factor": q.factor,
            }
            for qid, q in kb.catalyst_questions.items()
        },
        "labels": [
            {"label": lab.label, "trapezoid": [lab.a, lab.b, lab.c, lab.d]}
            for lab in kb.label_config.labels
        ],
    }


def serialize_kb(kb: KnowledgeBase) -> str:
    return json.dumps(kb_to_document(kb), indent=2) + "\n"
