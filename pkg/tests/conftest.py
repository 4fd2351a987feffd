import copy
import json
from pathlib import Path

import pytest

from fuzzydx import AnswerSet, load_kb

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
CHEST_KB_PATH = FIXTURES / "chest.kb.json"
CHEST_ANSWERS_PATH = FIXTURES / "chest.answers.json"

# Hand-checked expectations for the shipped chest scenario.
GOLDEN = {"asthma": 81.419, "bronchitis": 48.648, "pneumonia": 15.625}
GOLDEN_RANKS = ["asthma", "bronchitis", "pneumonia"]


@pytest.fixture(scope="session")
def chest_doc():
    return json.loads(CHEST_KB_PATH.read_text(encoding="utf-8"))


@pytest.fixture()
def chest_doc_copy(chest_doc):
    """Deep copy safe to mutate into a broken document."""
    return copy.deepcopy(chest_doc)


@pytest.fixture(scope="session")
def chest_kb(chest_doc):
    return load_kb(chest_doc)


@pytest.fixture(scope="session")
def golden_answers():
    doc = json.loads(CHEST_ANSWERS_PATH.read_text(encoding="utf-8"))
    return doc["area_id"], AnswerSet(
        selected_symptom_ids=set(doc["symptoms"]),
        level_answers=dict(doc["symptoms"]),
        catalyst_answers=dict(doc["history"]),
    )
