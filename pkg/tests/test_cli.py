import json
import os
import signal
import socket
import subprocess
import sys
import time
import urllib.error
import urllib.request

import pytest
from click.testing import CliRunner

from fuzzydx.cli import cli

from conftest import CHEST_ANSWERS_PATH, CHEST_KB_PATH

KB = str(CHEST_KB_PATH)
ANSWERS = str(CHEST_ANSWERS_PATH)

# the golden click-through: every option happens to be the first one except
# the multi-select, which picks five of the seven symptoms
GOLDEN_STDIN = "1\n1,2,3,4,7\n1\n1\n1\n1\n1\n1\n1\n"


@pytest.fixture()
def runner():
    return CliRunner()


def write_kb(tmp_path, doc, name="kb.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


class TestValidate:
    def test_fixture_passes(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "validate"])
        assert result.exit_code == 0
        assert "0 error(s)" in result.stdout

    def test_fixture_warnings_listed(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "validate"])
        assert result.stdout.count("MAXTH_UNREACHABLE") == 3

    def test_bad_weight_fails_with_code(self, runner, tmp_path, chest_doc_copy):
        chest_doc_copy["diseases"]["asthma"]["weights"]["cough"]["productive"] = 1.3
        path = write_kb(tmp_path, chest_doc_copy)
        result = runner.invoke(cli, ["--kb", path, "validate"])
        assert result.exit_code == 1
        assert "WEIGHT_RANGE" in result.stdout

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["--kb", str(tmp_path / "nope.json"), "validate"])
        assert result.exit_code == 2

    def test_unparseable_file(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{oops", encoding="utf-8")
        result = runner.invoke(cli, ["--kb", str(path), "validate"])
        assert result.exit_code == 2


class TestScore:
    def test_golden_rows(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "score", ANSWERS])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].split() == ["rank", "disease", "probability", "label",
                                    "confidence"]
        assert "81.419" in lines[1] and "Asthma" in lines[1]
        assert "48.649" in lines[2] and "Bronchitis" in lines[2]
        assert "15.625" in lines[3] and "Pneumonia" in lines[3]

    def test_output_is_byte_stable(self, runner):
        first = runner.invoke(cli, ["--kb", KB, "score", ANSWERS]).stdout
        second = runner.invoke(cli, ["--kb", KB, "score", ANSWERS]).stdout
        assert first == second

    def test_empty_selection_prints_empty_table(self, runner, tmp_path):
        answers = tmp_path / "empty.json"
        answers.write_text(json.dumps({"area_id": "chest", "symptoms": {},
                                       "history": {}}), encoding="utf-8")
        result = runner.invoke(cli, ["--kb", KB, "score", str(answers)])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            "rank  disease  probability  label  confidence"]

    def test_unknown_level_exits_one(self, runner, tmp_path):
        answers = tmp_path / "bad.json"
        answers.write_text(json.dumps({"area_id": "chest",
                                       "symptoms": {"fever": "volcanic"},
                                       "history": {}}), encoding="utf-8")
        result = runner.invoke(cli, ["--kb", KB, "score", str(answers)])
        assert result.exit_code == 1
        assert "volcanic" in result.stderr

    def test_invalid_kb_exits_two(self, runner, tmp_path, chest_doc_copy):
        chest_doc_copy["diseases"]["asthma"]["min_th"] = 99
        path = write_kb(tmp_path, chest_doc_copy)
        result = runner.invoke(cli, ["--kb", path, "score", ANSWERS])
        assert result.exit_code == 2

    def test_filter_threshold_flag(self, runner):
        result = runner.invoke(
            cli, ["--kb", KB, "--filter-threshold", "50", "score", ANSWERS])
        lines = result.stdout.splitlines()
        assert len(lines) == 2  # header + asthma only
        assert "Asthma" in lines[1]


class TestDiagnoseInteractive:
    def test_transcript_matches_batch_output(self, runner):
        batch = runner.invoke(cli, ["--kb", KB, "score", ANSWERS]).stdout
        interactive = runner.invoke(cli, ["--kb", KB, "diagnose"],
                                    input=GOLDEN_STDIN)
        assert interactive.exit_code == 0
        assert interactive.stdout == batch

    def test_option_ids_accepted_verbatim(self, runner):
        by_name = (
            "chest\n"
            "cough, fever, chest_pain, wheezing, short_breath\n"
            "non-productive\nlow\nalways\nwhile breathing in\nyes\nyes\nyes\n"
        )
        by_number = runner.invoke(cli, ["--kb", KB, "diagnose"], input=GOLDEN_STDIN)
        named = runner.invoke(cli, ["--kb", KB, "diagnose"], input=by_name)
        assert named.exit_code == 0
        assert named.stdout == by_number.stdout

    def test_immediate_eof_exits_one(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "diagnose"], input="")
        assert result.exit_code == 1
        assert result.stdout == ""  # no partial results

    def test_mid_session_eof_exits_one(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "diagnose"], input="1\n1,2\n")
        assert result.exit_code == 1
        assert result.stdout == ""

    def test_zero_symptoms_prints_empty_message(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "diagnose"], input="1\n\n2\n2\n")
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            "rank  disease  probability  label  confidence"]
        assert "no likely condition found" in result.stderr

    def test_invalid_reply_reprompts(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "diagnose"],
                               input="9\n" + GOLDEN_STDIN)
        assert result.exit_code == 0
        assert "please answer" in result.stderr


class TestChart:
    def test_rows_in_kb_order(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "chart"])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            "disease_id,system_confidence,full_confidence",
            "pneumonia,55.000,100.000",
            "bronchitis,85.000,100.000",
            "asthma,70.000,100.000",
        ]

    def test_zero_test_disease_gets_full_marks(self, runner, tmp_path, chest_doc_copy):
        chest_doc_copy["diseases"]["bronchitis"]["pathological_test_count"] = 0
        path = write_kb(tmp_path, chest_doc_copy)
        result = runner.invoke(cli, ["--kb", path, "chart"])
        assert "bronchitis,100.000,100.000" in result.stdout

    def test_drop_per_test_flag(self, runner):
        result = runner.invoke(cli, ["--kb", KB, "--drop-per-test", "10", "chart"])
        assert "asthma,80.000,100.000" in result.stdout

    def test_invalid_kb_exits_two(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("[]", encoding="utf-8")
        result = runner.invoke(cli, ["--kb", str(path), "chart"])
        assert result.exit_code == 2


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


class TestServe:
    def test_invalid_kb_exits_two_before_binding(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{oops", encoding="utf-8")
        result = runner.invoke(cli, ["--kb", str(path), "serve", "--port", "1"])
        assert result.exit_code == 2

    def test_busy_port_exits_two(self, runner):
        blocker = socket.socket()
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        try:
            result = runner.invoke(cli, ["--kb", KB, "serve", "--port", str(port)])
            assert result.exit_code == 2
        finally:
            blocker.close()

    def test_live_roundtrip_and_clean_shutdown(self, tmp_path):
        port = _free_port()
        journal = tmp_path / "sessions.journal"
        proc = subprocess.Popen(
            [sys.executable, "-m", "fuzzydx.cli", "--kb", KB, "serve",
             "--port", str(port), "--journal", str(journal)],
            stdout=subprocess.PIPE, stderr=subprocess.PIPE,
        )
        base = f"http://127.0.0.1:{port}"
        try:
            deadline = time.time() + 20
            areas = None
            while time.time() < deadline:
                try:
                    with urllib.request.urlopen(f"{base}/api/v1/areas", timeout=2) as r:
                        areas = json.loads(r.read())
                    break
                except (urllib.error.URLError, ConnectionError):
                    if proc.poll() is not None:
                        raise AssertionError("server exited early")
                    time.sleep(0.2)
            assert areas == [{"area_id": "chest", "display_name": "Chest"}]

            request = urllib.request.Request(
                f"{base}/api/v1/sessions", data=b"", method="POST")
            with urllib.request.urlopen(request, timeout=5) as r:
                assert r.status == 201
                sid = json.loads(r.read())["session_id"]
        finally:
            proc.send_signal(signal.SIGINT)
            try:
                proc.wait(timeout=15)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()
        assert proc.returncode == 0
        # journal captured the session before shutdown
        lines = journal.read_text().strip().splitlines()
        assert any(json.loads(line)["session_id"] == sid for line in lines)
