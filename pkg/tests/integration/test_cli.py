"""
Command line tests

Commands run in-process through click's CliRunner. These tests are
synchronous: every command drives its own event loop.
"""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from database.seed import fixture_s0_document, load_seed_config, seed_document
from program.examples import LINT_FIXTURES, SHIPPED_EXAMPLES, list_titles, talkative
from program.metadata import code_metadata
from program.parser import load_program, serialize_program
from scb import cli
from tests.helpers import SEED_CONFIG
from utils.json_loader import digest, read_json_file

pytestmark = pytest.mark.integration

PROGRAMS = Path(__file__).resolve().parents[2] / "content" / "programs"


@pytest.fixture
def cli_runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def invoke(cli_runner):
    def _invoke(*args):
        return cli_runner.invoke(cli, ["--log-level", "WARNING", *[str(a) for a in args]])
    return _invoke


@pytest.fixture
def talkative_file(tmp_path):
    path = tmp_path / "talkative.json"
    path.write_text(serialize_program(talkative()), encoding="utf-8")
    return path


# ==================== SEED ====================

class TestSeed:
    """Test store generation"""

    def test_fixture(self, invoke, tmp_path):
        out = tmp_path / "s0.json"

        result = invoke("seed", "--fixture", "s0", "--out", out)

        assert result.exit_code == 0, result.stderr
        assert result.stdout.strip() == digest(fixture_s0_document())
        assert read_json_file(out) == fixture_s0_document()

    def test_seed_config_is_deterministic(self, invoke, tmp_path):
        config = tmp_path / "seed.json"
        config.write_text(json.dumps(SEED_CONFIG), encoding="utf-8")

        first = invoke("seed", config, "--out", tmp_path / "a.json")
        second = invoke("seed", config, "--out", tmp_path / "b.json")

        assert first.exit_code == 0, first.stderr
        assert first.stdout == second.stdout
        assert first.stdout.strip() == digest(seed_document(load_seed_config(SEED_CONFIG)))
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_invalid_seed_config(self, invoke, tmp_path):
        config = tmp_path / "seed.json"
        config.write_text(json.dumps({**SEED_CONFIG, "users": 0}), encoding="utf-8")

        result = invoke("seed", config, "--out", tmp_path / "out.json")

        assert result.exit_code == 2
        assert "users" in result.stderr

    def test_non_utf8_seed_config(self, invoke, tmp_path):
        config = tmp_path / "seed.json"
        config.write_bytes(b'{"seed": 1, "note": "\xff"}')

        result = invoke("seed", config, "--out", tmp_path / "out.json")

        assert result.exit_code == 2
        assert "Unreadable JSON" in result.stderr
        assert not (tmp_path / "out.json").exists()


# ==================== RUN ====================

class TestRun:
    """Test program execution against the default fixture store"""

    def test_talkative(self, invoke, talkative_file):
        result = invoke("run", talkative_file, "--viewer", "alice")

        assert result.exit_code == 0, result.stderr
        assert 'SAY "Talkative score: 27"' in result.stdout
        assert result.stdout.rstrip().endswith("reason=done")

    def test_list_titles_transcript(self, invoke):
        result = invoke("run", PROGRAMS / "fig1.json", "--viewer", "alice",
                        "--event", "key:space@1", "--answers", "alice")

        assert result.exit_code == 0, result.stderr
        assert result.stdout.splitlines() == [
            'T1 Cat ASK "Whose projects should I list?"',
            'T3 Cat SAY "Cat Maze"',
            'T4 Cat SAY "Pong"',
            "END tick=6 reason=done",
        ]

    def test_named_session_reuses_cache(self, invoke, talkative_file):
        result = invoke("run", talkative_file, "--viewer", "alice", "--session", "warm",
                        "--repeat", "2", "--show-requests")

        assert result.exit_code == 0, result.stderr
        assert result.stdout.count("Talkative score: 27") == 2
        assert "run 1: requests=" in result.stderr
        assert "run 2: requests=0 list_requests=0 pages=0" in result.stderr

    def test_fresh_flushes_named_session_within_one_process(self, invoke, talkative_file):
        """Named sessions live in process memory; CliRunner keeps both invocations in one process"""
        invoke("run", talkative_file, "--viewer", "alice", "--session", "cold")

        result = invoke("run", talkative_file, "--viewer", "alice", "--session", "cold",
                        "--fresh", "--show-requests")

        assert result.exit_code == 0, result.stderr
        assert "run 1: requests=0 " not in result.stderr

    def test_session_help_states_process_scope(self, invoke):
        result = invoke("run", "--help")
        text = " ".join(result.stdout.split())

        assert "not saved between invocations" in text
        assert "same process only" in text

    def test_max_ticks(self, invoke):
        result = invoke("run", PROGRAMS / "stats_in_repeat.json", "--max-ticks", "3")

        assert result.exit_code == 0, result.stderr
        assert result.stdout.splitlines()[-1] == "END tick=3 reason=max_ticks"

    def test_unknown_viewer(self, invoke, talkative_file):
        result = invoke("run", talkative_file, "--viewer", "mallory")

        assert result.exit_code == 3
        assert "unknown viewer: mallory" in result.stderr
        assert result.stdout == ""

    def test_store_and_url_are_exclusive(self, invoke, talkative_file, tmp_path):
        result = invoke("run", talkative_file, "--store", tmp_path / "s.json", "--url", "http://x")

        assert result.exit_code == 2

    def test_missing_program(self, invoke, tmp_path):
        result = invoke("run", tmp_path / "missing.json")

        assert result.exit_code == 2

    def test_bad_event(self, invoke, talkative_file):
        result = invoke("run", talkative_file, "--event", "click@3")

        assert result.exit_code == 2
        assert "event" in result.stderr

    def test_unreachable_service(self, invoke, talkative_file):
        result = invoke("run", talkative_file, "--viewer", "alice", "--url", "http://127.0.0.1:1")

        assert result.exit_code == 4

    def test_custom_store(self, invoke, talkative_file, tmp_path):
        store = tmp_path / "store.json"
        invoke("seed", "--fixture", "s0", "--out", store)

        result = invoke("run", talkative_file, "--viewer", "bob", "--store", store)

        assert result.exit_code == 0, result.stderr
        assert "Talkative score: 10" in result.stdout


# ==================== LINT / META / EXAMPLES ====================

class TestLint:
    """Test the lint command and its exit codes"""

    def test_clean_program(self, invoke):
        result = invoke("lint", PROGRAMS / "fig1.json")

        assert result.exit_code == 0
        assert result.stdout == ""

    def test_accessor_error(self, invoke):
        result = invoke("lint", PROGRAMS / "misconception1.json")

        assert result.exit_code == 1
        assert result.stdout.startswith("error L1 0/0/body[0]/args[0]/args[1] ")

    def test_warning_only(self, invoke):
        result = invoke("lint", PROGRAMS / "stats_in_repeat.json")

        assert result.exit_code == 0
        assert result.stdout.startswith("warning L2 ")

    def test_schema_error(self, invoke, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"sprites": [{"name": "Cat", "scripts": [{"hat": null, "body": [{"op": "fly"}]}]}]}',
                        encoding="utf-8")

        result = invoke("lint", path)

        assert result.exit_code == 2
        assert result.stdout.startswith("error L0 ")

    def test_syntax_error(self, invoke, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{\n  nope", encoding="utf-8")

        result = invoke("lint", path)

        assert result.exit_code == 2
        assert "line 2" in result.stderr

    def test_non_utf8_program(self, invoke, tmp_path):
        path = tmp_path / "latin.json"
        path.write_bytes(b'{"sprites": [\n  "caf\xe9"]}')

        linted = invoke("lint", path)
        ran = invoke("run", path)

        assert linted.exit_code == 2
        assert "line 2" in linted.stderr and "UTF-8" in linted.stderr
        assert ran.exit_code == 2
        assert "UTF-8" in ran.stderr

    def test_out_of_range_number_literal(self, invoke, tmp_path):
        path = tmp_path / "huge.json"
        path.write_text('{"sprites": [{"name": "Cat", "scripts": [{"hat": {"op": "whenflagclicked"}, '
                        '"body": [{"op": "say", "args": [1e400]}]}]}]}', encoding="utf-8")

        result = invoke("lint", path)

        assert result.exit_code == 2
        assert result.stdout.startswith("error L0 0/0/body[0]")

    def test_non_finite_variable_init(self, invoke, tmp_path):
        path = tmp_path / "init.json"
        path.write_text('{"sprites": [{"name": "Cat", "scripts": [], '
                        '"variables": [{"name": "n", "init": -1e999}]}]}', encoding="utf-8")

        result = invoke("run", path)

        assert result.exit_code == 2
        assert "init" in result.stderr


def test_meta(invoke):
    result = invoke("meta", PROGRAMS / "fig1.json")

    assert result.exit_code == 0
    assert json.loads(result.stdout) == code_metadata(load_program(PROGRAMS / "fig1.json")).to_json()


def test_examples(invoke, tmp_path):
    result = invoke("examples", tmp_path / "out")

    assert result.exit_code == 0
    assert result.stdout.splitlines() == list(SHIPPED_EXAMPLES) + list(LINT_FIXTURES)
    for name, builder in {**SHIPPED_EXAMPLES, **LINT_FIXTURES}.items():
        assert load_program(tmp_path / "out" / name) == builder()


def test_emitted_examples_run_and_lint(invoke, tmp_path):
    """Test the emitted fig1.json and misconception1.json through run and lint"""
    out = tmp_path / "out"
    invoke("examples", out)

    ran = invoke("run", out / "fig1.json", "--viewer", "alice", "--event", "key:space@1", "--answers", "alice")
    clean = invoke("lint", out / "fig1.json")
    flagged = invoke("lint", out / "misconception1.json")

    assert ran.exit_code == 0, ran.stderr
    assert [line for line in ran.stdout.splitlines() if " SAY " in line] == [
        'T3 Cat SAY "Cat Maze"',
        'T4 Cat SAY "Pong"',
    ]
    assert clean.exit_code == 0
    assert flagged.exit_code == 1
    assert flagged.stdout.startswith("error L1 ")


def test_shipped_program_files_match_builders():
    """Programs under content/programs are the canonical serializations"""
    builders = {"fig1.json": list_titles, **LINT_FIXTURES}
    for path in PROGRAMS.glob("*.json"):
        assert path.read_text(encoding="utf-8") == serialize_program(builders[path.name]())
