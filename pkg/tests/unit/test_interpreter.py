"""
Unit tests for the scheduler and the core block set

Run with: pytest tests/unit/test_interpreter.py -v
"""

import pytest

from interpreter.context import EventInjection, RunContext, parse_answers, parse_events
from interpreter.transcript import EndReason, EventKind
from program.ast import Script
from program.builders import block, change_var, flag, foreach, key, program, project_meta, script, sprite, var, variable
from program.examples import list_titles
from tests.helpers import run_program
from utils.exceptions import ConfigurationError, UnknownViewerError

pytestmark = pytest.mark.unit

VIEWER = block("comm_viewer_username")


def _cat(*scripts, variables=()):
    return program(sprite("Cat", *scripts, variables=variables))


def _ticks(transcript, kind=EventKind.SAY):
    return [event.tick for event in transcript.of_kind(kind)]


# ==================== BASIC RUNS ====================

async def test_say_on_flag(runner):
    """Test the smallest program: one say block on the green flag"""
    transcript = await runner(_cat(script(flag(), block("say", "hi"))))

    assert transcript.lines() == ['T0 Cat SAY "hi"', "END tick=1 reason=done"]


async def test_script_without_hat_never_runs(runner):
    prog = _cat(Script(hat=None, body=(block("say", "never"),)))

    transcript = await runner(prog)

    assert transcript.says == []
    assert transcript.reason is EndReason.DONE
    assert transcript.end_tick == 1


async def test_list_titles_transcript(runner):
    """Test the key-triggered listing: ask at T1, one title per tick after the fetch"""
    transcript = await runner(
        list_titles(),
        events=[EventInjection.key_press("space", 1)],
        answers=["alice"],
    )

    assert transcript.lines() == [
        'T1 Cat ASK "Whose projects should I list?"',
        'T3 Cat SAY "Cat Maze"',
        'T4 Cat SAY "Pong"',
        "END tick=6 reason=done",
    ]


async def test_variables_dumped_in_declaration_order(runner):
    prog = _cat(
        script(flag(), change_var("b", 2), change_var("a", 1)),
        variables=[variable("b"), variable("a", init=10)],
    )

    transcript = await runner(prog)

    assert [line for line in transcript.lines() if line.startswith("VAR")] == ["VAR Cat.b=2", "VAR Cat.a=11"]


async def test_unknown_variable_reports_diagnostic(runner):
    transcript = await runner(_cat(script(flag(), block("say", var("ghost")))))

    assert transcript.says == ["0"]
    assert len(transcript.diagnostics) == 1
    assert transcript.diagnostics[0].rule == "RT"
    assert transcript.diagnostics[0].payload == "unknown variable: ghost"


# ==================== ASK / ANSWER ====================

async def test_answers_are_consumed_in_order(runner):
    prog = _cat(script(
        flag(),
        block("ask", "first?"),
        block("ask", "second?"),
        block("say", block("answer")),
    ))

    transcript = await runner(prog, answers=["one", "two"])

    assert _ticks(transcript, EventKind.ASK) == [0, 1]
    assert transcript.says == ["two"]
    assert transcript.diagnostics == []


async def test_exhausted_answer_queue(runner):
    """Test that an ask with no answer left gives a diagnostic and the empty string"""
    prog = _cat(script(flag(), block("ask", "name?"), block("say", block("join", "<", block("answer")))))

    transcript = await runner(prog)

    assert transcript.says == ["<"]
    diag = transcript.diagnostics[0]
    assert (diag.rule, diag.path, diag.payload) == ("RT", "0/0/body[0]", "answer queue exhausted")


# ==================== CONTROL ====================

@pytest.mark.parametrize("seconds,tick", [(1, 30), (0.5, 15), (0, 1), (-3, 1), ("abc", 1)])
async def test_wait_converts_seconds_to_ticks(runner, seconds, tick):
    transcript = await runner(_cat(script(flag(), block("wait", seconds), block("say", "after"))))

    assert _ticks(transcript) == [tick]


async def test_repeat_yields_every_iteration(runner):
    transcript = await runner(_cat(script(flag(), block("repeat", 3, body=[block("say", "x")]))))

    assert _ticks(transcript) == [0, 1, 2]
    assert transcript.end_tick == 4


@pytest.mark.parametrize("count", [0, -2, "abc"])
async def test_repeat_non_positive_runs_zero_times(runner, count):
    transcript = await runner(_cat(script(flag(), block("repeat", count, body=[block("say", "x")]))))

    assert transcript.says == []


async def test_repeat_rounds_half_up(runner):
    transcript = await runner(_cat(script(flag(), block("repeat", 2.5, body=[block("say", "x")]))))

    assert len(transcript.says) == 3


async def test_if_else_branches(runner):
    prog = _cat(script(
        flag(),
        block("if_else", block("gt", 2, 10), body=[block("say", "numeric")], else_=[block("say", "wrong")]),
        block("if", block("lt", "apple", "banana"), body=[block("say", "text")]),
    ))

    transcript = await runner(prog)

    assert transcript.says == ["wrong", "text"]


async def test_stop_this_script(runner):
    prog = _cat(script(
        flag(),
        block("say", "a"),
        block("stop", option="this script"),
        block("say", "b"),
    ))

    transcript = await runner(prog)

    assert transcript.says == ["a"]
    assert transcript.reason is EndReason.DONE


async def test_stop_all_kills_every_thread(runner):
    prog = _cat(
        script(flag(), block("forever", body=[block("say", "loop")])),
        script(flag(), block("stop", option="all")),
    )

    transcript = await runner(prog)

    assert transcript.says == ["loop"]
    assert transcript.lines()[-1] == "END tick=1 reason=done"


async def test_max_ticks_ends_run(runner):
    transcript = await runner(_cat(script(flag(), block("forever", body=[block("say", "x")]))), max_ticks=5)

    assert transcript.reason is EndReason.MAX_TICKS
    assert transcript.end_tick == 5
    assert _ticks(transcript) == [0, 1, 2, 3, 4]


async def test_numbers_past_double_range_do_not_crash(runner):
    """Test that huge integer literals from builders behave as Infinity"""
    prog = _cat(
        script(
            flag(),
            block("say", block("add", 10 ** 400, 2)),
            block("set_var", 10 ** 400, var="n"),
            block("if", block("gt", var("n"), 0), body=[block("say", block("join", "n=", var("n")))]),
            block("repeat", block("sub", 3, 10 ** 400), body=[block("say", "never")]),
        ),
        variables=[variable("n")],
    )

    transcript = await runner(prog)

    assert transcript.says == ["Infinity", "n=Infinity"]
    assert transcript.reason is EndReason.DONE
    assert "VAR Cat.n=Infinity" in transcript.lines()


async def test_wait_past_tick_range_sleeps_forever(runner):
    prog = _cat(script(flag(), block("wait", 1e307), block("say", "woke")))

    transcript = await runner(prog, max_ticks=10)

    assert transcript.says == []
    assert transcript.reason is EndReason.MAX_TICKS


# ==================== EVENTS ====================

async def test_flag_restarts_running_scripts(runner):
    prog = _cat(script(flag(), block("say", "go"), block("wait", 1)))

    transcript = await runner(prog, events=[EventInjection.flag(0), EventInjection.flag(2)])

    assert _ticks(transcript) == [0, 2]
    assert transcript.end_tick == 33


async def test_key_press_ignored_while_script_runs(runner):
    prog = _cat(script(key("space"), block("say", "k"), block("wait", 0.5)))
    events = parse_events(["key:space@0", "key:space@1", "key:space@20"])

    transcript = await runner(prog, events=events)

    assert _ticks(transcript) == [0, 20]


async def test_other_keys_do_not_fire(runner):
    prog = _cat(script(key("a"), block("say", "a")))

    transcript = await runner(prog, events=parse_events(["key:b@0"]))

    assert transcript.says == []


# ==================== LIVENESS / DETERMINISM ====================

async def test_other_threads_run_while_fetch_pending(runner):
    """Test that a thread waiting on the service does not stall the others"""
    prog = _cat(
        script(flag(), block("forever", body=[change_var("ticker", 1)])),
        script(
            flag(),
            foreach("shared", VIEWER, block("say", project_meta("title"))),
            block("stop", option="all"),
        ),
        variables=[variable("ticker")],
    )

    transcript = await runner(prog, latency_ticks=5)

    assert _ticks(transcript) == [5, 6]
    assert float(transcript.variable("Cat", "ticker")) >= 5


async def test_runs_are_deterministic(s0_store, session_factory):
    renders = set()
    for _ in range(10):
        transcript = await run_program(
            list_titles(), session_factory(s0_store),
            events=[EventInjection.key_press("space", 1)], answers=["alice"],
        )
        renders.add(transcript.render())

    assert len(renders) == 1


# ==================== VIEWER ====================

async def test_unknown_viewer_raises(runner):
    with pytest.raises(UnknownViewerError) as exc_info:
        await runner(_cat(script(flag(), block("say", "hi"))), viewer="mallory")
    assert exc_info.value.exit_code == 3


async def test_empty_viewer_is_logged_out(runner):
    transcript = await runner(_cat(script(flag(), block("say", block("join", "[", VIEWER)))), viewer="")

    assert transcript.says == ["["]


# ==================== CONTEXT ====================

class TestRunContext:
    """Test run parameters and event parsing"""

    def test_flag_added_when_missing(self, local_session):
        ctx = RunContext(viewer="alice", session=local_session, events=parse_events(["key:space@3"]))

        assert [str(event) for event in ctx.schedule] == ["flag@0", "key:space@3"]

    def test_explicit_flag_not_duplicated(self, local_session):
        ctx = RunContext(viewer="alice", session=local_session, events=parse_events(["flag@4"]))

        assert [str(event) for event in ctx.schedule] == ["flag@4"]

    def test_flag_delivered_before_key_on_same_tick(self, local_session):
        ctx = RunContext(viewer="", session=local_session, events=parse_events(["key:a@0", "flag@0"]))

        assert [str(event) for event in ctx.schedule] == ["flag@0", "key:a@0"]

    @pytest.mark.parametrize("text", ["click@1", "flag@x", "flag@-1", ""])
    def test_bad_event_text(self, text):
        with pytest.raises(ConfigurationError):
            parse_events([text])

    def test_event_tick_defaults_to_zero(self):
        assert parse_events(["key:space"])[0] == EventInjection.key_press("space", 0)

    def test_parse_answers(self):
        assert parse_answers(None) == ()
        assert parse_answers("alice,,bob") == ("alice", "", "bob")

    @pytest.mark.parametrize("field", ["max_ticks", "latency_ticks"])
    def test_limits_must_be_positive(self, local_session, field):
        with pytest.raises(ConfigurationError):
            RunContext(viewer="", session=local_session, **{field: 0})
