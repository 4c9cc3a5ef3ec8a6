"""
End-to-end tests: every shipped example against brute-force oracles

Each example runs through the full stack (interpreter → fetch session →
transport → dispatcher → store) and its output is compared with the same
computation done directly on the store document.
"""

import random

import pytest

from client.cache import project_path
from interpreter.context import EventInjection, parse_events
from interpreter.transcript import EndReason, EventKind
from interpreter.values import to_text
from program import examples
from program.builders import block, flag, foreach, program, project_meta, script, sprite, user_meta
from program.generator import random_program
from program.lint import RULE_ACCESSOR_SCOPE, lint
from program.opcodes import PROJECT_FIELDS, RELATIONS, USER_FIELDS
from tests import oracles
from tests.helpers import make_session, run_program

pytestmark = pytest.mark.e2e

S0_VIEWERS = ["alice", "bob", "carol"]


def _expected_says(name, doc, user):
    """SAY payloads an example should produce for one user"""
    if name == "list_titles":
        return oracles.listed_titles(doc, user)
    if name == "spain_followers":
        return oracles.spain_followers(doc, user)
    if name == "my_sound_projects":
        return oracles.my_sound_projects(doc, user)
    if name == "sound_recommender":
        return oracles.sound_recommendations(doc, user)
    if name == "talkative":
        score = oracles.talkative_score(doc, user)
        if not oracles.profile_reachable(doc, user):
            # excluded case: no follow edge, so the about-me is never read
            score -= len(oracles.about_me(doc, user))
        return [f"Talkative score: {score}"]
    if name == "average_loves":
        return [f"Average no. of loves: {to_text(float(oracles.average_loves(doc, user)))}"]
    if name == "dressup_wallet":
        return [
            f"Dollars: {len(oracles.shared(doc, user))}",
            f"Diamonds: {len(oracles.followers(doc, user))}",
        ]
    if name == "island":
        return [f"{feature}: {n}" for feature, n in oracles.island_features(doc, user).items()]
    if name == "followers_of_followers":
        return [f"Followers of your followers: {oracles.followers_of_followers(doc, user)}"]
    if name == "ice_cream":
        return ["cone"] + [f"scoop for {f}" for f in oracles.followers(doc, user)]
    if name == "doughnut_data":
        return [f"{c} {to_text(v)}" for c, v in oracles.category_fractions(doc, user).items()]
    raise KeyError(name)


# examples that take the user from an ask block instead of the viewer
ASKING = {"list_titles", "spain_followers", "ice_cream", "doughnut_data"}

ORACLE_EXAMPLES = [
    "list_titles",
    "spain_followers",
    "my_sound_projects",
    "sound_recommender",
    "talkative",
    "average_loves",
    "dressup_wallet",
    "island",
    "followers_of_followers",
    "ice_cream",
    "doughnut_data",
]


async def _run_example(name, session, user):
    prog = getattr(examples, name)()
    events = [EventInjection.key_press("space", 0)] if name == "list_titles" else []
    answers = [user] if name in ASKING else []
    return await run_program(prog, session, viewer=user, events=events, answers=answers)


# ==================== ORACLE EQUIVALENCE ====================

@pytest.mark.parametrize("name", ORACLE_EXAMPLES)
@pytest.mark.parametrize("user", S0_VIEWERS)
async def test_examples_on_s0(local_session, s0_document, name, user):
    transcript = await _run_example(name, local_session, user)

    assert transcript.says == _expected_says(name, s0_document, user)
    assert transcript.diagnostics == []


@pytest.mark.slow
@pytest.mark.parametrize("name", ORACLE_EXAMPLES)
async def test_examples_on_seeded_store(seeded_store, seeded_document, name):
    session = make_session(seeded_store, page_size=3)

    for user in [u["username"] for u in seeded_document["users"][:6]]:
        transcript = await _run_example(name, session, user)
        assert transcript.says == _expected_says(name, seeded_document, user), user


async def test_known_s0_answers(runner):
    """Spot values worked out by hand on fixture S0"""
    talk = await runner(examples.talkative())
    doughnut = await runner(examples.doughnut_data(), answers=["alice"])
    average = await runner(examples.average_loves())
    spain = await runner(examples.spain_followers(), answers=["alice"])
    recommend = await runner(examples.sound_recommender())
    cream = await runner(examples.ice_cream(), answers=["alice"])
    island = await runner(examples.island())
    second_degree = await runner(examples.followers_of_followers())

    assert talk.says == ["Talkative score: 27"]
    assert doughnut.says == ["looks 0.75", "sound 0.25"]
    assert average.says == ["Average no. of loves: 2"]
    assert spain.says == ["carol"]
    assert recommend.says == ["Cat Maze"]
    assert cream.says == ["cone", "scoop for bob", "scoop for carol"]
    assert island.says == ["Stars: 1", "Houses: 2", "Trees: 2"]
    assert second_degree.says == ["Followers of your followers: 1"]


async def test_talkative_viewer_without_follow_edges(s0_store, local_session):
    """An isolated viewer's about-me is not reachable from blocks, so it is left out"""
    await s0_store.add_user("dave", about="hello", country="Kenya")
    document = await s0_store.to_document()

    transcript = await run_program(examples.talkative(), local_session, viewer="dave")

    assert not oracles.profile_reachable(document, "dave")
    assert oracles.talkative_score(document, "dave") == 9
    assert transcript.says == ["Talkative score: 4"]
    assert transcript.diagnostics == []


async def test_page_size_does_not_change_transcripts(s0_store):
    renders = set()
    for page_size in (1, 2, 20):
        transcript = await run_program(
            examples.list_titles(), make_session(s0_store, page_size=page_size),
            events=[EventInjection.key_press("space", 1)], answers=["alice"],
        )
        renders.add(transcript.render())

    assert len(renders) == 1


# ==================== CLOUD ====================

async def test_cloud_totals_on_seeded_store(seeded_store, seeded_document):
    session = make_session(seeded_store)
    viewers = [u["username"] for u in seeded_document["users"][:5]]

    for viewer in viewers:
        transcript = await run_program(examples.loveits_vs_favorites(), session, viewer=viewer)

    expected = oracles.cloud_totals(seeded_document, viewers)
    for name, value in expected.items():
        assert transcript.variable("Collector", name) == to_text(float(value))
        assert await seeded_store.cloud_read(1, name) == value


# ==================== CODE METADATA ====================

async def test_code_meta_matches_oracle(seeded_store, seeded_document):
    session = make_session(seeded_store)

    for project in seeded_document["projects"]:
        result = await session.fetch_all(project_path(project["id"], "code-meta"), paginated=False)
        assert result.value == oracles.code_meta_json(seeded_document, project["id"])


# ==================== LINT VS RUNTIME ====================

@pytest.mark.slow
async def test_runtime_scope_errors_are_predicted_by_lint(local_session):
    """Every accessor that fails at run time is one the linter flagged"""
    events = parse_events(["flag@0", "key:space@1", "key:a@2", "key:up@3"])

    for seed in range(50):
        prog = random_program(seed)
        transcript = await run_program(
            prog, local_session, viewer="alice", events=events,
            answers=["alice", "bob", "carol"] * 10, max_ticks=3000,
        )

        runtime = {d.path for d in transcript.of_kind(EventKind.DIAG) if d.rule == RULE_ACCESSOR_SCOPE}
        static = {str(d.path) for d in lint(prog) if d.rule == RULE_ACCESSOR_SCOPE}
        assert runtime <= static, f"seed {seed}"


def _reachable_statements(rng, depth=0):
    """Branch-free statements whose loops all iterate over alice's non-empty S0 lists"""
    statements = []
    for _ in range(rng.randint(1, 3)):
        roll = rng.random()
        if depth < 3 and roll < 0.4:
            statements.append(foreach(rng.choice(RELATIONS), "alice", *_reachable_statements(rng, depth + 1)))
        elif roll < 0.7:
            statements.append(block("say", project_meta(rng.choice(PROJECT_FIELDS))))
        else:
            statements.append(block("say", user_meta(rng.choice(USER_FIELDS))))
    return statements


def _reachable_program(seed):
    rng = random.Random(seed)
    return program(*[
        sprite(name, *[script(flag(), *_reachable_statements(rng)) for _ in range(rng.randint(1, 2))])
        for name in ("Cat", "Dog")
    ])


async def test_lint_matches_runtime_when_every_block_runs(local_session):
    """On programs where every accessor executes, lint and run time flag the same paths"""
    flagged = 0
    for seed in range(40):
        prog = _reachable_program(seed)
        transcript = await run_program(prog, local_session, viewer="alice", max_ticks=3000)

        runtime = {d.path for d in transcript.of_kind(EventKind.DIAG) if d.rule == RULE_ACCESSOR_SCOPE}
        static = {str(d.path) for d in lint(prog) if d.rule == RULE_ACCESSOR_SCOPE}
        assert transcript.reason is EndReason.DONE, f"seed {seed}"
        assert runtime == static, f"seed {seed}"
        flagged += len(static)
    assert flagged > 0
