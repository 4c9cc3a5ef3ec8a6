"""
Helpers shared by test modules (fixtures live in conftest.py)
"""

from typing import Iterable, Optional

from api.accounting import RequestCounter
from client.cache import FetchSession
from client.transport import LocalTransport
from database.store import CommunityStore
from interpreter.context import EventInjection, RunContext
from interpreter.scheduler import run
from interpreter.transcript import Transcript
from program.ast import Program

SEED_CONFIG = {
    "seed": 42,
    "users": 30,
    "max_projects_per_user": 3,
    "follow_prob": 0.1,
    "favorite_prob": 0.05,
    "love_mean": 3.0,
    "comment_mean": 2.0,
    "countries": ["Spain", "USA", "Brazil", "Japan", "Kenya"],
}


def make_session(store: CommunityStore, page_size: int = 20, counter: Optional[RequestCounter] = None
                 ) -> FetchSession:
    return FetchSession(LocalTransport(store, counter or RequestCounter()), page_size=page_size)


async def run_program(
    program: Program,
    session: FetchSession,
    viewer: str = "alice",
    events: Iterable[EventInjection] = (),
    answers: Iterable[str] = (),
    **kwargs,
) -> Transcript:
    ctx = RunContext(viewer=viewer, session=session, events=tuple(events), answers=tuple(answers), **kwargs)
    return await run(program, ctx)
