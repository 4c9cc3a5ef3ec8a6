"""
Pytest configuration and shared fixtures.

Provides fixtures for:
- Community stores (fixture S0, seeded store, empty store)
- In-process transports and fetch sessions
- Program runs against a store
"""

import random
from typing import Callable, Optional

import pytest

from api.accounting import RequestCounter
from client.cache import FetchSession, clear_fetch_sessions
from client.transport import LocalTransport
from database.seed import build_fixture_s0, fixture_s0_document, load_seed, load_seed_config, seed_document
from database.store import CommunityStore
from interpreter.transcript import Transcript
from program.ast import Program
from tests.helpers import SEED_CONFIG, make_session, run_program


# ==================== STORE FIXTURES ====================

@pytest.fixture
async def s0_store():
    """Fixture S0: alice, bob, carol and their three projects"""
    store = await build_fixture_s0()
    yield store
    await store.close()


@pytest.fixture
def s0_document():
    return fixture_s0_document()


@pytest.fixture
def seeded_document():
    """Store document generated from seed 42"""
    return seed_document(load_seed_config(SEED_CONFIG))


@pytest.fixture
async def seeded_store():
    store = await load_seed(SEED_CONFIG)
    yield store
    await store.close()


@pytest.fixture
async def empty_store():
    store = await CommunityStore.create()
    yield store
    await store.close()


@pytest.fixture
def rng():
    return random.Random(1234)


# ==================== CLIENT FIXTURES ====================

@pytest.fixture(autouse=True)
def _reset_session_registry():
    """Named fetch sessions are process-wide; isolate tests from each other"""
    clear_fetch_sessions()
    yield
    clear_fetch_sessions()


@pytest.fixture
def counter():
    return RequestCounter()


@pytest.fixture
def local_session(s0_store, counter) -> FetchSession:
    """Fetch session over fixture S0, in process"""
    return FetchSession(LocalTransport(s0_store, counter), page_size=20, name="test")


@pytest.fixture
def session_factory() -> Callable[..., FetchSession]:
    return make_session


# ==================== RUN FIXTURES ====================

@pytest.fixture
def runner(local_session):
    """Run a program against fixture S0; runs share the test's session unless one is passed"""

    async def _run(program: Program, session: Optional[FetchSession] = None, **kwargs) -> Transcript:
        return await run_program(program, session or local_session, **kwargs)

    return _run
