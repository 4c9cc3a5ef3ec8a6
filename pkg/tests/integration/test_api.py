"""
Integration tests for the HTTP API service

Runs the aiohttp application on a test server over fixture S0.
"""

import asyncio

import pytest
from aiohttp.test_utils import TestClient, TestServer

from api.accounting import RequestCounter
from api.keys import COUNTER_KEY, PAGE_SIZE_KEY
from api.server import create_app
from middlewares.logging import STORE_SEQ_HEADER
from tests import oracles

pytestmark = pytest.mark.integration


@pytest.fixture
async def api_client(s0_store, counter):
    app = create_app(s0_store, counter, page_size=2)
    async with TestClient(TestServer(app)) as client:
        yield client


async def _get(client, path, **params):
    response = await client.get(path, params=params or None)
    return response.status, await response.json()


# ==================== ENTITIES ====================

class TestEntities:
    """Test single-entity endpoints"""

    async def test_user(self, api_client):
        status, payload = await _get(api_client, "/api/users/alice")

        assert status == 200
        assert payload == {"username": "alice", "about": "hi", "country": "Spain"}

    async def test_project_has_no_code(self, api_client):
        status, payload = await _get(api_client, "/api/projects/1")

        assert status == 200
        assert payload["title"] == "Cat Maze"
        assert payload["favorites"] == 2
        assert "code" not in payload

    async def test_code_meta(self, api_client, s0_document):
        status, payload = await _get(api_client, "/api/projects/1/code-meta")

        assert status == 200
        assert payload == oracles.code_meta_json(s0_document, 1)
        assert "sound" in payload["categories"]

    async def test_stats(self, api_client):
        assert await _get(api_client, "/api/stats") == (200, {"projects": 3, "users": 3, "comments": 5})

    async def test_canonical_body_and_revision_header(self, api_client, s0_store):
        response = await api_client.get("/api/users/bob")

        assert await response.text() == '{"about":"","country":"USA","username":"bob"}'
        assert response.headers["Content-Type"].startswith("application/json")
        assert response.headers[STORE_SEQ_HEADER] == str(s0_store.revision)


# ==================== LISTS ====================

class TestLists:
    """Test paginated relation lists"""

    async def test_default_page_size(self, api_client):
        status, page = await _get(api_client, "/api/users/alice/followers")

        assert status == 200
        assert [u["username"] for u in page["items"]] == ["bob", "carol"]
        assert (page["total"], page["offset"], page["limit"]) == (2, 0, 2)

    async def test_window(self, api_client):
        status, page = await _get(api_client, "/api/users/alice/projects", offset="1", limit="1")

        assert [p["title"] for p in page["items"]] == ["Pong"]
        assert page["total"] == 2

    async def test_limit_is_capped(self, api_client):
        status, page = await _get(api_client, "/api/users/alice/projects", limit="5000")

        assert status == 200
        assert page["limit"] == 100

    @pytest.mark.parametrize("suffix,expected", [
        ("favorites", [3]),
        ("following", ["carol"]),
    ])
    async def test_other_relations(self, api_client, suffix, expected):
        status, page = await _get(api_client, f"/api/users/alice/{suffix}")

        keys = [item.get("id", item.get("username")) for item in page["items"]]
        assert keys == expected

    async def test_username_is_percent_decoded(self, api_client, s0_store):
        await s0_store.add_user("a b/c")

        status, payload = await _get(api_client, "/api/users/a%20b%2Fc")

        assert status == 200
        assert payload["username"] == "a b/c"


# ==================== ERRORS ====================

class TestErrors:
    """Test error responses"""

    @pytest.mark.parametrize("path,status", [
        ("/api/users/nobody", 404),
        ("/api/users/nobody/projects", 404),
        ("/api/projects/99", 404),
        ("/api/projects/abc", 400),
        ("/api/projects/0", 400),
        ("/api/nothing", 404),
    ])
    async def test_error_statuses(self, api_client, path, status):
        got, payload = await _get(api_client, path)

        assert got == status
        assert "error" in payload

    @pytest.mark.parametrize("params,field", [
        ({"offset": "-1"}, "offset"),
        ({"limit": "0"}, "limit"),
        ({"limit": "ten"}, "limit"),
    ])
    async def test_bad_window_names_field(self, api_client, params, field):
        status, payload = await _get(api_client, "/api/users/alice/projects", **params)

        assert status == 400
        assert payload["field"] == field

    async def test_wrong_method(self, api_client):
        response = await api_client.post("/api/users/alice")

        assert response.status == 405


# ==================== CLOUD ====================

class TestCloud:
    """Test cloud variable endpoints"""

    async def test_read_write(self, api_client):
        response = await api_client.put("/api/cloud/1/score", json={"set": 5})
        assert response.status == 200
        assert (await response.json())["value"] == 5

        response = await api_client.put("/api/cloud/1/score", json={"change": 2})
        assert (await response.json())["value"] == 7

        assert await _get(api_client, "/api/cloud/1/score") == (
            200, {"project_id": 1, "name": "score", "value": 7},
        )

    @pytest.mark.parametrize("body", [{}, {"set": 1, "change": 1}, {"set": "1"}, {"inc": 1}, [1]])
    async def test_bad_bodies(self, api_client, body):
        response = await api_client.put("/api/cloud/1/score", json=body)

        assert response.status == 400

    async def test_unknown_project(self, api_client):
        response = await api_client.put("/api/cloud/99/score", json={"set": 1})

        assert response.status == 404

    async def test_concurrent_changes(self, api_client):
        responses = await asyncio.gather(*[
            api_client.put("/api/cloud/2/hits", json={"change": 1}) for _ in range(50)
        ])

        assert all(r.status == 200 for r in responses)
        assert (await _get(api_client, "/api/cloud/2/hits"))[1]["value"] == 50


# ==================== ACCOUNTING ====================

class TestAccounting:
    """Test request accounting and metrics"""

    async def test_counts_routed_requests(self, api_client):
        await api_client.get("/api/users/alice")
        await api_client.get("/api/users/alice/projects")
        await api_client.get("/api/users/alice/followers")
        await api_client.get("/api/nothing")

        status, counts = await _get(api_client, "/api/_debug/requests")

        assert counts["requests"] == 3
        assert counts["list_requests"] == 2
        assert counts["by_resource"]["user"] == 1

    async def test_reset(self, api_client):
        await api_client.get("/api/stats")

        response = await api_client.delete("/api/_debug/requests")

        assert (await response.json())["requests"] == 0

    async def test_debug_requests_not_counted(self, api_client):
        await api_client.get("/api/_debug/requests")

        status, counts = await _get(api_client, "/api/_debug/requests")

        assert counts["requests"] == 0

    async def test_metrics_endpoint(self, api_client):
        response = await api_client.get("/metrics")

        assert response.status == 200


def test_create_app_defaults(s0_store):
    app = create_app(s0_store)

    assert isinstance(app[COUNTER_KEY], RequestCounter)
    assert app[PAGE_SIZE_KEY] == 20
