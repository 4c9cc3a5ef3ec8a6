"""
Request dispatch shared by the HTTP handler and the in-process transport:
translate, count, execute.
"""

import time
from dataclasses import dataclass, replace
from typing import Any, Dict, Mapping, Optional

from api.accounting import RequestCounter
from api.queries import execute_query
from api.routes import DEFAULT_LIMIT, Resource, parse_cloud_body, translate_request
from database.store import CommunityStore
from middlewares.errors import error_payload, error_status
from utils.metrics import metrics


@dataclass(frozen=True)
class ApiResponse:
    status: int
    payload: Any
    store_seq: int

    @property
    def ok(self) -> bool:
        return 200 <= self.status < 300


async def dispatch(
    store: CommunityStore,
    counter: RequestCounter,
    method: str,
    raw_path: str,
    query: Optional[Mapping[str, str]] = None,
    body: str = "",
    page_size: int = DEFAULT_LIMIT,
) -> Dict[str, Any]:
    """
    Handle one API request; errors propagate as exceptions.

    Raises:
        ApiError: routing or validation failure
        NotFoundError: unknown user or project
    """
    start = time.perf_counter()
    resource = "unrouted"
    status = 500
    try:
        spec = translate_request(method, raw_path, query, page_size)
        resource = spec.resource.value
        await counter.record(spec)
        if spec.resource is Resource.CLOUD and spec.method == "PUT":
            spec = replace(spec, write=parse_cloud_body(body))
        payload = await execute_query(spec, store)
        status = 200
        return payload
    except Exception as e:
        status = error_status(e)
        raise
    finally:
        metrics.record_request(resource, status, time.perf_counter() - start)


async def respond(
    store: CommunityStore,
    counter: RequestCounter,
    method: str,
    raw_path: str,
    query: Optional[Mapping[str, str]] = None,
    body: str = "",
    page_size: int = DEFAULT_LIMIT,
) -> ApiResponse:
    """Like ``dispatch`` but errors become error responses"""
    try:
        payload = await dispatch(store, counter, method, raw_path, query, body, page_size)
        status = 200
    except Exception as e:
        status, payload = error_payload(e)
    return ApiResponse(status=status, payload=payload, store_seq=store.revision)


__all__ = ["ApiResponse", "dispatch", "respond"]
