"""
Transports used by the fetch layer.

HttpTransport talks to a running API service over aiohttp; LocalTransport
calls the same dispatcher in-process, so both see identical routing,
pagination and error payloads.
"""

import asyncio
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional

import aiohttp
from yarl import URL

from api.accounting import RequestCounter
from api.dispatch import respond
from api.routes import DEFAULT_LIMIT
from database.store import CommunityStore
from utils.exceptions import TransportError
from utils.logger import logger


@dataclass(frozen=True)
class TransportResponse:
    status: int
    payload: Any

    @property
    def ok(self) -> bool:
        return 200 <= self.status < 300


class Transport(ABC):
    """One request at a time, JSON in and out"""

    name: str = "transport"

    @abstractmethod
    async def request(
        self,
        method: str,
        path: str,
        query: Optional[Mapping[str, str]] = None,
        body: Optional[Dict[str, Any]] = None,
    ) -> TransportResponse:
        """Send a request; raises TransportError when the service can't be reached"""

    @abstractmethod
    async def request_counts(self) -> Dict[str, Any]:
        """The service's request accounting"""

    async def close(self) -> None:
        pass

    async def __aenter__(self) -> "Transport":
        return self

    async def __aexit__(self, *exc_info) -> None:
        await self.close()


class LocalTransport(Transport):
    """In-process transport over a CommunityStore"""

    name = "local"

    def __init__(
        self,
        store: CommunityStore,
        counter: Optional[RequestCounter] = None,
        page_size: int = DEFAULT_LIMIT,
    ):
        self.store = store
        self.counter = counter or RequestCounter()
        self.page_size = page_size

    async def request(self, method, path, query=None, body=None) -> TransportResponse:
        text = json.dumps(body) if body is not None else ""
        response = await respond(self.store, self.counter, method, path, query, text, self.page_size)
        if response.status >= 500:
            raise TransportError(f"{method} {path}", f"server error {response.status}")
        return TransportResponse(response.status, response.payload)

    async def request_counts(self) -> Dict[str, Any]:
        return self.counter.snapshot()


class HttpTransport(Transport):
    """aiohttp client for a remote API service"""

    name = "http"

    def __init__(self, base_url: str, timeout: float = 10.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = aiohttp.ClientTimeout(total=timeout)
        self._session: Optional[aiohttp.ClientSession] = None

    def _client(self) -> aiohttp.ClientSession:
        if self._session is None or self._session.closed:
            self._session = aiohttp.ClientSession(timeout=self.timeout)
        return self._session

    async def request(self, method, path, query=None, body=None) -> TransportResponse:
        endpoint = f"{method} {self.base_url}{path}"
        url = URL(self.base_url + path, encoded=True)
        try:
            async with self._client().request(method, url, params=query, json=body) as response:
                try:
                    payload = await response.json(content_type=None)
                except (json.JSONDecodeError, aiohttp.ContentTypeError) as e:
                    raise TransportError(endpoint, f"invalid JSON response: {e}") from e
                status = response.status
        except (aiohttp.ClientError, asyncio.TimeoutError) as e:
            logger.warning(f"Request failed: {endpoint}: {e!r}")
            raise TransportError(endpoint, str(e) or type(e).__name__) from e

        if status >= 500:
            raise TransportError(endpoint, f"server error {status}")
        return TransportResponse(status, payload)

    async def request_counts(self) -> Dict[str, Any]:
        response = await self.request("GET", "/api/_debug/requests")
        return response.payload

    async def close(self) -> None:
        if self._session is not None and not self._session.closed:
            await self._session.close()
        self._session = None


__all__ = ["TransportResponse", "Transport", "LocalTransport", "HttpTransport"]
