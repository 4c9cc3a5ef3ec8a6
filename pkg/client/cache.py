"""
Fetch layer with a per-session query cache.

A FetchSession walks every page of a list resource before handing the complete
list to the interpreter, and remembers results keyed by resource path until it
is flushed. Results may therefore be stale with respect to the store; that is
the trade-off the cache exists for.

Named sessions live in a process-wide registry (``get_fetch_session``) so
several runs can share one cache.
"""

import asyncio
from contextlib import asynccontextmanager
from dataclasses import dataclass
from enum import Enum
from typing import Any, AsyncIterator, Dict, List, Optional
from urllib.parse import quote

from api.routes import DEFAULT_LIMIT
from client.transport import Transport
from utils.exceptions import SessionBusyError, TransportError
from utils.logger import logger
from utils.metrics import metrics


class Source(str, Enum):
    NETWORK = "network"
    CACHE = "cache"


@dataclass(frozen=True)
class CacheEntry:
    key: str
    value: Any
    # session-relative sequence number of the fetch
    fetched_at: int
    found: bool = True


@dataclass(frozen=True)
class FetchResult:
    """Complete result of one resource query"""
    value: Any
    source: Source
    # False when the service answered 404 (value is the empty sentinel)
    found: bool = True


def user_path(username: str, suffix: str = "") -> str:
    path = f"/api/users/{quote(username, safe='')}"
    return f"{path}/{suffix}" if suffix else path


def project_path(project_id: int, suffix: str = "") -> str:
    path = f"/api/projects/{project_id}"
    return f"{path}/{suffix}" if suffix else path


def cloud_path(project_id: int, name: str) -> str:
    return f"/api/cloud/{project_id}/{quote(name, safe='')}"


STATS_PATH = "/api/stats"


class FetchSession:
    """
    Args:
        transport: where requests go
        page_size: ``limit`` used for every page request
        name: registry name, for logs
    """

    def __init__(self, transport: Transport, page_size: int = DEFAULT_LIMIT, name: str = "default"):
        self.transport = transport
        self.page_size = page_size
        self.name = name
        self._entries: Dict[str, CacheEntry] = {}
        self._sequence = 0
        self._lock = asyncio.Lock()
        self._running = False
        self.requests = 0
        self.page_requests = 0

    # ---------------------------------------------------------------- cache

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def entry(self, key: str) -> Optional[CacheEntry]:
        return self._entries.get(key)

    def lookup(self, key: str) -> Optional[FetchResult]:
        """Cached result without touching the network"""
        entry = self._entries.get(key)
        if entry is None:
            return None
        return FetchResult(entry.value, Source.CACHE, entry.found)

    def flush(self) -> None:
        """Forget every cached result; only allowed between runs"""
        if self._running:
            raise SessionBusyError(f"session {self.name!r} cannot be flushed while a run is in progress")
        if self._entries:
            logger.debug(f"Flushing session {self.name!r} ({len(self._entries)} entries)")
        self._entries.clear()

    def _store(self, key: str, value: Any, found: bool) -> FetchResult:
        self._sequence += 1
        self._entries[key] = CacheEntry(key, value, self._sequence, found)
        return FetchResult(value, Source.NETWORK, found)

    # -------------------------------------------------------------- running

    @property
    def running(self) -> bool:
        return self._running

    @asynccontextmanager
    async def run_scope(self) -> AsyncIterator["FetchSession"]:
        """Marks the session busy for the duration of one run"""
        if self._running:
            raise SessionBusyError(f"session {self.name!r} is already serving a run")
        self._running = True
        try:
            yield self
        finally:
            self._running = False

    # ------------------------------------------------------------- fetching

    async def _get(self, path: str, query: Optional[Dict[str, str]] = None):
        self.requests += 1
        return await self.transport.request("GET", path, query)

    async def _walk_pages(self, path: str) -> Optional[List[Any]]:
        """All pages of a list resource; None when the service answers 404"""
        items: List[Any] = []
        offset = 0
        while True:
            response = await self._get(path, {"offset": str(offset), "limit": str(self.page_size)})
            self.page_requests += 1
            metrics.record_page()
            if response.status == 404:
                return None
            if not response.ok:
                raise TransportError(f"GET {path}", f"unexpected status {response.status}")
            page = response.payload
            items.extend(page["items"])
            total = page["total"]
            offset += page["limit"]
            if offset >= total:
                break
        if len(items) != total:
            raise TransportError(f"GET {path}", f"page walk returned {len(items)} of {total} items")
        return items

    async def fetch_all(self, key: str, paginated: bool = True) -> FetchResult:
        """
        Complete value of one resource, from the cache when possible.

        Args:
            key: resource path without pagination parameters
            paginated: walk ``offset``/``limit`` pages and concatenate items

        Raises:
            TransportError: the service failed mid-fetch (nothing is cached)
        """
        async with self._lock:
            cached = self.lookup(key)
            metrics.record_cache_lookup(hit=cached is not None)
            if cached is not None:
                return cached

            if paginated:
                items = await self._walk_pages(key)
                if items is None:
                    logger.debug(f"{key} not found; caching empty sentinel")
                    return self._store(key, [], found=False)
                return self._store(key, items, found=True)

            response = await self._get(key)
            if response.status == 404:
                return self._store(key, None, found=False)
            if not response.ok:
                raise TransportError(f"GET {key}", f"unexpected status {response.status}")
            return self._store(key, response.payload, found=True)

    async def cloud_read(self, project_id: int, name: str) -> Optional[float]:
        """Current server value of a cloud variable (never cached); None for an unknown project"""
        path = cloud_path(project_id, name)
        response = await self._get(path)
        if response.status == 404:
            return None
        if not response.ok:
            raise TransportError(f"GET {path}", response.payload.get("error", f"status {response.status}"))
        return float(response.payload["value"])

    async def cloud_write(self, project_id: int, name: str, mode: str, value: float) -> Optional[float]:
        """Set or change a cloud variable; returns the server-side result, None for an unknown project"""
        path = cloud_path(project_id, name)
        self.requests += 1
        response = await self.transport.request("PUT", path, body={mode: value})
        if response.status == 404:
            return None
        if not response.ok:
            raise TransportError(f"PUT {path}", response.payload.get("error", f"status {response.status}"))
        return float(response.payload["value"])

    async def user_exists(self, username: str) -> bool:
        result = await self.fetch_all(user_path(username), paginated=False)
        return result.found

    def reset_counters(self) -> None:
        self.requests = 0
        self.page_requests = 0


_sessions: Dict[str, FetchSession] = {}


def get_fetch_session(name: str, transport: Transport, page_size: int = DEFAULT_LIMIT) -> FetchSession:
    """Get or create a named session; an existing one keeps its cache and adopts the transport"""
    session = _sessions.get(name)
    if session is None:
        session = FetchSession(transport, page_size, name)
        _sessions[name] = session
    else:
        session.transport = transport
        session.page_size = page_size
    return session


def drop_fetch_session(name: str) -> None:
    _sessions.pop(name, None)


def clear_fetch_sessions() -> None:
    _sessions.clear()


__all__ = [
    "Source",
    "CacheEntry",
    "FetchResult",
    "FetchSession",
    "STATS_PATH",
    "user_path",
    "project_path",
    "cloud_path",
    "get_fetch_session",
    "drop_fetch_session",
    "clear_fetch_sessions",
]
