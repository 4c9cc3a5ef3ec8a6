"""
Request accounting exposed at /api/_debug/requests
"""

import asyncio
from collections import Counter
from typing import Dict

from api.routes import QuerySpec


class RequestCounter:
    """Counts routed requests in total, for list resources, and per resource"""

    def __init__(self):
        self._by_resource: Counter = Counter()
        self._list_requests = 0
        self._lock = asyncio.Lock()

    async def record(self, spec: QuerySpec) -> None:
        async with self._lock:
            self._by_resource[spec.resource.value] += 1
            if spec.resource.is_list:
                self._list_requests += 1

    @property
    def requests(self) -> int:
        return sum(self._by_resource.values())

    @property
    def list_requests(self) -> int:
        return self._list_requests

    def snapshot(self) -> Dict:
        return {
            "requests": self.requests,
            "list_requests": self._list_requests,
            "by_resource": dict(sorted(self._by_resource.items())),
        }

    def reset(self) -> None:
        self._by_resource.clear()
        self._list_requests = 0


__all__ = ["RequestCounter"]
