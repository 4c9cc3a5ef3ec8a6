"""
QuerySpec execution against the community store
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

from api.routes import RELATION_OF, QuerySpec, Resource
from database.store import CommunityStore
from utils.exceptions import ApiError


@dataclass(frozen=True)
class Page:
    """One window of a list resource"""
    items: List[Dict[str, Any]] = field(default_factory=list)
    total: int = 0
    offset: int = 0
    limit: int = 20

    def to_json(self) -> Dict[str, Any]:
        return {"items": list(self.items), "total": self.total, "offset": self.offset, "limit": self.limit}


async def execute_query(spec: QuerySpec, store: CommunityStore) -> Dict[str, Any]:
    """
    Run one QuerySpec.

    Returns:
        dict: response payload (page, entity, stats or cloud value)

    Raises:
        NotFoundError: unknown user or project
    """
    resource = spec.resource

    if resource.is_list:
        items, total = await store.relation_page(spec.key, RELATION_OF[resource], spec.offset, spec.limit)
        return Page(items=items, total=total, offset=spec.offset, limit=spec.limit).to_json()

    if resource is Resource.USER:
        return await store.user(spec.key)

    if resource is Resource.PROJECT:
        return await store.project_meta(spec.key)

    if resource is Resource.PROJECT_CODE_META:
        return (await store.code_meta(spec.key)).to_json()

    if resource is Resource.STATS:
        return (await store.community_stats()).to_json()

    if resource is Resource.CLOUD:
        if spec.method == "PUT":
            if spec.write is None:
                raise ApiError(400, "missing cloud write", field="body")
            mode, value = spec.write
            new_value = await store.cloud_write(spec.key, spec.name, mode, value)
        else:
            new_value = await store.cloud_read(spec.key, spec.name)
        return {"project_id": spec.key, "name": spec.name, "value": new_value}

    raise ApiError(404, f"unsupported resource {resource.value}")


__all__ = ["Page", "execute_query"]
