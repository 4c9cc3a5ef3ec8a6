"""
URL → QuerySpec translation.

The endpoint table is a list of regular expressions over the raw (still
percent-encoded) request path; path segments are decoded after matching so a
username may contain any character.
"""

import json
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Mapping, Optional, Pattern, Tuple, Union
from urllib.parse import unquote

from config import MAX_PAGE_SIZE
from utils.exceptions import ApiError


class Resource(str, Enum):
    USER = "user"
    USER_PROJECTS = "user_projects"
    USER_FAVORITES = "user_favorites"
    USER_FOLLOWERS = "user_followers"
    USER_FOLLOWING = "user_following"
    PROJECT = "project"
    PROJECT_CODE_META = "project_code_meta"
    STATS = "stats"
    CLOUD = "cloud"

    @property
    def is_list(self) -> bool:
        return self in LIST_RESOURCES


LIST_RESOURCES = frozenset({
    Resource.USER_PROJECTS,
    Resource.USER_FAVORITES,
    Resource.USER_FOLLOWERS,
    Resource.USER_FOLLOWING,
})

# list resource → relation name in the store
RELATION_OF = {
    Resource.USER_PROJECTS: "shared",
    Resource.USER_FAVORITES: "favorited",
    Resource.USER_FOLLOWERS: "followers",
    Resource.USER_FOLLOWING: "following",
}

DEFAULT_LIMIT = 20


@dataclass(frozen=True)
class QuerySpec:
    """Normalized request: what to read (or write) and which window"""
    resource: Resource
    key: Union[str, int, None] = None
    name: Optional[str] = None
    offset: Optional[int] = None
    limit: Optional[int] = None
    method: str = "GET"
    # ("set" | "change", value) for cloud PUT
    write: Optional[Tuple[str, float]] = None


@dataclass(frozen=True)
class Route:
    pattern: Pattern
    resource: Resource
    methods: Tuple[str, ...] = ("GET",)


_SEGMENT = r"([^/]+)"

ROUTES = (
    Route(re.compile(rf"^/api/users/{_SEGMENT}$"), Resource.USER),
    Route(re.compile(rf"^/api/users/{_SEGMENT}/projects$"), Resource.USER_PROJECTS),
    Route(re.compile(rf"^/api/users/{_SEGMENT}/favorites$"), Resource.USER_FAVORITES),
    Route(re.compile(rf"^/api/users/{_SEGMENT}/followers$"), Resource.USER_FOLLOWERS),
    Route(re.compile(rf"^/api/users/{_SEGMENT}/following$"), Resource.USER_FOLLOWING),
    Route(re.compile(rf"^/api/projects/{_SEGMENT}$"), Resource.PROJECT),
    Route(re.compile(rf"^/api/projects/{_SEGMENT}/code-meta$"), Resource.PROJECT_CODE_META),
    Route(re.compile(r"^/api/stats$"), Resource.STATS),
    Route(re.compile(rf"^/api/cloud/{_SEGMENT}/{_SEGMENT}$"), Resource.CLOUD, ("GET", "PUT")),
)

_UNSIGNED = re.compile(r"^\d+$")


def _parse_project_id(raw: str, field: str = "id") -> int:
    if not _UNSIGNED.match(raw) or int(raw) < 1:
        raise ApiError(400, f"{field} must be a positive integer", field=field)
    return int(raw)


def _parse_window(query: Mapping[str, str], page_size: int) -> Tuple[int, int]:
    offset_raw = query.get("offset")
    limit_raw = query.get("limit")

    offset = 0
    if offset_raw is not None:
        if not _UNSIGNED.match(offset_raw):
            raise ApiError(400, "offset must be a non-negative integer", field="offset")
        offset = int(offset_raw)

    limit = min(page_size, MAX_PAGE_SIZE)
    if limit_raw is not None:
        if not _UNSIGNED.match(limit_raw) or int(limit_raw) < 1:
            raise ApiError(400, "limit must be a positive integer", field="limit")
        limit = min(int(limit_raw), MAX_PAGE_SIZE)

    return offset, limit


def translate_request(
    method: str,
    raw_path: str,
    query: Optional[Mapping[str, str]] = None,
    page_size: int = DEFAULT_LIMIT,
) -> QuerySpec:
    """
    Map one HTTP request onto a QuerySpec.

    Args:
        method: HTTP method
        raw_path: percent-encoded path without the query string
        query: decoded query parameters
        page_size: default list limit

    Raises:
        ApiError: 404 unknown route, 405 wrong method, 400 malformed parameter
    """
    query = query or {}
    method = method.upper()

    for route in ROUTES:
        match = route.pattern.match(raw_path)
        if match is None:
            continue
        if method not in route.methods:
            raise ApiError(405, f"method {method} not allowed on {raw_path}")

        segments = [unquote(part) for part in match.groups()]
        resource = route.resource

        if resource in (Resource.PROJECT, Resource.PROJECT_CODE_META):
            return QuerySpec(resource, key=_parse_project_id(segments[0]), method=method)
        if resource is Resource.CLOUD:
            project_id = _parse_project_id(segments[0], field="project_id")
            return QuerySpec(resource, key=project_id, name=segments[1], method=method)
        if resource is Resource.STATS:
            return QuerySpec(resource, method=method)
        if resource.is_list:
            offset, limit = _parse_window(query, page_size)
            return QuerySpec(resource, key=segments[0], offset=offset, limit=limit, method=method)
        return QuerySpec(resource, key=segments[0], method=method)

    raise ApiError(404, f"no route for {raw_path}")


def _finite_number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ApiError(400, f"{field} must be a finite number", field=field)
    return float(value)


def parse_cloud_body(text: str) -> Tuple[str, float]:
    """Decode a cloud PUT body: exactly one of {"set": v} or {"change": d}"""
    try:
        body = json.loads(text) if text else None
    except json.JSONDecodeError:
        raise ApiError(400, "body must be a JSON object", field="body")
    if not isinstance(body, dict):
        raise ApiError(400, "body must be a JSON object", field="body")

    modes = [mode for mode in ("set", "change") if mode in body]
    extra = set(body) - {"set", "change"}
    if len(modes) != 1 or extra:
        raise ApiError(400, 'body must contain exactly one of "set" or "change"', field="body")

    mode = modes[0]
    return mode, _finite_number(body[mode], mode)


__all__ = [
    "Resource",
    "LIST_RESOURCES",
    "RELATION_OF",
    "DEFAULT_LIMIT",
    "QuerySpec",
    "ROUTES",
    "translate_request",
    "parse_cloud_body",
]
