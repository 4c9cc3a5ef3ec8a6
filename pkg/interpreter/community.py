"""
Semantics of the community palette.

For-each loops fetch their complete list before the first iteration and push a
context frame per item; accessors read the innermost frame of the matching kind
and fall back to a neutral value plus a diagnostic when there is none.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Generator, Optional

from client.cache import STATS_PATH, project_path, user_path
from interpreter.directives import FetchRequest, Yield
from interpreter.values import Value, to_text
from program.ast import Block, BlockPath
from program.lint import RULE_ACCESSOR_SCOPE, scope_message
from program.metadata import CodeMeta
from program.opcodes import PROJECT_RELATIONS, PROJECT_TEXT_FIELDS

RULE_RUNTIME = "RT"

RELATION_SUFFIX = {
    "shared": "projects",
    "favorited": "favorites",
    "followers": "followers",
    "following": "following",
}


class FrameKind(str, Enum):
    PROJECT = "project"
    USER = "user"


@dataclass
class ContextFrame:
    """Current item of an iterating community loop"""
    kind: FrameKind
    payload: Dict[str, Any]
    loop_path: BlockPath
    # fetched on first use by a category or block-count reporter
    code_meta: Optional[CodeMeta] = None


def relation_path(relation: str, username: str) -> str:
    return user_path(username, RELATION_SUFFIX[relation])


def innermost(thread, kind: FrameKind) -> Optional[ContextFrame]:
    for frame in reversed(thread.frames):
        if frame.kind is kind:
            return frame
    return None


def _out_of_context(thread, block: Block, path: BlockPath) -> None:
    thread.diag(RULE_ACCESSOR_SCOPE, path, scope_message(block.op))


def exec_foreach(thread, block: Block, path: BlockPath) -> Generator:
    """Fetch the whole list, then run the body once per item with its frame pushed"""
    username = to_text((yield from thread.eval(block.args[0], path.child("args", 0))))
    relation = block.option("relation")

    result = yield FetchRequest(relation_path(relation, username), paginated=True)
    if not result.found:
        thread.diag(RULE_RUNTIME, path, f"unknown user: {username}")
        return

    kind = FrameKind.PROJECT if relation in PROJECT_RELATIONS else FrameKind.USER
    for item in result.value:
        thread.frames.append(ContextFrame(kind, item, path))
        try:
            yield from thread.exec_list(block.body, path, "body")
        finally:
            thread.frames.pop()
        yield Yield()


def project_meta(thread, block: Block, path: BlockPath) -> Value:
    field = block.option("field")
    frame = innermost(thread, FrameKind.PROJECT)
    if frame is None:
        _out_of_context(thread, block, path)
        return "" if field in PROJECT_TEXT_FIELDS else 0
    return frame.payload[field]


def user_meta(thread, block: Block, path: BlockPath) -> Value:
    frame = innermost(thread, FrameKind.USER)
    if frame is None:
        _out_of_context(thread, block, path)
        return ""
    return frame.payload[block.option("field")]


def frame_code_meta(frame: ContextFrame) -> Generator:
    if frame.code_meta is None:
        result = yield FetchRequest(project_path(frame.payload["id"], "code-meta"), paginated=False)
        frame.code_meta = CodeMeta.from_json(result.value) if result.found else CodeMeta()
    return frame.code_meta


def uses_category(thread, block: Block, path: BlockPath) -> Generator:
    frame = innermost(thread, FrameKind.PROJECT)
    if frame is None:
        _out_of_context(thread, block, path)
        return False
    meta = yield from frame_code_meta(frame)
    return meta.uses(block.option("category"))


def block_count(thread, block: Block, path: BlockPath) -> Generator:
    frame = innermost(thread, FrameKind.PROJECT)
    if frame is None:
        _out_of_context(thread, block, path)
        return 0
    meta = yield from frame_code_meta(frame)
    return meta.count(block.option("opcode"))


def viewer_username(thread) -> str:
    return thread.run.ctx.viewer


def community_total(thread, block: Block, path: BlockPath) -> Generator:
    """Fetched once per session; later calls in the run see the cached value"""
    result = yield FetchRequest(STATS_PATH, paginated=False)
    return result.value[block.option("kind")]


__all__ = [
    "RULE_RUNTIME",
    "FrameKind",
    "ContextFrame",
    "relation_path",
    "innermost",
    "exec_foreach",
    "project_meta",
    "user_meta",
    "uses_category",
    "block_count",
    "viewer_username",
    "community_total",
]
