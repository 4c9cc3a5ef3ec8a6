"""
Fixed opcode table: shape, category, arity, dropdown fields and container slots
of every block the language knows.
"""

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping, Optional, Tuple


class Shape(str, Enum):
    """Where a block may appear"""
    HAT = "hat"
    STATEMENT = "statement"
    REPORTER = "reporter"


class Category(str, Enum):
    """Palette categories, in palette order"""
    EVENTS = "events"
    LOOKS = "looks"
    SOUND = "sound"
    PEN = "pen"
    DATA = "data"
    CONTROL = "control"
    SENSING = "sensing"
    OPERATORS = "operators"
    COMMUNITY = "community"


RELATIONS = ("shared", "favorited", "followers", "following")
PROJECT_RELATIONS = frozenset({"shared", "favorited"})
USER_RELATIONS = frozenset({"followers", "following"})

PROJECT_FIELDS = ("title", "description", "loves", "favorites", "comments")
PROJECT_TEXT_FIELDS = frozenset({"title", "description"})
USER_FIELDS = ("username", "about", "country")
TOTAL_KINDS = ("projects", "users", "comments")
STOP_OPTIONS = ("all", "this script")

# any string is accepted for these fields
FREE_TEXT = None


@dataclass(frozen=True)
class Opcode:
    name: str
    category: Category
    shape: Shape
    arity: int = 0
    fields: Mapping[str, Optional[Tuple[str, ...]]] = field(default_factory=dict)
    body: bool = False
    has_else: bool = False
    boolean: bool = False
    # variable name field resolved against the sprite's variables
    var_field: Optional[str] = None


def _op(name, category, shape, **kwargs) -> Opcode:
    fields = kwargs.pop("fields", {})
    return Opcode(name, category, shape, fields=MappingProxyType(dict(fields)), **kwargs)


_C = Category
_S = Shape

_TABLE = [
    # hats
    _op("whenflagclicked", _C.EVENTS, _S.HAT),
    _op("whenkeypressed", _C.EVENTS, _S.HAT, fields={"key": FREE_TEXT}),
    # statements
    _op("say", _C.LOOKS, _S.STATEMENT, arity=1),
    _op("think", _C.LOOKS, _S.STATEMENT, arity=1),
    _op("wait", _C.CONTROL, _S.STATEMENT, arity=1),
    _op("repeat", _C.CONTROL, _S.STATEMENT, arity=1, body=True),
    _op("forever", _C.CONTROL, _S.STATEMENT, body=True),
    _op("if", _C.CONTROL, _S.STATEMENT, arity=1, body=True),
    _op("if_else", _C.CONTROL, _S.STATEMENT, arity=1, body=True, has_else=True),
    _op("stop", _C.CONTROL, _S.STATEMENT, fields={"option": STOP_OPTIONS}),
    _op("set_var", _C.DATA, _S.STATEMENT, arity=1, fields={"var": FREE_TEXT}, var_field="var"),
    _op("change_var", _C.DATA, _S.STATEMENT, arity=1, fields={"var": FREE_TEXT}, var_field="var"),
    _op("ask", _C.SENSING, _S.STATEMENT, arity=1),
    _op("play_sound", _C.SOUND, _S.STATEMENT, fields={"sound": FREE_TEXT}),
    _op("pen_down", _C.PEN, _S.STATEMENT),
    _op("pen_up", _C.PEN, _S.STATEMENT),
    _op("pen_move", _C.PEN, _S.STATEMENT, arity=1),
    # reporters
    _op("answer", _C.SENSING, _S.REPORTER),
    _op("var", _C.DATA, _S.REPORTER, fields={"var": FREE_TEXT}, var_field="var"),
    _op("add", _C.OPERATORS, _S.REPORTER, arity=2),
    _op("sub", _C.OPERATORS, _S.REPORTER, arity=2),
    _op("mul", _C.OPERATORS, _S.REPORTER, arity=2),
    _op("div", _C.OPERATORS, _S.REPORTER, arity=2),
    _op("mod", _C.OPERATORS, _S.REPORTER, arity=2),
    _op("round", _C.OPERATORS, _S.REPORTER, arity=1),
    _op("gt", _C.OPERATORS, _S.REPORTER, arity=2, boolean=True),
    _op("lt", _C.OPERATORS, _S.REPORTER, arity=2, boolean=True),
    _op("eq", _C.OPERATORS, _S.REPORTER, arity=2, boolean=True),
    _op("and", _C.OPERATORS, _S.REPORTER, arity=2, boolean=True),
    _op("or", _C.OPERATORS, _S.REPORTER, arity=2, boolean=True),
    _op("not", _C.OPERATORS, _S.REPORTER, arity=1, boolean=True),
    _op("join", _C.OPERATORS, _S.REPORTER, arity=2),
    _op("length_of", _C.OPERATORS, _S.REPORTER, arity=1),
    # community
    _op("comm_foreach", _C.COMMUNITY, _S.STATEMENT, arity=1, body=True,
        fields={"relation": RELATIONS}),
    _op("comm_project_meta", _C.COMMUNITY, _S.REPORTER, fields={"field": PROJECT_FIELDS}),
    _op("comm_project_uses_category", _C.COMMUNITY, _S.REPORTER, boolean=True,
        fields={"category": tuple(c.value for c in Category)}),
    _op("comm_project_block_count", _C.COMMUNITY, _S.REPORTER, fields={"opcode": FREE_TEXT}),
    _op("comm_user_meta", _C.COMMUNITY, _S.REPORTER, fields={"field": USER_FIELDS}),
    _op("comm_viewer_username", _C.COMMUNITY, _S.REPORTER),
    _op("comm_total", _C.COMMUNITY, _S.REPORTER, fields={"kind": TOTAL_KINDS}),
]

OPCODES: Mapping[str, Opcode] = MappingProxyType({op.name: op for op in _TABLE})

HAT_OPCODES = frozenset(name for name, op in OPCODES.items() if op.shape is Shape.HAT)
LOOP_OPCODES = frozenset({"repeat", "forever", "comm_foreach"})
PROJECT_ACCESSORS = frozenset({
    "comm_project_meta",
    "comm_project_uses_category",
    "comm_project_block_count",
})
USER_ACCESSORS = frozenset({"comm_user_meta"})

# core = everything outside the community palette
CORE_OPCODES = tuple(name for name, op in OPCODES.items() if op.category is not Category.COMMUNITY)


def category_of(opcode: str) -> Category:
    """Total over the table; KeyError for anything else"""
    return OPCODES[opcode].category


def opcodes_in(category: Category) -> Tuple[str, ...]:
    """Opcodes of one category in table order"""
    return tuple(name for name, op in OPCODES.items() if op.category is category)


__all__ = [
    "Shape",
    "Category",
    "Opcode",
    "OPCODES",
    "HAT_OPCODES",
    "LOOP_OPCODES",
    "PROJECT_ACCESSORS",
    "USER_ACCESSORS",
    "CORE_OPCODES",
    "RELATIONS",
    "PROJECT_RELATIONS",
    "USER_RELATIONS",
    "PROJECT_FIELDS",
    "PROJECT_TEXT_FIELDS",
    "USER_FIELDS",
    "TOTAL_KINDS",
    "STOP_OPTIONS",
    "category_of",
    "opcodes_in",
]
