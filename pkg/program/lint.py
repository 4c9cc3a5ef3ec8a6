"""
Static linter for community-block misuse.

Rules:
    L0  schema error (reported by the parser, never produced here)
    L1  context-sensitive accessor outside its loop (error)
    L2  community total read inside a loop; the value never refreshes (warning)
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, List, Optional

from program.ast import BlockPath, Program, WalkEntry, walk
from program.opcodes import (
    LOOP_OPCODES,
    PROJECT_ACCESSORS,
    PROJECT_RELATIONS,
    USER_ACCESSORS,
    USER_RELATIONS,
)
from utils.exceptions import ProgramSchemaError

RULE_SCHEMA = "L0"
RULE_ACCESSOR_SCOPE = "L1"
RULE_TOTAL_IN_LOOP = "L2"

PROJECT_SCOPE_MESSAGE = "project accessor {op} is only valid inside a shared/favorited project loop"
USER_SCOPE_MESSAGE = "user accessor {op} is only valid inside a followers/following user loop"
TOTAL_IN_LOOP_MESSAGE = "community total is fetched once per run and will not change between loop iterations"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    path: BlockPath
    message: str
    severity: Severity

    def render(self) -> str:
        """``<severity> <rule> <path> <message>``"""
        return f"{self.severity.value} {self.rule} {self.path} {self.message}"


def _has_loop(enclosing: Iterable, relations: frozenset) -> bool:
    return any(
        block.op == "comm_foreach" and block.fields.get("relation") in relations
        for block in enclosing
    )


def scope_message(op: str) -> Optional[str]:
    """L1 message for an accessor opcode, None for other opcodes"""
    if op in PROJECT_ACCESSORS:
        return PROJECT_SCOPE_MESSAGE.format(op=op)
    if op in USER_ACCESSORS:
        return USER_SCOPE_MESSAGE.format(op=op)
    return None


def check_accessor_scope(entry: WalkEntry) -> Optional[Diagnostic]:
    op = entry.block.op
    if op in PROJECT_ACCESSORS and not _has_loop(entry.enclosing, PROJECT_RELATIONS):
        return Diagnostic(RULE_ACCESSOR_SCOPE, entry.path, scope_message(op), Severity.ERROR)
    if op in USER_ACCESSORS and not _has_loop(entry.enclosing, USER_RELATIONS):
        return Diagnostic(RULE_ACCESSOR_SCOPE, entry.path, scope_message(op), Severity.ERROR)
    return None


def check_total_in_loop(entry: WalkEntry) -> Optional[Diagnostic]:
    if entry.block.op != "comm_total":
        return None
    if any(block.op in LOOP_OPCODES for block in entry.enclosing):
        return Diagnostic(RULE_TOTAL_IN_LOOP, entry.path, TOTAL_IN_LOOP_MESSAGE, Severity.WARNING)
    return None


RULES: List[Callable[[WalkEntry], Optional[Diagnostic]]] = [
    check_accessor_scope,
    check_total_in_loop,
]


def lint(program: Program) -> List[Diagnostic]:
    """Run every rule over every block; diagnostics sorted by path"""
    diagnostics = []
    for entry in walk(program):
        for rule in RULES:
            diagnostic = rule(entry)
            if diagnostic is not None:
                diagnostics.append(diagnostic)
    diagnostics.sort(key=lambda d: (d.path.sort_key, d.rule))
    return diagnostics


def schema_diagnostic(error: ProgramSchemaError) -> str:
    """Render a parser failure in the lint line format"""
    return f"{Severity.ERROR.value} {RULE_SCHEMA} {error.path} {error.field}: {error.detail}"


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


__all__ = [
    "RULE_SCHEMA",
    "RULE_ACCESSOR_SCOPE",
    "RULE_TOTAL_IN_LOOP",
    "Severity",
    "Diagnostic",
    "lint",
    "scope_message",
    "schema_diagnostic",
    "has_errors",
]
