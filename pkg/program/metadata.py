"""
Code metadata: how many times each opcode occurs in a program and which palette
categories it draws from. This is what the code-meta endpoint serves.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet

from program.ast import Program, walk
from program.opcodes import category_of


@dataclass(frozen=True)
class CodeMeta:
    opcode_counts: Dict[str, int] = field(default_factory=dict)
    categories: FrozenSet[str] = frozenset()

    @property
    def total_blocks(self) -> int:
        return sum(self.opcode_counts.values())

    def count(self, opcode: str) -> int:
        return self.opcode_counts.get(opcode, 0)

    def uses(self, category: str) -> bool:
        return category in self.categories

    def to_json(self) -> Dict[str, Any]:
        return {
            "opcode_counts": dict(sorted(self.opcode_counts.items())),
            "categories": sorted(self.categories),
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CodeMeta":
        return cls(
            opcode_counts={str(k): int(v) for k, v in data.get("opcode_counts", {}).items()},
            categories=frozenset(data.get("categories", [])),
        )


def code_metadata(program: Program) -> CodeMeta:
    """Count every block occurrence, hats and argument blocks included"""
    counts = Counter(entry.block.op for entry in walk(program))
    categories = frozenset(category_of(op).value for op, n in counts.items() if n > 0)
    return CodeMeta(opcode_counts=dict(counts), categories=categories)


__all__ = ["CodeMeta", "code_metadata"]
