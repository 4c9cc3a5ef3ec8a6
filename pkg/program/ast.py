"""
Program tree: sprites, scripts, blocks and block paths.

All nodes are frozen dataclasses; tuples are used for every sequence so a parsed
Program can be shared between threads and runs.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, Optional, Tuple, Union

from program.opcodes import OPCODES, Opcode

Literal = Union[str, int, float, bool]

# document order of the slots inside one block
SLOT_ORDER = {"hat": 0, "args": 1, "body": 2, "else": 3}


@dataclass(frozen=True)
class BlockPath:
    """
    Address of a block: sprite index, script index, then (slot, index) steps.

    Rendered as ``0/1/body[2]/args[0]``; the hat of a script is ``0/1/hat``.
    """
    sprite: int
    script: int
    steps: Tuple[Tuple[str, int], ...] = ()

    def child(self, slot: str, index: int = 0) -> "BlockPath":
        return BlockPath(self.sprite, self.script, self.steps + ((slot, index),))

    @property
    def sort_key(self) -> tuple:
        return (self.sprite, self.script, tuple((SLOT_ORDER[s], i) for s, i in self.steps))

    def with_sprite(self, sprite: int) -> "BlockPath":
        return BlockPath(sprite, self.script, self.steps)

    def __str__(self) -> str:
        parts = [str(self.sprite), str(self.script)]
        for slot, index in self.steps:
            parts.append("hat" if slot == "hat" else f"{slot}[{index}]")
        return "/".join(parts)


@dataclass(frozen=True)
class Block:
    op: str
    fields: Dict[str, str] = field(default_factory=dict)
    args: Tuple[Union["Block", Literal], ...] = ()
    body: Optional[Tuple["Block", ...]] = None
    else_: Optional[Tuple["Block", ...]] = None

    @property
    def spec(self) -> Opcode:
        return OPCODES[self.op]

    def option(self, name: str) -> str:
        return self.fields[name]


@dataclass(frozen=True)
class Script:
    """One hat plus a statement list; ``hat=None`` is a detached stack"""
    hat: Optional[Block]
    body: Tuple[Block, ...] = ()


@dataclass(frozen=True)
class Variable:
    name: str
    cloud: bool = False
    init: float = 0.0


@dataclass(frozen=True)
class Sprite:
    name: str
    variables: Tuple[Variable, ...] = ()
    scripts: Tuple[Script, ...] = ()

    def variable(self, name: str) -> Optional[Variable]:
        for variable in self.variables:
            if variable.name == name:
                return variable
        return None


@dataclass(frozen=True)
class Program:
    sprites: Tuple[Sprite, ...]
    cloud_project_id: Optional[int] = None

    def block_at(self, path: BlockPath) -> Block:
        """Resolve a path; raises LookupError for paths that don't exist"""
        script = self.sprites[path.sprite].scripts[path.script]
        node: Optional[Block] = None
        for slot, index in path.steps:
            if slot == "hat":
                node = script.hat
            elif node is None:
                node = script.body[index]
            elif slot == "args":
                node = node.args[index]
            elif slot == "body":
                node = node.body[index]
            else:
                node = node.else_[index]
            if not isinstance(node, Block):
                raise LookupError(f"no block at {path}")
        if node is None:
            raise LookupError(f"no block at {path}")
        return node


@dataclass(frozen=True)
class WalkEntry:
    """One block reached by ``walk`` with its lexical surroundings"""
    path: BlockPath
    block: Block
    # enclosing blocks whose body/else contain this block, outermost first
    enclosing: Tuple[Block, ...]


def walk(program: Program) -> Iterator[WalkEntry]:
    """Every block of every script (hats and argument blocks included), document order"""
    for sprite_index, sprite in enumerate(program.sprites):
        for script_index, script in enumerate(sprite.scripts):
            root = BlockPath(sprite_index, script_index)
            if script.hat is not None:
                yield WalkEntry(root.child("hat"), script.hat, ())
            for index, block in enumerate(script.body):
                yield from _walk_block(block, root.child("body", index), ())


def _walk_block(block: Block, path: BlockPath, enclosing: Tuple[Block, ...]) -> Iterator[WalkEntry]:
    yield WalkEntry(path, block, enclosing)
    for index, arg in enumerate(block.args):
        if isinstance(arg, Block):
            # argument expressions are evaluated outside the block's own body scope
            yield from _walk_block(arg, path.child("args", index), enclosing)
    inner = enclosing + (block,)
    for index, child in enumerate(block.body or ()):
        yield from _walk_block(child, path.child("body", index), inner)
    for index, child in enumerate(block.else_ or ()):
        yield from _walk_block(child, path.child("else", index), inner)


__all__ = [
    "Literal",
    "BlockPath",
    "Block",
    "Script",
    "Variable",
    "Sprite",
    "Program",
    "WalkEntry",
    "walk",
]
