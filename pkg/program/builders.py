"""
Small constructors for building programs in Python (examples, generator, tests).

    prog = program(sprite("Cat", script(flag(), block("say", "hi"))))
"""

from typing import Iterable, Optional, Sequence

from program.ast import Block, Literal, Program, Script, Sprite, Variable
from program.opcodes import OPCODES


def block(
    op: str,
    *args: "Block | Literal",
    body: Optional[Sequence[Block]] = None,
    else_: Optional[Sequence[Block]] = None,
    **fields: str,
) -> Block:
    """Build a block; container slots default to empty lists when the opcode has them"""
    spec = OPCODES[op]
    return Block(
        op=op,
        fields=dict(fields),
        args=tuple(args),
        body=tuple(body or ()) if spec.body else None,
        else_=tuple(else_ or ()) if spec.has_else else None,
    )


def flag() -> Block:
    return block("whenflagclicked")


def key(name: str) -> Block:
    return block("whenkeypressed", key=name)


def script(hat: Optional[Block], *body: Block) -> Script:
    return Script(hat=hat, body=tuple(body))


def variable(name: str, init: float = 0, cloud: bool = False) -> Variable:
    return Variable(name=name, cloud=cloud, init=init)


def sprite(name: str, *scripts: Script, variables: Iterable[Variable] = ()) -> Sprite:
    return Sprite(name=name, variables=tuple(variables), scripts=tuple(scripts))


def program(*sprites: Sprite, cloud_project_id: Optional[int] = None) -> Program:
    return Program(sprites=tuple(sprites), cloud_project_id=cloud_project_id)


# frequently used community blocks

def foreach(relation: str, username: "Block | Literal", *body: Block) -> Block:
    return block("comm_foreach", username, body=body, relation=relation)


def project_meta(field: str) -> Block:
    return block("comm_project_meta", field=field)


def user_meta(field: str) -> Block:
    return block("comm_user_meta", field=field)


def var(name: str) -> Block:
    return block("var", var=name)


def set_var(name: str, value: "Block | Literal") -> Block:
    return block("set_var", value, var=name)


def change_var(name: str, value: "Block | Literal") -> Block:
    return block("change_var", value, var=name)


__all__ = [
    "block",
    "flag",
    "key",
    "script",
    "variable",
    "sprite",
    "program",
    "foreach",
    "project_meta",
    "user_meta",
    "var",
    "set_var",
    "change_var",
]
