"""
Deterministic random program generator.

Used by the seeder (small core-opcode programs stored as project code) and by
the property tests (round-trip corpus, lint/runtime scoping corpus). Generated
programs always terminate: there is no `forever`, loop counts are small and
waits are short.
"""

import random
from typing import List, Sequence

from program.ast import Block, Literal, Program, Script
from program.builders import block, flag, key, program, script, sprite, variable
from program.opcodes import (
    Category,
    OPCODES,
    PROJECT_FIELDS,
    RELATIONS,
    TOTAL_KINDS,
    USER_FIELDS,
)

_VARIABLES = ("score", "n")
_WORDS = ("cat", "maze", "pong", "quiz", "hello", "Spain", "42", "3.5", "")
_KEYS = ("space", "a", "up")
_BINARY = ("add", "sub", "mul", "div", "mod", "join", "gt", "lt", "eq", "and", "or")
_UNARY = ("round", "not", "length_of")


class ProgramGenerator:
    """
    Args:
        rng: source of randomness (seeded by the caller)
        usernames: values used as community loop arguments
        community: allow community-palette blocks
        max_depth: nesting limit for statements and expressions
    """

    def __init__(
        self,
        rng: random.Random,
        usernames: Sequence[str] = ("alice", "bob", "carol"),
        community: bool = True,
        max_depth: int = 3,
        max_statements: int = 3,
    ):
        self.rng = rng
        self.usernames = tuple(usernames)
        self.community = community
        self.max_depth = max_depth
        self.max_statements = max_statements

    # ------------------------------------------------------------- top level

    def program(self, sprites: int = 0) -> Program:
        count = sprites or self.rng.randint(1, 2)
        return program(*[self._sprite(f"Sprite{i + 1}") for i in range(count)])

    def _sprite(self, name: str):
        scripts = [self._script() for _ in range(self.rng.randint(1, 3))]
        return sprite(name, *scripts, variables=[variable(v) for v in _VARIABLES])

    def _script(self) -> Script:
        roll = self.rng.random()
        if roll < 0.6:
            hat = flag()
        elif roll < 0.9:
            hat = key(self.rng.choice(_KEYS))
        else:
            hat = None
        return script(hat, *self.statements(0))

    # ------------------------------------------------------------ statements

    def statements(self, depth: int) -> List[Block]:
        return [self.statement(depth) for _ in range(self.rng.randint(1, self.max_statements))]

    def statement(self, depth: int) -> Block:
        rng = self.rng
        choices = ["say", "think", "set_var", "change_var", "play_sound", "pen_move", "pen_down", "ask", "wait"]
        if depth < self.max_depth:
            choices += ["repeat", "if", "if_else"]
            if self.community:
                choices += ["comm_foreach", "comm_foreach"]
        op = rng.choice(choices)

        if op in ("say", "think", "ask", "pen_move"):
            return block(op, self.expr(depth))
        if op in ("set_var", "change_var"):
            return block(op, self.expr(depth), var=rng.choice(_VARIABLES))
        if op == "play_sound":
            return block(op, sound=rng.choice(("meow", "pop")))
        if op == "pen_down":
            return block(rng.choice(("pen_down", "pen_up")))
        if op == "wait":
            return block(op, rng.choice((0, 0.05, 0.1)))
        if op == "repeat":
            return block(op, rng.randint(0, 3), body=self.statements(depth + 1))
        if op == "if":
            return block(op, self.condition(depth), body=self.statements(depth + 1))
        if op == "if_else":
            return block(
                op, self.condition(depth),
                body=self.statements(depth + 1),
                else_=self.statements(depth + 1),
            )
        relation = rng.choice(RELATIONS)
        username = rng.choice(self.usernames + ("nobody",))
        return block("comm_foreach", username, body=self.statements(depth + 1), relation=relation)

    # ----------------------------------------------------------- expressions

    def condition(self, depth: int) -> Block:
        op = self.rng.choice(("gt", "lt", "eq"))
        return block(op, self.expr(depth + 1), self.expr(depth + 1))

    def literal(self) -> Literal:
        roll = self.rng.random()
        if roll < 0.5:
            return self.rng.randint(-5, 20)
        if roll < 0.6:
            return self.rng.choice((True, False))
        return self.rng.choice(_WORDS)

    def expr(self, depth: int) -> "Block | Literal":
        rng = self.rng
        if depth >= self.max_depth or rng.random() < 0.4:
            return self.literal()

        choices = ["answer", "var", "binary", "binary", "unary"]
        if self.community:
            choices += ["project", "user", "viewer", "total", "category", "count"]
        kind = rng.choice(choices)

        if kind == "answer":
            return block("answer")
        if kind == "var":
            return block("var", var=rng.choice(_VARIABLES))
        if kind == "binary":
            return block(rng.choice(_BINARY), self.expr(depth + 1), self.expr(depth + 1))
        if kind == "unary":
            return block(rng.choice(_UNARY), self.expr(depth + 1))
        if kind == "project":
            return block("comm_project_meta", field=rng.choice(PROJECT_FIELDS))
        if kind == "user":
            return block("comm_user_meta", field=rng.choice(USER_FIELDS))
        if kind == "viewer":
            return block("comm_viewer_username")
        if kind == "total":
            return block("comm_total", kind=rng.choice(TOTAL_KINDS))
        if kind == "category":
            return block("comm_project_uses_category", category=rng.choice(list(Category)).value)
        return block("comm_project_block_count", opcode=rng.choice(sorted(OPCODES)))


def random_program(seed: int, **kwargs) -> Program:
    """Convenience wrapper: one program from an integer seed"""
    return ProgramGenerator(random.Random(seed), **kwargs).program()


__all__ = ["ProgramGenerator", "random_program"]
