"""
One running script.

A ScriptThread wraps a generator that walks the script's blocks. The generator
yields Directives (see interpreter.directives) whenever the script has to give up
control: at the bottom of every loop iteration, on wait and ask, and when it
needs data from the service. The scheduler decides when to resume it.
"""

import math
from enum import Enum
from types import GeneratorType
from typing import Any, Callable, Dict, Generator, List, Optional, Sequence, Tuple

from interpreter import community
from interpreter.community import RULE_RUNTIME, ContextFrame
from interpreter.directives import (
    AwaitAnswer,
    CloudWrite,
    Directive,
    StopAll,
    WaitUntil,
    Yield,
)
from interpreter.transcript import EventKind
from interpreter.values import (
    Value,
    compare,
    divide,
    equals,
    join,
    length_of,
    modulo,
    round_half_up,
    to_bool,
    to_number,
    to_text,
)
from program.ast import Block, BlockPath, Script, Sprite


class StopScript(Exception):
    """Raised by ``stop this script``; ends the current thread only"""


class Status(str, Enum):
    RUNNABLE = "runnable"
    BLOCKED_ON_FETCH = "blocked_on_fetch"
    BLOCKED_UNTIL_TICK = "blocked_until_tick"
    WAITING_FOR_ANSWER = "waiting_for_answer"
    DONE = "done"


_OPERATORS: Dict[str, Callable[..., Value]] = {
    "add": lambda a, b: to_number(a) + to_number(b),
    "sub": lambda a, b: to_number(a) - to_number(b),
    "mul": lambda a, b: to_number(a) * to_number(b),
    "div": divide,
    "mod": modulo,
    "round": round_half_up,
    "gt": lambda a, b: compare(a, b) > 0,
    "lt": lambda a, b: compare(a, b) < 0,
    "eq": equals,
    "and": lambda a, b: to_bool(a) and to_bool(b),
    "or": lambda a, b: to_bool(a) or to_bool(b),
    "not": lambda a: not to_bool(a),
    "join": join,
    "length_of": length_of,
}

# reporters that may suspend the thread to fetch data
_FETCHING_REPORTERS = {
    "comm_project_uses_category": community.uses_category,
    "comm_project_block_count": community.block_count,
    "comm_total": community.community_total,
}


class ScriptThread:
    """
    Execution state of one script: status, wake-up tick, answer register and
    the stack of community context frames.

    Args:
        run: the owning scheduler (tick, transcript, variables, run context)
        sprite_index: position of the sprite in the program
        script_index: position of the script in the sprite
    """

    def __init__(self, run, sprite_index: int, script_index: int):
        self.run = run
        self.sprite_index = sprite_index
        self.script_index = script_index
        self.sprite: Sprite = run.program.sprites[sprite_index]
        self.script: Script = self.sprite.scripts[script_index]
        self.root = BlockPath(sprite_index, script_index)

        self.status = Status.RUNNABLE
        self.wake_tick: float = 0
        self.delivery: Any = None
        self.answer: str = ""
        self.frames: List[ContextFrame] = []
        self._generator = self._main()

    @property
    def key(self) -> Tuple[int, int]:
        return (self.sprite_index, self.script_index)

    @property
    def alive(self) -> bool:
        return self.status is not Status.DONE

    @property
    def variables(self) -> Dict[str, Value]:
        return self.run.variables[self.sprite_index]

    def ready(self, tick: int) -> bool:
        if self.status is Status.RUNNABLE:
            return True
        if self.status is Status.DONE:
            return False
        return self.wake_tick <= tick

    # ------------------------------------------------------------ control

    def resume(self, value: Any = None) -> Optional[Directive]:
        """Run until the next directive; None once the script has finished"""
        self.status = Status.RUNNABLE
        try:
            return self._generator.send(value)
        except StopIteration:
            self.status = Status.DONE
            return None

    def take_delivery(self) -> Any:
        value, self.delivery = self.delivery, None
        return value

    def suspend(self, status: Status, wake_tick: float) -> None:
        self.status = status
        self.wake_tick = wake_tick

    def kill(self) -> None:
        self._generator.close()
        self.frames.clear()
        self.status = Status.DONE

    # -------------------------------------------------------- transcript

    def emit(self, kind: EventKind, text: str) -> None:
        self.run.transcript.emit(self.run.tick, self.sprite.name, kind, text)

    def diag(self, rule: str, path: BlockPath, message: str) -> None:
        self.run.transcript.diag(self.run.tick, self.sprite.name, rule, str(path), message)

    # --------------------------------------------------------- statements

    def _main(self) -> Generator:
        try:
            yield from self.exec_list(self.script.body, self.root, "body")
        except StopScript:
            pass

    def exec_list(self, blocks: Sequence[Block], parent: BlockPath, slot: str) -> Generator:
        for index, block in enumerate(blocks or ()):
            yield from self.exec_block(block, parent.child(slot, index))

    def exec_block(self, block: Block, path: BlockPath) -> Generator:
        result = self._STATEMENTS[block.op](self, block, path)
        if isinstance(result, GeneratorType):
            yield from result

    def _exec_say(self, block: Block, path: BlockPath) -> Generator:
        value = yield from self.eval(block.args[0], path.child("args", 0))
        self.emit(EventKind.SAY, to_text(value))

    def _exec_think(self, block: Block, path: BlockPath) -> Generator:
        value = yield from self.eval(block.args[0], path.child("args", 0))
        self.emit(EventKind.THINK, to_text(value))

    def _exec_wait(self, block: Block, path: BlockPath) -> Generator:
        seconds = to_number((yield from self.eval(block.args[0], path.child("args", 0))))
        scaled = seconds * self.run.ctx.ticks_per_second
        if scaled == math.inf:
            yield WaitUntil(math.inf)
            return
        ticks = 1
        if math.isfinite(scaled):
            ticks = max(1, math.ceil(scaled))
        yield WaitUntil(self.run.tick + ticks)

    def _exec_repeat(self, block: Block, path: BlockPath) -> Generator:
        count = round_half_up((yield from self.eval(block.args[0], path.child("args", 0))))
        if math.isnan(count):
            return
        iteration = 0
        while count == math.inf or iteration < count:
            yield from self.exec_list(block.body, path, "body")
            yield Yield()
            iteration += 1

    def _exec_forever(self, block: Block, path: BlockPath) -> Generator:
        while True:
            yield from self.exec_list(block.body, path, "body")
            yield Yield()

    def _exec_if(self, block: Block, path: BlockPath) -> Generator:
        if to_bool((yield from self.eval(block.args[0], path.child("args", 0)))):
            yield from self.exec_list(block.body, path, "body")

    def _exec_if_else(self, block: Block, path: BlockPath) -> Generator:
        if to_bool((yield from self.eval(block.args[0], path.child("args", 0)))):
            yield from self.exec_list(block.body, path, "body")
        else:
            yield from self.exec_list(block.else_, path, "else")

    def _exec_stop(self, block: Block, path: BlockPath) -> Generator:
        if block.option("option") == "all":
            yield StopAll()
        raise StopScript()

    def _exec_ask(self, block: Block, path: BlockPath) -> Generator:
        question = yield from self.eval(block.args[0], path.child("args", 0))
        self.emit(EventKind.ASK, to_text(question))
        answer = self.run.next_answer()
        if answer is None:
            self.diag(RULE_RUNTIME, path, "answer queue exhausted")
            answer = ""
        self.answer = answer
        yield AwaitAnswer()

    def _exec_set_var(self, block: Block, path: BlockPath) -> Generator:
        value = yield from self.eval(block.args[0], path.child("args", 0))
        yield from self._assign(block, path, value, change=False)

    def _exec_change_var(self, block: Block, path: BlockPath) -> Generator:
        value = yield from self.eval(block.args[0], path.child("args", 0))
        yield from self._assign(block, path, value, change=True)

    def _assign(self, block: Block, path: BlockPath, value: Value, change: bool) -> Generator:
        name = block.option("var")
        if name not in self.variables:
            self.diag(RULE_RUNTIME, path, f"unknown variable: {name}")
            return
        local = to_number(self.variables[name]) + to_number(value) if change else value

        if not self.run.is_cloud(self.sprite_index, name):
            self.variables[name] = local
            return

        number = to_number(value)
        if not math.isfinite(number):
            self.diag(RULE_RUNTIME, path, f"cloud variable {name} only stores finite numbers")
            return
        project_id = self.run.program.cloud_project_id
        result = yield CloudWrite(project_id, name, "change" if change else "set", number)
        if result is None:
            self.diag(RULE_RUNTIME, path, f"unknown cloud project {project_id}; {name} kept locally")
            result = to_number(local)
        self.variables[name] = result

    def _exec_noop(self, block: Block, path: BlockPath) -> Generator:
        for index, arg in enumerate(block.args):
            yield from self.eval(arg, path.child("args", index))

    def _exec_foreach(self, block: Block, path: BlockPath) -> Generator:
        yield from community.exec_foreach(self, block, path)

    _STATEMENTS: Dict[str, Callable] = {
        "say": _exec_say,
        "think": _exec_think,
        "wait": _exec_wait,
        "repeat": _exec_repeat,
        "forever": _exec_forever,
        "if": _exec_if,
        "if_else": _exec_if_else,
        "stop": _exec_stop,
        "ask": _exec_ask,
        "set_var": _exec_set_var,
        "change_var": _exec_change_var,
        "play_sound": _exec_noop,
        "pen_down": _exec_noop,
        "pen_up": _exec_noop,
        "pen_move": _exec_noop,
        "comm_foreach": _exec_foreach,
    }

    # ---------------------------------------------------------- reporters

    def eval(self, arg: Any, path: BlockPath) -> Generator:
        """Value of a literal or reporter block; may suspend for fetches"""
        if not isinstance(arg, Block):
            return arg
        op = arg.op

        if op in _FETCHING_REPORTERS:
            return (yield from _FETCHING_REPORTERS[op](self, arg, path))
        if op == "answer":
            return self.answer
        if op == "var":
            name = arg.option("var")
            if name not in self.variables:
                self.diag(RULE_RUNTIME, path, f"unknown variable: {name}")
                return 0
            return self.variables[name]
        if op == "comm_project_meta":
            return community.project_meta(self, arg, path)
        if op == "comm_user_meta":
            return community.user_meta(self, arg, path)
        if op == "comm_viewer_username":
            return community.viewer_username(self)

        values = []
        for index, child in enumerate(arg.args):
            values.append((yield from self.eval(child, path.child("args", index))))
        return _OPERATORS[op](*values)


__all__ = ["ScriptThread", "Status", "StopScript"]
