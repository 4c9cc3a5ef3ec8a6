"""
Deterministic cooperative round-robin scheduler with virtual time.

Every tick the scheduler delivers the injected events due at that tick, then
resumes each ready thread in document order (sprite index, script index) until
it yields. Fetches issued during a tick are performed at the tick boundary, in
issue order, and handed back to their threads ``latency_ticks`` later; other
threads keep running meanwhile.
"""

import time
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, List, Optional, Set, Tuple

from interpreter.community import RULE_RUNTIME
from interpreter.context import EventInjection, EventType, RunContext
from interpreter.directives import (
    AwaitAnswer,
    CloudWrite,
    Directive,
    FetchRequest,
    StopAll,
    WaitUntil,
    Yield,
)
from interpreter.threads import ScriptThread, Status
from interpreter.transcript import EndReason, Transcript
from interpreter.values import Value
from program.ast import Program
from utils.exceptions import UnknownViewerError
from utils.logger import log_run_event, logger
from utils.metrics import metrics


@dataclass
class PendingIO:
    """A fetch or cloud write waiting for the tick boundary"""
    thread: ScriptThread
    directive: Directive
    issue_tick: int


class Scheduler:
    """
    Args:
        program: the program to run
        ctx: viewer, events, answers, limits and the fetch session
    """

    def __init__(self, program: Program, ctx: RunContext):
        self.program = program
        self.ctx = ctx
        self.transcript: Transcript = ctx.transcript
        self.tick = 0
        self.variables: List[Dict[str, Value]] = [
            {variable.name: variable.init for variable in sprite.variables}
            for sprite in program.sprites
        ]
        self.threads: Dict[Tuple[int, int], ScriptThread] = {}
        self._answers: Deque[str] = deque(ctx.answers)
        self._events: List[EventInjection] = list(ctx.schedule)
        self._pending: List[PendingIO] = []
        self._cloud: Set[Tuple[int, str]] = set()
        self._stopped = False

    # ------------------------------------------------------- thread support

    def next_answer(self) -> Optional[str]:
        return self._answers.popleft() if self._answers else None

    def is_cloud(self, sprite_index: int, name: str) -> bool:
        return (sprite_index, name) in self._cloud

    @property
    def alive(self) -> bool:
        return any(thread.alive for thread in self.threads.values())

    # --------------------------------------------------------------- events

    def _start(self, key: Tuple[int, int]) -> None:
        self.threads[key] = ScriptThread(self, *key)

    def _fire(self, event: EventInjection) -> None:
        for sprite_index, sprite in enumerate(self.program.sprites):
            for script_index, script in enumerate(sprite.scripts):
                hat = script.hat
                if hat is None:
                    continue
                key = (sprite_index, script_index)
                running = self.threads.get(key)
                if event.type is EventType.FLAG and hat.op == "whenflagclicked":
                    if running is not None and running.alive:
                        running.kill()
                    self._start(key)
                elif (
                    event.type is EventType.KEY
                    and hat.op == "whenkeypressed"
                    and hat.option("key") == event.key
                    and (running is None or not running.alive)
                ):
                    self._start(key)

    # ------------------------------------------------------------- stepping

    def _step(self, thread: ScriptThread) -> None:
        """Resume one thread until it gives up control for this tick"""
        value = thread.take_delivery()
        while True:
            directive = thread.resume(value)
            value = None
            if directive is None:
                return
            if isinstance(directive, FetchRequest):
                cached = self.ctx.session.lookup(directive.path)
                if cached is not None:
                    metrics.record_cache_lookup(hit=True)
                    value = cached
                    continue
                thread.suspend(Status.BLOCKED_ON_FETCH, float("inf"))
                self._pending.append(PendingIO(thread, directive, self.tick))
            elif isinstance(directive, CloudWrite):
                thread.suspend(Status.BLOCKED_ON_FETCH, float("inf"))
                self._pending.append(PendingIO(thread, directive, self.tick))
            elif isinstance(directive, WaitUntil):
                thread.suspend(Status.BLOCKED_UNTIL_TICK, directive.tick)
            elif isinstance(directive, AwaitAnswer):
                thread.suspend(Status.WAITING_FOR_ANSWER, self.tick + 1)
            elif isinstance(directive, Yield):
                thread.suspend(Status.BLOCKED_UNTIL_TICK, self.tick + 1)
            elif isinstance(directive, StopAll):
                self._stopped = True
            return

    def _step_all(self) -> None:
        for key in sorted(self.threads):
            thread = self.threads[key]
            if not thread.ready(self.tick):
                continue
            self._step(thread)
            if self._stopped:
                return

    def _stop_all(self) -> None:
        for thread in self.threads.values():
            if thread.alive:
                thread.kill()
        self._events.clear()
        self._pending.clear()
        log_run_event("stop_all", {"tick": self.tick})

    async def _complete_io(self) -> None:
        """Perform the IO issued this tick, in issue order"""
        pending, self._pending = self._pending, []
        for io in pending:
            thread = io.thread
            if not thread.alive or self.threads.get(thread.key) is not thread:
                continue
            directive = io.directive
            if isinstance(directive, FetchRequest):
                thread.delivery = await self.ctx.session.fetch_all(directive.path, directive.paginated)
                thread.wake_tick = io.issue_tick + self.ctx.latency_ticks
            else:
                thread.delivery = await self.ctx.session.cloud_write(
                    directive.project_id, directive.name, directive.mode, directive.value
                )
                thread.wake_tick = io.issue_tick + 1

    # ----------------------------------------------------------------- run

    async def _bind_cloud(self) -> None:
        project_id = self.program.cloud_project_id
        if project_id is None:
            return
        for sprite_index, sprite in enumerate(self.program.sprites):
            for variable in sprite.variables:
                if not variable.cloud:
                    continue
                value = await self.ctx.session.cloud_read(project_id, variable.name)
                if value is None:
                    self.transcript.diag(
                        self.tick, sprite.name, RULE_RUNTIME, variable.name,
                        f"unknown cloud project {project_id}; {variable.name} kept locally",
                    )
                    continue
                self._cloud.add((sprite_index, variable.name))
                self.variables[sprite_index][variable.name] = value

    async def run(self) -> Transcript:
        session = self.ctx.session
        started = time.time()
        async with session.run_scope():
            if self.ctx.viewer and not await session.user_exists(self.ctx.viewer):
                raise UnknownViewerError(self.ctx.viewer)
            log_run_event("start", {
                "viewer": self.ctx.viewer,
                "events": [str(event) for event in self._events],
                "session": session.name,
            })
            await self._bind_cloud()

            reason = EndReason.MAX_TICKS
            while self.tick < self.ctx.max_ticks:
                while self._events and self._events[0].tick == self.tick:
                    self._fire(self._events.pop(0))
                self._step_all()
                if self._stopped:
                    self._stop_all()
                await self._complete_io()
                self.tick += 1
                if not self.alive and not self._events:
                    reason = EndReason.DONE
                    break

        for sprite_index, sprite in enumerate(self.program.sprites):
            for variable in sprite.variables:
                self.transcript.monitor(sprite.name, variable.name, self.variables[sprite_index][variable.name])
        self.transcript.finish(self.tick, reason)
        metrics.record_ticks(self.tick)
        log_run_event("end", {
            "tick": self.tick,
            "reason": reason.value,
            "requests": session.requests,
            "duration_ms": round((time.time() - started) * 1000, 2),
        })
        logger.debug(f"Run finished after {self.tick} ticks ({reason.value})")
        return self.transcript


async def run(program: Program, ctx: RunContext) -> Transcript:
    """Execute ``program`` under ``ctx`` and return its transcript"""
    return await Scheduler(program, ctx).run()


__all__ = ["Scheduler", "PendingIO", "run"]
