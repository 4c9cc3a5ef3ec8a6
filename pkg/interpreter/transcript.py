"""
Run transcript: the headless stand-in for speech bubbles and variable monitors.

Line grammar::

    T<tick> <sprite> SAY|THINK|ASK "<text>"
    T<tick> <sprite> DIAG <rule> <block path> "<message>"
    VAR <sprite>.<name>=<value>
    END tick=<n> reason=<done|max_ticks>
"""

import json
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Set, Tuple

from interpreter.values import Value, to_text


class EventKind(str, Enum):
    SAY = "SAY"
    THINK = "THINK"
    ASK = "ASK"
    DIAG = "DIAG"
    VAR = "VAR"


class EndReason(str, Enum):
    DONE = "done"
    MAX_TICKS = "max_ticks"


def quote_text(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


@dataclass(frozen=True)
class TranscriptEvent:
    tick: int
    sprite: str
    kind: EventKind
    payload: str
    rule: Optional[str] = None
    # block path for DIAG, variable name for VAR
    path: Optional[str] = None

    def render(self) -> str:
        if self.kind is EventKind.VAR:
            return f"VAR {self.sprite}.{self.path}={self.payload}"
        if self.kind is EventKind.DIAG:
            return f"T{self.tick} {self.sprite} DIAG {self.rule} {self.path} {quote_text(self.payload)}"
        return f"T{self.tick} {self.sprite} {self.kind.value} {quote_text(self.payload)}"


class Transcript:
    """Ordered event sink of one run"""

    def __init__(self):
        self.events: List[TranscriptEvent] = []
        self.end_tick: Optional[int] = None
        self.reason: Optional[EndReason] = None
        self._diag_seen: Set[Tuple[str, str]] = set()

    def emit(self, tick: int, sprite: str, kind: EventKind, text: str) -> None:
        self.events.append(TranscriptEvent(tick, sprite, kind, text))

    def diag(self, tick: int, sprite: str, rule: str, path: str, message: str) -> bool:
        """Record a diagnostic once per (rule, path); returns False for repeats"""
        key = (rule, path)
        if key in self._diag_seen:
            return False
        self._diag_seen.add(key)
        self.events.append(TranscriptEvent(tick, sprite, EventKind.DIAG, message, rule=rule, path=path))
        return True

    def monitor(self, sprite: str, name: str, value: Value) -> None:
        tick = self.events[-1].tick if self.events else 0
        self.events.append(TranscriptEvent(tick, sprite, EventKind.VAR, to_text(value), path=name))

    def finish(self, tick: int, reason: EndReason) -> None:
        self.end_tick = tick
        self.reason = reason

    # ------------------------------------------------------------- queries

    def of_kind(self, kind: EventKind) -> List[TranscriptEvent]:
        return [event for event in self.events if event.kind is kind]

    @property
    def says(self) -> List[str]:
        return [event.payload for event in self.of_kind(EventKind.SAY)]

    @property
    def diagnostics(self) -> List[TranscriptEvent]:
        return self.of_kind(EventKind.DIAG)

    def variable(self, sprite: str, name: str) -> Optional[str]:
        for event in self.of_kind(EventKind.VAR):
            if event.sprite == sprite and event.path == name:
                return event.payload
        return None

    def lines(self) -> List[str]:
        lines = [event.render() for event in self.events]
        if self.reason is not None:
            lines.append(f"END tick={self.end_tick} reason={self.reason.value}")
        return lines

    def render(self) -> str:
        return "".join(line + "\n" for line in self.lines())


__all__ = ["EventKind", "EndReason", "TranscriptEvent", "Transcript", "quote_text"]
