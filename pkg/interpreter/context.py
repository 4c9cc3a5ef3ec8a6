"""
Run parameters: viewer identity, injected events, the answer queue and limits.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Tuple

from client.cache import FetchSession
from config import TICKS_PER_SECOND
from interpreter.transcript import Transcript
from utils.exceptions import ConfigurationError

_EVENT = re.compile(r"^(?:(?P<flag>flag)|key:(?P<key>.+?))(?:@(?P<tick>\d+))?$")


class EventType(str, Enum):
    FLAG = "flag"
    KEY = "key"


@dataclass(frozen=True)
class EventInjection:
    """A green-flag click or key press delivered at a given tick"""
    type: EventType
    tick: int = 0
    key: Optional[str] = None

    @classmethod
    def flag(cls, tick: int = 0) -> "EventInjection":
        return cls(EventType.FLAG, tick)

    @classmethod
    def key_press(cls, key: str, tick: int = 0) -> "EventInjection":
        return cls(EventType.KEY, tick, key)

    @classmethod
    def parse(cls, text: str) -> "EventInjection":
        """``flag@T`` or ``key:K@T``; the tick defaults to 0"""
        match = _EVENT.match(text.strip())
        if match is None:
            raise ConfigurationError("event", f"expected flag@T or key:K@T, got {text!r}")
        tick = int(match.group("tick") or 0)
        if match.group("flag"):
            return cls.flag(tick)
        return cls.key_press(match.group("key"), tick)

    def __str__(self) -> str:
        if self.type is EventType.FLAG:
            return f"flag@{self.tick}"
        return f"key:{self.key}@{self.tick}"


@dataclass
class RunContext:
    """
    Everything a run needs besides the program.

    A green-flag click at tick 0 is added unless ``events`` already contains a
    flag event.
    """
    viewer: str
    session: FetchSession
    events: Tuple[EventInjection, ...] = ()
    answers: Tuple[str, ...] = ()
    max_ticks: int = 10000
    latency_ticks: int = 1
    ticks_per_second: int = TICKS_PER_SECOND
    transcript: Transcript = field(default_factory=Transcript)

    def __post_init__(self):
        if self.max_ticks < 1:
            raise ConfigurationError("max_ticks", "must be ≥ 1")
        if self.latency_ticks < 1:
            raise ConfigurationError("latency_ticks", "must be ≥ 1")
        self.events = tuple(self.events)
        self.answers = tuple(self.answers)

    @property
    def schedule(self) -> Tuple[EventInjection, ...]:
        """Injected events in delivery order"""
        events = list(self.events)
        if not any(event.type is EventType.FLAG for event in events):
            events.append(EventInjection.flag(0))
        return tuple(sorted(events, key=lambda e: (e.tick, e.type is EventType.KEY)))


def parse_events(texts: Iterable[str]) -> Tuple[EventInjection, ...]:
    return tuple(EventInjection.parse(text) for text in texts)


def parse_answers(text: Optional[str]) -> Tuple[str, ...]:
    """Comma-separated answer list; None means no answers"""
    if text is None:
        return ()
    return tuple(text.split(","))


__all__ = ["EventType", "EventInjection", "RunContext", "parse_events", "parse_answers"]
