"""
Headless block interpreter: loose values, transcript, run context, script
threads, community blocks and the round-robin scheduler.
"""

from interpreter.context import EventInjection, EventType, RunContext, parse_answers, parse_events
from interpreter.scheduler import Scheduler, run
from interpreter.threads import ScriptThread, Status
from interpreter.transcript import EndReason, EventKind, Transcript, TranscriptEvent

__all__ = [
    "EventInjection",
    "EventType",
    "RunContext",
    "parse_answers",
    "parse_events",
    "Scheduler",
    "run",
    "ScriptThread",
    "Status",
    "EndReason",
    "EventKind",
    "Transcript",
    "TranscriptEvent",
]
