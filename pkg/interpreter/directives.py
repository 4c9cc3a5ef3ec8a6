"""
What a script thread can ask the scheduler for when it yields.
"""

from dataclasses import dataclass


class Directive:
    """Base class of everything a script generator yields"""


@dataclass(frozen=True)
class Yield(Directive):
    """End of this thread's slice; resume next tick"""


@dataclass(frozen=True)
class WaitUntil(Directive):
    tick: float


@dataclass(frozen=True)
class AwaitAnswer(Directive):
    """After ``ask``: the answer is bound, resume next tick"""


@dataclass(frozen=True)
class FetchRequest(Directive):
    """Complete value of a resource; resumed with a FetchResult"""
    path: str
    paginated: bool = True


@dataclass(frozen=True)
class CloudWrite(Directive):
    """Resumed with the server-side value (None when the project is unknown)"""
    project_id: int
    name: str
    mode: str
    value: float


@dataclass(frozen=True)
class StopAll(Directive):
    pass


__all__ = ["Directive", "Yield", "WaitUntil", "AwaitAnswer", "FetchRequest", "CloudWrite", "StopAll"]
