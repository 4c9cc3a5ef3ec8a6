"""
Interpreter-side fetch layer: transports, paginated fetches and the session cache
"""

from client.cache import FetchResult, FetchSession, Source, get_fetch_session
from client.transport import HttpTransport, LocalTransport, Transport

__all__ = [
    "FetchResult",
    "FetchSession",
    "Source",
    "get_fetch_session",
    "HttpTransport",
    "LocalTransport",
    "Transport",
]
