#!/usr/bin/env python3
"""
Health check for a running API service.

Returns exit code 0 if healthy, non-zero if unhealthy.

Usage:
    python healthcheck.py [base-url]

Checks:
1. Stats endpoint - GET /api/stats answers with the three community totals
2. Request accounting - GET /api/_debug/requests answers
"""

import asyncio
import sys
from pathlib import Path
from typing import Tuple

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from client.transport import HttpTransport
from config import load_config
from utils.exceptions import ScbError


async def check_stats(transport: HttpTransport) -> Tuple[bool, str]:
    """
    Check that the stats endpoint answers

    Returns:
        Tuple of (success: bool, message: str)
    """
    try:
        response = await transport.request("GET", "/api/stats")
        if not response.ok:
            return False, f"status {response.status}"
        missing = {"projects", "users", "comments"} - set(response.payload)
        if missing:
            return False, f"missing totals: {', '.join(sorted(missing))}"
        return True, f"Stats OK (users: {response.payload['users']})"
    except ScbError as e:
        return False, e.message


async def check_accounting(transport: HttpTransport) -> Tuple[bool, str]:
    """Check that request accounting is reachable"""
    try:
        counts = await transport.request_counts()
        return True, f"Accounting OK (requests: {counts.get('requests', 0)})"
    except ScbError as e:
        return False, e.message


async def main(base_url: str) -> int:
    """
    Run all health checks

    Exit codes:
    - 0: All checks passed (healthy)
    - 1: One or more checks failed (unhealthy)
    """
    async with HttpTransport(base_url, timeout=5.0) as transport:
        checks = {
            "Stats": check_stats(transport),
            "Accounting": check_accounting(transport),
        }
        results = await asyncio.gather(*checks.values())

    all_healthy = True
    for check_name, (success, message) in zip(checks, results):
        status = "✓" if success else "✗"
        print(f"{status} {check_name:12s} {message}")
        all_healthy = all_healthy and success

    return 0 if all_healthy else 1


if __name__ == "__main__":
    url = sys.argv[1] if len(sys.argv) > 1 else load_config().api.base_url
    try:
        sys.exit(asyncio.run(main(url)))
    except KeyboardInterrupt:
        print("Health check interrupted", file=sys.stderr)
        sys.exit(1)
