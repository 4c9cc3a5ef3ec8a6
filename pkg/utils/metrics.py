"""
Prometheus metrics for the API service, the fetch layer and the scheduler.

Usage:
    from utils.metrics import metrics

    metrics.record_request("user_followers", 200, latency=0.002)
    metrics.record_cache_lookup(hit=True)

    text = metrics.get_metrics()
"""

try:
    from prometheus_client import (
        Counter, Histogram,
        generate_latest, CONTENT_TYPE_LATEST
    )
    METRICS_AVAILABLE = True
except ImportError:
    CONTENT_TYPE_LATEST = "text/plain; version=0.0.4; charset=utf-8"
    METRICS_AVAILABLE = False

from utils.logger import logger


if METRICS_AVAILABLE:
    # ==================== API METRICS ====================

    api_requests_total = Counter(
        'scb_api_requests_total',
        'Total API requests',
        ['resource', 'status']
    )

    api_request_latency = Histogram(
        'scb_api_request_latency_seconds',
        'API request latency in seconds',
        ['resource'],
        buckets=[0.0005, 0.001, 0.0025, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 1.0]
    )

    # ==================== CLIENT METRICS ====================

    client_pages_total = Counter(
        'scb_client_pages_total',
        'Pages fetched by the client fetch layer'
    )

    cache_lookups_total = Counter(
        'scb_cache_lookups_total',
        'Client cache lookups',
        ['result']
    )

    # ==================== INTERPRETER METRICS ====================

    scheduler_ticks_total = Counter(
        'scb_scheduler_ticks_total',
        'Scheduler ticks executed'
    )


class MetricsCollector:
    """Centralized metrics collection"""

    def __init__(self):
        self.enabled = METRICS_AVAILABLE

        if not self.enabled:
            logger.debug("Prometheus metrics disabled - install prometheus-client to enable")

    def record_request(self, resource: str, status: int, latency: float) -> None:
        """
        Record one API request.

        Args:
            resource: QuerySpec resource name (or "unrouted")
            status: HTTP status code
            latency: Handling time in seconds
        """
        if not self.enabled:
            return

        try:
            api_requests_total.labels(resource=resource, status=str(status)).inc()
            api_request_latency.labels(resource=resource).observe(latency)
        except Exception as e:
            logger.error(f"Error recording request metrics: {e}")

    def record_page(self) -> None:
        """Record one page fetched by the client"""
        if not self.enabled:
            return

        try:
            client_pages_total.inc()
        except Exception as e:
            logger.error(f"Error recording page metrics: {e}")

    def record_cache_lookup(self, hit: bool) -> None:
        """Record a client cache hit or miss"""
        if not self.enabled:
            return

        try:
            cache_lookups_total.labels(result="hit" if hit else "miss").inc()
        except Exception as e:
            logger.error(f"Error recording cache metrics: {e}")

    def record_ticks(self, count: int) -> None:
        """Record scheduler ticks executed by one run"""
        if not self.enabled:
            return

        try:
            scheduler_ticks_total.inc(count)
        except Exception as e:
            logger.error(f"Error recording tick metrics: {e}")

    def get_metrics(self) -> str:
        """
        Get Prometheus metrics in text format.

        Returns:
            Metrics in Prometheus text format
        """
        if not self.enabled:
            return "# Metrics not available - prometheus-client not installed\n"

        try:
            return generate_latest().decode('utf-8')
        except Exception as e:
            logger.error(f"Error generating metrics: {e}")
            return f"# Error generating metrics: {e}\n"


# Global metrics collector instance
metrics = MetricsCollector()

__all__ = ["metrics", "MetricsCollector", "CONTENT_TYPE_LATEST", "METRICS_AVAILABLE"]
