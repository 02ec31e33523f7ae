import os

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

from sysid.utils.logger import get_logger

logger = get_logger(__name__)

# ---------------------------------------
# Disable metrics completely in tests
# ---------------------------------------
if os.getenv("SYSID_ENV") == "test":

    class DummyMetric:
        def labels(self, *args, **kwargs):
            return self

        def inc(self, *args, **kwargs):
            pass

        def observe(self, *args, **kwargs):
            pass

    REGISTRY = None

    SOLVER_LATENCY = DummyMetric()
    SOLVER_CALLS_TOTAL = DummyMetric()
    SIMULATIONS_TOTAL = DummyMetric()

else:
    # Dedicated registry so a batch job can dump exactly its own series.
    REGISTRY = CollectorRegistry()

    # ---------------- Solvers ----------------
    SOLVER_LATENCY = Histogram(
        "sysid_solver_latency_seconds",
        "Wall time of one solver call over all state dimensions",
        ["solver"],
        registry=REGISTRY,
    )

    SOLVER_CALLS_TOTAL = Counter(
        "sysid_solver_calls_total",
        "Solver invocations",
        ["solver", "status"],
        registry=REGISTRY,
    )

    # ---------------- Simulation ----------------
    SIMULATIONS_TOTAL = Counter(
        "sysid_simulations_total",
        "Benchmark trajectories generated",
        ["system"],
        registry=REGISTRY,
    )


def dump_metrics(path: str) -> bool:
    """
    Write the current metric values in Prometheus text format.

    Meant for the node-exporter textfile collector after a batch run.
    Returns False when metrics are disabled.
    """
    if REGISTRY is None:
        return False
    write_to_textfile(path, REGISTRY)
    logger.info("Metrics written", extra={"path": path})
    return True
