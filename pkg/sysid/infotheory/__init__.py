from sysid.infotheory.estimators import estimate_cmi, estimate_mi
from sysid.infotheory.schemas import SampleCloud, ShuffleTestConfig
from sysid.infotheory.significance import (
    max_statistic_null,
    max_statistic_threshold,
    shuffle_null,
    shuffle_threshold,
)

__all__ = [
    "SampleCloud",
    "ShuffleTestConfig",
    "estimate_cmi",
    "estimate_mi",
    "max_statistic_null",
    "max_statistic_threshold",
    "shuffle_null",
    "shuffle_threshold",
]
