"""
Entropic Regression.

Forward stage: grow the support one column at a time, picking the
candidate whose refit model output shares the most information with f
beyond what the current model output already explains. Backward stage:
drop columns whose removal loses less information than the tolerance.
Coefficients are always plain least squares on the selected support.
"""

import time
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from sysid.basis.service import PhiLike
from sysid.common.parallel import ordered_map
from sysid.core.errors import ConfigError, DataError
from sysid.er.schemas import BackwardRemoval, ErConfig, ErTrace, ForwardStep
from sysid.infotheory.estimators import estimate_cmi
from sysid.infotheory.schemas import ShuffleTestConfig
from sysid.infotheory.significance import max_statistic_threshold, shuffle_threshold
from sysid.solvers.least_squares import check_problem, refit_on_support
from sysid.solvers.schemas import SolverId, SparseSolution, make_solution
from sysid.utils.logger import get_logger

logger = get_logger(__name__)

TIE_TOLERANCE = 1e-12

_STATIC_STREAM = 0
_DYNAMIC_STREAM = 1
_BACKWARD_STREAM = 2


def regress_on_support(phi: PhiLike, f, support: Sequence[int]) -> np.ndarray:
    """
    Least squares restricted to ``support``; zeros elsewhere.

    Args:
        phi (PhiLike): Basis matrix Φ.
        f: Target vector.
        support (Sequence[int]): Column indices.

    Returns:
        np.ndarray: K-vector of coefficients.
    """
    values, target = check_problem(phi, f)
    support = list(support)
    if any(i < 0 or i >= values.shape[1] for i in support):
        raise ConfigError(f"support {support} outside 0..{values.shape[1] - 1}")
    return refit_on_support(values, target, support)


class _Outputs:
    """Memoized model outputs Φ R(Φ, f, S) keyed by the sorted support."""

    def __init__(self, values: np.ndarray, target: np.ndarray):
        self.values = values
        self.target = target
        self._cache: Dict[Tuple[int, ...], np.ndarray] = {}

    def __call__(self, support: Sequence[int]) -> Optional[np.ndarray]:
        key = tuple(sorted(support))
        if not key:
            return None
        if key not in self._cache:
            self._cache[key] = self.values @ refit_on_support(self.values, self.target, key)
        return self._cache[key]


def _shuffle_config(config: ErConfig, *stream: int) -> ShuffleTestConfig:
    entropy = [config.seed, config.shuffle.seed, *stream]
    seed = int(np.random.SeedSequence(entropy).generate_state(1)[0])
    return config.shuffle.model_copy(update={"seed": seed})


def static_tolerance(
    phi: PhiLike, f, config: ErConfig, support: Sequence[int] = ()
) -> float:
    """
    Tolerance fixed once, before the first forward step.

    With ``static_null="max_statistic"`` this is the shuffle threshold of
    the first step's own statistic: per replica, the largest
    I(Φ R(S ∪ {j}); f_perm | Φ R(S)) over every candidate j, where S is
    ``support``. The accepted winner then carries a family-wide false
    positive rate of 1 - alpha. ``static_null="self"`` tests I(f; f).
    """
    values, target = check_problem(phi, f)
    shuffle = _shuffle_config(config, _STATIC_STREAM)
    if config.static_null == "self":
        return shuffle_threshold(target, target, None, config.knn_k, shuffle)

    outputs = _Outputs(values, target)
    chosen = list(dict.fromkeys(int(i) for i in support))
    candidates = [outputs(chosen + [j]) for j in range(values.shape[1]) if j not in chosen]
    if not candidates:
        return 0.0
    return max_statistic_threshold(candidates, target, outputs(chosen), config.knn_k, shuffle)


def _first_best(scores: np.ndarray, candidates: List[int], largest: bool) -> Tuple[int, float]:
    best = float(np.max(scores) if largest else np.min(scores))
    near = scores >= best - TIE_TOLERANCE if largest else scores <= best + TIE_TOLERANCE
    # Candidates are ascending, so the first hit is the lowest index.
    position = int(np.flatnonzero(near)[0])
    return candidates[position], float(scores[position])


def _validate(values: np.ndarray, config: ErConfig) -> int:
    n_rows, n_cols = values.shape
    if n_rows <= config.knn_k:
        raise DataError(f"Need more than k={config.knn_k} samples, got {n_rows}")
    if config.max_forward_terms is not None and config.max_forward_terms > n_cols:
        raise ConfigError(
            f"max_forward_terms={config.max_forward_terms} exceeds the {n_cols} candidates"
        )
    if any(i < 0 or i >= n_cols for i in config.initial_support):
        raise ConfigError(f"initial_support {config.initial_support} outside 0..{n_cols - 1}")
    if config.max_forward_terms is not None:
        return config.max_forward_terms
    return max(1, min(n_cols, n_rows // 2))


def forward_er(phi: PhiLike, f, config: Optional[ErConfig] = None) -> ErTrace:
    """
    Forward stage of Entropic Regression.

    Each round scores every unused column j by
    I(Φ R(S ∪ {j}); f | Φ R(S)) (plain MI while S is empty) and accepts
    the best one when its score exceeds the tolerance. In static mode the
    tolerance is fixed up front by :func:`static_tolerance`. In dynamic
    mode it starts at zero and, after each accepted step, becomes the
    shuffle threshold of that step's score, gating the next step.

    Returns:
        ErTrace: forward steps and the forward support as final_support.
    """
    config = config or ErConfig()
    values, target = check_problem(phi, f)
    cap = _validate(values, config)
    outputs = _Outputs(values, target)

    support = list(dict.fromkeys(config.initial_support))
    if config.tolerance_mode == "static":
        tolerance = static_tolerance(values, target, config, support)
    else:
        # Raised after every accepted step; the first step only needs a positive score.
        tolerance = 0.0

    steps: List[ForwardStep] = []
    stop: Optional[ForwardStep] = None

    while len(support) < cap:
        candidates = [j for j in range(values.shape[1]) if j not in support]
        if not candidates:
            break
        condition = outputs(support)

        def score(j: int) -> float:
            return estimate_cmi(outputs(support + [j]), target, condition, config.knn_k)

        scores = np.asarray(ordered_map(score, candidates))
        best, value = _first_best(scores, candidates, largest=True)

        if value <= tolerance:
            stop = ForwardStep(index=best, cmi=value, tolerance=tolerance)
            break

        steps.append(ForwardStep(index=best, cmi=value, tolerance=tolerance))
        logger.info(
            "Forward step accepted",
            extra={"index": best, "cmi": value, "tolerance": tolerance, "support_size": len(support) + 1},
        )

        if config.tolerance_mode == "dynamic":
            tolerance = shuffle_threshold(
                outputs(support + [best]),
                target,
                condition,
                config.knn_k,
                _shuffle_config(config, _DYNAMIC_STREAM, len(steps) - 1),
            )
        support.append(best)

    return ErTrace(
        initial_support=list(dict.fromkeys(config.initial_support)),
        forward_steps=steps,
        forward_stop=stop,
        final_support=sorted(support),
        tolerance=tolerance,
        tolerance_mode=config.tolerance_mode,
    )


def backward_er(
    phi: PhiLike,
    f,
    forward_support: Sequence[int],
    config: Optional[ErConfig] = None,
    *,
    forward_trace: Optional[ErTrace] = None,
) -> ErTrace:
    """
    Backward stage of Entropic Regression.

    Each round scores every j in the current set S by
    I(Φ R(S); f | Φ R(S \\ {j})) and removes the weakest column while its
    score stays below the tolerance.

    Args:
        forward_support (Sequence[int]): Output of the forward stage.
        forward_trace (Optional[ErTrace]): Forward trace to extend; its
            tolerance is reused. Without it the static tolerance is computed.

    Returns:
        ErTrace: the complete trace with the surviving support.
    """
    config = config or ErConfig()
    values, target = check_problem(phi, f)
    outputs = _Outputs(values, target)

    if forward_trace is not None:
        trace = forward_trace
    else:
        trace = ErTrace(
            initial_support=sorted(set(int(i) for i in forward_support)),
            tolerance=static_tolerance(values, target, config),
            tolerance_mode="static",
        )

    current = sorted(set(int(i) for i in forward_support))
    if any(i < 0 or i >= values.shape[1] for i in current):
        raise ConfigError(f"forward support {current} outside 0..{values.shape[1] - 1}")

    removals: List[BackwardRemoval] = []
    while current:
        full = outputs(current)

        def score(j: int) -> float:
            rest = [i for i in current if i != j]
            return estimate_cmi(full, target, outputs(rest), config.knn_k)

        scores = np.asarray(ordered_map(score, current))
        weakest, value = _first_best(scores, current, largest=False)

        tolerance = trace.tolerance
        if config.backward_tolerance == "recompute":
            tolerance = shuffle_threshold(
                full,
                target,
                outputs([i for i in current if i != weakest]),
                config.knn_k,
                _shuffle_config(config, _BACKWARD_STREAM, len(removals)),
            )

        if value >= tolerance:
            break

        current.remove(weakest)
        removals.append(BackwardRemoval(index=weakest, cmi=value, tolerance=tolerance))
        logger.info(
            "Backward removal",
            extra={"index": weakest, "cmi": value, "tolerance": tolerance, "support_size": len(current)},
        )

    return trace.model_copy(update={"backward_removals": removals, "final_support": current})


def entropic_regression(
    phi: PhiLike, f, config: Optional[ErConfig] = None
) -> Tuple[SparseSolution, ErTrace]:
    """
    Forward then backward Entropic Regression.

    Returns:
        Tuple[SparseSolution, ErTrace]: LS coefficients on the final
        support and the full decision trace.
    """
    config = config or ErConfig()
    values, target = check_problem(phi, f)
    start = time.time()

    forward = forward_er(values, target, config)
    trace = backward_er(values, target, forward.final_support, config, forward_trace=forward)

    solution = make_solution(
        values,
        target,
        refit_on_support(values, target, trace.final_support),
        SolverId.ER,
        support=trace.final_support,
        hyperparams={
            "knn_k": config.knn_k,
            "tolerance_mode": config.tolerance_mode,
            "tolerance": trace.tolerance,
            "alpha": config.shuffle.alpha,
            "n_shuffles": config.shuffle.n_shuffles,
            "backward_tolerance": config.backward_tolerance,
            "static_null": config.static_null,
        },
    )
    logger.info(
        "Entropic regression finished",
        extra={
            "support_size": solution.n_terms,
            "forward_steps": len(trace.forward_steps),
            "removals": len(trace.backward_removals),
            "seconds": round(time.time() - start, 3),
        },
    )
    return solution, trace
