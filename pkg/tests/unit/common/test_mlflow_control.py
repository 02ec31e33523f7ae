from unittest.mock import MagicMock, patch

from sysid.common import mlflow_control
from sysid.common.mlflow_control import mlflow_context, mlflow_safe, tracking_enabled


def test_tracking_disabled_under_tests():
    assert tracking_enabled() is False


def test_context_yields_none_when_disabled():
    with patch.object(mlflow_control, "mlflow") as mock_mlflow:
        with mlflow_context(run_name="x") as run:
            assert run is None
    mock_mlflow.start_run.assert_not_called()


def test_safe_skips_when_disabled():
    func = MagicMock()
    assert mlflow_safe(func, 1, key="v") is None
    func.assert_not_called()


def test_safe_swallows_failures():
    func = MagicMock(side_effect=RuntimeError("tracking down"))
    with patch.object(mlflow_control, "tracking_enabled", return_value=True):
        assert mlflow_safe(func, "metric", 1.0) is None
    func.assert_called_once_with("metric", 1.0)


def test_safe_can_reraise():
    func = MagicMock(side_effect=RuntimeError("tracking down"))
    with patch.object(mlflow_control, "tracking_enabled", return_value=True):
        try:
            mlflow_safe(func, swallow=False)
        except RuntimeError:
            pass
        else:
            raise AssertionError("expected RuntimeError")


def test_context_starts_and_ends_run():
    with patch.object(mlflow_control, "tracking_enabled", return_value=True), patch.object(
        mlflow_control, "mlflow"
    ) as mock_mlflow:
        mock_mlflow.active_run.side_effect = [None, MagicMock()]
        with mlflow_context(run_name="bench") as run:
            assert run is mock_mlflow.start_run.return_value
        mock_mlflow.start_run.assert_called_once_with(run_name="bench")
        mock_mlflow.end_run.assert_called_once()


def test_context_survives_unreachable_server():
    with patch.object(mlflow_control, "tracking_enabled", return_value=True), patch.object(
        mlflow_control, "mlflow"
    ) as mock_mlflow:
        mock_mlflow.set_experiment.side_effect = ConnectionError("no server")
        with mlflow_context() as run:
            assert run is None
