import numpy as np
import pytest

from sysid.core.errors import DataError
from sysid.dynamics.io import CSV_MAGIC, read_binary, read_csv, write_binary, write_csv
from sysid.dynamics.schemas import TimeSeriesSet


@pytest.fixture
def series(rng):
    return TimeSeriesSet.from_states(rng.normal(size=(25, 3)) * 1e3, 0.01)


def test_csv_keeps_full_precision(tmp_path, series):
    path = write_csv(series, tmp_path / "traj.csv")
    assert path.read_text().splitlines()[0] == CSV_MAGIC
    loaded = read_csv(path)
    np.testing.assert_array_equal(loaded.states, series.states)
    np.testing.assert_array_equal(loaded.times, series.times)


def test_csv_without_header_comment(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("t,x\n0,1.5\n0.5,2.5\n1.0,3.5\n")
    loaded = read_csv(path)
    assert loaded.state_dim == 1
    assert loaded.dt == pytest.approx(0.5)


def test_csv_missing_time_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n3,4\n")
    with pytest.raises(DataError):
        read_csv(path)


def test_csv_missing_file(tmp_path):
    with pytest.raises(DataError):
        read_csv(tmp_path / "nope.csv")


def test_binary_archive(tmp_path, series):
    loaded = read_binary(write_binary(series, tmp_path / "traj.npz"))
    np.testing.assert_array_equal(loaded.states, series.states)
    assert loaded.dt == series.dt
