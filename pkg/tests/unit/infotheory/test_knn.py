import numpy as np

from sysid.config import settings
from sysid.infotheory.knn import count_strictly_within, kth_neighbor_distance


def test_kth_neighbor_on_a_line():
    points = np.array([[0.0], [1.0], [3.0]])
    np.testing.assert_array_equal(kth_neighbor_distance(points, 1), [1.0, 1.0, 2.0])
    np.testing.assert_array_equal(kth_neighbor_distance(points, 2), [3.0, 2.0, 3.0])


def test_max_norm_is_used():
    points = np.array([[0.0, 0.0], [1.0, 1.0]])
    np.testing.assert_array_equal(kth_neighbor_distance(points, 1), [1.0, 1.0])


def test_counts_are_strict():
    points = np.array([[0.0], [1.0], [3.0]])
    np.testing.assert_array_equal(count_strictly_within(points, np.array([1.0, 1.0, 2.0])), [0, 0, 0])
    np.testing.assert_array_equal(count_strictly_within(points, np.array([1.5, 1.5, 2.5])), [1, 1, 1])


def test_zero_radius_counts_nothing():
    points = np.array([[0.0], [0.0], [1.0]])
    np.testing.assert_array_equal(count_strictly_within(points, np.array([0.0, 0.0, 2.0])), [0, 0, 2])


def test_brute_force_matches_tree(rng, monkeypatch):
    points = rng.normal(size=(300, 3))
    radii = rng.uniform(0.2, 1.0, size=300)
    tree_eps = kth_neighbor_distance(points, 3)
    tree_counts = count_strictly_within(points, radii)

    monkeypatch.setattr(settings, "KDTREE_MAX_DIM", 0)
    np.testing.assert_array_equal(kth_neighbor_distance(points, 3), tree_eps)
    np.testing.assert_array_equal(count_strictly_within(points, radii), tree_counts)


def test_line_counts_match_pairwise_distances(rng):
    values = np.round(rng.normal(size=400), 2) * 0.1 + 0.3
    # Radii equal to real pairwise gaps put many neighbours on the boundary.
    radii = np.abs(values - rng.permutation(values))
    inner = np.nextafter(radii, 0.0)
    expected = (np.abs(values[:, None] - values[None, :]) <= inner[:, None]).sum(axis=1) - 1
    expected = np.where(radii > 0.0, expected, 0)
    np.testing.assert_array_equal(count_strictly_within(values[:, None], radii), expected)


def test_line_counts_on_a_grid():
    points = np.arange(6, dtype=np.float64)[:, None]
    np.testing.assert_array_equal(count_strictly_within(points, np.full(6, 1.0)), [0] * 6)
    np.testing.assert_array_equal(count_strictly_within(points, np.full(6, 1.5)), [1, 2, 2, 2, 2, 1])
