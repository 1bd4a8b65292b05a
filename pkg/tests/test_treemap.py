import itertools
import time

import numpy as np
import pytest

from qualimeter.treemap import (
    LayoutParams,
    TreemapNode,
    aspect_ratios,
    convex_hull,
    layout_hierarchy,
    layout_siblings,
    leaf_cells,
    rectangle_samples,
)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(a, b, p):
    if _cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _in_closed_triangle(a, b, c, p):
    d1, d2, d3 = _cross(a, b, p), _cross(b, c, p), _cross(c, a, p)
    return (d1 >= 0 and d2 >= 0 and d3 >= 0) or (d1 <= 0 and d2 <= 0 and d3 <= 0)


def hull_oracle(points) -> set:
    """Brute force via Caratheodory: a point is a hull vertex iff it is not
    expressible from the others, i.e. lies on no segment between two others
    and inside no (non-degenerate) triangle of others."""
    pts = sorted(set(map(tuple, points)))
    vertices = set()
    for p in pts:
        others = [q for q in pts if q != p]
        covered = any(_on_segment(a, b, p)
                      for a, b in itertools.combinations(others, 2))
        covered = covered or any(
            _cross(a, b, c) != 0 and _in_closed_triangle(a, b, c, p)
            for a, b, c in itertools.combinations(others, 3))
        if not covered:
            vertices.add(p)
    return vertices


class TestTreemapNode:
    def test_weight_defaults_to_children_sum(self):
        node = TreemapNode("pkg", children=[
            TreemapNode("a", 2.0), TreemapNode("b", 3.0)])
        assert node.weight == 5.0

    def test_weight_below_children_sum_rejected(self):
        with pytest.raises(ValueError, match="below children sum"):
            TreemapNode("pkg", weight=1.0, children=[TreemapNode("a", 2.0)])

    def test_non_positive_leaf_weight_rejected(self):
        with pytest.raises(ValueError):
            TreemapNode("a", 0.0)

    def test_from_json(self):
        node = TreemapNode.from_json(
            {"name": "root",
             "children": [{"name": "x", "weight": 1},
                          {"name": "y", "weight": 3}]})
        assert node.weight == 4.0
        assert [c.name for c in node.children] == ["x", "y"]


class TestLayoutParams:
    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            LayoutParams(resolution=31)

    def test_tolerance_must_be_positive(self):
        with pytest.raises(ValueError):
            LayoutParams(area_tolerance=0)


class TestLayoutSiblings:
    def test_single_site_takes_everything_without_iterating(self):
        points = rectangle_samples(1.0, 1.0, 64)
        assignment, sites, converged, iterations = layout_siblings(
            points, [7.0], LayoutParams(resolution=64))
        assert converged and iterations == 0
        assert np.all(assignment == 0)
        assert sites[0].target_fraction == 1.0

    def test_two_equal_weights_split_area_in_half(self):
        points = rectangle_samples(1.0, 1.0, 256)
        assignment, _, converged, _ = layout_siblings(
            points, [1.0, 1.0], LayoutParams(resolution=256))
        assert converged
        fraction = float(np.mean(assignment == 0))
        assert fraction == pytest.approx(0.5, abs=0.02)

    def test_one_to_three_weight_ratio(self):
        points = rectangle_samples(1.0, 1.0, 256)
        assignment, sites, converged, _ = layout_siblings(
            points, [1.0, 3.0], LayoutParams(resolution=256))
        assert converged
        assert float(np.mean(assignment == 0)) == pytest.approx(0.25, abs=0.02)
        assert float(np.mean(assignment == 1)) == pytest.approx(0.75, abs=0.02)
        assert [s.target_fraction for s in sites] == [0.25, 0.75]

    def test_every_sample_assigned_to_exactly_one_site(self):
        points = rectangle_samples(2.0, 1.0, 128)
        assignment, _, _, _ = layout_siblings(
            points, [1.0, 2.0, 3.0], LayoutParams(resolution=128))
        assert assignment.shape == (len(points),)
        assert set(np.unique(assignment)) <= {0, 1, 2}
        counts = np.bincount(assignment, minlength=3)
        assert counts.sum() == len(points)

    def test_same_seed_reproduces_layout(self):
        points = rectangle_samples(1.0, 1.0, 64)
        params = LayoutParams(resolution=64, seed=5)
        a1, _, _, _ = layout_siblings(points, [1.0, 2.0, 1.5], params)
        a2, _, _, _ = layout_siblings(points, [1.0, 2.0, 1.5], params)
        assert np.array_equal(a1, a2)

    def test_non_positive_weight_rejected(self):
        points = rectangle_samples(1.0, 1.0, 32)
        with pytest.raises(ValueError, match="non-positive weight"):
            layout_siblings(points, [1.0, 0.0], LayoutParams(resolution=32))

    def test_more_sites_than_samples_rejected(self):
        points = rectangle_samples(1.0, 1.0, 32)[:3]
        with pytest.raises(ValueError, match="exceeds sample count"):
            layout_siblings(points, [1.0] * 4, LayoutParams(resolution=32))


class TestLayoutHierarchy:
    def test_single_leaf_root_covers_the_region(self):
        root = TreemapNode("root", children=[TreemapNode("only", 1.0)])
        points = rectangle_samples(1.0, 1.0, 64)
        layout = layout_hierarchy(root, points, LayoutParams(resolution=64))
        (leaf,) = leaf_cells(layout)
        assert leaf.name == "only"
        assert len(leaf.samples) == len(points)

    def test_two_by_two_equal_hierarchy(self):
        root = TreemapNode("root", children=[
            TreemapNode("p1", children=[TreemapNode("a", 1.0),
                                        TreemapNode("b", 1.0)]),
            TreemapNode("p2", children=[TreemapNode("c", 1.0),
                                        TreemapNode("d", 1.0)]),
        ])
        points = rectangle_samples(1.0, 1.0, 256)
        layout = layout_hierarchy(root, points, LayoutParams(resolution=256))
        leaves = leaf_cells(layout)
        assert sorted(c.name for c in leaves) == ["a", "b", "c", "d"]
        n = len(points)
        for cell in leaves:
            # tolerance compounds across the two nesting levels
            assert len(cell.samples) / n == pytest.approx(0.25, abs=0.04)
            assert cell.area_fraction == pytest.approx(0.25)

    def test_leaves_partition_the_root_samples(self):
        root = TreemapNode("root", children=[
            TreemapNode("a", 1.0), TreemapNode("b", 2.0),
            TreemapNode("mid", children=[TreemapNode("c", 1.0),
                                         TreemapNode("d", 1.0)]),
        ])
        points = rectangle_samples(1.0, 1.0, 128)
        layout = layout_hierarchy(root, points, LayoutParams(resolution=128))
        leaves = leaf_cells(layout)
        total = sum(len(c.samples) for c in leaves)
        assert total == len(points)
        seen = np.vstack([c.samples for c in leaves])
        assert seen.shape == points.shape

    def test_error_includes_node_path(self):
        root = TreemapNode("root", children=[
            TreemapNode("deep", children=[TreemapNode("x", 1.0),
                                          TreemapNode("y", 1.0)])])
        tiny = rectangle_samples(1.0, 1.0, 32)[:1]
        with pytest.raises(ValueError, match="root/deep"):
            layout_hierarchy(root, tiny, LayoutParams(resolution=32))

    def test_hundred_leaves_under_ten_seconds(self):
        root = TreemapNode("root", children=[
            TreemapNode(f"leaf{i:03d}", float(1 + i % 7)) for i in range(100)])
        points = rectangle_samples(1.0, 1.0, 512)
        start = time.perf_counter()
        layout = layout_hierarchy(root, points, LayoutParams(resolution=512))
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0
        assert len(leaf_cells(layout)) == 100


class TestAspectRatios:
    def test_square_region_single_leaf(self):
        root = TreemapNode("root", children=[TreemapNode("only", 1.0)])
        points = rectangle_samples(1.0, 1.0, 64)
        layout = layout_hierarchy(root, points, LayoutParams(resolution=64))
        assert aspect_ratios(layout)["only"] == pytest.approx(1.0)

    def test_ratios_are_at_least_one(self):
        root = TreemapNode("root", children=[
            TreemapNode("a", 1.0), TreemapNode("b", 4.0), TreemapNode("c", 2.0)])
        points = rectangle_samples(2.0, 1.0, 128)
        layout = layout_hierarchy(root, points, LayoutParams(resolution=128))
        for name, ratio in aspect_ratios(layout).items():
            assert ratio >= 1.0, name

    def test_degenerate_cell_reports_one(self):
        root = TreemapNode("root", children=[TreemapNode("only", 1.0)])
        single = np.array([[0.5, 0.5]])
        layout = layout_hierarchy(root, single, LayoutParams(resolution=32))
        assert aspect_ratios(layout)["only"] == 1.0


class TestConvexHull:
    def test_square_with_interior_point(self):
        pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]])
        hull = convex_hull(pts)
        assert {tuple(p) for p in hull} == {(0, 0), (1, 0), (1, 1), (0, 1)}

    def test_vertices_are_counter_clockwise(self):
        pts = np.array([[0, 0], [2, 0], [2, 1], [0, 1], [1, 0.5]])
        hull = convex_hull(pts)
        area2 = 0.0
        for i in range(len(hull)):
            x1, y1 = hull[i]
            x2, y2 = hull[(i + 1) % len(hull)]
            area2 += x1 * y2 - x2 * y1
        assert area2 > 0

    def test_collinear_and_tiny_inputs(self):
        line = np.array([[0, 0], [1, 1], [2, 2]])
        hull = convex_hull(line)
        assert {tuple(p) for p in hull} == {(0.0, 0.0), (2.0, 2.0)}
        assert len(convex_hull(np.array([[3, 4]]))) == 1

    def test_matches_brute_force_on_random_clouds(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            pts = rng.integers(0, 12, size=(rng.integers(4, 20), 2)).astype(float)
            if len(set(map(tuple, pts))) < 3:
                continue
            hull = convex_hull(pts)
            expected = hull_oracle(pts)
            if len(expected) < 3:
                continue  # degenerate cloud; covered by the collinear test
            assert {tuple(p) for p in hull} == expected
