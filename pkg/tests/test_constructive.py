import math
from fractions import Fraction

import pytest

import seplab as sl
from seplab.constructive import validate_tree_decomposition


def path_decomposition(n):
    """Bags {i, i+1} along a path host."""
    tree = sl.grid([n - 1])
    bags = tuple((i, i + 1) for i in range(n - 1))
    return sl.TreeDecomposition(tree, bags)


class TestTtreeMedian:
    def test_single_vertex(self):
        rep = sl.ttree_median_separator(sl.tree_product_ball(0))
        assert rep.separator.vertices == ()
        assert not rep.fallback_fired

    def test_small_ball_valid(self):
        g = sl.tree_product_ball(1)
        rep = sl.ttree_median_separator(g, tau=1)
        assert sl.is_balanced_separator(g, rep.separator.vertices).valid

    @pytest.mark.parametrize("k", [4, 6])
    def test_bound_and_balance(self, k):
        g = sl.tree_product_ball(k)
        n = g.num_vertices
        rep = sl.ttree_median_separator(g, tau=1)
        assert sl.is_balanced_separator(g, rep.separator.vertices).valid
        assert rep.separator.size <= 4 * n / math.log2(n)
        if k >= 6:
            assert not rep.fallback_fired

    def test_requires_labels(self):
        with pytest.raises(sl.InputError):
            sl.ttree_median_separator(sl.grid([4]))

    def test_works_on_subgraphs(self):
        g = sl.tree_product_ball(4)
        sub, _ = sl.ball(g, 0, 3)  # labels carried through
        rep = sl.ttree_median_separator(sub)
        assert sl.is_balanced_separator(sub, rep.separator.vertices).valid


class TestHyperplane:
    def test_grid_middle_column(self):
        g = sl.grid([5, 5])
        s = sl.hyperplane_separator(g, grid_sides=[5, 5])
        assert s.vertices == (10, 11, 12, 13, 14)
        assert s.max_component == 10

    @pytest.mark.parametrize("k", [3, 4, 6])
    def test_grid_exactly_k(self, k):
        s = sl.hyperplane_separator(sl.grid([k, k]), grid_sides=[k, k])
        assert s.size == k

    def test_single_vertex(self):
        s = sl.hyperplane_separator(sl.from_edges(1, [], coords=[(0.0, 0.0)]))
        assert s.vertices == ()

    def test_needs_geometry(self):
        with pytest.raises(sl.InputError):
            sl.hyperplane_separator(sl.grid([4, 4]))

    def test_tiling_balls_balanced_and_stable(self):
        ratios = []
        for r in range(3, 6):
            g = sl.hyperbolic_tiling_ball(4, 5, r)
            s = sl.hyperplane_separator(g, trials=64, seed=7)
            assert sl.is_balanced_separator(g, s.vertices, Fraction(2, 3)).valid
            ratios.append(s.size / r)
        assert max(ratios) / min(ratios) <= 3

    def test_seed_determinism(self):
        g = sl.hyperbolic_tiling_ball(4, 5, 4)
        a = sl.hyperplane_separator(g, trials=32, seed=3)
        b = sl.hyperplane_separator(g, trials=32, seed=3)
        assert a.vertices == b.vertices


class TestBagSeparator:
    def test_path_decomposition(self):
        g = sl.grid([5])
        td = path_decomposition(5)
        s = sl.bag_separator(g, td)
        assert s.size == 2
        assert s.max_component <= 2  # bag guarantee: components at most half the host

    def test_star_contains_center(self):
        star = sl.from_edges(7, [(0, i) for i in range(1, 7)])
        tree = sl.from_edges(6, [(0, i) for i in range(1, 6)])
        bags = tuple((0, i + 1) for i in range(6))
        s = sl.bag_separator(star, sl.TreeDecomposition(tree, bags))
        assert 0 in s.vertices
        assert s.max_component <= 1

    def test_single_bag(self, k4):
        td = sl.TreeDecomposition(sl.grid([1]), ((0, 1, 2, 3),))
        s = sl.bag_separator(k4, td)
        assert s.vertices == (0, 1, 2, 3)
        assert s.max_component == 0

    def test_width_bound(self):
        g = sl.grid([5])
        td = path_decomposition(5)
        s = sl.bag_separator(g, td)
        assert s.size <= td.width + 1

    def test_validation_names_axiom(self, k4):
        tree = sl.grid([2])
        with pytest.raises(sl.DecompositionError, match="axiom 1"):
            validate_tree_decomposition(k4, sl.TreeDecomposition(tree, ((0, 1), (1, 2))))
        with pytest.raises(sl.DecompositionError, match="axiom 2"):
            validate_tree_decomposition(
                k4, sl.TreeDecomposition(tree, ((0, 1, 2), (1, 2, 3)))
            )
        tree3 = sl.grid([3])
        with pytest.raises(sl.DecompositionError, match="axiom 3"):
            validate_tree_decomposition(
                k4,
                sl.TreeDecomposition(
                    tree3, ((0, 1, 2, 3), (1, 2), (0, 1, 2, 3))
                ),
            )

    def test_half_balance_on_paths(self):
        for n in (6, 9, 12):
            g = sl.grid([n])
            s = sl.bag_separator(g, path_decomposition(n))
            assert 2 * s.max_component <= n
