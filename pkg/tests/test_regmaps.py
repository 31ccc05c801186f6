import random
from fractions import Fraction

import pytest

import seplab as sl

from conftest import random_connected_graph


def floor_map(n, b):
    """Path of length n onto the path of its b-blocks."""
    src = sl.grid([n])
    dst = sl.grid([(n + b - 1) // b])
    return sl.GraphMap(src, dst, tuple(v // b for v in range(n)))


class TestDistortion:
    def test_identity(self):
        d = sl.map_distortion(sl.identity_map(sl.grid([4, 4])))
        assert (d.multiplicative, d.additive, d.contraction) == (1.0, 0.0, True)

    def test_floor3(self):
        d = sl.map_distortion(floor_map(30, 3))
        assert d.multiplicative == 3.0
        assert d.additive <= 1.0
        assert d.contraction

    def test_constant_to_point_fails(self):
        const = sl.GraphMap(sl.grid([20]), sl.from_edges(1, []), (0,) * 20)
        d = sl.map_distortion(const)
        assert not d.satisfiable
        assert d.multiplicative is None

    def test_sampled_subset(self):
        d = sl.map_distortion(floor_map(40, 2), sample=50, seed=1)
        assert d.pairs_checked <= 50
        assert d.contraction


class TestVerifyRegular:
    def test_identity_kappa1_on_random_graphs(self):
        rng = random.Random(42)
        for _ in range(8):
            g = random_connected_graph(rng, rng.randrange(3, 12), rng.randrange(6))
            assert sl.verify_regular(sl.identity_map(g), 1).passes

    def test_monotone_in_kappa(self):
        m = floor_map(30, 3)
        results = [sl.verify_regular(m, k).passes for k in (1, 2, 3, 4, 5)]
        # once it passes it keeps passing
        assert results == sorted(results)
        assert results[-1]

    def test_floor3_passes_at_3(self):
        rep = sl.verify_regular(floor_map(30, 3), 3)
        assert rep.passes
        assert rep.kappa_cover == 3

    def test_constant_fails_condition2(self):
        const = sl.GraphMap(sl.grid([20]), sl.from_edges(1, []), (0,) * 20)
        rep = sl.verify_regular(const, 3)
        assert not rep.passes
        assert rep.condition1_ok
        assert not rep.condition2_ok
        assert rep.kappa_cover == 7  # 20 vertices, closed unit balls of size 3


class TestSemiRegular:
    def test_identity_bounded_by_2r(self):
        m = sl.identity_map(sl.grid([5, 5]))
        table = sl.verify_semi_regular(m, [1, 2, 3])
        assert table.lipschitz
        for r, c in table.entries:
            assert c <= 2 * r

    def test_entries_monotone(self):
        m = floor_map(40, 3)
        table = sl.verify_semi_regular(m, [1, 2, 3, 4])
        values = [c for _, c in table.entries]
        assert values == sorted(values)

    def test_lamplighter_projection(self):
        g = sl.lamplighter_ball(6)
        table = sl.verify_semi_regular(sl.lamplighter_position_map(g), [1, 2])
        assert table.lipschitz
        for r, c in table.entries:
            assert c <= 2 * r * 2**r

    def test_column_projection_diverges(self):
        n = 5
        g = sl.grid([n, n])
        proj = sl.GraphMap(g, sl.grid([n]), tuple(v // n for v in range(n * n)))
        table = sl.verify_semi_regular(proj, [1])
        assert table.entries[0][1] >= n - 1  # whole columns are components


class TestPullback:
    def test_identity_pullback(self):
        g = sl.grid([4, 4])
        sep = sl.min_balanced_separator(g)
        pb = sl.pullback_separator(sl.identity_map(g), 1, range(16), sep)
        assert set(sep.vertices) <= set(pb.vertices)
        assert 2 * pb.max_component <= 16

    def test_floor_map_pullback(self):
        m = floor_map(30, 3)
        sep = sl.min_balanced_separator(m.target)
        pb = sl.pullback_separator(m, 3, range(30), sep)
        assert 2 * pb.max_component <= 30
        d = max(m.source.max_degree(), m.target.max_degree())
        assert pb.size <= 3 * (d + 1) ** 7 * sep.size

    def test_grid_projection_pullback(self):
        g = sl.grid([4, 4])
        proj = sl.GraphMap(g, sl.grid([4]), tuple(v // 4 for v in range(16)))
        probe = sl.verify_regular(proj, 1)
        kappa = max(probe.kappa_lipschitz, probe.kappa_cover)
        sep = sl.min_balanced_separator(sl.grid([4]))
        pb = sl.pullback_separator(proj, kappa, range(16), sep)
        assert 2 * pb.max_component <= 16

    def test_rejects_unverified_map(self):
        const = sl.GraphMap(sl.grid([20]), sl.from_edges(1, []), (0,) * 20)
        sep = sl.Separator((0,), Fraction(1, 2), 0, False, "constructive")
        with pytest.raises(sl.InputError):
            sl.pullback_separator(const, 2, range(20), sep)

    def test_rejects_disconnected_selection(self):
        g = sl.grid([6])
        sep = sl.min_balanced_separator(g)
        with pytest.raises(sl.InputError):
            sl.pullback_separator(sl.identity_map(g), 1, (0, 5), sep)


class TestStrongDecomposition:
    def test_path_parts(self):
        g = sl.grid([6])
        std = sl.StrongTreeDecomposition(sl.grid([3]), ((0, 1), (2, 3), (4, 5)))
        res = sl.strong_td_to_tree_map(g, std)
        assert res.achieved_kappa == 2
        assert sl.verify_regular(res.map, 2).passes

    def test_singleton_graph(self):
        g = sl.from_edges(1, [])
        std = sl.StrongTreeDecomposition(sl.grid([1]), ((0,),))
        res = sl.strong_td_to_tree_map(g, std)
        assert res.achieved_kappa == 1

    def test_sierpinski_corner_parts(self):
        g = sl.sierpinski(2)
        # vertices sorted by (x, y): 0=(0,0) 1=(0,1) 2=(0,2) 3=(1,0) 4=(1,1) 5=(2,0)
        # corner triangles overlap at the midpoints, so they are not a partition
        std = sl.StrongTreeDecomposition(
            sl.grid([3]), ((0, 1, 3), (1, 2, 4), (3, 4, 5))
        )
        with pytest.raises(sl.DecompositionError):
            sl.strong_td_to_tree_map(g, std)
        # assigning each midpoint to one part yields a valid path decomposition
        std = sl.StrongTreeDecomposition(sl.grid([3]), ((0,), (1, 3, 4), (2, 5)))
        res = sl.strong_td_to_tree_map(g, std)
        assert sl.verify_regular(res.map, res.achieved_kappa).passes

    def test_validation_errors(self):
        g = sl.grid([4])
        with pytest.raises(sl.DecompositionError):
            sl.strong_td_to_tree_map(
                g, sl.StrongTreeDecomposition(sl.grid([2]), ((0, 1), (2,)))
            )
        with pytest.raises(sl.DecompositionError):
            # edge (1,2) joins non-adjacent parts on a 3-node path tree
            sl.strong_td_to_tree_map(
                g,
                sl.StrongTreeDecomposition(
                    sl.from_edges(3, [(0, 1), (1, 2)]), ((0, 1), (3,), (2,))
                ),
            )
