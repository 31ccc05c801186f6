import pytest

import seplab as sl


def values_on_box(n, fn):
    return [fn(x, y) for x in range(n) for y in range(n)]


class TestQuasiLevels:
    def test_vertical_strips(self):
        rep = sl.quasi_level_components(32, values_on_box(32, lambda x, y: x), 4)
        assert len(rep.levels) == 8
        for _, comps in rep.levels:
            assert len(comps) == 1
            assert len(comps[0]) == 128

    def test_constant_single_level(self):
        rep = sl.quasi_level_components(4, [0] * 16, 3, chain_start=0)
        assert len(rep.levels) == 1
        assert rep.stop_reason == "full-level"

    def test_surround_chain_grows(self):
        rep = sl.quasi_level_components(
            32, values_on_box(32, lambda x, y: (x + y) // 2), 4, chain_start=0
        )
        sizes = [s.size for s in rep.chain]
        assert len(sizes) >= 3
        assert all(a < b for a, b in zip(sizes, sizes[1:]))
        assert rep.stop_reason == "boundary"

    def test_rejects_non_lipschitz(self):
        with pytest.raises(sl.InputError):
            sl.quasi_level_components(4, values_on_box(4, lambda x, y: 5 * x), 4)

    def test_rejects_too_small_k(self):
        with pytest.raises(sl.InputError):
            sl.quasi_level_components(8, values_on_box(8, lambda x, y: x), 1)

    def test_far_levels_not_adjacent(self):
        n = 16
        rep = sl.quasi_level_components(n, values_on_box(n, lambda x, y: x), 4)
        diag = sl.grid([n, n], "linf")
        level_of = {}
        for r, comps in rep.levels:
            for comp in comps:
                for v in comp:
                    level_of[v] = r
        for u, v in diag.edges():
            assert abs(level_of[u] - level_of[v]) <= 1


class TestAsdimColoring:
    def test_alternating_blocks_on_path(self):
        p20 = sl.grid([20])
        blocks = [tuple(range(i, min(i + 3, 20))) for i in range(0, 20, 3)]
        scheme = sl.ColoringScheme(
            d=1,
            s=3,
            b=2,
            classes=(
                tuple(b for i, b in enumerate(blocks) if i % 2 == 0),
                tuple(b for i, b in enumerate(blocks) if i % 2 == 1),
            ),
        )
        rep = sl.verify_asdim_coloring(p20, scheme)
        assert rep.valid
        assert rep.min_inter_piece_distance == 4

    def test_whole_graph_one_piece(self):
        g = sl.grid([5, 5])
        scheme = sl.ColoringScheme(d=0, s=50, b=8, classes=((tuple(range(25)),),))
        assert sl.verify_asdim_coloring(g, scheme).valid

    def test_three_color_stripes_on_grid(self):
        g = sl.grid([12, 12])
        bands = {}
        for v in range(144):
            x, y = divmod(v, 12)
            bands.setdefault(((x + 2 * y) % 9 // 3, (x + 2 * y) // 9), []).append(v)
        classes = [[], [], []]
        for (color, _), verts in sorted(bands.items()):
            classes[color].append(tuple(verts))
        scheme = sl.ColoringScheme(
            d=2, s=3, b=64, classes=tuple(tuple(c) for c in classes)
        )
        rep = sl.verify_asdim_coloring(g, scheme)
        assert rep.valid
        assert rep.min_inter_piece_distance >= 3

    def test_detects_close_pieces(self):
        p6 = sl.grid([6])
        scheme = sl.ColoringScheme(
            d=0, s=3, b=5, classes=(((0, 1), (2, 3), (4, 5)),)
        )
        rep = sl.verify_asdim_coloring(p6, scheme)
        assert not rep.valid
        assert "distance" in rep.violation

    def test_detects_bad_partition(self):
        p4 = sl.grid([4])
        scheme = sl.ColoringScheme(d=0, s=1, b=5, classes=(((0, 1),),))
        rep = sl.verify_asdim_coloring(p4, scheme)
        assert not rep.valid
