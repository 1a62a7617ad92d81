import pytest

from towerloc.geom import segment_inside
from towerloc.harness.generators import (
    FIG13_VERTICES,
    corpus,
    fig13_fixture,
    gen_comb,
    gen_random_simple,
    gen_toth_counterexample,
)
from towerloc.polygon import validate_simple_polygon
from towerloc.visibility import is_star_shaped


class TestComb:
    @pytest.mark.parametrize("k,q", [(3, 0), (1, 1), (1, 2), (5, 2), (10, 0)])
    def test_size(self, k, q):
        p = gen_comb(k, q)
        assert p.n == 3 * k + q
        assert validate_simple_polygon(p.vertices).vertices == p.vertices

    def test_no_point_sees_two_spikes(self):
        # spike tips of different spikes never see each other
        p = gen_comb(4)
        v = p.vertices
        tips = [t for t in v if t.y > 9]
        assert len(tips) == 4
        for i, a in enumerate(tips):
            for b in tips[i + 1:]:
                assert not segment_inside(v, a, b)

    def test_spike_variants_star_shaped(self):
        assert is_star_shaped(gen_comb(1, 1))
        assert is_star_shaped(gen_comb(1, 2))

    def test_bad_args(self):
        with pytest.raises(ValueError):
            gen_comb(0)
        with pytest.raises(ValueError):
            gen_comb(2, 3)


class TestToth:
    @pytest.mark.parametrize("s", [1, 2, 3, 5])
    def test_size(self, s):
        assert gen_toth_counterexample(s).n == 5 * s + 2

    def test_fig13_fixture(self):
        p = fig13_fixture()
        assert p.n == 8 and set(p.vertices) == {validate_simple_polygon(FIG13_VERTICES).vertices[i]
                                                  for i in range(8)}
        assert not is_star_shaped(p)


class TestRandom:
    def test_triangle(self):
        assert gen_random_simple(3, 5).n == 3

    def test_deterministic(self):
        assert gen_random_simple(30, 7).vertices == gen_random_simple(30, 7).vertices
        assert gen_random_simple(30, 7).vertices != gen_random_simple(30, 8).vertices

    @pytest.mark.slow
    def test_hundred_seeds_valid(self):
        for seed in range(100):
            p = gen_random_simple(60, seed)
            assert p.n == 60
            validate_simple_polygon(p.vertices)

    def test_bad_n(self):
        with pytest.raises(ValueError):
            gen_random_simple(2, 0)


def test_corpus_shape():
    c = corpus(random_count=5)
    names = [p.name for p in c]
    assert len(c) == 30 + 5 + 1 + 5
    assert names[:3] == ["comb-k1-q0", "comb-k1-q1", "comb-k1-q2"]
    assert "fig13" in names
    assert all(6 <= p.n <= 60 for p in c[-5:])
