from casson.diagram import from_braid_word, parse_gauss_code, torus_knot_2
from casson.invariants import (arf, check_bound, crossing_bound, report,
                               v2_gauss, v2_sym)


def test_unknot_zero():
    g = parse_gauss_code("", shape="long")
    assert v2_gauss(g) == 0
    assert v2_sym(g) == 0
    assert arf(g) == 0


def test_trefoil_one(trefoil):
    assert v2_gauss(trefoil) == 1
    assert v2_sym(trefoil) == 1
    assert arf(trefoil) == 1


def test_figure_eight_minus_one(figure_eight):
    assert v2_gauss(figure_eight) == -1
    assert v2_sym(figure_eight) == -1
    assert arf(figure_eight) == 1


def test_mirror_invariance(trefoil, figure_eight):
    for g in (trefoil, figure_eight):
        assert v2_gauss(g.mirror()) == v2_gauss(g)


def test_torus_law():
    for n in range(3, 16, 2):
        want = (n * n - 1) // 8
        g = torus_knot_2(n)
        assert v2_gauss(g) == want
        assert v2_sym(g) == want


def test_bound_and_sharpness():
    for n in range(3, 16, 2):
        v2, bound, ok = check_bound(torus_knot_2(n))
        assert ok
        assert abs(v2) == bound  # torus knots realize the bound


def test_crossing_bound_values():
    assert [crossing_bound(n) for n in range(0, 7)] == [0, 0, 0, 1, 2, 3, 4]


def test_arf_parity(diagram_corpus):
    for g in diagram_corpus[:100]:
        assert arf(g) == v2_gauss(g) % 2


def test_report_roundtrip(trefoil):
    rep = report(trefoil, method="skein")
    d = rep.to_dict()
    assert d["v2"] == 1 and d["arf"] == 1 and d["method"] == "skein"
    assert d["bound"] == 1 and d["n"] == 3
