import pytest

from casson.diagram import (DiagramError, GaussDiagram, braid_closure_components,
                            from_braid_word, parse_gauss_code, parse_pd_code,
                            torus_knot_2)


def test_parse_gauss_trefoil_roundtrip():
    g = parse_gauss_code("O1+U2+O3+U1+O2+U3+", shape="long")
    assert g.n == 3
    assert g.serialize() == "O1+U2+O3+U1+O2+U3+"


def test_parse_gauss_empty():
    g = parse_gauss_code("", shape="long")
    assert g.n == 0


def test_parse_gauss_rejects_garbage():
    with pytest.raises(DiagramError):
        parse_gauss_code("O1+U2")
    with pytest.raises(DiagramError):
        parse_gauss_code("Z9*")


def test_parse_gauss_needs_both_passes():
    with pytest.raises(DiagramError):
        parse_gauss_code("O1+O1+")


def test_pd_code_trefoil():
    g = parse_pd_code("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")
    assert g.n == 3
    assert all(c.sign == 1 for c in g.chords)


def test_pd_code_mirror_signs():
    g = parse_pd_code("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    assert g.n == 3
    assert all(c.sign == -1 for c in g.chords)


def test_braid_word_trefoil():
    g = from_braid_word("s1 s1 s1")
    assert g.serialize() == from_braid_word([1, 1, 1]).serialize()
    assert g.n == 3


def test_braid_word_bare_integers():
    assert from_braid_word("1 -2 1 -2").n == 4


def test_braid_multi_component_rejected():
    # two positive crossings on two strands close to a 2-component link
    with pytest.raises(DiagramError):
        from_braid_word([1, 1])


def test_braid_closure_components():
    assert braid_closure_components([1, 1, 1], 2) == 1
    assert braid_closure_components([1, 1], 2) == 2
    assert braid_closure_components([], 3) == 3


def test_torus_knots():
    for n in (3, 5, 7, 9):
        g = torus_knot_2(n)
        assert g.n == n
    assert torus_knot_2(3).serialize() == from_braid_word([1, 1, 1]).serialize()


def test_mirror_flips_signs():
    g = from_braid_word([1, 1, 1])
    m = g.mirror()
    assert sorted(c.sign for c in m.chords) == [-1, -1, -1]


def test_base_point_move_cycles():
    g = from_braid_word([1, 1, 1])
    h = g
    for _ in range(2 * g.n):
        h = h.with_base_point_moved(1)
    assert h.serialize() == g.serialize()


def test_interlocked():
    g = parse_gauss_code("O1+U2+O3+U1+O2+U3+", shape="long")
    c1, c2, c3 = (g.chord(i) for i in (1, 2, 3))
    assert g.interlocked(c1, c2)
    assert g.interlocked(c2, c3)
    assert g.interlocked(c1, c3)


def test_from_endpoint_order_validation():
    with pytest.raises(DiagramError):
        GaussDiagram.from_endpoint_order([(1, "T")], {1: 1})
    with pytest.raises(DiagramError):
        GaussDiagram.from_endpoint_order([(1, "T"), (1, "H")], {1: 2})
