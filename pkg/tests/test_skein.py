import pytest

from casson.diagram import from_braid_word, parse_gauss_code
from casson.skein import (descend, is_descending, lk_smoothed,
                          lk_smoothed_two_color, v2_skein)
from casson.invariants import v2_gauss


def test_descending_fixture():
    # every chord first met at its tail
    g = parse_gauss_code("O1+O2+U2+U1+", shape="long")
    assert is_descending(g)
    assert v2_skein(g) == 0


def test_trefoil_descent(trefoil):
    trace = descend(trefoil)
    assert v2_skein(trefoil) == 1
    assert is_descending(trace.final_diagram)
    assert len(trace.flips) >= 1
    d = trace.to_dict()
    assert {"chord", "sign", "lk"} <= set(d["flips"][0])


def test_lk_two_ways_agree(diagram_corpus):
    # descend() cross-checks the closed-form count against the two-coloring
    # at every switched crossing and raises on any mismatch
    for g in diagram_corpus[:50]:
        descend(g, check_two_color=True)


def test_lk_two_ways_on_first_flip(trefoil):
    # the first chord met at its head satisfies the closed form directly
    for _, c, kind in trefoil.endpoints():
        if kind == "H":
            assert lk_smoothed(trefoil, c.id) == \
                lk_smoothed_two_color(trefoil, c.id)
            break


def test_named_values(trefoil, figure_eight):
    assert v2_skein(trefoil) == 1
    assert v2_skein(figure_eight) == -1
    assert v2_skein(parse_gauss_code("", shape="long")) == 0


def test_oracle_agreement(diagram_corpus):
    for g in diagram_corpus[:100]:
        assert v2_skein(g) == v2_gauss(g)


def test_flip_count_bounded(diagram_corpus):
    for g in diagram_corpus[:20]:
        assert len(descend(g).flips) <= g.n
