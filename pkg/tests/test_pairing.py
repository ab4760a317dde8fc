import pytest

from casson.diagram import from_braid_word, parse_gauss_code
from casson.pairing import (XBWD, XDOWN, XFWD, XUP, X_ALL, ArrowPattern,
                            bracket, unsigned_match_count)


def test_pattern_validation():
    with pytest.raises(ValueError):
        ArrowPattern("bad", ((1, "H"), (1, "H"), (2, "T"), (2, "H")))
    with pytest.raises(ValueError):
        ArrowPattern("bad", ((1, "H"), (1, "Q")))
    with pytest.raises(ValueError):
        ArrowPattern("empty", ())


def test_bracket_empty_diagram():
    g = parse_gauss_code("", shape="long")
    for p in (XUP, XDOWN, XFWD, XBWD):
        assert bracket(p, g) == 0


def test_trefoil_pattern_counts():
    g = from_braid_word([1, 1, 1])
    assert bracket(XUP, g) == 1
    assert bracket(XDOWN, g) == 1
    # the three interlocked pairs split 1 + 1 + 1 across up/down/forward
    assert bracket(X_ALL, g) == 3


def test_single_kink_matches_nothing():
    g = parse_gauss_code("O1+U1+", shape="long")
    assert bracket(X_ALL, g) == 0


def test_linearity():
    g = from_braid_word([1, 1, 1, 1, 1])
    comb = 2 * XUP + (-1) * XFWD
    assert bracket(comb, g) == 2 * bracket(XUP, g) - bracket(XFWD, g)


def test_unsigned_count_ignores_signs():
    pos = from_braid_word([1, 1, 1])
    neg = pos.mirror()
    assert unsigned_match_count(XUP, pos) == unsigned_match_count(XDOWN, neg)


def test_signs_multiply():
    g = from_braid_word([-1, -1, -1])
    # both chords of each matching pair are negative, so products are +1
    assert bracket(XDOWN, g) == unsigned_match_count(XDOWN, g)
