import random
from fractions import Fraction

import pytest

from casson.diagram import from_braid_word
from casson.invariants import v2_gauss
from casson.moves import random_braid_word
from casson.plane import (GenericityError, PlaneCurve, PolyKnot, arnold_I,
                          convex_circle_curve, decomposition_identity,
                          morse_stats, polyknot_from_braid, project, v2_morse,
                          v2_morse_closed)


def _long_knot(word):
    return polyknot_from_braid(word, closed=False)


def test_polyknot_json_roundtrip():
    k = _long_knot([1, 1, 1])
    k2 = PolyKnot.from_json(k.to_json())
    assert k2.vertices == k.vertices and k2.shape == k.shape


def test_polyknot_validation():
    with pytest.raises(ValueError):
        PolyKnot(((1, 0, 0), (0, 5, 0)), shape="long")  # endpoint off axis
    with pytest.raises(ValueError):
        PolyKnot(((0, 0, 0), (0, 1, 0)), shape="ring")


def test_genericity_rejects_horizontal_edge():
    with pytest.raises(GenericityError):
        PlaneCurve([(0, 0, 0), (3, 0, 0), (1, 2, 0)], shape="closed")


def test_genericity_rejects_duplicate_levels():
    with pytest.raises(GenericityError):
        PlaneCurve([(0, 0, 0), (4, 1, 0), (2, 0, 0)], shape="closed")


def test_long_trefoil_morse():
    curve = project(_long_knot([1, 1, 1]))
    assert v2_morse(curve) == 1
    assert v2_gauss(curve.gauss_diagram()) == 1


def test_long_figure_eight_morse():
    curve = project(_long_knot([1, -2, 1, -2]))
    assert v2_morse(curve) == -1


def test_closed_trefoil_morse():
    curve = project(polyknot_from_braid([1, 1, 1], closed=True))
    assert v2_morse_closed(curve) == 1


def test_circle_fixture():
    curve = project(convex_circle_curve())
    st = morse_stats(curve)
    assert st.M == 1 and st.X == 0
    assert v2_morse_closed(curve) == 0


def test_kinked_unknot_morse():
    # one positive kink on two strands, still the unknot
    curve = project(_long_knot([1]))
    assert v2_morse(curve) == 0


def test_random_words_morse_agreement():
    for seed in range(15):
        rng = random.Random(seed)
        word = random_braid_word(rng, 6 + seed % 5)
        curve = project(polyknot_from_braid(word, closed=False))
        assert v2_morse(curve) == v2_gauss(curve.gauss_diagram())


def test_random_words_morse_closed_agreement():
    for seed in range(10):
        rng = random.Random(50 + seed)
        word = random_braid_word(rng, 6 + seed % 4)
        curve = project(polyknot_from_braid(word, closed=True))
        based = from_braid_word(word)
        assert v2_morse_closed(curve) == v2_gauss(based)


def test_arnold_resolution_independent():
    for seed in range(10):
        rng = random.Random(seed)
        word = random_braid_word(rng, 7)
        curve = project(polyknot_from_braid(word, closed=False))
        assert arnold_I(curve, ascending=True) == arnold_I(curve, ascending=False)


def test_decomposition_identity():
    for seed in range(10):
        rng = random.Random(30 + seed)
        word = random_braid_word(rng, 7)
        curve = project(polyknot_from_braid(word, closed=False))
        assert decomposition_identity(curve, curve.gauss_diagram())


def test_perturbed_keeps_long_endpoints():
    k = _long_knot([1, 1, 1])
    p = k.perturbed(random.Random(1), Fraction(1, 997))
    assert p.vertices[0] == k.vertices[0]
    assert p.vertices[-1] == k.vertices[-1]


def test_svg_export_smoke():
    svg = project(_long_knot([1, 1, 1])).to_svg()
    assert svg.startswith("<svg") and "polyline" in svg
