"""Independent computation of v2 by the descending-diagram algorithm.

Walk the diagram from the base point; whenever a chord is first met at its
head (an undercrossing on first passage), switch that crossing.  Each switch
contributes sign * lk of the two-component smoothing, evaluated on the
diagram state at switch time.  The walk ends on a descending diagram, which
represents the unknot, so the accumulated total is v2.

The linking number of a smoothing is computed two ways: by the closed-form
chord count and by explicitly two-coloring the smoothed components.  The two
counts are asserted equal; a mismatch means the input was not realizable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Chord, GaussDiagram

__all__ = ["FlipTrace", "descend", "lk_smoothed", "lk_smoothed_two_color", "v2_skein"]


class NotDescendingRealizable(ValueError):
    """The two lk counts disagreed: the diagram state is not realizable."""


@dataclass(frozen=True)
class FlipTrace:
    flips: tuple[tuple[int, int, int], ...]  # (chord id, sign at flip time, lk)
    final_diagram: GaussDiagram

    @property
    def total(self) -> int:
        return sum(sign * lk for _, sign, lk in self.flips)

    def to_dict(self) -> dict:
        return {
            "flips": [{"chord": cid, "sign": sign, "lk": lk}
                      for cid, sign, lk in self.flips],
            "final": self.final_diagram.serialize(),
        }


def lk_smoothed(diagram: GaussDiagram, chord_id: int) -> int:
    """Closed-form lk of the smoothing at a chord.

    Sum of signs of chords interlocked with it whose head lies on the arc
    from its tail forward to the base point.
    """
    c = diagram.chord(chord_id)
    total = 0
    for other in diagram.chords:
        if other.id == chord_id or not diagram.interlocked(c, other):
            continue
        if other.head > c.tail:
            total += other.sign
    return total


def lk_smoothed_two_color(diagram: GaussDiagram, chord_id: int) -> Fraction:
    """lk of the smoothing by two-coloring the components.

    Smoothing at a chord splits the circle into the arc tail->head and the
    arc head->tail; inter-component crossings are exactly the interlocked
    chords, and lk is half their signed count.  Returns an exact Fraction so
    a non-integer result (impossible on realizable inputs) is visible.
    """
    c = diagram.chord(chord_id)
    lo, hi = min(c.tail, c.head), max(c.tail, c.head)

    def component(p: Fraction) -> int:
        return 0 if lo < p < hi else 1

    total = 0
    for other in diagram.chords:
        if other.id == chord_id:
            continue
        if component(other.tail) != component(other.head):
            total += other.sign
    return Fraction(total, 2)


def is_descending(diagram: GaussDiagram) -> bool:
    seen: set[int] = set()
    for _, c, kind in diagram.endpoints():
        if c.id not in seen:
            if kind == "H":
                return False
            seen.add(c.id)
    return True


def descend(diagram: GaussDiagram, check_two_color: bool = True) -> FlipTrace:
    """Switch first-met-at-head crossings until the diagram is descending."""
    chords = {c.id: c for c in diagram.chords}
    flips = []
    seen: set[int] = set()
    for _, c0, kind in diagram.endpoints():
        if c0.id in seen:
            continue
        seen.add(c0.id)
        if kind == "T":
            continue
        state = GaussDiagram(chords.values(), shape=diagram.shape)
        lk = lk_smoothed(state, c0.id)
        if check_two_color:
            lk2 = lk_smoothed_two_color(state, c0.id)
            if lk2 != lk:
                raise NotDescendingRealizable(
                    f"lk mismatch at chord {c0.id}: count {lk} vs smoothing {lk2}")
        flips.append((c0.id, chords[c0.id].sign, lk))
        chords[c0.id] = chords[c0.id].reversed()
    final = GaussDiagram(chords.values(), shape=diagram.shape,
                         provenance=diagram.provenance)
    assert is_descending(final)
    return FlipTrace(tuple(flips), final)


def v2_skein(diagram: GaussDiagram) -> int:
    """v2 as the sum of sign * lk over the descent's crossing switches."""
    return descend(diagram).total
