"""Index, odd writhe, affine index data and the polynomial Q(s, t).

For a chord ``c`` the over-counting loop is the circle arc from the Over
passage of ``c`` forward to its Under passage. Every other passage met on
that arc contributes its flat sign: ``+sgn`` for an Under passage and ``-sgn``
for an Over passage. The under-counting loop is the complementary arc.
"""
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Tuple

from .gauss import BAR, Passage, Role, TwistedGaussCode
from .log import log
from .poly import S_SQUARED, ST_S, ST_SQUARED, T_SQUARED, Poly2


class BarParity(Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, code: TwistedGaussCode) -> "BarParity":
        return cls.ODD if code.bar_count % 2 else cls.EVEN


@dataclass(frozen=True)
class AffineData:
    chord_id: int
    ind_over: int
    rho: int
    p_over: int
    p_under: int


@dataclass(frozen=True)
class Bounds:
    odd_writhe: int
    arcshift_lower: int
    forbidden_lower: int
    bar_parity: BarParity

    def to_json(self) -> Dict[str, object]:
        return {
            "J": self.odd_writhe,
            "barParity": self.bar_parity.value,
            "arcshiftLower": self.arcshift_lower,
            "forbiddenLower": self.forbidden_lower,
        }


def _arc(code: TwistedGaussCode, start: int, stop: int) -> List[int]:
    """Positions strictly between ``start`` and ``stop`` walking forward around the circle."""
    length = len(code)
    return [(start + k) % length for k in range(1, (stop - start) % length)]


def passage_flat_sign(code: TwistedGaussCode, passage: Passage) -> int:
    flat = code.signs[passage.chord_id]
    return flat if passage.role is Role.UNDER else -flat


def crossing_index(code: TwistedGaussCode, chord_id: int) -> int:
    """Count the passages on the shorter arc between the two passages of a chord.

    Both arcs carry the same parity, which is all the odd writhe consumes.

    Raises:
        UnknownChord: If the chord is not part of the code.
    """
    chord = code.chord(chord_id)
    forward = sum(1 for i in _arc(code, chord.over_pos, chord.under_pos) if code.entries[i] is not BAR)
    backward = code.passage_count - 2 - forward
    return min(forward, backward)


def affine_data(code: TwistedGaussCode, chord_id: int) -> AffineData:
    chord = code.chord(chord_id)
    ind_over = 0
    bars_over = 0
    for i in _arc(code, chord.over_pos, chord.under_pos):
        entry = code.entries[i]
        if entry is BAR:
            bars_over += 1
            continue
        ind_over += passage_flat_sign(code, entry)
    bars_under = code.bar_count - bars_over
    return AffineData(
        chord_id=chord_id,
        ind_over=ind_over,
        rho=ind_over % 2,
        p_over=bars_over % 2,
        p_under=bars_under % 2,
    )


def affine_table(code: TwistedGaussCode) -> List[AffineData]:
    return [affine_data(code, chord_id) for chord_id in code.chord_ids]


def odd_writhe(code: TwistedGaussCode) -> int:
    return sum(code.signs[chord_id] for chord_id in code.chord_ids if crossing_index(code, chord_id) % 2)


def chord_term(sign: int, data: AffineData) -> Poly2:
    return Poly2.binomial_product((data.rho, data.p_over), (data.rho, data.p_under)) * sign


def q_polynomial(code: TwistedGaussCode) -> Poly2:
    total = Poly2.zero()
    for data in affine_table(code):
        total += chord_term(code.signs[data.chord_id], data)
    return total


def bounds(code: TwistedGaussCode) -> Bounds:
    writhe = odd_writhe(code)
    parity = BarParity.of(code)
    magnitude = abs(writhe)
    divisor = 4 if parity is BarParity.EVEN else 2
    return Bounds(
        odd_writhe=writhe,
        arcshift_lower=-(-magnitude // 2),
        forbidden_lower=-(-magnitude // divisor),
        bar_parity=parity,
    )


class DeltaClass(Enum):
    F1F2_EVEN = "F1F2-Even"
    F3F4_EVEN = "F3F4-Even"
    ODD_BAR = "OddBar"
    T4_EVEN = "T4-Even"


_BASIS = (ST_SQUARED, T_SQUARED, S_SQUARED)


def _combination(multiplicities: Tuple[int, ...], signs: Tuple[int, ...]) -> Poly2:
    total = Poly2.zero()
    for base, m, l in zip(_BASIS, multiplicities, signs):
        total += base * (l * m)
    return total


def _f1f2_allowed(m: Tuple[int, ...], l: Tuple[int, ...]) -> bool:
    if m == (0, 0, 0):
        return True
    if m == (1, 1, 1):
        return l[0] == l[1] or l[0] == l[2] or l[1] == l[2]
    return all(x in (0, 2) for x in m) and m[0] == m[1] != m[2]


def _f3f4_allowed(m: Tuple[int, ...], l: Tuple[int, ...]) -> bool:
    if m == (0, 0, 0):
        return True
    if m == (1, 1, 1):
        return l[0] == l[1] or l[0] == l[2]
    return all(x in (0, 2) for x in m) and m[0] != m[1] == m[2] and l[1] != l[2]


def _allowed_set(condition) -> FrozenSet[Poly2]:
    allowed = set()
    for m in itertools.product((0, 1, 2), repeat=3):
        for l in itertools.product((-1, 1), repeat=3):
            if condition(m, l):
                allowed.add(_combination(m, l))
    return frozenset(allowed)


ALLOWED_DELTAS = {
    DeltaClass.F1F2_EVEN: _allowed_set(_f1f2_allowed),
    DeltaClass.F3F4_EVEN: _allowed_set(_f3f4_allowed),
    DeltaClass.ODD_BAR: frozenset(ST_S * (l * m) for m in (0, 2) for l in (-1, 1)),
    DeltaClass.T4_EVEN: frozenset([Poly2.zero(), T_SQUARED, -T_SQUARED]),
}

_KIND_CLASSES = {
    "F1": DeltaClass.F1F2_EVEN,
    "F2": DeltaClass.F1F2_EVEN,
    "F3": DeltaClass.F3F4_EVEN,
    "F4": DeltaClass.F3F4_EVEN,
    "T4Del": DeltaClass.T4_EVEN,
    "T4Add": DeltaClass.T4_EVEN,
}


@dataclass(frozen=True)
class DeltaVerdict:
    difference: Poly2
    bar_parity: BarParity
    classes: FrozenSet[DeltaClass]

    @property
    def outside(self) -> bool:
        return not self.classes

    def admits(self, kind: str) -> bool:
        """Whether the difference is one the given forbidden move kind can produce at this bar parity."""
        kind = getattr(kind, "value", kind)
        if kind not in _KIND_CLASSES:
            return not self.difference
        if self.bar_parity is BarParity.ODD:
            if kind in ("T4Del", "T4Add"):
                return not self.difference
            return DeltaClass.ODD_BAR in self.classes
        return _KIND_CLASSES[kind] in self.classes


def q_delta_class(before: Poly2, after: Poly2, bar_parity: BarParity) -> DeltaVerdict:
    difference = after - before
    classes = frozenset(cls for cls, allowed in ALLOWED_DELTAS.items() if difference in allowed)
    if not classes:
        log.debug("Q difference %s lies outside every forbidden move class", difference)
    return DeltaVerdict(difference, bar_parity, classes)


def invariant_report(code: TwistedGaussCode, with_chords: bool = True) -> Dict[str, object]:
    report = bounds(code).to_json()
    report["Q"] = [{
        "s": deg_s,
        "t": deg_t,
        "coeff": coeff
    } for (deg_s, deg_t), coeff in q_polynomial(code).sorted_terms()]
    if with_chords:
        report["chords"] = [{
            "id": data.chord_id,
            "sign": code.signs[data.chord_id],
            "index": crossing_index(code, data.chord_id),
            "indOver": data.ind_over,
            "rho": data.rho,
            "pOver": data.p_over,
            "pUnder": data.p_under,
        } for data in affine_table(code)]
    return report

