"""Diagram moves on Gauss codes with bars.

Every move is described by a :class:`MoveInstance`: its kind, a site made of
entry positions (or insertion gaps for the growing moves) and an optional
payload for the choices a site leaves open. Sites are only meaningful for
the exact code they were enumerated from.

Move families:

* free moves realize twisted equivalence and never change J or Q:
  R1, R2, R3, bar cancellation and bar sliding;
* forbidden moves F1 to F4 and T4, counted by the forbidden number;
* arc shifts, counted by the arc shift number.
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exceptions import NotApplicable, StaleMove, TraceFormatError
from .gauss import BAR, Entry, Passage, Role, TwistedGaussCode
from .log import log


class MoveKind(Enum):
    R1_ADD = "R1Add"
    R1_DEL = "R1Del"
    R2_ADD = "R2Add"
    R2_DEL = "R2Del"
    R3 = "R3"
    BAR_CANCEL = "BarCancel"
    BAR_SLIDE = "BarSlide"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    T4_DEL = "T4Del"
    T4_ADD = "T4Add"
    ARC_SHIFT1 = "ArcShift1"
    ARC_SHIFT2 = "ArcShift2"


FREE_MOVES: FrozenSet[MoveKind] = frozenset({
    MoveKind.R1_ADD,
    MoveKind.R1_DEL,
    MoveKind.R2_ADD,
    MoveKind.R2_DEL,
    MoveKind.R3,
    MoveKind.BAR_CANCEL,
    MoveKind.BAR_SLIDE,
})
FORBIDDEN_MOVES: FrozenSet[MoveKind] = frozenset({
    MoveKind.F1,
    MoveKind.F2,
    MoveKind.F3,
    MoveKind.F4,
    MoveKind.T4_DEL,
    MoveKind.T4_ADD,
})
ARC_SHIFT_MOVES: FrozenSet[MoveKind] = frozenset({MoveKind.ARC_SHIFT1, MoveKind.ARC_SHIFT2})
ADD_MOVES: FrozenSet[MoveKind] = frozenset({MoveKind.R1_ADD, MoveKind.R2_ADD, MoveKind.T4_ADD})
SHRINKING_MOVES: Tuple[MoveKind, ...] = (MoveKind.R1_DEL, MoveKind.R2_DEL, MoveKind.BAR_CANCEL)

_KIND_ORDER = {kind: i for i, kind in enumerate(MoveKind)}
_SIGN_TEXT = {1: "+", -1: "-"}
_SIGN_VALUE = {"+": 1, "-": -1}
_TRACE_PATTERN = re.compile(r"^([A-Za-z][A-Za-z0-9]*)@(\d+(?:,\d+)*)(?: +(\S+))?$")

INSERT = "insert"
FORWARD = "forward"
BACKWARD = "backward"
KINK = "kink"


@dataclass(frozen=True)
class MoveInstance:
    kind: MoveKind
    site: Tuple[int, ...]
    payload: Optional[str] = None

    def sort_key(self) -> Tuple[int, Tuple[int, ...], str]:
        return _KIND_ORDER[self.kind], self.site, self.payload or ""

    def __str__(self) -> str:
        line = f"{self.kind.value}@{','.join(str(p) for p in self.site)}"
        return f"{line} {self.payload}" if self.payload else line

    @classmethod
    def parse(cls, line: str) -> "MoveInstance":
        """Parse a trace line of the form ``Kind@p1,p2[,...] [payload]``.

        Raises:
            TraceFormatError: If the line does not follow the trace format.
        """
        match = _TRACE_PATTERN.match(line.strip())
        if not match:
            raise TraceFormatError(f"Invalid move trace line '{line}'")
        try:
            kind = MoveKind(match.group(1))
        except ValueError:
            raise TraceFormatError(f"Unknown move kind '{match.group(1)}'") from None
        site = tuple(int(p) for p in match.group(2).split(","))
        return cls(kind, site, match.group(3))


# -----------------------------------------------------------------------------
# helpers
# -----------------------------------------------------------------------------


def _is_passage(entry: Entry, role: Optional[Role] = None) -> bool:
    return entry is not BAR and (role is None or entry.role is role)


def _adjacent(length: int, first: int, second: int) -> bool:
    return (first + 1) % length == second or (second + 1) % length == first


def _gaps(code: TwistedGaussCode) -> range:
    return range(max(len(code), 1))


def _next_chord_id(code: TwistedGaussCode) -> int:
    return max(code.chord_ids, default=0) + 1


def _remove(code: TwistedGaussCode, positions: Iterable[int]) -> TwistedGaussCode:
    removed = set(positions)
    entries = [entry for i, entry in enumerate(code.entries) if i not in removed]
    present = {entry.chord_id for entry in entries if entry is not BAR}
    return TwistedGaussCode(entries, {c: s for c, s in code.signs.items() if c in present})


def _swap_pairs(code: TwistedGaussCode,
               pairs: Sequence[Tuple[int, int]],
               negate: Iterable[int] = ()) -> TwistedGaussCode:
    entries = list(code.entries)
    for first, second in pairs:
        entries[first], entries[second] = entries[second], entries[first]
    signs = dict(code.signs)
    for chord_id in set(negate):
        signs[chord_id] = -signs[chord_id]
    return TwistedGaussCode(entries, signs)


def _role_sign(payload: str) -> Tuple[Role, int]:
    return Role(payload[0]), _SIGN_VALUE[payload[1]]


_ROLE_SIGN_PAYLOADS = ("O+", "O-", "U+", "U-")

# -----------------------------------------------------------------------------
# Reidemeister moves
# -----------------------------------------------------------------------------


def _r1_del_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    length = len(code)
    for chord in code.chords():
        over, under = chord.over_pos, chord.under_pos
        if (over + 1) % length == under:
            yield MoveInstance(MoveKind.R1_DEL, (over, under))
        elif (under + 1) % length == over:
            yield MoveInstance(MoveKind.R1_DEL, (under, over))


def _r1_add_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    for gap in _gaps(code):
        for payload in _ROLE_SIGN_PAYLOADS:
            yield MoveInstance(MoveKind.R1_ADD, (gap,), payload)


def _apply_r1_add(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    role, sign = _role_sign(move.payload)
    chord_id = _next_chord_id(code)
    gap = move.site[0]
    entries = list(code.entries)
    entries[gap:gap] = [Passage(chord_id, role), Passage(chord_id, role.other)]
    return TwistedGaussCode(entries, {**code.signs, chord_id: sign})


def _r2_del_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    entries = code.entries
    length = len(entries)
    seen = set()
    for i in range(length):
        j = (i + 1) % length
        first, second = entries[i], entries[j]
        if i == j or not (_is_passage(first, Role.OVER) and _is_passage(second, Role.OVER)):
            continue
        if code.signs[first.chord_id] == code.signs[second.chord_id]:
            continue
        under_first = code.position(first.swapped())
        under_second = code.position(second.swapped())
        if not _adjacent(length, under_first, under_second):
            continue
        site = tuple(sorted((i, j, under_first, under_second)))
        if site not in seen:
            seen.add(site)
            yield MoveInstance(MoveKind.R2_DEL, site)


def _r2_add_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    gaps = _gaps(code)
    for first_gap in gaps:
        for second_gap in range(first_gap, len(gaps)):
            for role in "OU":
                for sign in "+-":
                    for layout in ("par", "anti"):
                        yield MoveInstance(MoveKind.R2_ADD, (first_gap, second_gap), f"{role}{sign}{layout}")


def _apply_r2_add(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    role, sign = _role_sign(move.payload)
    first_gap, second_gap = move.site
    a = _next_chord_id(code)
    b = a + 1
    first_pair = [Passage(a, role), Passage(b, role)]
    second_pair = [Passage(a, role.other), Passage(b, role.other)]
    if move.payload.endswith("anti"):
        second_pair.reverse()
    entries = list(code.entries)
    entries = entries[:first_gap] + first_pair + entries[first_gap:second_gap] + second_pair + entries[second_gap:]
    return TwistedGaussCode(entries, {**code.signs, a: sign, b: -sign})


def _r3_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    """Find triangles {Ox, Oy}, {Ux, Oz}, {Uy, Uz} of adjacent bar free pairs.

    The orientation of each pair along the circle is compared with the chord
    signs, only realizable triangles are reported. The site lists the three
    pairs in that order.
    """
    entries = code.entries
    length = len(entries)
    if length < 6:
        return
    seen = set()
    for i in range(length):
        j = (i + 1) % length
        if not (_is_passage(entries[i], Role.OVER) and _is_passage(entries[j], Role.OVER)):
            continue
        for x_pos, y_pos in ((i, j), (j, i)):
            x, y = entries[x_pos].chord_id, entries[y_pos].chord_id
            under_x = code.position(Passage(x, Role.UNDER))
            under_y = code.position(Passage(y, Role.UNDER))
            for over_z in ((under_x - 1) % length, (under_x + 1) % length):
                z_entry = entries[over_z]
                if not _is_passage(z_entry, Role.OVER) or z_entry.chord_id in (x, y):
                    continue
                z = z_entry.chord_id
                under_z = code.position(Passage(z, Role.UNDER))
                if not _adjacent(length, under_y, under_z):
                    continue
                sigma_top = 1 if (x_pos + 1) % length == y_pos else -1
                sigma_mid = 1 if (under_x + 1) % length == over_z else -1
                sigma_bottom = 1 if (under_y + 1) % length == under_z else -1
                eps_x, eps_y, eps_z = code.signs[x], code.signs[y], code.signs[z]
                if sigma_top * sigma_mid != eps_y * eps_z or sigma_top * sigma_bottom != eps_x * eps_z:
                    continue
                site = (x_pos, y_pos, under_x, over_z, under_y, under_z)
                key = frozenset(site)
                if key not in seen:
                    seen.add(key)
                    yield MoveInstance(MoveKind.R3, site)


def _apply_r3(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    site = move.site
    return _swap_pairs(code, [(site[0], site[1]), (site[2], site[3]), (site[4], site[5])])


# -----------------------------------------------------------------------------
# bar moves
# -----------------------------------------------------------------------------


def _bar_cancel_sites(code: TwistedGaussCode, insertions: bool = False) -> Iterator[MoveInstance]:
    entries = code.entries
    length = len(entries)
    seen = set()
    for i in range(length):
        j = (i + 1) % length
        if i != j and entries[i] is BAR and entries[j] is BAR:
            key = frozenset((i, j))
            if key not in seen:
                seen.add(key)
                yield MoveInstance(MoveKind.BAR_CANCEL, (i, j))
    if insertions:
        for gap in _gaps(code):
            yield MoveInstance(MoveKind.BAR_CANCEL, (gap,), INSERT)


def _apply_bar_cancel(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    if move.payload == INSERT:
        gap = move.site[0]
        entries = list(code.entries)
        entries[gap:gap] = [BAR, BAR]
        return TwistedGaussCode(entries, code.signs)
    return _remove(code, move.site)


def _bar_slide_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    entries = code.entries
    length = len(entries)
    for chord in code.chords():
        over, under = chord.over_pos, chord.under_pos
        if entries[(over - 1) % length] is BAR and entries[(under - 1) % length] is BAR:
            yield MoveInstance(MoveKind.BAR_SLIDE, (over, under), FORWARD)
        if entries[(over + 1) % length] is BAR and entries[(under + 1) % length] is BAR:
            yield MoveInstance(MoveKind.BAR_SLIDE, (over, under), BACKWARD)


def _apply_bar_slide(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    """Move the bars in front of both passages of a chord behind them, or back.

    The crossing keeps its sign while over and under exchange.
    """
    over, under = move.site
    length = len(code)
    step = -1 if move.payload == FORWARD else 1
    removed = {(over + step) % length, (under + step) % length}
    entries: List[Entry] = []
    for i, entry in enumerate(code.entries):
        if i in removed:
            continue
        if i in (over, under):
            entries.extend([entry.swapped(), BAR] if move.payload == FORWARD else [BAR, entry.swapped()])
        else:
            entries.append(entry)
    return TwistedGaussCode(entries, code.signs)


# -----------------------------------------------------------------------------
# forbidden moves
# -----------------------------------------------------------------------------


def _f_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    entries = code.entries
    length = len(entries)
    for i in range(length):
        j = (i + 1) % length
        first, second = entries[i], entries[j]
        if i != j and _is_passage(first) and _is_passage(second) and first.role is second.role:
            yield MoveInstance(MoveKind.F1 if first.role is Role.OVER else MoveKind.F2, (i, j))
    if length < 3:
        return
    for i in range(length):
        k = (i + 2) % length
        first, middle, second = entries[i], entries[(i + 1) % length], entries[k]
        if middle is not BAR or not (_is_passage(first) and _is_passage(second)):
            continue
        if first.role is second.role and first.chord_id != second.chord_id:
            yield MoveInstance(MoveKind.F3 if first.role is Role.OVER else MoveKind.F4, (i, k))


def _apply_transposition(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    return _swap_pairs(code, [move.site])


def _t4_del_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    entries = code.entries
    length = len(entries)
    if length < 3:
        return
    for chord in code.chords():
        for first, second in ((chord.over_pos, chord.under_pos), (chord.under_pos, chord.over_pos)):
            middle = (first + 1) % length
            if (first + 2) % length == second and entries[middle] is BAR:
                yield MoveInstance(MoveKind.T4_DEL, (first, middle, second))
                break


def _apply_t4_del(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    return _remove(code, (move.site[0], move.site[2]))


def _t4_add_sites(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    for position, entry in enumerate(code.entries):
        if entry is BAR:
            for payload in _ROLE_SIGN_PAYLOADS:
                yield MoveInstance(MoveKind.T4_ADD, (position,), payload)


def _apply_t4_add(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    role, sign = _role_sign(move.payload)
    chord_id = _next_chord_id(code)
    position = move.site[0]
    entries = list(code.entries)
    entries[position:position + 1] = [Passage(chord_id, role), BAR, Passage(chord_id, role.other)]
    return TwistedGaussCode(entries, {**code.signs, chord_id: sign})


# -----------------------------------------------------------------------------
# arc shifts
# -----------------------------------------------------------------------------


def arc_shift_sites(code: TwistedGaussCode) -> List[MoveInstance]:
    """List the arcs between cyclically consecutive passages.

    Bars on an arc do not break adjacency, they select the second type of arc
    shift. An arc whose both ends belong to the same chord is marked as a kink.
    """
    positions = [i for i, entry in enumerate(code.entries) if entry is not BAR]
    if len(positions) < 2:
        return []
    length = len(code)
    sites = []
    for k, first in enumerate(positions):
        second = positions[(k + 1) % len(positions)]
        bars = (second - first - 1) % length
        kind = MoveKind.ARC_SHIFT2 if bars else MoveKind.ARC_SHIFT1
        same_chord = code.entries[first].chord_id == code.entries[second].chord_id
        sites.append(MoveInstance(kind, (first, second), KINK if same_chord else None))
    return sites


def virtual_arc_shift_sites(code: TwistedGaussCode) -> List[MoveInstance]:
    """List arc shifts whose other end crosses only virtually.

    Such a shift changes the sign of the single classical crossing on the arc.
    With bars next to the passage it may also carry the passage across ``k``
    consecutive bars on one side; the payload is the signed bar count.
    """
    entries = code.entries
    length = len(entries)
    sites = []
    for position, entry in enumerate(entries):
        if entry is BAR:
            continue
        sites.append(MoveInstance(MoveKind.ARC_SHIFT1, (position,)))
        for direction in (1, -1):
            crossed = 0
            cursor = position
            while True:
                cursor = (cursor + direction) % length
                if entries[cursor] is not BAR:
                    break
                crossed += 1
                sites.append(MoveInstance(MoveKind.ARC_SHIFT2, (position,), f"{direction * crossed:+d}"))
    return sites


def _arc_shift_moves(code: TwistedGaussCode) -> Iterator[MoveInstance]:
    yield from arc_shift_sites(code)
    yield from virtual_arc_shift_sites(code)


def _apply_arc_shift(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    if len(move.site) == 2:
        first, second = move.site
        negate = (code.entries[first].chord_id, code.entries[second].chord_id)
        return _swap_pairs(code, [(first, second)], negate)

    position = move.site[0]
    entry = code.entries[position]
    signs = dict(code.signs)
    signs[entry.chord_id] = -signs[entry.chord_id]
    if not move.payload:
        return TwistedGaussCode(code.entries, signs)

    shift = int(move.payload)
    rest = list(code.entries[position + 1:] + code.entries[:position])
    cut = shift if shift > 0 else len(rest) + shift
    moved = rest[:cut] + [entry] + rest[cut:]
    back = len(moved) - position
    return TwistedGaussCode(moved[back:] + moved[:back], signs)


# -----------------------------------------------------------------------------
# registry
# -----------------------------------------------------------------------------

Enumerator = Callable[[TwistedGaussCode], Iterable[MoveInstance]]
Applier = Callable[[TwistedGaussCode, MoveInstance], TwistedGaussCode]

_REMOVE_SITE: Applier = lambda code, move: _remove(code, move.site)

_ENUMERATORS: Dict[MoveKind, Enumerator] = {
    MoveKind.R1_ADD: _r1_add_sites,
    MoveKind.R1_DEL: _r1_del_sites,
    MoveKind.R2_ADD: _r2_add_sites,
    MoveKind.R2_DEL: _r2_del_sites,
    MoveKind.R3: _r3_sites,
    MoveKind.BAR_SLIDE: _bar_slide_sites,
    MoveKind.T4_DEL: _t4_del_sites,
    MoveKind.T4_ADD: _t4_add_sites,
}

_APPLIERS: Dict[MoveKind, Applier] = {
    MoveKind.R1_ADD: _apply_r1_add,
    MoveKind.R1_DEL: _REMOVE_SITE,
    MoveKind.R2_ADD: _apply_r2_add,
    MoveKind.R2_DEL: _REMOVE_SITE,
    MoveKind.R3: _apply_r3,
    MoveKind.BAR_CANCEL: _apply_bar_cancel,
    MoveKind.BAR_SLIDE: _apply_bar_slide,
    MoveKind.F1: _apply_transposition,
    MoveKind.F2: _apply_transposition,
    MoveKind.F3: _apply_transposition,
    MoveKind.F4: _apply_transposition,
    MoveKind.T4_DEL: _apply_t4_del,
    MoveKind.T4_ADD: _apply_t4_add,
    MoveKind.ARC_SHIFT1: _apply_arc_shift,
    MoveKind.ARC_SHIFT2: _apply_arc_shift,
}

_F_KINDS = frozenset({MoveKind.F1, MoveKind.F2, MoveKind.F3, MoveKind.F4})


def enumerate_moves(code: TwistedGaussCode, kinds: Iterable[MoveKind], insertions: bool = False) -> List[MoveInstance]:
    """Return every applicable instance of the requested kinds.

    Instances are ordered by kind, then site, then payload. Growing moves are
    only produced for the Add kinds that are requested explicitly; bar pair
    insertion is produced with ``insertions``.
    """
    kinds = frozenset(kinds)
    found: List[MoveInstance] = []
    if kinds & _F_KINDS:
        found.extend(move for move in _f_sites(code) if move.kind in kinds)
    if kinds & ARC_SHIFT_MOVES:
        found.extend(move for move in _arc_shift_moves(code) if move.kind in kinds)
    if MoveKind.BAR_CANCEL in kinds:
        found.extend(_bar_cancel_sites(code, insertions))
    for kind in kinds:
        enumerator = _ENUMERATORS.get(kind)
        if enumerator is not None:
            found.extend(enumerator(code))
    found.sort(key=MoveInstance.sort_key)
    return found


def apply_unchecked(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    """Apply a move that is known to come from ``enumerate_moves(code, ...)``."""
    return _APPLIERS[move.kind](code, move)


def apply(code: TwistedGaussCode, move: MoveInstance) -> TwistedGaussCode:
    """Apply a move after checking it against the current code.

    Raises:
        StaleMove: If the site points outside the code.
        NotApplicable: If the site does not carry the pattern the move needs.
    """
    growing = move.kind in ADD_MOVES and move.kind is not MoveKind.T4_ADD
    inserting = move.kind is MoveKind.BAR_CANCEL and move.payload == INSERT
    limit = len(_gaps(code)) if growing or inserting else len(code)
    if not move.site or any(p < 0 or p >= limit for p in move.site):
        raise StaleMove(f"Move {move} does not fit a code with {len(code)} entries")
    if move not in enumerate_moves(code, {move.kind}, insertions=inserting):
        raise NotApplicable(f"Move {move} is not applicable here")
    result = apply_unchecked(code, move)
    log.debug("Applied %s", move)
    return result
