"""Gauss codes with bars.

A twisted knot diagram is recorded as the cyclic sequence of events met while
walking once around the circle: passages through classical crossings (over or
under, tagged with the crossing's chord id) and bars. Crossing signs are kept
in a separate map keyed by chord id.

Text form::

    O1+ U2- * U1+ O2-

Each passage token carries its chord's sign and both tokens of a chord must
agree. A lone ``*`` is the trivial twisted knot with one bar, the empty string
the trivial knot without one.
"""
import re
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import GaussSyntaxError, PairingError, SignMismatch, UnknownChord
from .log import log


class Role(Enum):
    OVER = "O"
    UNDER = "U"

    @property
    def other(self) -> "Role":
        return Role.UNDER if self is Role.OVER else Role.OVER


class TrivialKind(Enum):
    NO_BAR = "NoBar"
    ONE_BAR = "OneBar"


@dataclass(frozen=True)
class Passage:
    chord_id: int
    role: Role

    def swapped(self) -> "Passage":
        return Passage(self.chord_id, self.role.other)

    def __str__(self) -> str:
        return f"{self.role.value}{self.chord_id}"


class BarMark:
    """The bar marker. Use the module level ``BAR`` instance."""
    __slots__ = ()

    def __repr__(self) -> str:
        return "BAR"

    def __str__(self) -> str:
        return "*"

    def __reduce__(self):
        return "BAR"


BAR = BarMark()

Entry = Union[Passage, BarMark]


@dataclass(frozen=True)
class Chord:
    chord_id: int
    sign: int
    over_pos: int
    under_pos: int


@dataclass(frozen=True)
class CanonicalCode:
    text: str
    bar_count: int

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Violation:
    kind: str
    chord_id: Optional[int] = None
    position: Optional[int] = None
    message: str = ""

    def __str__(self) -> str:
        where = []
        if self.chord_id is not None:
            where.append(f"chord {self.chord_id}")
        if self.position is not None:
            where.append(f"position {self.position}")
        location = f" ({', '.join(where)})" if where else ""
        return f"{self.kind}{location}: {self.message}" if self.message else f"{self.kind}{location}"


_SIGN_TEXT = {1: "+", -1: "-"}
_PASSAGE_PATTERN = re.compile(r"^([OU])(\d+)([+-])$")
_WHITESPACE = re.compile(r"[ \t\n]+")


class TwistedGaussCode:
    """A cyclic word of passages and bars plus a sign per chord.

    Instances are treated as immutable values. Entry positions are indices into
    ``entries`` and are only meaningful for the exact instance they were read
    from, rotations and relabelings produce new positions.
    """
    __slots__ = ("_entries", "_signs", "_positions")

    def __init__(self, entries: Sequence[Entry] = (), signs: Optional[Mapping[int, int]] = None):
        self._entries: Tuple[Entry, ...] = tuple(entries)
        self._signs: Mapping[int, int] = MappingProxyType(dict(signs or {}))
        self._positions: Optional[Dict[Passage, int]] = None

    @property
    def entries(self) -> Tuple[Entry, ...]:
        return self._entries

    @property
    def signs(self) -> Mapping[int, int]:
        return self._signs

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedGaussCode):
            return NotImplemented
        return self._entries == other._entries and dict(self._signs) == dict(other._signs)

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return f"TwistedGaussCode({' '.join(self.tokens())!r})"

    @property
    def bar_count(self) -> int:
        return sum(1 for entry in self._entries if entry is BAR)

    @property
    def passage_count(self) -> int:
        return len(self._entries) - self.bar_count

    @property
    def chord_ids(self) -> List[int]:
        return sorted({entry.chord_id for entry in self._entries if isinstance(entry, Passage)})

    def sign(self, chord_id: int) -> int:
        try:
            return self._signs[chord_id]
        except KeyError:
            raise UnknownChord(f"Chord {chord_id} does not exist") from None

    def position(self, passage: Passage) -> int:
        if self._positions is None:
            self._positions = {entry: i for i, entry in enumerate(self._entries) if isinstance(entry, Passage)}
        try:
            return self._positions[passage]
        except KeyError:
            raise UnknownChord(f"Chord {passage.chord_id} has no {passage.role.name.lower()} passage") from None

    def chord(self, chord_id: int) -> Chord:
        return Chord(
            chord_id=chord_id,
            sign=self.sign(chord_id),
            over_pos=self.position(Passage(chord_id, Role.OVER)),
            under_pos=self.position(Passage(chord_id, Role.UNDER)),
        )

    def chords(self) -> List[Chord]:
        return [self.chord(chord_id) for chord_id in self.chord_ids]

    def token(self, position: int) -> str:
        entry = self._entries[position]
        if entry is BAR:
            return "*"
        return f"{entry}{_SIGN_TEXT.get(self._signs.get(entry.chord_id), '?')}"

    def tokens(self) -> List[str]:
        return [self.token(i) for i in range(len(self._entries))]

    def rotated(self, start: int) -> "TwistedGaussCode":
        if not self._entries:
            return self
        start %= len(self._entries)
        return TwistedGaussCode(self._entries[start:] + self._entries[:start], self._signs)


def parse_gauss_code(text: str) -> TwistedGaussCode:
    """Parse the text form of a Gauss code.

    Chord ids are renumbered 1..n in order of first appearance.

    Raises:
        GaussSyntaxError: On a token outside the grammar.
        PairingError: If a chord lacks exactly one Over and one Under passage.
        SignMismatch: If the two passages of a chord disagree on the sign.
    """
    stripped = text.strip(" \t\n")
    tokens = _WHITESPACE.split(stripped) if stripped else []

    raw_entries: List[Union[Tuple[str, int], BarMark]] = []
    raw_signs: Dict[int, List[Tuple[int, int]]] = {}
    for i, token in enumerate(tokens):
        if token == "*":
            raw_entries.append(BAR)
            continue
        match = _PASSAGE_PATTERN.match(token)
        if not match or int(match.group(2)) == 0:
            raise GaussSyntaxError(f"Invalid token '{token}' at position {i}",
                                   [Violation("GaussSyntaxError", position=i, message=f"invalid token '{token}'")])
        role, chord_id, sign = match.group(1), int(match.group(2)), 1 if match.group(3) == "+" else -1
        raw_entries.append((role, chord_id))
        raw_signs.setdefault(chord_id, []).append((i, sign))

    roles: Dict[int, List[str]] = {}
    for entry in raw_entries:
        if entry is not BAR:
            roles.setdefault(entry[1], []).append(entry[0])
    pairing = [
        Violation("PairingError", chord_id=chord_id, message=f"passages {' '.join(found)}")
        for chord_id, found in roles.items()
        if sorted(found) != ["O", "U"]
    ]
    if pairing:
        raise PairingError("Every chord needs exactly one Over and one Under passage", pairing)
    mismatched = [
        Violation("SignMismatch", chord_id=chord_id, position=found[1][0], message="passages carry different signs")
        for chord_id, found in raw_signs.items()
        if found[0][1] != found[1][1]
    ]
    if mismatched:
        raise SignMismatch("The two passages of a chord must carry the same sign", mismatched)

    relabel: Dict[int, int] = {}
    entries: List[Entry] = []
    signs: Dict[int, int] = {}
    for entry in raw_entries:
        if entry is BAR:
            entries.append(BAR)
            continue
        role, raw_id = entry
        chord_id = relabel.setdefault(raw_id, len(relabel) + 1)
        signs[chord_id] = raw_signs[raw_id][0][1]
        entries.append(Passage(chord_id, Role(role)))

    code = TwistedGaussCode(entries, signs)
    log.debug("Parsed Gauss code with %d chords and %d bars", len(signs), code.bar_count)
    return code


def serialize(code: TwistedGaussCode) -> str:
    """Emit the grammar form, starting at the Over passage of the smallest chord id."""
    if code.passage_count == 0:
        return " ".join("*" * code.bar_count)
    start = code.position(Passage(code.chord_ids[0], Role.OVER))
    return " ".join(code.rotated(start).tokens())


def validate(code: TwistedGaussCode) -> List[Violation]:
    violations: List[Violation] = []
    seen: Dict[int, List[Tuple[Role, int]]] = {}
    for position, entry in enumerate(code.entries):
        if entry is BAR:
            continue
        if not isinstance(entry, Passage):
            violations.append(Violation("GaussSyntaxError", position=position, message=f"unexpected entry {entry!r}"))
            continue
        if not isinstance(entry.chord_id, int) or entry.chord_id <= 0:
            violations.append(Violation("BadChordId", chord_id=entry.chord_id, position=position))
        seen.setdefault(entry.chord_id, []).append((entry.role, position))

    for chord_id, found in seen.items():
        if sorted(role.value for role, _ in found) != ["O", "U"]:
            violations.append(
                Violation("PairingError",
                          chord_id=chord_id,
                          position=found[0][1],
                          message=f"passages {' '.join(role.value for role, _ in found)}"))
        if chord_id not in code.signs:
            violations.append(Violation("UnsignedChord", chord_id=chord_id, position=found[0][1]))

    for chord_id, sign in code.signs.items():
        if chord_id not in seen:
            violations.append(Violation("OrphanSign", chord_id=chord_id, message="no passages"))
        elif sign not in (1, -1):
            violations.append(Violation("BadSign", chord_id=chord_id, message=f"sign {sign!r}"))
    return violations


def _relabeled(code: TwistedGaussCode, start: int) -> Tuple[str, List[Entry], Dict[int, int]]:
    entries = code.entries
    length = len(entries)
    mapping: Dict[int, int] = {}
    tokens: List[str] = []
    rotated: List[Entry] = []
    for k in range(length):
        entry = entries[(start + k) % length]
        if entry is BAR:
            tokens.append("*")
            rotated.append(BAR)
            continue
        chord_id = mapping.setdefault(entry.chord_id, len(mapping) + 1)
        tokens.append(f"{entry.role.value}{chord_id}{_SIGN_TEXT[code.signs[entry.chord_id]]}")
        rotated.append(Passage(chord_id, entry.role))
    signs = {new: code.signs[old] for old, new in mapping.items()}
    return " ".join(tokens), rotated, signs


def canonical_form(code: TwistedGaussCode) -> Tuple[TwistedGaussCode, CanonicalCode]:
    """Return the canonical frame of ``code`` together with its canonical text.

    The canonical text is the lexicographically least serialization over all
    rotations, each relabeled by first appearance. Reflection and reversal are
    not applied.
    """
    if not code.entries:
        return code, CanonicalCode("", 0)
    best = None
    for start in range(len(code.entries)):
        candidate = _relabeled(code, start)
        if best is None or candidate[0] < best[0]:
            best = candidate
    text, entries, signs = best
    return TwistedGaussCode(entries, signs), CanonicalCode(text, code.bar_count)


def canonicalize(code: TwistedGaussCode) -> CanonicalCode:
    return canonical_form(code)[1]


def canonical_code(code: TwistedGaussCode) -> TwistedGaussCode:
    return canonical_form(code)[0]


def is_trivial(code: TwistedGaussCode) -> Optional[TrivialKind]:
    if code.passage_count:
        return None
    return TrivialKind.ONE_BAR if code.bar_count % 2 else TrivialKind.NO_BAR


def to_json(code: TwistedGaussCode) -> Dict[str, object]:
    text = serialize(code)
    frame = parse_gauss_code(text)
    return {
        "chords": [{
            "id": chord_id,
            "sign": frame.signs[chord_id]
        } for chord_id in frame.chord_ids],
        "entries": [str(entry) for entry in frame.entries],
        "bars": frame.bar_count,
        "code": text,
        "canonical": canonicalize(code).text,
    }
