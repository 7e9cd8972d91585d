"""Twisted knot families with known arc shift numbers, plus two worked examples.

Each family is built from repeated blocks. The codes for small ``n`` are kept
in ``data/families.txt``; every fixture also carries the invariant values the
family is known to have, so a test can hold the code against them.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from .exceptions import InvalidN
from .gauss import TwistedGaussCode, parse_gauss_code
from .log import log
from .poly import S, T, Poly2
from .utils import read_file

DATA_FILE = Path(__file__).parent / "data" / "families.txt"


class FamilyName(Enum):
    KN = "kn"
    TORUS = "torus"
    TORUS_BAR = "torus-bar"
    RAS = "ras"


class ExampleName(Enum):
    REGION_FIG11 = "RegionFig11"
    STRICT_INEQ_FIG17 = "StrictIneqFig17"


@dataclass(frozen=True)
class FamilySpec:
    name: FamilyName
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise InvalidN(f"Family size must be a positive integer, got {self.n!r}")


@dataclass(frozen=True)
class AffineRow:
    """Expected affine index data of one chord, addressed by its label in the family."""
    label: str
    chord_id: int
    ind_over: int
    rho: int
    p_over: int
    p_under: int


@dataclass(frozen=True)
class Fixture:
    name: str
    n: int
    text: str
    code: TwistedGaussCode
    labels: Dict[int, str]
    expected_j: int
    expected_q: Poly2
    expected_table: Tuple[AffineRow, ...]
    metadata: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> Dict[str, object]:
        return {
            "family": self.name,
            "n": self.n,
            "code": self.text,
            "chords": len(self.code.chord_ids),
            "bars": self.code.bar_count,
            "expectedJ": self.expected_j,
            "expectedQ": str(self.expected_q),
            "metadata": dict(self.metadata),
        }


def _row(label: str, chord_id: int, ind_over: int, p_over: int, p_under: int) -> AffineRow:
    return AffineRow(label, chord_id, ind_over, ind_over % 2, p_over, p_under)


# -----------------------------------------------------------------------------
# block builders
# -----------------------------------------------------------------------------


def _kn_blocks(n: int) -> Tuple[str, List[AffineRow]]:
    # chord 1 is c_1, 2 is d'_1, 3 is d_1; block i >= 2 uses b+1 = d'_i, b+2 = c_i, b+3 = d_i
    head = ["*", "U1+", "O2+", "O1+", "O3+", "*"]
    tail = ["U3+", "U2+"]
    rows = [
        _row("c_1", 1, 1, 0, 0),
        _row("d'_1", 2, -2 * n + 1, 1, 1),
        _row("d_1", 3, -2 * n + 2, 1, 1),
    ]
    for i in range(2, n + 1):
        b = 3 * (i - 1)
        head += [f"O{b + 1}+", f"U{b + 2}+", f"O{b + 3}+", f"O{b + 2}+"]
        tail += [f"U{b + 3}+", f"U{b + 1}+"]
        rows += [
            _row(f"d'_{i}", b + 1, -2 * n + 4 * i - 2, 0, 0),
            _row(f"c_{i}", b + 2, 1, 0, 0),
            _row(f"d_{i}", b + 3, -2 * n + 4 * i - 3, 0, 0),
        ]
    return " ".join(head + tail), rows


def _torus_blocks(n: int, barred: bool) -> Tuple[str, List[AffineRow]]:
    tokens: List[str] = []
    rows: List[AffineRow] = []
    for i in range(1, n + 1):
        first, second = 2 * i - 1, 2 * i
        if i % 2:
            a, b = first, second
            tokens += [f"O{a}+", f"O{b}+", "*", f"U{a}+", "*", f"U{b}+"]
            rows += [
                _row(f"a_{i}", a, -1, 1, 0 if barred else 1),
                _row(f"b_{i}", b, 1, 0, 1 if barred else 0),
            ]
        else:
            b, a = first, second
            tokens += [f"U{b}+", "*", f"U{a}+", "*", f"O{b}+", f"O{a}+"]
            rows += [
                _row(f"b_{i}", b, -1, 1 if barred else 0, 0),
                _row(f"a_{i}", a, 1, 0 if barred else 1, 1),
            ]
    if barred:
        tokens.append("*")
    rows.sort(key=lambda row: row.chord_id)
    return " ".join(tokens), rows


def _ras_blocks(n: int) -> Tuple[str, List[AffineRow]]:
    tokens: List[str] = []
    rows: List[AffineRow] = []
    for i in range(1, n + 1):
        c, c_prime = 2 * i - 1, 2 * i
        if i % 2:
            tokens += [f"O{c}+", f"U{c_prime}-", "*", f"U{c}+", "*", f"O{c_prime}-"]
            ind = -1
        else:
            tokens += [f"O{c}+", f"O{c_prime}-", "*", f"U{c}+", "*", f"U{c_prime}-"]
            ind = 1
        rows += [_row(f"c_{i}", c, ind, 1, 1), _row(f"c'_{i}", c_prime, ind, 0, 0)]
    return " ".join(tokens), rows


def build_code(name: FamilyName, n: int) -> str:
    """Generate the code text of a family member by block repetition."""
    return _BUILDERS[name](n)[0]


_BUILDERS: Dict[FamilyName, Callable[[int], Tuple[str, List[AffineRow]]]] = {
    FamilyName.KN: _kn_blocks,
    FamilyName.TORUS: lambda n: _torus_blocks(n, False),
    FamilyName.TORUS_BAR: lambda n: _torus_blocks(n, True),
    FamilyName.RAS: _ras_blocks,
}

# -----------------------------------------------------------------------------
# stored fixtures
# -----------------------------------------------------------------------------


@lru_cache(maxsize=None)
def stored_codes() -> Dict[Tuple[FamilyName, int], str]:
    """Read the stored family codes, keyed by family and size."""
    codes = {}
    for line in read_file(DATA_FILE).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, n, text = line.split(" ", 2)
        codes[(FamilyName(name), int(n))] = text
    log.debug("Loaded %d stored family codes from %s", len(codes), DATA_FILE)
    return codes


def _expected_q(name: FamilyName, n: int) -> Poly2:
    st_1, s_1, t_1 = S * T - 1, S - 1, T - 1
    expressions = {
        FamilyName.KN: st_1**2 + t_1**2 + (2 * n - 1) * s_1**2,
        FamilyName.TORUS: n * st_1**2 + n * s_1**2,
        FamilyName.TORUS_BAR: 2 * n * st_1 * s_1,
        FamilyName.RAS: n * st_1**2 - n * s_1**2,
    }
    return Poly2.from_expr(expressions[name])


def family(name: FamilyName, n: int) -> Fixture:
    """Return member ``n`` of a family.

    Raises:
        InvalidN: If ``n`` is not a positive integer.
    """
    spec = FamilySpec(FamilyName(name), n)
    built, rows = _BUILDERS[spec.name](spec.n)
    text = stored_codes().get((spec.name, spec.n), built)
    return Fixture(
        name=spec.name.value,
        n=spec.n,
        text=text,
        code=parse_gauss_code(text),
        labels={row.chord_id: row.label for row in rows},
        expected_j=0 if spec.name is FamilyName.RAS else 2 * spec.n,
        expected_q=_expected_q(spec.name, spec.n),
        expected_table=tuple(rows),
    )


def family_kn(n: int) -> Fixture:
    return family(FamilyName.KN, n)


def family_torus(n: int, barred: bool = False) -> Fixture:
    return family(FamilyName.TORUS_BAR if barred else FamilyName.TORUS, n)


def family_ras(n: int) -> Fixture:
    return family(FamilyName.RAS, n)


# -----------------------------------------------------------------------------
# examples
# -----------------------------------------------------------------------------

_EXAMPLES = {
    # region arc shift on a nontrivial diagram with J = 0 and Q = 0
    ExampleName.REGION_FIG11: ("O1+ U2- * O3+ U1+ O2- U3+", 0, Poly2.zero(), {}),
    # region arc shift number 1 below forbidden number 2
    ExampleName.STRICT_INEQ_FIG17: (
        "O1+ O2+ U1+ U2+ O3+ O4+ U3+ U4+ *",
        4,
        Poly2.from_expr(4 * (S * T - 1) * (S - 1)),
        {
            "forbidden_number": 2,
            "region_arcshift_upper": 1
        },
    ),
}


def example(name: ExampleName) -> Fixture:
    name = ExampleName(name)
    text, expected_j, expected_q, metadata = _EXAMPLES[name]
    code = parse_gauss_code(text)
    return Fixture(
        name=name.value,
        n=1,
        text=text,
        code=code,
        labels={chord_id: str(chord_id) for chord_id in code.chord_ids},
        expected_j=expected_j,
        expected_q=expected_q,
        expected_table=(),
        metadata=metadata,
    )


def examples() -> List[Fixture]:
    return [example(name) for name in ExampleName]
