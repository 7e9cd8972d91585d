"""Bounded unknotting searches and certificates.

States are canonical codes after free simplification. A transition is one
counted move (an arc shift or a forbidden move) followed by :func:`reduce`.
The search deepens one counted move at a time and keeps the frontier of the
previous depth, so the first trivial code found uses the least number of
counted moves. Every state is expanded at most once.
"""
import random
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Deque, Dict, FrozenSet, List, Optional, Tuple

from .exceptions import BoundInconsistency, BudgetExhausted
from .gauss import (BAR, CanonicalCode, Passage, Role, TrivialKind, TwistedGaussCode, canonical_form, is_trivial,
                    parse_gauss_code)
from .invariants import BarParity, bounds
from .log import log
from .moves import (ARC_SHIFT_MOVES, FORBIDDEN_MOVES, SHRINKING_MOVES, MoveInstance, MoveKind, apply,
                    apply_unchecked, enumerate_moves)

_REARRANGING_MOVES = frozenset({MoveKind.R3, MoveKind.BAR_SLIDE})
_GROWING_FREE_MOVES = frozenset({MoveKind.R1_ADD, MoveKind.R2_ADD, MoveKind.BAR_CANCEL})


class CountedSet(Enum):
    ARCSHIFT = "arcshift"
    FORBIDDEN = "forbidden"

    @property
    def kinds(self) -> FrozenSet[MoveKind]:
        return ARC_SHIFT_MOVES if self is CountedSet.ARCSHIFT else FORBIDDEN_MOVES


class SearchStatus(Enum):
    FOUND = "found"
    NONE = "none"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchConfig:
    """Limits and options of one search.

    The search itself is deterministic and does not draw random numbers.
    ``seed`` is the seed of the :func:`random_code` draws made under this
    configuration.
    """

    counted_set: CountedSet = CountedSet.ARCSHIFT
    max_counted: int = 2
    free_budget: int = 0
    node_cap: int = 200000
    allow_add_moves: bool = False
    seed: int = 0

    def __post_init__(self):
        assert isinstance(self.counted_set, CountedSet)
        assert isinstance(self.max_counted, int) and self.max_counted >= 0
        assert isinstance(self.free_budget, int) and self.free_budget >= 0
        assert isinstance(self.node_cap, int) and self.node_cap >= 1
        assert isinstance(self.allow_add_moves, bool)
        assert isinstance(self.seed, int)


@dataclass(frozen=True)
class TraceStep:
    move: str
    result: CanonicalCode


@dataclass(frozen=True)
class SearchTrace:
    start: CanonicalCode
    steps: Tuple[TraceStep, ...]
    counted_used: int
    terminal: TrivialKind

    def to_json(self) -> Dict[str, object]:
        return {
            "start": self.start.text,
            "steps": [{
                "move": step.move,
                "result": step.result.text
            } for step in self.steps],
            "countedUsed": self.counted_used,
            "terminal": self.terminal.value,
        }


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    trace: Optional[SearchTrace]
    nodes: int
    exhausted: bool

    def to_json(self) -> Dict[str, object]:
        return {
            "status": self.status.value,
            "trace": self.trace.to_json() if self.trace else None,
            "budget": {
                "nodes": self.nodes,
                "exhausted": self.exhausted
            },
        }


@dataclass(frozen=True)
class BoundPair:
    lower: int
    upper: Optional[int]
    lower_source: str
    trace: Optional[SearchTrace] = None

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.upper == self.lower

    def to_json(self) -> Dict[str, object]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "lowerSource": self.lower_source,
            "trace": self.trace.to_json()["steps"] if self.trace else [],
        }


@dataclass(frozen=True)
class Certificate:
    odd_writhe: int
    arcshift: BoundPair
    forbidden: BoundPair
    region_arcshift: BoundPair
    nodes: int
    exhausted: bool
    outcomes: Dict[str, SearchOutcome] = field(default_factory=dict, compare=False)

    def to_json(self) -> Dict[str, object]:
        return {
            "J": self.odd_writhe,
            "arcshift": self.arcshift.to_json(),
            "forbidden": self.forbidden.to_json(),
            "regionArcshift": self.region_arcshift.to_json(),
            "budget": {
                "nodes": self.nodes,
                "exhausted": self.exhausted
            },
        }


# -----------------------------------------------------------------------------
# simplification
# -----------------------------------------------------------------------------


def _shrink(code: TwistedGaussCode) -> TwistedGaussCode:
    while True:
        moves = enumerate_moves(code, SHRINKING_MOVES)
        if not moves:
            return code
        code = apply_unchecked(code, moves[0])


def reduce(code: TwistedGaussCode, free_budget: int = 0, allow_add_moves: bool = False) -> TwistedGaussCode:
    """Simplify a code with free moves and return it in its canonical frame.

    Strictly shrinking moves are applied greedily. Then up to ``free_budget``
    codes reachable by non-shrinking free moves are explored breadth first;
    whenever one of them shrinks further, exploration restarts from the
    smaller code. Ties keep the greedy result. The result only depends on the
    canonical form of ``code``.
    """
    best, best_text = canonical_form(_shrink(canonical_form(code)[0]))
    kinds = _REARRANGING_MOVES | (_GROWING_FREE_MOVES if allow_add_moves else frozenset())
    budget = free_budget
    while budget > 0 and best.passage_count:
        queue: Deque[TwistedGaussCode] = deque([best])
        seen = {best_text.text}
        improved = False
        while queue and budget > 0:
            current = queue.popleft()
            budget -= 1
            for move in enumerate_moves(current, kinds, insertions=allow_add_moves):
                candidate, candidate_text = canonical_form(_shrink(apply_unchecked(current, move)))
                if candidate_text.text in seen:
                    continue
                seen.add(candidate_text.text)
                if len(candidate) < len(best):
                    log.debug("Free rewrite %s exposed a shrink to %d entries", move, len(candidate))
                    best, best_text = candidate, candidate_text
                    improved = True
                    break
                queue.append(candidate)
            if improved:
                break
        if not improved:
            break
    return best


# -----------------------------------------------------------------------------
# search
# -----------------------------------------------------------------------------


def _trace_back(parents: Dict[str, Tuple[Optional[str], Optional[str]]], start: CanonicalCode, goal: str,
                terminal: TrivialKind, bar_counts: Dict[str, int]) -> SearchTrace:
    steps: List[TraceStep] = []
    text = goal
    while True:
        parent, move = parents[text]
        if parent is None:
            break
        steps.append(TraceStep(move, CanonicalCode(text, bar_counts[text])))
        text = parent
    steps.reverse()
    return SearchTrace(start=start, steps=tuple(steps), counted_used=len(steps), terminal=terminal)


def run_search(code: TwistedGaussCode, config: SearchConfig) -> SearchOutcome:
    """Search for a shortest sequence of counted moves to a trivial code.

    The result tells apart a proven absence below ``max_counted`` (status
    ``none``) from a search stopped by ``node_cap`` (status ``unknown``).
    """
    kinds = config.counted_set.kinds
    reduced_cache: Dict[str, TwistedGaussCode] = {}

    def simplify(candidate: TwistedGaussCode) -> TwistedGaussCode:
        key = canonical_form(candidate)[1].text
        if key not in reduced_cache:
            reduced_cache[key] = reduce(candidate, config.free_budget, config.allow_add_moves)
        return reduced_cache[key]

    start_code = reduce(code, config.free_budget, config.allow_add_moves)
    start = canonical_form(start_code)[1]
    parents: Dict[str, Tuple[Optional[str], Optional[str]]] = {start.text: (None, None)}
    bar_counts = {start.text: start.bar_count}

    terminal = is_trivial(start_code)
    if terminal is not None:
        return SearchOutcome(SearchStatus.FOUND, SearchTrace(start, (), 0, terminal), 0, False)

    nodes = 0
    frontier = [(start_code, start.text)]
    for depth in range(1, config.max_counted + 1):
        next_frontier = []
        for state, state_text in frontier:
            for move in enumerate_moves(state, kinds):
                if nodes >= config.node_cap:
                    log.vv("Node cap %d reached at depth %d", config.node_cap, depth)
                    return SearchOutcome(SearchStatus.UNKNOWN, None, nodes, True)
                nodes += 1
                child = simplify(apply_unchecked(state, move))
                child_text = canonical_form(child)[1]
                if child_text.text in parents:
                    continue
                parents[child_text.text] = (state_text, str(move))
                bar_counts[child_text.text] = child_text.bar_count
                terminal = is_trivial(child)
                if terminal is not None:
                    log.vv("Trivial code reached with %d counted moves after %d nodes", depth, nodes)
                    trace = _trace_back(parents, start, child_text.text, terminal, bar_counts)
                    return SearchOutcome(SearchStatus.FOUND, trace, nodes, False)
                next_frontier.append((child, child_text.text))
        log.vv("Depth %d explored: %d new states, %d nodes so far", depth, len(next_frontier), nodes)
        if not next_frontier:
            break
        frontier = next_frontier
    return SearchOutcome(SearchStatus.NONE, None, nodes, False)


def unknotting_search(code: TwistedGaussCode, config: SearchConfig) -> Optional[SearchTrace]:
    """Return a shortest unknotting trace or ``None`` if none exists within ``max_counted``.

    Raises:
        BudgetExhausted: If the node cap stopped the search before it could decide.
    """
    outcome = run_search(code, config)
    if outcome.status is SearchStatus.UNKNOWN:
        raise BudgetExhausted(f"Search stopped after {outcome.nodes} nodes without a result", outcome.nodes)
    return outcome.trace


def replay(trace: SearchTrace, free_budget: int = 0, allow_add_moves: bool = False) -> TwistedGaussCode:
    """Re-apply the moves of a trace and return the final reduced code.

    Each move is checked against the state it is applied to, so a trace that
    does not fit raises ``StaleMove`` or ``NotApplicable``.
    """
    state = canonical_form(parse_gauss_code(trace.start.text))[0]
    for step in trace.steps:
        state = reduce(apply(state, MoveInstance.parse(step.move)), free_budget, allow_add_moves)
    return state


# -----------------------------------------------------------------------------
# certificates
# -----------------------------------------------------------------------------


def _upper(outcome: SearchOutcome) -> Optional[int]:
    return outcome.trace.counted_used if outcome.trace else None


def certify(code: TwistedGaussCode, config: SearchConfig) -> Certificate:
    """Bound the arc shift, forbidden and region arc shift numbers of a code.

    Lower bounds come from the odd writhe, upper bounds from searches with
    each counted move set.

    Raises:
        BoundInconsistency: If a search undercuts a proven lower bound.
    """
    limits = bounds(code)
    arcshift = run_search(code, replace(config, counted_set=CountedSet.ARCSHIFT))
    forbidden = run_search(code, replace(config, counted_set=CountedSet.FORBIDDEN))

    trivial = is_trivial(reduce(code, config.free_budget, config.allow_add_moves)) is not None
    forbidden_source = "ceil(|J|/4)" if limits.bar_parity is BarParity.EVEN else "ceil(|J|/2)"
    pairs = {
        "arcshift": BoundPair(limits.arcshift_lower, _upper(arcshift), "ceil(|J|/2)", arcshift.trace),
        "forbidden": BoundPair(limits.forbidden_lower, _upper(forbidden), forbidden_source, forbidden.trace),
        "regionArcshift": BoundPair(0 if trivial else 1, _upper(forbidden), "trivial" if trivial else "nontrivial",
                                    forbidden.trace),
    }
    for name, pair in pairs.items():
        if pair.upper is not None and pair.upper < pair.lower:
            raise BoundInconsistency(f"The {name} upper bound {pair.upper} is below the lower bound {pair.lower}")

    log.v("Certified bounds: arc shift %s..%s, forbidden %s..%s", pairs["arcshift"].lower, pairs["arcshift"].upper,
          pairs["forbidden"].lower, pairs["forbidden"].upper)
    return Certificate(
        odd_writhe=limits.odd_writhe,
        arcshift=pairs["arcshift"],
        forbidden=pairs["forbidden"],
        region_arcshift=pairs["regionArcshift"],
        nodes=arcshift.nodes + forbidden.nodes,
        exhausted=arcshift.exhausted or forbidden.exhausted,
        outcomes={"arcshift": arcshift, "forbidden": forbidden},
    )


# -----------------------------------------------------------------------------
# random codes
# -----------------------------------------------------------------------------


def random_code(n_chords: int, n_bars: int, seed: int) -> TwistedGaussCode:
    """Draw a code with the given numbers of chords and bars.

    The passages form a uniformly shuffled pairing. Each chord then gets a
    random over passage and sign, and bars land in uniformly chosen gaps.
    Chord ids are numbered by first appearance. Every draw is one ``random()``
    call, taken in that order.
    """
    assert n_chords >= 0 and n_bars >= 0
    rng = random.Random(seed)
    slots = sorted((chord for chord in range(n_chords) for _ in range(2)), key=lambda _: rng.random())
    first_role = {chord: Role.OVER if rng.random() < 0.5 else Role.UNDER for chord in range(n_chords)}
    chord_signs = {chord: 1 if rng.random() < 0.5 else -1 for chord in range(n_chords)}

    relabel: Dict[int, int] = {}
    entries = []
    for chord in slots:
        if chord in relabel:
            entries.append(Passage(relabel[chord], first_role[chord].other))
        else:
            relabel[chord] = len(relabel) + 1
            entries.append(Passage(relabel[chord], first_role[chord]))
    for _ in range(n_bars):
        entries.insert(int(rng.random() * (len(entries) + 1)), BAR)
    return TwistedGaussCode(entries, {relabel[chord]: sign for chord, sign in chord_signs.items()})
