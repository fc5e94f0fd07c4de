"""
String link diagrams encoded as Morse tangle words.

A diagram is read bottom to top as a sequence of events acting on a row of
slots (the points where the diagram meets a horizontal line). Slots are
numbered from 1 at the left.

    x i +    the strand in slot i crosses to slot i+1 passing OVER the strand
             moving from slot i+1 to slot i
    x i -    same movement, but the strand leaving slot i passes UNDER
    cup i    a local minimum; two new slots appear at positions i, i+1
    cap i    a local maximum; slots i and i+1 are joined and disappear

With both strands pointing up, ``x i +`` is a right-handed (positive)
crossing, so the braid generator sigma_i is ``x i +`` and the Hopf string
link sigma_1^2 has linking number +1. Strands of a string link are oriented
upward at the boundary; closed components of a closed diagram are oriented
so that the left branch of their first cup points up.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Raised for malformed diagrams or arguments out of range."""


class EventKind(enum.Enum):
    POSITIVE = "PositiveCrossing"
    NEGATIVE = "NegativeCrossing"
    CUP = "Cup"
    CAP = "Cap"

    @property
    def is_crossing(self) -> bool:
        return self in (EventKind.POSITIVE, EventKind.NEGATIVE)


@dataclass(frozen=True)
class MorseEvent:
    kind: EventKind
    position: int

    def __str__(self) -> str:
        if self.kind is EventKind.POSITIVE:
            return f"x {self.position} +"
        if self.kind is EventKind.NEGATIVE:
            return f"x {self.position} -"
        return f"{self.kind.value.lower()} {self.position}"

    @property
    def label(self) -> int:
        """+1 / -1 for crossings, 0 for cups and caps."""
        return {EventKind.POSITIVE: 1, EventKind.NEGATIVE: -1}.get(self.kind, 0)

    def mirrored(self) -> MorseEvent:
        """The event seen in the diagram reflected top to bottom."""
        swap = {
            EventKind.POSITIVE: EventKind.NEGATIVE,
            EventKind.NEGATIVE: EventKind.POSITIVE,
            EventKind.CUP: EventKind.CAP,
            EventKind.CAP: EventKind.CUP,
        }
        return MorseEvent(swap[self.kind], self.position)


def crossing(position: int, sign: int) -> MorseEvent:
    if sign not in (1, -1):
        raise DiagramError(f"crossing sign must be +1 or -1, got {sign}")
    return MorseEvent(EventKind.POSITIVE if sign > 0 else EventKind.NEGATIVE, position)


def cup(position: int) -> MorseEvent:
    return MorseEvent(EventKind.CUP, position)


def cap(position: int) -> MorseEvent:
    return MorseEvent(EventKind.CAP, position)


@dataclass(frozen=True)
class StringLinkDiagram:
    """An m-strand Morse tangle word. Construction does not validate; see
    :func:`validate`."""

    num_strands: int
    events: tuple[MorseEvent, ...] = ()

    def __post_init__(self):
        if not isinstance(self.events, tuple):
            object.__setattr__(self, "events", tuple(self.events))
        if self.num_strands < 1:
            raise DiagramError(f"a string link needs at least one strand, got {self.num_strands}")

    @property
    def num_crossings(self) -> int:
        return sum(1 for e in self.events if e.kind.is_crossing)

    def __str__(self) -> str:
        return format_diagram(self)


@dataclass(frozen=True)
class ClosedDiagram:
    """A Morse word with empty top and bottom boundary (a link diagram)."""

    events: tuple[MorseEvent, ...] = ()

    def __post_init__(self):
        if not isinstance(self.events, tuple):
            object.__setattr__(self, "events", tuple(self.events))

    num_strands = 0

    @property
    def num_crossings(self) -> int:
        return sum(1 for e in self.events if e.kind.is_crossing)

    @property
    def num_components(self) -> int:
        return len(trace(self).components)

    def __str__(self) -> str:
        return format_diagram(self)


Diagram = StringLinkDiagram | ClosedDiagram


# --------------------------------------------------------------------------
# Tracing

@dataclass(frozen=True)
class Violation:
    event_index: int | None
    kind: str
    message: str

    def __str__(self) -> str:
        where = "end of diagram" if self.event_index is None else f"event {self.event_index}"
        return f"{self.kind} at {where}: {self.message}"


@dataclass(frozen=True)
class CrossingVisit:
    """One passage of a component through a crossing."""

    event: int
    over: bool
    direction: int  # +1 moving up, -1 moving down


@dataclass(frozen=True)
class TracedCrossing:
    event: int
    over: int  # component index of the over strand
    under: int
    sign: int  # geometric (oriented) crossing sign


@dataclass
class Trace:
    """Result of walking every component of a diagram.

    ``levels[k]`` lists the component index occupying each slot just below
    event ``k`` (``levels[len(events)]`` is the top boundary).
    ``segments`` maps each piece to (component, direction); this is the
    strand labelling of the diagram.
    """

    components: list[list[CrossingVisit]] = field(default_factory=list)
    crossings: dict[int, TracedCrossing] = field(default_factory=dict)
    levels: list[list[int]] = field(default_factory=list)
    segments: dict[int, tuple[int, int]] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)


# Port layout at a crossing event: pieces entering from below at BL, BR and
# leaving upward at TL, TR. Strand A runs BL-TR, strand B runs BR-TL.
_UP_THROUGH = {"BL": "TR", "BR": "TL"}
_DOWN_THROUGH = {"TR": "BL", "TL": "BR"}


def _build_pieces(events: Sequence[MorseEvent], start: int):
    """Connect the event sequence into pieces; each piece is monotone in height."""
    lower: list[tuple] = []
    upper: list[tuple | None] = []
    ports: dict[tuple[int, str], int] = {}
    levels_pieces: list[list[int]] = []
    violations: list[Violation] = []

    def new_piece(node) -> int:
        lower.append(node)
        upper.append(None)
        return len(lower) - 1

    slots = [new_piece(("bottom", i)) for i in range(start)]
    for k, ev in enumerate(events):
        levels_pieces.append(list(slots))
        p = ev.position
        n = len(slots)
        if p < 1:
            violations.append(Violation(k, "slot-count", f"position {p} < 1 in '{ev}'"))
            return lower, upper, ports, levels_pieces, slots, violations
        if ev.kind is EventKind.CUP:
            if p > n + 1:
                violations.append(Violation(k, "slot-count", f"'{ev}' inserts past slot {n + 1} ({n} slots)"))
                return lower, upper, ports, levels_pieces, slots, violations
            left, right = new_piece((k, "L")), new_piece((k, "R"))
            ports[(k, "L")], ports[(k, "R")] = left, right
            slots[p - 1:p - 1] = [left, right]
            continue
        if p + 1 > n:
            violations.append(Violation(k, "slot-count", f"'{ev}' needs slots {p},{p + 1} but only {n} exist"))
            return lower, upper, ports, levels_pieces, slots, violations
        a, b = slots[p - 1], slots[p]
        if ev.kind is EventKind.CAP:
            upper[a], upper[b] = (k, "L"), (k, "R")
            ports[(k, "L")], ports[(k, "R")] = a, b
            del slots[p - 1:p + 1]
        else:
            upper[a], upper[b] = (k, "BL"), (k, "BR")
            ports[(k, "BL")], ports[(k, "BR")] = a, b
            tl, tr = new_piece((k, "TL")), new_piece((k, "TR"))
            ports[(k, "TL")], ports[(k, "TR")] = tl, tr
            slots[p - 1], slots[p] = tl, tr
    levels_pieces.append(list(slots))
    return lower, upper, ports, levels_pieces, slots, violations


def _walk(events, lower, upper, ports, piece: int, direction: int, comp: int, visited: dict):
    """Follow a component from ``piece``; returns (visits, end node)."""
    visits: list[CrossingVisit] = []
    start = (piece, direction)
    while True:
        visited[piece] = (comp, direction)
        node = upper[piece] if direction > 0 else lower[piece]
        if node is None or node[0] in ("bottom", "top"):
            return visits, node
        k, port = node
        ev = events[k]
        if ev.kind.is_crossing:
            on_a = port in ("BL", "TR")
            a_over = ev.kind is EventKind.POSITIVE
            visits.append(CrossingVisit(k, on_a == a_over, direction))
            nxt = ports[(k, _UP_THROUGH[port] if direction > 0 else _DOWN_THROUGH[port])]
        elif ev.kind is EventKind.CAP:
            nxt = ports[(k, "R" if port == "L" else "L")]
            direction = -1
        else:
            nxt = ports[(k, "R" if port == "L" else "L")]
            direction = 1
        if (nxt, direction) == start:
            return visits, None
        piece = nxt


@functools.lru_cache(maxsize=8192)
def trace(d: Diagram) -> Trace:
    """Walk every component of ``d`` and record crossings, labels and levels."""
    events = d.events
    m = d.num_strands
    lower, upper, ports, levels_pieces, top_slots, violations = _build_pieces(events, m)
    out = Trace(violations=violations)
    if violations:
        return out
    if len(top_slots) != m:
        out.violations.append(Violation(None, "slot-count", f"diagram ends with {len(top_slots)} slots, expected {m}"))
        return out
    for i, piece in enumerate(top_slots):
        upper[piece] = ("top", i)

    visited: dict[int, tuple[int, int]] = {}
    for i in range(m):
        visits, end = _walk(events, lower, upper, ports, i, 1, i, visited)
        out.components.append(visits)
        if end[0] == "bottom":
            out.violations.append(Violation(None, "turn-back", f"strand {i + 1} returns to bottom endpoint {end[1] + 1}"))
        elif end[1] != i:
            out.violations.append(
                Violation(None, "non-pure", f"strand {i + 1} ends at top endpoint {end[1] + 1}, permutation is not the identity")
            )
    for k, ev in enumerate(events):
        if ev.kind is EventKind.CUP and ports[(k, "L")] not in visited:
            visits, _ = _walk(events, lower, upper, ports, ports[(k, "L")], 1, len(out.components), visited)
            out.components.append(visits)
            if m > 0:
                out.violations.append(Violation(k, "closed-component", f"cup '{ev}' starts a closed component"))

    unvisited = [p for p in range(len(lower)) if p not in visited]
    if unvisited:
        out.violations.append(Violation(None, "turn-back", "an arc joins two top endpoints"))
        return out
    out.segments = dict(visited)
    out.levels = [[visited[p][0] for p in level] for level in levels_pieces]
    roles: dict[int, dict[bool, tuple[int, int]]] = {}
    for comp, visits in enumerate(out.components):
        for v in visits:
            roles.setdefault(v.event, {})[v.over] = (comp, v.direction)
    for k in sorted(roles):
        (oc, od), (uc, ud) = roles[k][True], roles[k][False]
        out.crossings[k] = TracedCrossing(k, oc, uc, events[k].label * od * ud)
    return out


def validate(d: Diagram) -> list[Violation]:
    """Every invariant violation of ``d``; empty when ``d`` is a valid string
    link (or, for a closed diagram, a valid link diagram)."""
    return list(trace(d).violations)


def require_valid(d: Diagram) -> Trace:
    t = trace(d)
    if t.violations:
        raise DiagramError("invalid diagram: " + "; ".join(str(v) for v in t.violations))
    return t


def strand_permutation(d: StringLinkDiagram) -> tuple[int, ...] | None:
    """Top endpoint reached from each bottom endpoint (1-based), or None when
    some strand turns back or slots are inconsistent."""
    events = d.events
    m = d.num_strands
    lower, upper, ports, _, top_slots, violations = _build_pieces(events, m)
    if violations or len(top_slots) != m:
        return None
    for i, piece in enumerate(top_slots):
        upper[piece] = ("top", i)
    perm = []
    for i in range(m):
        _, end = _walk(events, lower, upper, ports, i, 1, i, {})
        if end[0] != "top":
            return None
        perm.append(end[1] + 1)
    return tuple(perm)


# --------------------------------------------------------------------------
# Group operations

def _check_same(a: StringLinkDiagram, b: StringLinkDiagram):
    if a.num_strands != b.num_strands:
        raise DiagramError(f"strand-count mismatch: {a.num_strands} vs {b.num_strands}")


def stack(a: StringLinkDiagram, b: StringLinkDiagram, *more: StringLinkDiagram) -> StringLinkDiagram:
    """``a`` below ``b`` (below each of ``more``)."""
    events = list(a.events)
    for x in (b, *more):
        _check_same(a, x)
        events.extend(x.events)
    return StringLinkDiagram(a.num_strands, tuple(events))


def inverse(a: StringLinkDiagram) -> StringLinkDiagram:
    """Reflect top to bottom and reverse orientation."""
    return StringLinkDiagram(a.num_strands, tuple(e.mirrored() for e in reversed(a.events)))


def commutator(a: StringLinkDiagram, b: StringLinkDiagram) -> StringLinkDiagram:
    return stack(a, b, inverse(a), inverse(b))


def power(a: StringLinkDiagram, n: int) -> StringLinkDiagram:
    base = a if n >= 0 else inverse(a)
    return StringLinkDiagram(a.num_strands, base.events * abs(n))


def closure(a: StringLinkDiagram) -> ClosedDiagram:
    """Join top endpoint i to bottom endpoint i by arcs to the right.

    The result begins with m nested cups; cup i opens strand i, so closed
    component i is strand i and keeps its orientation.
    """
    m = a.num_strands
    events = [cup(k + 1) for k in range(m)]
    events.extend(a.events)
    events.extend(cap(k) for k in range(m, 0, -1))
    return ClosedDiagram(tuple(events))


def restrict(a: StringLinkDiagram, keep: Iterable[int]) -> StringLinkDiagram:
    """The sublink on the (1-based) strands in ``keep``, renumbered in order."""
    keep_set = {k - 1 for k in keep}
    if not keep_set or any(k < 0 or k >= a.num_strands for k in keep_set):
        raise DiagramError(f"strand indices {sorted(k + 1 for k in keep_set)} out of range 1..{a.num_strands}")
    t = require_valid(a)
    events = []
    for k, ev in enumerate(a.events):
        below = t.levels[k]
        if ev.kind is EventKind.CAP or ev.kind.is_crossing:
            comps = (below[ev.position - 1], below[ev.position])
        else:
            comps = (t.levels[k + 1][ev.position - 1],) * 2
        if ev.kind.is_crossing and (comps[0] in keep_set) != (comps[1] in keep_set):
            continue
        if comps[0] not in keep_set:
            continue
        shift = sum(1 for c in below[:ev.position - 1] if c not in keep_set)
        events.append(MorseEvent(ev.kind, ev.position - shift))
    return StringLinkDiagram(len(keep_set), tuple(events))


def place(a: StringLinkDiagram, m: int, strands: Sequence[int]) -> StringLinkDiagram:
    """Embed ``a`` into an m-strand diagram on the consecutive strands
    ``strands`` (e.g. (2, 3)); the other strands stay vertical."""
    strands = tuple(strands)
    if len(strands) != a.num_strands or list(strands) != list(range(strands[0], strands[0] + len(strands))):
        raise DiagramError(f"need {a.num_strands} consecutive strands, got {strands}")
    if strands[0] < 1 or strands[-1] > m:
        raise DiagramError(f"strands {strands} out of range 1..{m}")
    shift = strands[0] - 1
    return StringLinkDiagram(m, tuple(MorseEvent(e.kind, e.position + shift) for e in a.events))


# --------------------------------------------------------------------------
# Constructors

def trivial(m: int) -> StringLinkDiagram:
    return StringLinkDiagram(m, ())


def from_braid_word(m: int, word: Iterable[tuple[int, int]], pure: bool = True) -> StringLinkDiagram:
    """Diagram of a braid word; letters are (i, sign) for sigma_i^sign."""
    events = []
    for i, sign in word:
        if not 1 <= i <= m - 1:
            raise DiagramError(f"braid generator index {i} out of range 1..{m - 1}")
        events.append(crossing(i, sign))
    d = StringLinkDiagram(m, tuple(events))
    if pure:
        perm = strand_permutation(d)
        if perm != tuple(range(1, m + 1)):
            raise DiagramError(f"braid word is not pure: strand permutation {perm}")
    return d


def braid_generator_A(m: int, i: int, j: int) -> StringLinkDiagram:
    """Pure braid generator A_ij = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1."""
    if m < 2 or not 1 <= i < j <= m:
        raise DiagramError(f"braid_generator_A needs 1 <= i < j <= m, got m={m}, i={i}, j={j}")
    path = list(range(j - 1, i, -1))
    word = [(k, 1) for k in path] + [(i, 1), (i, 1)] + [(k, -1) for k in reversed(path)]
    return from_braid_word(m, word)


def twisted_hopf(n: int) -> StringLinkDiagram:
    """T_n: n full twists of two strands, linking number n."""
    sign = 1 if n >= 0 else -1
    return from_braid_word(2, [(1, sign)] * (2 * abs(n)))


# A two-strand Whitehead string link. Strand 1 runs straight up; strand 2
# turns back through a cup and cap on the left, clasping strand 1 twice
# (four crossings) with one self-crossing as the twist. Found by enumerating
# small Morse words and pinned by its invariants: lk = 0, mu(1122) = +1,
# both components unknotted, closure Conway polynomial -z^3.
WHITEHEAD_EVENTS: tuple[MorseEvent, ...] = (
    cup(1),
    crossing(2, 1),
    crossing(2, 1),
    crossing(3, -1),
    crossing(2, 1),
    crossing(3, -1),
    cap(1),
)


def whitehead(m: int = 2) -> StringLinkDiagram:
    """Whitehead string link on strands 1, 2 plus m - 2 trivial strands."""
    if m < 2:
        raise DiagramError(f"whitehead needs m >= 2, got {m}")
    return StringLinkDiagram(m, WHITEHEAD_EVENTS)


def borromean() -> StringLinkDiagram:
    """[A_12, A_23] on three strands."""
    return commutator(braid_generator_A(3, 1, 2), braid_generator_A(3, 2, 3))


def knot_from_braid(n: int, word: Iterable[tuple[int, int]]) -> StringLinkDiagram:
    """One-strand string knot whose closure is the closure of an n-braid.

    Strand 1 of the braid is cut open; strands 2..n are closed by nested
    cup/cap pairs on the right.
    """
    word = list(word)
    events = [cup(k) for k in range(2, n + 1)]
    for i, sign in word:
        if not 1 <= i <= n - 1:
            raise DiagramError(f"braid generator index {i} out of range 1..{n - 1}")
        events.append(crossing(i, sign))
    events.extend(cap(k) for k in range(n, 1, -1))
    d = StringLinkDiagram(1, tuple(events))
    bad = validate(d)
    if bad:
        raise DiagramError("braid closure is not a knot: " + "; ".join(map(str, bad)))
    return d


def figure_eight_component() -> StringLinkDiagram:
    """The figure eight knot 4_1 as a one-strand string knot."""
    return knot_from_braid(3, [(1, 1), (2, -1), (1, 1), (2, -1)])


def trefoil_component(sign: int = 1) -> StringLinkDiagram:
    return knot_from_braid(2, [(1, sign)] * 3)


# --------------------------------------------------------------------------
# Text format

def format_diagram(d: Diagram) -> str:
    lines = [f"strands {d.num_strands}"]
    lines.extend(str(e) for e in d.events)
    return "\n".join(lines) + "\n"


def parse_diagram(text: str) -> Diagram:
    """Parse the ``strands <m>`` + one-event-per-line format. ``strands 0``
    yields a closed diagram."""
    m = None
    events = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if m is None:
                if tok[0] != "strands" or len(tok) != 2:
                    raise DiagramError("expected header 'strands <m>'")
                m = int(tok[1])
                if m < 0:
                    raise DiagramError("strand count must be non-negative")
            elif tok[0] == "x" and len(tok) == 3 and tok[2] in "+-":
                events.append(crossing(int(tok[1]), 1 if tok[2] == "+" else -1))
            elif tok[0] in ("cup", "cap") and len(tok) == 2:
                events.append(MorseEvent(EventKind.CUP if tok[0] == "cup" else EventKind.CAP, int(tok[1])))
            else:
                raise DiagramError(f"unrecognised event '{line}'")
        except (ValueError, IndexError) as exc:
            raise DiagramError(f"line {lineno}: {exc}") from None
    if m is None:
        raise DiagramError("missing 'strands <m>' header")
    if m == 0:
        return ClosedDiagram(tuple(events))
    return StringLinkDiagram(m, tuple(events))
