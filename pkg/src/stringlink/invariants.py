"""
Classical invariants computed without the Magnus engine.

Linking numbers come from signed crossing counts. The Conway polynomial is
computed by the skein relation

    nabla(L+) - nabla(L-) = z nabla(L0)

switching crossings until the diagram is descending (a trivial link). The
engine works on crossing data only: every crossing records its incoming and
outgoing over/under edges, so a crossing change swaps roles and an oriented
smoothing reconnects edges. No planar layout is needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .diagram import (
    ClosedDiagram,
    DiagramError,
    StringLinkDiagram,
    closure,
    require_valid,
    restrict,
)
from .magnus import milnor


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in z; ``coefficients`` maps degree to a nonzero value."""

    coefficients: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> IntPolynomial:
        return cls(tuple(sorted((d, c) for d, c in coeffs.items() if c)))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls.from_dict({0: c})

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)

    def coefficient(self, d: int) -> int:
        return self.as_dict().get(d, 0)

    @property
    def degree(self) -> int:
        return self.coefficients[-1][0] if self.coefficients else -1

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        out = self.as_dict()
        for d, c in other.coefficients:
            out[d] = out.get(d, 0) + c
        return IntPolynomial.from_dict(out)

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple((d, -c) for d, c in self.coefficients))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def shift(self, k: int, scale: int = 1) -> IntPolynomial:
        """scale * z^k * self"""
        return IntPolynomial.from_dict({d + k: c * scale for d, c in self.coefficients})

    def truncate(self, max_degree: int) -> IntPolynomial:
        return IntPolynomial(tuple((d, c) for d, c in self.coefficients if d <= max_degree))

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for d, c in self.coefficients:
            body = str(abs(c)) if d == 0 else f"{abs(c)}*z" + (f"^{d}" if d > 1 else "")
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


ZERO = IntPolynomial()
ONE = IntPolynomial.constant(1)


# --------------------------------------------------------------------------
# Crossing data

@dataclass(frozen=True)
class _Crossing:
    over_in: int
    over_out: int
    under_in: int
    under_out: int
    sign: int

    def switched(self) -> _Crossing:
        return _Crossing(self.under_in, self.under_out, self.over_in, self.over_out, -self.sign)


@dataclass(frozen=True)
class _State:
    crossings: tuple[_Crossing, ...]
    loops: int  # components without crossings


def _state(d: ClosedDiagram) -> _State:
    t = require_valid(d)
    slots: dict[int, dict[str, int]] = {}
    loops = 0
    edge = 0
    for visits in t.components:
        if not visits:
            loops += 1
            continue
        first = edge
        n = len(visits)
        for j, v in enumerate(visits):
            e_in = first + (j - 1) % n
            e_out = first + j
            s = slots.setdefault(v.event, {})
            if v.over:
                s["oi"], s["oo"] = e_in, e_out
            else:
                s["ui"], s["uo"] = e_in, e_out
        edge += n
    crossings = tuple(
        _Crossing(s["oi"], s["oo"], s["ui"], s["uo"], t.crossings[k].sign) for k, s in sorted(slots.items())
    )
    return _State(crossings, loops)


def _cycles(crossings: tuple[_Crossing, ...]) -> list[list[tuple[int, bool]]]:
    """Components as cyclic lists of (crossing index, passes over)."""
    head: dict[int, tuple[int, bool]] = {}
    for k, c in enumerate(crossings):
        head[c.over_in] = (k, True)
        head[c.under_in] = (k, False)
    seen = set()
    out = []
    for start in sorted(head):
        if start in seen:
            continue
        cyc = []
        e = start
        while e not in seen:
            seen.add(e)
            k, over = head[e]
            cyc.append((k, over, e))
            c = crossings[k]
            e = c.over_out if over else c.under_out
        out.append(cyc)
    return out


def _smooth(st: _State, k: int) -> _State:
    """Oriented smoothing at crossing k."""
    c = st.crossings[k]
    rename: dict[int, int] = {}

    def find(x: int) -> int:
        while x in rename:
            x = rename[x]
        return x

    loops = 0
    for a, b in ((c.over_in, c.under_out), (c.under_in, c.over_out)):
        a, b = find(a), find(b)
        if a == b:
            loops += 1
        else:
            rename[b] = a
    rest = tuple(
        _Crossing(find(x.over_in), find(x.over_out), find(x.under_in), find(x.under_out), x.sign)
        for i, x in enumerate(st.crossings)
        if i != k
    )
    return _State(rest, st.loops + loops)


def _lk_pair(st: _State, cycles) -> int:
    comp = {}
    for ci, cyc in enumerate(cycles):
        for _, _, e in cyc:
            comp[e] = ci
    total = sum(c.sign for c in st.crossings if comp[c.over_in] != comp[c.under_in])
    return total // 2


class _Engine:
    def __init__(self, rng: random.Random | None):
        self.rng = rng
        self.memo: dict = {}

    def run(self, st: _State, budget: int | None) -> IntPolynomial:
        key = (st, budget)
        if self.rng is None and key in self.memo:
            return self.memo[key]
        res = self._compute(st, budget)
        if budget is not None:
            res = res.truncate(budget)
        if self.rng is None:
            self.memo[key] = res
        return res

    def _compute(self, st: _State, budget: int | None) -> IntPolynomial:
        cycles = _cycles(st.crossings)
        comps = len(cycles) + st.loops
        if budget is not None:
            # nabla of a c-component link is divisible by z^(c-1)
            if comps - 1 > budget:
                return ZERO
            if budget == 0:
                return ONE if comps == 1 else ZERO
            if budget == 1:
                if comps == 1:
                    return ONE
                if st.loops:
                    return ZERO
                return IntPolynomial.from_dict({1: _lk_pair(st, cycles)})
        if not st.crossings:
            return ONE if comps == 1 else ZERO

        # Fix a descending template (component order, base points), then
        # switch bad crossings one at a time; switching leaves the template
        # valid, smoothing spawns a smaller diagram.
        order = list(range(len(cycles)))
        starts = [0] * len(cycles)
        if self.rng is not None:
            self.rng.shuffle(order)
            starts = [self.rng.randrange(len(cyc)) for cyc in cycles]
        seen = set()
        bad = []
        for ci in order:
            cyc = cycles[ci]
            n = len(cyc)
            for j in range(n):
                k, over, _ = cyc[(starts[ci] + j) % n]
                if k not in seen:
                    seen.add(k)
                    if not over:
                        bad.append(k)
        if self.rng is not None:
            self.rng.shuffle(bad)
        # the fully switched diagram is descending: an unlink
        total = ONE if comps == 1 else ZERO
        sub = None if budget is None else budget - 1
        crossings = list(st.crossings)
        for k in bad:
            c = crossings[k]
            smoothed = _smooth(_State(tuple(crossings), st.loops), k)
            total = total + self.run(smoothed, sub).shift(1, c.sign)
            crossings[k] = c.switched()
        return total


def conway(d: ClosedDiagram, max_degree: int | None = None, rng: random.Random | None = None) -> IntPolynomial:
    """Conway polynomial of a closed link diagram.

    With ``max_degree`` only coefficients up to that degree are computed. With
    ``rng`` the crossing, component order and base points are chosen at
    random at every step (used to test that the result does not depend on
    those choices).
    """
    if not isinstance(d, ClosedDiagram):
        raise DiagramError(f"conway needs a closed diagram, got {type(d).__name__}")
    if max_degree is not None and max_degree < 0:
        raise ValueError(f"max_degree must be non-negative, got {max_degree}")
    return _Engine(rng).run(_state(d), max_degree)


# --------------------------------------------------------------------------
# Linking numbers, components, Arf

def _check_strand(d: StringLinkDiagram, i: int):
    if not 1 <= i <= d.num_strands:
        raise DiagramError(f"strand index {i} out of range 1..{d.num_strands}")


def linking_number(d: StringLinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between strands i and j."""
    _check_strand(d, i)
    _check_strand(d, j)
    if i == j:
        raise DiagramError(f"linking number needs two different strands, got {i} and {j}")
    t = require_valid(d)
    pair = {i - 1, j - 1}
    total = sum(c.sign for c in t.crossings.values() if {c.over, c.under} == pair)
    return total // 2


def linking_matrix(d: StringLinkDiagram) -> dict[tuple[int, int], int]:
    """lk for every pair i < j, in lexicographic order."""
    t = require_valid(d)
    m = d.num_strands
    out = {(i, j): 0 for i in range(1, m + 1) for j in range(i + 1, m + 1)}
    for c in t.crossings.values():
        if c.over != c.under:
            out[tuple(sorted((c.over + 1, c.under + 1)))] += c.sign
    return {k: v // 2 for k, v in out.items()}


def component_knot(d: StringLinkDiagram, i: int) -> ClosedDiagram:
    """Closure of strand i with every other strand deleted."""
    _check_strand(d, i)
    return closure(restrict(d, [i]))


def arf(d: ClosedDiagram) -> int:
    """Arf invariant of a knot: the z^2 coefficient of its Conway polynomial mod 2."""
    if not isinstance(d, ClosedDiagram):
        raise DiagramError(f"arf needs a closed diagram, got {type(d).__name__}")
    if d.num_components != 1:
        raise DiagramError(f"arf needs a knot, got {d.num_components} components")
    return conway(d, max_degree=2).coefficient(2) % 2


def component_arfs(d: StringLinkDiagram) -> tuple[int, ...]:
    return tuple(arf(component_knot(d, i)) for i in range(1, d.num_strands + 1))


class LinkingNumberError(DiagramError):
    """A higher invariant was requested where a pairwise linking number is nonzero."""

    def __init__(self, i: int, j: int, value: int):
        super().__init__(f"lk({i},{j}) = {value} is nonzero; the invariant is defined only when it vanishes")
        self.pair = (i, j)
        self.value = value


def _require_unlinked(d: StringLinkDiagram, strands):
    strands = sorted(set(strands))
    for a in strands:
        _check_strand(d, a)
    for x in range(len(strands)):
        for y in range(x + 1, len(strands)):
            v = linking_number(d, strands[x], strands[y])
            if v:
                raise LinkingNumberError(strands[x], strands[y], v)


def sato_levine(d: StringLinkDiagram, i: int, j: int, q: int | None = None) -> int:
    """mu(iijj), checked to be well defined (lk(i, j) = 0)."""
    if i == j:
        raise DiagramError(f"sato_levine needs two different strands, got {i} and {j}")
    _require_unlinked(d, (i, j))
    return milnor(d, (i, i, j, j), q)


def triple_linking(d: StringLinkDiagram, i: int, j: int, k: int, q: int | None = None) -> int:
    """mu(ijk), checked to be well defined (pairwise lk = 0)."""
    if len({i, j, k}) != 3:
        raise DiagramError(f"triple_linking needs three different strands, got {i}, {j}, {k}")
    _require_unlinked(d, (i, j, k))
    return milnor(d, (i, j, k), q)
