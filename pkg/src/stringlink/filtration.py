"""
Images of string links in the low-order quotients of the solvable filtration.

Pairs i < j and triples x < y < z are ordered lexicographically. Order 0
information is the linking numbers, the triple linking numbers, the
Sato-Levine invariants mod 2 and the component Arf invariants; a link is
treated as 0-solvable exactly when all of these vanish. Sato-Levine values
are also reported over Z as an obstruction to 0.5-solvability: a nonzero
value rules it out, zero says nothing.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .diagram import DiagramError, StringLinkDiagram, require_valid, stack, twisted_hopf
from .invariants import LinkingNumberError, component_arfs, linking_matrix
from .magnus import milnor


def pairs(m: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(1, m + 1), 2))


def triples(m: int) -> list[tuple[int, int, int]]:
    return list(itertools.combinations(range(1, m + 1), 3))


@dataclass(frozen=True)
class ClassificationVector:
    lk: tuple[int, ...]
    triple: tuple[int, ...]
    sl_mod2: tuple[int, ...]
    arf: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.lk + self.triple + self.sl_mod2 + self.arf)

    def __add__(self, other: ClassificationVector) -> ClassificationVector:
        return ClassificationVector(
            tuple(a + b for a, b in zip(self.lk, other.lk)),
            tuple(a + b for a, b in zip(self.triple, other.triple)),
            tuple((a + b) % 2 for a, b in zip(self.sl_mod2, other.sl_mod2)),
            tuple((a + b) % 2 for a, b in zip(self.arf, other.arf)),
        )

    def __neg__(self) -> ClassificationVector:
        return ClassificationVector(tuple(-a for a in self.lk), tuple(-a for a in self.triple), self.sl_mod2, self.arf)


@dataclass(frozen=True)
class TwoComponentClass:
    """Element (arf1, arf2, sl mod 2, lk) of Z2 + Z2 + Z2 + Z."""

    arf1: int
    arf2: int
    sl: int
    lk: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.arf1, self.arf2, self.sl, self.lk)

    def __add__(self, other: TwoComponentClass) -> TwoComponentClass:
        return TwoComponentClass(
            (self.arf1 + other.arf1) % 2, (self.arf2 + other.arf2) % 2, (self.sl + other.sl) % 2, self.lk + other.lk
        )

    def __neg__(self) -> TwoComponentClass:
        return TwoComponentClass(self.arf1, self.arf2, self.sl, -self.lk)

    def times(self, n: int) -> TwoComponentClass:
        return TwoComponentClass(
            self.arf1 * n % 2, self.arf2 * n % 2, self.sl * n % 2, self.lk * n
        )

    def is_zero(self) -> bool:
        return not any(self.as_tuple())

    def order(self) -> int | None:
        """1, 2, or None for infinite order."""
        if self.lk:
            return None
        return 1 if self.is_zero() else 2

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.as_tuple())) + ") in Z₂³ ⊕ Z"


class Level(enum.Enum):
    NOT_LINKING_TRIVIAL = "NotLinkingTrivial"
    LINKING_TRIVIAL_NOT_0_SOLVABLE = "LinkingTrivialNot0Solvable"
    ZERO_SOLVABLE = "ZeroSolvable"


@dataclass(frozen=True)
class SolvabilityVerdict:
    level: Level
    # integer Sato-Levine values for the pairs i < j; empty when lk != 0
    obstruction_to_half: tuple[int, ...] = ()
    num_strands: int = 2

    @property
    def not_half_solvable(self) -> bool:
        return any(self.obstruction_to_half)

    def text(self) -> str:
        head = self.level.value
        if self.level is Level.NOT_LINKING_TRIVIAL:
            return f"{head}; 0.5-obstruction not applicable (lk != 0)"
        labels = ["SL"] if self.num_strands == 2 else [f"SL({i}{j})" for i, j in pairs(self.num_strands)]
        shown = [f"{lab} = {v}" for lab, v in zip(labels, self.obstruction_to_half) if v]
        if shown:
            return f"{head}; not 0.5-solvable ({', '.join(shown)})"
        return f"{head}; 0.5-solvability undetermined (all SL = 0)"

    def __str__(self) -> str:
        return self.text()


def classify_linking(d: StringLinkDiagram) -> tuple[int, ...]:
    """lk(K_i, K_j) for i < j."""
    return tuple(linking_matrix(d).values())


def _sl_values(d: StringLinkDiagram, q: int | None) -> tuple[int, ...]:
    return tuple(milnor(d, (i, i, j, j), q) for i, j in pairs(d.num_strands))


def _require_lk0(d: StringLinkDiagram) -> tuple[int, ...]:
    lk = classify_linking(d)
    for (i, j), v in zip(pairs(d.num_strands), lk):
        if v:
            raise LinkingNumberError(i, j, v)
    return lk


def classify_zero(d: StringLinkDiagram, q: int | None = None) -> ClassificationVector:
    """Image in the quotient of linking-trivial links by 0-solvable ones."""
    lk = _require_lk0(d)
    m = d.num_strands
    triple = tuple(milnor(d, t, q) for t in triples(m))
    sl = tuple(v % 2 for v in _sl_values(d, q))
    return ClassificationVector(lk, triple, sl, component_arfs(d))


def classify_full_2comp(d: StringLinkDiagram, q: int | None = None) -> TwoComponentClass:
    """Image of a 2-strand link in Z2 + Z2 + Z2 + Z: (arf1, arf2, sl mod 2, lk).

    When lk != 0 the Sato-Levine coordinate is read off d T_{-lk}, which has
    lk = 0; the twist strands are unknotted, so the Arf coordinates are
    those of d itself.
    """
    if d.num_strands != 2:
        raise DiagramError(f"classify_full_2comp needs 2 strands, got {d.num_strands}")
    require_valid(d)
    (lk,) = classify_linking(d)
    k = stack(d, twisted_hopf(-lk)) if lk else d
    a1, a2 = component_arfs(d)
    return TwoComponentClass(a1, a2, milnor(k, (1, 1, 2, 2), q) % 2, lk)


def verdict(d: StringLinkDiagram, q: int | None = None) -> SolvabilityVerdict:
    m = d.num_strands
    if any(classify_linking(d)):
        return SolvabilityVerdict(Level.NOT_LINKING_TRIVIAL, (), m)
    v = classify_zero(d, q)
    sl = _sl_values(d, q)
    level = Level.ZERO_SOLVABLE if v.is_zero() else Level.LINKING_TRIVIAL_NOT_0_SOLVABLE
    return SolvabilityVerdict(level, sl, m)
