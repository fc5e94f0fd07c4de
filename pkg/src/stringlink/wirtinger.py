"""
Wirtinger presentations of string link complements.

Arcs run between consecutive underpasses; arc 0 of each strand is its bottom
arc, whose generator serves as the strand's base meridian.

Words compose right to left, like functions: in ``gh`` the loop ``h`` is
traversed first. Passing under an arc ``o`` at a crossing of sign ``s``
takes the arc generator ``a`` to

    next = o^s a o^(-s)

and the longitude records ``o^s`` at each underpass from the bottom of the
strand to the top, then ``base^(-writhe)``; each later loop is written to the
left of the earlier ones.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass

from .diagram import DiagramError, StringLinkDiagram, require_valid


@dataclass(frozen=True)
class FreeWord:
    """A word in generator ids; ``letters`` holds (generator, +1/-1) pairs."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def gen(cls, g: int, power: int = 1) -> FreeWord:
        sign = 1 if power >= 0 else -1
        return cls(((g, sign),) * abs(power))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def reduced(self) -> FreeWord:
        out: list[tuple[int, int]] = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return FreeWord(tuple(out))

    def abelianize(self) -> Counter:
        c: Counter = Counter()
        for g, e in self.letters:
            c[g] += e
        return Counter({g: v for g, v in c.items() if v})

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"g{g}" if e > 0 else f"g{g}^-1" for g, e in self.letters)


@dataclass(frozen=True)
class ArcGenerator:
    id: int
    strand: int  # 1-based
    order: int   # 0 is the bottom arc


@dataclass(frozen=True)
class CrossingRelation:
    """under_out = over^sign under_in over^(-sign)."""

    under_in: ArcGenerator
    under_out: ArcGenerator
    over: ArcGenerator
    sign: int

    def as_word(self) -> FreeWord:
        """The relator, trivial in the group."""
        o = FreeWord.gen(self.over.id, self.sign)
        return (o * FreeWord.gen(self.under_in.id) * o.inverse() * FreeWord.gen(self.under_out.id, -1)).reduced()


@dataclass(frozen=True)
class WirtingerPresentation:
    num_strands: int
    generators: tuple[ArcGenerator, ...]
    relations: tuple[CrossingRelation, ...]
    base_meridians: tuple[ArcGenerator, ...]
    longitudes: tuple[FreeWord, ...]
    writhes: tuple[int, ...]
    # underpasses[s]: (over arc, sign) met by strand s+1 from the bottom;
    # the arc after the r-th underpass is arc r+1.
    underpasses: tuple[tuple[tuple[ArcGenerator, int], ...], ...]

    def strand_of(self, gen_id: int) -> int:
        return self.generators[gen_id].strand

    def dump(self) -> str:
        lines = [f"gen {g.id} strand {g.strand} arc {g.order}" for g in self.generators]
        lines += [
            f"rel {r.under_out.id} = {r.over.id}^{r.sign} {r.under_in.id} {r.over.id}^{-r.sign}"
            for r in self.relations
        ]
        lines += [f"lng {i + 1} {w}" for i, w in enumerate(self.longitudes)]
        return "\n".join(lines) + "\n"


@functools.lru_cache(maxsize=4096)
def presentation(d: StringLinkDiagram) -> WirtingerPresentation:
    """Wirtinger presentation of a valid string link diagram."""
    t = require_valid(d)
    m = d.num_strands

    # arc index of each strand at each of its crossing visits
    arc_at: dict[tuple[int, int], int] = {}  # (event, strand) -> order along strand
    counts = []
    for s, visits in enumerate(t.components):
        order = 0
        for v in visits:
            if v.over:
                arc_at[(v.event, s)] = order
            else:
                order += 1
        counts.append(order + 1)
    gens = []
    first_id = []
    for s in range(m):
        first_id.append(len(gens))
        gens.extend(ArcGenerator(len(gens), s + 1, r) for r in range(counts[s]))

    def arc(s: int, r: int) -> ArcGenerator:
        return gens[first_id[s] + r]

    relations = []
    under_lists = []
    longitudes = []
    writhes = []
    for s, visits in enumerate(t.components):
        order = 0
        word = []
        passes = []
        writhe = 0
        for v in visits:
            if v.over:
                continue
            c = t.crossings[v.event]
            over = arc(c.over, arc_at[(v.event, c.over)])
            relations.append(CrossingRelation(arc(s, order), arc(s, order + 1), over, c.sign))
            passes.append((over, c.sign))
            word.append((over.id, c.sign))
            if c.over == s:
                writhe += c.sign
            order += 1
        base = arc(s, 0)
        longitudes.append(FreeWord.gen(base.id, -writhe) * FreeWord(tuple(reversed(word))))
        writhes.append(writhe)
        under_lists.append(tuple(passes))
    return WirtingerPresentation(
        num_strands=m,
        generators=tuple(gens),
        relations=tuple(relations),
        base_meridians=tuple(arc(s, 0) for s in range(m)),
        longitudes=tuple(longitudes),
        writhes=tuple(writhes),
        underpasses=tuple(under_lists),
    )


def longitude(d: StringLinkDiagram, i: int) -> FreeWord:
    """Zero-framed longitude of strand ``i`` (1-based) as a word in arc generators."""
    if not 1 <= i <= d.num_strands:
        raise DiagramError(f"strand index {i} out of range 1..{d.num_strands}")
    return presentation(d).longitudes[i - 1]


def abelianized_longitude(d: StringLinkDiagram, i: int) -> tuple[int, ...]:
    """Exponent sum of the longitude of strand i in each strand's generators."""
    p = presentation(d)
    sums = [0] * d.num_strands
    for g, e in longitude(d, i).letters:
        sums[p.strand_of(g) - 1] += e
    return tuple(sums)
