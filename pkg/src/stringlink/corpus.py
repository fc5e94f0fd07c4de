"""Seeded random string link diagrams for property checks.

Linking-number-zero diagrams are stacks of conjugates b X b^-1 where b is a
random (not necessarily pure) braid and X is a Whitehead clasp, a knotted
strand or a commutator of pure braid generators, so lk = 0 holds by
construction.
"""

from __future__ import annotations

import random

from .diagram import (
    StringLinkDiagram,
    braid_generator_A,
    commutator,
    figure_eight_component,
    from_braid_word,
    inverse,
    place,
    stack,
    trefoil_component,
    trivial,
    twisted_hopf,
    whitehead,
)


def random_braid(m: int, length: int, rng: random.Random) -> StringLinkDiagram:
    """A random braid word; its permutation need not be trivial."""
    if m < 2:
        return trivial(m)
    word = [(rng.randint(1, m - 1), rng.choice((1, -1))) for _ in range(length)]
    return from_braid_word(m, word, pure=False)


def _conjugate(x: StringLinkDiagram, rng: random.Random, max_braid: int) -> StringLinkDiagram:
    b = random_braid(x.num_strands, rng.randint(0, max_braid), rng)
    return StringLinkDiagram(x.num_strands, b.events + x.events + inverse(b).events)


def _orient(x: StringLinkDiagram, rng: random.Random) -> StringLinkDiagram:
    return x if rng.random() < 0.5 else inverse(x)


def _random_A(m: int, rng: random.Random) -> StringLinkDiagram:
    i, j = sorted(rng.sample(range(1, m + 1), 2))
    return _orient(braid_generator_A(m, i, j), rng)


def lk0_block(m: int, rng: random.Random) -> StringLinkDiagram:
    """One linking-number-zero building block on m strands."""
    kinds = ["whitehead", "knot"] if m >= 2 else ["knot"]
    if m >= 3:
        kinds += ["commutator", "commutator"]
    kind = rng.choice(kinds)
    if kind == "whitehead":
        i = rng.randint(1, m - 1)
        return _orient(place(whitehead(2), m, (i, i + 1)), rng)
    if kind == "knot":
        k = rng.choice((figure_eight_component(), trefoil_component(1), trefoil_component(-1)))
        return _orient(place(k, m, (rng.randint(1, m),)), rng)
    return commutator(_random_A(m, rng), _random_A(m, rng))


def lk0_diagram(m: int, rng: random.Random, max_blocks: int = 3, max_braid: int = 3,
                max_crossings: int | None = None) -> StringLinkDiagram:
    """Random diagram with every pairwise linking number zero."""
    while True:
        d = trivial(m)
        for _ in range(rng.randint(1, max_blocks)):
            d = stack(d, _conjugate(lk0_block(m, rng), rng, max_braid))
        if max_crossings is None or d.num_crossings <= max_crossings:
            return d


def random_diagram(m: int, rng: random.Random, max_blocks: int = 3, max_braid: int = 3,
                   max_crossings: int | None = None) -> StringLinkDiagram:
    """Random diagram allowing nonzero linking numbers."""
    while True:
        d = trivial(m)
        for _ in range(rng.randint(1, max_blocks)):
            if m >= 2 and rng.random() < 0.4:
                x = _random_A(m, rng) if m > 2 else twisted_hopf(rng.choice((1, -1)))
            else:
                x = lk0_block(m, rng)
            d = stack(d, _conjugate(x, rng, max_braid))
        if max_crossings is None or d.num_crossings <= max_crossings:
            return d
