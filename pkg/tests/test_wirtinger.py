import random
from pathlib import Path

import pytest

from stringlink.corpus import random_diagram
from stringlink.diagram import (
    DiagramError,
    StringLinkDiagram,
    borromean,
    cap,
    trivial,
    twisted_hopf,
    whitehead,
)
from stringlink.invariants import linking_number
from stringlink.wirtinger import FreeWord, abelianized_longitude, longitude, presentation

GOLDEN = Path(__file__).parent / "golden"


def test_free_word_basics():
    w = FreeWord.gen(1) * FreeWord.gen(2) * FreeWord.gen(2, -1) * FreeWord.gen(1, -1)
    assert len(w) == 4
    assert w.reduced() == FreeWord()
    assert w.inverse().inverse() == w
    assert str(FreeWord()) == "1"
    assert str(FreeWord.gen(3, -2)) == "g3^-1 g3^-1"
    assert FreeWord.gen(1, 2).abelianize() == {1: 2}
    assert FreeWord(((1, 1), (1, -1))).abelianize() == {}


def test_free_word_list_coerced():
    assert FreeWord([(0, 1)]).letters == ((0, 1),)


def test_generator_and_relation_counts():
    p = presentation(trivial(2))
    assert (len(p.generators), len(p.relations)) == (2, 0)
    p = presentation(twisted_hopf(1))
    assert (len(p.generators), len(p.relations)) == (4, 2)
    p = presentation(borromean())
    assert (len(p.generators), len(p.relations)) == (11, 8)


def test_relations_match_crossings():
    for d in (whitehead(3), borromean(), twisted_hopf(-2)):
        assert len(presentation(d).relations) == d.num_crossings


def test_base_meridians_are_bottom_arcs():
    p = presentation(borromean())
    assert [(g.strand, g.order) for g in p.base_meridians] == [(1, 0), (2, 0), (3, 0)]


def test_arcs_numbered_along_strand():
    p = presentation(whitehead(2))
    for s in (1, 2):
        orders = [g.order for g in p.generators if g.strand == s]
        assert orders == list(range(len(orders)))


def test_relation_word_is_trivial_form():
    r = presentation(twisted_hopf(1)).relations[0]
    o = FreeWord.gen(r.over.id, r.sign)
    expected = (o * FreeWord.gen(r.under_in.id) * o.inverse() * FreeWord.gen(r.under_out.id, -1)).reduced()
    assert r.as_word() == expected


def test_longitude_examples():
    assert longitude(trivial(2), 1) == FreeWord()
    assert abelianized_longitude(twisted_hopf(1), 1) == (0, 1)
    assert abelianized_longitude(whitehead(2), 1) == (0, 0)
    assert abelianized_longitude(whitehead(2), 2) == (0, 0)


def test_longitude_index_range():
    with pytest.raises(DiagramError):
        longitude(trivial(2), 3)
    with pytest.raises(DiagramError):
        longitude(trivial(2), 0)


def test_invalid_diagram_rejected():
    with pytest.raises(DiagramError):
        presentation(StringLinkDiagram(2, (cap(1),)))


def test_golden_dumps():
    assert presentation(twisted_hopf(1)).dump() == (GOLDEN / "hopf.wirtinger").read_text()
    assert presentation(whitehead(2)).dump() == (GOLDEN / "whitehead.wirtinger").read_text()


def test_deterministic():
    d = borromean()
    a = presentation(d)
    presentation.cache_clear()
    b = presentation(StringLinkDiagram(3, tuple(d.events)))
    assert a == b
    assert a.dump() == b.dump()


def test_abelianized_longitude_is_linking_vector():
    rng = random.Random(7)
    for _ in range(30):
        d = random_diagram(rng.choice((2, 3, 4)), rng)
        m = d.num_strands
        for i in range(1, m + 1):
            expected = tuple(0 if j == i else linking_number(d, i, j) for j in range(1, m + 1))
            assert abelianized_longitude(d, i) == expected
