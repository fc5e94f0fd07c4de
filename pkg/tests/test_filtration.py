import random

import pytest

from stringlink.corpus import lk0_diagram, random_diagram
from stringlink.diagram import (
    DiagramError,
    borromean,
    braid_generator_A,
    figure_eight_component,
    inverse,
    place,
    stack,
    trivial,
    twisted_hopf,
    whitehead,
)
from stringlink.filtration import (
    ClassificationVector,
    Level,
    TwoComponentClass,
    classify_full_2comp,
    classify_linking,
    classify_zero,
    pairs,
    triples,
    verdict,
)
from stringlink.invariants import LinkingNumberError


def test_orderings_are_lexicographic():
    assert pairs(3) == [(1, 2), (1, 3), (2, 3)]
    assert triples(4) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_classify_linking_examples():
    assert classify_linking(trivial(3)) == (0, 0, 0)
    assert classify_linking(braid_generator_A(3, 1, 3)) == (0, 1, 0)
    assert classify_linking(twisted_hopf(-2)) == (-2,)


def test_classify_zero_examples():
    w = classify_zero(whitehead(2))
    assert (w.triple, w.sl_mod2, w.arf) == ((), (1,), (0, 0))
    assert classify_zero(stack(whitehead(2), whitehead(2))).is_zero()
    b = classify_zero(borromean())
    assert (b.triple, b.sl_mod2, b.arf) == ((1,), (0, 0, 0), (0, 0, 0))
    k = classify_zero(place(figure_eight_component(), 3, (2,)))
    assert k.arf == (0, 1, 0)


def test_classify_zero_requires_unlinked():
    with pytest.raises(LinkingNumberError) as exc:
        classify_zero(braid_generator_A(3, 1, 3))
    assert exc.value.pair == (1, 3)


def test_classify_full_examples():
    assert classify_full_2comp(trivial(2)).as_tuple() == (0, 0, 0, 0)
    w = classify_full_2comp(whitehead(2))
    assert w.as_tuple() == (0, 0, 1, 0)
    assert w.order() == 2
    t = classify_full_2comp(twisted_hopf(1))
    assert t.as_tuple() == (0, 0, 0, 1)
    assert t.order() is None
    assert str(t) == "(0,0,0,1) in Z₂³ ⊕ Z"
    with pytest.raises(DiagramError):
        classify_full_2comp(trivial(3))


def test_two_component_group_law():
    a = TwoComponentClass(1, 0, 1, 3)
    b = TwoComponentClass(1, 1, 1, -1)
    assert (a + b).as_tuple() == (0, 1, 0, 2)
    assert (a + (-a)).is_zero()
    assert a.times(2).as_tuple() == (0, 0, 0, 6)
    assert TwoComponentClass(0, 0, 0, 0).order() == 1


def test_classification_vector_group_law():
    v = ClassificationVector((0,), (2,), (1,), (1, 0))
    assert (v + v) == ClassificationVector((0,), (4,), (0,), (0, 0))
    assert (v + (-v)).is_zero()


def test_order_two_realization():
    w = whitehead(2)
    assert not classify_full_2comp(w).is_zero()
    assert classify_full_2comp(stack(w, w)).is_zero()


def test_twist_multiples():
    for n in range(-5, 6):
        assert classify_full_2comp(twisted_hopf(n)).as_tuple() == (0, 0, 0, n)


def test_homomorphisms_on_random_pairs():
    rng = random.Random(21)
    for _ in range(25):
        a, b = random_diagram(3, rng, max_blocks=2), random_diagram(3, rng, max_blocks=2)
        assert classify_linking(stack(a, b)) == tuple(x + y for x, y in zip(classify_linking(a), classify_linking(b)))
        a2, b2 = random_diagram(2, rng, max_blocks=2), random_diagram(2, rng, max_blocks=2)
        assert classify_full_2comp(stack(a2, b2), 4) == classify_full_2comp(a2, 4) + classify_full_2comp(b2, 4)
        x, y = lk0_diagram(3, rng, max_blocks=2), lk0_diagram(3, rng, max_blocks=2)
        assert classify_zero(stack(x, y), 4) == classify_zero(x, 4) + classify_zero(y, 4)


def test_classify_zero_of_inverse():
    rng = random.Random(22)
    for _ in range(15):
        d = lk0_diagram(3, rng, max_blocks=2)
        assert classify_zero(inverse(d), 4) == -classify_zero(d, 4)


def test_verdict_examples():
    assert verdict(trivial(3)).level is Level.ZERO_SOLVABLE
    w = verdict(whitehead(2))
    assert w.level is Level.LINKING_TRIVIAL_NOT_0_SOLVABLE
    assert w.obstruction_to_half == (1,)
    assert w.not_half_solvable
    assert w.text() == "LinkingTrivialNot0Solvable; not 0.5-solvable (SL = 1)"
    ww = verdict(stack(whitehead(2), whitehead(2)))
    assert ww.level is Level.ZERO_SOLVABLE
    assert ww.obstruction_to_half == (2,)
    assert ww.text() == "ZeroSolvable; not 0.5-solvable (SL = 2)"


def test_verdict_linked_and_inconclusive():
    v = verdict(twisted_hopf(1))
    assert v.level is Level.NOT_LINKING_TRIVIAL
    assert v.obstruction_to_half == ()
    b = verdict(borromean())
    assert b.level is Level.LINKING_TRIVIAL_NOT_0_SOLVABLE
    assert b.obstruction_to_half == (0, 0, 0)
    assert "undetermined" in b.text()
    assert "SL(12) = 1" in verdict(whitehead(3)).text()


def test_verdict_level_matches_vector():
    rng = random.Random(23)
    for _ in range(20):
        d = random_diagram(2, rng, max_blocks=2) if rng.random() < 0.5 else lk0_diagram(3, rng, max_blocks=2)
        v = verdict(d, 4)
        if any(classify_linking(d)):
            assert v.level is Level.NOT_LINKING_TRIVIAL
        else:
            assert (v.level is Level.ZERO_SOLVABLE) == classify_zero(d, 4).is_zero()
