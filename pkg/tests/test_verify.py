import json

import pytest

from stringlink.diagram import borromean, inverse, trivial, twisted_hopf, whitehead
from stringlink.invariants import LinkingNumberError, sato_levine
from stringlink.magnus import milnor
from stringlink.verify import (
    CheckResult,
    check_commutator_4_2,
    check_nonsplitting_4_4,
    check_nonsplitting_obstruction_3_1,
    check_reference_values,
    run_all,
    sato_levine_conway_sign,
)


def values(res: CheckResult) -> dict:
    return dict(res.transcript)


def test_obstruction_m2():
    r = check_nonsplitting_obstruction_3_1(2)
    assert r.passed
    v = values(r)
    assert v["sl(W)"] == 1 and v["2*sl(W)"] == 2 and v["sl(W W)"] == 2


def test_obstruction_m3():
    assert check_nonsplitting_obstruction_3_1(3).passed


def test_obstruction_mirrored():
    r = check_nonsplitting_obstruction_3_1(2, link=inverse(whitehead(2)))
    assert r.passed
    assert values(r)["sl(W)"] == -1


def test_obstruction_fails_on_even_link():
    from stringlink.diagram import stack

    w = whitehead(2)
    assert not check_nonsplitting_obstruction_3_1(2, link=stack(w, w)).passed


def test_obstruction_range():
    with pytest.raises(ValueError):
        check_nonsplitting_obstruction_3_1(1)


def test_commutator_examples():
    w = whitehead(2)
    r = check_commutator_4_2(w, w, 1, -2)
    assert r.passed
    v = values(r)
    assert v["sl(J)+sl(J')+sl(J)+sl(J')"] == 4
    assert v["sl([P,P'])"] % 2 == 0
    assert v["verdict([P,P'])"] == "ZeroSolvable"
    r = check_commutator_4_2(trivial(2), trivial(2), 3, -1)
    assert r.passed and values(r)["sl([P,P'])"] == 0
    r = check_commutator_4_2(w, trivial(2), 0, 3)
    assert r.passed and values(r)["sl(J)+sl(J')+sl(J)+sl(J')"] == 2


def test_commutator_exact_value_is_zero():
    # additivity, inverse negation and conjugation invariance cancel the
    # four Sato-Levine contributions exactly, not only mod 2
    w = whitehead(2)
    for j2, n1, n2 in [(w, 1, -2), (trivial(2), 0, 3), (inverse(w), 2, 2)]:
        assert values(check_commutator_4_2(w, j2, n1, n2))["sl([P,P'])"] == 0


def test_commutator_precondition():
    with pytest.raises(LinkingNumberError):
        check_commutator_4_2(twisted_hopf(1), trivial(2), 0, 0)


def test_triple_examples():
    r = check_nonsplitting_4_4(trivial(3), trivial(3))
    assert r.passed and values(r)["mu123([L12,L23])"] == 1
    assert check_nonsplitting_4_4(whitehead(3), trivial(3)).passed
    r = check_nonsplitting_4_4(borromean(), inverse(borromean()))
    assert r.passed
    assert values(r)["mu(xyz)([K12,K23])"] == (0,) * 6


def test_triple_precondition():
    from stringlink.diagram import braid_generator_A

    with pytest.raises(LinkingNumberError):
        check_nonsplitting_4_4(braid_generator_A(3, 1, 2), trivial(3))
    with pytest.raises(ValueError):
        check_nonsplitting_4_4(trivial(2), trivial(3))


def test_reference_values():
    r = check_reference_values()
    assert r.passed
    assert [v for _, v in r.transcript] == [1, 1, 1]


def test_transcript_values_are_recomputable():
    r = check_nonsplitting_obstruction_3_1(2)
    assert values(r)["sl(W)"] == sato_levine(whitehead(2), 1, 2)
    r = check_nonsplitting_4_4(trivial(3), trivial(3))
    assert values(r)["mu123([A12,A23])"] == milnor(borromean(), (1, 2, 3))


def test_sign_fixture():
    assert sato_levine_conway_sign() == -1


def test_run_all_seeds():
    for seed in (0, 1):
        results = run_all(seed, samples=6)
        assert all(r.passed for r in results), [r.text() for r in results if not r.passed]


def test_run_all_deterministic():
    a = [r.as_dict() for r in run_all(3, samples=4)]
    b = [r.as_dict() for r in run_all(3, samples=4)]
    assert a == b
    json.dumps(a)


def test_fault_injection_flags_flipped_value():
    results = run_all(0, samples=4, fixtures={"whitehead": inverse(whitehead(2))})
    failed = [r for r in results if not r.passed]
    assert failed
    assert ("sl(whitehead) (expected 1)", -1) in failed[0].transcript


def test_fault_injection_borromean():
    results = run_all(0, samples=4, fixtures={"borromean": inverse(borromean())})
    failed = [r for r in results if not r.passed]
    assert [r.name for r in failed] == ["reference_values"]
    assert ("mu123(borromean) (expected 1)", -1) in failed[0].transcript


def test_check_result_rendering():
    r = CheckResult("demo", False, [("x", (1, 2))])
    assert r.as_dict() == {"name": "demo", "passed": False, "transcript": [["x", [1, 2]]]}
    assert r.text().splitlines() == ["[FAIL] demo", "    x: [1, 2]"]
