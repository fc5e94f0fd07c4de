"""
Executable checks of the splitting and non-splitting computations, plus the
randomized property suites behind them.

Every check returns a :class:`CheckResult` whose transcript lists the values
the verdict was based on; each value can be recomputed from the public API.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .corpus import lk0_diagram, random_diagram
from .diagram import (
    StringLinkDiagram,
    borromean,
    braid_generator_A,
    closure,
    commutator,
    figure_eight_component,
    inverse,
    stack,
    trivial,
    twisted_hopf,
    whitehead,
)
from .filtration import Level, classify_linking, classify_zero, verdict
from .invariants import (
    LinkingNumberError,
    arf,
    component_arfs,
    conway,
    linking_number,
    sato_levine,
    triple_linking,
)
from .magnus import milnor, report_indices


@dataclass
class CheckResult:
    name: str
    passed: bool
    transcript: list[tuple[str, object]] = field(default_factory=list)

    def add(self, label: str, value) -> None:
        self.transcript.append((label, value))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "transcript": [[label, _jsonable(v)] for label, v in self.transcript],
        }

    def text(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.name}"]
        lines += [f"    {label}: {_jsonable(v)}" for label, v in self.transcript]
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, int, str, float)) or v is None:
        return v
    return str(v)


TRIPLE_PERMS = list(itertools.permutations((1, 2, 3)))


def _triples(d: StringLinkDiagram, q: int) -> tuple[int, ...]:
    return tuple(milnor(d, t, q) for t in TRIPLE_PERMS)


def _default_fixtures() -> dict[str, StringLinkDiagram]:
    return {
        "whitehead": whitehead(2),
        "borromean": borromean(),
        "figure_eight": figure_eight_component(),
    }


# --------------------------------------------------------------------------
# Splitting and non-splitting checks

def check_nonsplitting_obstruction_3_1(m: int = 2, link: StringLinkDiagram | None = None,
                                       corpus: list[StringLinkDiagram] | None = None) -> CheckResult:
    """Whitehead class has order two in the quotient but odd Sato-Levine
    invariant, while every element of the form 2X has even Sato-Levine
    invariant, so no order-two lift with odd SL exists."""
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    w = link if link is not None else whitehead(m)
    res = CheckResult(f"nonsplitting_obstruction(m={w.num_strands})", False)
    lk = classify_linking(w)
    res.add("lk(W)", lk)
    ok = not any(lk)
    if ok:
        sl = sato_levine(w, 1, 2)
        ww = stack(w, w)
        sl2 = sato_levine(ww, 1, 2)
        zero = classify_zero(ww)
        res.add("sl(W)", sl)
        res.add("sl(W W)", sl2)
        res.add("2*sl(W)", 2 * sl)
        res.add("classify_zero(W W)", (zero.triple, zero.sl_mod2, zero.arf))
        ok = sl % 2 == 1 and sl2 == 2 * sl and zero.is_zero()
    corpus = corpus if corpus is not None else [lk0_diagram(2, random.Random(s), max_blocks=2) for s in range(4)]
    for n, x in enumerate(corpus):
        s1 = sato_levine(x, 1, 2)
        s2 = sato_levine(stack(x, x), 1, 2)
        res.add(f"corpus[{n}] sl(X), sl(X X)", (s1, s2))
        ok = ok and s2 == 2 * s1 and s2 % 2 == 0
    res.passed = ok
    return res


def check_commutator_4_2(j1: StringLinkDiagram, j2: StringLinkDiagram, n1: int, n2: int,
                         q: int | None = None) -> CheckResult:
    """[J T_n, J' T_n'] is 0-solvable: lk = 0, component Arf invariants vanish
    and its Sato-Levine invariant is even."""
    for j in (j1, j2):
        (lk,) = classify_linking(j)
        if lk:
            raise LinkingNumberError(1, 2, lk)
    p1 = stack(j1, twisted_hopf(n1))
    p2 = stack(j2, twisted_hopf(n2))
    c = commutator(p1, p2)
    res = CheckResult(f"commutator_zero_solvable(n={n1}, n'={n2})", False)
    sl_j1, sl_j2 = sato_levine(j1, 1, 2, q), sato_levine(j2, 1, 2, q)
    res.add("sl(J)", sl_j1)
    res.add("sl(J')", sl_j2)
    res.add("sl(J)+sl(J')+sl(J)+sl(J')", 2 * (sl_j1 + sl_j2))
    (lk,) = classify_linking(c)
    res.add("lk([P,P'])", lk)
    arfs = component_arfs(c)
    res.add("arf([P,P'])", arfs)
    ok = lk == 0 and not any(arfs)
    if lk == 0:
        sl = milnor(c, (1, 1, 2, 2), q)
        res.add("sl([P,P'])", sl)
        res.add("sl([P,P']) mod 2", sl % 2)
        level = verdict(c, q).level
        res.add("verdict([P,P'])", level.value)
        ok = ok and sl % 2 == 0 and level is Level.ZERO_SOLVABLE
    res.passed = ok
    return res


def check_nonsplitting_4_4(k12: StringLinkDiagram, k23: StringLinkDiagram, q: int = 3) -> CheckResult:
    """mu(123)[K12 A12, K23 A23] = mu(123)[A12, A23] = 1, with the vanishing
    identities for the cross terms."""
    for k in (k12, k23):
        if k.num_strands != 3:
            raise ValueError(f"expected 3-strand diagrams, got {k.num_strands}")
        for (i, j), v in zip(((1, 2), (1, 3), (2, 3)), classify_linking(k)):
            if v:
                raise LinkingNumberError(i, j, v)
    a12, a23 = braid_generator_A(3, 1, 2), braid_generator_A(3, 2, 3)
    l12, l23 = stack(k12, a12), stack(k23, a23)
    res = CheckResult("nonsplitting_triple", False)
    target = milnor(commutator(a12, a23), (1, 2, 3), q)
    value = milnor(commutator(l12, l23), (1, 2, 3), q)
    res.add("mu123([A12,A23])", target)
    res.add("mu123([L12,L23])", value)
    zero_kk = _triples(commutator(k12, k23), q)
    zero_ka = _triples(commutator(k12, a23), q)
    zero_ak = _triples(commutator(a12, k23), q)
    res.add("mu(xyz)([K12,K23])", zero_kk)
    res.add("mu(xyz)([K12,A23])", zero_ka)
    res.add("mu(xyz)([A12,K23])", zero_ak)
    res.passed = target == 1 and value == 1 and not any(zero_kk + zero_ka + zero_ak)
    return res


def check_reference_values(fixtures: Mapping[str, StringLinkDiagram] | None = None) -> CheckResult:
    fx = {**_default_fixtures(), **(fixtures or {})}
    res = CheckResult("reference_values", False)
    sl = sato_levine(fx["whitehead"], 1, 2)
    mu = triple_linking(fx["borromean"], 1, 2, 3)
    a = arf(closure(fx["figure_eight"]))
    res.add("sl(whitehead) (expected 1)", sl)
    res.add("mu123(borromean) (expected 1)", mu)
    res.add("arf(figure eight) (expected 1)", a)
    res.passed = (sl, mu, a) == (1, 1, 1)
    return res


# --------------------------------------------------------------------------
# Property suites

def _suite(name: str, diagrams, prop: Callable[[StringLinkDiagram], tuple[bool, object]]) -> CheckResult:
    res = CheckResult(name, True)
    count = 0
    for n, d in enumerate(diagrams):
        ok, info = prop(d)
        count += 1
        if not ok:
            res.passed = False
            res.add(f"counterexample {n}", info)
            for x in d if isinstance(d, tuple) else (d,):
                res.add(f"counterexample {n} diagram", " ; ".join(map(str, x.events)))
    res.add("cases", count)
    return res


def low_order_values(d: StringLinkDiagram, q: int = 4) -> dict[tuple[int, ...], int]:
    """Every supported mu-bar of length <= 4."""
    return {i: milnor(d, i, q) for i in report_indices(d.num_strands)}


def suite_additivity(pairs, q: int = 4) -> CheckResult:
    def prop(pair):
        a, b = pair
        m = a.num_strands
        idx = [i for i in report_indices(m) if len(i) > 2]
        s = stack(a, b)
        bad = [(i, milnor(s, i, q), milnor(a, i, q), milnor(b, i, q)) for i in idx
               if milnor(s, i, q) != milnor(a, i, q) + milnor(b, i, q)]
        return not bad, bad

    return _suite("additivity", pairs, prop)


def suite_inverse(diagrams, q: int = 4) -> CheckResult:
    def prop(d):
        inv = inverse(d)
        bad = [(t, milnor(inv, t, q), milnor(d, t, q)) for t in report_indices(d.num_strands)
               if len(t) > 2 and milnor(inv, t, q) != -milnor(d, t, q)]
        return not bad, bad

    return _suite("inverse_negation", diagrams, prop)


def suite_conjugation(pairs, q: int = 4) -> CheckResult:
    def prop(pair):
        a, b = pair
        c = stack(b, a, inverse(b))
        bad = [(t, milnor(c, t, q), milnor(a, t, q)) for t in report_indices(a.num_strands)
               if len(t) == 3 and milnor(c, t, q) != milnor(a, t, q)]
        return not bad, bad

    return _suite("conjugation_invariance", pairs, prop)


def suite_truncation(diagrams, q: int = 4) -> CheckResult:
    def prop(d):
        low, high = low_order_values(d, q), low_order_values(d, q + 1)
        bad = [(i, low[i], high[i]) for i in low if low[i] != high[i]]
        return not bad, bad

    return _suite(f"truncation_stability(q={q} vs {q + 1})", diagrams, prop)


def suite_stack_inverse(diagrams, q: int = 4) -> CheckResult:
    def prop(d):
        vals = low_order_values(stack(d, inverse(d)), q)
        bad = {k: v for k, v in vals.items() if v}
        return not bad, bad

    return _suite("stack_with_inverse_vanishes", diagrams, prop)


def suite_linking_oracle(diagrams) -> CheckResult:
    def prop(d):
        m = d.num_strands
        bad = [((i, j), linking_number(d, i, j), milnor(d, (i, j), 2))
               for i in range(1, m + 1) for j in range(1, m + 1)
               if i != j and linking_number(d, i, j) != milnor(d, (i, j), 2)]
        return not bad, bad

    return _suite("linking_number_oracle", diagrams, prop)


def sato_levine_conway_sign(reference: StringLinkDiagram | None = None) -> int:
    """Global sign s with mu(1122) = s * a3(closure), fixed by the Whitehead link."""
    w = reference if reference is not None else whitehead(2)
    return milnor(w, (1, 1, 2, 2), 4) * conway(closure(w), max_degree=3).coefficient(3)


def suite_sato_levine_oracle(diagrams, reference: StringLinkDiagram | None = None) -> CheckResult:
    sign = sato_levine_conway_sign(reference)

    def prop(d):
        sl = milnor(d, (1, 1, 2, 2), 4)
        a3 = conway(closure(d), max_degree=3).coefficient(3)
        return sl == sign * a3, (sl, a3)

    res = _suite("sato_levine_conway_oracle", diagrams, prop)
    res.transcript.insert(0, ("sign (mu1122 / a3 on Whitehead)", sign))
    return res


def suite_conway_confluence(diagrams, seed: int, tries: int = 3, max_degree: int = 4) -> CheckResult:
    """Randomized skein choices give the same Conway coefficients up to max_degree."""

    def prop(d):
        closed = closure(d)
        ref = conway(closed, max_degree)
        got = [conway(closed, max_degree, random.Random(seed * 1000 + t)) for t in range(tries)]
        return all(g == ref for g in got), (str(ref), [str(g) for g in got])

    return _suite("conway_confluence", diagrams, prop)


# --------------------------------------------------------------------------

def run_all(seed: int = 0, samples: int = 12,
            fixtures: Mapping[str, StringLinkDiagram] | None = None) -> list[CheckResult]:
    """All checks with a random corpus drawn from ``seed``; deterministic per seed.

    ``fixtures`` overrides the reference diagrams (whitehead, borromean,
    figure_eight), for fault injection.
    """
    fx = {**_default_fixtures(), **(fixtures or {})}
    rng = random.Random(seed)
    w = fx["whitehead"]
    results = [check_reference_values(fx)]
    lk0_2 = [lk0_diagram(2, rng, max_blocks=2, max_crossings=30) for _ in range(samples)]
    results.append(check_nonsplitting_obstruction_3_1(2, w, corpus=lk0_2[:4]))
    results.append(check_nonsplitting_obstruction_3_1(3))
    for _ in range(3):
        j1, j2 = rng.choice(lk0_2), rng.choice(lk0_2 + [trivial(2), w])
        results.append(check_commutator_4_2(j1, j2, rng.randint(-3, 3), rng.randint(-3, 3), q=4))
    lk0_3 = [lk0_diagram(3, rng, max_blocks=2, max_braid=2) for _ in range(samples)]
    for k in range(3):
        results.append(check_nonsplitting_4_4(lk0_3[k], lk0_3[-1 - k]))
    gen_2 = [random_diagram(2, rng, max_blocks=2) for _ in range(samples)]
    gen_3 = [random_diagram(3, rng, max_blocks=2, max_braid=2) for _ in range(samples)]
    results.append(suite_additivity(list(zip(lk0_3, lk0_3[1:] + lk0_3[:1]))))
    results.append(suite_additivity(list(zip(lk0_2, lk0_2[1:] + lk0_2[:1]))))
    results.append(suite_inverse(lk0_3))
    results.append(suite_conjugation(list(zip(lk0_3, gen_3))))
    results.append(suite_truncation(gen_3[: max(1, samples // 2)]))
    results.append(suite_stack_inverse(gen_3))
    results.append(suite_linking_oracle(gen_2 + gen_3))
    results.append(suite_sato_levine_oracle(lk0_2, reference=w))
    results.append(suite_conway_confluence(gen_2[: max(1, samples // 3)], seed))
    return results
