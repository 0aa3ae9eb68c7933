"""Satisfiability: the periodic decider, bounded finite search,
certificates."""

import random

import pytest

from hslogic.checking import mc_periodic
from hslogic.models import FiniteDomain, PeriodicDomain
from hslogic.parser import parse_formula
from hslogic.sat import (
    Sat, Unknown, Unsat, UnsupportedFragmentError, check_certificate,
    later_somewhere, sat_bbll, sat_bounded_finite,
)
from hslogic.syntax import (
    A, B, iB, L, iL, And, Atom, Not, dia, metrics,
)

from .gen import rand_formula, rand_periodic_model

p = Atom("p")

UNSAT_SUITE = [
    "p & ~p",
    "(p -> q) & p & ~q",
    "<B> p & ~<B> p",
    "<B> p & [B] ~p",
    "<iB> p & [iB] ~p",
    "<L> p & [L] ~p",
    "<iL> p & [iL] ~p",
    "<B> <B> p & [B] [B] ~p",
    "[L] false",
    "<iB> (p & ~p)",
]


def test_frozen_sat_example():
    res = sat_bbll(dia(B, p))
    assert isinstance(res, Sat)
    d = res.model.domain
    assert (d.pre, d.per) == (1, 1)
    assert res.model.atom_cells("p") == frozenset({(1, 2)})
    assert res.witness == (1, 3)
    assert check_certificate(dia(B, p), res.model, res.witness)


def test_unsat_suite():
    for text in UNSAT_SUITE:
        assert isinstance(sat_bbll(parse_formula(text)), Unsat), text


def test_unsupported_fragment():
    with pytest.raises(UnsupportedFragmentError):
        sat_bbll(dia(A, p))


def test_unknown_when_truncated():
    res = sat_bbll(dia(B, p), max_bound=1)
    assert isinstance(res, Unknown)


def test_witness_determinism():
    phi = parse_formula("<B> p | <L> (p & <iB> p)")
    r1 = sat_bbll(phi)
    r2 = sat_bbll(phi)
    assert isinstance(r1, Sat)
    assert r1.model == r2.model and r1.witness == r2.witness


def test_sat_results_verify_and_respect_bound():
    rng = random.Random(501)
    sat_count = 0
    for _ in range(60):
        phi = rand_formula(rng, ["p", "q"], [B, iB, L, iL], 2)
        res = sat_bbll(phi)
        if isinstance(res, Sat):
            sat_count += 1
            d = res.model.domain
            assert d.pre + d.per <= metrics(phi).periodic_bound
            assert check_certificate(phi, res.model, res.witness), phi
    assert sat_count >= 25


def test_model_true_implies_sat():
    rng = random.Random(502)
    hits = 0
    for _ in range(40):
        pre = rng.randrange(1, 4)
        per = rng.randrange(1, 7 - pre)
        m = rand_periodic_model(rng, pre, per, ["p", "q"])
        phi = rand_formula(rng, ["p", "q"], [B, iB, L, iL], 2)
        if mc_periodic(m, (0, 1), later_somewhere(phi)):
            hits += 1
            res = sat_bbll(phi)
            assert isinstance(res, Sat), phi
    assert hits >= 15


def test_unsat_coherence_on_samples():
    rng = random.Random(503)
    for text in UNSAT_SUITE[3:7]:
        phi = parse_formula(text)
        for _ in range(5):
            m = rand_periodic_model(rng, rng.randrange(1, 3),
                                    rng.randrange(1, 3), ["p", "q"])
            assert not mc_periodic(m, (0, 1), later_somewhere(phi))


def test_bounded_finite_frozen_example():
    res = sat_bounded_finite(dia(A, p), 2)
    assert isinstance(res, Sat)
    assert isinstance(res.model.domain, FiniteDomain)
    assert res.model.domain.last_point == 2
    assert res.model.atom_cells("p") == frozenset({(1, 2)})
    assert res.witness == (0, 1)


def test_bounded_finite_monotone():
    rng = random.Random(504)
    for _ in range(25):
        phi = rand_formula(rng, ["p"], [A, B, iB, L], 2)
        r3 = sat_bounded_finite(phi, 3)
        if isinstance(r3, Sat):
            r4 = sat_bounded_finite(phi, 4)
            assert isinstance(r4, Sat), phi


def test_bounded_finite_never_unsat():
    res = sat_bounded_finite(parse_formula("p & ~p"), 3)
    assert isinstance(res, Unknown)


def test_check_certificate_rejects_wrong_claims():
    res = sat_bbll(dia(B, p))
    assert isinstance(res, Sat)
    # wrong witness cell
    assert not check_certificate(dia(B, p), res.model, (0, 1))
    # witness outside the domain order
    assert not check_certificate(dia(B, p), res.model, (5, 4))
    # model that does not satisfy the formula at the witness
    other = rand_periodic_model(random.Random(505), 1, 1, [])
    assert not check_certificate(dia(B, p), other, (1, 3))
