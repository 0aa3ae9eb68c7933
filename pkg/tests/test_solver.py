"""CDCL core: correctness against brute force, lexicographic-least models."""

import itertools
import random

from hslogic.solver import Solver


def brute_force(num_vars, clauses):
    """All satisfying assignments as tuples of bools, lexicographically
    ordered with False < True."""
    out = []
    for bits in itertools.product((False, True), repeat=num_vars):
        ok = True
        for cl in clauses:
            if not any(bits[abs(l) - 1] == (l > 0) for l in cl):
                ok = False
                break
        if ok:
            out.append(bits)
    return out


def run_solver(num_vars, clauses):
    s = Solver()
    for _ in range(num_vars):
        s.new_var()
    for cl in clauses:
        if not s.add_clause(list(cl)):
            return None
    if not s.solve():
        return None
    return tuple(s.model_value(v) for v in range(1, num_vars + 1))


def rand_instance(rng):
    num_vars = rng.randrange(1, 8)
    num_clauses = rng.randrange(0, 18)
    clauses = []
    for _ in range(num_clauses):
        width = rng.randrange(1, 4)
        cl = [rng.choice([-1, 1]) * rng.randrange(1, num_vars + 1)
              for _ in range(width)]
        clauses.append(cl)
    return num_vars, clauses


def test_against_brute_force_and_lex_least():
    rng = random.Random(401)
    sat_seen = unsat_seen = 0
    for _ in range(1500):
        num_vars, clauses = rand_instance(rng)
        want = brute_force(num_vars, clauses)
        got = run_solver(num_vars, clauses)
        if not want:
            assert got is None, (num_vars, clauses)
            unsat_seen += 1
        else:
            assert got == want[0], (num_vars, clauses, got, want[0])
            sat_seen += 1
    assert sat_seen > 300 and unsat_seen > 300


def test_duplicate_and_tautological_clauses():
    s = Solver()
    for _ in range(2):
        s.new_var()
    assert s.add_clause([1, 1, 2])
    assert s.add_clause([1, -1])  # tautology, dropped
    assert s.add_clause([-1])
    assert s.solve()
    assert s.model_value(1) is False


def test_empty_clause_is_conflict():
    s = Solver()
    s.new_var()
    assert not s.add_clause([])


def test_unit_propagation_chain():
    s = Solver()
    for _ in range(4):
        s.new_var()
    for cl in ([1], [-1, 2], [-2, 3], [-3, 4]):
        assert s.add_clause(cl)
    assert s.solve()
    assert all(s.model_value(v) for v in (1, 2, 3, 4))


def test_contradictory_units():
    s = Solver()
    s.new_var()
    ok = s.add_clause([1])
    ok = ok and s.add_clause([-1])
    assert not (ok and s.solve())
