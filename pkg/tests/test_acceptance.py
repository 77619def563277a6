"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line with its runtime.  Run the file
directly (python3 tests/test_acceptance.py) for just those lines.
"""

import functools
import os
import random
import subprocess
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from clifford_forge import (
    GF,
    QQ,
    CPoly,
    FormSpec,
    MatrixRep,
    NCPoly,
    clifford_relations,
    genus,
    is_specialization,
    module_from_rep,
    rep_from_module,
    roby,
    search_reps,
    splitting_type,
    truncated_completion,
    twist,
    ulrich_check,
    verify_rep,
)
from clifford_forge.parse import parse_poly
from clifford_forge.poly import monomials_of_degree
from clifford_forge.representations import _route_identity, _route_relations
from clifford_forge.ulrichmod import GradedModule

from oracles import naive_relations

DATA = os.path.join(os.path.dirname(__file__), "..", "data")
F2, F5, F7 = GF(2), GF(5), GF(7)


def P(text, field=QQ, n=2):
    return parse_poly(text, [f"x{i}" for i in range(1, n + 1)], field)


LINES = []  # shown in the terminal summary by conftest


def check(number, title, limit, body):
    start = time.perf_counter()
    error = None
    try:
        body()
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < limit
    line = f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, limit {limit}s)"
    LINES.append(line)
    if error is not None:
        raise error
    assert elapsed < limit, line


@functools.lru_cache(maxsize=None)
def cubic_f2_search():
    spec = roby(P("x1^3 + x2^3", F2), 3)
    return {N: search_reps(spec, N) for N in (1, 2, 3)}


def witness():
    spec = roby(P("x1^3 + x2^3", F7), 3)
    A1 = ((1, 0, 0), (0, 2, 0), (0, 0, 4))
    A2 = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    return MatrixRep(spec, 3, (A1, A2))


# 1 -----------------------------------------------------------------------------

def _random_spec(rng):
    n, m, d = rng.randint(1, 3), rng.randint(1, 2), rng.randint(1, 3)
    forms = []
    for ell in range(1, d + 1):
        terms = {e: rng.randrange(5) for e in monomials_of_degree(n, ell * m) if rng.random() < 0.6}
        forms.append(CPoly(F5, n, terms))
    return FormSpec(n, m, d, tuple(forms), F5)


def relation_oracle():
    rng = random.Random(20240601)
    for _ in range(200):
        spec = _random_spec(rng)
        forms = {ell: dict(f.terms) for ell, f in enumerate(spec.forms, 1) if not f.is_zero()}
        want = naive_relations(spec.n, spec.m, spec.d, forms, 5)
        got = {a: dict(r.terms) for a, r in clifford_relations(spec).slots if not r.is_zero()}
        assert got == want, spec


def test_relation_extraction_oracle():
    check(1, "relation extraction vs naive expander", 30, relation_oracle)


# 2 -----------------------------------------------------------------------------

QUADRATICS = {
    QQ: [[1], [1, 1], [1, -2, 3]],
    F5: [[2], [1, 4], [1, 2, 3]],
}


def classical_dims():
    for field, qs in QUADRATICS.items():
        for q in qs:
            n = len(q)
            terms = {tuple(2 * (i == j) for j in range(n)): c for i, c in enumerate(q)}
            spec = roby(CPoly(field, n, terms), 2)
            rs = truncated_completion(clifford_relations(spec), n + 2)
            fd = rs.filtered_dimension()
            assert rs.complete_below >= n + 2
            assert fd.total == 2 ** n, (field, q, fd)


def test_classical_clifford_dimensions():
    check(2, "classical Clifford dimensions 2^n", 10, classical_dims)


# 3 -----------------------------------------------------------------------------

def rank_divisibility():
    reports = cubic_f2_search()
    assert all(r.exhausted for r in reports.values())
    assert len(reports[1].found) == 0 and len(reports[2].found) == 0
    assert len(reports[3].found) >= 1
    assert reports[3].candidates <= 2 ** 18


def test_rank_divisibility_search():
    check(3, "rank divisibility by exhaustive search over F_2", 60, rank_divisibility)


# 4 -----------------------------------------------------------------------------

def verified_witness():
    rep = witness()
    pres = clifford_relations(rep.spec)
    assert _route_identity(rep) == {} and _route_relations(rep, pres) == {}
    assert verify_rep(rep)
    span = is_specialization(rep)
    assert span.surjective and span.dimension == 9
    A1, A2 = rep.matrices
    for i in range(3):
        for j in range(3):
            for v in range(7):
                if v != A1[i][j]:
                    B = [list(r) for r in A1]
                    B[i][j] = v
                    assert not verify_rep(MatrixRep(rep.spec, 3, (B, A2)))


def test_verified_witness():
    check(4, "F_7 witness and perturbations", 5, verified_witness)


# 5 -----------------------------------------------------------------------------

def ulrich_round_trip():
    reps = list(cubic_f2_search()[3].found) + [witness()]
    for rep in reps:
        mod = module_from_rep(rep)
        assert splitting_type(mod).is_trivial
        curve = genus(rep.spec)
        assert curve.genus == 1 and curve.source == "formula"
        report = ulrich_check(mod, curve)
        assert report.is_ulrich
        assert report.slope == rep.spec.d + curve.genus - 1
        assert report.h0_of_minus_one == 0
        assert report.degree == report.rank * (rep.spec.d + curve.genus - 1)
        assert rep_from_module(mod).matrices == rep.matrices


def test_ulrich_round_trip():
    check(5, "Ulrich round trip and criterion coherence", 10, ulrich_round_trip)


# 6 -----------------------------------------------------------------------------

LINE = roby(P("x1"), 1)


def _free_module(ns):
    x1, zero = CPoly.var(QQ, 2, 0), CPoly.zero(QQ, 2)
    action = [[x1 if i == j else zero for j in range(len(ns))] for i in range(len(ns))]
    return GradedModule(LINE, tuple(-n for n in ns), action)


def splitting_recovery():
    rng = random.Random(6)
    for _ in range(500):
        ns = [rng.randint(-3, 3) for _ in range(rng.randint(1, 6))]
        mod = _free_module(ns)
        assert splitting_type(mod).values == tuple(sorted(ns))
        for t in range(-3, 4):
            assert splitting_type(twist(mod, t)).values == tuple(sorted(n + t for n in ns))


def test_splitting_recovery():
    check(6, "splitting-type recovery and twist covariance", 10, splitting_recovery)


# 7 -----------------------------------------------------------------------------

CENTER_CASES = [
    (roby(P("x1^2", n=1), 2), 6),
    (roby(P("x1^2 + x2^2"), 2), 6),
    (roby(P("x1^2 + x1*x2 - 3*x2^2"), 2), 6),
    (roby(P("x1^2 + x2^2", F5), 2), 6),
    (roby(P("x1^3 + x2^3"), 3), 6),
    (roby(P("x1^3 + x2^3", F7), 3), 6),
]


def center_soundness():
    for spec, N in CENTER_CASES:
        rs = truncated_completion(clifford_relations(spec), N)
        center = rs.center_basis(rs.complete_below - 1)
        one = NCPoly.constant(spec.field, 1)
        assert one in center
        for z in center:
            for j in range(rs.ngens):
                a = NCPoly.gen(spec.field, j)
                assert rs.normal_form(z * a - a * z).is_zero()


def test_center_soundness():
    check(7, "center soundness", 60, center_soundness)


# 8 -----------------------------------------------------------------------------

def _data(name):
    return os.path.join(DATA, name)


CLI_RUNS = [
    ["relations", "--form", _data("quad.json")],
    ["basis", "--form", _data("quad.json"), "--degree", "4"],
    ["verify-rep", "--form", _data("cubic_f7.json"), "--rep", _data("rep_f7.json")],
    ["search-rep", "--form", _data("cubic_f2.json"), "--size", "1"],
    ["search-rep", "--form", _data("cubic_f2.json"), "--size", "2"],
    ["search-rep", "--form", _data("cubic_f2.json"), "--size", "3"],
    ["ulrich-check", "--form", _data("cubic_f7.json"), "--rep", _data("rep_f7.json")],
    ["splitting", "--form", _data("cubic_f7.json"), "--rep", _data("rep_f7.json"), "--twist", "2"],
    ["center", "--form", _data("cubic_f7.json"), "--degree", "6"],
]


def cli_determinism():
    for argv in CLI_RUNS:
        outs = [
            subprocess.run([sys.executable, "-m", "clifford_forge", *argv], capture_output=True, check=True).stdout
            for _ in range(2)
        ]
        assert outs[0] == outs[1] and outs[0], argv


def test_cli_determinism():
    check(8, "CLI byte-identical repeats", 120, cli_determinism)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
