import random

import pytest
from hypothesis import given, strategies as st

from clifford_forge import (
    GF,
    QQ,
    MatrixRep,
    check_rank_divisibility,
    is_specialization,
    reduced_compatible,
    roby,
    search_reps,
    verify_rep,
    weighted,
)
from clifford_forge.errors import ArityError, ResourceError, SpecError, UnverifiedRepresentation
from clifford_forge.parse import parse_poly
from clifford_forge.presentation import clifford_relations, nondiagonal
from clifford_forge.representations import _route_identity, _route_relations, matmul

from oracles import naive_relations
from strategies import raw_forms

F2, F3, F7 = GF(2), GF(3), GF(7)


def P(text, field=QQ, n=2):
    return parse_poly(text, [f"x{i}" for i in range(1, n + 1)], field)


def cubic(field):
    return roby(P("x1^3 + x2^3", field), 3)


def witness_rep():
    A1 = ((1, 0, 0), (0, 2, 0), (0, 0, 4))
    A2 = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    return MatrixRep(cubic(F7), 3, (A1, A2))


def oracle_valid(spec, mats):
    """Evaluate the naively expanded relations on the matrices."""
    p = spec.field.characteristic
    N = len(mats[0])
    rels = naive_relations(spec.n, spec.m, spec.d, raw_forms(spec), p)
    for rel in rels.values():
        total = [[0] * N for _ in range(N)]
        for word, c in rel.items():
            X = [[int(i == j) for j in range(N)] for i in range(N)]
            for k in word:
                X = [[sum(X[i][t] * mats[k][t][j] for t in range(N)) for j in range(N)] for i in range(N)]
            total = [[total[i][j] + c * X[i][j] for j in range(N)] for i in range(N)]
        if any((x % p if p else x) for row in total for x in row):
            return False
    return True


def test_trivial_square_root():
    assert verify_rep(MatrixRep(roby(P("x1^2", n=1), 2), 1, (((1,),),)))


def test_witness_verifies():
    rep = witness_rep()
    ver = verify_rep(rep)
    assert ver.valid and ver.witness is None
    span = is_specialization(rep)
    assert span.surjective and span.dimension == 9
    assert reduced_compatible(rep).compatible and reduced_compatible(rep).flag is None


def test_witness_failure():
    rep = witness_rep()
    bad = MatrixRep(rep.spec, 3, (((1, 0, 0), (0, 2, 0), (0, 0, 3)), rep.matrices[1]))
    ver = verify_rep(bad)
    assert not ver.valid
    assert ver.witness["monomial"] == [3, 0]
    assert ver.witness == {"monomial": [3, 0], "row": 2, "col": 2, "value": "5"}


def test_single_entry_perturbations_fail():
    rep = witness_rep()
    A1 = [list(r) for r in rep.matrices[0]]
    for i in range(3):
        for j in range(3):
            for v in range(7):
                if v == A1[i][j]:
                    continue
                B = [row[:] for row in A1]
                B[i][j] = v
                assert not verify_rep(MatrixRep(rep.spec, 3, (B, rep.matrices[1])))


def test_rank_divisibility_gate():
    spec = cubic(F7)
    assert check_rank_divisibility(3, spec)
    assert not check_rank_divisibility(2, spec)
    assert check_rank_divisibility(6, spec)


def test_square_roots_over_f3():
    report = search_reps(roby(P("x1^2", F3, n=1), 2), 1)
    assert [rep.matrices for rep in report.found] == [(((1,),),), (((2,),),)]
    assert report.exhausted and report.candidates == 3


def test_cubic_over_f2_small_sizes_empty():
    for N in (1, 2):
        report = search_reps(cubic(F2), N)
        assert report.found == () and report.exhausted


def squarefree_cubics(field):
    from itertools import product

    from clifford_forge import CPoly
    from clifford_forge.ulrichmod import is_squarefree_binary

    monos = [(3, 0), (2, 1), (1, 2), (0, 3)]
    for coeffs in product(range(field.characteristic), repeat=4):
        f = CPoly(field, 2, dict(zip(monos, coeffs)))
        if not f.is_zero() and is_squarefree_binary(f):
            yield f


@pytest.mark.parametrize("field", [F2, F3])
def test_gate_soundness_for_squarefree_cubics(field):
    cubics = list(squarefree_cubics(field))
    assert cubics
    for f in cubics:
        for N in (1, 2):
            assert search_reps(roby(f, 3), N).found == ()


def test_gate_needs_a_squarefree_form():
    # (x1 + x2)^3 over F_3: A1 = A2 = 1 works at size 1
    report = search_reps(roby(P("x1^3 + x2^3", F3), 3), 1)
    assert [rep.matrices for rep in report.found] == [(((1,),), ((1,),))]


def test_exhaustive_matches_brute_force():
    spec = roby(P("x1^2 + x1*x2", F3), 2)
    report = search_reps(spec, 1, threads=2)
    brute = [
        (((a,),), ((b,),))
        for a in range(3)
        for b in range(3)
        if oracle_valid(spec, [[[a]], [[b]]])
    ]
    assert [rep.matrices for rep in report.found] == brute


def test_search_preconditions():
    with pytest.raises(SpecError):
        search_reps(cubic(QQ), 1)
    with pytest.raises(ResourceError):
        search_reps(cubic(F7), 3, cap=1000)
    with pytest.raises(SpecError):
        search_reps(cubic(F7), 1, mode="random", trials=10)


def test_random_mode_is_seeded():
    spec = roby(P("x1^2 + x2^2", F3), 2)
    one = search_reps(spec, 2, mode="random", seed=11, trials=3000)
    two = search_reps(spec, 2, mode="random", seed=11, trials=3000)
    assert one.to_json() == two.to_json()
    assert len(one.found) > 0 and not one.exhausted
    over_q = search_reps(roby(P("x1^2 + x2^2"), 2), 2, mode="random", seed=3, trials=3000)
    assert over_q.to_json() == search_reps(roby(P("x1^2 + x2^2"), 2), 2, mode="random", seed=3, trials=3000).to_json()
    assert all(verify_rep(rep) for rep in over_q.found)


def test_span_of_diagonal_rep():
    rep = MatrixRep(roby(P("x1^2", n=1), 2), 2, ((((1, 0), (0, -1))),))
    assert verify_rep(rep)
    span = is_specialization(rep)
    assert not span.surjective and span.dimension == 2
    assert is_specialization(MatrixRep(rep.spec, 1, (((1,),),))).surjective


def test_reduced_check_flags_larger_sizes():
    rep = MatrixRep(roby(P("x1^2", n=1), 2), 4, ((((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1))),))
    check = reduced_compatible(rep)
    assert check.compatible and check.flag == "divisibility-gate-only"
    with pytest.raises(UnverifiedRepresentation):
        reduced_compatible(MatrixRep(rep.spec, 1, (((2,),),)))


def test_matrix_json_roundtrip():
    rep = witness_rep()
    assert MatrixRep.from_json(rep.spec, rep.to_json()) == rep
    half = MatrixRep(roby(P("x1^2", n=1), 2), 1, (((QQ.parse("1/2"),),),))
    assert half.to_json()["matrices"][0]["entries"] == [["1/2"]]
    with pytest.raises(ArityError):
        MatrixRep(rep.spec, 3, rep.matrices[:1])


SPECS = [
    cubic(F7),
    roby(P("x1^2 + 2*x1*x2", F3), 2),
    weighted(2, P("x1^4 + x2^4", F3), 2),
    nondiagonal([P("x1", F3), P("x2^2", F3), P("x1^3 + x2^3", F3)]),
]


@pytest.mark.parametrize("spec", SPECS, ids=["cubic", "quad", "weighted", "nondiag"])
def test_dual_routes_agree(spec):
    p = spec.field.characteristic
    g = len(clifford_relations(spec).generators)
    rng = random.Random(7)
    pres = clifford_relations(spec)
    for k in range(1000):
        N = rng.choice([1, 2])
        mats = [[[rng.randrange(p) for _ in range(N)] for _ in range(N)] for _ in range(g)]
        rep = MatrixRep(spec, N, mats)
        a, b = _route_identity(rep), _route_relations(rep, pres)
        assert set(a) == set(b)
        if k % 50 == 0:
            assert (not a) == oracle_valid(spec, mats)


def invertible(p, N):
    rows = st.lists(st.lists(st.integers(0, p - 1), min_size=N, max_size=N), min_size=N, max_size=N)
    return rows.filter(lambda M: _det(M, p) % p != 0)


def _det(M, p):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]], p) for j in range(len(M)))


@given(invertible(7, 3))
def test_conjugation_keeps_representations(P3):
    rep = witness_rep().conjugate(P3)
    assert verify_rep(rep)
    assert is_specialization(rep).dimension == 9


def test_conjugation_by_explicit_matrix():
    rep = witness_rep()
    P3 = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    Pinv = ((1, 6, 0), (0, 1, 0), (0, 0, 1))
    conj = rep.conjugate(P3)
    assert conj.matrices[0] == matmul(F7, matmul(F7, P3, rep.matrices[0]), Pinv)
