from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from clifford_forge import GF, QQ, CPoly, MixedPoly, NCPoly, coeff_of_xmonomial, mixed_mul, mixed_pow
from clifford_forge.errors import FieldError, ParseError, SpecError, UnknownIdentifier
from clifford_forge.field import is_prime
from clifford_forge.parse import parse_ncpoly, parse_poly, print_poly

from oracles import naive_mixed_power

F5 = GF(5)


def cpolys(field, n=2, max_deg=3, coeffs=st.integers(-4, 4)):
    mono = st.tuples(*[st.integers(0, max_deg)] * n)
    return st.dictionaries(mono, coeffs, max_size=5).map(lambda t: CPoly(field, n, t))


def ncpolys(field, ngens=2, max_len=3, coeffs=st.integers(-4, 4)):
    word = st.lists(st.integers(0, ngens - 1), max_size=max_len).map(tuple)
    return st.dictionaries(word, coeffs, max_size=5).map(lambda t: NCPoly(field, t))


def mixedpolys(field, n=2):
    word = st.lists(st.integers(0, 1), max_size=2).map(tuple)
    mono = st.tuples(*[st.integers(0, 2)] * n)
    return st.dictionaries(st.tuples(word, mono), st.integers(-4, 4), max_size=4).map(
        lambda t: MixedPoly(field, n, t)
    )


def test_parse_examples():
    p = parse_poly("x1^2 + x2^2", ["x1", "x2"], QQ)
    assert p.terms == {(2, 0): 1, (0, 2): 1}
    assert parse_poly("0", ["x1"], QQ).terms == {}
    q = parse_poly("x1^3 + 2*x2^3", ["x1", "x2"], GF(7))
    assert q.terms == {(3, 0): 1, (0, 3): 2}


def test_parse_rationals_and_signs():
    p = parse_poly("-3/4*x1*x2 + 1/2", ["x1", "x2"], QQ)
    assert p.terms == {(1, 1): Fraction(-3, 4), (0, 0): Fraction(1, 2)}
    assert parse_poly("1/2*x1", ["x1"], GF(5)).terms == {(1,): 3}


def test_parse_errors_carry_position():
    with pytest.raises(UnknownIdentifier) as info:
        parse_poly("x1 + y", ["x1"], QQ)
    assert info.value.position == 5
    with pytest.raises(ParseError):
        parse_poly("x1 +* x2", ["x1", "x2"], QQ)
    with pytest.raises(FieldError):
        parse_poly("1/5*x1", ["x1"], GF(5))


def test_field_basics():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
    with pytest.raises(SpecError):
        GF(6)
    assert F5.inv(2) == 3
    assert QQ.format(Fraction(3, 4)) == "3/4"
    assert F5.format(F5(-1)) == "4"
    assert GF(7).to_json() == {"Fp": 7}


def test_mixed_mul_examples():
    a1 = MixedPoly(QQ, 2, {((0,), (1, 0)): 1})
    a2 = MixedPoly(QQ, 2, {((1,), (0, 1)): 1})
    assert mixed_mul(a1, a2).terms == {((0, 1), (1, 1)): 1}
    assert mixed_mul(a2, a1).terms == {((1, 0), (1, 1)): 1}
    p = a1 + a2
    assert mixed_mul(MixedPoly.one(QQ, 2), p) == p


def test_mixed_pow_examples():
    L = MixedPoly(QQ, 2, {((0,), (1, 0)): 1, ((1,), (0, 1)): 1})
    sq = mixed_pow(L, 2)
    assert sq.terms == {
        ((0, 0), (2, 0)): 1,
        ((0, 1), (1, 1)): 1,
        ((1, 0), (1, 1)): 1,
        ((1, 1), (0, 2)): 1,
    }
    assert mixed_pow(L, 0) == MixedPoly.one(QQ, 2)
    assert mixed_pow(L, 1) == L
    assert coeff_of_xmonomial(sq, (1, 1)).terms == {(0, 1): 1, (1, 0): 1}
    assert coeff_of_xmonomial(sq, (3, 0)).is_zero()
    cube = coeff_of_xmonomial(mixed_pow(L, 3), (2, 1))
    assert cube.terms == {(0, 0, 1): 1, (0, 1, 0): 1, (1, 0, 0): 1}


@pytest.mark.parametrize("e", [0, 1, 2, 3, 4])
def test_mixed_pow_matches_enumeration(e):
    L = MixedPoly(F5, 3, {((i,), tuple(int(i == j) for j in range(3))): 1 for i in range(3)})
    assert mixed_pow(L, e).terms == naive_mixed_power(3, 3, e, 5)


@given(cpolys(F5), cpolys(F5), cpolys(F5))
def test_commutative_ring_axioms(p, q, r):
    assert ((p * q) * r).terms == (p * (q * r)).terms
    assert (p * (q + r)).terms == (p * q + p * r).terms
    assert p * q == q * p
    assert (p - p).terms == {}


@given(ncpolys(F5), ncpolys(F5), ncpolys(F5))
def test_free_ring_axioms(p, q, r):
    assert ((p * q) * r).terms == (p * (q * r)).terms
    assert (p * (q + r)).terms == (p * q + p * r).terms
    assert ((q + r) * p).terms == (q * p + r * p).terms


@given(mixedpolys(F5), mixedpolys(F5), mixedpolys(F5))
def test_mixed_ring_axioms(p, q, r):
    assert mixed_mul(mixed_mul(p, q), r).terms == mixed_mul(p, mixed_mul(q, r)).terms
    assert mixed_mul(p, q + r).terms == (mixed_mul(p, q) + mixed_mul(p, r)).terms


@given(mixedpolys(F5))
def test_extraction_reassembles(p):
    rebuilt = MixedPoly(F5, 2, {})
    for alpha in {exps for _, exps in p.terms}:
        nc = coeff_of_xmonomial(p, alpha)
        rebuilt = rebuilt + MixedPoly(F5, 2, {(w, alpha): c for w, c in nc.terms.items()})
    assert rebuilt.terms == p.terms


@given(cpolys(QQ, n=3, coeffs=st.fractions(min_value=-5, max_value=5, max_denominator=6)))
def test_cpoly_print_parse_roundtrip(p):
    names = ["x1", "x2", "x3"]
    assert parse_poly(print_poly(p, names), names, QQ) == p


@given(ncpolys(GF(7), ngens=3, max_len=5))
def test_ncpoly_print_parse_roundtrip(p):
    names = ["a[1,0]", "a[0,1]", "b"]
    assert parse_ncpoly(p.format(names), names, GF(7)) == p


@given(cpolys(QQ), cpolys(QQ), st.sampled_from([3, 5, 7, 11]))
def test_rational_computation_reduces_mod_p(p, q, prime):
    F = GF(prime)

    def down(x):
        return CPoly(F, 2, dict(x.terms))

    assert down(p * q + p) == down(p) * down(q) + down(p)
    assert down(p ** 2) == down(p) ** 2


def test_zero_is_structural():
    p = CPoly(F5, 2, {(1, 0): 5, (0, 1): 0})
    assert p.terms == {} and p == CPoly.zero(F5, 2)
    assert (NCPoly.gen(F5, 0) * 0).terms == {}
