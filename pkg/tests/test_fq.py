from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irrbase.fq import (MAX_D, FieldError, FqMatrix, field_make, field_of_order, gl_generators, gl_order,
                        in_row_space, mat_rref, prime_power, rref_rows, sl_generators)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def test_prime_field_of_order_two():
    f = field_make(2)
    assert f.q == 2 and f.add(1, 1) == 0


def test_inverse_in_f3():
    assert field_make(3).inv(2) == 2


def test_f4_generator_has_order_three():
    f = field_make(2, 2, [1, 1, 1])
    x = f.from_coeffs([0, 1])
    assert f.mult_order(x) == 3
    assert f.mul(x, x) == f.add(x, 1)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32, 49, 64, 81])
def test_builtin_moduli_give_fields(q):
    f = field_of_order(q)
    assert f.q == q
    assert f.mult_order(f.primitive) == q - 1


def test_field_errors():
    with pytest.raises(FieldError):
        field_make(4)
    with pytest.raises(FieldError):
        field_make(2, 0)
    with pytest.raises(FieldError):
        field_make(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2 over F_2
    with pytest.raises(FieldError):
        field_of_order(121)
    with pytest.raises(FieldError):
        field_of_order(6)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    assert prime_power(12) is None


field_and_elems = st.sampled_from(ORDERS).flatmap(
    lambda q: st.tuples(st.just(field_of_order(q)), *[st.integers(0, q - 1)] * 3))


@settings(max_examples=300, deadline=None)
@given(field_and_elems)
def test_field_axioms(args):
    f, a, b, c = args
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    if a:
        assert f.mul(a, f.inv(a)) == 1
    p = f.p
    assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
    assert f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b))
    assert f.frobenius(a) == f.pow(a, p)


def test_rref_examples():
    f2 = field_make(2)
    ident = FqMatrix.identity(f2, 3)
    r, rank = mat_rref(ident)
    assert r == ident and rank == 3
    r, rank = mat_rref(FqMatrix(f2, ((1, 1), (0, 1))))
    assert r.rows == ((1, 0), (0, 1)) and rank == 2


def _matrices(f, rows, cols):
    return [FqMatrix(f, tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows)))
            for v in product(range(f.q), repeat=rows * cols)]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.data())
def test_rref_spans_input_and_is_idempotent(q, data):
    f = field_of_order(q)
    m = FqMatrix(f, tuple(tuple(data.draw(st.integers(0, q - 1)) for _ in range(4)) for _ in range(4)))
    r, rank = mat_rref(m)
    assert r.is_rref()
    assert mat_rref(r) == (r, rank)
    basis = r.rows[:rank]
    assert all(in_row_space(f, row, basis) for row in m.rows)
    assert rank == m.rank()


def _row_space(f, rows):
    d = len(rows[0])
    out = set()
    for coeffs in product(range(f.q), repeat=len(rows)):
        v = [0] * d
        for c, row in zip(coeffs, rows):
            v = [f.add(a, f.mul(c, b)) for a, b in zip(v, row)]
        out.add(tuple(v))
    return frozenset(out)


@pytest.mark.parametrize("q,nrows,d", [(2, 2, 2), (2, 3, 3), (3, 2, 2), (3, 2, 3)])
def test_equal_row_space_iff_equal_rref(q, nrows, d):
    f = field_make(q)
    by_rref: dict = {}
    for m in _matrices(f, nrows, d):
        by_rref.setdefault(mat_rref(m)[0].rows, set()).add(_row_space(f, m.rows))
    # one row space per RREF, and distinct RREFs give distinct row spaces
    assert all(len(spaces) == 1 for spaces in by_rref.values())
    spaces = [next(iter(s)) for s in by_rref.values()]
    assert len(set(spaces)) == len(spaces)


def test_gl_order_examples():
    assert gl_order(2, 2, False) == 6
    assert gl_order(3, 2, True) == 168
    assert gl_order(2, 3, True) == 24
    with pytest.raises(FieldError):
        gl_order(2, 6, False)


def _matrix_group_order(gens):
    f = gens[0].field
    d = len(gens[0].rows)
    one = FqMatrix.identity(f, d)
    seen = {one.rows}
    frontier = [one]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x @ g
            if y.rows not in seen:
                seen.add(y.rows)
                frontier.append(y)
    return len(seen)


@pytest.mark.parametrize("d,q", [(2, 2), (2, 3), (2, 4), (3, 2), (2, 5)])
def test_gl_generators_generate_gl(d, q):
    f = field_of_order(q)
    gens = gl_generators(d, f)
    assert all(g.is_invertible() for g in gens)
    assert _matrix_group_order(gens) == gl_order(d, q, False)


@pytest.mark.parametrize("d,q", [(2, 3), (2, 4), (3, 2)])
def test_sl_generators_generate_sl(d, q):
    gens = sl_generators(d, field_of_order(q))
    assert _matrix_group_order(gens) == gl_order(d, q, False) // (q - 1)


def test_gl_generators_reject_small_d():
    with pytest.raises(ValueError):
        gl_generators(1, field_make(2))


def test_inverse_and_transpose():
    f = field_of_order(9)
    for g in gl_generators(3, f):
        assert g @ g.inverse() == FqMatrix.identity(f, 3)
        assert g.transpose().transpose() == g


def test_rref_rows_trailing_zero_rows():
    f = field_make(3)
    rows, rank = rref_rows(f, [(1, 2, 0), (2, 1, 0), (0, 0, 1)])
    assert rank == 2 and rows[-1] == (0, 0, 0)


def test_dimension_cap():
    with pytest.raises(ValueError):
        gl_generators(MAX_D + 1, field_make(2))
