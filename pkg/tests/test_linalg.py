import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modexp.arith import CycElt
from modexp.linalg import (
    Circulant,
    Mat,
    block,
    block_ones_inverse,
    circ_eigen,
    circ_inverse,
    circ_inverse_entry,
    gauss_inverse,
    minor_removed_inverse,
    woodbury,
)
from oracles import sympy_inverse

F = Fraction


def test_gauss_inverse_examples():
    assert gauss_inverse(Mat.identity(3)) == Mat.identity(3)
    assert gauss_inverse(Mat.from_rows([[2, 1], [1, 2]])) == Mat.from_rows([[F(2, 3), F(-1, 3)], [F(-1, 3), F(2, 3)]])
    swap = Mat.from_rows([[0, 1], [1, 0]])
    assert gauss_inverse(swap) == swap
    with pytest.raises(ZeroDivisionError):
        gauss_inverse(Mat.from_rows([[1, 2], [2, 4]]))


def test_circulant_eigen_examples():
    c = Circulant((-2, 1))
    assert circ_eigen(c, 1)[0] == -1
    assert circ_eigen(c, 2)[0] == -3
    scalar = Circulant((7, 0, 0, 0))
    assert all(circ_eigen(scalar, j)[0] == 7 for j in range(1, 5))


def test_circulant_inverse_examples():
    c = Circulant((-2, 1))
    assert circ_inverse_entry(c, 1, 1) == F(-2, 3)
    assert circ_inverse_entry(c, 1, 2) == F(-1, 3)
    assert circ_inverse_entry(Circulant((2, 0, 0)), 2, 2) == F(1, 2)
    assert circ_inverse(c) == Circulant((F(-2, 3), F(-1, 3)))
    assert circ_inverse(Circulant((1, 0, 0, 0))) == Circulant((1, 0, 0, 0))
    five = Circulant((-5, 1, 1, 1, 1))
    assert circ_inverse(five).materialize() == gauss_inverse(five.materialize())


def test_singular_circulant():
    with pytest.raises(ZeroDivisionError):
        circ_inverse(Circulant((1, 1, 1)))


rationals = st.builds(F, st.integers(-8, 8), st.integers(1, 4))


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=12))
def test_circulant_inverse_property(col):
    c = Circulant(tuple(col))
    try:
        inv = circ_inverse(c)
    except ZeroDivisionError:
        assert any(circ_eigen(c, j)[0].is_zero() for j in range(1, c.n + 1))
        return
    assert inv.materialize() @ c.materialize() == Mat.identity(c.n)


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=10), st.data())
def test_eigen_equation(col, data):
    c = Circulant(tuple(col))
    n = c.n
    j = data.draw(st.integers(1, n))
    lam, vec = circ_eigen(c, j)
    dense = c.materialize()
    for i in range(n):
        lhs = CycElt.zero(n)
        for k in range(n):
            lhs = lhs + vec[k] * dense[i, k]
        assert lhs == lam * vec[i]


def test_minor_removed_examples():
    a = Mat.from_rows([[2, 1], [1, 2]])
    assert minor_removed_inverse(gauss_inverse(a), 1, 1) == Mat.from_rows([[F(1, 2)]])
    assert minor_removed_inverse(Mat.identity(3), 2, 2) == Mat.identity(2)
    a = Mat.from_rows([[3, 1], [1, 3]])
    assert minor_removed_inverse(gauss_inverse(a), 1, 1) == Mat.from_rows([[F(1, 3)]])
    with pytest.raises(ZeroDivisionError, match="pivot vanishes"):
        minor_removed_inverse(Mat.identity(3), 1, 2)


def test_minor_removed_non_symmetric_position():
    a = Mat.from_rows([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    got = minor_removed_inverse(gauss_inverse(a), 1, 3)
    assert got == gauss_inverse(a.delete(0, 2))


def test_woodbury_examples():
    a_inv = gauss_inverse(Mat.from_rows([[2, 0], [0, 2]]))
    e1 = Mat.column([1, 0])
    got = woodbury(a_inv, e1, Mat.from_rows([[1]]), e1.transpose())
    assert got == Mat.from_rows([[F(1, 3), 0], [0, F(1, 2)]])
    zero = Mat.zeros(2, 1)
    assert woodbury(a_inv, zero, Mat.from_rows([[1]]), zero.transpose()) == a_inv


def _random_invertible(rng, n):
    while True:
        rows = [[F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        m = Mat.from_rows(rows)
        try:
            return m, gauss_inverse(m)
        except ZeroDivisionError:
            pass


def test_update_formulas_against_sympy():
    rng = random.Random(7)
    for _ in range(15):
        a, a_inv = _random_invertible(rng, 4)
        u = Mat.from_rows([[rng.randint(-3, 3) for _ in range(2)] for _ in range(4)])
        v = Mat.from_rows([[rng.randint(-3, 3) for _ in range(4)] for _ in range(2)])
        c, c_inv = _random_invertible(rng, 2)
        try:
            expected = sympy_inverse((a + u @ c @ v).to_rows())
        except ValueError:
            continue
        assert woodbury(a_inv, u, c_inv, v).to_rows() == expected
        a3, a3_inv = _random_invertible(rng, 3)
        b2, b2_inv = _random_invertible(rng, 2)
        whole = block([[a3, Mat.ones(3, 2)], [Mat.ones(2, 3), b2]])
        try:
            expected = sympy_inverse(whole.to_rows())
        except ValueError:
            continue
        assert block_ones_inverse(a3_inv, b2_inv).to_rows() == expected


def test_block_ones_examples():
    a = Mat.from_rows([[-5 if i == j else 1 for j in range(4)] for i in range(4)])
    got = block_ones_inverse(gauss_inverse(a), Mat.from_rows([[F(-1, 5)]]))
    expected = Mat.from_rows([[F(-1, 6) * (1 + (i == j)) for j in range(5)] for i in range(5)])
    assert got == expected
    a_inv = gauss_inverse(a)
    assert block_ones_inverse(a_inv, Mat.zeros(0, 0)) == a_inv


def test_block_ones_singular_update():
    # A = B = [1]: alpha = beta = 1 so 1 - alpha beta = 0
    with pytest.raises(ZeroDivisionError, match="rank-2"):
        block_ones_inverse(Mat.from_rows([[1]]), Mat.from_rows([[1]]))


def test_serialization():
    m = Mat.from_rows([[F(1, 2), -3], [0, F(7, 9)]])
    data = json.loads(m.dumps())
    assert data == {"rows": 2, "cols": 2, "entries": ["1/2", "-3", "0", "7/9"]}
    assert Mat.from_json(data) == m
    assert m.to_csv() == "1/2,-3\n0,7/9\n"
    assert Mat.from_csv("# comment\n" + m.to_csv()) == m


def test_shape_errors():
    with pytest.raises(ValueError):
        Mat(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        Mat.identity(2) @ Mat.identity(3)
    with pytest.raises(ValueError):
        Mat.from_rows([[1, 2], [3]])
