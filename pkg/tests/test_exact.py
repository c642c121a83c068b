from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from partialcp.exact import (
    I,
    Gaussian,
    Laurent,
    adjoint,
    block_diag,
    identity,
    matmul,
    mequal,
    mpow,
    unit,
)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
gaussians = st.builds(Gaussian, rationals, rationals)


def test_integral_parts_collapse_to_int():
    g = Gaussian(Fraction(4, 2), 0)
    assert type(g.re) is int and g == 2 and hash(g) == hash(2)


def test_i_squared():
    assert I * I == -1
    assert (1 + I) / (1 - I) == I


@given(gaussians, gaussians, gaussians)
def test_field_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a


def test_laurent_conjugate_inverts_z():
    z = Laurent.z()
    assert z * z.conjugate() == 1
    assert (z + I).conjugate() == Laurent.z(-1) - I


@given(st.lists(st.tuples(st.integers(-3, 3), gaussians), max_size=4),
       st.lists(st.tuples(st.integers(-3, 3), gaussians), max_size=4))
def test_laurent_product_commutes_and_conjugates(p, q):
    a, b = Laurent(dict(p)), Laurent(dict(q))
    assert a * b == b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_matrix_helpers():
    e = unit(3, 0, 1)
    assert mequal(matmul(e, adjoint(e)), unit(3, 0, 0))
    assert mequal(mpow(identity(2), 5), identity(2))
    bd = block_diag([identity(1), unit(2, 1, 0)])
    assert bd[2][1] == 1 and len(bd) == 3
