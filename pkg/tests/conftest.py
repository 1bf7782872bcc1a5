import pytest

from pi1.fields import make_field
from pi1.localalgebra import AlgebraSpec, build


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


def truncated(field, order):
    return build(AlgebraSpec("truncated_poly", order=order), field)


def square_zero(field, r):
    """k[x_1..x_r] with every quadratic monomial killed."""
    gens = []
    for i in range(r):
        for j in range(i, r):
            e = [0] * r
            e[i] += 1
            e[j] += 1
            gens.append(tuple(e))
    return build(AlgebraSpec("monomial_quotient", variables=r, ideal=tuple(gens)), field)


def monomial_fixture(field):
    """k[x,y]/(x^3, x^2 y, y^2): dim m = 4, height 2 in char 2."""
    return build(
        AlgebraSpec("monomial_quotient", variables=2, ideal=((3, 0), (2, 1), (0, 2))),
        field,
    )


def fixture_algebras(field, max_trunc=7, max_square=3, with_monomial=True):
    out = [truncated(field, m + 1) for m in range(1, max_trunc + 1)]
    out += [square_zero(field, r) for r in range(1, max_square + 1)]
    if with_monomial:
        out.append(monomial_fixture(field))
    return out
