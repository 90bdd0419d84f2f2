import pytest

from nalength import QQ, PrimeField, build, make_algebra


@pytest.fixture(scope="session")
def v5():
    return build("vd", QQ, d=5)


@pytest.fixture(scope="session")
def x5():
    return build("xd", QQ, d=5, k=3)


@pytest.fixture(scope="session")
def e5():
    return build("ed", QQ, d=5, k=3)


@pytest.fixture(scope="session")
def m7():
    return build("m7", QQ)


@pytest.fixture(scope="session")
def sl2():
    return build("sl2", QQ)


@pytest.fixture(scope="session")
def heisenberg():
    return build("heisenberg", QQ)


def trunc_poly(dim, field):
    """F[t]/(t^dim) on basis 1, t, ..., t^(dim-1); unital test algebra."""
    prods = {}
    for i in range(1, dim + 1):
        for j in range(1, dim + 1):
            if i + j - 1 <= dim:
                vec = [0] * dim
                vec[i + j - 2] = 1
                prods[(i, j)] = tuple(vec)
    unit = tuple([1] + [0] * (dim - 1))
    return make_algebra(f"trunc-poly-{dim}", field, dim, prods, unital=True, unit=unit)
