import pytest

from rsasd.algebra import rs_code


def clmul_mod(a: int, b: int, poly: int, m: int) -> int:
    """Schoolbook carry-less multiply followed by long division."""
    prod = 0
    for i in range(m):
        if b >> i & 1:
            prod ^= a << i
    for d in range(2 * m - 2, m - 1, -1):
        if prod >> d & 1:
            prod ^= poly << (d - m)
    return prod


@pytest.fixture(scope="session")
def rs15_3():
    return rs_code(15, 3, 4)


@pytest.fixture(scope="session")
def rs15_7():
    return rs_code(15, 7, 4)


@pytest.fixture(scope="session")
def rs15_11():
    return rs_code(15, 11, 4)
