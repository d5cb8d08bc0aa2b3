import pytest

from loopkit import all_loops, cyclic, dihedral, quaternion


@pytest.fixture(scope="session")
def loops_upto_4():
    return [L for n in range(1, 5) for L in all_loops(n)]


@pytest.fixture(scope="session")
def loops_order_5():
    return list(all_loops(5))


@pytest.fixture(scope="session")
def loops_upto_5(loops_upto_4, loops_order_5):
    return loops_upto_4 + loops_order_5


@pytest.fixture(scope="session")
def z5():
    return cyclic(5)


@pytest.fixture(scope="session")
def s3():
    return dihedral(3)


@pytest.fixture(scope="session")
def klein():
    from loopkit import direct_product

    return direct_product(cyclic(2), cyclic(2))


@pytest.fixture(scope="session")
def q8():
    return quaternion()
