import pytest

from albertine import comp, her3
from albertine.exact import QQ, ZZ


@pytest.fixture(scope="session")
def zorn_zz():
    return comp.zorn(ZZ)


@pytest.fixture(scope="session")
def split_albert(zorn_zz):
    return her3.her3(zorn_zz)


@pytest.fixture(scope="session")
def coxeter():
    return comp.coxeter_order()


@pytest.fixture(scope="session")
def her3_coxeter(coxeter):
    return her3.her3(coxeter)


@pytest.fixture(scope="session")
def mat3_zz():
    return her3.mat3_plus(ZZ)


@pytest.fixture(scope="session")
def split_albert_q():
    return her3.her3(comp.zorn(QQ))
