import pytest

from togglelab.togglecore import SetFamily

F_CHAIN2 = SetFamily("ab", [[], ["a"], ["a", "b"]])
F_BOOLEAN2 = SetFamily("ab", [[], ["a"], ["b"], ["a", "b"]])
F_CHAIN3 = SetFamily("abc", [[], ["a"], ["a", "b"], ["a", "b", "c"]])
F_PROD23 = SetFamily("abc", [[], ["b"], ["b", "c"], ["a"], ["a", "b"], ["a", "b", "c"]])


@pytest.fixture
def chain2():
    return F_CHAIN2


@pytest.fixture
def boolean2():
    return F_BOOLEAN2


@pytest.fixture
def chain3():
    return F_CHAIN3


@pytest.fixture
def prod23():
    return F_PROD23
