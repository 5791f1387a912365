import pytest

from iqflag.flagcomb import Composition
from iqflag.repmodule import (
    ModuleElement,
    elem_eq,
    monomial_symmetrization,
    spanning_set,
    validate,
)
from iqflag.symalg import RatFun

from conftest import X


def test_monomial_symmetrization_examples():
    e = monomial_symmetrization((1, 1), (0,))
    assert e[Composition((1, 1))] == RatFun(1, d=1)
    e = monomial_symmetrization((2, 0, 0, 2), (1, 0))
    assert e[Composition((2, 0, 0, 2))] == X(1, 2) + X(2, 2)
    e = monomial_symmetrization((1, 1, 1, 1), (1, 2))
    assert e[Composition((1, 1, 1, 1))] == X(1, 2) * X(2, 2) ** 2
    with pytest.raises(ValueError):
        monomial_symmetrization((1, 1), (0, 0))


def test_validate_examples():
    v = Composition((1, 1))
    assert validate(monomial_symmetrization(v, (2,)))
    x1 = X(1, 1)
    assert validate(ModuleElement.single(v, x1 / (x1 ** 2 - 1)))
    assert not validate(ModuleElement.single(v, 1 / (x1 - 2)))


def test_validate_rejects_non_invariant():
    v = Composition((2, 0, 0, 2))
    assert not validate(ModuleElement.single(v, X(1, 2)))


def test_elem_eq_examples():
    a = monomial_symmetrization((1, 1, 1, 1), (1, 2))
    assert elem_eq(a, a)
    zero = ModuleElement(2, 2, {Composition((1, 1, 1, 1)): RatFun(0, d=2)})
    assert elem_eq(zero, ModuleElement(2, 2))
    b = monomial_symmetrization((2, 0, 0, 2), (1, 2))
    assert not elem_eq(a, b)


def test_zero_components_pruned():
    a = monomial_symmetrization((1, 1), (1,))
    assert (a - a).grades() == []


@pytest.mark.parametrize("n,d", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_spanning_set_valid_and_distinct(n, d):
    vecs = spanning_set(n, d)
    labels = [lab for lab, _ in vecs]
    assert len(labels) == len(set(labels))
    for _, e in vecs:
        assert validate(e)
    for i, (_, a) in enumerate(vecs):
        for _, b in vecs[i + 1:]:
            assert not elem_eq(a, b)


def test_spanning_set_sizes():
    assert len(spanning_set(1, 1)) == 5
    assert len(spanning_set(2, 2)) == 55


def test_json_round_trip():
    for _, e in spanning_set(2, 2):
        back = ModuleElement.from_json(e.to_json(), 2, 2)
        assert back == e
        assert back.to_json() == e.to_json()
