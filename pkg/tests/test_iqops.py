from fractions import Fraction

import pytest

from iqflag.flagcomb import Composition, enum_compositions
from iqflag.iqops import (
    DEFAULT_CONVENTION,
    apply_Bn,
    apply_E,
    apply_F,
    apply_Iv,
    apply_K,
    apply_Theta,
    exp_series,
    h_coeff,
    k_eigen,
    series_coeff,
    theta_check_coeff,
    theta_coeff,
    theta_orig_series,
    theta_series,
    th2_factor,
)
from iqflag.repmodule import ModuleElement, elem_eq, monomial_symmetrization, spanning_set, validate
from iqflag.symalg import RatFun, series_mul

from conftest import Q, X


def one(v):
    v = Composition(v)
    return ModuleElement.single(v, RatFun(1, d=v.d))


def test_apply_E_examples():
    got = apply_E(1, 3, one((0, 1, 1, 0)))
    assert got == ModuleElement.single(Composition((1, 0, 0, 1)), X(1, 1, 3))
    f = ModuleElement.single(Composition((1, 1, 1, 1)), X(1, 2))
    got = apply_E(1, 0, f)
    want = ModuleElement.single(Composition((2, 0, 0, 2)), Q(-1, 2) * (X(1, 2) + X(2, 2)))
    assert got == want
    assert apply_E(1, 0, one((2, 0, 0, 2))).is_zero()
    with pytest.raises(ValueError):
        apply_E(2, 0, one((1, 1, 1, 1)))


def test_apply_F_examples():
    got = apply_F(1, 2, one((1, 0, 0, 1)))
    assert got == ModuleElement.single(Composition((0, 1, 1, 0)), X(1, 1, 2))
    f = ModuleElement.single(Composition((1, 1, 1, 1)), X(2, 2))
    got = apply_F(1, 0, f)
    assert got.grades() == [Composition((0, 2, 2, 0))]
    assert got[Composition((0, 2, 2, 0))].den_factors() == [] or validate(got)
    assert validate(got)


def test_apply_Bn_examples():
    x1, q = X(1, 1), Q(1, 1)
    for k in (-1, 0, 2):
        got = apply_Bn(k, one((1, 1)))
        want = x1 ** k * (q ** 2 * x1 ** 2 - 1) / (q * x1 ** 2 - q)
        assert got[Composition((1, 1))] == want
        assert validate(got)
    assert apply_Bn(1, ModuleElement(1, 1)).is_zero()


@pytest.mark.parametrize("n,d", [(2, 1), (2, 2)])
def test_grade_transport_and_integrality(n, d):
    for _, f in spanning_set(n, d, lo=0, hi=2):
        (v, _), = f.items()
        for k in (-1, 0, 1):
            e = apply_E(1, k, f)
            for u in e.grades():
                assert u == Composition((v[0] + 1, v[1] - 1, v[2] - 1, v[3] + 1))
            fo = apply_F(1, k, f)
            for u in fo.grades():
                assert u == Composition((v[0] - 1, v[1] + 1, v[2] + 1, v[3] - 1))
            for out in (e, fo):
                assert validate(out)
                for _, g in out.items():
                    assert g.den_factors() == []
            b = apply_Bn(k, f)
            assert b.grades() in ([v], [])
            assert validate(b)


def test_apply_K_examples():
    f = one((2, 0, 0, 2))
    assert apply_K(1, f) == f.scale(Q(-2, 2))
    g = monomial_symmetrization((1, 1, 1, 1), (1, 0))
    assert apply_K(2, g) == g.scale(-Q(1, 2))
    for _, h in spanning_set(2, 2):
        assert apply_K(1, apply_K(3, h)) == h


def test_k_eigen():
    assert k_eigen(1, Composition((2, 0, 0, 2))) == Q(-2, 2)
    assert k_eigen(3, Composition((2, 0, 0, 2))) == Q(2, 2)
    assert k_eigen(2, Composition((2, 0, 0, 2))) == -Q(1, 2)


def test_theta_coeff_examples():
    qmq = Q(1, 1) - Q(-1, 1)
    assert theta_coeff(1, (1, 1), 0) == 1 / qmq
    x1 = X(1, 1)
    assert theta_coeff(1, (1, 1), 1) == x1 - Q(2, 1) / x1
    for k in (1, 2, 3):
        assert theta_coeff(1, (0, 0, 1, 1, 0, 0), k).is_zero()
    with pytest.raises(ValueError):
        theta_coeff(1, (1, 1), -1)


def test_theta_check_examples():
    v = (1, 1)
    qmq = Q(1, 1) - Q(-1, 1)
    assert theta_check_coeff(v, 0) == 1 / qmq
    assert theta_check_coeff(v, 1) == theta_coeff(1, v, 1)
    C = Q(2, 1)
    assert theta_check_coeff(v, 2) == theta_orig_series(v, 2)[2] / qmq + Q(1, 1) * C


@pytest.mark.parametrize("v", [(1, 1), (2, 2), (1, 0, 0, 1), (1, 1, 1, 1), (0, 2, 2, 0)])
def test_th2_series_identity(v):
    v = Composition(v)
    K = 6
    chk = [theta_check_coeff(v, k) for k in range(K + 1)]
    lhs = series_mul(th2_factor(v.n, v.d, K), chk, K)
    qmq = Q(1, v.d) - Q(-1, v.d)
    rhs = [c / qmq for c in theta_orig_series(v, K)]
    assert lhs == rhs


def test_h_coeff_examples():
    x1, q = X(1, 1), Q(1, 1)
    assert h_coeff(1, (1, 1), 1) == x1 - q ** 2 / x1
    assert h_coeff(1, (1, 1), 2) == (q + 1 / q) * Fraction(1, 2) * (x1 ** 2 - q ** 4 / x1 ** 2)
    assert h_coeff(1, (0, 0, 1, 1, 0, 0), 2).is_zero()
    with pytest.raises(ValueError):
        h_coeff(1, (1, 1), 0)


@pytest.mark.parametrize("v", [(1, 1), (2, 2), (1, 0, 0, 1), (1, 1, 1, 1), (2, 0, 0, 2)])
def test_exp_of_h_reproduces_theta(v):
    v = Composition(v)
    K = 3
    qmq = Q(1, v.d) - Q(-1, v.d)
    for i in range(1, len(v)):
        a = [RatFun(0, d=v.d)] + [h_coeff(i, v, k) * qmq for k in range(1, K + 1)]
        assert exp_series(a, K, v.d) == theta_series(i, v, K)


def test_apply_Iv_examples():
    for _, f in spanning_set(2, 2):
        (u, _), = f.items()
        for v in enum_compositions(2, 2):
            got = apply_Iv(v, f)
            assert elem_eq(got, f if u == v else ModuleElement(2, 2))
            assert apply_Iv(v, got) == got


def test_apply_Iv_commutes():
    f = monomial_symmetrization((1, 1, 1, 1), (1, -1)) + monomial_symmetrization((2, 0, 0, 2), (0, 1))
    for v in enum_compositions(2, 2):
        assert apply_Iv(v, apply_Bn(1, f)) == apply_Bn(1, apply_Iv(v, f))
        assert apply_Iv(v, apply_Theta(1, 2, f)) == apply_Theta(1, 2, apply_Iv(v, f))


def test_series_coeff_table():
    n = 2
    assert series_coeff(1, 3, n) == ("E", 1, 3, 3)
    assert series_coeff(2, 3, n) == ("Bn", 2, 3, 6)
    kind, i, mode, qexp = series_coeff(3, 2, n)
    assert (kind, i, mode) == ("F", 1, -2)
    with pytest.raises(ValueError):
        series_coeff(4, 0, n)
    assert DEFAULT_CONVENTION.twist(1) == 1
