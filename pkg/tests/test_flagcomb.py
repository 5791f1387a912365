import itertools

import pytest

from iqflag.flagcomb import (
    Composition,
    ThetaMatrix,
    bruhat_leq,
    candidate_set,
    compose,
    compose_brute,
    compose_chain,
    compose_closed_form,
    decompose,
    e_theta,
    ell,
    enum_compositions,
    enum_matrices,
    enum_triples,
    generator_shape,
    ro_co,
    t13,
)


def M(rows):
    return ThetaMatrix(rows)


def test_enum_compositions():
    assert enum_compositions(1, 1) == [(1, 1)]
    assert enum_compositions(2, 1) == [(0, 1, 1, 0), (1, 0, 0, 1)]
    assert enum_compositions(2, 2) == [(0, 2, 2, 0), (1, 1, 1, 1), (2, 0, 0, 2)]


def test_composition_blocks():
    v = Composition((2, 1, 1, 2))
    assert v.d == 3 and v.n == 2
    assert list(v.block(1)) == [1, 2] and list(v.block(2)) == [3]


def test_ro_co():
    v = (1, 1, 1, 1)
    assert ro_co(ThetaMatrix.diag(v)) == (v, v)
    A = e_theta(4, 1, 2, (0, 0, 0, 0), 1)
    assert ro_co(A) == ((1, 0, 0, 1), (0, 1, 1, 0))
    for d in range(1, 4):
        for a in range(d + 1):
            assert ro_co(M([[d - a, a], [a, d - a]])) == ((d, d), (d, d))


def test_matrix_invariants():
    with pytest.raises(ValueError):
        ThetaMatrix([[1, 0], [1, 1]])
    A = M([[1, 1], [1, 1]])
    assert sum(map(sum, A)) == 2 * A.d


def test_bruhat_examples():
    v = [0, 0, 0, 0]
    G = e_theta(4, 2, 3, v, 1)
    D = ThetaMatrix.diag([0, 1, 1, 0])
    assert bruhat_leq(G, G)
    assert bruhat_leq(D, G) and not bruhat_leq(G, D)
    assert not bruhat_leq(e_theta(4, 1, 2, v, 1), e_theta(4, 2, 1, v, 1))


@pytest.mark.parametrize("n,d", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_bruhat_partial_order(n, d):
    mats = enum_matrices(n, d)
    classes = {}
    for A in mats:
        classes.setdefault(ro_co(A), []).append(A)
    for group in classes.values():
        for A, B in itertools.product(group, repeat=2):
            if bruhat_leq(A, B) and bruhat_leq(B, A):
                assert A == B
        for A, B, C in itertools.product(group, repeat=3):
            if bruhat_leq(A, B) and bruhat_leq(B, C):
                assert bruhat_leq(A, C)


def test_enum_triples_examples():
    v = (1, 1)
    D = ThetaMatrix.diag(v)
    ts = enum_triples(D, D)
    assert len(ts) == 1 and t13(ts[0]) == D
    assert enum_triples(e_theta(4, 1, 2, (0, 0, 0, 0)), e_theta(4, 1, 2, (0, 0, 0, 0))) == []


@pytest.mark.parametrize("d", [2, 3, 4])
def test_rank_one_candidates_keep_parity(d):
    # mirrored arrays with N = 2 force c_11 = d mod 2, so the A-shape never appears
    A = M([[d - 1, 1], [1, d - 1]])
    assert set(candidate_set(A, A)) == {ThetaMatrix.diag((d, d)), M([[d - 2, 2], [2, d - 2]])}


def test_three_array_total():
    A = M([[1, 1], [1, 1]])
    for t in enum_triples(A, A):
        assert sum(x for plane in t for row in plane for x in row) == 2 * A.d


def test_compose_examples():
    B = M([[2, 1], [1, 2]])
    assert compose(ThetaMatrix.diag((3, 3)), B) == B
    for d in (2, 3, 4):
        for a in range(1, d):
            A = M([[d - a, a], [a, d - a]])
            got = compose(A, M([[d - 1, 1], [1, d - 1]]))
            assert got == M([[d - a - 1, a + 1], [a + 1, d - a - 1]])
    with pytest.raises(ValueError):
        compose(e_theta(4, 1, 2, (0, 0, 0, 0)), e_theta(4, 1, 2, (0, 0, 0, 0)))


@pytest.mark.parametrize("n,d", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)])
def test_compose_is_brute_max(n, d):
    mats = enum_matrices(n, d)
    for A, B in itertools.product(mats, repeat=2):
        if ro_co(A)[1] != ro_co(B)[0]:
            continue
        C = compose(A, B)
        cands = candidate_set(A, B)
        assert C in cands
        assert all(bruhat_leq(X, C) for X in cands)
        closed = compose_closed_form(A, B)
        if closed is not None:
            assert closed == compose_brute(A, B)


def test_monotonicity_witness():
    # the array model breaks order monotonicity already at n = 2, d = 1
    A = e_theta(4, 2, 3, (0, 0, 0, 0), 1)
    B = e_theta(4, 2, 4, (0, 0, 0, 0), 1)
    B2 = e_theta(4, 2, 1, (0, 0, 0, 0), 1)
    assert bruhat_leq(B2, B) and B2 != B
    assert compose(A, B) == B2
    assert compose(A, B2) == B
    assert not bruhat_leq(compose(A, B2), compose(A, B))


def test_ell_examples():
    assert ell(ThetaMatrix.diag((1, 1, 1, 1))) == 0
    assert ell(e_theta(4, 1, 2, (0, 0, 0, 0), 1)) == 1
    m = [[0] * 4 for _ in range(4)]
    m[0][2] = m[3][1] = 1
    assert ell(M(m)) == 3


def test_decompose_examples():
    D = ThetaMatrix.diag((1, 1, 1, 1))
    assert decompose(D) == [D]
    G = e_theta(4, 1, 2, (0, 0, 0, 0), 1)
    assert decompose(G) == [G]
    m = [[0] * 4 for _ in range(4)]
    m[0][2] = m[3][1] = 1
    C = M(m)
    fs = decompose(C)
    assert len(fs) == 2
    assert all(generator_shape(F) is not None for F in fs)
    assert compose_chain(fs) == C


@pytest.mark.parametrize("n,d", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)])
def test_decompose_reproduces(n, d):
    for C in enum_matrices(n, d):
        fs = decompose(C)
        for F in fs:
            g = generator_shape(F)
            assert F.is_diagonal() or (g is not None and g[1] == 1)
        assert compose_chain(fs) == C


def test_json_round_trip():
    for C in enum_matrices(2, 2):
        assert ThetaMatrix.from_json(C.to_json()) == C
