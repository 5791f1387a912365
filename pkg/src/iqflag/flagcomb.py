"""Compositions, 180-degree symmetric matrices, Bruhat order and orbit composition."""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterator, Sequence

__all__ = [
    "Composition",
    "ThetaMatrix",
    "enum_compositions",
    "enum_matrices",
    "ro_co",
    "bruhat_leq",
    "enum_triples",
    "compose",
    "compose_brute",
    "compose_closed_form",
    "ell",
    "decompose",
    "e_theta",
    "compose_chain",
    "candidate_set",
    "generator_shape",
    "t13",
]


class Composition(tuple):
    """v = (v_1..v_N) with v_i = v_{N+1-i}; the first n entries sum to d."""

    def __new__(cls, v: Sequence[int]):
        v = tuple(int(t) for t in v)
        N = len(v)
        if N == 0 or N % 2:
            raise ValueError("composition length must be even and positive")
        if any(t < 0 for t in v) or any(v[i] != v[N - 1 - i] for i in range(N)):
            raise ValueError(f"not a symmetric composition: {v}")
        return super().__new__(cls, v)

    @property
    def n(self) -> int:
        return len(self) // 2

    @property
    def d(self) -> int:
        return sum(self[: self.n])

    def partial(self, i: int) -> int:
        """v-bar_i = v_1 + ... + v_i (1-based, v-bar_0 = 0)."""
        return sum(self[:i])

    def block(self, i: int) -> range:
        """[v]_i as a range of 1-based letters."""
        s = self.partial(i - 1)
        return range(s + 1, s + self[i - 1] + 1)

    def blocks(self) -> list[range]:
        """[v]^c: the first n intervals, partitioning {1..d}."""
        return [self.block(i) for i in range(1, self.n + 1)]

    def shifted(self, i: int, delta: int) -> "Composition | None":
        """v + delta*(e_i + e_{N+1-i}) when that stays nonnegative, else None."""
        w = list(self)
        w[i - 1] += delta
        w[len(w) - i] += delta
        if w[i - 1] < 0:
            return None
        return Composition(w)


def enum_compositions(n: int, d: int) -> list[Composition]:
    out = []
    for head in itertools.product(range(d + 1), repeat=n):
        if sum(head) == d:
            out.append(Composition(head + head[::-1]))
    return sorted(out)


class ThetaMatrix(tuple):
    """N x N nonnegative integer matrix fixed by the 180-degree rotation."""

    def __new__(cls, a: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(t) for t in r) for r in a)
        N = len(rows)
        if N == 0 or N % 2 or any(len(r) != N for r in rows):
            raise ValueError("matrix must be square of even size")
        for i in range(N):
            for j in range(N):
                if rows[i][j] < 0 or rows[i][j] != rows[N - 1 - i][N - 1 - j]:
                    raise ValueError("matrix is not a symmetric nonnegative matrix")
        return super().__new__(cls, rows)

    @property
    def N(self) -> int:
        return len(self)

    @property
    def n(self) -> int:
        return len(self) // 2

    @property
    def d(self) -> int:
        return sum(map(sum, self)) // 2

    def __add__(self, other):
        return ThetaMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self, other)])

    def scaled_add(self, other: "ThetaMatrix", c: int) -> "ThetaMatrix":
        return ThetaMatrix([[a + c * b for a, b in zip(r, s)] for r, s in zip(self, other)])

    def is_diagonal(self) -> bool:
        return all(self[i][j] == 0 for i in range(self.N) for j in range(self.N) if i != j)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "a": [list(r) for r in self]}

    @classmethod
    def from_json(cls, data: dict) -> "ThetaMatrix":
        m = cls(data["a"])
        if "n" in data and int(data["n"]) != m.n:
            raise ValueError("n does not match the matrix size")
        if "d" in data and int(data["d"]) != m.d:
            raise ValueError("d does not match the matrix entries")
        return m

    @classmethod
    def diag(cls, v: Sequence[int]) -> "ThetaMatrix":
        N = len(v)
        return cls([[v[i] if i == j else 0 for j in range(N)] for i in range(N)])


def _raw_e_theta(N: int, i: int, j: int) -> list[list[int]]:
    m = [[0] * N for _ in range(N)]
    m[i - 1][j - 1] += 1
    m[N - i][N - j] += 1
    return m


def e_theta(N: int, i: int, j: int, v: Sequence[int] | None = None, a: int = 1) -> ThetaMatrix:
    """E^theta_{ij}(v, a) = diag(v) + a (E_ij + E_{N+1-i,N+1-j})."""
    base = [[0] * N for _ in range(N)] if v is None else [list(r) for r in ThetaMatrix.diag(v)]
    e = _raw_e_theta(N, i, j)
    return ThetaMatrix([[base[r][c] + a * e[r][c] for c in range(N)] for r in range(N)])


def ro_co(A: ThetaMatrix) -> tuple[Composition, Composition]:
    ro = [sum(r) for r in A]
    co = [sum(A[i][j] for i in range(A.N)) for j in range(A.N)]
    return Composition(ro), Composition(co)


def _corner_sums(A: ThetaMatrix) -> list[int]:
    N = A.N
    out = []
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            out.append(sum(A[r][s] for r in range(i) for s in range(j - 1, N)))
    return out


def bruhat_leq(A: ThetaMatrix, B: ThetaMatrix) -> bool:
    if A.N != B.N or ro_co(A) != ro_co(B):
        return False
    return all(x <= y for x, y in zip(_corner_sums(A), _corner_sums(B)))


def _vectors(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _vectors(total - first, parts - 1):
            yield (first,) + rest


def _tables(rows: Sequence[int], cols: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Nonnegative integer tables with given row and column sums (backtracking)."""
    if not rows:
        if all(c == 0 for c in cols):
            yield []
        return
    for r in _vectors(rows[0], len(cols)):
        if all(x <= c for x, c in zip(r, cols)):
            rest = [c - x for c, x in zip(cols, r)]
            for tail in _tables(rows[1:], rest):
                yield [r] + tail


def enum_triples(A: ThetaMatrix, B: ThetaMatrix) -> list[list[list[list[int]]]]:
    """All symmetric 3-arrays t with sum_k t_ijk = a_ij and sum_i t_ijk = b_jk.

    For each middle index j the slice (t_ijk)_{i,k} is a table with row sums
    a_{.j} and column sums b_{j.}; the slices for j > n are the rotations of
    those for j <= n.
    """
    if A.N != B.N or ro_co(A)[1] != ro_co(B)[0]:
        return []
    N, n = A.N, A.n
    per_j = []
    for j in range(n):
        rows = [A[i][j] for i in range(N)]
        cols = [B[j][k] for k in range(N)]
        per_j.append(list(_tables(rows, cols)))
    out = []
    for choice in itertools.product(*per_j):
        t = [[[0] * N for _ in range(N)] for _ in range(N)]
        for j, tab in enumerate(choice):
            for i in range(N):
                for k in range(N):
                    t[i][j][k] = tab[i][k]
                    t[N - 1 - i][N - 1 - j][N - 1 - k] = tab[i][k]
        out.append(t)
    return out


def t13(t) -> ThetaMatrix:
    N = len(t)
    return ThetaMatrix([[sum(t[i][j][k] for j in range(N)) for k in range(N)] for i in range(N)])


def candidate_set(A: ThetaMatrix, B: ThetaMatrix) -> list[ThetaMatrix]:
    """Xi_d(A, B) = {T_13}, deduplicated and sorted."""
    return sorted({t13(t) for t in enum_triples(A, B)})


def compose_brute(A: ThetaMatrix, B: ThetaMatrix) -> ThetaMatrix:
    cands = candidate_set(A, B)
    if not cands:
        raise ValueError("no 3-arrays with the given marginals (co(A) != ro(B)?)")
    tops = [C for C in cands if all(bruhat_leq(D, C) for D in cands)]
    if len(tops) != 1:
        raise RuntimeError("no unique maximum among the T_13 candidates")
    return tops[0]


def generator_shape(A: ThetaMatrix) -> tuple[int, int, list[int]] | None:
    """If A = E^theta_{h,h+1}(v, a) with a >= 1, return (h, a, v)."""
    N = A.N
    off = [(i, j) for i in range(N) for j in range(N) if i != j and A[i][j]]
    for h in range(1, N):
        e = _raw_e_theta(N, h, h + 1)
        cells = {(i, j) for i in range(N) for j in range(N) if i != j and e[i][j]}
        if set(off) == cells:
            a = A[h - 1][h]
            if all(A[i][j] == a for i, j in cells):
                return h, a, [A[i][i] for i in range(N)]
    return None


def compose_closed_form(A: ThetaMatrix, B: ThetaMatrix) -> ThetaMatrix | None:
    """B + a(E^theta_{hl} - E^theta_{h+1,l}) when A = E^theta_{h,h+1}(v,a) and b_{h+1,l} >= a."""
    if ro_co(A)[1] != ro_co(B)[0]:
        return None
    g = generator_shape(A)
    if g is None:
        return None
    h, a, _ = g
    N = A.N
    row = B[h]
    nz = [i for i in range(N) if row[i]]
    if not nz:
        return None
    l = nz[-1] + 1
    if row[l - 1] < a:
        return None
    e1 = _raw_e_theta(N, h, l)
    e2 = _raw_e_theta(N, h + 1, l)
    new = [[B[r][c] + a * (e1[r][c] - e2[r][c]) for c in range(N)] for r in range(N)]
    if any(x < 0 for r in new for x in r):
        return None
    return ThetaMatrix(new)


def compose(A: ThetaMatrix, B: ThetaMatrix) -> ThetaMatrix:
    if A.N != B.N or ro_co(A)[1] != ro_co(B)[0]:
        raise ValueError("co(A) != ro(B)")
    if A.is_diagonal():
        return B
    c = compose_closed_form(A, B)
    if c is not None:
        return c
    return compose_brute(A, B)


def ell(C: ThetaMatrix) -> int:
    N = C.N
    return sum(comb(j - i + 1, 2) * C[i][j] for i in range(N) for j in range(i + 1, N))


def _rightlex_max(C: ThetaMatrix) -> tuple[int, int]:
    N = C.N
    best = None
    for i in range(N):
        for j in range(i + 1, N):
            if C[i][j]:
                key = (j, i)
                if best is None or key > best:
                    best = key
    j, i = best
    return i + 1, j + 1


def _split_generator(h: int, a: int, v: list[int], N: int) -> list[ThetaMatrix]:
    """E^theta_{h,h+1}(v,a) as E(.,1) o E(.,1) o ... (right-nested)."""
    out = []
    while a > 1:
        u1 = list(v)
        u1[h - 1] += a - 1
        u1[N - h] += a - 1
        out.append(e_theta(N, h, h + 1, u1, 1))
        v = list(v)
        v[h] += 1
        v[N - 1 - h] += 1
        a -= 1
    out.append(e_theta(N, h, h + 1, v, a))
    return out


def decompose(C: ThetaMatrix) -> list[ThetaMatrix]:
    """Factors F_1..F_m with F_1 o (F_2 o (... o F_m)) = C.

    Each factor is diagonal or of the form E^theta_{h,h+1}(., 1).
    """
    if C.is_diagonal():
        return [C]
    g = generator_shape(C)
    if g is not None:
        h, a, v = g
        return _split_generator(h, a, v, C.N)
    N = C.N
    h, l = _rightlex_max(C)
    c = C[h - 1][l - 1]
    B = C.scaled_add(ThetaMatrix(_raw_e_theta(N, h + 1, l)), c).scaled_add(
        ThetaMatrix(_raw_e_theta(N, h, l)), -c
    )
    ro = ro_co(C)[0]
    u = list(ro)
    u[h - 1] -= c
    u[N - h] -= c
    if min(u) < 0:
        raise RuntimeError("decomposition step left the nonnegative cone")
    return _split_generator(h, c, u, N) + decompose(B)


def compose_chain(factors: Sequence[ThetaMatrix]) -> ThetaMatrix:
    out = factors[-1]
    for F in reversed(factors[:-1]):
        out = compose(F, out)
    return out


def enum_matrices(n: int, d: int) -> list[ThetaMatrix]:
    """All of Xi_d for the given n (brute force; intended for small d)."""
    N = 2 * n
    cells = []
    seen = set()
    for i in range(N):
        for j in range(N):
            m = (N - 1 - i, N - 1 - j)
            if (i, j) not in seen:
                seen.add((i, j))
                seen.add(m)
                cells.append((i, j))
    out = []

    def rec(idx: int, left: int, a):
        if idx == len(cells):
            if left == 0:
                out.append(ThetaMatrix(a))
            return
        i, j = cells[idx]
        for x in range(left + 1):
            a[i][j] = x
            a[N - 1 - i][N - 1 - j] = x
            rec(idx + 1, left - x, a)
        a[i][j] = 0
        a[N - 1 - i][N - 1 - j] = 0

    rec(0, d, [[0] * N for _ in range(N)])
    return sorted(out)
