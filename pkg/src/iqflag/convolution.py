"""Pushforward formulas on orbit classes, used as an independent check of the operators.

A generator orbit A = E^theta_{h,h+1}(u, 1) is read as E (h < n), Bn (h = n)
or F at index N - h (h > n).  Its pushforward acts by

    f  |->  sum over sigma in W_ro / W_A of
            sigma( prod_T (1 - q^2 e^mu) * p2^* f * cls / prod_T (1 - e^-mu) )

where T lists the characters of the relative tangent space and W_A is the
parabolic of the set partition attached to A.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flagcomb import Composition, ThetaMatrix, e_theta, generator_shape, ro_co
from .iqops import apply_Bn, apply_E, apply_F
from .repmodule import ModuleElement
from .symalg import ParabolicSpec, RatFun, SignedPerm, XLaurent, coset_reps, rsum

__all__ = [
    "TangentData",
    "OrbitClass",
    "OracleReport",
    "a_partition",
    "generator_matrix",
    "tangent_data",
    "kclass",
    "pushforward",
    "rank_one_convolve",
    "rank_one_kernel",
    "verify_action_oracle",
]


@dataclass(frozen=True)
class TangentData:
    """Characters of T_{p1}, each an exponent vector in x_1..x_d."""

    chars: tuple[tuple[int, ...], ...]

    def det_dual(self, d: int) -> XLaurent:
        e = [0] * d
        for c in self.chars:
            for t, a in enumerate(c):
                e[t] -= a
        return XLaurent.monomial(0, e)

    def lambda_q2(self, d: int) -> RatFun:
        out = RatFun(1, d=d)
        for c in self.chars:
            out = out * RatFun(XLaurent.const(1, d) - XLaurent.monomial(2, c))
        return out

    def lambda_dual(self, d: int) -> RatFun:
        out = RatFun(1, d=d)
        for c in self.chars:
            out = out * RatFun(XLaurent.const(1, d) - XLaurent.monomial(0, [-a for a in c]))
        return out


@dataclass(frozen=True)
class OrbitClass:
    matrix: ThetaMatrix
    elem: RatFun  # scalar normalization included


@dataclass
class OracleReport:
    kind: str
    i: int
    v: Composition
    k: int
    vector: str
    passed: bool
    witness: ModuleElement | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "i": self.i,
            "v": list(self.v),
            "k": self.k,
            "vector": self.vector,
            "pass": self.passed,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def a_partition(A: ThetaMatrix) -> ParabolicSpec:
    """Intervals of sizes a_{rc}, read row by row over the upper half."""
    blocks, start = [], 1
    for r in range(A.n):
        for c in range(A.N):
            m = A[r][c]
            if m:
                blocks.append(list(range(start, start + m)))
                start += m
    return ParabolicSpec(blocks)


def _kind_of(A: ThetaMatrix) -> tuple[str, int]:
    if A.is_diagonal():
        return "diag", 0
    g = generator_shape(A)
    if g is None or g[1] != 1:
        raise ValueError("pushforward supports diagonal and E^theta_{h,h+1}(v,1) matrices only")
    h, n = g[0], A.n
    if h < n:
        return "E", h
    if h == n:
        return "Bn", n
    return "F", A.N - h


def generator_matrix(kind: str, i: int, v: Composition) -> ThetaMatrix:
    """The generator orbit whose row grade is the target v."""
    v = Composition(v)
    N, n = len(v), v.n
    u = list(v)
    if kind == "E":
        h = i
        u[i - 1] -= 1
        u[N - i] -= 1
    elif kind == "F":
        h = N - i
        u[i] -= 1
        u[N - 1 - i] -= 1
    elif kind == "Bn":
        h = n
        u[n - 1] -= 1
        u[n] -= 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if min(u) < 0:
        raise ValueError(f"no {kind}-orbit with row grade {tuple(v)}")
    return e_theta(N, h, h + 1, u, 1)


def tangent_data(A: ThetaMatrix) -> TangentData:
    kind, i = _kind_of(A)
    ro, _ = ro_co(A)
    d = ro.d

    def ch(pos: dict) -> tuple[int, ...]:
        e = [0] * d
        for t, a in pos.items():
            e[t - 1] += a
        return tuple(e)

    if kind == "diag":
        return TangentData(())
    if kind == "E":
        s = ro.partial(i)
        return TangentData(tuple(ch({s: 1, t: -1}) for t in ro.block(i) if t != s))
    if kind == "F":
        s = ro.partial(i) + 1
        return TangentData(tuple(ch({t: 1, s: -1}) for t in ro.block(i + 1) if t != s))
    s = d
    chars = [ch({s: 1, t: -1}) for t in ro.block(i) if t != s]
    chars.append(ch({s: 2}))
    return TangentData(tuple(chars))


def _line_var(kind: str, i: int, v: Composition) -> int:
    return v.partial(i) + 1 if kind == "F" else (v.d if kind == "Bn" else v.partial(i))


def kclass(kind: str, i: int, v, k: int) -> OrbitClass:
    """Det T* times the k-th power of the tautological line, with its sign/q normalization."""
    v = Composition(v)
    n, d = v.n, v.d
    if kind in ("E", "F") and not 1 <= i <= n - 1:
        raise ValueError(f"{kind} index out of range")
    if kind == "Bn" and i != n:
        raise ValueError("Bn lives at node n")
    A = generator_matrix(kind, i, v)
    T = tangent_data(A)
    size = {"E": v[i - 1] - 1, "F": v[i] - 1, "Bn": v[n - 1]}[kind]
    scalar = RatFun(XLaurent.qpow(-size, d, (-1) ** size))
    line = XLaurent.var(_line_var(kind, i, v), d, k)
    return OrbitClass(A, RatFun(T.det_dual(d) * line) * scalar)


def pushforward(A: ThetaMatrix, cls: OrbitClass, f: ModuleElement) -> ModuleElement:
    """Action of the class cls supported on the orbit A on f (grade co(A) only)."""
    if cls.matrix != A:
        raise ValueError("class does not live on this orbit")
    ro, co = ro_co(A)
    n, d = f.n, f.d
    src = f[co]
    kind, _ = _kind_of(A)
    if kind == "diag":
        return ModuleElement._pruned(n, d, {ro: src * cls.elem})
    T = tangent_data(A)
    pull = src.act(SignedPerm.iota(d, d)) if kind == "Bn" else src
    body = T.lambda_q2(d) * pull * cls.elem / T.lambda_dual(d)
    big = ParabolicSpec(ro.blocks())
    reps = coset_reps(big, a_partition(A), d)
    return ModuleElement._pruned(n, d, {ro: rsum((body.act(w) for w in reps), d)})


def _direct(kind: str, i: int, k: int, g: ModuleElement) -> ModuleElement:
    if kind == "E":
        return apply_E(i, k, g)
    if kind == "F":
        return apply_F(i, k, g)
    return apply_Bn(k, g)


def verify_action_oracle(kind: str, i: int, v, k: int, f: ModuleElement, label: str = "f") -> OracleReport:
    """Pushforward of kclass against the operator, compared on the target grade v."""
    v = Composition(v)
    cls = kclass(kind, i, v, k)
    lhs = pushforward(cls.matrix, cls, f)
    rhs = _direct(kind, i, k, f)
    rhs = ModuleElement._pruned(f.n, f.d, {v: rhs[v]})
    diff = lhs - rhs
    ok = diff.is_zero()
    return OracleReport(kind, i, v, k, label, ok, None if ok else diff)


def rank_one_convolve(a: int, d: int, f: RatFun, g: RatFun) -> RatFun:
    """Convolution for n = 1 of the (d-a, a) class f with the (d-1, 1) class g."""
    if a < 0 or a + 1 > d:
        raise ValueError("need 0 <= a <= d - 1")
    x = [None] + [RatFun(XLaurent.var(j, d)) for j in range(1, d + 1)]
    inner = f
    for j in range(d - a + 1, d + 1):
        inner = inner / x[j]
    if a:
        inner = inner.act(SignedPerm.transposition(d - a, d, d))
    inner = inner.act(SignedPerm.iota(d, d))
    body = g * x[d] ** a * inner
    q2 = RatFun(XLaurent.qpow(2, d))
    for j in range(d - a, d):
        body = body * (1 - q2 * x[d] / x[j]) / (1 - x[d] / x[j])
    terms = [body.act(SignedPerm.transposition(j, d, d)) if j != d else body for j in range(d - a, d + 1)]
    return rsum(terms, d) * (-1) ** a


def rank_one_kernel(a: int, d: int, h: RatFun | None = None) -> RatFun:
    """sum_j s_{j,d}( h * prod_{d-a <= t < d} (1 - q^2 x_d/x_t)/(1 - x_d/x_t) ) for symmetric h."""
    if a < 0 or a + 1 > d:
        raise ValueError("need 0 <= a <= d - 1")
    h = RatFun(1, d=d) if h is None else h
    x = [None] + [RatFun(XLaurent.var(j, d)) for j in range(1, d + 1)]
    q2 = RatFun(XLaurent.qpow(2, d))
    body = h
    for t in range(d - a, d):
        body = body * (1 - q2 * x[d] / x[t]) / (1 - x[d] / x[t])
    return rsum((body.act(SignedPerm.transposition(j, d, d)) if j != d else body for j in range(d - a, d + 1)), d)
