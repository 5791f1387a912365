"""Operators of the polynomial representation on graded rational functions.

Nodes are labelled 1..N-1 with N = 2n; node n is fixed by tau(i) = N - i.
Nodes below n are realized by E, node n by Bn and nodes above n by F at
the mirrored index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .flagcomb import Composition
from .repmodule import ModuleElement
from .symalg import RatFun, SignedPerm, XLaurent, rsum, series_expand, series_mul, theta

__all__ = [
    "cartan",
    "tau",
    "SeriesConvention",
    "DEFAULT_CONVENTION",
    "series_coeff",
    "apply_E",
    "apply_F",
    "apply_Bn",
    "apply_K",
    "apply_Theta",
    "apply_Iv",
    "op_terms",
    "combine_terms",
    "theta_series",
    "theta_coeff",
    "theta_orig_series",
    "theta_check_from",
    "theta_check_coeff",
    "th2_factor",
    "h_coeff",
    "exp_series",
    "k_eigen",
]


def cartan(i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


def tau(i: int, n: int) -> int:
    return 2 * n - i


def _qp(e: int, d: int) -> RatFun:
    return RatFun(XLaurent.qpow(e, d))


def _x(j: int, d: int, e: int = 1) -> RatFun:
    return RatFun(XLaurent.var(j, d, e))


@dataclass(frozen=True)
class SeriesConvention:
    """z^k coefficient of the current at node i is q^{k * scale_i} times an operator.

    ``scale`` overrides the default exponent i for chosen nodes; used only to
    build deliberately wrong conventions in mutation tests.
    """

    scale: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def twist(self, node: int) -> int:
        for i, s in self.scale:
            if i == node:
                return s
        return node


DEFAULT_CONVENTION = SeriesConvention()


def series_coeff(node: int, k: int, n: int, conv: SeriesConvention = DEFAULT_CONVENTION):
    """(kind, index, mode, q-exponent) realizing the z^k coefficient of B_node(z)."""
    if not 1 <= node <= 2 * n - 1:
        raise ValueError(f"node {node} out of range for n={n}")
    t = k * conv.twist(node)
    if node < n:
        return "E", node, k, t
    if node == n:
        return "Bn", n, k, t
    return "F", 2 * n - node, -k, t


# --- structural data ------------------------------------------------------


def _source_grade(kind: str, i: int, v: Composition) -> Composition | None:
    N = len(v)
    w = list(v)
    if kind == "E":
        w[i - 1] -= 1
        w[i] += 1
        w[N - 1 - i] += 1
        w[N - i] -= 1
    elif kind == "F":
        w[i - 1] += 1
        w[i] -= 1
        w[N - 1 - i] -= 1
        w[N - i] += 1
    if min(w) < 0:
        return None
    return Composition(w)


def _target_grade(kind: str, i: int, src: Composition) -> Composition | None:
    other = "F" if kind == "E" else "E"
    return _source_grade(other, i, src) if kind in ("E", "F") else src


@lru_cache(maxsize=None)
def _weights(kind: str, i: int, v: Composition) -> tuple:
    """Per-term (j, rational weight, signed permutation) for target grade v."""
    d = v.d
    q = _qp(1, d)
    qi = _qp(-1, d)
    out = []
    if kind == "E":
        blk = list(v.block(i))
        last = v.partial(i)
        for j in blk:
            w = RatFun(1, d=d)
            for t in blk:
                if t != j:
                    w = w * theta(1, q * _x(j, d) * _x(t, d, -1))
            out.append((j, w, SignedPerm.transposition(j, last, d)))
    elif kind == "F":
        blk = list(v.block(i + 1))
        first = v.partial(i) + 1
        for j in blk:
            w = RatFun(1, d=d)
            for t in blk:
                if t != j:
                    w = w * theta(1, qi * _x(j, d) * _x(t, d, -1)).inverse()
            out.append((j, w, SignedPerm.transposition(first, j, d)))
    elif kind == "Bn":
        blk = list(v.block(i))
        for j in blk:
            w = theta(1, q * _x(j, d, 2))
            for t in blk:
                if t != j:
                    w = w * theta(1, q * _x(j, d) * _x(t, d, -1))
            out.append((j, w, SignedPerm.iota(j, d)))
    else:
        raise ValueError(kind)
    return tuple(out)


def _check_index(kind: str, i: int, n: int):
    if kind in ("E", "F") and not 1 <= i <= n - 1:
        raise ValueError(f"{kind} index {i} out of range 1..{n - 1}")


def op_terms(kind: str, i: int, f: ModuleElement) -> dict:
    """Mode-independent pieces: target grade -> [(j, weight * w(f_src))]."""
    _check_index(kind, i, f.n)
    out = {}
    for src, g in f.comps.items():
        v = _target_grade(kind, i, src)
        if v is None:
            continue
        out[v] = [(j, w * g.act(s)) for j, w, s in _weights(kind, i, v)]
    return out


def combine_terms(terms: dict, k: int, n: int, d: int, scalar: RatFun | None = None) -> ModuleElement:
    comps = {}
    for v, lst in terms.items():
        f = rsum(((G * _x(j, d, k)) if k else G for j, G in lst), d)
        if scalar is not None:
            f = f * scalar
        comps[v] = f
    return ModuleElement._pruned(n, d, comps)


def apply_E(i: int, k: int, f: ModuleElement) -> ModuleElement:
    return combine_terms(op_terms("E", i, f), k, f.n, f.d)


def apply_F(i: int, k: int, f: ModuleElement) -> ModuleElement:
    return combine_terms(op_terms("F", i, f), k, f.n, f.d)


def apply_Bn(k: int, f: ModuleElement) -> ModuleElement:
    return combine_terms(op_terms("Bn", f.n, f), k, f.n, f.d)


def k_eigen(node: int, v: Composition) -> RatFun:
    n, d = v.n, v.d
    if not 1 <= node <= 2 * n - 1:
        raise ValueError(f"node {node} out of range")
    if node == n:
        return RatFun(XLaurent.qpow(1, d, -1))
    if node < n:
        return _qp(v[node] - v[node - 1], d)
    i = 2 * n - node
    return _qp(v[i - 1] - v[i], d)


def apply_K(i: int, f: ModuleElement) -> ModuleElement:
    return f.map_grades(lambda v, g: g * k_eigen(i, v))


# --- imaginary currents ---------------------------------------------------


def _theta_factor_inv_z(s: int, t: int, d: int):
    """theta_1(q^s / (z x_t)) = (q^{s+1} - x_t z) / (q^s - q x_t z)."""
    xt = XLaurent.var(t, d)
    num = [XLaurent.qpow(s + 1, d), -xt]
    den = [XLaurent.qpow(s, d), -(xt * XLaurent.qpow(1, d))]
    return num, den


def _theta_factor_z(s: int, t: int, d: int):
    """theta_1(q^s z / x_t) = (-x_t + q^{s+1} z) / (-q x_t + q^s z)."""
    xt = XLaurent.var(t, d)
    num = [-xt, XLaurent.qpow(s + 1, d)]
    den = [-(xt * XLaurent.qpow(1, d)), XLaurent.qpow(s, d)]
    return num, den


def _pmul(a: list, b: list) -> list:
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = x * y if out[i + j] is None else out[i + j] + x * y
    return out


def _theta_factors(node: int, v: Composition):
    n, d, N = v.n, v.d, len(v)
    facs = []  # (num, den, inverted?)
    if node < n:
        i = node
        pref = v[i] - v[i - 1]
        facs += [(_theta_factor_inv_z(1 - i, t, d), False) for t in v.block(i)]
        facs += [(_theta_factor_inv_z(-1 - i, t, d), True) for t in v.block(i + 1)]
    elif node == n:
        pref = 0
        facs += [(_theta_factor_inv_z(1 - n, t, d), False) for t in v.block(n)]
        facs += [(_theta_factor_z(1 + n, t, d), False) for t in v.block(n)]
    else:
        i = N - node
        pref = v[i - 1] - v[i]
        facs += [(_theta_factor_z(1 - i + N, t, d), False) for t in v.block(i)]
        facs += [(_theta_factor_z(-1 - i + N, t, d), True) for t in v.block(i + 1)]
    return pref, facs


_series_cache: dict = {}


def theta_series(node: int, v, K: int) -> list[RatFun]:
    """Coefficients 1, s_1, .., s_K of the normalized current at node on grade v."""
    v = Composition(v)
    key = (node, v)
    got = _series_cache.get(key)
    if got is not None and len(got) > K:
        return got[: K + 1]
    d = v.d
    pref, facs = _theta_factors(node, v)
    num = [XLaurent.qpow(pref, d)]
    den = [XLaurent.const(1, d)]
    for (a, b), inv in facs:
        if inv:
            a, b = b, a
        num = _pmul(num, a)
        den = _pmul(den, b)
    K2 = max(K, 8)
    ser = series_expand([RatFun(c) for c in num], [RatFun(c) for c in den], K2)
    _series_cache[key] = ser
    return ser[: K + 1]


def _qmq(d: int) -> RatFun:
    return _qp(1, d) - _qp(-1, d)


def theta_coeff(i: int, v, k: int) -> RatFun:
    """Theta-hat_{i,k} on grade v: z^k coefficient of the current over (q - q^-1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    v = Composition(v)
    return theta_series(i, v, k)[k] / _qmq(v.d)


def th2_factor(n: int, d: int, K: int) -> list[RatFun]:
    """(1 - q^2 C z^2) / (1 - C z^2) with C = q^{2n}, to order K."""
    one = RatFun(1, d=d)
    zero = RatFun(0, d=d)
    C = _qp(2 * n, d)
    return series_expand([one, zero, -(_qp(2, d) * C)], [one, zero, -C], K)


def theta_orig_series(v, K: int) -> list[RatFun]:
    """Normalized node-n current of the original presentation: (1-q^2Cz^2)/(1-Cz^2) times the Theta-hat_n series."""
    v = Composition(v)
    return series_mul(th2_factor(v.n, v.d, K), theta_series(v.n, v, K), K)


def theta_check_from(theta_vals: list[RatFun], n: int, d: int) -> list[RatFun]:
    """Solve the recursion Theta_m = chk_m - sum_a (q^2-1) chk_{m-2a} C^a - [m even] q C^{m/2}."""
    C = _qp(2 * n, d)
    q2m1 = _qp(2, d) - 1
    chk = [RatFun(1, d=d) / _qmq(d)]
    for m in range(1, len(theta_vals)):
        acc = theta_vals[m]
        for a in range(1, (m - 1) // 2 + 1):
            acc = acc + q2m1 * chk[m - 2 * a] * C ** a
        if m % 2 == 0:
            acc = acc + _qp(1, d) * C ** (m // 2)
        chk.append(acc)
    return chk


def theta_check_coeff(v, k: int) -> RatFun:
    """Check-Theta_{n,k}, obtained from the original node-n coefficients by the recursion."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    v = Composition(v)
    orig = theta_orig_series(v, k)
    vals = [c / _qmq(v.d) for c in orig]
    return theta_check_from(vals, v.n, v.d)[k]


def apply_Theta(i: int, k: int, f: ModuleElement, series=None) -> ModuleElement:
    """Multiply each grade by Theta-hat_{i,k}."""
    if k < 0:
        return f.zero_like()
    return f.map_grades(lambda v, g: g * theta_coeff(i, v, k))


def _qint(k: int, d: int) -> RatFun:
    out = RatFun(0, d=d)
    for e in range(k - 1, -k, -2):
        out = out + _qp(e, d)
    return out


def _power_sum(blk, k: int, d: int) -> RatFun:
    out = RatFun(0, d=d)
    for t in blk:
        out = out + _x(t, d, k)
    return out


def h_coeff(i: int, v, k: int) -> RatFun:
    """Closed form of H-hat_{i,k} on grade v."""
    if k < 1:
        raise ValueError("k must be at least 1")
    v = Composition(v)
    n, d, N = v.n, v.d, len(v)
    pre = _qint(k, d) * Fraction(1, k)
    q2k = _qp(2 * k, d)
    if i < n:
        body = _power_sum(v.block(i), k, d) - q2k * _power_sum(v.block(i + 1), k, d)
        return pre * _qp((i - 1) * k, d) * body
    if i == n:
        body = _power_sum(v.block(n), k, d) - q2k * _power_sum(v.block(n), -k, d)
        return pre * _qp((n - 1) * k, d) * body
    j = N - i
    body = _power_sum(v.block(j + 1), -k, d) - q2k * _power_sum(v.block(j), -k, d)
    return pre * _qp((N - j - 1) * k, d) * body


def exp_series(a: list[RatFun], K: int, d: int) -> list[RatFun]:
    """exp of a power series with zero constant term, to order K."""
    out = [RatFun(1, d=d)]
    for k in range(1, K + 1):
        acc = RatFun(0, d=d)
        for j in range(1, k + 1):
            if j < len(a):
                acc = acc + a[j] * out[k - j] * j
        out.append(acc * Fraction(1, k))
    return out


def apply_Iv(v, f: ModuleElement) -> ModuleElement:
    """Apply prod_i prod_{m != v_{i+1}-v_i} (K_i - q^m)/(q^{v_{i+1}-v_i} - q^m)."""
    v = Composition(v)
    n, d = v.n, v.d
    out = f
    for i in range(1, n):
        target = v[i] - v[i - 1]
        for m in range(-d, d + 1):
            if m == target:
                continue
            denom = _qp(target, d) - _qp(m, d)
            out = (apply_K(i, out) - out.scale(_qp(m, d))).scale(denom.inverse())
    return out
