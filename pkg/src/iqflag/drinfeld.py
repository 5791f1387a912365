"""Relation catalog of the variant Drinfeld presentation and a cell-by-cell checker.

A relation between generating series is checked one coefficient (cell) at a
time.  Each side of a cell is an *expression*: a list of (scalar, word)
pairs, where a word is a tuple of atoms applied right to left:

    ("B", node, k)   z^k coefficient of the current B_node(z), twist included
    ("K", node)      the Cartan element
    ("T", node, k)   z^k coefficient of the normalized series Theta_node(z)
    ("To", node, k)  node-n coefficient of the original presentation's series

Delta(zw) = sum over all integers k of C^k (zw)^k is never expanded.  It is
only ever multiplied by P(z, w) Y(s), with P a Laurent polynomial and Y a
power series in a single variable s; the z^a w^b coefficient of
Delta(zw) u^i s^j Y(s), u being the other variable, is C^{e_u - i} Y_m with
m = (e_s - j) - (e_u - i).

The two relations whose right side carries a pole along z = w
(BBii, and Serre1 along w1 = w2) are checked after multiplying both sides by
that linear factor.  Read on the support of Delta, the right side is a
difference of two expansions of the same rational function.  That is a
finite sum of delta functions, which no cellwise substitution rule
reproduces, while the cleared form has only polynomial prefactors.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .flagcomb import Composition
from .iqops import (
    DEFAULT_CONVENTION,
    SeriesConvention,
    cartan,
    combine_terms,
    k_eigen,
    op_terms,
    series_coeff,
    tau,
    theta_check_from,
    theta_orig_series,
    theta_series,
)
from .repmodule import ModuleElement, spanning_set
from .symalg import RatFun, XLaurent, rsum

__all__ = [
    "RelationId",
    "CheckReport",
    "relation_catalog",
    "cells_for",
    "lhs_coeff",
    "rhs_coeff",
    "Evaluator",
    "check_relation",
    "run_suite",
    "summarize",
    "default_jobs",
    "TAGS",
    "NODE_N_BINDINGS",
]

TAGS = ("KK", "ThTh", "KB", "BTh", "Btaui", "BB0", "BBii", "Serre0", "Serre1")

# how ("T", n, k) is evaluated
NODE_N_BINDINGS = ("check", "hat", "check-of-hat")


@dataclass(frozen=True, order=True)
class RelationId:
    tag: str
    i: int
    j: int = 0
    form: str = "variant"  # "original": BBii / Serre1 with polynomial prefactors

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown relation tag {self.tag!r}")
        if self.form not in ("variant", "original"):
            raise ValueError(f"unknown form {self.form!r}")

    def label(self) -> str:
        s = f"{self.tag}({self.i},{self.j})" if self.j else f"{self.tag}({self.i})"
        return s + ("[orig]" if self.form == "original" else "")


@dataclass
class CheckReport:
    rel: RelationId
    cell: tuple[int, ...]
    vector: str
    passed: bool
    witness: ModuleElement | None = None

    def to_json(self) -> dict:
        return {
            "relation": self.rel.tag,
            "i": self.rel.i,
            "j": self.rel.j,
            "form": self.rel.form,
            "cell": list(self.cell),
            "vector": self.vector,
            "pass": self.passed,
            "witness": None if self.witness is None else self.witness.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, n: int, d: int) -> "CheckReport":
        w = data.get("witness")
        return cls(
            RelationId(data["relation"], data["i"], data["j"], data.get("form", "variant")),
            tuple(data["cell"]),
            data["vector"],
            bool(data["pass"]),
            None if w is None else ModuleElement.from_json(w, n, d),
        )


def relation_catalog(n: int, original_forms: bool = False) -> list[RelationId]:
    """Every (tag, i, j) instance for rank n, in a fixed order."""
    if n < 1:
        raise ValueError("n must be positive")
    nodes = range(1, 2 * n)
    out = []
    for i in nodes:
        for j in nodes:
            out.append(RelationId("KK", i, j))
            if i <= j:
                out.append(RelationId("ThTh", i, j))
            out.append(RelationId("KB", i, j))
            out.append(RelationId("BTh", i, j))
            if j != tau(i, n):
                out.append(RelationId("BB0", i, j))
            if cartan(i, j) == -1 and j != tau(i, n) and i != tau(i, n):
                out.append(RelationId("Serre0", i, j))
            if i == n and cartan(i, j) == -1:
                out.append(RelationId("Serre1", i, j))
                if original_forms:
                    out.append(RelationId("Serre1", i, j, "original"))
        if i != n:
            out.append(RelationId("Btaui", i))
    out.append(RelationId("BBii", n))
    if original_forms:
        out.append(RelationId("BBii", n, 0, "original"))
    return sorted(out, key=lambda r: (TAGS.index(r.tag), r))


def cells_for(rel: RelationId, window: int) -> list[tuple[int, ...]]:
    rng = range(-window, window + 1)
    if rel.tag in ("KK", "KB"):
        return [(b,) for b in rng]
    if rel.tag in ("Serre0", "Serre1"):
        return list(itertools.product(rng, repeat=3))
    return list(itertools.product(rng, repeat=2))


# --- scalars ----------------------------------------------------------------


class _Scalars:
    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self._cache: dict[int, RatFun] = {}

    def q(self, e: int) -> RatFun:
        r = self._cache.get(e)
        if r is None:
            r = self._cache[e] = RatFun(XLaurent.qpow(e, self.d))
        return r

    @property
    def one(self) -> RatFun:
        return self.q(0)

    @property
    def qmq(self) -> RatFun:
        return self.q(1) - self.q(-1)

    @property
    def q2(self) -> RatFun:
        return self.q(1) + self.q(-1)

    def Cpow(self, e: int) -> RatFun:
        return self.q(2 * self.n * e)


# polynomials in (u, s) as {(eu, es): scalar}
def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (u1, s1), c1 in a.items():
        for (u2, s2), c2 in b.items():
            k = (u1 + u2, s1 + s2)
            out[k] = out[k] + c1 * c2 if k in out else c1 * c2
    return {k: c for k, c in out.items() if not c.is_zero()}


def _lin(cu: RatFun, cs: RatFun) -> dict:
    """cu * u + cs * s"""
    return {(1, 0): cu, (0, 1): cs}


def _delta_term(S: _Scalars, coef: RatFun, P: dict, e_s: int, e_u: int, atom: str,
                node: int, prefix: tuple, suffix: tuple) -> list:
    """Cell (e_s, e_u) of coef * Delta(us) * P(u, s) * Theta(s)."""
    out = []
    for (i, j), c in sorted(P.items()):
        m = (e_s - j) - (e_u - i)
        if m >= 0:
            out.append((coef * c * S.Cpow(e_u - i), prefix + ((atom, node, m),) + suffix))
    return out


def _bth_series(S: _Scalars, c: int, cp: int, amax: int) -> dict[tuple[int, int], RatFun]:
    """z-expansion of (1-q^c z/w)(1-q^{-c'} C zw) / ((1-q^{-c} z/w)(1-q^{c'} C zw))."""
    qC = S.q(cp) * S.Cpow(1)
    factors = [
        {(0, 0): S.one, (1, -1): -S.q(c)},
        {(0, 0): S.one, (1, 1): -(S.q(-cp) * S.Cpow(1))},
        {(k, -k): S.q(-c * k) for k in range(amax + 1)},
        {(k, k): qC ** k for k in range(amax + 1)},
    ]
    out = {(0, 0): S.one}
    for f in factors:
        out = {k: v for k, v in _pmul(out, f).items() if k[0] <= amax}
    return out


# --- the two sides ------------------------------------------------------------


def _serre_sym(S: _Scalars, i: int, j: int, a: int, b: int, c: int) -> list:
    out = []
    for x, y in ((a, b), (b, a)):
        out += [
            (S.one, (("B", i, x), ("B", i, y), ("B", j, c))),
            (-S.q2, (("B", i, x), ("B", j, c), ("B", i, y))),
            (S.one, (("B", j, c), ("B", i, x), ("B", i, y))),
        ]
    return out


def _bbii_products(S: _Scalars, i: int, a: int, b: int) -> list:
    """(q^2 z - w) B(z) B(w) + (q^2 w - z) B(w) B(z) at z^a w^b."""
    q2 = S.q(2)
    return [
        (q2, (("B", i, a - 1), ("B", i, b))),
        (-S.one, (("B", i, a), ("B", i, b - 1))),
        (q2, (("B", i, b - 1), ("B", i, a))),
        (-S.one, (("B", i, b), ("B", i, a - 1))),
    ]


def _serre1_products(S: _Scalars, i: int, j: int, a: int, b: int, c: int) -> list:
    """(z - q w1)(z - q w2) S_ij(w1, w2 | z) at w1^a w2^b z^c."""
    q = S.q(1)
    out = []
    for coef, (da, db, dc) in ((S.one, (0, 0, 2)), (-q, (1, 0, 1)), (-q, (0, 1, 1)), (S.q(2), (1, 1, 0))):
        out += [(coef * s, w) for s, w in _serre_sym(S, i, j, a - da, b - db, c - dc)]
    return out


def _neg(expr: list) -> list:
    return [(-c, w) for c, w in expr]


def lhs_coeff(rel: RelationId, cell: tuple[int, ...], n: int, d: int) -> list:
    S = _Scalars(n, d)
    t, i, j = rel.tag, rel.i, rel.j
    if t == "KK":
        (b,) = cell
        out = [(S.one, (("K", i), ("T", j, b)))]
        if b == 0:
            out.append((S.one, (("K", i), ("K", j))))
        return out
    if t == "ThTh":
        a, b = cell
        return [(S.one, (("T", i, a), ("T", j, b)))]
    if t == "KB":
        (b,) = cell
        return [(S.one, (("K", i), ("B", j, b)))]
    if t == "BTh":
        a, b = cell
        return [(S.one, (("B", j, b), ("T", i, a)))]
    if t == "Btaui":
        a, b = cell
        ti = tau(i, n)
        return [(S.one, (("B", i, a), ("B", ti, b))), (-S.one, (("B", ti, b), ("B", i, a)))]
    if t == "BB0":
        a, b = cell
        qc = S.q(cartan(i, j))
        return [
            (qc, (("B", i, a - 1), ("B", j, b))),
            (-S.one, (("B", i, a), ("B", j, b - 1))),
            (qc, (("B", j, b - 1), ("B", i, a))),
            (-S.one, (("B", j, b), ("B", i, a - 1))),
        ]
    if t == "BBii":
        a, b = cell
        if rel.form == "original":
            return _bbii_products(S, i, a, b)
        # times (z - w)
        return _bbii_products(S, i, a - 1, b) + _neg(_bbii_products(S, i, a, b - 1))
    if t == "Serre0":
        return _serre_sym(S, i, j, *cell)
    if t == "Serre1":
        a, b, c = cell
        if rel.form == "original":
            return _serre1_products(S, i, j, a, b, c)
        # times (w1 - w2)
        return _serre1_products(S, i, j, a - 1, b, c) + _neg(_serre1_products(S, i, j, a, b - 1, c))
    raise ValueError(f"unknown relation {t}")


def rhs_coeff(rel: RelationId, cell: tuple[int, ...], n: int, d: int) -> list:
    S = _Scalars(n, d)
    t, i, j = rel.tag, rel.i, rel.j
    if t == "KK":
        (b,) = cell
        out = [(S.one, (("T", j, b), ("K", i)))]
        if b == 0:
            out.append((S.one, (("K", j), ("K", i))))
        return out
    if t == "ThTh":
        a, b = cell
        return [(S.one, (("T", j, b), ("T", i, a)))]
    if t == "KB":
        (b,) = cell
        return [(S.q(cartan(tau(i, n), j) - cartan(i, j)), (("B", j, b), ("K", i)))]
    if t == "BTh":
        a, b = cell
        if a < 0:
            return []
        R = _bth_series(S, cartan(i, j), cartan(tau(i, n), j), a)
        return [(c, (("T", i, a - kz), ("B", j, b - mw))) for (kz, mw), c in sorted(R.items())]
    if t == "Btaui":
        a, b = cell
        ti = tau(i, n)
        inv = S.qmq.inverse()
        out = []
        if a >= b:
            out.append((S.Cpow(b) * inv, (("K", ti), ("T", i, a - b))))
        if b >= a:
            out.append((-S.Cpow(a) * inv, (("K", i), ("T", ti, b - a))))
        return out
    if t in ("BB0", "Serre0"):
        return []
    K = (("K", i),)
    one = S.one
    if t == "BBii":
        a, b = cell
        if rel.form == "original":
            # (z - q^-2 w) Theta(w) + (w - q^-2 z) Theta(z)
            P = _lin(one, -S.q(-2))
            coef = S.qmq.inverse()
            return (_delta_term(S, coef, P, b, a, "To", n, K, ())
                    + _delta_term(S, coef, P, a, b, "To", n, K, ()))
        # (z - q^2 w)(w - q^2 z)(Theta(z) - Theta(w))
        coef = S.q(-2) * S.qmq.inverse()
        Pz = _pmul(_lin(-S.q(2), one), _lin(one, -S.q(2)))  # s = z, u = w
        Pw = _pmul(_lin(one, -S.q(2)), _lin(-S.q(2), one))  # s = w, u = z
        return (_delta_term(S, coef, Pz, a, b, "T", n, K, ())
                + _delta_term(S, -coef, Pw, b, a, "T", n, K, ()))
    if t == "Serre1":
        a, b, c = cell
        suffix = (("B", j, c - 1),)
        if rel.form == "original":
            # Sym (w1 - q^-2 w2) Theta(w2) z B(z)
            P = _lin(one, -S.q(-2))
            return (_delta_term(S, one, P, b, a, "To", n, K, suffix)
                    + _delta_term(S, one, P, a, b, "To", n, K, suffix))
        q, qi = S.q(1), S.q(-1)
        # (q w1 - q^-1 w2)(q^-1 w1 - q w2)(Theta(w2) - Theta(w1)) z B(z)
        P2 = _pmul(_lin(q, -qi), _lin(qi, -q))  # s = w2, u = w1
        P1 = _pmul(_lin(-qi, q), _lin(-q, qi))  # s = w1, u = w2
        return (_delta_term(S, one, P2, b, a, "T", n, K, suffix)
                + _delta_term(S, -one, P1, a, b, "T", n, K, suffix))
    raise ValueError(f"unknown relation {t}")


# --- evaluation ---------------------------------------------------------------


class Evaluator:
    """Applies words to one fixed element, sharing every intermediate result.

    ``node_n`` picks the series behind ("T", n, k): "check" runs the check
    recursion on the original node-n coefficients, "hat" takes the Theta-hat_n
    operator series directly, "check-of-hat" feeds Theta-hat_n through the
    recursion (a deliberately different reading, kept for comparison).
    """

    def __init__(self, f: ModuleElement, conv: SeriesConvention = DEFAULT_CONVENTION,
                 node_n: str = "check"):
        if node_n not in NODE_N_BINDINGS:
            raise ValueError(f"unknown node-n binding {node_n!r}")
        self.n, self.d = f.n, f.d
        self.conv = conv
        self.node_n = node_n
        self.S = _Scalars(self.n, self.d)
        self.memo: dict[tuple, ModuleElement] = {(): f}
        self.terms: dict = {}
        self._ser: dict = {}

    def series(self, atom: str, node: int, v: Composition, k: int) -> RatFun:
        key = (atom, node, v)
        ser = self._ser.get(key)
        if ser is None or len(ser) <= k:
            K = max(k, 8)
            if atom == "To":
                ser = theta_orig_series(v, K)
            elif node != self.n or self.node_n == "hat":
                ser = theta_series(node, v, K)
            else:
                src = theta_orig_series(v, K) if self.node_n == "check" else theta_series(node, v, K)
                qmq = self.S.qmq
                ser = [c * qmq for c in theta_check_from([c / qmq for c in src], self.n, self.d)]
            self._ser[key] = ser
        return ser[k]

    def word(self, w: tuple) -> ModuleElement:
        got = self.memo.get(w)
        if got is not None:
            return got
        inner = self.word(w[1:])
        atom = w[0]
        if inner.is_zero():
            res = inner
        elif atom[0] == "B":
            kind, i, mode, tw = series_coeff(atom[1], atom[2], self.n, self.conv)
            tkey = (w[1:], kind, i)
            terms = self.terms.get(tkey)
            if terms is None:
                terms = self.terms[tkey] = op_terms(kind, i, inner)
            res = combine_terms(terms, mode, self.n, self.d, self.S.q(tw) if tw else None)
        elif atom[0] == "K":
            res = inner.map_grades(lambda v, g: g * k_eigen(atom[1], v))
        elif atom[0] in ("T", "To"):
            if atom[2] < 0:
                res = inner.zero_like()
            else:
                res = inner.map_grades(lambda v, g: g * self.series(atom[0], atom[1], v, atom[2]))
        else:
            raise ValueError(f"unknown atom {atom}")
        self.memo[w] = res
        return res

    def expr(self, terms: list) -> ModuleElement:
        per: dict[Composition, list[RatFun]] = {}
        for c, w in terms:
            for v, g in self.word(w).comps.items():
                per.setdefault(v, []).append(g * c)
        return ModuleElement._pruned(self.n, self.d, {v: rsum(gs, self.d) for v, gs in per.items()})


def _check(ev: Evaluator, rel: RelationId, cell, label: str) -> CheckReport:
    expr = lhs_coeff(rel, cell, ev.n, ev.d) + _neg(rhs_coeff(rel, cell, ev.n, ev.d))
    diff = ev.expr(expr)
    ok = diff.is_zero()
    return CheckReport(rel, tuple(cell), label, ok, None if ok else diff)


def check_relation(rel: RelationId, cell, f: ModuleElement, label: str = "f",
                   conv: SeriesConvention = DEFAULT_CONVENTION, node_n: str = "check") -> CheckReport:
    return _check(Evaluator(f, conv, node_n), rel, cell, label)


def _vector_job(args) -> list[CheckReport]:
    label, f, rels, window, conv, node_n, keep_witness = args
    ev = Evaluator(f, conv, node_n)
    out = []
    for rel in rels:
        for cell in cells_for(rel, window):
            r = _check(ev, rel, cell, label)
            if not keep_witness:
                r.witness = None
            out.append(r)
    return out


def _sort_key(r: CheckReport):
    return (TAGS.index(r.rel.tag), r.rel, r.cell, r.vector)


def run_suite(n: int, d: int, window: int, testset: list | None = None, *,
              tags: list[str] | None = None, original_forms: bool = False, jobs: int = 1,
              conv: SeriesConvention = DEFAULT_CONVENTION, node_n: str = "check",
              relations: list[RelationId] | None = None, keep_witness: bool = True) -> list[CheckReport]:
    """Check every relation instance on every cell and test vector.

    ``testset`` holds ModuleElements or (label, ModuleElement) pairs and
    defaults to the spanning set.  Work is split per vector, so each worker
    shares intermediate words across all relations.
    """
    if window < 0:
        raise ValueError("window must be nonnegative")
    if testset is None:
        testset = spanning_set(n, d)
    testset = [t if isinstance(t, tuple) else (f"vec{k}", t) for k, t in enumerate(testset)]
    rels = relations if relations is not None else relation_catalog(n, original_forms)
    if tags:
        rels = [r for r in rels if r.tag in tags]
    args = [(label, f, rels, window, conv, node_n, keep_witness) for label, f in testset]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_vector_job, args))
    else:
        chunks = [_vector_job(a) for a in args]
    reports = [r for ch in chunks for r in ch]
    reports.sort(key=_sort_key)
    return reports


def summarize(reports: list[CheckReport]) -> dict[str, dict[str, int]]:
    """Pass/fail counts per relation label."""
    out: dict[str, dict[str, int]] = {}
    for r in reports:
        c = out.setdefault(r.rel.label(), {"pass": 0, "fail": 0})
        c["pass" if r.passed else "fail"] += 1
    return out


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("IQFLAG_JOBS", "1")))
    except ValueError:
        return 1
