"""Graded elements of the polynomial representation and its localization."""

from __future__ import annotations

import itertools
from typing import Iterator, Mapping

from .flagcomb import Composition, enum_compositions
from .symalg import (
    ParabolicSpec,
    RatFun,
    SignedPerm,
    XLaurent,
    _normalize_factor,
    exact_div,
    ratfun_eq,
    symmetrize,
)

__all__ = [
    "ModuleElement",
    "monomial_symmetrization",
    "validate",
    "elem_eq",
    "spanning_set",
    "allowed_factors",
]


class ModuleElement:
    """Finite family {v: f_v} of rational functions indexed by compositions."""

    __slots__ = ("n", "d", "comps")

    def __init__(self, n: int, d: int, comps: Mapping[Composition, RatFun] | None = None):
        self.n, self.d = n, d
        self.comps: dict[Composition, RatFun] = {}
        for v, f in (comps or {}).items():
            v = Composition(v)
            if len(v) != 2 * n or v.d != d:
                raise ValueError(f"grade {tuple(v)} does not belong to n={n}, d={d}")
            if not f.is_zero():
                self.comps[v] = f

    @classmethod
    def single(cls, v: Composition, f: RatFun) -> "ModuleElement":
        v = Composition(v)
        return cls(v.n, v.d, {v: f})

    def zero_like(self) -> "ModuleElement":
        return ModuleElement(self.n, self.d)

    def is_zero(self) -> bool:
        return not self.comps

    def grades(self) -> list[Composition]:
        return sorted(self.comps)

    def __getitem__(self, v) -> RatFun:
        f = self.comps.get(Composition(v))
        return f if f is not None else RatFun(0, d=self.d)

    def items(self) -> Iterator[tuple[Composition, RatFun]]:
        return iter(sorted(self.comps.items()))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        out = dict(self.comps)
        for v, f in other.comps.items():
            out[v] = out[v] + f if v in out else f
        return ModuleElement._pruned(self.n, self.d, out)

    def __neg__(self):
        return ModuleElement._pruned(self.n, self.d, {v: -f for v, f in self.comps.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def scale(self, c) -> "ModuleElement":
        """Multiply every component by a scalar (int, Fraction or RatFun)."""
        return ModuleElement._pruned(self.n, self.d, {v: f * c for v, f in self.comps.items()})

    def map_grades(self, fn) -> "ModuleElement":
        """Apply fn(v, f) -> RatFun gradewise."""
        return ModuleElement._pruned(self.n, self.d, {v: fn(v, f) for v, f in self.comps.items()})

    @classmethod
    def _pruned(cls, n: int, d: int, comps: dict) -> "ModuleElement":
        e = cls.__new__(cls)
        e.n, e.d = n, d
        e.comps = {v: f for v, f in comps.items() if not f.is_zero()}
        return e

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return elem_eq(self, other)

    __hash__ = None

    def to_json(self) -> dict:
        return {"grades": [{"v": list(v), "f": f.to_json()} for v, f in self.items()]}

    @classmethod
    def from_json(cls, data: dict, n: int, d: int) -> "ModuleElement":
        comps = {}
        for g in data.get("grades", []):
            v = Composition(g["v"])
            comps[v] = comps.get(v, RatFun(0, d=d)) + RatFun.from_json(g["f"], d)
        return cls(n, d, comps)

    def __repr__(self):
        body = ", ".join(f"{tuple(v)}: {f!r}" for v, f in self.items())
        return f"ModuleElement({body})"


def parabolic(v: Composition) -> ParabolicSpec:
    return ParabolicSpec(v.blocks())


def monomial_symmetrization(v, expts) -> ModuleElement:
    """W_{[v]^c}-orbit sum of x^expts in grade v."""
    v = Composition(v)
    d = v.d
    if len(expts) != d:
        raise ValueError("exponent vector length must equal d")
    # stabilizer of the monomial inside each block
    small = []
    for blk in v.blocks():
        groups: dict[int, list[int]] = {}
        for t in blk:
            groups.setdefault(expts[t - 1], []).append(t)
        small.extend(g for g in groups.values() if len(g) > 1)
    mono = RatFun(XLaurent.monomial(0, list(expts)))
    f = symmetrize(parabolic(v), ParabolicSpec(small), mono, check=False)
    return ModuleElement.single(v, f)


def _canonical_expts(v: Composition, e: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for blk in v.blocks():
        out.extend(sorted(e[t - 1] for t in blk))
    return tuple(out)


def spanning_set(n: int, d: int, lo: int = -2, hi: int = 2, support: int = 2) -> list[tuple[str, ModuleElement]]:
    """Deduplicated monomial symmetrizations, labelled for reports."""
    out = []
    for v in enum_compositions(n, d):
        seen = set()
        for e in itertools.product(range(lo, hi + 1), repeat=d):
            if sum(1 for t in e if t) > support:
                continue
            key = _canonical_expts(v, e)
            if key in seen:
                continue
            seen.add(key)
            label = f"v={''.join(map(str, v))};e={','.join(map(str, key))}"
            out.append((label, monomial_symmetrization(v, key)))
    return out


def elem_eq(a: ModuleElement, b: ModuleElement) -> bool:
    for v in set(a.comps) | set(b.comps):
        fa, fb = a.comps.get(v), b.comps.get(v)
        if fa is None:
            if not fb.is_zero():
                return False
        elif fb is None:
            if not fa.is_zero():
                return False
        elif not ratfun_eq(fa, fb):
            return False
    return True


_allowed_cache: dict[int, list[XLaurent]] = {}


def allowed_factors(d: int) -> list[XLaurent]:
    """Normalized 1 - e^a, 1 - q^2 e^a and their linear pieces."""
    got = _allowed_cache.get(d)
    if got is not None:
        return got
    chars = []
    for i in range(d):
        for j in range(d):
            if i != j:
                e = [0] * d
                e[i], e[j] = 1, -1
                chars.append(e)
        for j in range(i, d):
            e = [0] * d
            e[i] += 1
            e[j] += 1
            chars.append(e)
    polys = []
    for e in chars:
        polys.append(XLaurent.const(1, d) - XLaurent.monomial(0, e))
        polys.append(XLaurent.const(1, d) - XLaurent.monomial(2, e))
    for i in range(d):
        for s in (1, -1):
            for qe in (0, 1):
                e = [0] * d
                e[i] = 1
                polys.append(XLaurent.const(1, d) + XLaurent.monomial(qe, e, s))
    out = []
    seen = set()
    for p in polys:
        P = _normalize_factor(p)[2]
        if P not in seen:
            seen.add(P)
            out.append(P)
    _allowed_cache[d] = out
    return out


def _factor_allowed(P: XLaurent, d: int) -> bool:
    if P.is_q_only():
        return True
    rest = P
    progress = True
    while progress and len(rest.terms) > 1 and not rest.is_q_only():
        progress = False
        for F in allowed_factors(d):
            qt = exact_div(rest, F)
            if qt is not None:
                rest = qt
                if len(rest.terms) > 1 and not rest.is_q_only():
                    rest = _normalize_factor(rest)[2]
                progress = True
                break
    return len(rest.terms) <= 1 or rest.is_q_only()


def validate(e: ModuleElement) -> bool:
    """Invariance under each W_{[v]^c} and allowed denominators only."""
    for v, f in e.comps.items():
        if len(v) != 2 * e.n or v.d != e.d:
            return False
        for blk in v.blocks():
            for a, b in zip(blk, blk[1:]):
                if not ratfun_eq(f.act(SignedPerm.transposition(a, b, e.d)), f):
                    return False
        for P, _ in f.den_factors():
            if not _factor_allowed(P, e.d):
                return False
    return True
