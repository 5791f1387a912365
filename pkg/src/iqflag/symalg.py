"""Exact Laurent polynomials and rational functions in q and x_1..x_d.

Monomials are stored as packed integers: each exponent (q first, then the
x variables) sits in a fixed-width bit field with a bias, so multiplying
monomials is a single integer addition.  Rational functions keep their
denominator as a multiset of normalized factors, which makes common
denominators cheap and lets us cancel factors by trial division.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "QLaurent",
    "XLaurent",
    "RatFun",
    "SignedPerm",
    "ParabolicSpec",
    "ratfun_eq",
    "rsum",
    "act",
    "symmetrize",
    "coset_reps",
    "theta",
    "series_expand",
    "series_mul",
    "gens",
]

_BITS = 24
_OFF = 1 << (_BITS - 1)
_MASK = (1 << _BITS) - 1

_bases: dict[int, int] = {}


def _base(nf: int) -> int:
    b = _bases.get(nf)
    if b is None:
        b = sum(_OFF << (_BITS * i) for i in range(nf))
        _bases[nf] = b
    return b


def _pack(exps: Sequence[int]) -> int:
    k = 0
    for i, e in enumerate(exps):
        k |= (e + _OFF) << (_BITS * i)
    return k


def _unpack(key: int, nf: int) -> tuple[int, ...]:
    return tuple(((key >> (_BITS * i)) & _MASK) - _OFF for i in range(nf))


def _num(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _inv(c):
    # keeps integer units as ints so coefficients stay off the Fraction path
    if c == 1 or c == -1:
        return int(c)
    return _num(Fraction(1) / Fraction(c))


class QLaurent:
    """Laurent polynomial in q with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, object] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def q(cls, e: int = 1, c=1) -> "QLaurent":
        return cls({e: c})

    def __add__(self, other):
        other = _as_q(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return QLaurent(t)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_q(other))

    def __rsub__(self, other):
        return _as_q(other) - self

    def __mul__(self, other):
        other = _as_q(other)
        t: dict[int, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return QLaurent(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = _as_q(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*q^{e}" for e, c in sorted(self.terms.items()))


def _as_q(x) -> QLaurent:
    if isinstance(x, QLaurent):
        return x
    if isinstance(x, (int, Fraction)):
        return QLaurent({0: x})
    raise TypeError(f"cannot coerce {type(x).__name__} to QLaurent")


class XLaurent:
    """Laurent polynomial in q, x_1..x_d over the rationals.

    ``terms`` maps packed exponent keys to nonzero coefficients.
    """

    __slots__ = ("d", "terms", "_hash")

    def __init__(self, d: int, terms: dict[int, object] | None = None, _clean: bool = False):
        self.d = d
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            self.terms = {k: c for k, c in terms.items() if c != 0}
        self._hash = None

    # construction
    @classmethod
    def const(cls, c, d: int) -> "XLaurent":
        if c == 0:
            return cls(d)
        return cls(d, {_base(d + 1): c}, True)

    @classmethod
    def monomial(cls, qexp: int, xexps: Sequence[int], c=1) -> "XLaurent":
        d = len(xexps)
        if c == 0:
            return cls(d)
        return cls(d, {_pack((qexp, *xexps)): c}, True)

    @classmethod
    def var(cls, i: int, d: int, e: int = 1) -> "XLaurent":
        ex = [0] * d
        ex[i - 1] = e
        return cls.monomial(0, ex)

    @classmethod
    def qpow(cls, e: int, d: int, c=1) -> "XLaurent":
        return cls.monomial(e, [0] * d, c)

    @classmethod
    def from_terms(cls, items: Iterable[tuple[int, Sequence[int], object]], d: int) -> "XLaurent":
        t: dict[int, object] = {}
        for qe, xe, c in items:
            k = _pack((qe, *xe))
            t[k] = t.get(k, 0) + c
        return cls(d, t)

    # inspection
    def items(self):
        """Yield (q-exponent, x-exponent tuple, coefficient)."""
        nf = self.d + 1
        for k, c in self.terms.items():
            ex = _unpack(k, nf)
            yield ex[0], ex[1:], c

    def coefficients(self) -> dict[tuple[int, ...], QLaurent]:
        out: dict[tuple[int, ...], dict[int, object]] = {}
        for qe, xe, c in self.items():
            out.setdefault(xe, {})[qe] = c
        return {xe: QLaurent(t) for xe, t in out.items()}

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_q_only(self) -> bool:
        return all(all(e == 0 for e in xe) for _, xe, _ in self.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = XLaurent.const(other, self.d)
        if not isinstance(other, XLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # arithmetic
    def _coerce(self, other) -> "XLaurent":
        if isinstance(other, XLaurent):
            if other.d != self.d:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return XLaurent.const(other, self.d)
        if isinstance(other, QLaurent):
            return XLaurent(self.d, {_pack((e,) + (0,) * self.d): c for e, c in other.terms.items()})
        raise TypeError(f"cannot coerce {type(other).__name__}")

    def __add__(self, other):
        if not isinstance(other, (XLaurent, int, Fraction, QLaurent)):
            return NotImplemented
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        t = dict(a)
        for k, c in b.items():
            s = t.get(k, 0) + c
            if s == 0:
                t.pop(k, None)
            else:
                t[k] = s
        return XLaurent(self.d, t, True)

    __radd__ = __add__

    def __neg__(self):
        return XLaurent(self.d, {k: -c for k, c in self.terms.items()}, True)

    def __sub__(self, other):
        if not isinstance(other, (XLaurent, int, Fraction, QLaurent)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return XLaurent(self.d)
            if isinstance(other, Fraction):
                return XLaurent(self.d, {k: _num(c * other) for k, c in self.terms.items()}, True)
            return XLaurent(self.d, {k: c * other for k, c in self.terms.items()}, True)
        if not isinstance(other, (XLaurent, QLaurent)):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        base = _base(self.d + 1)
        t: dict[int, object] = {}
        get = t.get
        for kb, cb in b.items():
            off = kb - base
            for ka, ca in a.items():
                k = ka + off
                t[k] = get(k, 0) + ca * cb
        return XLaurent(self.d, {k: c for k, c in t.items() if c != 0}, True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (k, c), = self.terms.items()
            base = _base(self.d + 1)
            return XLaurent(self.d, {base + (base - k) * (-e): _inv(c ** (-e))}, True)
        out = XLaurent.const(1, self.d)
        p = self
        while e:
            if e & 1:
                out = out * p
            p = p * p
            e >>= 1
        return out

    def shift(self, key: int, c=1) -> "XLaurent":
        """Multiply by the monomial with packed key ``key`` times ``c``."""
        off = key - _base(self.d + 1)
        if c == 1:
            return XLaurent(self.d, {k + off: v for k, v in self.terms.items()}, True)
        if isinstance(c, Fraction):
            return XLaurent(self.d, {k + off: _num(v * c) for k, v in self.terms.items()}, True)
        return XLaurent(self.d, {k + off: v * c for k, v in self.terms.items()}, True)

    def min_key(self) -> int:
        """Packed key of the componentwise minimum exponent vector."""
        nf = self.d + 1
        mins = None
        for k in self.terms:
            ex = _unpack(k, nf)
            mins = list(ex) if mins is None else [min(a, b) for a, b in zip(mins, ex)]
        return _pack(mins)

    def substitute(self, w: "SignedPerm") -> "XLaurent":
        if w.d != self.d:
            raise ValueError("signed permutation acts on a different number of letters")
        nf = self.d + 1
        perm, signs = w.perm, w.signs
        t: dict[int, object] = {}
        for k, c in self.terms.items():
            ex = _unpack(k, nf)
            new = [0] * nf
            new[0] = ex[0]
            for i in range(self.d):
                e = ex[i + 1]
                new[perm[i] + 1] += -e if signs[i] else e
            t[_pack(new)] = c
        return XLaurent(self.d, t, True)

    def to_json(self) -> list[dict]:
        out = []
        for qe, xe, c in sorted(self.items(), key=lambda t: (t[1], t[0])):
            c = Fraction(c)
            out.append({"q": qe, "x": list(xe), "c": f"{c.numerator}/{c.denominator}"})
        return out

    @classmethod
    def from_json(cls, data: list[dict], d: int) -> "XLaurent":
        return cls.from_terms(((int(t["q"]), [int(e) for e in t["x"]], _num(Fraction(t["c"]))) for t in data), d)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for qe, xe, c in sorted(self.items(), key=lambda t: (t[1], t[0])):
            mono = "".join(f"*x{i + 1}^{e}" for i, e in enumerate(xe) if e)
            qs = f"*q^{qe}" if qe else ""
            parts.append(f"{c}{qs}{mono}")
        return " + ".join(parts)


def exact_div(r: XLaurent, g: XLaurent) -> XLaurent | None:
    """Return r/g if g divides r in the Laurent ring, else None.

    ``g`` must already be normalized (no variable divides it).
    """
    if r.is_zero():
        return r
    nf = r.d + 1
    base = _base(nf)
    shift = r.min_key()
    work = dict(r.terms) if shift == base else {k - shift + base: c for k, c in r.terms.items()}
    lt = max(g.terms)
    lc = g.terms[lt]
    gitems = [(k - base, c) for k, c in g.terms.items() if k != lt]
    heap = [-k for k in work]
    heapq.heapify(heap)
    quot: dict[int, object] = {}
    inv_lc = _inv(lc)
    frac = isinstance(inv_lc, Fraction)
    while heap:
        k = -heapq.heappop(heap)
        c = work.get(k)
        if c is None:
            continue
        if c == 0:
            del work[k]
            continue
        diff = k - lt + base
        for i in range(nf):
            if ((diff >> (_BITS * i)) & _MASK) < _OFF:
                return None
        qc = _num(c * inv_lc) if frac else c * inv_lc
        quot[diff] = qc
        del work[k]
        off = diff - base
        for kg, cg in gitems:
            kk = kg + off + base
            old = work.get(kk)
            if old is None:
                work[kk] = -qc * cg
                heapq.heappush(heap, -kk)
            else:
                work[kk] = old - qc * cg
    out = XLaurent(r.d, quot, True)
    if shift != base:
        out = out.shift(shift)
    return out


def _normalize_factor(p: XLaurent) -> tuple[object, int, XLaurent]:
    """Write p = c * m * P with m a monomial (packed) and P normalized."""
    mk = p.min_key()
    base = _base(p.d + 1)
    lt = max(p.terms)
    c = p.terms[lt]
    inv = _inv(c)
    t = {k - mk + base: _num(v * inv) for k, v in p.terms.items()}
    return c, mk, XLaurent(p.d, t, True)


class RatFun:
    """Quotient num / den with den kept as a product of normalized factors.

    ``facs`` maps each normalized factor polynomial to its multiplicity.
    """

    __slots__ = ("num", "facs")

    def __init__(self, num, den=None, *, d: int | None = None):
        if isinstance(num, RatFun):
            self.num, self.facs = num.num, dict(num.facs)
            if den is not None:
                r = self / den
                self.num, self.facs = r.num, r.facs
            return
        if not isinstance(num, XLaurent):
            if d is None:
                raise ValueError("d is required for scalar numerators")
            num = XLaurent.const(num, d)
        self.num = num
        self.facs: dict[XLaurent, int] = {}
        if den is not None:
            if not isinstance(den, XLaurent):
                den = XLaurent.const(den, num.d)
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            self._divide_poly(den)
            self._reduce()

    @classmethod
    def _raw(cls, num: XLaurent, facs: dict) -> "RatFun":
        r = cls.__new__(cls)
        r.num = num
        r.facs = facs if not num.is_zero() else {}
        return r

    def _divide_poly(self, den: XLaurent):
        c, mk, P = _normalize_factor(den)
        base = _base(den.d + 1)
        self.num = self.num.shift(2 * base - mk, _inv(c))
        if len(P.terms) > 1:
            self.facs[P] = self.facs.get(P, 0) + 1

    def _reduce(self):
        if self.num.is_zero():
            self.facs = {}
            return
        for P in list(self.facs):
            m = self.facs[P]
            while m:
                qt = exact_div(self.num, P)
                if qt is None:
                    break
                self.num = qt
                m -= 1
            if m:
                self.facs[P] = m
            else:
                del self.facs[P]

    @property
    def d(self) -> int:
        return self.num.d

    @property
    def den(self) -> XLaurent:
        out = XLaurent.const(1, self.d)
        for P, m in self.facs.items():
            for _ in range(m):
                out = out * P
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.facs

    def den_factors(self) -> list[tuple[XLaurent, int]]:
        return list(self.facs.items())

    # arithmetic
    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            if other.d != self.d:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction, QLaurent, XLaurent)):
            return RatFun._raw(self.num._coerce(other), {})
        raise TypeError(f"cannot coerce {type(other).__name__}")

    def __add__(self, other):
        if not isinstance(other, (RatFun, XLaurent, QLaurent, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.facs == o.facs:
            return RatFun._reduced(self.num + o.num, dict(self.facs))
        lcm = dict(self.facs)
        for P, m in o.facs.items():
            if lcm.get(P, 0) < m:
                lcm[P] = m
        a = self.num * _fac_product(lcm, self.facs, self.d)
        b = o.num * _fac_product(lcm, o.facs, self.d)
        return RatFun._reduced(a + b, lcm)

    __radd__ = __add__

    @classmethod
    def _reduced(cls, num: XLaurent, facs: dict) -> "RatFun":
        r = cls._raw(num, facs)
        if facs and not num.is_zero():
            r._reduce()
        return r

    def __neg__(self):
        return RatFun._raw(-self.num, dict(self.facs))

    def __sub__(self, other):
        if not isinstance(other, (RatFun, XLaurent, QLaurent, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFun._raw(self.num * other, dict(self.facs))
        if not isinstance(other, (RatFun, XLaurent, QLaurent)):
            return NotImplemented
        o = self._coerce(other)
        if self.num.is_zero() or o.num.is_zero():
            return RatFun._raw(XLaurent(self.d), {})
        facs = dict(self.facs)
        for P, m in o.facs.items():
            facs[P] = facs.get(P, 0) + m
        num = self.num * o.num
        if not o.facs or not self.facs:
            # only cross-cancellation can occur
            r = RatFun._raw(num, facs)
            if (self.facs and not o.num.is_monomial()) or (o.facs and not self.num.is_monomial()):
                r._reduce()
            return r
        return RatFun._reduced(num, facs)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        r = RatFun._raw(XLaurent.const(1, self.d), {})
        r.num = r.num * _fac_product(self.facs, {}, self.d)
        r._divide_poly(self.num)
        r._reduce()
        return r

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * _inv(other)
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFun._raw(XLaurent.const(1, self.d), {})
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, (RatFun, XLaurent, QLaurent, int, Fraction)):
            return NotImplemented
        return ratfun_eq(self, self._coerce(other))

    __hash__ = None

    def act(self, w: "SignedPerm") -> "RatFun":
        r = RatFun._raw(self.num.substitute(w), {})
        for P, m in self.facs.items():
            Q = P.substitute(w)
            c, mk, N = _normalize_factor(Q)
            base = _base(self.d + 1)
            unit = _inv(c ** m)
            r.num = r.num.shift(base + (base - mk) * m, unit)
            if len(N.terms) > 1:
                r.facs[N] = r.facs.get(N, 0) + m
        return r

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict, d: int) -> "RatFun":
        num = XLaurent.from_json(data["num"], d)
        den = XLaurent.from_json(data["den"], d)
        r = cls._raw(num, {})
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in JSON")
        r._divide_poly(den)
        r._reduce()
        return r

    def __repr__(self):
        if not self.facs:
            return f"RatFun({self.num!r})"
        return f"RatFun(({self.num!r}) / ({self.den!r}))"

    def __str__(self):
        if not self.facs:
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def _fac_product(lcm: dict, have: dict, d: int) -> XLaurent:
    out = XLaurent.const(1, d)
    for P, m in lcm.items():
        for _ in range(m - have.get(P, 0)):
            out = out * P
    return out


def rsum(terms: Iterable[RatFun], d: int) -> RatFun:
    """Sum over a common denominator, cancelling only once at the end."""
    terms = [t for t in terms if not t.num.is_zero()]
    if not terms:
        return RatFun._raw(XLaurent(d), {})
    lcm: dict = {}
    for t in terms:
        for P, m in t.facs.items():
            if lcm.get(P, 0) < m:
                lcm[P] = m
    acc = XLaurent(d)
    cache: dict = {}
    for t in terms:
        key = tuple(sorted((hash(P), m) for P, m in t.facs.items()))
        mult = cache.get(key)
        if mult is None or mult[0] != t.facs:
            mult = (t.facs, _fac_product(lcm, t.facs, d))
            cache[key] = mult
        acc = acc + t.num * mult[1]
    return RatFun._reduced(acc, lcm)


def ratfun_eq(a: RatFun, b: RatFun) -> bool:
    """Cross-multiplication test a.num * b.den == b.num * a.den."""
    if a.facs == b.facs:
        return a.num == b.num
    lcm = dict(a.facs)
    for P, m in b.facs.items():
        if lcm.get(P, 0) < m:
            lcm[P] = m
    return a.num * _fac_product(lcm, a.facs, a.d) == b.num * _fac_product(lcm, b.facs, a.d)


def gens(d: int) -> tuple[RatFun, list[RatFun]]:
    """Return q and [x_1..x_d] as rational functions in d variables."""
    q = RatFun(XLaurent.qpow(1, d))
    xs = [RatFun(XLaurent.var(i, d)) for i in range(1, d + 1)]
    return q, xs


class SignedPerm:
    """Element of Z_2^d x| S_d.

    Acting on f gives f(y_1..y_d) with y_i = x_{perm(i)} or its inverse when
    signs[i] is set (letters are 0-based internally).
    """

    __slots__ = ("perm", "signs")

    def __init__(self, perm: Sequence[int], signs: Sequence[bool] | None = None):
        self.perm = tuple(perm)
        self.signs = tuple(bool(s) for s in (signs or [False] * len(self.perm)))
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.signs) != len(self.perm):
            raise ValueError("not a signed permutation")

    @property
    def d(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, d: int) -> "SignedPerm":
        return cls(range(d))

    @classmethod
    def transposition(cls, a: int, b: int, d: int) -> "SignedPerm":
        p = list(range(d))
        p[a - 1], p[b - 1] = p[b - 1], p[a - 1]
        return cls(p)

    @classmethod
    def iota(cls, m: int, d: int) -> "SignedPerm":
        s = [False] * d
        s[m - 1] = True
        return cls(range(d), s)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        # (self * other) . f = self . (other . f)
        perm = [self.perm[other.perm[i]] for i in range(self.d)]
        signs = [other.signs[i] ^ self.signs[other.perm[i]] for i in range(self.d)]
        return SignedPerm(perm, signs)

    def __eq__(self, other):
        return isinstance(other, SignedPerm) and self.perm == other.perm and self.signs == other.signs

    def __hash__(self):
        return hash((self.perm, self.signs))

    def __repr__(self):
        return f"SignedPerm({[p + 1 for p in self.perm]}, {list(map(int, self.signs))})"


def act(w: SignedPerm, f):
    if isinstance(f, XLaurent):
        return f.substitute(w)
    return f.act(w)


class ParabolicSpec:
    """Disjoint blocks of 1-based letters; letters outside all blocks are fixed."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: Iterable[Iterable[int]]):
        self.blocks = tuple(tuple(sorted(b)) for b in blocks if len(tuple(b)) > 0)
        seen: set[int] = set()
        for b in self.blocks:
            if seen & set(b):
                raise ValueError("blocks overlap")
            seen |= set(b)

    @classmethod
    def intervals(cls, sizes: Sequence[int], start: int = 1) -> "ParabolicSpec":
        out, s = [], start
        for m in sizes:
            out.append(range(s, s + m))
            s += m
        return cls(out)

    def refines(self, other: "ParabolicSpec") -> bool:
        """True if every block of self lies inside a block of other."""
        return all(any(set(b) <= set(c) for c in other.blocks) for b in self.blocks if len(b) > 1)

    def __repr__(self):
        return f"ParabolicSpec({[list(b) for b in self.blocks]})"


def coset_reps(big: ParabolicSpec, small: ParabolicSpec, d: int) -> list[SignedPerm]:
    """Minimal-length representatives of W_big / W_small, in a fixed order."""
    if not small.refines(big):
        raise ValueError("small parabolic is not contained in big")
    per_block: list[list[list[tuple[int, int]]]] = []
    for B in big.blocks:
        subs = [b for b in small.blocks if set(b) <= set(B) and len(b) > 1]
        covered = set().union(*map(set, subs)) if subs else set()
        parts = []
        for t in B:
            if t not in covered:
                parts.append((t,))
        parts = sorted(subs + parts, key=lambda b: b[0])
        options = []
        for chosen in _ordered_splits(list(B), [len(p) for p in parts]):
            moves = []
            for p, S in zip(parts, chosen):
                moves.extend(zip(p, S))
            options.append(moves)
        per_block.append(options)
    reps = []
    for combo in itertools.product(*per_block):
        perm = list(range(d))
        for moves in combo:
            for src, dst in moves:
                perm[src - 1] = dst - 1
        reps.append(SignedPerm(perm))
    return reps


def _ordered_splits(items: list[int], sizes: list[int]):
    if not sizes:
        yield []
        return
    for first in itertools.combinations(items, sizes[0]):
        rest = [t for t in items if t not in first]
        for tail in _ordered_splits(rest, sizes[1:]):
            yield [first] + tail


def _is_invariant(f: RatFun, spec: ParabolicSpec) -> bool:
    for b in spec.blocks:
        for a, c in zip(b, b[1:]):
            if not ratfun_eq(f.act(SignedPerm.transposition(a, c, f.d)), f):
                return False
    return True


def symmetrize(big: ParabolicSpec, small: ParabolicSpec, f: RatFun, *, check: bool = True) -> RatFun:
    """Sum of sigma(f) over minimal coset representatives of W_big/W_small."""
    if check and not _is_invariant(f, small):
        raise ValueError("input is not invariant under the small parabolic")
    out = RatFun._raw(XLaurent(f.d), {})
    for w in coset_reps(big, small, f.d):
        out = out + f.act(w)
    return out


def theta(m: int, arg: RatFun) -> RatFun:
    """theta_m(arg) = (q^m arg - 1) / (arg - q^m)."""
    qm = XLaurent.qpow(m, arg.d)
    den = arg - qm
    if den.is_zero():
        raise ZeroDivisionError("theta argument equals q^m")
    return (arg * qm - 1) / den


def series_expand(num: Sequence[RatFun], den: Sequence[RatFun], K: int) -> list[RatFun]:
    """Coefficients c_0..c_K of num(z)/den(z) expanded at z = 0."""
    if not den or den[0].is_zero():
        raise ZeroDivisionError("denominator vanishes at z = 0")
    inv0 = den[0].inverse()
    out: list[RatFun] = []
    for k in range(K + 1):
        acc = num[k] if k < len(num) else None
        for i in range(1, min(k, len(den) - 1) + 1):
            term = den[i] * out[k - i]
            acc = -term if acc is None else acc - term
        if acc is None:
            acc = RatFun._raw(XLaurent(den[0].d), {})
        out.append(acc * inv0)
    return out


def series_mul(a: Sequence[RatFun], b: Sequence[RatFun], K: int) -> list[RatFun]:
    """Cauchy product truncated at z^K."""
    d = (a[0] if a else b[0]).d
    out = []
    for k in range(K + 1):
        acc = RatFun._raw(XLaurent(d), {})
        for i in range(k + 1):
            if i < len(a) and k - i < len(b):
                acc = acc + a[i] * b[k - i]
        out.append(acc)
    return out
