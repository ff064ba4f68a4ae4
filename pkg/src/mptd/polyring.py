"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

A :class:`Poly` is a map from exponent vectors to nonzero ``int`` coefficients,
built against a fixed :class:`VarOrder`.  Variables are listed lowest first; the
last one is the main variable used by pseudo-division and remainder sequences.

All values are immutable.  Every function here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Sequence

from mptd import upoly

__all__ = [
    "PolyError",
    "VarOrder",
    "Poly",
    "PseudoDivResult",
    "degree",
    "content",
    "primitive_part",
    "gcd",
    "pseudo_divide_extended",
    "divide_exact",
    "canonical",
    "var_index",
]


class PolyError(ValueError):
    """Raised for invalid polynomial operations (non-exact division, unknown variables...)."""


@dataclass(frozen=True)
class VarOrder:
    """Ordered variable names, lowest first. The last name is the main variable."""

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise PolyError("a variable order needs at least one variable")
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names!r}")
        for n in names:
            if not n or not isinstance(n, str):
                raise PolyError(f"invalid variable name {n!r}")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    @property
    def main(self) -> str:
        return self.names[-1]

    def index(self, v: str | int) -> int:
        if isinstance(v, int):
            if not 0 <= v < len(self.names):
                raise PolyError(f"variable index {v} out of range")
            return v
        try:
            return self.names.index(v)
        except ValueError:
            raise PolyError(f"unknown variable {v!r}; order is {self.names}") from None


def _glex_key(exp: tuple[int, ...]):
    # graded lex with the main (last) variable most significant
    return (sum(exp), exp[::-1])


class Poly:
    """Immutable sparse polynomial over the integers."""

    __slots__ = ("order", "terms", "_hash")

    def __init__(self, order: VarOrder, terms: Mapping[tuple[int, ...], int] | None = None):
        self.order = order
        n = len(order)
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise PolyError(f"exponent {e} does not match {n} variables")
                    clean[tuple(e)] = int(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, order: VarOrder, terms: dict) -> "Poly":
        # trusted: no zero coefficients, exponents already tuples of right length
        p = object.__new__(cls)
        p.order = order
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, order: VarOrder) -> "Poly":
        return cls._raw(order, {})

    @classmethod
    def const(cls, order: VarOrder, c: int) -> "Poly":
        c = int(c)
        return cls._raw(order, {(0,) * len(order): c} if c else {})

    @classmethod
    def var(cls, order: VarOrder, v: str | int, power: int = 1) -> "Poly":
        k = order.index(v)
        e = [0] * len(order)
        e[k] = power
        return cls._raw(order, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, coeffs: Sequence["Poly"], v: str | int, order: VarOrder) -> "Poly":
        """Inverse of :meth:`as_univariate`: ``sum(coeffs[i] * v**i)``."""
        k = order.index(v)
        terms: dict = {}
        for i, c in enumerate(coeffs):
            for e, a in c.terms.items():
                if i:
                    e = e[:k] + (e[k] + i,) + e[k + 1:]
                terms[e] = terms.get(e, 0) + a
        return cls._raw(order, {e: a for e, a in terms.items() if a})

    @classmethod
    def from_dense(cls, coeffs: Sequence[int], v: str | int, order: VarOrder) -> "Poly":
        """Build ``sum(coeffs[i] * v**i)`` from integer coefficients."""
        k = order.index(v)
        n = len(order)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[k] = i
                terms[tuple(e)] = int(c)
        return cls._raw(order, terms)

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return next(iter(self.terms.values()), 0)

    def degree(self, v: str | int) -> int:
        """Degree in ``v``; -1 for the zero polynomial."""
        k = self.order.index(v)
        if not self.terms:
            return -1
        return max(e[k] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def variables(self) -> set[int]:
        """Indices of variables occurring with positive degree."""
        out = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    out.add(i)
        return out

    def free_of(self, v: str | int) -> bool:
        k = self.order.index(v)
        return all(e[k] == 0 for e in self.terms)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        """Leading (exponent, coefficient) under graded lex."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms, key=_glex_key)
        return e, self.terms[e]

    def coeff(self, v: str | int, i: int) -> "Poly":
        """Coefficient of ``v**i`` (a polynomial free of ``v``)."""
        k = self.order.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[k] == i:
                out[e[:k] + (0,) + e[k + 1:]] = c
        return Poly._raw(self.order, out)

    def as_univariate(self, v: str | int) -> list["Poly"]:
        """Dense coefficient list in ``v`` (lowest degree first)."""
        k = self.order.index(v)
        if not self.terms:
            return []
        d = self.degree(k)
        buckets: list[dict] = [{} for _ in range(d + 1)]
        for e, c in self.terms.items():
            buckets[e[k]][e[:k] + (0,) + e[k + 1:]] = c
        return [Poly._raw(self.order, b) for b in buckets]

    def lc(self, v: str | int) -> "Poly":
        """Leading coefficient with respect to ``v``."""
        if not self.terms:
            return self
        return self.coeff(v, self.degree(v))

    def to_dense(self, v: str | int) -> list[int]:
        """Integer coefficient list for a polynomial in ``v`` alone."""
        k = self.order.index(v)
        if not self.terms:
            return []
        out = [0] * (self.degree(k) + 1)
        for e, c in self.terms.items():
            if any(d for i, d in enumerate(e) if i != k):
                raise PolyError(f"{self} is not univariate in {self.order.names[k]}")
            out[e[k]] = c
        return out

    def int_content(self) -> int:
        return reduce(math.gcd, self.terms.values(), 0)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.order != self.order:
                raise PolyError("polynomials built against different variable orders")
            return other
        if isinstance(other, int):
            return Poly.const(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Poly.zero(self.order)
            return Poly._raw(self.order, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero(self.order)
        if len(b) == 1:
            (eb, cb), = b.items()
            return Poly._raw(self.order, {tuple(x + y for x, y in zip(ea, eb)): ca * cb for ea, ca in a.items()})
        if len(a) == 1:
            return other * self
        out: dict = {}
        get = out.get
        bi = list(b.items())
        for ea, ca in a.items():
            for eb, cb in bi:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return Poly._raw(self.order, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = Poly.const(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.order, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, frozenset(self.terms.items())))
        return self._hash

    # -- transformations ----------------------------------------------

    def diff(self, v: str | int) -> "Poly":
        k = self.order.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                out[e[:k] + (e[k] - 1,) + e[k + 1:]] = c * e[k]
        return Poly._raw(self.order, out)

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``images[i]`` for the i-th variable (images share one order)."""
        if len(images) != len(self.order):
            raise PolyError("need one image per variable")
        if not self.terms:
            return Poly.zero(images[0].order)
        target = images[0].order
        powers: list[dict[int, Poly]] = [{0: Poly.const(target, 1)} for _ in images]

        def pw(i, d):
            cache = powers[i]
            if d not in cache:
                cache[d] = pw(i, d - 1) * images[i]
            return cache[d]

        acc = Poly.zero(target)
        for e, c in self.terms.items():
            t = Poly.const(target, c)
            for i, d in enumerate(e):
                if d:
                    t = t * pw(i, d)
            acc = acc + t
        return acc

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at numeric values (ints, Fractions...) for every variable."""
        vals = [values[n] for n in self.order.names]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, d in zip(vals, e):
                if d:
                    t = t * x ** d
            total = total + t
        return total

    def substitute(self, v: str | int, value: int) -> "Poly":
        """Replace variable ``v`` by an integer value."""
        k = self.order.index(v)
        out: dict = {}
        for e, c in self.terms.items():
            e2 = e[:k] + (0,) + e[k + 1:]
            out[e2] = out.get(e2, 0) + c * value ** e[k]
        return Poly._raw(self.order, {e: c for e, c in out.items() if c})

    def reorder(self, order: VarOrder) -> "Poly":
        """Re-express in another order whose names include all variables used here."""
        idx = []
        for i, n in enumerate(self.order.names):
            if n in order.names:
                idx.append((i, order.names.index(n)))
        used = self.variables()
        missing = [self.order.names[i] for i in used if self.order.names[i] not in order.names]
        if missing:
            raise PolyError(f"variables {missing} not present in target order")
        out = {}
        m = len(order)
        for e, c in self.terms.items():
            e2 = [0] * m
            for i, j in idx:
                e2[j] = e[i]
            out[tuple(e2)] = c
        return Poly._raw(order, out)

    # -- printing -----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_glex_key, reverse=True):
            c = self.terms[e]
            mono = []
            for i in range(len(e)):
                d = e[i]
                if d == 1:
                    mono.append(self.order.names[i])
                elif d > 1:
                    mono.append(f"{self.order.names[i]}^{d}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = "*".join(mono)
            else:
                body = f"{a}*" + "*".join(mono)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, vars={self.order.names})"


@dataclass(frozen=True)
class PseudoDivResult:
    """``multiplier * f + quotient * g == remainder`` with ``multiplier = l**(delta+1)``."""

    multiplier: Poly
    quotient: Poly
    remainder: Poly
    delta: int
    var: int
    lead: Poly

    def shape(self) -> tuple[Poly, Poly]:
        """Split the quotient as ``l*t*v + s`` with ``s`` free of ``v``; returns ``(t, s)``.

        Only meaningful for ``delta >= 1``.
        """
        k = self.var
        q = self.quotient
        s = q.coeff(k, 0)
        rest = q - s
        l = self.lead
        if rest.is_zero():
            return Poly.zero(q.order), s
        t = divide_exact(divide_exact(rest, Poly.var(q.order, k)), l)
        return t, s


def var_index(p: Poly, v: str | int) -> int:
    return p.order.index(v)


def degree(p: Poly, v: str | int) -> int:
    """Highest exponent of ``v`` in ``p``; -1 for the zero polynomial."""
    return p.degree(v)


# ---------------------------------------------------------------------------
# canonical form, gcd, content


def canonical(p: Poly) -> Poly:
    """Divide out the integer content and make the graded-lex leading coefficient positive."""
    if p.is_zero():
        return p
    c = p.int_content()
    if p.leading_term()[1] < 0:
        c = -c
    if c == 1:
        return p
    return Poly._raw(p.order, {e: a // c for e, a in p.terms.items()})


def _unit_normal(p: Poly) -> tuple[int, Poly]:
    """Return ``(sign, sign*p)`` with positive leading coefficient."""
    if p.is_zero() or p.leading_term()[1] > 0:
        return 1, p
    return -1, -p


def _top_var(*ps: Poly) -> int:
    k = -1
    for p in ps:
        for e in p.terms:
            for i in range(len(e) - 1, k, -1):
                if e[i]:
                    k = i
                    break
    return k


def _univariate_var(*ps: Poly) -> int | None:
    """If every polynomial involves at most one common variable, return it (or -1 if none)."""
    seen: set[int] = set()
    for p in ps:
        seen |= p.variables()
        if len(seen) > 1:
            return None
    return next(iter(seen)) if seen else -1


def gcd(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor over the integers with positive leading coefficient.

    The integer content is part of the result: ``gcd(6*x, 4*x**2) == 2*x``.

    Recursive: contents with respect to the highest variable are handled by
    recursion, primitive parts by a primitive remainder sequence.
    """
    if p.order != q.order:
        raise PolyError("polynomials built against different variable orders")
    if p.is_zero() and q.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    if p.is_zero():
        return _unit_normal(q)[1]
    if q.is_zero():
        return _unit_normal(p)[1]
    return _unit_normal(_gcd(p, q))[1]


def _gcd(p: Poly, q: Poly) -> Poly:
    order = p.order
    if p.is_constant() or q.is_constant():
        c = math.gcd(p.int_content(), q.int_content())
        return Poly.const(order, c)
    uv = _univariate_var(p, q)
    if uv is not None:
        g = upoly.gcd(p.to_dense(uv), q.to_dense(uv))
        return Poly.from_dense(g, uv, order)
    k = _top_var(p, q)
    if p.free_of(k):
        return _gcd(p, _content(q, k))
    if q.free_of(k):
        return _gcd(_content(p, k), q)
    cp, cq = _content(p, k), _content(q, k)
    c = _gcd(cp, cq)
    pp, qq = _div(p, cp), _div(q, cq)
    return c * _prs_gcd(pp, qq, k)


def _prs_gcd(a: Poly, b: Poly, k: int) -> Poly:
    """gcd of two polynomials primitive w.r.t. variable ``k``."""
    if a.degree(k) < b.degree(k):
        a, b = b, a
    while True:
        r = prem(a, b, k)
        if r.is_zero():
            return canonical(b)
        if r.degree(k) == 0:
            return Poly.const(a.order, 1)
        a, b = b, _primitive(r, k)


def _content(p: Poly, k: int) -> Poly:
    coeffs = [c for c in p.as_univariate(k) if not c.is_zero()]
    coeffs.sort(key=lambda c: len(c.terms))
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _gcd(g, c)
    if g.is_constant():
        return Poly.const(p.order, math.gcd(*[c.int_content() for c in coeffs]))
    return _unit_normal(g)[1]


def _primitive(p: Poly, k: int) -> Poly:
    return _div(p, _content(p, k))


def content(p: Poly, v: str | int) -> Poly:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``v``.

    Integer content is kept and the leading coefficient made positive, so
    ``content(8*y**3 - 6*x*y, y) == 2``.
    """
    if p.is_zero():
        raise PolyError("content of the zero polynomial is undefined")
    return _content(p, p.order.index(v))


def primitive_part(p: Poly, v: str | int) -> Poly:
    """``p / content(p, v)``; the sign of ``p`` is kept."""
    if p.is_zero():
        raise PolyError("primitive part of the zero polynomial is undefined")
    return _primitive(p, p.order.index(v))


# ---------------------------------------------------------------------------
# division


def divide_exact(p: Poly, q: Poly) -> Poly:
    """Exact quotient ``p / q``; raises :class:`PolyError` if a remainder is left."""
    if q.is_zero():
        raise PolyError("division by the zero polynomial")
    if p.order != q.order:
        raise PolyError("polynomials built against different variable orders")
    return _div(p, q)


def _div(p: Poly, q: Poly) -> Poly:
    if p.is_zero():
        return p
    order = p.order
    if q.is_constant():
        c = q.constant_value()
        if c == 1:
            return p
        out = {}
        for e, a in p.terms.items():
            t, r = divmod(a, c)
            if r:
                raise PolyError(f"{q} does not divide {p}")
            out[e] = t
        return Poly._raw(order, out)
    if len(q.terms) == 1:
        (eq, cq), = q.terms.items()
        out = {}
        for e, a in p.terms.items():
            e2 = tuple(x - y for x, y in zip(e, eq))
            t, r = divmod(a, cq)
            if r or min(e2) < 0:
                raise PolyError(f"{q} does not divide {p}")
            out[e2] = t
        return Poly._raw(order, out)
    uv = _univariate_var(p, q)
    if uv is not None and uv >= 0:
        quo, rem = upoly.divmod_int(p.to_dense(uv), q.to_dense(uv))
        if rem is None or any(rem):
            raise PolyError(f"{q} does not divide {p}")
        return Poly.from_dense(quo, uv, order)
    k = _top_var(p, q)
    if q.free_of(k):
        return Poly.from_univariate([_div(c, q) for c in p.as_univariate(k)], k, order)
    dq = q.degree(k)
    qc = q.as_univariate(k)
    lq = qc[-1]
    r = p.as_univariate(k)
    if len(r) - 1 < dq:
        raise PolyError(f"{q} does not divide {p}")
    quo = [Poly.zero(order)] * (len(r) - dq)
    for i in range(len(r) - 1, dq - 1, -1):
        if r[i].is_zero():
            continue
        c = _div(r[i], lq)
        quo[i - dq] = c
        for j in range(dq + 1):
            if not qc[j].is_zero():
                r[i - dq + j] = r[i - dq + j] - c * qc[j]
    if any(not c.is_zero() for c in r[:dq]):
        raise PolyError(f"{q} does not divide {p}")
    return Poly.from_univariate(quo, k, order)


def prem(f: Poly, g: Poly, v: str | int) -> Poly:
    """Classical pseudo-remainder ``prem(f, g)`` in ``v`` (multiplier ``lc(g)**(df-dg+1)``)."""
    k = f.order.index(v)
    df, dg = f.degree(k), g.degree(k)
    if g.is_zero():
        raise PolyError("pseudo-division by zero")
    if df < dg:
        return f
    gc = g.as_univariate(k)
    l = gc[-1]
    r = f.as_univariate(k)
    for i in range(df, dg - 1, -1):
        c = r[i]
        r = [l * x for x in r[:i]]
        if not c.is_zero():
            for j in range(dg):
                if not gc[j].is_zero():
                    r[i - dg + j] = r[i - dg + j] - c * gc[j]
    while r and r[-1].is_zero():
        r.pop()
    return Poly.from_univariate(r, k, f.order)


def pseudo_divide_extended(f: Poly, g: Poly, v: str | int) -> PseudoDivResult:
    """Extended pseudo-division: ``l**(delta+1) * f + q * g == r`` with ``deg(r, v) < deg(g, v)``.

    ``l`` is the leading coefficient of ``g`` in ``v`` and ``delta = deg(f) - deg(g)``.
    Each elimination step multiplies by ``l`` (even when the eliminated
    coefficient is already zero), so the multiplier is always the full power and
    the quotient has the shape ``l*t*v + s`` with ``s`` free of ``v``.
    """
    if g.is_zero():
        raise PolyError("pseudo-division by the zero polynomial")
    if f.order != g.order:
        raise PolyError("polynomials built against different variable orders")
    k = f.order.index(v)
    d1, d2 = f.degree(k), g.degree(k)
    if d1 < d2:
        raise PolyError(f"deg(f)={d1} < deg(g)={d2} in {f.order.names[k]}")
    order = f.order
    delta = d1 - d2
    gc = g.as_univariate(k)
    b1 = gc[-1]
    T = f.as_univariate(k)
    qc = [Poly.zero(order)] * (delta + 1)  # dense quotient in v
    for j in range(delta + 1):
        top = d1 - j
        h = T[top] if top < len(T) else Poly.zero(order)
        T = [b1 * c for c in T[:top]]
        qc = [b1 * c for c in qc]
        if not h.is_zero():
            shift = top - d2
            for i in range(d2):
                if not gc[i].is_zero():
                    T[shift + i] = T[shift + i] - h * gc[i]
            qc[shift] = qc[shift] - h
    while T and T[-1].is_zero():
        T.pop()
    res = PseudoDivResult(
        multiplier=b1 ** (delta + 1),
        quotient=Poly.from_univariate(qc, k, order),
        remainder=Poly.from_univariate(T, k, order),
        delta=delta,
        var=k,
        lead=b1,
    )
    return res
