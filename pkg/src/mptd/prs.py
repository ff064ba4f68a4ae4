"""Tracked primitive remainder sequences and subresultant sequences.

``prs_extended`` runs the extended Euclidean scheme on two polynomials that
are primitive in the main variable and keeps every cofactor of every step::

    m_i * f_i + q_i * f_{i+1} == (m_{i-1} / w_i) * p_i * f_{i+2}

with ``m_i, p_i, w_i`` free of the main variable.  The product
``g_i = (m_{i-1}/w_i) * p_i`` is stored on each step as well.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from mptd.polyring import (
    Poly,
    PolyError,
    _unit_normal,
    canonical,
    content,
    divide_exact,
    gcd,
    prem,
    pseudo_divide_extended,
)

__all__ = [
    "CommonFactorError",
    "PrsStep",
    "PrsSequence",
    "SubresultantSeq",
    "prs_extended",
    "normalize_cor8",
    "subresultant_sequence",
    "primitivity_certificate",
    "check_step",
]


class CommonFactorError(PolyError):
    """The two inputs share a nontrivial factor; ``factor`` holds it."""

    def __init__(self, factor: Poly, message: str | None = None):
        self.factor = factor
        super().__init__(message or f"inputs share the common factor {factor}")


@dataclass(frozen=True)
class PrsStep:
    index: int
    m: Poly
    q: Poly
    p: Poly
    w: Poly
    g: Poly
    f_next: Poly
    # audit: how the step was built from the raw pseudo-division
    branch: str = "divides"
    raw_multiplier: Poly | None = None
    scale: Poly | None = None

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "m": str(self.m),
            "q": str(self.q),
            "p": str(self.p),
            "w": str(self.w),
            "g": str(self.g),
            "f_next": str(self.f_next),
            "branch": self.branch,
        }


@dataclass(frozen=True)
class PrsSequence:
    f1: Poly
    f2: Poly
    var: int
    steps: tuple[PrsStep, ...]
    normalized: bool = False

    @property
    def k(self) -> int:
        return len(self.steps)

    @property
    def elements(self) -> list[Poly]:
        """``[f_1, f_2, ..., f_{k+2}]``."""
        return [self.f1, self.f2] + [s.f_next for s in self.steps]

    @property
    def last_pair(self) -> tuple[Poly, Poly]:
        els = self.elements
        return els[-2], els[-1]

    def m_prev(self, i: int) -> Poly:
        """``m_{i-1}`` for the 1-based step index ``i``."""
        if i == 1:
            return Poly.const(self.f1.order, 1)
        return self.steps[i - 2].m

    def trace(self) -> list[dict]:
        return [s.to_dict() for s in self.steps]

    def to_json(self) -> str:
        return json.dumps(self.trace())


@dataclass(frozen=True)
class SubresultantSeq:
    elements: tuple[Poly, ...]
    leading_coeffs: tuple[Poly, ...]
    var: int = field(default=-1)


def check_step(seq: PrsSequence, i: int) -> bool:
    """Re-expand the identity of step ``i`` (1-based) exactly."""
    s = seq.steps[i - 1]
    els = seq.elements
    lhs = s.m * els[i - 1] + s.q * els[i]
    if lhs != s.g * s.f_next:
        return False
    mp = seq.m_prev(i)
    return divide_exact(mp, s.w) * s.p == s.g


def _split(mprev: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Write ``g = (mprev / w) * p`` with ``w`` a factor of ``mprev``; return ``(p, w)``."""
    h = gcd(mprev, g)
    return divide_exact(g, h), divide_exact(mprev, h)


def prs_extended(f1: Poly, f2: Poly, v: str | int, normalize: bool = True) -> PrsSequence:
    """Tracked primitive remainder sequence of ``f1, f2`` in ``v``.

    Each step pseudo-divides, removes the factor shared by the multiplier and the
    quotient, and splits the remainder's content against the previous multiplier.
    When the previous multiplier does not divide the remainder, both sides are
    multiplied by the missing part first (``branch == "scaled"``).  With
    ``normalize`` the result is passed through :func:`normalize_cor8`.
    """
    order = f1.order
    k = order.index(v)
    d1, d2 = f1.degree(k), f2.degree(k)
    if d2 < 1 or d1 < d2:
        raise PolyError(f"need deg(f1) >= deg(f2) >= 1 in {order.names[k]}, got {d1}, {d2}")
    for f in (f1, f2):
        c = content(f, k)
        if not c.is_constant() or abs(c.constant_value()) != 1:
            raise PolyError(f"{f} is not primitive in {order.names[k]}")
    one = Poly.const(order, 1)
    steps: list[PrsStep] = []
    a, b = f1, f2
    m_prev = one
    i = 0
    while True:
        i += 1
        res = pseudo_divide_extended(a, b, k)
        r = res.remainder
        if r.is_zero():
            raise CommonFactorError(canonical(b))
        L, q = res.multiplier, res.quotient
        t = gcd(L, content(q, k)) if not q.is_zero() else _unit_normal(L)[1]
        L, q, r = divide_exact(L, t), divide_exact(q, t), divide_exact(r, t)
        last = r.degree(k) == 0
        if last:
            cont_r, f_next = one, r
        else:
            cont_r = content(r, k)
            f_next = divide_exact(r, cont_r)
            sgn, f_next = _unit_normal(f_next)
            cont_r = cont_r * sgn
        branch = "divides"
        scale = one
        if last:
            # p_k = 1: the whole main-variable-free remainder is f_{k+2}
            p_raw = one
            if not _divides(m_prev, f_next):
                scale = divide_exact(m_prev, gcd(m_prev, f_next))
                branch = "scaled"
            L, q, f_next = scale * L, scale * q, divide_exact(scale * f_next, m_prev)
            h = one
        else:
            if _divides(m_prev, cont_r):
                p_raw = divide_exact(cont_r, m_prev)
            else:
                scale = divide_exact(m_prev, gcd(m_prev, cont_r))
                branch = "scaled"
                L, q = scale * L, scale * q
                p_raw = divide_exact(scale * cont_r, m_prev)
            h = gcd(L, p_raw)
        m = divide_exact(L, h)
        q = divide_exact(q, h)
        p = divide_exact(p_raw, h)
        steps.append(
            PrsStep(
                index=i, m=m, q=q, p=p, w=one, g=m_prev * p, f_next=f_next,
                branch=branch, raw_multiplier=res.multiplier, scale=scale,
            )
        )
        if last:
            break
        a, b = b, f_next
        m_prev = m
    seq = PrsSequence(f1, f2, k, tuple(steps))
    return normalize_cor8(seq) if normalize else seq


def _is_unit(h: Poly) -> bool:
    return h.is_constant() and abs(h.constant_value()) == 1


def _divides(d: Poly, p: Poly) -> bool:
    try:
        divide_exact(p, d)
    except PolyError:
        return False
    return True


def normalize_cor8(seq: PrsSequence) -> PrsSequence:
    """Make ``gcd(m_i, g_i) = 1`` on every step and ``gcd(m_k, g_k * f_{k+2}) = 1``.

    The common factor is divided out of ``m_i``, ``q_i`` and ``g_i`` (and out of
    ``f_{k+2}`` on the last step).  ``p_i`` and ``w_i`` are then recomputed
    against the normalized ``m_{i-1}``.  Idempotent.
    """
    order = seq.f1.order
    one = Poly.const(order, 1)
    k = seq.k
    steps = list(seq.steps)
    for idx, s in enumerate(steps):
        m, q, g, f_next = s.m, s.q, s.g, s.f_next
        h = gcd(m, g)
        if not _is_unit(h):
            m, q, g = divide_exact(m, h), divide_exact(q, h), divide_exact(g, h)
        if idx == k - 1:
            h = gcd(m, f_next)
            if not _is_unit(h):
                m, q, f_next = divide_exact(m, h), divide_exact(q, h), divide_exact(f_next, h)
        steps[idx] = replace(s, m=m, q=q, g=g, f_next=f_next)
    m_prev = one
    for idx, s in enumerate(steps):
        p, w = _split(m_prev, s.g)
        steps[idx] = replace(s, p=p, w=w)
        m_prev = s.m
    return PrsSequence(seq.f1, seq.f2, seq.var, tuple(steps), normalized=True)


def subresultant_sequence(f1: Poly, f2: Poly, v: str | int) -> SubresultantSeq:
    """Subresultant PRS (Brown-Collins, defective gaps handled by the usual psi recurrence).

    The last nonzero element is the resultant when it is free of ``v``.
    """
    order = f1.order
    k = order.index(v)
    d1, d2 = f1.degree(k), f2.degree(k)
    if d2 < 1 or d1 < d2:
        raise PolyError("need deg(f1) >= deg(f2) >= 1")
    els = [f1, f2]
    lcs = [f1.lc(k), f2.lc(k)]
    a, b = f1, f2
    delta = d1 - d2
    beta = Poly.const(order, (-1) ** (delta + 1))
    psi = Poly.const(order, -1)
    while True:
        r = prem(a, b, k)
        if r.is_zero():
            break
        r = divide_exact(r, beta)
        els.append(r)
        lcs.append(r.lc(k))
        if r.degree(k) == 0:
            break
        lb = b.lc(k)
        # psi_{i+1} = (-lc)^delta / psi_i^(delta-1)
        num = (-lb) ** delta
        psi = divide_exact(num, psi ** (delta - 1)) if delta >= 1 else num * psi
        new_delta = b.degree(k) - r.degree(k)
        beta = -lb * psi ** new_delta
        a, b, delta = b, r, new_delta
    return SubresultantSeq(tuple(els), tuple(lcs), k)


def primitivity_certificate(g: Poly, l: Poly, s: Poly) -> bool:
    """``gcd(l, s) == 1`` certifies that ``g`` has no factor free of the main variable.

    Sufficient only: ``False`` means the content has to be computed directly.
    """
    if l.is_zero() and s.is_zero():
        return False
    return _is_unit(gcd(l, s))
