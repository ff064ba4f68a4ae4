"""Weighted zero sets of bivariate triangular sets.

A :class:`Piece` ``(g, h, mult)`` stands for the points ``(a, b)`` with
``g(a) = 0`` and ``h(a, b) = 0``, each counted ``mult`` times.  ``g`` is a monic
squarefree polynomial in ``x``; ``h`` has a leading coefficient in ``y`` that is
invertible modulo ``g`` and is squarefree at every root of ``g``, so a piece is a plain set of points with a
single weight.  Lists of pieces are added, subtracted and compared by splitting
them against each other until they are disjoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from mptd import tower as T
from mptd import upoly as U
from mptd.polyring import Poly, PolyError, VarOrder


@dataclass(frozen=True)
class Piece:
    g: tuple
    h: tuple
    mult: int

    @staticmethod
    def make(g, h, mult: int) -> "Piece":
        return Piece(tuple(g), tuple(tuple(c) for c in h), mult)

    @property
    def gl(self) -> list:
        return list(self.g)

    @property
    def hl(self) -> list:
        return [list(c) for c in self.h]

    @property
    def npoints(self) -> int:
        return (len(self.g) - 1) * (len(self.h) - 1)

    def with_mult(self, mult: int) -> "Piece":
        return Piece(self.g, self.h, mult)

    def sort_key(self):
        return (len(self.g), len(self.h), str(self.g), str(self.h))

    def polys(self, order: VarOrder) -> tuple[Poly, Poly]:
        """Integer ``(lower, upper)`` in a two-variable order ``(x, y)``."""
        return qx_to_poly(self.gl, order), qxy_to_poly(self.hl, order)


class OrphanError(PolyError):
    """A negative zero could not be matched against the positive zeros."""


# ---------------------------------------------------------------------------
# conversions


def qx_of(u: Poly) -> list:
    return U.to_fraction(u.to_dense(0))


def qxy_of(v: Poly) -> list:
    return U.qstrip([U.to_fraction(c.to_dense(0)) for c in v.as_univariate(1)])


def qx_to_poly(a: list, order: VarOrder) -> Poly:
    return Poly.from_dense(U.to_integer(a), 0, order)


def qxy_to_poly(h: list, order: VarOrder) -> Poly:
    dens = [Fraction(c).denominator for col in h for c in col]
    den = math.lcm(*dens) if dens else 1
    cols = [[int(Fraction(c) * den) for c in col] for col in h]
    cont = math.gcd(*[c for col in cols for c in col]) or 1
    y = Poly.var(order, 1)
    acc = Poly.zero(order)
    for j, col in enumerate(cols):
        if col:
            acc = acc + Poly.from_dense([c // cont for c in col], 0, order) * y ** j
    return acc


def pieces_of(u: Poly, v: Poly, weight: int) -> list[Piece]:
    """Pieces of the zero set of ``(u(x), v(x, y))`` counted with intersection multiplicity.

    ``u`` must be free of ``y``.  Raises :class:`PolyError` if ``v`` vanishes
    identically above a root of ``u``.
    """
    if u.is_zero():
        raise PolyError("lower polynomial is zero")
    if not u.free_of(1):
        raise PolyError(f"lower polynomial {u} involves the main variable")
    if u.is_constant() or weight == 0:
        return []
    vy = [U.to_fraction(c.to_dense(0)) for c in v.as_univariate(1)]
    out = []
    for ue, e in U.sqf_list(u.to_dense(0)):
        g = U.qmonic(U.to_fraction(ue))
        try:
            parts = T.squarefree(vy, g)
        except ValueError:
            raise PolyError(f"({u}, {v}) has infinitely many zeros") from None
        for g1, facs in parts:
            for h, j in facs:
                out.append(Piece.make(g1, h, weight * e * j))
    return out


def is_empty(u: Poly, v: Poly) -> bool:
    """``True`` iff ``(u(x), v(x, y))`` has no common zero (cheap, no splitting)."""
    if u.is_constant():
        return True
    s = U.squarefree_part(u.to_dense(0))
    cols = v.as_univariate(1)
    for c in cols[1:]:
        if not c.is_zero() and not U.divides(s, c.to_dense(0)):
            return False
    c0 = cols[0].to_dense(0) if cols else []
    return len(U.gcd(s, c0)) == 1 if c0 else False


# ---------------------------------------------------------------------------
# splitting


def intersect(a: Piece, b: Piece):
    """Split two pieces into ``(common, a_only, b_only)`` lists of ``(g, h)`` pairs."""
    p = U.qgcd(a.gl, b.gl)
    if len(p) == 1:
        return [], [(a.gl, a.hl)], [(b.gl, b.hl)]
    common, a_only, b_only = [], [], []
    for src, dst in ((a, a_only), (b, b_only)):
        rest, _ = U.qdivmod(src.gl, p)
        if len(rest) > 1:
            rest = U.qmonic(rest)
            dst.append((rest, T.reduce(src.hl, rest)))
    for pj, w in T.gcd(T.reduce(a.hl, p), T.reduce(b.hl, p), p):
        ha, hb = T.reduce(a.hl, pj), T.reduce(b.hl, pj)
        if len(w) <= 1:
            a_only.append((pj, ha))
            b_only.append((pj, hb))
            continue
        common.append((pj, w))
        for h, dst in ((ha, a_only), (hb, b_only)):
            rest = T.quo(h, w, pj)
            if len(rest) > 1:
                dst.append((pj, rest))
    return common, a_only, b_only


def insert(pieces: list[Piece], new: Piece) -> list[Piece]:
    """Add ``new`` to a list of pairwise disjoint pieces, keeping them disjoint."""
    result = list(pieces)
    todo = [new]
    while todo:
        r = todo.pop()
        for idx, q in enumerate(result):
            common, r_only, q_only = intersect(r, q)
            if not common:
                continue
            result.pop(idx)
            result += [Piece.make(g, h, q.mult) for g, h in q_only]
            result += [Piece.make(g, h, q.mult + r.mult) for g, h in common]
            todo += [Piece.make(g, h, r.mult) for g, h in r_only]
            break
        else:
            result.append(r)
    return [p for p in result if p.mult != 0]


def refine(pieces: list[Piece]) -> list[Piece]:
    """Disjoint pieces with the same weighted zero set; zero weights dropped."""
    out: list[Piece] = []
    for p in pieces:
        out = insert(out, p)
    return sorted(out, key=Piece.sort_key)


def same_cycle(a: list[Piece], b: list[Piece]) -> bool:
    return not refine(list(a) + [p.with_mult(-p.mult) for p in b])


def remove(positive: list[Piece], negative: list[Piece]) -> tuple[list[Piece], int]:
    """Delete the weighted zeros of ``negative`` from ``positive``.

    Negatives are taken in descending degree of the modulus and matched against
    positives in the same order.  Returns the remaining pieces and the number of
    matching iterations.  Raises :class:`OrphanError` if a negative zero has no
    positive counterpart.
    """
    w1 = [p for p in positive if p.mult]
    w2 = [p for p in negative if p.mult]
    if any(p.mult < 0 for p in w1 + w2):
        raise ValueError("remove expects positive weights on both sides")
    desc = lambda p: (-len(p.g), -len(p.h), str(p.g), str(p.h))  # noqa: E731
    iterations = 0
    while w2:
        w2.sort(key=desc)
        u = w2.pop(0)
        w1.sort(key=desc)
        for idx, v in enumerate(w1):
            common, u_only, v_only = intersect(u, v)
            if not common:
                continue
            iterations += 1
            w1.pop(idx)
            w1 += [Piece.make(g, h, v.mult) for g, h in v_only]
            w2 += [Piece.make(g, h, u.mult) for g, h in u_only]
            for g, h in common:
                if v.mult > u.mult:
                    w1.append(Piece.make(g, h, v.mult - u.mult))
                elif u.mult > v.mult:
                    w2.append(Piece.make(g, h, u.mult - v.mult))
            break
        else:
            raise OrphanError("negative component has zeros not covered by the positive components")
    return sorted(w1, key=Piece.sort_key), iterations


# ---------------------------------------------------------------------------
# presentation


def rational_roots(a: list) -> list[Fraction]:
    """Rational roots of a squarefree rational polynomial (numeric candidates, exact check)."""
    ints = U.to_integer(a)
    if len(ints) <= 1:
        return []
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    lead = abs(ints[-1])
    if len(ints) == 2:
        return roots + [Fraction(-ints[0], ints[1])]
    try:
        scale = max(abs(c) for c in ints)
        approx = np.roots([float(Fraction(c, scale)) for c in reversed(ints)])
    except (OverflowError, ValueError, np.linalg.LinAlgError):
        return roots
    seen = set()
    for z in approx:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
            continue
        cand = Fraction(float(z.real)).limit_denominator(lead)
        if cand not in seen and U.evaluate(ints, cand) == 0:
            seen.add(cand)
            roots.append(cand)
    return roots


def split_rational(pieces: list[Piece]) -> list[Piece]:
    """Split every modulus into its rational roots and the rest (presentation only)."""
    out = []
    for p in pieces:
        g = p.gl
        for r in rational_roots(g):
            lin = [-r, Fraction(1)]
            out.append(Piece.make(lin, T.monic(T.reduce(p.hl, lin), lin), p.mult))
            g, _ = U.qdivmod(g, lin)
        if len(g) > 1:
            out.append(Piece.make(g, T.reduce(p.hl, g), p.mult))
    return sorted(out, key=Piece.sort_key)
