"""Multiplicity-preserving triangular decomposition of two polynomials.

The tracked remainder sequence of :mod:`mptd.prs` gives a signed sum of
triangular sets whose weighted zeros add up to the zeros of the input system.
For two variables the negative terms are cancelled against the positive ones,
leaving an all-positive decomposition; for three variables the parts of the
cross terms that lie in the plane of the lower variables are decomposed
recursively and cancelled there; with more variables they are returned as
pending sub-systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from mptd import cycles as C
from mptd import upoly as U
from mptd.polyring import (
    Poly,
    PolyError,
    VarOrder,
    canonical,
    content,
    divide_exact,
    gcd,
)
from mptd.prs import CommonFactorError, PrsSequence, prs_extended

__all__ = [
    "TriSet",
    "SignedComponent",
    "PendingSystem",
    "Term",
    "Decomposition",
    "MultZeroReport",
    "split_contents",
    "signed_decompose",
    "bivariate_decompose",
    "cor42_shortcircuit",
    "remove_negatives",
    "triangular_gcd",
    "expand_term",
    "report_multiplicities",
]


def _is_const(p: Poly) -> bool:
    return p.is_constant()


@dataclass(frozen=True)
class TriSet:
    """A triangular pair: ``lower`` free of the main variable, ``upper`` arbitrary."""

    lower: Poly
    upper: Poly

    def __post_init__(self):
        if self.lower.is_zero():
            raise PolyError("lower polynomial of a triangular set must be nonzero")
        if not self.lower.free_of(len(self.lower.order) - 1):
            raise PolyError(f"lower polynomial {self.lower} involves the main variable")
        object.__setattr__(self, "lower", canonical(self.lower))
        object.__setattr__(self, "upper", canonical(self.upper))

    @property
    def order(self) -> VarOrder:
        return self.lower.order

    def key(self) -> tuple[str, str]:
        return (str(self.lower), str(self.upper))

    def to_dict(self) -> dict:
        return {"lower": str(self.lower), "upper": str(self.upper)}


@dataclass(frozen=True)
class SignedComponent:
    triset: TriSet
    weight: int

    def __post_init__(self):
        if self.weight == 0:
            raise ValueError("component weight must be nonzero")

    def to_dict(self) -> dict:
        return {**self.triset.to_dict(), "weight": self.weight}


@dataclass(frozen=True)
class PendingSystem:
    """A system of two polynomials free of the main variable, left for the caller."""

    f1: Poly
    f2: Poly
    weight: int
    source: str = ""

    def to_dict(self) -> dict:
        return {"system": [str(self.f1), str(self.f2)], "weight": self.weight, "source": self.source}


@dataclass(frozen=True)
class Term:
    """One signed term of the decomposition before any cancellation."""

    label: str
    lower: Poly
    upper: Poly
    weight: int


@dataclass
class Decomposition:
    f1: Poly
    f2: Poly
    positives: list[SignedComponent] = field(default_factory=list)
    negatives: list[SignedComponent] = field(default_factory=list)
    pending: list[PendingSystem] = field(default_factory=list)
    trace: PrsSequence | None = None
    terms: list[Term] = field(default_factory=list)
    shortcut: bool = False
    removal_iterations: int = 0
    removal_bound: int = 0

    @property
    def order(self) -> VarOrder:
        return self.f1.order

    @property
    def components(self) -> list[SignedComponent]:
        return self.positives + self.negatives

    def to_dict(self) -> dict:
        return {
            "components": [c.to_dict() for c in self.components],
            "pending": [p.to_dict() for p in self.pending],
        }


@dataclass(frozen=True)
class MultZeroReport:
    """Disjoint groups of common zeros with their multiplicities.

    Each entry is a triangular set ``(g(x), h(x, y))`` describing finitely many
    points (``g`` squarefree, ``h`` squarefree above every root of ``g``), all with
    the same multiplicity.
    """

    points: tuple[tuple[TriSet, int], ...]

    @property
    def total(self) -> int:
        return sum(m * t.lower.degree(0) * t.upper.degree(1) for t, m in self.points)

    def multiset(self) -> list[int]:
        out = []
        for t, m in self.points:
            out += [m] * (t.lower.degree(0) * t.upper.degree(1))
        return sorted(out, reverse=True)

    def rational_points(self) -> dict[tuple[Fraction, Fraction], int]:
        """Multiplicities of the points listed with both coordinates rational."""
        out = {}
        for t, m in self.points:
            if t.lower.degree(0) == 1 and t.upper.degree(1) == 1 and t.upper.degree(0) <= 0:
                a = Fraction(-t.lower.coeff(0, 0).constant_value(), t.lower.coeff(0, 1).constant_value())
                b = Fraction(-t.upper.coeff(1, 0).constant_value(), t.upper.coeff(1, 1).constant_value())
                out[(a, b)] = m
        return out

    def to_list(self) -> list[dict]:
        return [{**t.to_dict(), "multiplicity": m} for t, m in self.points]


# ---------------------------------------------------------------------------
# helpers


def _main_order(f1: Poly, f2: Poly, v) -> tuple[Poly, Poly]:
    """Move ``v`` to the end of the variable order if it is not the main variable."""
    if f1.order != f2.order:
        raise PolyError("polynomials built against different variable orders")
    order = f1.order
    if v is None:
        return f1, f2
    name = order.names[order.index(v)]
    if name == order.main:
        return f1, f2
    new = VarOrder([n for n in order.names if n != name] + [name])
    return f1.reorder(new), f2.reorder(new)


def _check_coprime(f1: Poly, f2: Poly) -> None:
    if f1.is_zero() or f2.is_zero():
        raise PolyError("zero polynomial in the input system")
    g = gcd(f1, f2)
    if not _is_const(g):
        raise CommonFactorError(g)


def _plane(order: VarOrder) -> VarOrder:
    return VarOrder(order.names[:-1])


def _piece_components(pieces: list[C.Piece], order: VarOrder) -> list[SignedComponent]:
    out = []
    for p in pieces:
        lo, up = p.polys(order)
        out.append(SignedComponent(TriSet(lo, up), p.mult))
    return out


def _weighted_points(lower: Poly, upper: Poly, w: int) -> int:
    return abs(w) * lower.total_degree() * max(upper.degree(len(upper.order) - 1), 0)


# ---------------------------------------------------------------------------
# operations


def split_contents(f1: Poly, f2: Poly, v=None):
    """Split off the contents of ``f1`` and ``f2`` in the main variable.

    Returns ``(c1, c2, f1p, f2p)`` where ``c1 = (h1, f2p)`` and ``c2 = (h2, f1p)``
    are triangular sets (``None`` when the content is a constant or the set has
    no zeros) and ``f1p, f2p`` are the primitive parts.  A polynomial free of
    the main variable is its own content, with primitive part ``1``.
    """
    f1, f2 = _main_order(f1, f2, v)
    _check_coprime(f1, f2)
    k = len(f1.order) - 1
    h1, h2 = content(f1, k), content(f2, k)
    f1p, f2p = divide_exact(f1, h1), divide_exact(f2, h2)
    c1 = TriSet(h1, f2p) if not _is_const(h1) and not _is_const(f2p) else None
    c2 = TriSet(h2, f1p) if not _is_const(h2) and not _is_const(f1p) else None
    return c1, c2, f1p, f2p


def _terms(f1: Poly, f2: Poly) -> tuple[list[Term], PrsSequence | None]:
    """Signed terms for a coprime pair in its own variable order (main variable last)."""
    k = len(f1.order) - 1
    h1, h2 = content(f1, k), content(f2, k)
    f1p, f2p = divide_exact(f1, h1), divide_exact(f2, h2)
    terms: list[Term] = []
    if not _is_const(h1):
        terms.append(Term("M(h_1,f_2')", h1, f2p, 1))
    if not _is_const(h2):
        terms.append(Term("M(h_2,f_1')", h2, f1p, 1))
    if f1p.degree(k) < 1 or f2p.degree(k) < 1:
        return terms, None
    if f1p.degree(k) < f2p.degree(k):
        f1p, f2p = f2p, f1p
    seq = prs_extended(f1p, f2p, k)
    els = seq.elements
    n = seq.k
    for i, s in enumerate(seq.steps, 1):
        fi1 = els[i]
        if not _is_const(s.p):
            terms.append(Term(f"M(p_{i},f_{i + 1})", s.p, fi1, 1))
        if not _is_const(s.w):
            terms.append(Term(f"M(w_{i},f_{i + 1})", s.w, fi1, -1))
        if i < n and not _is_const(s.m):
            mp = divide_exact(seq.m_prev(i), s.w)
            if not _is_const(mp):
                terms.append(Term(f"M(m_{i},m_{i - 1}/w_{i})", s.m, mp, -1))
            if not _is_const(s.p):
                terms.append(Term(f"M(m_{i},p_{i})", s.m, s.p, -1))
            terms.append(Term(f"M(m_{i},q_{i})", s.m, s.q, 1))
    fk1, fk2 = seq.last_pair
    if not _is_const(fk2):
        terms.append(Term(f"M(f_{n + 2},f_{n + 1})", fk2, fk1, 1))
    last = seq.steps[-1].m
    if not _is_const(last):
        terms.append(Term(f"M(m_{n},f_{n + 1})", last, fk1, -1))
    return terms, seq


def _expand(lower: Poly, upper: Poly):
    """Split a term into a part with finitely many points above each ``lower`` zero
    and vertical parts where ``upper`` reduces to its constant coefficient.

    Returns ``(rest, [(d_j, c0)])`` with ``M(lower, upper) = M(rest, upper) + sum M(d_j, c0)``.
    """
    k = len(lower.order) - 1
    if upper.free_of(k):
        return None, [(lower, upper)]
    cols = upper.as_univariate(k)
    G = None
    for c in cols[1:]:
        if not c.is_zero():
            G = c if G is None else gcd(G, c)
    rest, vertical = lower, []
    while True:
        d = gcd(rest, G)
        if _is_const(d):
            break
        vertical.append((d, cols[0]))
        rest = divide_exact(rest, d)
    return (None if _is_const(rest) else rest), vertical


def signed_decompose(f1: Poly, f2: Poly, v=None) -> Decomposition:
    """Signed decomposition of a coprime pair in any number of variables.

    Every term of the remainder-sequence identity is recorded in ``terms``.
    Terms with no zeros are dropped.  In three variables the parts of terms that
    live in the plane of the lower variables are decomposed there and cancelled
    against each other; in four or more they become ``pending``.
    """
    f1, f2 = _main_order(f1, f2, v)
    order = f1.order
    if len(order) < 2:
        raise PolyError("need at least two variables")
    _check_coprime(f1, f2)
    terms, seq = _terms(f1, f2)
    d = Decomposition(f1, f2, trace=seq, terms=terms)
    if len(order) == 2:
        for t in terms:
            if C.is_empty(t.lower, t.upper):
                continue
            comp = SignedComponent(TriSet(t.lower, t.upper), t.weight)
            (d.positives if t.weight > 0 else d.negatives).append(comp)
        if seq is not None:
            d.shortcut = cor42_shortcircuit(seq)
        return d
    merged: dict[tuple[str, str], list] = {}
    vertical: list[tuple[Poly, Poly, int, str]] = []
    for t in terms:
        rest, vert = _expand(t.lower, t.upper)
        if rest is not None:
            ts = TriSet(rest, t.upper)
            entry = merged.setdefault(ts.key(), [ts, 0])
            entry[1] += t.weight
        vertical += [(a, b, t.weight, t.label) for a, b in vert]
    for ts, w in merged.values():
        if w:
            (d.positives if w > 0 else d.negatives).append(SignedComponent(ts, w))
    plane = _plane(order)
    if len(order) == 3:
        pieces = []
        for a, b, w, _ in vertical:
            pieces += _plane_pieces(a.reorder(plane), b.reorder(plane), w)
        for c in _lift(_piece_components(C.split_rational(C.refine(pieces)), plane), order):
            (d.positives if c.weight > 0 else d.negatives).append(c)
    else:
        # repeated factors of a term give the same sub-system several times
        acc: dict[tuple[str, str, str], list] = {}
        for a, b, w, label in vertical:
            a, b = canonical(a).reorder(plane), canonical(b).reorder(plane)
            acc.setdefault((str(a), str(b), label), [a, b, 0])[2] += w
        d.pending = [PendingSystem(a, b, w, label) for (_, _, label), (a, b, w) in acc.items() if w]
    return d


def _lift(comps: list[SignedComponent], order: VarOrder) -> list[SignedComponent]:
    return [SignedComponent(TriSet(c.triset.lower.reorder(order), c.triset.upper.reorder(order)), c.weight)
            for c in comps]


def expand_term(term: Term) -> list[SignedComponent]:
    """The weighted components of a single term in three variables.

    The part of the term lying in the plane of the lower variables is decomposed
    there; e.g. ``M(x^2, x*z + y)`` gives ``2*M(x, y)``.
    """
    order = term.lower.order
    if len(order) != 3:
        raise PolyError("expand_term needs three variables")
    rest, vert = _expand(term.lower, term.upper)
    out = [SignedComponent(TriSet(rest, term.upper), term.weight)] if rest is not None else []
    plane = _plane(order)
    pieces = []
    for a, b in vert:
        pieces += _plane_pieces(a.reorder(plane), b.reorder(plane), term.weight)
    return out + _lift(_piece_components(C.split_rational(C.refine(pieces)), plane), order)


def _plane_pieces(a: Poly, b: Poly, w: int) -> list[C.Piece]:
    """Weighted pieces of a coprime bivariate system."""
    if a.free_of(1) and b.free_of(1):
        if not _is_const(gcd(a, b)):
            raise CommonFactorError(gcd(a, b))
        return []
    dec = bivariate_decompose(a, b)
    out = []
    for c in dec.positives:
        out += C.pieces_of(c.triset.lower, c.triset.upper, c.weight * w)
    return out


def cor42_shortcircuit(seq: PrsSequence) -> bool:
    """True when every ``w_i`` is constant and ``f_{k+1}`` has the form ``l1*y^t + l0``."""
    if any(not _is_const(s.w) for s in seq.steps):
        return False
    fk1, _ = seq.last_pair
    cols = fk1.as_univariate(seq.var)
    t = len(cols) - 1
    return t > 0 and all(c.is_zero() for c in cols[1:t])


def bivariate_decompose(f1: Poly, f2: Poly) -> Decomposition:
    """All-positive decomposition of a coprime zero-dimensional system in two variables."""
    if len(f1.order) != 2:
        raise PolyError(f"bivariate_decompose needs two variables, got {f1.order.names}")
    d = signed_decompose(f1, f2)
    if not d.negatives:
        return d
    pos, stats = remove_negatives(d.positives, d.negatives, stats={})
    d.positives, d.negatives = pos, []
    d.removal_iterations = stats["iterations"]
    d.removal_bound = stats["bound"]
    return d


def remove_negatives(pos: list[SignedComponent], neg: list[SignedComponent], stats: dict | None = None):
    """Cancel the weighted zeros of ``neg`` against ``pos`` (two variables).

    The sign of the weights in ``neg`` is ignored.  The result is a list of
    disjoint positive components.  When ``stats`` is given, the list is returned
    together with ``stats`` filled with the number of matching iterations and
    the bound ``sum |w| * deg(lower) * deg_y(upper)`` over ``neg``.
    """
    comps = pos + neg
    if not comps:
        return ([], {"iterations": 0, "bound": 0}) if stats is not None else []
    order = comps[0].triset.order
    if len(order) != 2:
        raise PolyError("remove_negatives works on two-variable components")
    w1, w2 = [], []
    for c in pos:
        w1 += C.pieces_of(c.triset.lower, c.triset.upper, abs(c.weight))
    for c in neg:
        w2 += C.pieces_of(c.triset.lower, c.triset.upper, abs(c.weight))
    left, iterations = C.remove(w1, w2)
    out = _piece_components(C.split_rational(C.refine(left)), order)
    if stats is None:
        return out
    stats["iterations"] = iterations
    stats["bound"] = sum(_weighted_points(c.triset.lower, c.triset.upper, c.weight) for c in neg)
    return out, stats


def triangular_gcd(u: Poly, v: Poly, modulus: Poly) -> list[tuple[Poly, Poly]]:
    """Monic gcd of ``u`` and ``v`` in ``y`` modulo the squarefree part of ``modulus``.

    Returns ``(factor, gcd)`` pairs over a coprime splitting of the modulus.
    """
    if modulus.is_zero():
        raise PolyError("zero modulus")
    if modulus.is_constant() or not modulus.free_of(1):
        raise PolyError(f"modulus {modulus} must be a nonconstant polynomial in {modulus.order.names[0]}")
    from mptd import tower as T

    order = modulus.order
    g = U.qmonic(U.to_fraction(U.squarefree_part(modulus.to_dense(0))))
    out = []
    for gj, w in T.gcd(T.reduce(C.qxy_of(u), g), T.reduce(C.qxy_of(v), g), g):
        out.append((C.qx_to_poly(gj, order), C.qxy_to_poly(w, order)))
    return out


def report_multiplicities(d: Decomposition) -> MultZeroReport:
    """Per-point multiplicities of an all-positive two-variable decomposition."""
    if d.negatives or d.pending:
        raise PolyError("report needs an all-positive decomposition")
    order = d.order
    if len(order) != 2:
        raise PolyError("multiplicity report is defined for two variables")
    pieces = []
    for c in d.positives:
        pieces += C.pieces_of(c.triset.lower, c.triset.upper, c.weight)
    comps = _piece_components(C.split_rational(C.refine(pieces)), order)
    return MultZeroReport(tuple((c.triset, c.weight) for c in comps))
