"""Independent multiplicity check for zero-dimensional systems in two variables.

After a shear ``x -> x + s*y`` chosen so that both polynomials have constant
leading coefficients in ``y`` and no two common zeros share an x-coordinate,
the multiplicity of a common zero equals the multiplicity of its x-coordinate as
a root of ``Res_y``.  The shear is certified with subresultants: above every
multiple root of the resultant the gcd of the two specialized polynomials must
be a power of a single linear factor.

The multiplicity computation only uses integer determinants, interpolation
and univariate arithmetic; it shares no code with the decomposition engine
beyond the polynomial container.  :func:`cross_check` then tests the engine's
reported zero groups against it with exact divisibility tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - plain ints are exact too, only slower
    mpz = int

from mptd import upoly as U
from mptd.polyring import Poly, PolyError, VarOrder, divide_exact

__all__ = [
    "OracleError",
    "ShearedSystem",
    "RootGroup",
    "OracleReport",
    "CrossCheck",
    "sylvester_resultant",
    "shear_values",
    "multiplicities_by_shear",
    "cross_check",
]


class OracleError(PolyError):
    """No certified shear was found within the retry budget."""


@dataclass(frozen=True)
class ShearedSystem:
    shear: int
    f1s: Poly
    f2s: Poly
    certificate: dict


@dataclass(frozen=True)
class RootGroup:
    """All roots of the squarefree integer polynomial ``factor`` (in ``X``) share ``multiplicity``."""

    factor: tuple[int, ...]
    multiplicity: int

    @property
    def count(self) -> int:
        return len(self.factor) - 1

    def factor_str(self) -> str:
        return str(Poly.from_dense(list(self.factor), 0, VarOrder(["X"])))


@dataclass(frozen=True)
class OracleReport:
    system: ShearedSystem
    groups: tuple[RootGroup, ...]
    resultant: tuple[int, ...]

    @property
    def shear(self) -> int:
        return self.system.shear

    @property
    def total(self) -> int:
        return sum(g.count * g.multiplicity for g in self.groups)

    @property
    def per_point(self) -> list[tuple[str, int, int]]:
        """``(factor, root index, multiplicity)`` for every common zero."""
        return [(g.factor_str(), i, g.multiplicity) for g in self.groups for i in range(g.count)]

    def multiset(self) -> list[int]:
        return sorted((m for _, _, m in self.per_point), reverse=True)

    def to_dict(self) -> dict:
        return {
            "shear": self.shear,
            "total": self.total,
            "groups": [{"factor": g.factor_str(), "roots": g.count, "multiplicity": g.multiplicity}
                       for g in self.groups],
        }


@dataclass
class CrossCheck:
    ok: bool
    diff: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"match": self.ok, "diff": self.diff}


# ---------------------------------------------------------------------------
# determinants and interpolation


def _bareiss(rows: list[list[int]]) -> int:
    """Integer determinant by fraction-free elimination."""
    a = [[mpz(v) for v in r] for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return int(sign * a[n - 1][n - 1])


def _sub_matrix(a: list[int], b: list[int], j: int, i: int) -> list[list[int]]:
    """Rows of the j-th subresultant matrix with the last column taken at power ``i``.

    ``a`` and ``b`` are coefficient lists (lowest first) padded to their formal degrees.
    """
    m, n = len(a) - 1, len(b) - 1
    top = m + n - j - 1
    powers = list(range(top, j, -1)) + [i]
    rows = []
    for src, shifts in ((a, n - j), (b, m - j)):
        for k in range(shifts):
            rows.append([src[p - k] if 0 <= p - k < len(src) else 0 for p in powers])
    return rows


def _interpolate(xs: list[int], ys: list[int]) -> list:
    """Newton interpolation; returns a dense Fraction list."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly: list = []
    for i in range(n - 1, -1, -1):
        # poly = poly * (X - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly
        for t in range(len(poly)):
            shifted[t] -= xs[i] * poly[t]
        if shifted:
            shifted[0] += coef[i]
        else:
            shifted = [coef[i]]
        poly = shifted
    return U.qstrip(poly)


def _columns(f: Poly, y: int) -> list[Poly]:
    return f.as_univariate(y)


def _specialize(cols: list[Poly], x: int, x0: int) -> list[int]:
    return [U.evaluate(c.to_dense(x), x0) if not c.is_zero() else 0 for c in cols]


def _det_poly(F1: Poly, F2: Poly, j: int, i: int) -> list:
    """``det M_{j,i}`` of two polynomials in ``(x, y)`` as an interpolated Fraction list in x."""
    c1, c2 = _columns(F1, 1), _columns(F2, 1)
    m, n = len(c1) - 1, len(c2) - 1
    if j >= min(m, n):
        # top of the chain: the polynomial of smaller degree itself
        small = c2 if n <= m else c1
        return U.to_fraction(small[i].to_dense(0)) if i < len(small) and not small[i].is_zero() else []
    bound = (n - j) * F1.degree(0) + (m - j) * F2.degree(0)
    xs = list(range(bound + 2))
    ys = [_bareiss(_sub_matrix(_specialize(c1, 0, a), _specialize(c2, 0, a), j, i)) for a in xs]
    poly = _interpolate(xs[:-1], ys[:-1])
    if U.evaluate(poly, xs[-1]) != ys[-1]:
        raise OracleError("interpolation check failed; degree bound violated")
    return poly


# ---------------------------------------------------------------------------
# resultant


def sylvester_resultant(f: Poly, g: Poly, v) -> Poly:
    """Determinant of the Sylvester matrix of ``f`` and ``g`` with respect to ``v``."""
    if f.order != g.order:
        raise PolyError("polynomials built against different variable orders")
    k = f.order.index(v)
    m, n = f.degree(k), g.degree(k)
    if m < 1 or n < 1:
        raise PolyError("both polynomials must involve the elimination variable")
    a, b = f.as_univariate(k), g.as_univariate(k)
    zero = Poly.zero(f.order)
    size = m + n
    rows = []
    for src, shifts, deg in ((a, n, m), (b, m, n)):
        for s in range(shifts):
            row = [zero] * size
            for p in range(deg + 1):
                row[size - 1 - (p + s)] = src[p]
            rows.append(row)
    return _bareiss_poly(rows)


def _bareiss_poly(a: list[list[Poly]]) -> Poly:
    n = len(a)
    order = a[0][0].order
    sign, prev = 1, Poly.const(order, 1)
    a = [list(r) for r in a]
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(order)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = divide_exact(a[i][j] * akk - aik * a[k][j], prev)
        prev = akk
    return a[n - 1][n - 1] * sign


# ---------------------------------------------------------------------------
# shear and certificate


def shear_values():
    """The deterministic shear sequence ``1, -1, 2, -2, ...``."""
    for s in count(1):
        yield s
        yield -s


def _shear(f: Poly, s: int) -> Poly:
    o = f.order
    return f.compose([Poly.var(o, 0) + s * Poly.var(o, 1), Poly.var(o, 1)])


def _qreduce_cols(cols: list, phi: list) -> list:
    return [U.qrem(c, phi) for c in cols]


def _unique_root_above(F1: Poly, F2: Poly, phi: list[int], j: int) -> bool:
    """Check ``S_j(a, y) = lc * (y - b)^j`` at every root ``a`` of ``phi``."""
    phiq = U.to_fraction(phi)
    cols = [U.qrem(_det_poly(F1, F2, j, i), phiq) for i in range(j + 1)]
    lc, cj1 = cols[j], cols[j - 1]
    # (j*lc)^j * S_j  ==  lc * (j*lc*y + c_{j-1})^j   modulo phi
    jl = [j * c for c in lc]
    left_scale = [Fraction(1)]
    for _ in range(j):
        left_scale = U.qrem(U.mul(left_scale, jl), phiq)
    left = [U.qrem(U.mul(left_scale, c), phiq) for c in cols]
    lin = [cj1, jl]
    power = [[Fraction(1)]]
    for _ in range(j):
        nxt = [[] for _ in range(len(power) + 1)]
        for p, cp in enumerate(power):
            for q, cq in enumerate(lin):
                nxt[p + q] = U.qrem(U.add(nxt[p + q], U.mul(cp, cq)), phiq)
        power = nxt
    right = [U.qrem(U.mul(lc, c), phiq) for c in power]
    return all(U.qstrip(U.sub(l_, r_)) == [] for l_, r_ in zip(left, right))


def _certify(F1: Poly, F2: Poly, groups: list[tuple[list[int], int]]) -> bool:
    for phi, e in groups:
        if e == 1:
            continue  # a simple root of the resultant carries exactly one simple zero
        todo = phi
        for j in range(1, e + 1):
            if len(todo) <= 1:
                break
            psc = U.to_integer(_det_poly(F1, F2, j, j))
            vanish = U.gcd(todo, psc) if psc else todo
            vanish = U.primitive(vanish)
            here = U.exquo(todo, vanish) if len(vanish) > 1 else todo
            if len(here) > 1 and j >= 2 and not _unique_root_above(F1, F2, here, j):
                return False
            todo = vanish if len(vanish) > 1 else []
        if len(todo) > 1:
            return False
    return True


def _resultant_x(F1: Poly, F2: Poly) -> list[int]:
    return U.to_integer(_det_poly(F1, F2, 0, 0))


def _check_input(f1: Poly, f2: Poly) -> None:
    if len(f1.order) != 2 or f1.order != f2.order:
        raise PolyError("the oracle works on two polynomials in the same two variables")
    if f1.is_zero() or f2.is_zero():
        raise PolyError("zero polynomial in the system")


def sheared_systems(f1: Poly, f2: Poly, max_tries: int = 16):
    """Yield certified ``(ShearedSystem, resultant, groups)`` triples in shear order."""
    _check_input(f1, f2)
    tries = 0
    for s in shear_values():
        if tries >= max_tries:
            return
        tries += 1
        F1, F2 = _shear(f1, s), _shear(f2, s)
        l1, l2 = F1.lc(1), F2.lc(1)
        lc_ok = l1.is_constant() and l2.is_constant() and F1.degree(1) > 0 and F2.degree(1) > 0
        if not lc_ok:
            continue
        R = _resultant_x(F1, F2)
        if not R:
            raise OracleError("resultant vanishes: the polynomials share a factor")
        groups = U.sqf_list(R)
        if not _certify(F1, F2, groups):
            continue
        cert = {"constant_leading_coefficients": True, "distinct_projected_roots": True}
        yield ShearedSystem(s, F1, F2, cert), R, groups


def multiplicities_by_shear(f1: Poly, f2: Poly, max_tries: int = 16, skip: int = 0) -> OracleReport:
    """Multiplicities of the common zeros of ``f1, f2`` from a certified shear.

    ``skip`` certified shears are passed over first (to get an independent second
    opinion).  Raises :class:`OracleError` when the retry budget runs out.
    """
    for idx, (sys_, R, groups) in enumerate(sheared_systems(f1, f2, max_tries)):
        if idx < skip:
            continue
        rg = tuple(sorted((RootGroup(tuple(phi), e) for phi, e in groups),
                          key=lambda g: (-g.multiplicity, len(g.factor), g.factor)))
        return OracleReport(sys_, rg, tuple(R))
    raise OracleError("no certified shear found; the system may be positive dimensional")


# ---------------------------------------------------------------------------
# comparison


def _int_cols(f: Poly) -> list[list[int]]:
    return [c.to_dense(0) if not c.is_zero() else [] for c in f.as_univariate(1)]


def _substitute_linear(cols: list[list[int]], h0: list[int], h1: list[int]) -> list[int]:
    """``h1^n * P(x, -h0/h1)`` for ``P`` given by its y-columns, ``n = deg_y P``."""
    n = len(cols) - 1
    powers = [[1]]
    for _ in range(n):
        powers.append(U.mul(powers[-1], h1))
    minus_h0 = [-c for c in h0]
    acc = list(cols[n])
    for j in range(n - 1, -1, -1):
        acc = U.add(U.mul(acc, minus_h0), U.mul(cols[j], powers[n - j]) if cols[j] else [])
    return U.strip(acc)


def _vanishes_general(cols: list[list[int]], g: list[int], hcols: list[list[int]]) -> bool:
    """Pseudo-divide by ``h`` in ``y``, reducing modulo ``g`` over Q; zero remainder?"""
    gq = U.to_fraction(g)
    hq = [U.to_fraction(c) for c in hcols]
    lead, dh = hq[-1], len(hq) - 1
    r = [U.qrem(U.to_fraction(c), gq) for c in cols]
    for i in range(len(r) - 1, dh - 1, -1):
        c = r.pop()
        r = [U.qrem(U.mul(lead, x), gq) for x in r]
        if c:
            for jdx in range(dh):
                r[i - dh + jdx] = U.qrem(U.sub(r[i - dh + jdx], U.mul(c, hq[jdx])), gq)
    return not any(U.qstrip(c) for c in r)


class _Group:
    """One reported zero group, with exact vanishing tests on its points."""

    def __init__(self, t, m: int):
        self.t, self.m = t, m
        self.g = U.primitive(t.lower.to_dense(0))
        self.h = _int_cols(t.upper)
        self.npoints = (len(self.g) - 1) * (len(self.h) - 1)
        self.linear = len(self.h) == 2

    def regular(self) -> bool:
        return len(U.gcd(self.g, self.h[-1])) == 1

    def vanishes(self, cols: list[list[int]]) -> bool:
        """Does the polynomial with y-columns ``cols`` vanish at every point?"""
        if self.linear:
            return U.divides(self.g, _substitute_linear(cols, self.h[0], self.h[1]))
        return _vanishes_general(cols, self.g, self.h)

    def avoids(self, cols: list[list[int]]) -> bool:
        """Is the polynomial nonzero at every point?  (linear ``h`` only)"""
        n = _substitute_linear(cols, self.h[0], self.h[1])
        return bool(n) and len(U.gcd(self.g, n)) == 1


def _sheared_cols(phi: list[int], s: int, order: VarOrder) -> list[list[int]]:
    """y-columns of ``phi(x - s*y)``."""
    x, y = Poly.var(order, 0), Poly.var(order, 1)
    return _int_cols(Poly.from_dense(phi, 0, order).compose([x - s * y, y]))


def _compare(f1: Poly, f2: Poly, groups: list, oracle_groups, s: int) -> list[dict]:
    classes = {e: list(phi) for phi, e in oracle_groups}
    order = f1.order
    diff = []
    for grp in groups:
        where = {"component": grp.t.to_dict(), "multiplicity": grp.m, "shear": s}
        if not grp.regular():
            diff.append({**where, "problem": "leading coefficient not invertible"})
            continue
        bad = [str(f) for f in (f1, f2) if not grp.vanishes(_int_cols(f))]
        if bad:
            diff.append({**where, "problem": "not a common zero of " + ", ".join(bad)})
            continue
        if grp.m not in classes:
            diff.append({**where, "problem": "oracle has no zero of this multiplicity"})
            continue
        others = [phi for e, phi in classes.items() if e != grp.m]
        if not others:
            continue  # containment already puts every projection among the roots
        rho = [1]
        for phi in others:
            rho = U.mul(rho, phi)
        phi = classes[grp.m]
        if grp.linear and len(rho) < len(phi):
            ok = grp.avoids(_sheared_cols(rho, s, order))
        else:
            ok = grp.vanishes(_sheared_cols(phi, s, order))
        if not ok:
            diff.append({**where, "problem": "projection not among the oracle roots of this multiplicity"})
    for e in sorted(set(classes) | {g.m for g in groups}):
        found = sum(g.npoints for g in groups if g.m == e)
        expected = len(classes[e]) - 1 if e in classes else 0
        if found != expected:
            diff.append({"multiplicity": e, "shear": s, "expected_points": expected, "found_points": found})
    return diff


def cross_check(d, r: OracleReport, second_opinion: bool = False) -> CrossCheck:
    """Compare an all-positive two-variable decomposition with an oracle report.

    Every reported zero group must lie on both curves, its points must project
    (along the oracle's shear) onto roots of the oracle factor with the same
    multiplicity, and for each multiplicity the number of points must agree.
    The shear certificate makes the projection injective on the common zeros,
    so these checks match multiplicities point by point.  All tests are exact.
    With ``second_opinion`` the comparison is repeated on another certified shear.
    """
    from mptd.decomp import report_multiplicities

    if d.negatives or d.pending:
        return CrossCheck(False, [{"problem": "decomposition still has negative or pending parts"}])
    groups = [_Group(t, m) for t, m in report_multiplicities(d).points]
    diff = _compare(d.f1, d.f2, groups, [(g.factor, g.multiplicity) for g in r.groups], r.shear)
    if second_opinion and not diff:
        for sys_, _R, og in sheared_systems(d.f1, d.f2):
            if sys_.shear != r.shear:
                diff += _compare(d.f1, d.f2, groups, og, sys_.shear)
                break
    return CrossCheck(not diff, diff)
