"""Arithmetic in ``(Q[x]/g)[y]`` for squarefree ``g``, with regularity splitting.

``Q[x]/g`` is a product of fields.  Whenever a leading coefficient is a zero
divisor the modulus is split into the part where it vanishes and the part where
it is invertible, and the computation continues on each part separately.

Elements of ``Q[x]`` are dense ``Fraction`` lists (see :mod:`mptd.upoly`);
elements of ``(Q[x]/g)[y]`` are lists of those, lowest power of ``y`` first.
"""

from __future__ import annotations

from fractions import Fraction

from mptd import upoly as U

Qx = list  # dense Fraction list in x
Qxy = list  # list of Qx, coefficients in y


def _deg(a: list) -> int:
    return len(a) - 1


def reduce(a: Qxy, g: Qx) -> Qxy:
    out = [U.qrem(c, g) if len(c) >= len(g) else list(c) for c in a]
    while out and not out[-1]:
        out.pop()
    return out


def regularize(a: Qxy, g: Qx) -> list[tuple[Qx, Qxy]]:
    """Split ``g`` so that on every part ``a`` is zero or has an invertible leading coefficient."""
    a = reduce(a, g)
    if not a:
        return [(g, [])]
    d = U.qgcd(a[-1], g)
    if len(d) == 1:
        return [(g, a)]
    out = []
    rest, _ = U.qdivmod(g, d)
    if len(rest) > 1:
        out.append((U.qmonic(rest), reduce(a, rest)))
    out.extend(regularize(a[:-1], d))
    return out


def monic(a: Qxy, g: Qx) -> Qxy:
    """Scale ``a`` (with invertible leading coefficient) to leading coefficient 1."""
    if not a:
        return a
    inv = U.qinverse(a[-1], g)
    out = [U.qmulmod(c, inv, g) for c in a[:-1]]
    return out + [[Fraction(1)]]


def add(a: Qxy, b: Qxy) -> Qxy:
    n = max(len(a), len(b))
    out = [U.qstrip(U.add(a[i] if i < len(a) else [], b[i] if i < len(b) else [])) for i in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def neg(a: Qxy) -> Qxy:
    return [[-c for c in x] for x in a]


def sub(a: Qxy, b: Qxy) -> Qxy:
    return add(a, neg(b))


def mul(a: Qxy, b: Qxy, g: Qx) -> Qxy:
    if not a or not b:
        return []
    out = [[] for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = U.add(out[i + j], U.mul(x, y))
    return reduce(out, g)


def deriv(a: Qxy) -> Qxy:
    out = [[c * i for c in a[i]] for i in range(1, len(a))]
    while out and not out[-1]:
        out.pop()
    return out


def divmod_y(a: Qxy, b: Qxy, g: Qx) -> tuple[Qxy, Qxy]:
    """Division by ``b`` whose leading coefficient is invertible modulo ``g``."""
    if not b:
        raise ZeroDivisionError("division by zero in (Q[x]/g)[y]")
    r = reduce(a, g)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = U.qinverse(b[-1], g)
    q: Qxy = [[] for _ in range(len(r) - db)]
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        t = U.qmulmod(c, inv, g)
        q[i - db] = t
        for j in range(db + 1):
            if b[j]:
                r[i - db + j] = U.qrem(U.add(r[i - db + j], [-x for x in U.mul(t, b[j])]), g)
    r = r[:db]
    while r and not r[-1]:
        r.pop()
    while q and not q[-1]:
        q.pop()
    return q, r


def quo(a: Qxy, b: Qxy, g: Qx) -> Qxy:
    q, r = divmod_y(a, b, g)
    if r:
        raise ArithmeticError("inexact division in (Q[x]/g)[y]")
    return q


def gcd(a: Qxy, b: Qxy, g: Qx) -> list[tuple[Qx, Qxy]]:
    """Monic gcd of ``a`` and ``b`` over each part of a splitting of ``g``."""
    out = []
    for g1, b1 in regularize(b, g):
        if not b1:
            for g2, a2 in regularize(a, g1):
                out.append((g2, monic(a2, g2) if a2 else []))
        else:
            _, r = divmod_y(reduce(a, g1), b1, g1)
            out.extend(gcd(b1, r, g1))
    return out


def squarefree(a: Qxy, g: Qx) -> list[tuple[Qx, list[tuple[Qxy, int]]]]:
    """Yun's squarefree decomposition of ``a`` over each part of a splitting of ``g``.

    Raises ``ValueError`` if ``a`` vanishes identically over some root of ``g``.
    """
    res: list = []
    for g1, a1 in regularize(a, g):
        if not a1:
            raise ValueError("polynomial vanishes identically over a root of the modulus")
        if len(a1) == 1:
            res.append((g1, []))
            continue
        if len(a1) == 2:
            # linear with invertible leading coefficient: already squarefree
            res.append((g1, [(a1, 1)]))
            continue
        a1 = monic(a1, g1)
        da = deriv(a1)
        for g2, c in gcd(a1, da, g1):
            a2 = reduce(a1, g2)
            w = quo(a2, c, g2)
            y = quo(reduce(da, g2), c, g2)
            _yun(g2, w, sub(y, deriv(w)), 1, [], res)
    return res


def _yun(g, w, z, i, acc, res):
    if len(w) <= 1:
        res.append((g, [(reduce(h, g), m) for h, m in acc]))
        return
    for g1, h in gcd(w, reduce(z, g), g):
        w1 = reduce(w, g1)
        acc1 = acc + [(h, i)] if len(h) > 1 else acc
        w2 = quo(w1, h, g1)
        y2 = quo(reduce(z, g1), h, g1) if z else []
        _yun(g1, w2, sub(y2, deriv(w2)), i + 1, acc1, res)


def is_zero_on(a: Qxy, g: Qx) -> bool:
    return not reduce(a, g)
