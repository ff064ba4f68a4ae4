"""Dense univariate helpers over the integers and the rationals.

Polynomials are plain lists of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Integer lists hold ``int``;
rational lists hold :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

# ---------------------------------------------------------------------------
# integer polynomials


def strip(a: list) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def deg(a: list) -> int:
    return len(a) - 1


def content(a: list[int]) -> int:
    return reduce(math.gcd, a, 0)


def primitive(a: list[int]) -> list[int]:
    """Primitive part with positive leading coefficient."""
    a = strip(a)
    if not a:
        return a
    c = content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def sub(a: list, b: list) -> list:
    return add(a, [-c for c in b])


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip(out)


def scale(a: list, c) -> list:
    return strip([x * c for x in a])


def evaluate(a: list, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a: list) -> list:
    return strip([i * a[i] for i in range(1, len(a))])


def divmod_int(a: list[int], b: list[int]):
    """Division over the integers; ``(None, None)`` if a quotient coefficient is not integral."""
    b = strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = strip(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        t, m = divmod(c, lb)
        if m:
            return None, None
        q[i - db] = t
        for j in range(db + 1):
            r[i - db + j] -= t * b[j]
    return strip(q), strip(r[:db])


def divides(b: list[int], a: list[int]) -> bool:
    q, r = divmod_int(a, b)
    return q is not None and not r


def prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b``."""
    r = strip(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        r = strip(r)
    return r


def _prs_gcd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = prem(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def _heu_gcd(a: list[int], b: list[int]):
    """Heuristic gcd by evaluation at a large integer; ``None`` if it gives up."""
    norm = min(max(abs(c) for c in a), max(abs(c) for c in b))
    xi = 2 * norm + 29
    for _ in range(6):
        G = math.gcd(evaluate(a, xi), evaluate(b, xi))
        g = []
        half = xi // 2
        while G:
            r = G % xi
            if r > half:
                r -= xi
            g.append(r)
            G = (G - r) // xi
        g = primitive(g)
        if g and divides(g, a) and divides(g, b):
            return g
        xi = xi * 73794 // 27011
    return None


def gcd(a: list[int], b: list[int]) -> list[int]:
    """gcd over the integers with positive leading coefficient (content included)."""
    a, b = strip(a), strip(b)
    if not a:
        return primitive(b) and scale(primitive(b), content(b))
    if not b:
        return scale(primitive(a), content(a))
    c = math.gcd(content(a), content(b))
    pa, pb = primitive(a), primitive(b)
    if len(pa) == 1 or len(pb) == 1:
        return [c]
    g = _heu_gcd(pa, pb)
    if g is None:
        g = _prs_gcd(pa, pb)
    return scale(g, c)


def sqf_list(a: list[int]) -> list[tuple[list[int], int]]:
    """Yun's squarefree decomposition: ``[(factor, multiplicity)]``.

    Factors are primitive, pairwise coprime and nonconstant; the integer content is dropped.
    """
    a = primitive(a)
    if len(a) <= 1:
        return []
    out = []
    da = derivative(a)
    c = primitive(gcd(a, da))
    w = exquo(a, c)
    y = exquo(da, c)
    z = sub(y, derivative(w))
    i = 1
    while len(w) > 1:
        g = primitive(gcd(w, z)) if z else primitive(w)
        if len(g) > 1:
            out.append((g, i))
        w = exquo(w, g)
        y = exquo(z, g) if z else []
        z = sub(y, derivative(w))
        i += 1
    return out


def squarefree_part(a: list[int]) -> list[int]:
    out = [1]
    for f, _ in sqf_list(a):
        out = mul(out, f)
    return primitive(out)


def exquo(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (``b`` primitive or dividing over Z)."""
    q, r = divmod_int(a, b)
    if q is None or r:
        raise ArithmeticError("inexact univariate division")
    return q


def resultant(a: list[int], b: list[int]) -> int:
    """Resultant of two integer polynomials (Euclid over Q)."""
    A = qstrip([Fraction(x) for x in a])
    B = qstrip([Fraction(x) for x in b])
    if not A or not B:
        return 0
    res = Fraction(1)
    while True:
        m, n = len(A) - 1, len(B) - 1
        if n == 0:
            res *= B[0] ** m
            break
        _, R = qdivmod(A, B)
        if not R:
            return 0
        if (m * n) % 2:
            res = -res
        res *= B[-1] ** (m - (len(R) - 1))
        A, B = B, R
    assert res.denominator == 1
    return int(res)


# ---------------------------------------------------------------------------
# rational polynomials


def qstrip(a: list) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def qdivmod(a: list, b: list):
    b = qstrip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = qstrip(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = 1 / Fraction(b[-1])
    q = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        t = c * inv
        q[i - db] = t
        for j in range(db + 1):
            r[i - db + j] -= t * b[j]
    return qstrip(q), qstrip(r[:db])


def qrem(a: list, b: list) -> list:
    if len(a) < len(b):
        return qstrip(a)
    return qdivmod(a, b)[1]


def qmonic(a: list) -> list:
    a = qstrip(a)
    if not a:
        return a
    inv = 1 / Fraction(a[-1])
    return [c * inv for c in a]


def qgcd(a: list, b: list) -> list:
    """Monic gcd over Q (computed on the cleared-denominator integer polynomials)."""
    a, b = qstrip(a), qstrip(b)
    if not a or not b:
        return qmonic(a or b)
    g = gcd(to_integer(a), to_integer(b))
    return qmonic(to_fraction(g))


def qxgcd(a: list, b: list):
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` monic."""
    r0, r1 = qstrip(a), qstrip(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, qstrip(add(s0, [-c for c in mul(q, s1)]) if s1 else s0)
        t0, t1 = t1, qstrip(add(t0, [-c for c in mul(q, t1)]) if t1 else t0)
    if not r0:
        return [], [], []
    inv = 1 / Fraction(r0[-1])
    return [c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0]


def qinverse(a: list, m: list) -> list:
    """Inverse of ``a`` modulo ``m``; raises if not invertible."""
    g, s, _ = qxgcd(qrem(a, m), m)
    if len(g) != 1:
        raise ArithmeticError("element is not invertible modulo the given polynomial")
    return qrem(s, m)


def qmulmod(a: list, b: list, m: list) -> list:
    return qrem(mul(a, b), m)


def to_fraction(a: list[int]) -> list:
    return [Fraction(x) for x in a]


def to_integer(a: list) -> list[int]:
    """Clear denominators of a rational list and make it primitive."""
    a = qstrip(a)
    if not a:
        return []
    den = reduce(lambda u, v: u * v // math.gcd(u, v), (Fraction(x).denominator for x in a), 1)
    return primitive([int(Fraction(x) * den) for x in a])
