"""Benchmark harness: random dense bivariate systems, timed decomposition, oracle spot checks.

A degree pair ``(d1, d2)`` means two polynomials in ``x, y`` of total degree
``d1`` and ``d2`` whose every monomial up to that degree gets an independent
coefficient drawn uniformly from ``[-bound, bound]``.  Pairs sharing a factor
are redrawn.
"""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import dataclass, field
from statistics import mean

from mptd.decomp import bivariate_decompose
from mptd.oracle import OracleError, cross_check, multiplicities_by_shear
from mptd.polyring import Poly, PolyError, VarOrder, gcd

__all__ = [
    "BenchCase", "BenchReport", "LONG_RUNNING_BEZOUT", "parse_degrees",
    "random_dense", "random_system", "run_bench",
]

#: pairs whose Bezout number ``d1 * d2`` exceeds this are flagged as long running
LONG_RUNNING_BEZOUT = 400

CSV_FIELDS = ["row", "pair", "case", "seconds", "components", "verified", "verify_seconds", "oracle_total"]


@dataclass
class BenchCase:
    pair: tuple[int, int]
    index: int
    seconds: float
    components: int
    verified: bool | None = None  # None: not in the verification sample
    verify_seconds: float | None = None
    oracle_total: int | None = None
    error: str | None = None


@dataclass
class BenchReport:
    cases: list[BenchCase] = field(default_factory=list)
    pairs: list[tuple[int, int]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def means(self) -> dict[tuple[int, int], float]:
        out = {}
        for p in self.pairs:
            times = [c.seconds for c in self.cases if c.pair == p]
            if times:
                out[p] = mean(times)
        return out

    def failures(self) -> list[BenchCase]:
        return [c for c in self.cases if c.verified is False]

    def checked(self) -> list[BenchCase]:
        return [c for c in self.cases if c.verified is not None]

    def monotone(self) -> bool:
        """Mean times nondecreasing in the order the pairs were given."""
        m = list(self.means().values())
        return all(a <= b for a, b in zip(m, m[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        if not self.cases:
            return ""
        w.writeheader()
        for c in self.cases:
            w.writerow({
                "row": "case", "pair": _pair_str(c.pair), "case": c.index,
                "seconds": f"{c.seconds:.6f}", "components": c.components,
                "verified": {None: "", True: "match", False: "MISMATCH"}[c.verified],
                "verify_seconds": "" if c.verify_seconds is None else f"{c.verify_seconds:.6f}",
                "oracle_total": "" if c.oracle_total is None else c.oracle_total,
            })
        for p, m in self.means().items():
            sample = [c for c in self.checked() if c.pair == p]
            w.writerow({
                "row": "mean", "pair": _pair_str(p), "case": sum(c.pair == p for c in self.cases),
                "seconds": f"{m:.6f}", "components": "",
                "verified": f"{sum(bool(c.verified) for c in sample)}/{len(sample)}",
                "verify_seconds": "", "oracle_total": "",
            })
        return buf.getvalue()


def _pair_str(p: tuple[int, int]) -> str:
    return f"[{p[0]},{p[1]}]"


def parse_degrees(text: str) -> list[tuple[int, int]]:
    """``"5,4;7,5"`` or ``"[5,4] [7,5]"`` -> ``[(5, 4), (7, 5)]``."""
    cleaned = text.replace("[", " ").replace("]", " ").replace(";", " ")
    pairs = []
    for chunk in cleaned.split():
        parts = [s for s in chunk.split(",") if s]
        if len(parts) != 2:
            raise ValueError(f"degree pair must look like d1,d2: {chunk!r}")
        d1, d2 = int(parts[0]), int(parts[1])
        if d1 < 1 or d2 < 1:
            raise ValueError(f"degrees must be positive: {chunk!r}")
        pairs.append((d1, d2))
    if not pairs:
        raise ValueError("no degree pairs given")
    return pairs


def random_dense(order: VarOrder, degree: int, rng: random.Random, bound: int = 100) -> Poly:
    """Dense polynomial of total degree ``degree`` in the first two variables."""
    while True:
        terms = {}
        for i in range(degree + 1):
            for j in range(degree + 1 - i):
                c = rng.randint(-bound, bound)
                if c:
                    terms[(i, j)] = c
        p = Poly(order, terms)
        if p.total_degree() == degree and p.degree(1) > 0:
            return p


def random_system(d1: int, d2: int, rng: random.Random, bound: int = 100) -> tuple[Poly, Poly]:
    order = VarOrder(["x", "y"])
    while True:
        f1, f2 = random_dense(order, d1, rng, bound), random_dense(order, d2, rng, bound)
        if gcd(f1, f2).is_constant():
            return f1, f2


def run_bench(degrees, count: int, seed: int = 0, verify_fraction: float = 0.1,
              bound: int = 100, progress=None) -> BenchReport:
    """Time ``count`` decompositions per degree pair and oracle-check a sample.

    The verification sample holds ``ceil(verify_fraction * count)`` cases per pair,
    picked with the same seed.  ``progress`` (optional) is called with each
    finished :class:`BenchCase`.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if not 0 <= verify_fraction <= 1:
        raise ValueError("verify_fraction must lie in [0, 1]")
    report = BenchReport(pairs=[tuple(p) for p in degrees])
    for p in report.pairs:
        if p[0] * p[1] > LONG_RUNNING_BEZOUT:
            report.warnings.append(f"degree pair {_pair_str(p)} is long running (Bezout number {p[0] * p[1]})")
    if count == 0:
        return report
    rng = random.Random(seed)
    n_check = math.ceil(verify_fraction * count)
    for p in report.pairs:
        sample = set(rng.sample(range(count), n_check))
        for idx in range(count):
            f1, f2 = random_system(p[0], p[1], rng, bound)
            t0 = time.perf_counter()
            d = bivariate_decompose(f1, f2)
            case = BenchCase(p, idx, time.perf_counter() - t0, len(d.positives))
            if idx in sample:
                t1 = time.perf_counter()
                try:
                    r = multiplicities_by_shear(f1, f2)
                    case.verified = bool(cross_check(d, r))
                    case.oracle_total = r.total
                except (OracleError, PolyError) as exc:
                    case.verified, case.error = False, str(exc)
                case.verify_seconds = time.perf_counter() - t1
            report.cases.append(case)
            if progress:
                progress(case)
    return report
