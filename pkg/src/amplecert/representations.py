"""Exact solvers for the constrained square and triangular-number representations.

Six problems are covered, all solved over the integers with deterministic,
lexicographically canonical witnesses:

  five-squares                 m  = sum of 5 positive squares
  fifteen-bounded-squares      m  = sum of 15 positive squares, each root r
                               obeying 3*(r^2 + 3) <= m
  three-triangular             n  = sum of 3 triangular numbers t(a) = a(a-1)/2
  fifteen-bounded-triangular   m  = sum of 15 triangular numbers, each index a
                               obeying 5*(2a - 1)^2 <= 8m + 165
  dominant-squares             n  = 2*a^2 - sum of 15 positive squares with
                               a > a_1 + a_2 + a_3 + a_4 (parts sorted desc)
  dominant-triangular          n  = a^2 - sum of 15 triangular numbers with
                               a > a_1 + a_2 + a_3 + a_4 - 2 (indices desc)

The two dominant problems feed the degree enumeration: their witnesses become
ample divisor classes.  Square-root comparisons are done by squaring; there
is no floating point.
"""
from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import isqrt


class Problem(str, Enum):
    FIVE_SQUARES = "five-squares"
    FIFTEEN_BOUNDED_SQUARES = "fifteen-bounded-squares"
    THREE_TRIANGULAR = "three-triangular"
    FIFTEEN_BOUNDED_TRIANGULAR = "fifteen-bounded-triangular"
    DOMINANT_SQUARES = "dominant-squares"
    DOMINANT_TRIANGULAR = "dominant-triangular"


def triangular(i: int) -> int:
    return i * (i - 1) // 2


def is_triangular(t: int) -> bool:
    if t < 0:
        return False
    s = 8 * t + 1
    r = isqrt(s)
    return r * r == s


def triangular_index(t: int) -> int:
    """The index a >= 1 with t(a) = t; t must be triangular."""
    return (1 + isqrt(8 * t + 1)) // 2


def is_square(t: int) -> bool:
    return t >= 0 and isqrt(t) ** 2 == t


@dataclass(frozen=True)
class RepresentationWitness:
    """An exhibited solution; parts are the summands (squares or triangular
    values) for the plain problems and the roots/indices for the dominant
    ones, always sorted descending."""

    problem: Problem
    target: int
    parts: tuple[int, ...]
    lead: int | None = None

    def validate(self):
        """Raise ValueError unless substitution and every constraint hold."""
        p, t, parts = self.problem, self.target, self.parts
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError("parts must be sorted descending")
        if p is Problem.FIVE_SQUARES:
            self._need(len(parts) == 5 and all(x >= 1 and is_square(x) for x in parts))
            self._need(sum(parts) == t)
        elif p is Problem.FIFTEEN_BOUNDED_SQUARES:
            self._need(len(parts) == 15 and all(x >= 1 and is_square(x) for x in parts))
            self._need(sum(parts) == t)
            self._need(all(3 * x + 9 <= t for x in parts))   # 3*(r^2+3) <= m
        elif p is Problem.THREE_TRIANGULAR:
            self._need(len(parts) == 3 and all(is_triangular(x) for x in parts))
            self._need(sum(parts) == t)
        elif p is Problem.FIFTEEN_BOUNDED_TRIANGULAR:
            self._need(len(parts) == 15 and all(is_triangular(x) for x in parts))
            self._need(sum(parts) == t)
            self._need(all(5 * x <= t + 20 for x in parts))  # 5*(2a-1)^2 <= 8m+165
        elif p is Problem.DOMINANT_SQUARES:
            a = self.lead
            self._need(a is not None and a >= 1)
            self._need(len(parts) == 15 and all(x >= 1 for x in parts))
            self._need(2 * a * a - sum(x * x for x in parts) == t)
            self._need(a > sum(parts[:4]))
        elif p is Problem.DOMINANT_TRIANGULAR:
            a = self.lead
            self._need(a is not None and a >= 1)
            self._need(len(parts) == 15 and all(x >= 1 for x in parts))
            self._need(a * a - sum(triangular(x) for x in parts) == t)
            self._need(a > sum(parts[:4]) - 2)
        else:
            raise ValueError(f"unknown problem {p}")

    @staticmethod
    def _need(cond):
        if not cond:
            raise ValueError("witness fails its defining constraints")

    def to_json(self) -> dict:
        return {"problem": self.problem.value, "target": self.target,
                "parts": list(self.parts), "lead": self.lead}

    @classmethod
    def from_json(cls, obj: dict) -> "RepresentationWitness":
        return cls(Problem(obj["problem"]), int(obj["target"]),
                   tuple(int(x) for x in obj["parts"]),
                   None if obj.get("lead") is None else int(obj["lead"]))


# ---------------------------------------------------------------------------
# Sum-set tables.  mask[k][cap] is a big-int bitmask whose bit t says that t
# is a sum of exactly k part-values drawn from indices 1..cap.  These power
# all feasibility tests and lexicographically minimal reconstructions.
# ---------------------------------------------------------------------------

class _PartMasks:
    def __init__(self, value):
        self.value = value
        self.rows: list[list[int]] = [[1]]   # rows[k][cap]; row 0 is a stub

    def mask(self, k: int, cap: int) -> int:
        if k < 0 or cap < 0:
            return 0
        if k == 0:
            return 1
        while len(self.rows) <= k:
            self.rows.append([0])            # cap 0 admits no index >= 1
        for kk in range(1, k + 1):
            row = self.rows[kk]
            while len(row) <= cap:
                c = len(row)
                below = 1 if kk == 1 else self.rows[kk - 1][c]
                row.append(row[c - 1] | (below << self.value(c)))
        return self.rows[k][cap]

    def feasible(self, total: int, k: int, cap: int) -> bool:
        if total < 0 or k < 0:
            return False
        if k == 0:
            return total == 0
        return bool((self.mask(k, cap) >> total) & 1)

    def lexmin(self, total: int, k: int, cap: int) -> tuple[int, ...] | None:
        """Lexicographically smallest descending index tuple, or None."""
        if not self.feasible(total, k, cap):
            return None
        out = []
        for pos in range(k):
            left = k - pos - 1
            v = 1
            # smallest viable maximum: all remaining parts must fit under it
            while (left + 1) * self.value(v) < total:
                v += 1
            while v <= cap:
                if self.value(v) <= total and self.feasible(total - self.value(v), left, v):
                    break
                v += 1
            if v > cap:
                raise RuntimeError("reconstruction lost feasibility")
            out.append(v)
            total -= self.value(v)
            cap = v
        return tuple(out)


_SQ = _PartMasks(lambda v: v * v)
_TRI = _PartMasks(triangular)


# ---------------------------------------------------------------------------
# Plain square problems
# ---------------------------------------------------------------------------

def _four_squares_desc(q: int) -> tuple[int, int, int, int]:
    """A descending four-square decomposition of q >= 0, greedy largest-first."""
    if q == 0:
        return (0, 0, 0, 0)
    for a1 in range(isqrt(q), -1, -1):
        r1 = q - a1 * a1
        for a2 in range(min(a1, isqrt(r1)), -1, -1):
            r2 = r1 - a2 * a2
            for a3 in range(min(a2, isqrt(r2)), -1, -1):
                r3 = r2 - a3 * a3
                a4 = isqrt(r3)
                if a4 * a4 == r3 and a4 <= a3:
                    return (a1, a2, a3, a4)
    raise RuntimeError("four-square decomposition must exist")


@lru_cache(maxsize=None)
def five_positive_squares(m: int) -> RepresentationWitness | None:
    """m as a sum of five positive squares, or None.

    Below 170 the search is exhaustive with the lexicographically smallest
    witness; above, the classical descent applies: write m - 169 as four
    squares and pad with a decomposition of 169 into as many positive squares
    as needed (169 = 13^2 = 12^2+5^2 = 12^2+4^2+3^2 = 10^2+8^2+2^2+1^2).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m <= 169:
        roots = _SQ.lexmin(m, 5, isqrt(m))
        if roots is None:
            return None
    else:
        a1, a2, a3, a4 = _four_squares_desc(m - 169)
        if a4 > 0:
            roots = (13, a1, a2, a3, a4)
        elif a3 > 0:
            roots = (12, 5, a1, a2, a3)
        elif a2 > 0:
            roots = (12, 4, 3, a1, a2)
        else:
            roots = (10, 8, 2, 1, a1)
    parts = tuple(sorted((r * r for r in roots), reverse=True))
    w = RepresentationWitness(Problem.FIVE_SQUARES, m, parts)
    w.validate()
    return w


def fifteen_bounded_squares(m: int) -> RepresentationWitness | None:
    """m as 15 positive squares with every root r satisfying 3*(r^2+3) <= m.

    For m >= 102, write m = 3n + r and add up five-square decompositions of n
    and n + 1; their parts meet the bound automatically.  Smaller m are
    searched exhaustively under the exact bound.
    """
    if m < 36:
        raise ValueError("m must be >= 36")
    if m < 102:
        rmax = isqrt((m - 9) // 3)
        roots = _SQ.lexmin(m, 15, rmax)
        if roots is None:
            return None
        parts = tuple(sorted((r * r for r in roots), reverse=True))
    else:
        n, r = divmod(m, 3)
        pieces = []
        for j in range(3):
            w = five_positive_squares(n + (1 if j < r else 0))
            pieces.extend(w.parts)
        parts = tuple(sorted(pieces, reverse=True))
    w = RepresentationWitness(Problem.FIFTEEN_BOUNDED_SQUARES, m, parts)
    w.validate()
    return w


# ---------------------------------------------------------------------------
# Triangular problems
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def three_triangular(n: int) -> RepresentationWitness:
    """n as a sum of three triangular numbers; always solvable for n >= 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    i1 = 1
    while 3 * triangular(i1) < n:
        i1 += 1
    while triangular(i1) <= n:
        t1 = triangular(i1)
        rest = n - t1
        i2 = 1
        while 2 * triangular(i2) < rest:
            i2 += 1
        while i2 <= i1 and triangular(i2) <= rest:
            t3 = rest - triangular(i2)
            if t3 <= triangular(i2) and is_triangular(t3):
                parts = (t1, triangular(i2), t3)
                w = RepresentationWitness(Problem.THREE_TRIANGULAR, n, parts)
                w.validate()
                return w
            i2 += 1
        i1 += 1
    raise RuntimeError("three-triangular decomposition must exist")


def fifteen_bounded_triangular(m: int) -> RepresentationWitness | None:
    """m as 15 triangular numbers whose indices a satisfy 5*(2a-1)^2 <= 8m+165.

    Write m = 5n + r and concatenate three-triangular decompositions of n
    (5 - r times) and n + 1 (r times); all indices stay within the bound.
    """
    if m < 24:
        raise ValueError("m must be >= 24")
    n, r = divmod(m, 5)
    pieces = []
    for j in range(5):
        pieces.extend(three_triangular(n + (1 if j < r else 0)).parts)
    parts = tuple(sorted(pieces, reverse=True))
    w = RepresentationWitness(Problem.FIFTEEN_BOUNDED_TRIANGULAR, m, parts)
    w.validate()
    return w


# ---------------------------------------------------------------------------
# Dominant representations
# ---------------------------------------------------------------------------

def _max_dominant_square_sum(a: int) -> int:
    """Largest possible sum of 15 squares under the dominance cap a - 1.

    With the fourth-largest part fixed at t the optimum concentrates the rest,
    so it is enough to scan (a-1-3t, t, t, t) plus an all-t tail.
    """
    best = 0
    s = a - 1
    t = 1
    while 4 * t <= s:
        x = s - 3 * t
        best = max(best, x * x + 14 * t * t)
        t += 1
    return best


def _max_dominant_tri_sum(a: int) -> int:
    best = 0
    s = a + 1
    t = 1
    while 4 * t <= s:
        x = s - 3 * t
        best = max(best, triangular(x) + 14 * triangular(t))
        t += 1
    return best


def dominant_squares(n: int) -> RepresentationWitness | None:
    """n = 2a^2 - (15 positive squares) with a > sum of the 4 largest roots.

    Scans a upward from the smallest feasible value and returns the witness
    with lexicographically least (a, parts); None if no a admits a solution.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a = isqrt((n + 15) // 2)
    while 2 * a * a < n + 15:
        a += 1
    a_max = isqrt(8 * n + 240)
    while a <= a_max:
        r = 2 * a * a - n
        if r <= _max_dominant_square_sum(a):
            parts = _dominant_square_parts(r, a - 1)
            if parts is not None:
                w = RepresentationWitness(Problem.DOMINANT_SQUARES, n, parts, lead=a)
                w.validate()
                return w
        a += 1
    return None


def _dominant_square_parts(r: int, smax: int) -> tuple[int, ...] | None:
    """Lex-min descending 15 positive roots, squares summing to r, top-4 sum <= smax."""
    r1 = 1
    while 15 * r1 * r1 < r:
        r1 += 1
    for v1 in range(r1, min(smax - 3, isqrt(r - 14)) + 1):
        rem1 = r - v1 * v1
        v2lo = 1
        while 14 * v2lo * v2lo < rem1:
            v2lo += 1
        for v2 in range(v2lo, min(v1, smax - v1 - 2) + 1):
            rem2 = rem1 - v2 * v2
            if rem2 < 13:
                break
            v3lo = 1
            while 13 * v3lo * v3lo < rem2:
                v3lo += 1
            for v3 in range(v3lo, min(v2, smax - v1 - v2 - 1) + 1):
                rem3 = rem2 - v3 * v3
                if rem3 < 12:
                    break
                v4lo = 1
                while 12 * v4lo * v4lo < rem3:
                    v4lo += 1
                for v4 in range(v4lo, min(v3, smax - v1 - v2 - v3) + 1):
                    rem4 = rem3 - v4 * v4
                    if rem4 < 11:
                        break
                    tail = _SQ.lexmin(rem4, 11, v4)
                    if tail is not None:
                        return (v1, v2, v3, v4) + tail
    return None


def dominant_triangular(n: int) -> RepresentationWitness | None:
    """n = a^2 - (15 triangular numbers) with a > (top-4 index sum) - 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = isqrt(n)
    if a * a < n:
        a += 1
    a_max = 15 + isqrt(16 * n + 240)
    while a <= a_max:
        r = a * a - n
        if r <= _max_dominant_tri_sum(a):
            parts = _dominant_tri_parts(r, a + 1)
            if parts is not None:
                w = RepresentationWitness(Problem.DOMINANT_TRIANGULAR, n, parts, lead=a)
                w.validate()
                return w
        a += 1
    return None


def _dominant_tri_parts(r: int, smax: int) -> tuple[int, ...] | None:
    """Lex-min descending 15 indices >= 1, triangulars summing to r, index
    top-4 sum <= smax."""
    if smax < 4:
        return None
    v1 = 1
    while 15 * triangular(v1) < r:
        v1 += 1
    for w1 in range(v1, smax - 2):
        t1 = triangular(w1)
        rem1 = r - t1
        if rem1 < 0:
            break
        v2 = 1
        while 14 * triangular(v2) < rem1:
            v2 += 1
        for w2 in range(v2, min(w1, smax - w1 - 2) + 1):
            rem2 = rem1 - triangular(w2)
            if rem2 < 0:
                break
            v3 = 1
            while 13 * triangular(v3) < rem2:
                v3 += 1
            for w3 in range(v3, min(w2, smax - w1 - w2 - 1) + 1):
                rem3 = rem2 - triangular(w3)
                if rem3 < 0:
                    break
                v4 = 1
                while 12 * triangular(v4) < rem3:
                    v4 += 1
                for w4 in range(v4, min(w3, smax - w1 - w2 - w3) + 1):
                    rem4 = rem3 - triangular(w4)
                    if rem4 < 0:
                        break
                    tail = _TRI.lexmin(rem4, 11, w4)
                    if tail is not None:
                        return (w1, w2, w3, w4) + tail
    return None


# ---------------------------------------------------------------------------
# Range verification
# ---------------------------------------------------------------------------

SOLVERS = {
    Problem.FIVE_SQUARES: five_positive_squares,
    Problem.FIFTEEN_BOUNDED_SQUARES: fifteen_bounded_squares,
    Problem.THREE_TRIANGULAR: three_triangular,
    Problem.FIFTEEN_BOUNDED_TRIANGULAR: fifteen_bounded_triangular,
    Problem.DOMINANT_SQUARES: dominant_squares,
    Problem.DOMINANT_TRIANGULAR: dominant_triangular,
}


def solve(problem: Problem, n: int) -> RepresentationWitness | None:
    return SOLVERS[Problem(problem)](n)


def _scan_chunk(problem: Problem, lo: int, hi: int) -> list[int]:
    solver = SOLVERS[problem]
    return [n for n in range(lo, hi + 1) if solver(n) is None]


def verify_range(problem: Problem, lo: int, hi: int, jobs: int = 1) -> list[int]:
    """Every n in [lo, hi] the solver cannot represent; empty certifies the range.

    With jobs > 1 the interval is split into contiguous chunks handled by
    worker processes; solver caches are per worker and results are merged in
    interval order, so the output is identical to a single-threaded run.
    """
    if lo > hi:
        raise ValueError("lo must be <= hi")
    problem = Problem(problem)
    if jobs <= 1:
        return _scan_chunk(problem, lo, hi)
    chunk = max(64, (hi - lo + 1) // (jobs * 4) + 1)
    spans = [(a, min(a + chunk - 1, hi)) for a in range(lo, hi + 1, chunk)]
    out: list[int] = []
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        for res in pool.map(_scan_chunk, *zip(*[(problem, a, b) for a, b in spans])):
            out.extend(res)
    return out
