"""Ampleness certification on Kummer surfaces.

Two complementary tools: a sufficient criterion (positivity of all sixteen
exceptional coefficients plus dominance of the H-coefficient over the four
largest), and an exhaustive numerical search for candidate (-2)-classes that
would pair nonpositively with a given class.  A candidate returned by the
search is a potential non-ampleness witness, not a proven curve; conversely
an empty search within bounds is supporting evidence, not a proof, since
effectivity of the candidates is a geometric input the arithmetic cannot see.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .lattice import KummerClass, NUM_EXCEPTIONAL, pair


@dataclass(frozen=True)
class NSData:
    """An abelian-surface Neron-Severi form with the polarization's coordinates.

    gram is the integer intersection matrix of the chosen basis (even
    diagonal), h the coordinate vector of the degree-2d polarization in that
    basis.  The two stock examples are rank one, gram [[2d]] with h = (1,),
    and a product surface, gram [[0,1],[1,0]] with h = (1, d).
    """

    gram: tuple[tuple[int, ...], ...]
    h: tuple[int, ...]

    def __post_init__(self):
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")
            if self.gram[i][i] % 2:
                raise ValueError("gram matrix must have even diagonal")
        if len(self.h) != n:
            raise ValueError("polarization coordinates do not match gram rank")
        object.__setattr__(self, "gram", tuple(tuple(r) for r in self.gram))
        object.__setattr__(self, "h", tuple(self.h))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, u, v) -> int:
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank))

    def h_pairing(self, v) -> int:
        return self.dot(self.h, v)

    def to_json(self) -> dict:
        return {"gram": [list(r) for r in self.gram], "h": list(self.h)}


def ns_rank_one(d: int) -> NSData:
    return NSData(((2 * d,),), (1,))


def ns_product(d: int) -> NSData:
    return NSData(((0, 1), (1, 0)), (1, d))


@dataclass(frozen=True)
class SearchBounds:
    b2_max: int = 8
    coord_max: int = 8


@dataclass(frozen=True)
class CurveClassCandidate:
    """A numerical (-2)-candidate (b2/2)*M - sum (bi2_i/2)*E_i with M in NS(A).

    b2 and bi2 are doubled and bi2 entries are nonnegative; ns_coords are the
    coordinates of M over the attached form.  The abelian-side square of M is
    nonnegative and even, matching the constraint that twice the candidate
    pulls back to an effective divisor class.
    """

    b2: int
    ns_coords: tuple[int, ...]
    bi2: tuple[int, ...]
    ns: NSData

    def __post_init__(self):
        if self.b2 < 1:
            raise ValueError("b2 must be >= 1")
        if len(self.bi2) != NUM_EXCEPTIONAL or any(b < 0 for b in self.bi2):
            raise ValueError("bi2 must be 16 nonnegative integers")
        m2 = self.ns.dot(self.ns_coords, self.ns_coords)
        if m2 < 0:
            raise ValueError("candidate requires M^2 >= 0 on the abelian side")
        object.__setattr__(self, "ns_coords", tuple(self.ns_coords))
        object.__setattr__(self, "bi2", tuple(self.bi2))

    def self_intersection(self) -> Fraction:
        m2 = self.ns.dot(self.ns_coords, self.ns_coords)
        return Fraction(self.b2 ** 2 * m2 - sum(b * b for b in self.bi2), 2)

    def to_json(self) -> dict:
        return {"b2": self.b2, "ns_coords": list(self.ns_coords), "bi2": list(self.bi2)}


def sufficient_ample(l: KummerClass) -> bool:
    """Dominance criterion: all 16 coefficients positive and the H-coefficient
    strictly larger than the sum of the four largest.

    The strict comparison runs over doubled integers, which handles integer
    and half-integer coefficient mixes uniformly.
    """
    if any(x <= 0 for x in l.e2):
        return False
    top4 = sum(sorted(l.e2, reverse=True)[:4])
    return l.h2 > top4


def sufficient_ample_generic_picard(l: KummerClass) -> bool:
    """Relaxed bound a > 3 for a*H - sum E_i, valid when d = 1 and the abelian
    surface has Picard group generated by the polarization.

    The genericity hypothesis is taken on trust from the caller; it is not
    numerically certifiable.
    """
    if l.d != 1:
        raise ValueError("the relaxed bound is stated for d = 1 only")
    if any(x != 2 for x in l.e2):
        raise ValueError("class must have the shape a*H - sum E_i")
    return l.h2 > 6


def pair_with_candidate(l: KummerClass, c: CurveClassCandidate) -> Fraction:
    """l . c, exact; h2*b2*(H_A.M_A) accounts for the doubling of the pairing
    under the abelian-to-Kummer correspondence."""
    w = c.ns.h_pairing(c.ns_coords)
    num = l.h2 * c.b2 * w - sum(a * b for a, b in zip(l.e2, c.bi2))
    return Fraction(num, 2)


def _positive_cone_check(l: KummerClass):
    if pair(l, l) <= 0 or l.h2 <= 0:
        raise ValueError("class must lie in the positive cone (L^2 > 0, L.H > 0)")


def find_orthogonal_violator(l: KummerClass, ns: NSData,
                             bounds: SearchBounds = SearchBounds()):
    """Exhaustive search for a (-2)-candidate C with H.C > 0 and l.C <= 0.

    Enumeration is deterministic: b2 ascending, then ns_coords in
    lexicographic order over the coordinate box, then bi2 multisets in
    decreasing lexicographic order, each paired greedily against the sorted
    coefficients of l (the pairing that minimizes l.C).  The first violator
    found is returned; None means no candidate within bounds violates.
    """
    _positive_cone_check(l)
    if ns.dot(ns.h, ns.h) != 2 * l.d:
        raise ValueError("polarization square in gram basis must equal 2d")
    e2_sorted = sorted(l.e2, reverse=True)
    order = sorted(range(NUM_EXCEPTIONAL), key=lambda i: -l.e2[i])
    q_suffix = [0] * (NUM_EXCEPTIONAL + 1)
    for k in range(NUM_EXCEPTIONAL - 1, -1, -1):
        q_suffix[k] = q_suffix[k + 1] + e2_sorted[k] ** 2
    q_total = q_suffix[0]

    rng = range(-bounds.coord_max, bounds.coord_max + 1)
    for b2 in range(1, bounds.b2_max + 1):
        for m in itertools.product(rng, repeat=ns.rank):
            w = ns.h_pairing(m)
            if w < 1:
                continue
            m2 = ns.dot(m, m)
            if m2 < 0:
                continue
            target = b2 * b2 * m2 + 4      # sum of bi2^2 forced by C^2 = -2
            threshold = l.h2 * b2 * w      # violation iff paired sum >= this
            # Cauchy-Schwarz prune: max paired sum is sqrt(Q * target)
            if threshold > 0 and threshold * threshold > q_total * target:
                continue
            hit = _search_bi2(e2_sorted, q_suffix, target, threshold)
            if hit is not None:
                bi2 = [0] * NUM_EXCEPTIONAL
                for k, v in enumerate(hit):
                    bi2[order[k]] = v
                return CurveClassCandidate(b2, tuple(m), tuple(bi2), ns)
    return None


def _search_bi2(e2_sorted, q_suffix, target, threshold):
    """First descending 16-tuple with sum of squares = target whose greedy
    pairing against e2_sorted reaches the violation threshold."""
    tup = [0] * NUM_EXCEPTIONAL

    def rec(k, rem, acc, cap):
        if k == NUM_EXCEPTIONAL:
            return rem == 0 and acc >= threshold
        slots = NUM_EXCEPTIONAL - k
        hi = min(cap, isqrt(rem))
        for v in range(hi, -1, -1):
            if v * v * slots < rem:
                break
            nrem = rem - v * v
            nacc = acc + e2_sorted[k] * v
            # tail bound via Cauchy-Schwarz on the remaining positions
            if nacc + isqrt(q_suffix[k + 1] * nrem) < threshold:
                continue
            tup[k] = v
            if rec(k + 1, nrem, nacc, v):
                return True
            tup[k] = 0
        return False

    if rec(0, target, 0, isqrt(target)):
        return tuple(tup)
    return None


@dataclass(frozen=True)
class ProofChainReport:
    """Evaluation of each inequality in the dominance-criterion argument on a
    concrete (class, candidate) pair; a property-test harness, not a prover."""

    dominance_holds: bool          # h-coefficient exceeds the top-4 sum
    square_packing_holds: bool     # (top-4 sum)^2 >= sum of squares
    square_excess_holds: bool      # a^2 > sum a_i^2, the combined step
    l2_positive: bool
    positive_cone: bool
    nonpositive_pairing: bool      # the contradiction hypothesis l.C <= 0
    cauchy_schwarz_holds: bool
    hodge_holds: bool
    main_case_contradiction: bool | None
    case: str
    l_dot_c: Fraction
    c_squared: Fraction


def check_proof_chain(l: KummerClass, c: CurveClassCandidate) -> ProofChainReport:
    """Evaluate the argument's inequalities on (l, c).

    Requires sufficient_ample(l); the report records which steps hold so
    properties like 'the contradiction always fires when l.C <= 0 in the main
    case' can be asserted over random inputs.
    """
    if not sufficient_ample(l):
        raise ValueError("proof chain is evaluated on criterion-passing classes")
    ns = c.ns
    e2s = sorted(l.e2, reverse=True)
    top4 = sum(e2s[:4])
    qsum = sum(x * x for x in l.e2)
    dominance = l.h2 > top4
    packing = top4 * top4 >= qsum
    excess = l.h2 * l.h2 > qsum
    l2 = pair(l, l)
    ldotc = pair_with_candidate(l, c)
    c2 = c.self_intersection()
    m2 = ns.dot(c.ns_coords, c.ns_coords)
    w = ns.h_pairing(c.ns_coords)
    cs_left = sum(a * b for a, b in zip(l.e2, c.bi2)) ** 2
    cs_right = qsum * sum(b * b for b in c.bi2)
    hodge = w * w >= 2 * l.d * m2
    bm2_doubled = c.b2 ** 2 * m2      # 2 * b^2 M_A^2, i.e. b^2 M^2 on the quotient
    if bm2_doubled >= 4:
        case = "main"
        contradiction = None
        if ldotc <= 0:
            # the chain then forces d*a^2 <= sum a_i^2, against the excess step
            contradiction = l.d * l.h2 * l.h2 > qsum
    elif m2 > 0:
        case = "half-b-small-square"
        contradiction = None
    else:
        case = "isotropic"
        contradiction = None
    return ProofChainReport(
        dominance_holds=dominance,
        square_packing_holds=packing,
        square_excess_holds=excess,
        l2_positive=l2 > 0,
        positive_cone=l2 > 0 and l.h2 > 0,
        nonpositive_pairing=ldotc <= 0,
        cauchy_schwarz_holds=cs_left <= cs_right,
        hodge_holds=hodge,
        main_case_contradiction=contradiction,
        case=case,
        l_dot_c=ldotc,
        c_squared=c2,
    )
