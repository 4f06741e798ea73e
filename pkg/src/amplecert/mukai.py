"""Exact Mukai-lattice arithmetic and ampleness bounds for moduli polarizations.

Vectors are triples (rank, D, s) with D over a configurable Neron-Severi
Gram basis and pairing (u, w) = D_u . D_w - r_u s_w - r_w s_u.  The numerical
twist data kept is (r, a, b): the order of the twist, H . B_0 and B_0^2 / 2
for an integral lift B_0 of r times the B-field.  Everything is exact; the
only irrationality, the limit-bound square root, is compared by squaring.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
import itertools


class SurfaceKind(str, Enum):
    K3 = "k3"
    ABELIAN = "abelian"


@dataclass(frozen=True)
class NumericalSurfaceData:
    """Numerical invariants of a polarized (possibly twisted) surface.

    half_degree is d (abelian) or e (K3), with H^2 = 2 * half_degree.  The
    default basis is (H, B_0); r = 1 means untwisted, forcing a = b = 0 and a
    rank-one basis (H).  A custom gram may be supplied together with the
    coordinates of H and B_0 in it.
    """

    kind: SurfaceKind
    half_degree: int
    r: int = 1
    a_num: int = 0
    b_num: int = 0
    gram: tuple[tuple[int, ...], ...] | None = None
    h: tuple[int, ...] | None = None
    b0: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.half_degree < 1 or self.r < 1:
            raise ValueError("half_degree and r must be positive")
        if self.r == 1 and (self.a_num or self.b_num):
            raise ValueError("untwisted data forces a = b = 0")
        if self.gram is None:
            if self.r == 1:
                gram = ((2 * self.half_degree,),)
                h, b0 = (1,), (0,)
            else:
                gram = ((2 * self.half_degree, self.a_num),
                        (self.a_num, 2 * self.b_num))
                h, b0 = (1, 0), (0, 1)
            object.__setattr__(self, "gram", gram)
            object.__setattr__(self, "h", h)
            object.__setattr__(self, "b0", b0)
        else:
            object.__setattr__(self, "gram", tuple(tuple(r_) for r_ in self.gram))
            if self.h is None or self.b0 is None:
                raise ValueError("custom gram needs coordinates for H and B_0")
            object.__setattr__(self, "h", tuple(self.h))
            object.__setattr__(self, "b0", tuple(self.b0))
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")
            if self.gram[i][i] % 2:
                raise ValueError("gram matrix must have even diagonal")
        if len(self.h) != n or len(self.b0) != n:
            raise ValueError("basis coordinates must match gram rank")
        if self.dot(self.h, self.h) != 2 * self.half_degree:
            raise ValueError("H^2 must equal 2 * half_degree in the gram basis")
        if self.dot(self.h, self.b0) != self.a_num:
            raise ValueError("H . B_0 must equal a_num")
        if self.dot(self.b0, self.b0) != 2 * self.b_num:
            raise ValueError("B_0^2 must equal 2 * b_num")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, u, v) -> int:
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(len(self.gram)) for j in range(len(self.gram)))


@dataclass(frozen=True)
class MukaiVector:
    rank: int
    ns: tuple[int, ...]
    euler: int

    def __post_init__(self):
        object.__setattr__(self, "ns", tuple(self.ns))

    def __neg__(self):
        return MukaiVector(-self.rank, tuple(-x for x in self.ns), -self.euler)

    def key(self):
        return (self.rank,) + self.ns + (self.euler,)

    def to_json(self) -> dict:
        return {"rank": self.rank, "ns": list(self.ns), "euler": self.euler}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["rank"]), tuple(int(x) for x in obj["ns"]), int(obj["euler"]))


def mukai_pair(u: MukaiVector, w: MukaiVector, data: NumericalSurfaceData) -> int:
    if len(u.ns) != data.rank or len(w.ns) != data.rank:
        raise ValueError("vector dimension does not match the gram basis")
    return data.dot(u.ns, w.ns) - u.rank * w.euler - w.rank * u.euler


def vector_from_cs(data: NumericalSurfaceData, c: int, s: int) -> MukaiVector:
    """The vector (r, c*H + B_0, s) for twisted data, (r, c*H, s) untwisted."""
    ns = tuple(c * hx + (bx if data.r > 1 else 0)
               for hx, bx in zip(data.h, data.b0))
    return MukaiVector(data.r, ns, s)


def shape_cs(v: MukaiVector, data: NumericalSurfaceData) -> tuple[int, int]:
    """Recover (c, s) from a vector of the shape (r, c*H + B_0, s)."""
    if v.rank != data.r:
        raise ValueError("vector rank must equal the twist order r")
    b0 = data.b0 if data.r > 1 else tuple(0 for _ in data.b0)
    residue = tuple(x - y for x, y in zip(v.ns, b0))
    c = None
    for rx, hx in zip(residue, data.h):
        if hx:
            if rx % hx:
                raise ValueError("vector is not of the shape (r, c*H + B_0, s)")
            c = rx // hx
            break
    if c is None:
        c = 0
    if tuple(c * hx for hx in data.h) != residue:
        raise ValueError("vector is not of the shape (r, c*H + B_0, s)")
    return c, v.euler


def is_primitive_vector(v: MukaiVector) -> bool:
    g = abs(v.rank)
    for x in v.ns:
        g = gcd(g, abs(x))
    g = gcd(g, abs(v.euler))
    return g == 1


def ell_delta(v: MukaiVector, data: NumericalSurfaceData) -> tuple[MukaiVector, MukaiVector]:
    """The orthogonal pair: ell = -(0, r*H, 2c*half_degree + a) and
    delta = -(r*v + v^2 * w) with w = (0, 0, 1)."""
    c, s = shape_cs(v, data)
    v2 = mukai_pair(v, v, data)
    pairing_const = 2 * c * data.half_degree + data.a_num
    ell = MukaiVector(0, tuple(-data.r * x for x in data.h), -pairing_const)
    delta = MukaiVector(-data.r * v.rank,
                        tuple(-data.r * x for x in v.ns),
                        -(data.r * v.euler + v2))
    if mukai_pair(v, ell, data) != 0 or mukai_pair(v, delta, data) != 0:
        raise RuntimeError("orthogonality of ell and delta failed")
    return ell, delta


def _check_gcd(v: MukaiVector, data: NumericalSurfaceData):
    c, _ = shape_cs(v, data)
    g = gcd(data.r, 2 * c * data.half_degree + data.a_num)
    if g != 1:
        raise ValueError(f"gcd(r, 2c*half_degree + a) must be 1, got {g}")


def kummer_ample_bound(v: MukaiVector, data: NumericalSurfaceData) -> Fraction:
    """On the generalized Kummer fiber, theta(u*ell - delta) is ample for every
    u strictly above r * v^2 / 2."""
    if data.kind is not SurfaceKind.ABELIAN:
        raise ValueError("this bound applies to abelian-surface moduli")
    if not is_primitive_vector(v):
        raise ValueError("v must be primitive")
    v2 = mukai_pair(v, v, data)
    if v2 < 4:
        raise ValueError("v^2 must be at least 4")
    _check_gcd(v, data)
    return Fraction(data.r * v2, 2)


def k3_ample_bound_check(u, v: MukaiVector, data: NumericalSurfaceData) -> bool:
    """True iff u clears the K3-side bound: u > 0 and
    u^2 > r^2 * ((v^2)^2 / 4 + 2 v^2), evaluated exactly."""
    if data.kind is not SurfaceKind.K3:
        raise ValueError("this bound applies to K3 moduli")
    v2 = mukai_pair(v, v, data)
    if v2 < 0 or v2 % 2:
        raise ValueError("v^2 must be even and nonnegative")
    _check_gcd(v, data)
    m = v2 // 2
    bound_sq = data.r * data.r * (m * m + 4 * m)
    u = Fraction(u)
    return u > 0 and u * u > bound_sq


def dinfty_ample(v: MukaiVector, data: NumericalSurfaceData) -> bool:
    """Whether the limit polarization theta(ell) itself is ample: v^2 <= 2r - 2
    on abelian moduli and v^2 <= 2r - 4 on K3 moduli."""
    _check_gcd(v, data)
    v2 = mukai_pair(v, v, data)
    slack = 2 if data.kind is SurfaceKind.ABELIAN else 4
    return v2 <= 2 * data.r - slack


@dataclass(frozen=True)
class PolarizationVerdict:
    ample: bool
    degree: int
    divisibility: int

    def to_json(self):
        return {"ample": self.ample, "degree": self.degree,
                "divisibility": self.divisibility}


def hilb_polarization(n: int, e: int, a: int, b: int) -> PolarizationVerdict:
    """a*H_n - b*delta on the n-point Hilbert scheme of a degree-2e K3:
    ample once a^2 > b^2 ((n-1)^2 + 4(n-1)), of degree 2ea^2 - 2b^2(n-1) and
    divisibility gcd(a, 2(n-1))."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    ample = a * a > b * b * ((n - 1) ** 2 + 4 * (n - 1))
    return PolarizationVerdict(ample, 2 * e * a * a - 2 * b * b * (n - 1),
                               gcd(a, 2 * (n - 1)))


def kummer_polarization(n: int, d: int, a: int, b: int) -> PolarizationVerdict:
    """a*H_n - b*delta on the 2n-dimensional generalized Kummer of a degree-2d
    abelian surface: ample once a > b(n+1), of degree 2da^2 - 2b^2(n+1) and
    divisibility gcd(a, 2(n+1))."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    ample = a > b * (n + 1)
    return PolarizationVerdict(ample, 2 * d * a * a - 2 * b * b * (n + 1),
                               gcd(a, 2 * (n + 1)))


DEFAULT_TWISTED_PARAMS = ((1, 3), (1, 4), (2, 3), (1, 5), (3, 3))


def twisted_k3_degree(d: int, r: int) -> int:
    """Half-degree of the limit polarization on the K3 surface arising as a
    v^2 = 4 Kummer moduli fiber, with twist data (c, s, a, b) = (0, 0, 1, 2).

    The identification of the fiber's cohomology doubles the pairing in this
    degenerate case, so the degree is 2 * (ell, ell) and e = 2 d r^2.
    """
    data = NumericalSurfaceData(SurfaceKind.ABELIAN, d, r, a_num=1, b_num=2)
    v = vector_from_cs(data, 0, 0)
    v2 = mukai_pair(v, v, data)
    if v2 != 4:
        raise ValueError("the K3-fiber construction needs v^2 = 4")
    if not dinfty_ample(v, data):
        raise ValueError("limit polarization not ample for this (d, r)")
    ell, _ = ell_delta(v, data)
    q = 2 * mukai_pair(ell, ell, data)
    if q % 2:
        raise RuntimeError("limit degree must be even")
    return q // 2


def twisted_k3_batch(params=DEFAULT_TWISTED_PARAMS) -> set[int]:
    return {twisted_k3_degree(d, r) for d, r in params}


def mukai_generalized_degree(e: int, r: int) -> int:
    """Half-degree r^2 * e of the induced polarization on the moduli of
    twist-order-r sheaves over a degree-2e polarized K3."""
    if e < 1 or r < 1:
        raise ValueError("e and r must be positive")
    return r * r * e


@dataclass(frozen=True)
class WallBounds:
    rank_max: int = 3
    coord_max: int = 8
    euler_max: int = 8


@dataclass(frozen=True)
class WallSearchResult:
    max_ratio: Fraction
    witness: MukaiVector | None
    candidates: int

    def to_json(self):
        return {"max_ratio": {"num": self.max_ratio.numerator,
                              "den": self.max_ratio.denominator},
                "witness": None if self.witness is None else self.witness.to_json(),
                "candidates": self.candidates}


def wall_search(v: MukaiVector, data: NumericalSurfaceData,
                bounds: WallBounds = WallBounds()) -> WallSearchResult:
    """Enumerate destabilizer candidates and maximize |(a, delta)| / |(a, ell)|.

    Candidates satisfy a^2 >= 0 (abelian) or a^2 >= -2 (K3) together with
    1 <= (a, v) <= v^2 / 2, and for twisted data they must lie in the twisted
    algebraic lattice: subtracting rank/r times B_0 has to land back in the
    untwisted part, which ties the rank to r times the B_0-coordinate (that
    is also what keeps the Hodge step applicable, since it cancels the
    B-component out of the tilted class).  The enumeration box is a
    desk-scale probe of the configured lattice, not a proof.  The witness is
    normalized so that its ell-pairing is positive (walls are unsigned: a and
    -a cut the same one, and the written convention pairs positively against
    the polarization, which is the opposite sign of a direct pairing with
    ell).  Ties go to the lexicographically smallest witness.
    """
    ell, delta = ell_delta(v, data)
    v2 = mukai_pair(v, v, data)
    floor_sq = 0 if data.kind is SurfaceKind.ABELIAN else -2
    b0_index = None
    if data.r > 1:
        if sorted(data.b0) != [0] * (data.rank - 1) + [1]:
            raise ValueError("twisted wall search needs B_0 as a basis coordinate")
        b0_index = data.b0.index(1)
    best = Fraction(0)
    witness = None
    seen = 0
    coords = range(-bounds.coord_max, bounds.coord_max + 1)
    for alpha in range(-bounds.rank_max, bounds.rank_max + 1):
        for dcoords in itertools.product(coords, repeat=data.rank):
            if b0_index is not None and alpha != data.r * dcoords[b0_index]:
                continue
            for beta in range(-bounds.euler_max, bounds.euler_max + 1):
                cand = MukaiVector(alpha, dcoords, beta)
                a2 = mukai_pair(cand, cand, data)
                if a2 < floor_sq:
                    continue
                pv = mukai_pair(cand, v, data)
                if not (1 <= pv <= v2 // 2):
                    continue
                seen += 1
                pd = mukai_pair(cand, delta, data)
                pl = mukai_pair(cand, ell, data)
                _assert_wall_identity(cand, v, data, v2, pv, pd)
                if pl == 0:
                    continue
                ratio = Fraction(abs(pd), abs(pl))
                cand_n = cand if pl > 0 else -cand
                if ratio > best or (ratio == best and witness is not None
                                    and cand_n.key() < witness.key()):
                    best = ratio
                    witness = cand_n
    return WallSearchResult(best, witness, seen)


def _assert_wall_identity(cand: MukaiVector, v: MukaiVector,
                          data: NumericalSurfaceData, v2: int, pv: int, pd: int):
    # (a, delta)^2 = v^2 * Dt^2 + r^2 ((a, v)^2 - v^2 a^2), Dt = r*D - alpha*D_v
    r = data.r
    dt = tuple(r * x - cand.rank * y for x, y in zip(cand.ns, v.ns))
    dt2 = data.dot(dt, dt)
    a2 = mukai_pair(cand, cand, data)
    if pd * pd != v2 * dt2 + r * r * (pv * pv - v2 * a2):
        raise RuntimeError(f"wall identity violated at candidate {cand}")
