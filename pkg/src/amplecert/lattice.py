"""Exact intersection arithmetic on the Neron-Severi lattice of a Kummer surface.

A divisor class is stored over the basis (H, E_1, ..., E_16), where H is the
degree-4d nef class induced by a polarization of degree 2d on the abelian
surface and the E_i are the sixteen disjoint (-2)-curves.  All coefficients
live in (1/2)Z, so classes are stored as *doubled* integers and every
computation is exact; no floating point is used anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

NUM_EXCEPTIONAL = 16


@dataclass(frozen=True)
class KummerClass:
    """A rational divisor class (h2/2)*H - sum_i (e2_i/2)*E_i with H^2 = 4d.

    h2 and e2 are doubled coefficients, so integer entries encode
    half-integer coefficients on the underlying classes.
    """

    d: int
    h2: int
    e2: tuple[int, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if len(self.e2) != NUM_EXCEPTIONAL:
            raise ValueError("expected 16 exceptional coefficients")
        if not all(isinstance(x, int) for x in self.e2) or not isinstance(self.h2, int):
            raise ValueError("doubled coordinates must be integers")
        object.__setattr__(self, "e2", tuple(self.e2))

    # -- small vector-space conveniences used by callers and property tests --

    def __add__(self, other: "KummerClass") -> "KummerClass":
        if self.d != other.d:
            raise ValueError("cannot add classes with different d")
        return KummerClass(self.d, self.h2 + other.h2,
                           tuple(a + b for a, b in zip(self.e2, other.e2)))

    def __sub__(self, other: "KummerClass") -> "KummerClass":
        if self.d != other.d:
            raise ValueError("cannot subtract classes with different d")
        return KummerClass(self.d, self.h2 - other.h2,
                           tuple(a - b for a, b in zip(self.e2, other.e2)))

    def __rmul__(self, k: int) -> "KummerClass":
        return KummerClass(self.d, k * self.h2, tuple(k * x for x in self.e2))

    def coordinates(self) -> tuple[int, ...]:
        """The 17 doubled coordinates (h2, e2_1, ..., e2_16)."""
        return (self.h2,) + self.e2

    def scaled_down(self, p: int) -> "KummerClass | None":
        """The class divided by p, or None if that leaves (1/2)Z coordinates."""
        if any(x % p for x in self.coordinates()):
            return None
        return KummerClass(self.d, self.h2 // p, tuple(x // p for x in self.e2))

    def to_json(self) -> dict:
        return {"d": self.d, "h2": self.h2, "e2": list(self.e2)}

    @classmethod
    def from_json(cls, obj: dict) -> "KummerClass":
        return cls(int(obj["d"]), int(obj["h2"]), tuple(int(x) for x in obj["e2"]))

    @classmethod
    def polarization(cls, d: int) -> "KummerClass":
        """The class H itself."""
        return cls(d, 2, (0,) * NUM_EXCEPTIONAL)

    @classmethod
    def exceptional(cls, d: int, i: int) -> "KummerClass":
        """The class E_i (1-based index)."""
        e2 = [0] * NUM_EXCEPTIONAL
        e2[i - 1] = -2
        return cls(d, 0, tuple(e2))

    @classmethod
    def from_coeffs(cls, d: int, h: Fraction | int, coeffs) -> "KummerClass":
        """Build a*H - sum c_i E_i from rational coefficients with denominator <= 2."""
        vals = [Fraction(h)] + [Fraction(c) for c in coeffs]
        doubled = []
        for v in vals:
            w = 2 * v
            if w.denominator != 1:
                raise ValueError("coefficients must have denominator 1 or 2")
            doubled.append(int(w))
        return cls(d, doubled[0], tuple(doubled[1:]))


def pair(l1: KummerClass, l2: KummerClass) -> Fraction:
    """Intersection number of two classes, exact with denominator at most 2.

    H^2 = 4d, H.E_i = 0 and E_i.E_j = -2 delta_ij, so in doubled coordinates
    the product is d*h2*h2' - (sum e2_i*e2'_i)/2.
    """
    if l1.d != l2.d:
        raise ValueError("classes live on different surfaces (d mismatch)")
    num = 2 * l1.d * l1.h2 * l2.h2 - sum(a * b for a, b in zip(l1.e2, l2.e2))
    return Fraction(num, 2)


def selfint(l: KummerClass) -> Fraction:
    return pair(l, l)


@dataclass(frozen=True)
class IntegralityGenerators:
    """Configuration of the half-integer generators adjoined to H, E_1..E_16.

    half_all16 enables (1/2) sum of all sixteen E_i.  Each entry of half_eight
    is an 8-element index set W enabling (1/2) sum_{i in W} E_i, and each entry
    of tropes is a 6-element set W enabling (1/2)(H + sum_{i in W} E_i).
    Trope generators exist only for odd d (their square would be odd otherwise).
    """

    half_all16: bool = True
    half_eight: tuple[frozenset, ...] = ()
    tropes: tuple[frozenset, ...] = ()

    def __post_init__(self):
        for w in self.half_eight:
            _check_index_set(w, 8)
        for w in self.tropes:
            _check_index_set(w, 6)
        object.__setattr__(self, "half_eight", tuple(frozenset(w) for w in self.half_eight))
        object.__setattr__(self, "tropes", tuple(frozenset(w) for w in self.tropes))

    def to_json(self) -> dict:
        return {
            "half_all16": self.half_all16,
            "half_eight": [sorted(w) for w in self.half_eight],
            "tropes": [sorted(w) for w in self.tropes],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntegralityGenerators":
        return cls(
            half_all16=bool(obj.get("half_all16", True)),
            half_eight=tuple(frozenset(int(i) for i in w) for w in obj.get("half_eight", [])),
            tropes=tuple(frozenset(int(i) for i in w) for w in obj.get("tropes", [])),
        )


def _check_index_set(w, size):
    idx = set(int(i) for i in w)
    if len(idx) != size:
        raise ValueError(f"index set must contain {size} distinct indices")
    if not all(1 <= i <= NUM_EXCEPTIONAL for i in idx):
        raise ValueError("indices must lie in 1..16")


def default_generators(d: int) -> IntegralityGenerators:
    """Canonical configuration: all sixteen halved, one 8-subset, one trope if d is odd.

    Which 8-subsets and 6-subsets occur on a given surface depends on its
    sixteen-six configuration; coefficient patterns here are sorted, so one
    representative per pattern is enough and the sets are configuration data.
    """
    tropes = (frozenset(range(1, 7)),) if d % 2 == 1 else ()
    return IntegralityGenerators(
        half_all16=True,
        half_eight=(frozenset(range(1, 9)),),
        tropes=tropes,
    )


def generator_classes(gens: IntegralityGenerators, d: int) -> list[tuple[str, KummerClass]]:
    """The labelled generating classes in doubled coordinates."""
    if gens.tropes and d % 2 == 0:
        raise ValueError("trope generators require odd d")
    out: list[tuple[str, KummerClass]] = [("H", KummerClass.polarization(d))]
    for i in range(1, NUM_EXCEPTIONAL + 1):
        out.append((f"E{i}", KummerClass.exceptional(d, i)))
    if gens.half_all16:
        out.append(("half16", KummerClass(d, 0, (-1,) * NUM_EXCEPTIONAL)))
    for w in gens.half_eight:
        e2 = tuple(-1 if i + 1 in w else 0 for i in range(NUM_EXCEPTIONAL))
        out.append((f"half8:{'-'.join(map(str, sorted(w)))}", KummerClass(d, 0, e2)))
    for w in gens.tropes:
        e2 = tuple(-1 if i + 1 in w else 0 for i in range(NUM_EXCEPTIONAL))
        out.append((f"trope:{'-'.join(map(str, sorted(w)))}", KummerClass(d, 1, e2)))
    return out


class IntegerLattice:
    """Membership testing in an integer span, echelon form over Z.

    Rows are kept augmented by the coefficients expressing them in the
    original generators, so a successful membership test returns the integer
    combination, not just a yes/no answer.  Pivots are only ever created in
    the first `width` columns; generator relations reduce to zero there and
    are dropped.
    """

    def __init__(self, width: int, n_gens: int):
        self.width = width
        self.n_gens = n_gens
        self.rows: list[list[int]] = []   # echelonized, pivot columns increasing
        self.pivots: list[int] = []

    def add_generator(self, index: int, vector: tuple[int, ...]):
        vec = list(vector) + [0] * self.n_gens
        vec[self.width + index] = 1
        self._insert(vec)

    def _insert(self, vec: list[int]):
        for j in range(self.width):
            if vec[j] == 0:
                continue
            where = self._row_with_pivot(j)
            if where is None:
                # new pivot column; keep rows ordered by pivot
                pos = 0
                while pos < len(self.pivots) and self.pivots[pos] < j:
                    pos += 1
                self.rows.insert(pos, vec)
                self.pivots.insert(pos, j)
                return
            row = self.rows[where]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for k in range(len(vec)):
                    vec[k] -= q * row[k]
            else:
                x, y, g = _xgcd(a, b)
                ag, bg = a // g, b // g
                for k in range(len(vec)):
                    ra, rb = row[k], vec[k]
                    row[k] = x * ra + y * rb
                    vec[k] = -bg * ra + ag * rb
        # vec is zero on the lattice columns: a relation among generators, drop it

    def _row_with_pivot(self, j: int):
        for idx, p in enumerate(self.pivots):
            if p == j:
                return idx
        return None

    def member(self, vector: tuple[int, ...]):
        """Return generator coefficients for `vector`, or None if outside the span."""
        vec = list(vector) + [0] * self.n_gens
        for j in range(self.width):
            if vec[j] == 0:
                continue
            where = self._row_with_pivot(j)
            if where is None:
                return None
            row = self.rows[where]
            if vec[j] % row[j]:
                return None
            q = vec[j] // row[j]
            for k in range(len(vec)):
                vec[k] -= q * row[k]
        return [-c for c in vec[self.width:]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


_LATTICE_CACHE: dict = {}


def _lattice_for(gens: IntegralityGenerators, d: int):
    # generator coordinates do not involve d; only trope validity depends on
    # its parity, so that is all the cache key needs
    key = (gens, d % 2)
    cached = _LATTICE_CACHE.get(key)
    if cached is not None:
        return cached
    labelled = generator_classes(gens, d)
    lat = IntegerLattice(width=1 + NUM_EXCEPTIONAL, n_gens=len(labelled))
    for idx, (_, cls) in enumerate(labelled):
        lat.add_generator(idx, cls.coordinates())
    labels = [lab for lab, _ in labelled]
    _LATTICE_CACHE[key] = (lat, labels)
    return lat, labels


@dataclass(frozen=True)
class IntegralityWitness:
    member: bool
    combination: dict = field(default_factory=dict)

    def __bool__(self):
        return self.member


def is_integral(l: KummerClass, gens: IntegralityGenerators | None = None) -> IntegralityWitness:
    """Whether `l` lies in the integer span of the enabled generators.

    Decided by integer echelon reduction over the doubled-coordinate
    generator matrix; when the answer is yes the returned witness carries a
    reconstructible combination {generator label: integer coefficient}.
    """
    if gens is None:
        gens = default_generators(l.d)
    lat, labels = _lattice_for(gens, l.d)
    combo = lat.member(l.coordinates())
    if combo is None:
        return IntegralityWitness(False)
    return IntegralityWitness(True, {lab: c for lab, c in zip(labels, combo) if c})


def is_primitive(l: KummerClass, gens: IntegralityGenerators | None = None) -> bool:
    """True when `l` is not an integer multiple >= 2 of a lattice class.

    Tests every prime p dividing the gcd of the doubled coordinates; when the
    gcd is odd the halved class has coordinates outside (1/2)Z, so the p = 2
    test is vacuously passed.
    """
    if gens is None:
        gens = default_generators(l.d)
    if not is_integral(l, gens):
        raise ValueError("primitivity is only defined for integral classes")
    g = 0
    for x in l.coordinates():
        g = gcd(g, abs(x))
    if g == 0:
        return False
    for p in _prime_divisors(g):
        scaled = l.scaled_down(p)
        if scaled is not None and is_integral(scaled, gens):
            return False
    return True


def _prime_divisors(n: int):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out
