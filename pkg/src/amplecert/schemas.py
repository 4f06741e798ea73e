"""Pydantic request/response models for the HTTP service."""
from __future__ import annotations

from pydantic import BaseModel, Field


class RationalOut(BaseModel):
    num: int
    den: int


class KummerClassIn(BaseModel):
    d: int = Field(ge=1)
    h2: int
    e2: list[int] = Field(min_length=16, max_length=16)


class GeneratorsIn(BaseModel):
    half_all16: bool = True
    half_eight: list[list[int]] = [[1, 2, 3, 4, 5, 6, 7, 8]]
    tropes: list[list[int]] = []


class PairRequest(BaseModel):
    left: KummerClassIn
    right: KummerClassIn


class PairResponse(BaseModel):
    value: RationalOut


class IntegralityRequest(BaseModel):
    cls: KummerClassIn
    generators: GeneratorsIn | None = None


class IntegralityResponse(BaseModel):
    integral: bool
    combination: dict[str, int] | None = None


class PrimitivityResponse(BaseModel):
    primitive: bool


class AmpleCheckRequest(BaseModel):
    cls: KummerClassIn
    generic_picard: bool = False


class AmpleCheckResponse(BaseModel):
    ample_criterion: bool
    ample_generic_picard: bool | None = None
    self_intersection: RationalOut


class NSDataIn(BaseModel):
    gram: list[list[int]]
    h: list[int]


class ViolatorRequest(BaseModel):
    cls: KummerClassIn
    ns: NSDataIn
    bound_b: int = 8
    bound_m: int = 8


class ViolatorCertificate(BaseModel):
    b2: int
    ns_coords: list[int]
    bi2: list[int]
    LdotC: RationalOut


class ViolatorResponse(BaseModel):
    violator: ViolatorCertificate | None = None


class LemmaSolveRequest(BaseModel):
    problem: str
    n: int


class WitnessOut(BaseModel):
    problem: str
    target: int
    parts: list[int]
    lead: int | None = None


class LemmaSolveResponse(BaseModel):
    witness: WitnessOut | None = None


class RangeRequest(BaseModel):
    problem: str
    lo: int
    hi: int
    jobs: int = 1


class RangeResponse(BaseModel):
    failures: list[int]


class DegreesRequest(BaseModel):
    max_e: int = Field(ge=62, le=2000)


class DegreeRow(BaseModel):
    e: int
    methods: list[str]
    primitive: bool


class DegreesResponse(BaseModel):
    degrees: list[DegreeRow]
    sporadic: list[int]
    coverage_gaps: list[int]


class SurfaceDataIn(BaseModel):
    kind: str = "abelian"
    half_degree: int = Field(ge=1)
    r: int = Field(default=1, ge=1)
    a_num: int = 0
    b_num: int = 0
    gram: list[list[int]] | None = None
    h: list[int] | None = None
    b0: list[int] | None = None


class MukaiVectorIn(BaseModel):
    rank: int
    ns: list[int]
    euler: int


class MukaiPairRequest(BaseModel):
    data: SurfaceDataIn
    left: MukaiVectorIn
    right: MukaiVectorIn


class MukaiPairResponse(BaseModel):
    value: int


class BoundRequest(BaseModel):
    data: SurfaceDataIn
    v: MukaiVectorIn


class BoundResponse(BaseModel):
    bound: RationalOut


class DinftyResponse(BaseModel):
    dinfty_ample: bool


class UCheckRequest(BaseModel):
    data: SurfaceDataIn
    v: MukaiVectorIn
    u_num: int
    u_den: int = 1


class UCheckResponse(BaseModel):
    ample: bool


class HilbRequest(BaseModel):
    n: int = Field(ge=2)
    e: int
    a: int = Field(ge=1)
    b: int = Field(ge=1)


class KumRequest(BaseModel):
    n: int = Field(ge=2)
    d: int = Field(ge=1)
    a: int = Field(ge=1)
    b: int = Field(ge=1)


class PolarizationResponse(BaseModel):
    ample: bool
    degree: int
    divisibility: int


class TwistedRequest(BaseModel):
    pairs: list[tuple[int, int]] | None = None


class TwistedResponse(BaseModel):
    degrees: list[int]


class WallsRequest(BaseModel):
    data: SurfaceDataIn
    v: MukaiVectorIn
    rank_max: int = 3
    coord_max: int = 8
    euler_max: int = 8


class WallsResponse(BaseModel):
    max_ratio: RationalOut
    witness: MukaiVectorIn | None
    candidates: int


class ReportRequest(BaseModel):
    suite: str = "all"
    max_e: int = 200
    lemma_hi: int = 500
    dominant_hi: int = 300
    oracle_samples: int = 50
    jobs: int = 1


class CheckOut(BaseModel):
    check_id: str
    claim: str
    status: str
    details: dict
    runtime_ms: int


class ReportResponse(BaseModel):
    schema_version: int
    passed: bool
    checks: list[CheckOut]
