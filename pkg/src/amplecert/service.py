"""HTTP service wrapping the core operations."""
from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from . import schemas as S
from . import degrees as deg
from . import reports as rpt
from .ampleness import (NSData, SearchBounds, find_orthogonal_violator,
                        pair_with_candidate, sufficient_ample,
                        sufficient_ample_generic_picard)
from .lattice import IntegralityGenerators, KummerClass, default_generators, \
    is_integral, is_primitive, pair
from .mukai import (MukaiVector, NumericalSurfaceData, SurfaceKind, WallBounds,
                    dinfty_ample, hilb_polarization, k3_ample_bound_check,
                    kummer_ample_bound, kummer_polarization, mukai_pair,
                    twisted_k3_batch, wall_search)
from .representations import Problem, solve, verify_range

app = FastAPI(title="amplecert",
              description="Exact ampleness certificates and degree enumeration")


def _cls(m: S.KummerClassIn) -> KummerClass:
    return KummerClass(m.d, m.h2, tuple(m.e2))


def _gens(m: S.GeneratorsIn | None, d: int) -> IntegralityGenerators:
    if m is None:
        return default_generators(d)
    return IntegralityGenerators(m.half_all16,
                                 tuple(frozenset(w) for w in m.half_eight),
                                 tuple(frozenset(w) for w in m.tropes))


def _frac(x: Fraction) -> S.RationalOut:
    return S.RationalOut(num=x.numerator, den=x.denominator)


def _data(m: S.SurfaceDataIn) -> NumericalSurfaceData:
    kw = {}
    if m.gram is not None:
        kw = {"gram": tuple(tuple(r) for r in m.gram),
              "h": tuple(m.h or ()), "b0": tuple(m.b0 or ())}
    return NumericalSurfaceData(SurfaceKind(m.kind), m.half_degree, m.r,
                                m.a_num, m.b_num, **kw)


def _vec(m: S.MukaiVectorIn) -> MukaiVector:
    return MukaiVector(m.rank, tuple(m.ns), m.euler)


def _bad_request(exc: ValueError):
    raise HTTPException(status_code=422, detail=str(exc))


@app.get("/health")
def health():
    return {"status": "ok", "schema": rpt.SCHEMA_VERSION}


@app.post("/lattice/pair", response_model=S.PairResponse)
def lattice_pair(req: S.PairRequest):
    try:
        return S.PairResponse(value=_frac(pair(_cls(req.left), _cls(req.right))))
    except ValueError as exc:
        _bad_request(exc)


@app.post("/lattice/integral", response_model=S.IntegralityResponse)
def lattice_integral(req: S.IntegralityRequest):
    cls = _cls(req.cls)
    try:
        res = is_integral(cls, _gens(req.generators, cls.d))
    except ValueError as exc:
        _bad_request(exc)
    return S.IntegralityResponse(integral=res.member,
                                 combination=res.combination if res.member else None)


@app.post("/lattice/primitive", response_model=S.PrimitivityResponse)
def lattice_primitive(req: S.IntegralityRequest):
    cls = _cls(req.cls)
    try:
        return S.PrimitivityResponse(
            primitive=is_primitive(cls, _gens(req.generators, cls.d)))
    except ValueError as exc:
        _bad_request(exc)


@app.post("/ample/check", response_model=S.AmpleCheckResponse)
def ample_check(req: S.AmpleCheckRequest):
    cls = _cls(req.cls)
    generic = None
    if req.generic_picard:
        try:
            generic = sufficient_ample_generic_picard(cls)
        except ValueError as exc:
            _bad_request(exc)
    return S.AmpleCheckResponse(ample_criterion=sufficient_ample(cls),
                                ample_generic_picard=generic,
                                self_intersection=_frac(pair(cls, cls)))


@app.post("/ample/violator", response_model=S.ViolatorResponse)
def ample_violator(req: S.ViolatorRequest):
    cls = _cls(req.cls)
    try:
        ns = NSData(tuple(tuple(r) for r in req.ns.gram), tuple(req.ns.h))
        cand = find_orthogonal_violator(cls, ns,
                                        SearchBounds(req.bound_b, req.bound_m))
    except ValueError as exc:
        _bad_request(exc)
    if cand is None:
        return S.ViolatorResponse(violator=None)
    return S.ViolatorResponse(violator=S.ViolatorCertificate(
        b2=cand.b2, ns_coords=list(cand.ns_coords), bi2=list(cand.bi2),
        LdotC=_frac(pair_with_candidate(cls, cand))))


@app.post("/lemmas/solve", response_model=S.LemmaSolveResponse)
def lemmas_solve(req: S.LemmaSolveRequest):
    try:
        w = solve(Problem(req.problem), req.n)
    except ValueError as exc:
        _bad_request(exc)
    if w is None:
        return S.LemmaSolveResponse(witness=None)
    return S.LemmaSolveResponse(witness=S.WitnessOut(**w.to_json()))


@app.post("/lemmas/verify-range", response_model=S.RangeResponse)
def lemmas_verify_range(req: S.RangeRequest):
    try:
        failures = verify_range(Problem(req.problem), req.lo, req.hi, jobs=req.jobs)
    except ValueError as exc:
        _bad_request(exc)
    return S.RangeResponse(failures=failures)


@app.post("/degrees/enumerate", response_model=S.DegreesResponse)
def degrees_enumerate(req: S.DegreesRequest):
    try:
        table = deg.theorem_main_set(req.max_e)
    except ValueError as exc:
        _bad_request(exc)
    rows = [S.DegreeRow(e=e, methods=[r.method.value for r in table[e]],
                        primitive=table[e][0].primitive)
            for e in sorted(table)]
    return S.DegreesResponse(degrees=rows,
                             sporadic=deg.sporadic_degrees(table),
                             coverage_gaps=deg.coverage_gaps(table, 62, req.max_e))


@app.post("/mukai/pair", response_model=S.MukaiPairResponse)
def mukai_pair_ep(req: S.MukaiPairRequest):
    try:
        val = mukai_pair(_vec(req.left), _vec(req.right), _data(req.data))
    except ValueError as exc:
        _bad_request(exc)
    return S.MukaiPairResponse(value=val)


@app.post("/mukai/kummer-bound", response_model=S.BoundResponse)
def mukai_kummer_bound(req: S.BoundRequest):
    try:
        return S.BoundResponse(bound=_frac(kummer_ample_bound(_vec(req.v), _data(req.data))))
    except ValueError as exc:
        _bad_request(exc)


@app.post("/mukai/dinfty", response_model=S.DinftyResponse)
def mukai_dinfty(req: S.BoundRequest):
    try:
        return S.DinftyResponse(dinfty_ample=dinfty_ample(_vec(req.v), _data(req.data)))
    except ValueError as exc:
        _bad_request(exc)


@app.post("/mukai/k3-bound-check", response_model=S.UCheckResponse)
def mukai_k3_check(req: S.UCheckRequest):
    try:
        ok = k3_ample_bound_check(Fraction(req.u_num, req.u_den),
                                  _vec(req.v), _data(req.data))
    except (ValueError, ZeroDivisionError) as exc:
        _bad_request(ValueError(str(exc)))
    return S.UCheckResponse(ample=ok)


@app.post("/mukai/hilb", response_model=S.PolarizationResponse)
def mukai_hilb(req: S.HilbRequest):
    try:
        v = hilb_polarization(req.n, req.e, req.a, req.b)
    except ValueError as exc:
        _bad_request(exc)
    return S.PolarizationResponse(**v.to_json())


@app.post("/mukai/kummer-polarization", response_model=S.PolarizationResponse)
def mukai_kum(req: S.KumRequest):
    try:
        v = kummer_polarization(req.n, req.d, req.a, req.b)
    except ValueError as exc:
        _bad_request(exc)
    return S.PolarizationResponse(**v.to_json())


@app.post("/mukai/twisted", response_model=S.TwistedResponse)
def mukai_twisted(req: S.TwistedRequest):
    try:
        got = twisted_k3_batch(tuple(req.pairs)) if req.pairs else twisted_k3_batch()
    except ValueError as exc:
        _bad_request(exc)
    return S.TwistedResponse(degrees=sorted(got))


@app.post("/mukai/walls", response_model=S.WallsResponse)
def mukai_walls(req: S.WallsRequest):
    try:
        res = wall_search(_vec(req.v), _data(req.data),
                          WallBounds(req.rank_max, req.coord_max, req.euler_max))
    except ValueError as exc:
        _bad_request(exc)
    witness = None
    if res.witness is not None:
        witness = S.MukaiVectorIn(rank=res.witness.rank, ns=list(res.witness.ns),
                                  euler=res.witness.euler)
    return S.WallsResponse(max_ratio=_frac(res.max_ratio), witness=witness,
                           candidates=res.candidates)


@app.post("/report/run", response_model=S.ReportResponse)
def report_run(req: S.ReportRequest):
    try:
        cfg = rpt.ReportConfig(max_e=req.max_e, lemma_hi=req.lemma_hi,
                               dominant_hi=req.dominant_hi,
                               oracle_samples=req.oracle_samples, jobs=req.jobs)
        reports = rpt.run_suite(req.suite, cfg)
    except ValueError as exc:
        _bad_request(exc)
    return S.ReportResponse(
        schema_version=rpt.SCHEMA_VERSION,
        passed=rpt.all_passed(reports),
        checks=[S.CheckOut(**r.to_json()) for r in reports])
