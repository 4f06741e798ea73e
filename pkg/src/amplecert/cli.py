"""Command-line surface.

Exit codes: 0 everything passed, 1 a conformance check failed, 2 usage
error, 3 I/O error.
"""
from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from . import degrees as deg
from . import reports as rpt
from .ampleness import (NSData, SearchBounds, find_orthogonal_violator,
                        ns_product, ns_rank_one, pair_with_candidate,
                        sufficient_ample, sufficient_ample_generic_picard)
from .lattice import KummerClass, default_generators, is_integral, is_primitive, pair
from .mukai import (MukaiVector, NumericalSurfaceData, SurfaceKind, WallBounds,
                    dinfty_ample, hilb_polarization, k3_ample_bound_check,
                    kummer_ample_bound, kummer_polarization,
                    mukai_generalized_degree, twisted_k3_batch,
                    twisted_k3_degree, wall_search)
from .representations import Problem, solve, verify_range

ENV_JOBS = "AMPLECERT_JOBS"


def _default_jobs() -> int:
    env = os.environ.get(ENV_JOBS)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _emit(obj):
    click.echo(json.dumps(obj, sort_keys=True))


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _parse_class(class_json, d, h_coeff, e_coeffs) -> KummerClass:
    if class_json:
        return KummerClass.from_json(json.loads(class_json))
    if h_coeff is None or e_coeffs is None:
        raise click.UsageError("give either --class-json or --d/--h-coeff/--e-coeffs")
    coeffs = [Fraction(p) for p in e_coeffs.split(",")]
    if len(coeffs) == 1:
        coeffs = coeffs * 16
    try:
        return KummerClass.from_coeffs(d, Fraction(h_coeff), coeffs)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _parse_ns(gram: str, d: int) -> NSData:
    if gram == "rank1":
        return ns_rank_one(d)
    if gram == "product":
        return ns_product(d)
    try:
        obj = json.loads(gram)
        return NSData(tuple(tuple(r) for r in obj["gram"]), tuple(obj["h"]))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise click.UsageError(f"--gram must be rank1, product or JSON: {exc}")


@click.group()
def main():
    """Exact ampleness certificates and polarization degree enumeration."""


@main.command("verify-lemmas")
@click.option("--problem", type=click.Choice([p.value for p in Problem]), required=True)
@click.option("--lo", type=int, required=True)
@click.option("--hi", type=int, required=True)
@click.option("--jobs", type=int, default=None, help=f"worker count (default {ENV_JOBS} or CPUs)")
@click.option("--quiet", is_flag=True, help="only report failures, skip witness lines")
def verify_lemmas(problem, lo, hi, jobs, quiet):
    """Scan [lo, hi]; print witnesses as JSON lines, exit 0 iff none fail."""
    jobs = jobs or _default_jobs()
    prob = Problem(problem)
    try:
        if quiet:
            failures = verify_range(prob, lo, hi, jobs=jobs)
        else:
            failures = []
            for n in range(lo, hi + 1):
                w = solve(prob, n)
                if w is None:
                    failures.append(n)
                else:
                    _emit(w.to_json())
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(f"checked [{lo}, {hi}]: {len(failures)} failure(s) {failures[:20]}",
               err=True)
    sys.exit(0 if not failures else 1)


@main.command("check-ample")
@click.option("--class-json", default=None)
@click.option("--d", type=int, default=1)
@click.option("--h-coeff", default=None, help="H-coefficient, e.g. 5 or 7/2")
@click.option("--e-coeffs", default=None, help="comma list of 16 coefficients (or one, repeated)")
@click.option("--generic-picard", is_flag=True,
              help="also evaluate the relaxed rank-one bound (hypothesis on trust)")
def check_ample(class_json, d, h_coeff, e_coeffs, generic_picard):
    """Evaluate the sufficient ampleness criterion on a class."""
    cls = _parse_class(class_json, d, h_coeff, e_coeffs)
    out = {
        "class": cls.to_json(),
        "self_intersection": _frac_json(pair(cls, cls)),
        "ample_criterion": sufficient_ample(cls),
        "integral": bool(is_integral(cls, default_generators(cls.d))),
    }
    if out["integral"]:
        out["primitive"] = is_primitive(cls, default_generators(cls.d))
    if generic_picard:
        try:
            out["ample_generic_picard"] = sufficient_ample_generic_picard(cls)
        except ValueError as exc:
            raise click.UsageError(str(exc))
    _emit(out)


@main.command("search-violator")
@click.option("--class-json", default=None)
@click.option("--d", type=int, default=1)
@click.option("--h-coeff", default=None)
@click.option("--e-coeffs", default=None)
@click.option("--gram", default="product", help="rank1, product, or JSON {gram, h}")
@click.option("--bound-b", type=int, default=8)
@click.option("--bound-m", type=int, default=8)
def search_violator(class_json, d, h_coeff, e_coeffs, gram, bound_b, bound_m):
    """Exhaustive candidate search; prints the certificate or null."""
    cls = _parse_class(class_json, d, h_coeff, e_coeffs)
    ns = _parse_ns(gram, cls.d)
    try:
        cand = find_orthogonal_violator(cls, ns, SearchBounds(bound_b, bound_m))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if cand is None:
        _emit({"violator": None, "bounds": {"b2": bound_b, "coord": bound_m}})
    else:
        cert = cand.to_json()
        cert["LdotC"] = _frac_json(pair_with_candidate(cls, cand))
        _emit({"violator": cert})


@main.command("enumerate-degrees")
@click.option("--max-e", type=int, required=True)
@click.option("--method", "methods", multiple=True,
              type=click.Choice([m.value for m in deg.Method]))
@click.option("--verbose", is_flag=True, help="list every method per degree")
@click.option("--check-claims", is_flag=True,
              help="exit 0 iff the sporadic list and coverage match the targets")
@click.option("--csv", "csv_path", default=None)
@click.option("--json-out", default=None, help="witness store (JSON lines)")
def enumerate_degrees(max_e, methods, verbose, check_claims, csv_path, json_out):
    """Enumerate realized degrees e <= max-e."""
    try:
        if methods:
            table: dict[int, list] = {}
            for m in methods:
                for rec in _records_for(deg.Method(m), max_e):
                    table.setdefault(rec.e, []).append(rec)
        else:
            table = deg.theorem_main_set(max_e)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    try:
        if csv_path:
            rpt.export_degrees_csv(table, csv_path)
        if json_out:
            rpt.export_witnesses_jsonl(table, json_out)
    except OSError as exc:
        click.echo(f"i/o error: {exc}", err=True)
        sys.exit(3)
    for e in sorted(table):
        if verbose:
            _emit({"e": e, "methods": [r.method.value for r in table[e]]})
        else:
            click.echo(f"{e} {'|'.join(r.method.value for r in table[e])}")
    if check_claims:
        sporadic = deg.sporadic_degrees(table, include_twisted=False)
        gaps = deg.coverage_gaps(table, 62, max_e) if max_e >= 62 else []
        want = sorted(rpt.SPORADIC_EXPECTED)
        ok = sporadic == want and not gaps
        click.echo(f"sporadic match: {sporadic == want} "
                   f"(missing {sorted(set(want) - set(sporadic))}); "
                   f"coverage gaps: {gaps}", err=True)
        sys.exit(0 if ok else 1)


def _records_for(method: deg.Method, max_e: int):
    if method is deg.Method.INTEGER:
        return [r for r in (deg.degrees_integer(e) for e in range(1, max_e + 1)) if r]
    if method is deg.Method.HALF16:
        return [r for r in (deg.degrees_half16(e) for e in range(2, max_e + 1, 2)) if r]
    if method is deg.Method.HALF8:
        return deg.degrees_half8(max_e)
    if method is deg.Method.TROPE:
        return deg.degrees_trope(max_e)
    if method is deg.Method.RATIONAL_FAMILY:
        return deg.rational_family_degrees(max_e)
    out = []
    from .mukai import DEFAULT_TWISTED_PARAMS
    for d_, r_ in DEFAULT_TWISTED_PARAMS:
        e = twisted_k3_degree(d_, r_)
        if e <= max_e:
            out.append(deg.DegreeRecord(e, deg.Method.TWISTED_MODULI, (d_, r_), True))
    return out


# ---------------------------------------------------------------------------
# mukai subcommands
# ---------------------------------------------------------------------------

def _data_options(fn):
    fn = click.option("--kind", type=click.Choice(["abelian", "k3"]), default="abelian")(fn)
    fn = click.option("--half-degree", type=int, default=1)(fn)
    fn = click.option("--r", type=int, default=1)(fn)
    fn = click.option("--a-num", type=int, default=0)(fn)
    fn = click.option("--b-num", type=int, default=0)(fn)
    fn = click.option("--gram", default=None, help="JSON rows, with --h/--b0")(fn)
    fn = click.option("--h", default=None, help="comma coords of H")(fn)
    fn = click.option("--b0", default=None, help="comma coords of B_0")(fn)
    return fn


def _build_data(kind, half_degree, r, a_num, b_num, gram, h, b0) -> NumericalSurfaceData:
    kw = {}
    if gram is not None:
        if h is None or b0 is None:
            raise click.UsageError("--gram needs --h and --b0")
        kw["gram"] = tuple(tuple(row) for row in json.loads(gram))
        kw["h"] = tuple(int(x) for x in h.split(","))
        kw["b0"] = tuple(int(x) for x in b0.split(","))
    try:
        return NumericalSurfaceData(SurfaceKind(kind), half_degree, r,
                                    a_num, b_num, **kw)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _parse_vector(v: str) -> MukaiVector:
    xs = [int(p) for p in v.split(",")]
    if len(xs) < 3:
        raise click.UsageError("--v needs rank, ns coords, euler")
    return MukaiVector(xs[0], tuple(xs[1:-1]), xs[-1])


@main.group()
def mukai():
    """Moduli-side bounds and degree calculators."""


@mukai.command("bound")
@_data_options
@click.option("--v", required=True, help="comma ints: rank, ns..., euler")
def mukai_bound(v, **data_kw):
    data = _build_data(**data_kw)
    vec = _parse_vector(v)
    try:
        b = kummer_ample_bound(vec, data)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit({"bound": _frac_json(b)})


@mukai.command("dinfty")
@_data_options
@click.option("--v", required=True)
def mukai_dinfty(v, **data_kw):
    data = _build_data(**data_kw)
    try:
        _emit({"dinfty_ample": dinfty_ample(_parse_vector(v), data)})
    except ValueError as exc:
        raise click.UsageError(str(exc))


@mukai.command("check-u")
@_data_options
@click.option("--v", required=True)
@click.option("--u", required=True, help="rational, e.g. 7 or 7/2")
def mukai_check_u(v, u, **data_kw):
    data = _build_data(**data_kw)
    try:
        _emit({"ample": k3_ample_bound_check(Fraction(u), _parse_vector(v), data)})
    except ValueError as exc:
        raise click.UsageError(str(exc))


@mukai.command("hilb")
@click.option("--n", type=int, required=True)
@click.option("--e", type=int, required=True)
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
def mukai_hilb(n, e, a, b):
    try:
        _emit(hilb_polarization(n, e, a, b).to_json())
    except ValueError as exc:
        raise click.UsageError(str(exc))


@mukai.command("kum")
@click.option("--n", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
def mukai_kum(n, d, a, b):
    try:
        _emit(kummer_polarization(n, d, a, b).to_json())
    except ValueError as exc:
        raise click.UsageError(str(exc))


@mukai.command("twisted")
@click.option("--d", type=int, default=None)
@click.option("--r", type=int, default=None)
@click.option("--generalized-e", type=int, default=None,
              help="with --r: degree map e -> r^2 e")
def mukai_twisted(d, r, generalized_e):
    try:
        if generalized_e is not None:
            if r is None:
                raise click.UsageError("--generalized-e needs --r")
            _emit({"e": mukai_generalized_degree(generalized_e, r)})
        elif d is not None and r is not None:
            _emit({"e": twisted_k3_degree(d, r)})
        else:
            _emit({"batch": sorted(twisted_k3_batch())})
    except ValueError as exc:
        raise click.UsageError(str(exc))


@mukai.command("walls")
@_data_options
@click.option("--v", required=True)
@click.option("--bounds", default="3,8,8", help="rank,coord,euler box")
def mukai_walls(v, bounds, **data_kw):
    data = _build_data(**data_kw)
    try:
        bx = [int(p) for p in bounds.split(",")]
        res = wall_search(_parse_vector(v), data, WallBounds(*bx))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(res.to_json())


@main.command("report")
@click.option("--suite", type=click.Choice(sorted(rpt.SUITES)), required=True)
@click.option("--out", type=click.Path(), default=None, help="output directory")
@click.option("--max-e", type=int, default=200)
@click.option("--lemma-hi", type=int, default=2000)
@click.option("--dominant-hi", type=int, default=500)
@click.option("--samples", type=int, default=200)
@click.option("--jobs", type=int, default=None)
def report(suite, out, max_e, lemma_hi, dominant_hi, samples, jobs):
    """Run a conformance suite; exit 0 iff every check passes."""
    cfg = rpt.ReportConfig(max_e=max_e, lemma_hi=lemma_hi, dominant_hi=dominant_hi,
                           oracle_samples=samples, jobs=jobs or _default_jobs())
    reports = rpt.run_suite(suite, cfg)
    for r in reports:
        click.echo(f"[{r.status.value:>4}] {r.check_id} ({r.runtime_ms} ms)")
        if r.status is rpt.CheckStatus.FAIL:
            click.echo(f"       claim: {r.claim}")
            click.echo(f"       details: {json.dumps(r.details, sort_keys=True)[:400]}")
    if out:
        try:
            os.makedirs(out, exist_ok=True)
            with open(os.path.join(out, "report.json"), "w") as fh:
                json.dump(rpt.reports_to_json(reports), fh, sort_keys=True, indent=1)
            if suite in ("degrees", "all"):
                table = cfg.degree_table()
                rpt.export_degrees_csv(table, os.path.join(out, "degrees.csv"))
                rpt.export_witnesses_jsonl(table, os.path.join(out, "witnesses.jsonl"))
        except OSError as exc:
            click.echo(f"i/o error: {exc}", err=True)
            sys.exit(3)
    sys.exit(0 if rpt.all_passed(reports) else 1)


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
