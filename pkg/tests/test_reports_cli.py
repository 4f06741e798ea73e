import json
import re

import pytest
from click.testing import CliRunner

from amplecert import reports as rpt
from amplecert.cli import main
from amplecert.degrees import theorem_main_set
from amplecert.representations import Problem, RepresentationWitness


@pytest.fixture(scope="module")
def small_cfg():
    return rpt.ReportConfig(max_e=165, lemma_hi=120, dominant_hi=220,
                            oracle_samples=25)


class TestRunSuite:
    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            rpt.run_suite("nope")

    def test_lemmas_statuses(self, small_cfg):
        reports = rpt.run_suite("lemmas", small_cfg)
        by_id = {r.check_id: r for r in reports}
        assert by_id["five-squares-range"].status is rpt.CheckStatus.PASS
        assert by_id["fifteen-squares-range"].status is rpt.CheckStatus.PASS
        assert by_id["three-triangular-range"].status is rpt.CheckStatus.PASS
        assert by_id["fifteen-triangular-range"].status is rpt.CheckStatus.PASS
        assert by_id["dominant-squares-range"].status is rpt.CheckStatus.PASS
        # the all-halves representation genuinely misses 31
        tri = by_id["dominant-triangular-range"]
        assert tri.status is rpt.CheckStatus.FAIL
        assert tri.details["failures"] == [31]

    def test_degrees_statuses(self, small_cfg):
        reports = rpt.run_suite("degrees", small_cfg)
        by_id = {r.check_id: r for r in reports}
        spor = by_id["degrees-sporadic-combined"]
        assert spor.status is rpt.CheckStatus.FAIL
        assert spor.details["missing"] == [48]
        assert spor.details["extra"] == []
        half16 = by_id["degrees-half16-route"]
        assert half16.status is rpt.CheckStatus.FAIL
        assert half16.details["missing"] == [48]
        for cid in ("degrees-integer-route", "degrees-half8-superset",
                    "degrees-trope-superset", "degrees-coverage",
                    "degrees-twisted"):
            assert by_id[cid].status is rpt.CheckStatus.PASS, cid

    def test_fail_carries_counterexample(self, small_cfg):
        reports = rpt.run_suite("lemmas", small_cfg)
        for r in reports:
            if r.status is rpt.CheckStatus.FAIL:
                assert r.details.get("failures") or r.details.get("missing")

    def test_mukai_and_ampleness_pass(self, small_cfg):
        for suite in ("mukai", "ampleness"):
            reports = rpt.run_suite(suite, small_cfg)
            assert rpt.all_passed(reports), [r.check_id for r in reports
                                             if r.status is not rpt.CheckStatus.PASS]

    def test_reports_deterministic(self, small_cfg):
        a = rpt.run_suite("mukai", small_cfg)
        b = rpt.run_suite("mukai", small_cfg)
        strip = lambda rs: [(r.check_id, r.claim, r.status, r.details) for r in rs]
        assert strip(a) == strip(b)


class TestWitnessStore:
    def test_round_trip_and_corruption(self, tmp_path):
        table = theorem_main_set(70)
        store = tmp_path / "witnesses.jsonl"
        rpt.export_witnesses_jsonl(table, store)
        assert rpt.verify_witness_store(store) == []

        lines = store.read_text().splitlines()
        obj = json.loads(lines[3])
        if "witness" in obj and isinstance(obj["witness"], dict):
            obj["witness"]["h2"] += 2
        else:
            obj["e"] += 1
        lines[3] = json.dumps(obj)
        store.write_text("\n".join(lines) + "\n")
        problems = rpt.verify_witness_store(store)
        assert problems and problems[0]["line"] == 4

    def test_lemma_store(self, tmp_path):
        store = tmp_path / "lemmas.jsonl"
        failures = rpt.export_lemma_witnesses_jsonl(Problem.FIVE_SQUARES, 30, 40, store)
        assert failures == [33]
        assert rpt.verify_witness_store(store) == []
        # corrupt a parts entry
        lines = store.read_text().splitlines()
        obj = json.loads(lines[0])
        obj["parts"][0] += 1
        lines[0] = json.dumps(obj)
        store.write_text("\n".join(lines))
        assert rpt.verify_witness_store(store)

    def test_all_suite_flags_corrupted_store(self, tmp_path):
        store = tmp_path / "w.jsonl"
        rpt.export_witnesses_jsonl(theorem_main_set(70), store)
        lines = store.read_text().splitlines()
        obj = json.loads(lines[0])
        obj["e"] += 1
        lines[0] = json.dumps(obj)
        store.write_text("\n".join(lines) + "\n")
        cfg = rpt.ReportConfig(max_e=165, lemma_hi=60, dominant_hi=170,
                               oracle_samples=5, witness_store=str(store))
        reports = rpt.run_suite("all", cfg)
        by_id = {r.check_id: r for r in reports}
        assert by_id["witness-store"].status is rpt.CheckStatus.FAIL
        assert by_id["witness-store"].details["problems"][0]["line"] == 1

    def test_csv_export(self, tmp_path):
        table = theorem_main_set(70)
        out = tmp_path / "degrees.csv"
        rpt.export_degrees_csv(table, out)
        lines = out.read_text().splitlines()
        assert lines[0] == "e,methods,witness_id,primitive"
        first = lines[1].split(",")
        assert first[0] == "14" and "half16" in first[1]

    def test_csv_empty(self, tmp_path):
        out = tmp_path / "empty.csv"
        rpt.export_degrees_csv({}, out)
        assert out.read_text() == "e,methods,witness_id,primitive\n"


class TestCli:
    def setup_method(self):
        self.runner = CliRunner()

    def test_verify_lemmas_pass(self):
        res = self.runner.invoke(main, ["verify-lemmas", "--problem",
                                        "three-triangular", "--lo", "0",
                                        "--hi", "40", "--jobs", "1"])
        assert res.exit_code == 0
        lines = res.stdout.strip().splitlines()
        assert len(lines) == 41
        for line in lines:
            RepresentationWitness.from_json(json.loads(line)).validate()

    def test_verify_lemmas_failure_exit(self):
        res = self.runner.invoke(main, ["verify-lemmas", "--problem",
                                        "five-squares", "--lo", "30",
                                        "--hi", "34", "--quiet", "--jobs", "1"])
        assert res.exit_code == 1
        assert "33" in res.stderr

    def test_verify_lemmas_jobs_deterministic(self):
        args = ["verify-lemmas", "--problem", "dominant-squares",
                "--lo", "164", "--hi", "320", "--quiet"]
        one = self.runner.invoke(main, args + ["--jobs", "1"])
        two = self.runner.invoke(main, args + ["--jobs", "2"])
        assert one.exit_code == two.exit_code == 0
        assert one.stderr == two.stderr

    def test_jobs_env_default(self):
        res = self.runner.invoke(main, ["verify-lemmas", "--problem",
                                        "three-triangular", "--lo", "0",
                                        "--hi", "5", "--quiet"],
                                 env={"AMPLECERT_JOBS": "1"})
        assert res.exit_code == 0

    def test_check_ample(self):
        res = self.runner.invoke(main, ["check-ample", "--d", "1",
                                        "--h-coeff", "5", "--e-coeffs", "1"])
        assert res.exit_code == 0
        out = json.loads(res.stdout)
        assert out["ample_criterion"] is True and out["primitive"] is True

    def test_check_ample_half_h(self):
        res = self.runner.invoke(main, ["check-ample", "--d", "1",
                                        "--h-coeff", "7/2", "--e-coeffs", "1",
                                        "--generic-picard"])
        assert res.exit_code == 0    # a = 7/2 clears the relaxed a > 3 bound
        assert json.loads(res.stdout)["ample_generic_picard"] is True

    def test_check_ample_wrong_shape_for_relaxed_bound(self):
        res = self.runner.invoke(main, ["check-ample", "--d", "1",
                                        "--h-coeff", "3", "--e-coeffs", "1/2",
                                        "--generic-picard"])
        assert res.exit_code == 2

    def test_check_ample_bad_denominator(self):
        res = self.runner.invoke(main, ["check-ample", "--d", "1",
                                        "--h-coeff", "1/3", "--e-coeffs", "1"])
        assert res.exit_code == 2

    def test_search_violator(self):
        res = self.runner.invoke(main, ["search-violator", "--d", "1",
                                        "--h-coeff", "4", "--e-coeffs", "1",
                                        "--gram", "product"])
        assert res.exit_code == 0
        cert = json.loads(res.stdout)["violator"]
        assert cert["b2"] == 1 and cert["LdotC"] == {"num": 0, "den": 1}

    def test_search_violator_none(self):
        res = self.runner.invoke(main, ["search-violator", "--d", "1",
                                        "--h-coeff", "5", "--e-coeffs", "1",
                                        "--gram", "product"])
        assert json.loads(res.stdout)["violator"] is None

    def test_enumerate_single_method(self):
        res = self.runner.invoke(main, ["enumerate-degrees", "--max-e", "61",
                                        "--method", "rational-family"])
        assert res.exit_code == 0
        rows = [l.split()[0] for l in res.stdout.strip().splitlines()]
        assert rows == ["14", "28", "34", "46"]

    def test_enumerate_verbose(self):
        res = self.runner.invoke(main, ["enumerate-degrees", "--max-e", "61",
                                        "--method", "rational-family",
                                        "--verbose"])
        row = json.loads(res.stdout.strip().splitlines()[0])
        assert row == {"e": 14, "methods": ["rational-family"]}

    def test_enumerate_check_claims_honest_failure(self, tmp_path):
        csv = tmp_path / "d.csv"
        store = tmp_path / "w.jsonl"
        res = self.runner.invoke(main, ["enumerate-degrees", "--max-e", "165",
                                        "--check-claims", "--csv", str(csv),
                                        "--json-out", str(store)])
        assert res.exit_code == 1
        assert "[48]" in res.stderr
        assert csv.exists() and store.exists()
        assert rpt.verify_witness_store(store) == []

    def test_mukai_commands(self):
        res = self.runner.invoke(main, ["mukai", "twisted"])
        assert json.loads(res.stdout)["batch"] == [18, 32, 36, 50, 54]
        res = self.runner.invoke(main, ["mukai", "twisted", "--d", "3", "--r", "3"])
        assert json.loads(res.stdout)["e"] == 54
        res = self.runner.invoke(main, ["mukai", "hilb", "--n", "2", "--e", "14",
                                        "--a", "3", "--b", "1"])
        assert json.loads(res.stdout) == {"ample": True, "degree": 250,
                                          "divisibility": 1}
        res = self.runner.invoke(main, ["mukai", "kum", "--n", "2", "--d", "1",
                                        "--a", "4", "--b", "1"])
        assert json.loads(res.stdout)["degree"] == 26
        res = self.runner.invoke(main, ["mukai", "bound", "--v", "1,0,-2"])
        assert json.loads(res.stdout)["bound"] == {"num": 2, "den": 1}
        res = self.runner.invoke(main, [
            "mukai", "walls", "--gram", "[[0,1],[1,0]]", "--h", "1,1",
            "--b0", "0,0", "--v", "1,0,0,-3"])
        assert json.loads(res.stdout)["max_ratio"] == {"num": 3, "den": 1}

    def test_mukai_usage_error(self):
        res = self.runner.invoke(main, ["mukai", "bound", "--v", "1,0,-1"])
        assert res.exit_code == 2    # v^2 = 2 below the precondition

    def test_report_unknown_suite_usage(self):
        res = self.runner.invoke(main, ["report", "--suite", "bogus"])
        assert res.exit_code == 2

    def test_io_error_exit(self):
        res = self.runner.invoke(main, ["enumerate-degrees", "--max-e", "62",
                                        "--csv", "/dev/null/nope/x.csv"])
        assert res.exit_code == 3

    def test_report_writes_files(self, tmp_path):
        out = tmp_path / "rep"
        res = self.runner.invoke(main, ["report", "--suite", "mukai",
                                        "--out", str(out)])
        assert res.exit_code == 0
        data = json.loads((out / "report.json").read_text())
        assert data["schema"] == 1
        assert all(c["status"] == "pass" for c in data["checks"])

    def test_report_honest_failure_exit(self, tmp_path):
        out = tmp_path / "rep2"
        res = self.runner.invoke(main, ["report", "--suite", "degrees",
                                        "--out", str(out), "--max-e", "165"])
        assert res.exit_code == 1
        assert (out / "degrees.csv").exists()
        assert (out / "witnesses.jsonl").exists()
        payload = json.loads((out / "report.json").read_text())
        failing = {c["check_id"] for c in payload["checks"]
                   if c["status"] == "fail"}
        assert failing == {"degrees-sporadic-combined",
                           "degrees-sporadic-with-twisted",
                           "degrees-half16-route"}

    def test_report_determinism(self, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            self.runner.invoke(main, ["report", "--suite", "mukai",
                                      "--out", str(out)])
            text = (out / "report.json").read_text()
            outs.append(re.sub(r'"runtime_ms": \d+', '"runtime_ms": 0', text))
        assert outs[0] == outs[1]
