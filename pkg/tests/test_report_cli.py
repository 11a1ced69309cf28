import json

import pytest

from maxtrifree import Graph, encode_graph6, worked_k4_instance
from maxtrifree.cli import main
from maxtrifree.report import (
    DEFAULT_GUARDS,
    RunConfig,
    VerificationReport,
    dumps_reports,
    loads_reports,
    rng_for,
    strip_timing,
)


def make_report(**overrides):
    base = dict(
        check_name="demo", status="pass", parameters={"n": 4},
        counts={"total": 7}, witnesses=[], elapsed_ms=3,
    )
    base.update(overrides)
    return VerificationReport(**base)


class TestReportType:
    def test_round_trip(self):
        rep = make_report(witnesses=["C~", ["0-1", "2-3"]])
        text = dumps_reports([rep])
        assert loads_reports(text) == [rep]

    def test_fail_requires_witness(self):
        with pytest.raises(ValueError):
            make_report(status="fail")

    def test_bad_status(self):
        with pytest.raises(ValueError):
            make_report(status="ok")

    def test_counts_must_be_int(self):
        with pytest.raises(ValueError):
            make_report(counts={"x": 1.5})
        with pytest.raises(ValueError):
            make_report(counts={"x": True})

    def test_strip_timing(self):
        data = json.loads(dumps_reports([make_report()]))
        stripped = strip_timing(data)
        assert "elapsed_ms" not in stripped[0]
        assert stripped[0]["counts"] == {"total": 7}

    def test_summary_line(self):
        assert make_report().summary_line().startswith("[PASS] demo")


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.guards == DEFAULT_GUARDS
        assert cfg.guard("oracle_n") == 6

    def test_override(self):
        cfg = RunConfig(guards={"oracle_n": 4})
        assert cfg.guard("oracle_n") == 4
        assert cfg.guard("enumeration_n") == 9

    def test_unknown_guard(self):
        with pytest.raises(ValueError):
            RunConfig(guards={"bogus": 1})

    def test_bad_shards(self):
        with pytest.raises(ValueError):
            RunConfig(shards=0)


class TestRng:
    def test_keyed_streams(self):
        a = rng_for(1, 5).integers(0, 1 << 30, size=4)
        b = rng_for(1, 5).integers(0, 1 << 30, size=4)
        c = rng_for(1, 6).integers(0, 1 << 30, size=4)
        assert a.tolist() == b.tolist()
        assert a.tolist() != c.tolist()

    def test_seed_matters(self):
        assert rng_for(1, 0).random() != rng_for(2, 0).random()


class TestCli:
    def test_mis_count_only(self, capsys):
        assert main(["mis", "--g6", "C~", "--count-only"]) == 0
        assert capsys.readouterr().out.strip() == "4"

    def test_mis_listing(self, capsys):
        assert main(["mis", "--g6", encode_graph6(Graph.cycle(5))]) == 0
        out = capsys.readouterr().out
        assert out.strip().endswith("total 5")

    def test_enumerate(self, tmp_path, capsys):
        stream = tmp_path / "out.g6"
        code = main(["enumerate", "--n", "5", "--stream", str(stream),
                     "--json", str(tmp_path / "t.json")])
        assert code == 0
        assert "27" in capsys.readouterr().out
        assert len(stream.read_text().splitlines()) == 27
        rows = json.loads((tmp_path / "t.json").read_text())
        assert rows[4]["labeled_count"] == 27

    def test_construct_choice(self, capsys):
        assert main(["construct", "--family", "folklore", "--n", "4",
                     "--choice", "0"]) == 0
        # the star at vertex 0: edges 01, 02, 03
        assert capsys.readouterr().out.strip() == encode_graph6(Graph.star(3))

    def test_construct_stats(self, capsys):
        assert main(["construct", "--family", "folklore", "--n", "4", "--stats"]) == 0
        assert "folklore_stats_n4" in capsys.readouterr().out

    def test_construct_kr_samples(self, tmp_path):
        stream = tmp_path / "kr.g6"
        assert main(["construct", "--family", "kr", "--n", "12", "--r", "3",
                     "--samples", "5", "--stream", str(stream), "--seed", "9"]) == 0
        assert len(stream.read_text().splitlines()) == 5

    def test_reduce_instance_file(self, tmp_path, capsys):
        path = tmp_path / "inst.json"
        worked_k4_instance().dump(path)
        assert main(["reduce", "--instance", str(path),
                     "--check", "claim1,claim2,chain"]) == 0
        out = capsys.readouterr().out
        assert "claim1" in out and "claim2" in out and "bound_chain" in out

    def test_reduce_random(self, capsys):
        assert main(["reduce", "--random", "3", "--check", "claim2", "--seed", "5"]) == 0
        assert capsys.readouterr().out.count("[PASS]") == 3

    def test_reduce_unknown_check(self):
        with pytest.raises(SystemExit):
            main(["reduce", "--random", "1", "--check", "claim9"])

    def test_verify_small_suite(self, tmp_path, capsys):
        out = tmp_path / "rep.json"
        code = main(["verify", "--suite", "enumeration", "--seed", "1",
                     "--guard", "enumeration_n=6", "--json", str(out)])
        assert code == 0
        reports = loads_reports(out.read_text())
        names = [r.check_name for r in reports]
        assert names == sorted(names)
        assert all(r.passed for r in reports)

    def test_verify_unknown_guard(self, capsys):
        assert main(["verify", "--suite", "enumeration", "--guard", "bogus=2"]) == 2
        assert "unknown guard" in capsys.readouterr().err

    def test_usage_error_exit_code(self, capsys):
        assert main(["mis", "--g6", "C"]) == 2  # truncated graph6
        assert "error:" in capsys.readouterr().err

    def test_guard_violation_is_per_check_not_abort(self, tmp_path):
        # an over-cap guard fails that one check and the run carries on
        out = tmp_path / "rep.json"
        code = main(["verify", "--suite", "hujter-tuza",
                     "--guard", "hujter_tuza_m=12", "--json", str(out)])
        assert code == 1
        reports = {r.check_name: r for r in loads_reports(out.read_text())}
        assert not reports["hujter_tuza_exhaustive"].passed
        assert reports["hujter_tuza_exhaustive"].witnesses
        assert reports["hujter_tuza_matching_equality"].passed

    def test_report_summary(self, tmp_path, capsys):
        out = tmp_path / "rep.json"
        main(["verify", "--suite", "enumeration", "--guard", "enumeration_n=5",
              "--json", str(out)])
        capsys.readouterr()
        assert main(["report", "--json", str(out)]) == 0
        assert "checks passed" in capsys.readouterr().out

    def test_report_failure_exit(self, tmp_path, capsys):
        failing = make_report(status="fail", witnesses=["C~"])
        out = tmp_path / "rep.json"
        out.write_text(dumps_reports([make_report(), failing]))
        assert main(["report", "--json", str(out)]) == 1
        assert "1/2 checks passed" in capsys.readouterr().out

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("MAXTRIFREE_SEED", "77")
        main(["reduce", "--random", "1", "--check", "claim1"])
        first = capsys.readouterr().out
        monkeypatch.delenv("MAXTRIFREE_SEED")
        main(["reduce", "--random", "1", "--check", "claim1", "--seed", "77"])
        assert capsys.readouterr().out == first

    def test_env_guard(self, monkeypatch, tmp_path):
        monkeypatch.setenv("MAXTRIFREE_GUARD_ENUMERATION_N", "5")
        out = tmp_path / "rep.json"
        assert main(["verify", "--suite", "enumeration", "--json", str(out)]) == 0
        reports = {r.check_name: r for r in loads_reports(out.read_text())}
        assert "count_n5" in reports["growth_table"].counts
        assert "count_n6" not in reports["growth_table"].counts
