import json
from pathlib import Path

import pytest

from linkrep.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
REF1 = str(FIXTURES / "ref1.sld")
COMMUTING = str(FIXTURES / "commuting.sld")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    out = json.loads(captured.out) if captured.out.strip() else None
    err = json.loads(captured.err) if captured.err.strip() else None
    return code, out, err


def assert_no_floats(obj):
    if isinstance(obj, float):
        raise AssertionError(f"float leaked into report: {obj!r}")
    if isinstance(obj, dict):
        for v in obj.values():
            assert_no_floats(v)
    elif isinstance(obj, list):
        for v in obj:
            assert_no_floats(v)


class TestCheck:
    def test_ref1_passes(self, capsys):
        code, out, err = run(capsys, "check", REF1)
        assert code == 0
        assert err is None
        assert out["wellformed"] is True
        assert out["b1"] == 1 and out["b2"] == 4
        assert all(out["checks"][k]["passed"] for k in ("genus0", "selfint", "relators", "sw"))
        assert out["obstructions"]["verdict"] is True
        assert_no_floats(out)

    def test_failing_decoration_exits_one(self, capsys, tmp_path):
        bad = tmp_path / "bad.sld"
        text = Path(REF1).read_text().replace('decorate Y = perm "(24)"', 'decorate Y = perm "(123)"')
        bad.write_text(text)
        code, out, err = run(capsys, "check", str(bad))
        assert code == 1
        assert not out["checks"]["relators"]["passed"]

    def test_parse_error_exits_two(self, capsys, tmp_path):
        f = tmp_path / "broken.sld"
        f.write_text("circle c\nnonsense\n")
        code, out, err = run(capsys, "check", str(f))
        assert code == 2
        assert "unknown keyword" in err["error"]
        assert "line 2" in err["error"]

    def test_missing_file_exits_two(self, capsys):
        code, out, err = run(capsys, "check", "/no/such/file.sld")
        assert code == 2

    def test_undecorated_file_exits_two(self, capsys, tmp_path):
        f = tmp_path / "bare.sld"
        f.write_text("circle c\n")
        code, out, err = run(capsys, "check", str(f))
        assert code == 2
        assert "decorated" in err["error"]

    def test_partial_decoration_exits_two(self, capsys, tmp_path):
        f = tmp_path / "partial.sld"
        f.write_text('circle c\ncircle d\ndecorate c = perm "(12)"\n')
        code, out, err = run(capsys, "check", str(f))
        assert code == 2
        assert "undecorated" in err["error"]

    def test_malformed_diagram_exits_two(self, capsys, tmp_path):
        f = tmp_path / "collide.sld"
        f.write_text(
            'circle c\narc a from c slot 0 to c slot 0 word\ndecorate c = perm "()"\n'
        )
        code, out, err = run(capsys, "check", str(f))
        assert code == 2
        assert out["wellformed"] is False

    def test_all_sw_paths_flag(self, capsys):
        code, out, err = run(capsys, "check", REF1, "--all-sw-paths")
        assert code == 0


class TestSearch:
    def test_commuting_fixture(self, capsys):
        code, out, err = run(capsys, "search", COMMUTING)
        assert code == 0
        assert out["search"]["raw_solutions"] == 30
        assert out["search"]["classes"] >= 1
        assert_no_floats(out)

    def test_empty_result_exits_one(self, capsys, tmp_path):
        f = tmp_path / "lonely_hopf.sld"
        f.write_text("hopf h\n")
        code, out, err = run(capsys, "search", str(f))
        assert code == 1
        assert out["search"]["raw_solutions"] == 0

    def test_group_override_tetrahedral(self, capsys):
        # the tetrahedral preset has only the three coordinate flips as
        # involutions; the commuting fixture still admits solutions
        code, out, err = run(capsys, "search", COMMUTING, "--group", "tetrahedral")
        assert out["search"]["raw_solutions"] > 0

    def test_dedup_none_counts_mappings(self, capsys):
        code, out, err = run(capsys, "search", COMMUTING, "--dedup", "none")
        assert out["search"]["classes"] == out["search"]["raw_solutions"]

    def test_cache_round_trip(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        code1, out1, _ = run(capsys, "search", COMMUTING, "--cache", str(cache))
        assert code1 == 0
        files = list(cache.glob("*.json"))
        assert len(files) == 1
        code2, out2, _ = run(capsys, "search", COMMUTING, "--cache", str(cache))
        assert code2 == 0
        assert out1 == out2

    def test_cache_distinguishes_options(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        run(capsys, "search", COMMUTING, "--cache", str(cache))
        run(capsys, "search", COMMUTING, "--cache", str(cache), "--dedup", "none")
        assert len(list(cache.glob("*.json"))) == 2

    def test_solutions_reported_as_perm_or_matrix(self, capsys):
        code, out, err = run(capsys, "search", COMMUTING)
        for sol in out["search"]["solutions"]:
            for node, element in sol.items():
                assert "perm" in element or "matrix" in element


class TestObstruct:
    def test_b2_four_passes(self, capsys):
        code, out, err = run(capsys, "obstruct", "--b2", "4")
        assert code == 0
        assert out["b2"]["psq"] == 0
        assert out["verdict"] == "pass"

    def test_b2_one_fails(self, capsys):
        code, out, err = run(capsys, "obstruct", "--b2", "1")
        assert code == 1
        assert out["b2"]["psq"] == 3

    def test_summands_fail(self, capsys):
        code, out, err = run(capsys, "obstruct", "--summands", "1,1,1,1")
        assert code == 1
        assert out["connected_sum"]["psq"] == 3
        assert all(
            not v["passed"] for v in out["connected_sum"]["summand_verdicts"]
        )

    def test_summands_pass(self, capsys):
        code, out, err = run(capsys, "obstruct", "--summands", "4,8,0")
        assert code == 0

    def test_no_arguments_exits_two(self, capsys):
        code, out, err = run(capsys, "obstruct")
        assert code == 2

    def test_bad_b2_exits_two(self, capsys):
        code, out, err = run(capsys, "obstruct", "--b2", "0")
        assert code == 2


class TestBundle:
    def test_flat_profile(self, capsys):
        code, out, err = run(capsys, "bundle", "--b1", "1", "--b2", "4", "--c2", "-1")
        assert code == 0
        assert out["p1"] == 0
        assert out["energy"] == "0"
        assert out["flat"] and out["compact"] and out["irreducible_locked"]
        assert out["d"] == 0
        assert_no_floats(out)

    def test_fractional_energy_is_a_string(self, capsys):
        code, out, err = run(capsys, "bundle", "--b1", "1", "--b2", "3", "--c2", "0")
        assert out["energy"] == "3/4"
        assert_no_floats(out)

    def test_invalid_b2_exits_two(self, capsys):
        code, out, err = run(capsys, "bundle", "--b1", "1", "--b2", "0", "--c2", "0")
        assert code == 2


class TestCanon:
    def test_ref1_key(self, capsys):
        code, out, err = run(capsys, "canon", REF1)
        assert code == 0
        assert out["hopf_order"] == ["TL", "TR", "BL", "BR"]
        assert out["size"] == 4
        assert sorted(out["cos_squared"]) == ["0", "0", "1/4", "1/4", "1/4", "1/4"]
        assert_no_floats(out)

    def test_undecorated_exits_two(self, capsys, tmp_path):
        f = tmp_path / "bare.sld"
        f.write_text("hopf h\n")
        code, out, err = run(capsys, "canon", str(f))
        assert code == 2

    def test_key_invariant_under_conjugated_decoration(self, capsys, tmp_path):
        base_code, base_out, _ = run(capsys, "canon", REF1)
        # conjugate every decoration by (123): relabel cycles through t -> s t s^-1
        text = Path(REF1).read_text()
        for old, new in [
            ('"(12)"', '"(23)"'),
            ('"(14)"', '"(24)"'),
            ('"(34)"', '"(14)"'),
            ('"(23)"', '"(13)"'),
            ('"(24)"', '"(34)"'),
        ]:
            text = text.replace(f"= perm {old}", f"= perm @{new}")
        text = text.replace("@", "")
        f = tmp_path / "conj.sld"
        f.write_text(text)
        code, out, _ = run(capsys, "canon", str(f))
        assert code == 0
        assert out == base_out
