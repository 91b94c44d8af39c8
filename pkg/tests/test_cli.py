"""End-to-end command-line checks through main(argv).

Exit codes: 0 success, 1 domain error with an "error:" line on stderr,
2 usage error from the argument parser.
"""

import json

import pytest

from quiverlab.cli import main
from quiverlab.coxeter import DynkinDiagram
from quiverlab.quivers import gls_quiver, quiver_from_arrows, quiver_to_text
from quiverlab.seeds import initial_seed, seed_to_obj

A2 = DynkinDiagram.from_label("A2")
A4 = DynkinDiagram.from_label("A4")

RICHARDSON_WORD = "1,2,3,1,2,4,3"


def write_quiver(path, q):
    path.write_text(quiver_to_text(q), encoding="utf-8")
    return str(path)


def write_seed(path, seed):
    path.write_text(json.dumps(seed_to_obj(seed), indent=2) + "\n", encoding="utf-8")
    return str(path)


def a2_quiver():
    # mutable 1 -> frozen 2
    return quiver_from_arrows(2, {2}, [(1, 2, 1)])


def a2_free_quiver():
    return quiver_from_arrows(2, set(), [(1, 2, 1)])


def markov_quiver():
    return quiver_from_arrows(3, set(), [(1, 2, 2), (2, 3, 2), (3, 1, 2)])


class TestGls:
    def test_writes_expected_file(self, tmp_path, capsys):
        out = tmp_path / "q.json"
        code = main([
            "gls", "--type", "A4", "--word", RICHARDSON_WORD, "--out", str(out),
        ])
        assert code == 0
        expected = quiver_to_text(gls_quiver(A4, (1, 2, 3, 1, 2, 4, 3)))
        assert out.read_text(encoding="utf-8") == expected

    def test_stdout_when_no_out(self, capsys):
        assert main(["gls", "--type", "A2", "--word", "1,2,1"]) == 0
        captured = capsys.readouterr()
        obj = json.loads(captured.out)
        assert obj["type"] == "ice_quiver"
        assert len(obj["vertices"]) == 3

    def test_non_reduced_word_is_domain_error(self, capsys):
        assert main(["gls", "--type", "A2", "--word", "1,1"]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_bad_type_is_domain_error(self, capsys):
        assert main(["gls", "--type", "Q3", "--word", "1"]) == 1
        assert capsys.readouterr().err.startswith("error:")


class TestMutate:
    def test_double_mutation_bit_identical(self, tmp_path):
        src = tmp_path / "q.json"
        out = tmp_path / "r.json"
        main(["gls", "--type", "A4", "--word", RICHARDSON_WORD, "--out", str(src)])
        code = main(["mutate", str(src), "--at", "1", "--at", "1", "--out", str(out)])
        assert code == 0
        assert out.read_bytes() == src.read_bytes()

    def test_stdout_output(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main(["mutate", src, "--at", "1", "--at", "1"]) == 0
        assert capsys.readouterr().out == quiver_to_text(a2_free_quiver())

    def test_frozen_vertex_is_domain_error(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_quiver())
        assert main(["mutate", src, "--at", "2"]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_seed_file_mutation(self, tmp_path, capsys):
        from quiverlab.exact import parse_expression

        src = write_seed(tmp_path / "s.json", initial_seed(a2_free_quiver()))
        assert main(["mutate", src, "--at", "1"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["type"] == "seed"
        assert obj["history"] == [1]
        got = parse_expression(obj["cluster"][0], nvars=2)
        assert got == parse_expression("(1+x2)/x1", nvars=2)

    def test_unrecognized_file_type(self, tmp_path, capsys):
        src = tmp_path / "junk.json"
        src.write_text('{"type": "other"}', encoding="utf-8")
        assert main(["mutate", str(src), "--at", "1"]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_file(self, tmp_path, capsys):
        assert main(["mutate", str(tmp_path / "nope.json"), "--at", "1"]) == 1
        assert capsys.readouterr().err.startswith("error:")


class TestReduce:
    def test_script_application(self, tmp_path, capsys):
        src = write_quiver(
            tmp_path / "q.json", gls_quiver(A4, (1, 2, 3, 1, 2, 4, 3))
        )
        script = tmp_path / "script.json"
        script.write_text(
            json.dumps({"mutations": [], "freezes": [1], "deletions": [7]}),
            encoding="utf-8",
        )
        assert main(["reduce", src, "--script", str(script)]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert len(obj["vertices"]) == 6
        frozen = {v["id"] for v in obj["vertices"] if v["frozen"]}
        assert frozen == {1, 4, 5, 6}

    def test_bad_script_is_domain_error(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_quiver())
        script = tmp_path / "script.json"
        script.write_text('{"mutations": [], "bogus": []}', encoding="utf-8")
        assert main(["reduce", src, "--script", str(script)]) == 1
        assert capsys.readouterr().err.startswith("error:")


class TestRankReddeningClosure:
    def test_rank(self, tmp_path, capsys):
        src = write_quiver(
            tmp_path / "q.json", gls_quiver(A4, (1, 2, 3, 1, 2, 4, 3))
        )
        assert main(["rank", src]) == 0
        assert capsys.readouterr().out == "3\n"

    def test_reddening_text(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main(["reddening", src]) == 0
        assert capsys.readouterr().out == "1,2\n"

    def test_reddening_json_none(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", markov_quiver())
        assert main(["reddening", src, "--depth", "4", "--json"]) == 0
        assert json.loads(capsys.readouterr().out) == {"sequence": None}

    def test_closure_text(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main(["closure", src]) == 0
        assert capsys.readouterr().out == "seeds 5\nvariables 5\nedges 5\n"

    def test_closure_json(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main(["closure", src, "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["seeds"] == 5
        assert len(obj["variables"]) == 5
        assert sorted(len(e) for e in obj["edges"]) == [2] * 5

    def test_closure_bound_is_domain_error(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", markov_quiver())
        assert main(["closure", src, "--max-seeds", "10"]) == 1
        assert capsys.readouterr().err.startswith("error:")


class TestStarfishLocalize:
    def test_member(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main(["starfish", src, "--expr", "(1+x2)/x1"]) == 0
        assert capsys.readouterr().out == "member\n"

    def test_non_member_names_ring(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main(["starfish", src, "--expr", "1/(1+x1)", "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["member"] is False
        assert "L(t0)" in obj["failing"]
        assert obj["rings"][0] == "L(t0)"

    def test_flavor_changes_verdict(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_quiver())
        assert main(["starfish", src, "--expr", "1/x2"]) == 0
        assert capsys.readouterr().out == "member\n"
        assert main([
            "starfish", src, "--expr", "1/x2", "--flavor", "non-invertible",
        ]) == 0
        assert capsys.readouterr().out.startswith("not a member")

    def test_bad_expression_is_domain_error(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main(["starfish", src, "--expr", "x1 +"]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_rank_deficient_is_domain_error(self, tmp_path, capsys):
        chain3 = quiver_from_arrows(3, set(), [(1, 2, 1), (2, 3, 1)])
        src = write_quiver(tmp_path / "q.json", chain3)
        assert main(["starfish", src, "--expr", "x1"]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_localize_worked_example(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main([
            "localize", src, "--vertex", "2", "--expr", "(1+x2)/(x1*x2)",
        ]) == 0
        assert capsys.readouterr().out == "1\n"

    def test_localize_member_needs_no_power(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main(["localize", src, "--vertex", "2", "--expr", "x1", "--json"]) == 0
        assert json.loads(capsys.readouterr().out) == {"power": 0}

    def test_localize_precondition_is_domain_error(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main([
            "localize", src, "--vertex", "2", "--expr", "1/(1+x1)",
        ]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_localize_exhausted_bound_prints_none(self, tmp_path, capsys):
        src = write_quiver(tmp_path / "q.json", a2_free_quiver())
        assert main([
            "localize", src, "--vertex", "2",
            "--expr", "(1+x2)/(x1*x2)", "--max-power", "0",
        ]) == 0
        assert capsys.readouterr().out == "none\n"


class TestSpecialize:
    def test_frozen_substitution(self, tmp_path, capsys):
        src = write_seed(tmp_path / "s.json", initial_seed(a2_quiver()))
        assert main(["specialize", src, "--vertex", "2"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["cluster"] == ["x1"]
        assert len(obj["quiver"]["vertices"]) == 1

    def test_mutable_vertex_is_domain_error(self, tmp_path, capsys):
        src = write_seed(tmp_path / "s.json", initial_seed(a2_quiver()))
        assert main(["specialize", src, "--vertex", "1"]) == 1
        assert capsys.readouterr().err.startswith("error:")


class TestVerifyMinors:
    def test_table_output(self, capsys):
        code = main(["verify-minors", "--type", "A2", "--word", "1,2,1", "--trials", "3"])
        assert code == 0
        out = capsys.readouterr().out
        assert "vertex 1: ok (3 trials)" in out
        assert out.endswith("all ok\n")

    def test_json_output(self, capsys):
        code = main([
            "verify-minors", "--type", "A2", "--word", "1,2,1",
            "--trials", "2", "--json",
        ])
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["all_ok"] is True
        assert obj["vertices"][0]["vertex"] == 1

    def test_jobs_deterministic(self, capsys):
        args = ["verify-minors", "--type", "A4", "--word", RICHARDSON_WORD,
                "--trials", "4", "--json"]
        assert main(args + ["--jobs", "1"]) == 0
        serial = capsys.readouterr().out
        assert main(args + ["--jobs", "3"]) == 0
        assert capsys.readouterr().out == serial

    def test_type_restriction_is_domain_error(self, capsys):
        assert main(["verify-minors", "--type", "D4", "--word", "1,2"]) == 1
        assert capsys.readouterr().err.startswith("error:")


class TestRichardsonDim:
    def test_sl2_example(self, capsys):
        assert main(["richardson-dim", "--type", "A1", "--v", "", "--w", "1"]) == 0
        assert capsys.readouterr().out == "1\n"

    def test_identity_pair(self, capsys):
        assert main(["richardson-dim", "--type", "A1", "--v", "", "--w", ""]) == 0
        assert capsys.readouterr().out == "0\n"

    def test_empty_cell_is_domain_error(self, capsys):
        assert main(["richardson-dim", "--type", "A1", "--v", "1", "--w", ""]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_longest_pair_a4(self, capsys):
        word = "1,2,1,3,2,1,4,3,2,1"
        assert main(["richardson-dim", "--type", "A4", "--v", "", "--w", word]) == 0
        assert capsys.readouterr().out == "10\n"


class TestUsageErrors:
    def test_unknown_verb(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_missing_required_flag(self, capsys):
        assert main(["gls", "--type", "A2"]) == 2

    def test_no_verb(self, capsys):
        assert main([]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "gls" in capsys.readouterr().out
