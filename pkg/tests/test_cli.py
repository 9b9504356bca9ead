"""End-to-end command tests with golden output."""

import json

import pytest

from catkit.cli import main

SURFACES = """
object Z frobenius selfdual;
diag straight = id(Z);
diag snake = (id(Z) x cup(Z)) >> (cap(Z) x id(Z));
diag loop = cup(Z) >> cap(Z);
diag torus = spider(Z, 0, 1) >> spider(Z, 1, 2) >> spider(Z, 2, 1) >> spider(Z, 1, 0);
diag handle = spider(Z, 1, 2) >> spider(Z, 2, 1);
diag double = dg(dg(snake));
"""

BOXES = """
gen f : A -> B;
gen g : B -> C;
gen h : P -> Q;
gen k : Q -> P;
diag stacked = (f x h) >> (g x k);
diag sliced = (f >> g) x (h >> k);
"""

RELATIONS = """
gen R : A -> B;
gen Rp : B -> C;
diag roundtrip = R >> Rp;
"""

REL_INTERP = {
    "semiring": "bool",
    "objects": {"A": ["a1", "a2"], "B": ["b1", "b2"], "C": ["c1", "c2", "c3"]},
    "generators": {
        "R": {"rel": [["a1", "b1"], ["a2", "b1"], ["a1", "b2"]]},
        "Rp": {"rel": [["b1", "c1"], ["b1", "c2"], ["b2", "c2"], ["b2", "c3"]]},
    },
}

DIM3 = {"semiring": "complex", "objects": {"Z": 3}, "frobenius": {"Z": "basis"}}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [("surfaces.cat", SURFACES), ("boxes.cat", BOXES), ("rel.cat", RELATIONS)]:
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    for name, data in [("rel.json", REL_INTERP), ("dim3.json", DIM3)]:
        p = tmp_path / name
        p.write_text(json.dumps(data))
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_prints_each_type(self, files, capsys):
        code, out, _ = run(capsys, "check", files["surfaces.cat"])
        assert code == 0
        lines = out.splitlines()
        assert "straight : Z -> Z" in lines
        assert "snake : Z -> Z" in lines
        assert "loop : I -> I" in lines
        assert "torus : I -> I" in lines

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "check", "/nonexistent/thing.cat")
        assert code == 2
        assert err.startswith("error:")

    def test_parse_error_has_position(self, tmp_path, capsys):
        bad = tmp_path / "broken.cat"
        bad.write_text("diag broken = id(A >> ;\n")
        code, _, err = run(capsys, "check", str(bad))
        assert code == 2
        assert f"{bad}:1:" in err

    def test_type_error_names_both_words(self, tmp_path, capsys):
        bad = tmp_path / "bad.cat"
        bad.write_text("gen f : A -> B;\ndiag w = f >> f;\n")
        code, _, err = run(capsys, "check", str(bad))
        assert code == 1
        assert "B" in err and "A" in err


class TestEq:
    def test_interchange_sides_are_equal(self, files, capsys):
        code, out, _ = run(capsys, "eq", files["boxes.cat"], "stacked", "sliced")
        assert (code, out.strip()) == (0, "equal")

    def test_double_dagger_collapses(self, files, capsys):
        code, out, _ = run(capsys, "eq", files["surfaces.cat"], "double", "snake")
        assert (code, out.strip()) == (0, "equal")

    def test_handle_vs_wire_needs_speciality(self, files, capsys):
        code, out, _ = run(
            capsys, "eq", files["surfaces.cat"], "handle", "straight", "--frobenius"
        )
        assert (code, out.strip()) == (1, "not equal")
        code, out, _ = run(
            capsys,
            "eq",
            files["surfaces.cat"],
            "handle",
            "straight",
            "--frobenius",
            "--special",
        )
        assert (code, out.strip()) == (0, "equal")

    def test_unknown_name(self, files, capsys):
        code, _, err = run(capsys, "eq", files["surfaces.cat"], "snake", "nosuch")
        assert code == 1
        assert "nosuch" in err


class TestEval:
    def test_snake_is_identity(self, files, capsys):
        code, out, _ = run(
            capsys, "eval", files["surfaces.cat"], "snake", "--interp", files["dim3.json"]
        )
        assert code == 0
        assert out.strip() == "[[1, 0, 0], [0, 1, 0], [0, 0, 1]]"

    def test_loop_prints_bare_dimension(self, files, capsys):
        code, out, _ = run(
            capsys, "eval", files["surfaces.cat"], "loop", "--interp", files["dim3.json"]
        )
        assert (code, out.strip()) == (0, "3")

    def test_relation_matrix_and_pairs(self, files, capsys):
        code, out, _ = run(
            capsys, "eval", files["rel.cat"], "roundtrip", "--interp", files["rel.json"]
        )
        assert code == 0
        matrix_line, pair_line = out.strip().splitlines()
        assert matrix_line == "[[1, 1], [1, 1], [1, 0]]"
        assert pair_line == "{(a1, c1), (a1, c2), (a1, c3), (a2, c1), (a2, c2)}"

    def test_complex_entry_formats(self, tmp_path, capsys):
        (tmp_path / "s.cat").write_text("gen s : I -> I;\ndiag it = s;\n")
        (tmp_path / "s.json").write_text(
            json.dumps({"semiring": "complex", "objects": {}, "generators": {"s": [[[0, 1]]]}})
        )
        code, out, _ = run(
            capsys, "eval", str(tmp_path / "s.cat"), "it", "--interp", str(tmp_path / "s.json")
        )
        assert (code, out.strip()) == (0, "0+1j")

    def test_invalid_json_is_an_io_error(self, files, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "eval", files["surfaces.cat"], "snake", "--interp", str(bad))
        assert code == 2
        assert "invalid JSON" in err

    def test_missing_interp_flag_is_a_usage_error(self, files, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", files["surfaces.cat"], "snake"])
        assert exc.value.code == 2


class TestClassify:
    def test_torus(self, files, capsys):
        code, out, _ = run(capsys, "classify", files["surfaces.cat"], "torus")
        assert (code, out.strip()) == (0, "component(in=[], out=[], genus=1)")

    def test_double_twist(self, tmp_path, capsys):
        p = tmp_path / "twist.cat"
        p.write_text(
            "object Z frobenius selfdual;\n"
            "diag twist2 = swap(Z, Z) >> swap(Z, Z);\n"
        )
        code, out, _ = run(capsys, "classify", str(p), "twist2")
        assert code == 0
        assert out.splitlines() == [
            "component(in=[0], out=[0], genus=0)",
            "component(in=[1], out=[1], genus=0)",
        ]

    def test_foreign_generator_is_semantic_failure(self, files, capsys):
        code, _, err = run(capsys, "classify", files["boxes.cat"], "stacked")
        assert code == 1
        assert "generator" in err


class TestLaws:
    def test_default_battery_passes(self, capsys):
        code, out, _ = run(capsys, "laws", "--seed", "3")
        assert code == 0
        assert "all laws as expected" in out
        assert "pentagon" in out
        assert "seed=3" in out
        assert "fail (expected)" in out  # negative suite is part of the battery

    def test_battery_with_interpretation(self, files, capsys):
        code, out, _ = run(capsys, "laws", "--interp", files["rel.json"])
        assert code == 0
        assert "all laws as expected" in out
