import json
import random
from fractions import Fraction

from operadwb.commands import check as check_command
from operadwb.exceptions import DOMAIN_ERROR, INVARIANT_BREACH, PARSE_ERROR
from operadwb.main import main
from operadwb.models import CLOSED, OPEN, ColourProfile, CubeConfig, LittleCube
from operadwb.registry import get_instance
from operadwb.schemas import RenderOptions
from operadwb.services import trees
from operadwb.services.cubes import cube_compose
from operadwb.services.documents import load_element, parse_document, print_term
from operadwb.services.enumeration import enumerate_trees
from operadwb.services.fixtures import Associative
from operadwb.services.render import render_svg
from operadwb.services.resolutions import BVBimodule
from operadwb.services.rewriting import dump_term
from tests.conftest import leaf, node, perm


class ReversingAssociative(Associative):
    """Composes, then reverses the inputs of anything with two or more."""

    def compose(self, x, i, y):
        result = super().compose(x, i, y)
        n = len(result)
        if n < 2:
            return result
        return result * perm(*range(n, 0, -1))


def write_term(path, instance, structure, x) -> str:
    path.write_text(print_term(instance, structure, x), encoding="utf-8")
    return str(path)


class TestCheck:
    def test_clean_instance(self, capsys):
        assert main(["check", "--instance", "com", "--budget", "50"]) == 0
        assert "0 violations" in capsys.readouterr().out

    def test_json_report(self, capsys):
        assert main(["--json", "check", "--instance", "as", "--budget", "30", "--seed", "3"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["seed"] == 3
        assert report["violations"] == []

    def test_violations_exit_with_a_breach(self, monkeypatch, capsys):
        monkeypatch.setattr(check_command, "get_instance", lambda name: ReversingAssociative())
        assert main(["check", "--instance", "as", "--budget", "50"]) == INVARIANT_BREACH
        assert "0 violations" not in capsys.readouterr().out

    def test_unknown_instance(self, capsys):
        assert main(["check", "--instance", "nope"]) == DOMAIN_ERROR
        assert "Unknown instance" in capsys.readouterr().err


class TestCompose:
    def test_operad_composition(self, tmp_path, as_):
        x = write_term(tmp_path / "x.json", "as", as_, perm(2, 1))
        out = tmp_path / "out.json"
        assert main(["compose", x, x, "--slot", "1", "--out", str(out)]) == 0
        assert load_element(parse_document(out.read_text()), as_) == perm(3, 2, 1)

    def test_right_action(self, tmp_path, as_, as_self, capsys):
        bvb = BVBimodule(as_self)
        x = write_term(tmp_path / "x.json", "b-as", bvb, bvb.embed(perm(1, 2)))
        b = write_term(tmp_path / "b.json", "as", as_, perm(2, 1))
        assert main(["compose", x, b, "--instance", "b-as", "--mode", "right"]) == 0
        document = parse_document(capsys.readouterr().out)
        result = load_element(document, bvb)
        assert bvb.key(result) == bvb.key(bvb.right_act(bvb.embed(perm(1, 2)), 1, perm(2, 1)))

    def test_little_cubes_from_documents(self, tmp_path):
        c2 = get_instance("c2")
        half = Fraction(1, 2)
        x = CubeConfig(
            2,
            (
                LittleCube.from_intervals((0, half), (0, half)),
                LittleCube.from_intervals((half, 1), (0, half)),
                LittleCube.from_intervals((0, 1), (half, 1)),
            ),
        )
        y = CubeConfig(2, (LittleCube.from_intervals((0, half), (0, 1)), LittleCube.from_intervals((half, 1), (0, 1))))
        out = tmp_path / "out.json"
        argv = ["compose", write_term(tmp_path / "x.json", "c2", c2, x), write_term(tmp_path / "y.json", "c2", c2, y)]
        assert main(argv + ["--slot", "2", "--out", str(out)]) == 0
        assert load_element(parse_document(out.read_text()), c2) == cube_compose(x, 2, y)

    def test_unit_composition(self, tmp_path, as_):
        x = write_term(tmp_path / "x.json", "as", as_, perm(3, 1, 2))
        unit = write_term(tmp_path / "u.json", "as", as_, perm(1))
        out = tmp_path / "out.json"
        assert main(["compose", unit, x, "--out", str(out)]) == 0
        assert load_element(parse_document(out.read_text()), as_) == perm(3, 1, 2)

    def test_mismatched_colours(self, tmp_path, capsys):
        sc2 = get_instance("sc2")
        x = CubeConfig(2, (LittleCube.from_intervals((0, 1), (Fraction(1, 2), 1)),), (CLOSED,), OPEN)
        y = CubeConfig(2, (LittleCube.from_intervals((Fraction(1, 2), 1), (0, 1)),), (OPEN,), OPEN)
        argv = ["compose", write_term(tmp_path / "x.json", "sc2", sc2, x), write_term(tmp_path / "y.json", "sc2", sc2, y)]
        assert main(argv) == DOMAIN_ERROR
        assert "slot 1" in capsys.readouterr().err

    def test_slot_out_of_range(self, tmp_path, as_):
        x = write_term(tmp_path / "x.json", "as", as_, perm(2, 1))
        assert main(["compose", x, x, "--slot", "3"]) == DOMAIN_ERROR

    def test_malformed_document(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"instance": ', encoding="utf-8")
        assert main(["compose", str(bad), str(bad)]) == PARSE_ERROR

    def test_missing_file(self, tmp_path):
        assert main(["compose", str(tmp_path / "absent.json"), str(tmp_path / "absent.json")]) == PARSE_ERROR

    def test_bimodules_do_not_compose(self, tmp_path, as_self):
        bvb = BVBimodule(as_self)
        x = write_term(tmp_path / "x.json", "b-as", bvb, bvb.embed(perm(1)))
        assert main(["compose", x, x]) == DOMAIN_ERROR


class TestNormalize:
    def raw_document(self, path, as_self) -> str:
        bvb = BVBimodule(as_self)
        pearls = [node(perm(1), leaf(i), pearl=True) for i in (1, 2, 3)]
        raw = node(perm(1, 2), node(perm(1, 2), pearls[0], pearls[1], level="1/2"), pearls[2], level="1/2")
        element = dump_term(trees.renumber(raw)[0], bvb.space).model_dump(exclude_none=True)
        path.write_text(json.dumps({"instance": "b-as", "kind": "bv-bimodule", "element": element}), encoding="utf-8")
        return str(path)

    def test_orders_print_the_same_normal_form(self, tmp_path, as_self):
        source = self.raw_document(tmp_path / "raw.json", as_self)
        first, second = tmp_path / "one.json", tmp_path / "two.json"
        assert main(["normalize", source, "--out", str(first)]) == 0
        assert main(["normalize", source, "--seed", "7", "--out", str(second)]) == 0
        assert first.read_text() == second.read_text()
        bvb = BVBimodule(as_self)
        term = load_element(parse_document(first.read_text()), bvb)
        assert len(trees.vertices(term)) == 4


class TestEnumerate:
    def test_count_matches_the_library(self, tmp_path):
        out = tmp_path / "trees.json"
        argv = ["enumerate", "--kind", "stree", "--colours", "c,o", "--max-leaves", "2", "--max-vertices", "3"]
        assert main(argv + ["--out", str(out)]) == 0
        listing = json.loads(out.read_text())
        assert listing["count"] == len(enumerate_trees(["c", "o"], "stree", 2, 3))

    def test_negative_bound(self):
        assert main(["enumerate", "--max-leaves", "-1"]) == DOMAIN_ERROR


class TestRender:
    def test_matches_the_renderer(self, tmp_path):
        sc2 = get_instance("sc2")
        x = sc2.sample(ColourProfile((CLOSED, OPEN), OPEN), random.Random(0))
        source = write_term(tmp_path / "x.json", "sc2", sc2, x)
        out = tmp_path / "x.svg"
        assert main(["render", source, "--size", "200", "--out", str(out)]) == 0
        assert out.read_bytes() == render_svg(x, RenderOptions(size=200))
        assert out.read_bytes().startswith(b"<?xml")

    def test_refuses_other_terms(self, tmp_path, as_):
        source = write_term(tmp_path / "x.json", "as", as_, perm(1))
        assert main(["render", source]) == DOMAIN_ERROR
