"""Command-line interface: formats, exit codes, determinism."""

import csv
import io
import json

import pytest

from treehunt.cli import CSV_COLUMNS, main
from treehunt.generators import gen_backoff, gen_caterpillar, gen_path
from treehunt.tree import tree_from_json, tree_to_json


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path8.json"
    p.write_text(tree_to_json(gen_path(8)) + "\n")
    return str(p)


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestGenerate:
    def test_emits_loadable_tree(self, capsys):
        assert main(["generate", "--family", "path", "--l", "5"]) == 0
        tree = tree_from_json(capsys.readouterr().out)
        assert tree.depth == 5

    def test_seed_controls_ports(self, capsys):
        main(["--seed", "1", "generate", "--family", "caterpillar", "--l", "4"])
        a = capsys.readouterr().out
        main(["--seed", "1", "generate", "--family", "caterpillar", "--l", "4"])
        b = capsys.readouterr().out
        main(["--seed", "2", "generate", "--family", "caterpillar", "--l", "4"])
        c = capsys.readouterr().out
        assert a == b != c

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("HUNT_SEED", "7")
        main(["generate", "--family", "caterpillar", "--l", "4"])
        env_out = capsys.readouterr().out
        main(["--seed", "7", "generate", "--family", "caterpillar", "--l", "4"])
        assert capsys.readouterr().out == env_out

    def test_missing_parameter_is_usage_error(self, capsys):
        assert main(["generate", "--family", "path"]) == 2
        assert "error" in capsys.readouterr().err

    def test_unknown_family_is_usage_error(self, capsys):
        assert main(["generate", "--family", "mystery", "--l", "3"]) == 2

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        assert main(["--out", str(out), "generate", "--family", "path", "--l", "3"]) == 0
        assert tree_from_json(out.read_text()).depth == 3


class TestRun:
    def test_cost_json(self, path_file, capsys):
        rc = main(["run", "--tree", path_file, "--strategy", "algo1",
                   "--knowledge", "blind_nodist", "--d", "5"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out.splitlines()[0])
        assert payload["cost"] == 19

    def test_trace_lines(self, path_file, capsys):
        main(["run", "--tree", path_file, "--strategy", "dfs:3", "--d", "3", "--trace"])
        lines = capsys.readouterr().out.splitlines()
        assert json.loads(lines[0])["cost"] == 3
        moves = [json.loads(l) for l in lines[1:]]
        assert [m["t"] for m in moves] == list(range(1, len(moves) + 1))

    def test_missing_file(self, capsys):
        assert main(["run", "--tree", "/no/such.json", "--strategy", "algo1", "--d", "1"]) == 2


class TestOverhead:
    def test_csv_row(self, path_file, capsys):
        rc = main(["overhead", "--tree", path_file, "--strategy", "algo1",
                   "--knowledge", "blind_nodist", "--m", "5"])
        assert rc == 0
        rows = _csv_rows(capsys.readouterr().out)
        assert rows[0]["value_num"] == "19" and rows[0]["value_den"] == "5"
        assert set(rows[0]) == set(CSV_COLUMNS)

    def test_json_embeds_config(self, path_file, capsys):
        main(["--format", "json", "overhead", "--tree", path_file, "--strategy",
              "algo1", "--knowledge", "blind_nodist", "--m", "5"])
        payload = json.loads(capsys.readouterr().out)
        assert payload["config"]["m"] == 5
        assert "seed" in payload["config"]
        assert payload["rows"][0]["value_num"] == 19

    def test_byte_identical_reruns(self, path_file, capsys):
        args = ["--seed", "5", "--format", "json", "overhead", "--tree", path_file,
                "--strategy", "algo1", "--knowledge", "blind_nodist", "--m", "4"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == first


class TestBounds:
    def test_both_bounds(self, path_file, capsys):
        rc = main(["bounds", "--tree", path_file, "--m", "5", "--d", "3"])
        assert rc == 0
        rows = _csv_rows(capsys.readouterr().out)
        by_name = {r["strategy"]: r for r in rows}
        assert by_name["lower_bound_no_distance"]["value_num"] == "1"
        assert by_name["lower_bound_known_distance"]["value_num"] == "3"


class TestWitness:
    def test_star(self, capsys):
        rc = main(["witness", "star", "--n", "5"])
        assert rc == 0
        rows = _csv_rows(capsys.readouterr().out)
        ratio = [r for r in rows if r["strategy"] == "ratio"][0]
        assert ratio["value_num"] == "5" and ratio["value_den"] == "1"

    def test_caterpillar(self, capsys):
        rc = main(["witness", "caterpillar", "--l", "6"])
        assert rc == 0

    def test_doubling(self, capsys):
        rc = main(["witness", "doubling", "--k", "2"])
        assert rc == 0
        rows = _csv_rows(capsys.readouterr().out)
        assert {r["strategy"] for r in rows} == {"doubling", "incremental", "floor"}


class TestVerify:
    def test_single_tree(self, tmp_path, capsys):
        p = tmp_path / "backoff.json"
        p.write_text(tree_to_json(gen_backoff(9)))
        rc = main(["verify", "schedule", "--tree", str(p)])
        assert rc == 0
        rows = _csv_rows(capsys.readouterr().out)
        assert len(rows) == 3  # one row per level
        assert all(r["exactness"] == "pass" for r in rows)
        assert all(int(r["value_num"]) >= 0 for r in rows)  # slack vs the 16x budget


class TestOracleCommand:
    def test_cover(self, path_file, capsys):
        rc = main(["oracle", "cover", "--tree", path_file, "--level", "4"])
        assert rc == 0
        assert json.loads(capsys.readouterr().out)["cost"] == 4

    def test_iso(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        a.write_text(tree_to_json(gen_caterpillar(3, seed=1)))
        b.write_text(tree_to_json(gen_caterpillar(3, seed=2)))
        rc = main(["oracle", "iso", "--a", str(a), "--b", str(b)])
        assert rc == 0
        assert json.loads(capsys.readouterr().out)["isomorphic"] is True
