"""End-to-end tests for the command-line interface."""

import json

import pytest

from citenet.cli import main

EDGES = "citing,cited,count\nA,S,50\nB,S,30\nC,S,20\nA,B,5\nB,A,5\nS,A,2\nA,A,9\n"


@pytest.fixture()
def matrix_path(tmp_path):
    edges = tmp_path / "edges.csv"
    edges.write_text(EDGES, encoding="utf-8")
    out = tmp_path / "matrix.csv"
    code = main(["ingest", str(edges), "--year", "2005", "--out", str(out)])
    assert code == 0
    return out


class TestIngestAndMerge:
    def test_ingest_writes_matrix_and_sidecar(self, matrix_path, capsys):
        assert matrix_path.exists()
        assert matrix_path.with_name(matrix_path.name + ".meta.json").exists()

    def test_ingest_reports_error_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("A,B,-1\n", encoding="utf-8")
        code = main(["ingest", str(bad), "--year", "2005", "--out", str(tmp_path / "m.csv")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_merge(self, tmp_path, matrix_path, capsys):
        other = tmp_path / "other_edges.csv"
        other.write_text("X,S,10\nA,S,5\n", encoding="utf-8")
        other_matrix = tmp_path / "other.csv"
        assert main(["ingest", str(other), "--year", "2005", "--source", "ssci",
                     "--out", str(other_matrix)]) == 0
        merged = tmp_path / "merged.csv"
        assert main(["merge", str(matrix_path), str(other_matrix),
                     "--out", str(merged)]) == 0
        meta = json.loads(
            merged.with_name(merged.name + ".meta.json").read_text(encoding="utf-8")
        )
        sources = {j["id"]: j["source_index"] for j in meta["journals"]}
        assert sources["A"] == "BOTH"
        assert sources["X"] == "SSCI"

    def test_merge_year_mismatch_fails(self, tmp_path, matrix_path, capsys):
        other_edges = tmp_path / "e2.csv"
        other_edges.write_text("X,S,10\n", encoding="utf-8")
        other = tmp_path / "m2004.csv"
        assert main(["ingest", str(other_edges), "--year", "2004",
                     "--out", str(other)]) == 0
        code = main(["merge", str(matrix_path), str(other), "--out",
                     str(tmp_path / "nope.csv")])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestEnvCommand:
    def test_table_output(self, matrix_path, capsys):
        assert main(["env", str(matrix_path), "--seed", "S"]) == 0
        out = capsys.readouterr().out
        assert "journal" in out
        assert "A" in out and "B" in out and "C" in out

    def test_json_output(self, matrix_path, capsys):
        assert main(["env", str(matrix_path), "--seed", "S", "--format", "json"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert document["seed"] == "S"
        assert [m["journal"] for m in document["members"]] == ["S", "A", "B", "C"]

    def test_unknown_seed_fails_with_diagnostic(self, matrix_path, capsys):
        assert main(["env", str(matrix_path), "--seed", "nope"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_seed_flag(self, matrix_path, capsys):
        assert main(["env", str(matrix_path)]) == 1
        assert "--seed" in capsys.readouterr().err


class TestSimCommand:
    def test_edge_list_csv(self, matrix_path, capsys):
        assert main(["sim", str(matrix_path), "--seed", "S",
                     "--cosine-threshold", "0.0"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "source,target,weight"
        assert all(len(line.split(",")) == 3 for line in lines[1:])


class TestCentralityAndReport:
    def test_centrality_table(self, matrix_path, capsys):
        assert main(["centrality", str(matrix_path), "--seed", "S"]) == 0
        out = capsys.readouterr().out
        assert "# local basis:" in out
        assert "betweenness_%" in out

    def test_centrality_json(self, matrix_path, capsys):
        assert main(["centrality", str(matrix_path), "--seed", "S",
                     "--format", "json"]) == 0
        document = json.loads(capsys.readouterr().out)
        journals = {row["journal"] for row in document["rows"]}
        assert journals == {"S", "A", "B", "C"}

    def test_raw_local_basis(self, matrix_path, capsys):
        assert main(["centrality", str(matrix_path), "--seed", "S",
                     "--local-basis", "raw", "--format", "json"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert "raw citation links" in document["local_basis"]
        by_journal = {row["journal"]: row for row in document["rows"]}
        # raw links among {S,A,B,C}: A<->B plus everyone citing S
        assert by_journal["A"]["degree_local"] == 2

    def test_report_with_impact_factors(self, tmp_path, matrix_path, capsys):
        if_csv = tmp_path / "if.csv"
        if_csv.write_text("id,impact_factor\nS,0.53\nA,1.44\n", encoding="utf-8")
        out_path = tmp_path / "report.txt"
        assert main(["report", str(matrix_path), "--seed", "S",
                     "--if-csv", str(if_csv), "--out", str(out_path)]) == 0
        text = out_path.read_text(encoding="utf-8")
        assert "impact_factor" in text
        assert "0.53" in text


class TestMetricsCommand:
    def test_if_inputs(self, capsys):
        assert main(["metrics", "--if-inputs", "30,30,50,50,5,5"]) == 0
        out = capsys.readouterr().out
        assert "impact_factor = 0.6" in out
        assert "quasi_impact_factor = 0.5" in out

    def test_h_counts(self, capsys):
        assert main(["metrics", "--h-counts", "10,8,5,4,3"]) == 0
        assert "h_index = 4" in capsys.readouterr().out

    def test_self_citation_rate(self, matrix_path, capsys):
        assert main(["metrics", "--matrix", str(matrix_path), "--journal", "A",
                     "--format", "json"]) == 0
        document = json.loads(capsys.readouterr().out)
        # A is cited by B (5) and S (2) and itself (9): 9/16
        assert document["self_citation_rate"] == pytest.approx(9 / 16)

    def test_nothing_to_compute(self, capsys):
        assert main(["metrics"]) == 1
        assert "error:" in capsys.readouterr().err


class TestExportCommand:
    def test_pajek_default(self, matrix_path, capsys):
        assert main(["export", str(matrix_path), "--seed", "S"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("*Vertices ")
        assert "*Edges" in out

    def test_dot_and_json(self, tmp_path, matrix_path):
        dot_path = tmp_path / "g.dot"
        json_path = tmp_path / "g.json"
        assert main(["export", str(matrix_path), "--seed", "S", "--format", "dot",
                     "--out", str(dot_path)]) == 0
        assert dot_path.read_text(encoding="utf-8").startswith("graph similarity {")
        assert main(["export", str(matrix_path), "--seed", "S", "--format", "json",
                     "--out", str(json_path)]) == 0
        document = json.loads(json_path.read_text(encoding="utf-8"))
        assert document["report"] is not None


class TestConfigAndDataDir:
    def test_config_presets_flags(self, tmp_path, matrix_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"seed": "S", "min_contrib": 0.25}), encoding="utf-8")
        assert main(["env", str(matrix_path), "--config", str(config),
                     "--format", "json"]) == 0
        document = json.loads(capsys.readouterr().out)
        # only A (50%) and B (30%) clear the preset 25% threshold
        assert [m["journal"] for m in document["members"]] == ["S", "A", "B"]

    def test_explicit_flag_overrides_config(self, tmp_path, matrix_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"seed": "S", "min_contrib": 0.25}), encoding="utf-8")
        assert main(["env", str(matrix_path), "--config", str(config),
                     "--min-contrib", "0.01", "--format", "json"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert len(document["members"]) == 4

    def test_unknown_config_key_rejected(self, tmp_path, matrix_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"sede": "S"}), encoding="utf-8")
        assert main(["env", str(matrix_path), "--config", str(config)]) == 1
        assert "config" in capsys.readouterr().err

    def test_data_dir_resolves_bare_paths(self, tmp_path, matrix_path, monkeypatch, capsys):
        elsewhere = tmp_path / "elsewhere"
        elsewhere.mkdir()
        monkeypatch.chdir(elsewhere)  # matrix is not reachable from cwd
        assert main(["env", matrix_path.name, "--seed", "S"]) == 1
        capsys.readouterr()
        monkeypatch.setenv("CITENET_DATA_DIR", str(matrix_path.parent))
        assert main(["env", matrix_path.name, "--seed", "S", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["seed"] == "S"
