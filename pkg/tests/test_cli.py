import json
from pathlib import Path

import numpy as np
import pytest

from helpers import write_csv
from mapdiag import BundleConfig, ColourScheme, PenaltyKind, RunConfig
from mapdiag.cli import main, run, serve

PR = PenaltyKind.PRECISION_RECALL


@pytest.fixture
def identity_pair(tmp_path):
    rng = np.random.default_rng(7)
    coords = rng.normal(size=(12, 2)).tolist()
    data = tmp_path / "data.csv"
    emb = tmp_path / "emb.csv"
    write_csv(data, coords)
    write_csv(emb, coords)
    return data, emb


def read_outputs(out_dir):
    return {p.name: p.read_bytes() for p in sorted(Path(out_dir).iterdir())}


class TestRunConfig:
    def test_rejects_same_input_twice(self, tmp_path):
        p = tmp_path / "x.csv"
        with pytest.raises(ValueError, match="distinct"):
            RunConfig(data_input=p, embedding_input=p)

    def test_rejects_bad_cap(self, tmp_path):
        with pytest.raises(ValueError, match="cap"):
            RunConfig(data_input=tmp_path / "a", embedding_input=tmp_path / "b",
                      cap=0.0)

    def test_rejects_unknown_outputs(self, tmp_path):
        with pytest.raises(ValueError, match="unknown outputs"):
            RunConfig(data_input=tmp_path / "a", embedding_input=tmp_path / "b",
                      outputs=frozenset({"json", "pdf"}))


class TestRun:
    def test_identity_summary_line(self, identity_pair, tmp_path, capsys):
        data, emb = identity_pair
        config = RunConfig(data_input=data, embedding_input=emb, kappa=5,
                           out_dir=tmp_path / "out")
        assert run(config) == 0
        out = capsys.readouterr().out
        assert out == "kappa=5 model=tc F=1.000 M=1.000\n"

    def test_compute_writes_json_and_report(self, identity_pair, tmp_path):
        data, emb = identity_pair
        out_dir = tmp_path / "out"
        assert main(["compute", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "5", "--out-dir", str(out_dir)]) == 0
        names = {p.name for p in out_dir.iterdir()}
        assert names == {"retrieval.json", "relevance.json", "report.json"}
        doc = json.loads((out_dir / "retrieval.json").read_text())
        assert doc["kind"] == "retrieval"
        assert doc["kappa"] == 5
        assert len(doc["edges"]) == 12 * 5
        report = json.loads((out_dir / "report.json").read_text())
        assert report["global_F"] == 1.0 and report["global_M"] == 1.0

    def test_render_adds_svgs(self, identity_pair, tmp_path):
        data, emb = identity_pair
        out_dir = tmp_path / "out"
        assert main(["render", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "3", "--out-dir", str(out_dir)]) == 0
        names = {p.name for p in out_dir.iterdir()}
        assert names == {"retrieval.json", "relevance.json", "report.json",
                         "retrieval.svg", "relevance.svg"}
        svg = (out_dir / "retrieval.svg").read_text()
        assert svg.startswith("<?xml")
        assert "<svg" in svg

    def test_rerun_is_byte_identical(self, identity_pair, tmp_path):
        data, emb = identity_pair
        args = ["render", "--data", str(data), "--embedding", str(emb),
                "--kappa", "4", "--model", "pr"]
        assert main(args + ["--out-dir", str(tmp_path / "one")]) == 0
        assert main(args + ["--out-dir", str(tmp_path / "two")]) == 0
        assert read_outputs(tmp_path / "one") == read_outputs(tmp_path / "two")

    def test_model_flag_reaches_report(self, identity_pair, tmp_path, capsys):
        data, emb = identity_pair
        out_dir = tmp_path / "out"
        assert main(["compute", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "5", "--model", "pr",
                     "--out-dir", str(out_dir)]) == 0
        assert capsys.readouterr().out.startswith("kappa=5 model=pr ")
        report = json.loads((out_dir / "report.json").read_text())
        assert report["model"] == "precision_recall"
        assert report["normalizer"] == 5.0

    def test_scheme_override(self, identity_pair, tmp_path):
        data, emb = identity_pair
        base = ["render", "--data", str(data), "--embedding", str(emb),
                "--kappa", "3"]
        assert main(base + ["--out-dir", str(tmp_path / "plain")]) == 0
        assert main(base + ["--scheme-override", "orrd",
                            "--out-dir", str(tmp_path / "forced")]) == 0
        plain = (tmp_path / "plain" / "retrieval.svg").read_text()
        forced = (tmp_path / "forced" / "retrieval.svg").read_text()
        assert "#084081" in plain and "#084081" not in forced
        assert "#7F0000" in forced

    def test_background_none(self, identity_pair, tmp_path):
        data, emb = identity_pair
        out_dir = tmp_path / "out"
        assert main(["render", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "3", "--background", "none",
                     "--out-dir", str(out_dir)]) == 0
        assert "#E6E6E6" not in (out_dir / "relevance.svg").read_text()

    def test_bundle_flag_draws_polylines(self, identity_pair, tmp_path):
        data, emb = identity_pair
        out_dir = tmp_path / "out"
        assert main(["render", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "3", "--bundle", "--bundle-iters", "2",
                     "--bundle-resolution", "64", "--bundle-bins", "5,15",
                     "--out-dir", str(out_dir)]) == 0
        svg = (out_dir / "retrieval.svg").read_text()
        assert "<polyline" in svg
        assert "<line " not in svg

    def test_distance_matrix_input_equivalent(self, tmp_path):
        rng = np.random.default_rng(11)
        coords = np.round(rng.normal(size=(9, 4)), 6)
        emb = rng.normal(size=(9, 2)).tolist()
        dist = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(-1))
        data_path = tmp_path / "coords.csv"
        dist_path = tmp_path / "dist.csv"
        emb_path = tmp_path / "emb.csv"
        write_csv(data_path, coords.tolist())
        dist_path.write_text(
            "\n".join(",".join(repr(v) for v in row) for row in dist.tolist())
            + "\n", encoding="utf-8")
        write_csv(emb_path, emb)
        for name, src in (("from_coords", data_path), ("from_dist", dist_path)):
            assert main(["compute", "--data", str(src),
                         "--embedding", str(emb_path), "--kappa", "4",
                         "--out-dir", str(tmp_path / name)]) == 0
        assert (read_outputs(tmp_path / "from_coords")
                == read_outputs(tmp_path / "from_dist"))

    def test_data_kind_override(self, tmp_path):
        rows = [[0.0, 1.0, 2.0], [9.0, 0.0, 3.0], [4.0, 5.0, 0.0]]
        data = tmp_path / "square.csv"
        emb = tmp_path / "emb.csv"
        write_csv(data, rows)
        write_csv(emb, [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
        base = ["compute", "--data", str(data), "--embedding", str(emb),
                "--kappa", "1", "--out-dir", str(tmp_path / "o")]
        assert main(base) == 0
        assert main(base + ["--data-kind", "coords"]) == 0
        assert main(base + ["--data-kind", "distances"]) == 1


class TestFailures:
    def test_missing_data_file(self, tmp_path, capsys):
        emb = tmp_path / "emb.csv"
        write_csv(emb, [[0.0, 0.0], [1.0, 1.0]])
        code = main(["compute", "--data", str(tmp_path / "nope.csv"),
                     "--embedding", str(emb)])
        assert code == 1
        assert "nope.csv" in capsys.readouterr().err

    def test_malformed_data_file(self, tmp_path, capsys):
        data = tmp_path / "bad.csv"
        emb = tmp_path / "emb.csv"
        data.write_text("1.0,2.0\n3.0,oops\n", encoding="utf-8")
        write_csv(emb, [[0.0, 0.0], [1.0, 1.0]])
        code = main(["compute", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "1"])
        assert code == 1
        err = capsys.readouterr().err
        assert "bad.csv" in err and ":2:2:" in err

    def test_point_count_mismatch(self, tmp_path, capsys):
        data = tmp_path / "d.csv"
        emb = tmp_path / "e.csv"
        write_csv(data, [[0.0], [1.0], [2.0]])
        write_csv(emb, [[0.0, 0.0], [1.0, 1.0]])
        code = main(["compute", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "1"])
        assert code == 2
        err = capsys.readouterr().err
        assert "point counts differ" in err
        assert "d.csv" in err and "e.csv" in err

    def test_kappa_equal_to_n(self, identity_pair, capsys):
        data, emb = identity_pair
        code = main(["compute", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "12"])
        assert code == 2
        assert "kappa must be < N" in capsys.readouterr().err

    def test_kappa_zero(self, identity_pair, capsys):
        data, emb = identity_pair
        code = main(["compute", "--data", str(data), "--embedding", str(emb),
                     "--kappa", "0"])
        assert code == 2
        assert "kappa must be >= 1" in capsys.readouterr().err

    def test_serve_propagates_input_failure(self, tmp_path):
        emb = tmp_path / "emb.csv"
        write_csv(emb, [[0.0, 0.0], [1.0, 1.0]])
        config = RunConfig(data_input=tmp_path / "absent.csv",
                           embedding_input=emb)
        assert serve(config, port=0) == 1

    def test_bad_bundle_thresholds(self, identity_pair, capsys):
        data, emb = identity_pair
        code = main(["render", "--data", str(data), "--embedding", str(emb),
                     "--bundle", "--bundle-bins", "0,10"])
        assert code == 2
        assert "thresholds" in capsys.readouterr().err


class TestRunConfigDirect:
    def test_outputs_subset_respected(self, identity_pair, tmp_path):
        data, emb = identity_pair
        config = RunConfig(data_input=data, embedding_input=emb, kappa=3,
                           out_dir=tmp_path / "out",
                           outputs=frozenset({"report"}))
        assert run(config) == 0
        assert {p.name for p in (tmp_path / "out").iterdir()} == {"report.json"}

    def test_bundle_config_passthrough(self, identity_pair, tmp_path):
        data, emb = identity_pair
        config = RunConfig(
            data_input=data, embedding_input=emb, kappa=3,
            out_dir=tmp_path / "out",
            outputs=frozenset({"svg_retrieval"}),
            bundle=BundleConfig(iterations=1, grid_resolution=64),
            scheme_override=ColourScheme.GNBU, model=PR)
        assert run(config) == 0
        svg = (tmp_path / "out" / "retrieval.svg").read_text()
        assert "<polyline" in svg
