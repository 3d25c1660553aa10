"""End-to-end tests of the ``krein-bc`` command line."""

import csv
import json

import numpy as np
import pytest

from kreinbc import boundary, cli, krein, models
from kreinbc.errors import ConfigParseError

FOUR_PI = 4.0 * np.pi


def encode_matrix(m):
    m = np.asarray(m, dtype=complex)
    return [[[v.real, v.imag] for v in row] for row in m]


def write_config(path, model, n, a, b, centers=None):
    cfg = {"model": model, "n": n, "A": encode_matrix(a), "B": encode_matrix(b)}
    if centers is not None:
        cfg["centers"] = centers
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


@pytest.fixture
def h0_config(tmp_path):
    return write_config(tmp_path / "h0.json", "star", 2, np.eye(2), np.zeros((2, 2)))


@pytest.fixture
def robin_config(tmp_path):
    # phi'(0) = -2 phi(0): bound state at z = -4
    return write_config(tmp_path / "robin.json", "star", 1, [[1.0]], [[2.0]])


@pytest.fixture
def point_config(tmp_path):
    alpha = -1.0 / FOUR_PI
    return write_config(
        tmp_path / "point.json", "point3d", 1, [[alpha]], [[1.0]], centers=[[0.0, 0.0, 0.0]]
    )


def test_parse_complex_literal_forms():
    cases = {
        "3": 3.0,
        "-1+0.5i": -1.0 + 0.5j,
        "2i": 2.0j,
        "-i": -1.0j,
        "1-i": 1.0 - 1.0j,
        "1.5e+2i": 150.0j,
        "2.5 - 0.5i": 2.5 - 0.5j,
    }
    for text, expect in cases.items():
        assert cli.parse_complex_literal(text) == expect
    with pytest.raises(ConfigParseError):
        cli.parse_complex_literal("one+i")


def test_validate_pass(h0_config, capsys):
    assert cli.main(["validate", h0_config]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS")
    assert "rank=2" in out


def test_validate_fail_skew(tmp_path, capsys):
    cfg = write_config(tmp_path / "bad.json", "star", 2, np.eye(2), 1j * np.eye(2))
    assert cli.main(["validate", cfg]) == 1
    assert "NotSelfAdjointCondition" in capsys.readouterr().out


def test_validate_truncated_file(tmp_path, capsys):
    path = tmp_path / "trunc.json"
    path.write_text('{"model": "star", "n": 2, "A": [[', encoding="utf-8")
    assert cli.main(["validate", str(path)]) == 2


def test_validate_missing_file():
    assert cli.main(["validate", "/nonexistent/cfg.json"]) == 2


def test_spectrum_robin(robin_config, tmp_path):
    out = tmp_path / "hits.json"
    code = cli.main(
        ["spectrum", robin_config, "--zmin", "-10", "--zmax", "-0.01", "--out", str(out)]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert len(payload["hits"]) == 1
    assert abs(payload["hits"][0]["z"] + 4.0) <= 1e-8


def test_spectrum_point_interaction(point_config, tmp_path):
    out = tmp_path / "hits.json"
    code = cli.main(
        ["spectrum", point_config, "--zmin", "-10", "--zmax", "-0.01", "--out", str(out)]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert len(payload["hits"]) == 1
    assert abs(payload["hits"][0]["z"] + 1.0) <= 1e-8


def test_spectrum_reference_extension_empty(h0_config, tmp_path):
    out = tmp_path / "hits.json"
    code = cli.main(
        ["spectrum", h0_config, "--zmin", "-10", "--zmax", "-0.01", "--out", str(out)]
    )
    assert code == 0
    assert json.loads(out.read_text())["hits"] == []


def test_spectrum_bad_range(robin_config, tmp_path):
    out = tmp_path / "hits.json"
    code = cli.main(
        ["spectrum", robin_config, "--zmin", "-0.01", "--zmax", "-10", "--out", str(out)]
    )
    assert code == 2


def test_spectrum_respects_thread_env(robin_config, tmp_path, monkeypatch):
    out_serial = tmp_path / "serial.json"
    cli.main(["spectrum", robin_config, "--zmin", "-10", "--zmax", "-0.01", "--out", str(out_serial)])
    monkeypatch.setenv("KREIN_BC_THREADS", "2")
    out_threaded = tmp_path / "threaded.json"
    cli.main(["spectrum", robin_config, "--zmin", "-10", "--zmax", "-0.01", "--out", str(out_threaded)])
    assert out_serial.read_text() == out_threaded.read_text()
    monkeypatch.setenv("KREIN_BC_THREADS", "not-a-number")
    assert cli.main(["spectrum", robin_config, "--zmin", "-10", "--zmax", "-0.01"]) == 2


def test_green_reference_extension_matches_free_kernel(h0_config, tmp_path):
    points = tmp_path / "pts.csv"
    points.write_text("0:0.5,0:1.5\n1:2.0,1:0.25\n0:1.0,1:1.0\n", encoding="utf-8")
    out = tmp_path / "green.csv"
    code = cli.main(["green", h0_config, "--z", "-1", "--points", str(points), "--out", str(out)])
    assert code == 0
    model = models.StarGraphModel(2)
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["x", "y", "re_g", "im_g"]
    expects = [
        model.free_green((0, 0.5), (0, 1.5), -1.0),
        model.free_green((1, 2.0), (1, 0.25), -1.0),
        model.free_green((0, 1.0), (1, 1.0), -1.0),
    ]
    for row, expect in zip(rows[1:], expects):
        assert float(row[2]) == pytest.approx(expect.real, abs=1e-14)
        assert float(row[3]) == pytest.approx(expect.imag, abs=1e-14)


def test_green_robin_matches_image_charge_formula(tmp_path):
    # pair (A, B) = (1, theta) with theta = -2, i.e. phi'(0) = 2 phi(0)
    theta = -2.0
    cfg = write_config(tmp_path / "robin_green.json", "star", 1, [[1.0]], [[theta]])
    points = tmp_path / "pts.csv"
    points.write_text("0:1,0:2\n", encoding="utf-8")
    out = tmp_path / "green.csv"
    assert cli.main(["green", cfg, "--z", "-1", "--points", str(points), "--out", str(out)]) == 0
    kappa = 1.0
    x, y = 1.0, 2.0
    expect = (
        np.exp(-kappa * abs(x - y))
        + (kappa + theta) / (kappa - theta) * np.exp(-kappa * (x + y))
    ) / (2.0 * kappa)
    row = list(csv.reader(out.read_text().splitlines()))[1]
    assert float(row[2]) == pytest.approx(expect, abs=1e-12)
    assert float(row[3]) == pytest.approx(0.0, abs=1e-14)


def test_green_coincident_rows_get_error_marker(point_config, tmp_path):
    points = tmp_path / "pts.csv"
    points.write_text(
        "0.5,0,0,0.5,0,0\n"  # coincident pair
        "0.5,0,0,1.5,0,0\n"  # fine
        '"0,0,0","1,0,0"\n',  # quoted triples hit the interaction center
        encoding="utf-8",
    )
    out = tmp_path / "green.csv"
    assert cli.main(["green", point_config, "--z", "-2", "--points", str(points), "--out", str(out)]) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[1][2] == "ERROR:CoincidentPoints"
    assert float(rows[2][2]) != 0.0  # later rows still computed
    assert rows[3][2] == "ERROR:PointAtCenter"


def test_green_bad_point_row(point_config, tmp_path):
    points = tmp_path / "pts.csv"
    points.write_text("0.5,0,0\n", encoding="utf-8")
    assert cli.main(["green", point_config, "--z", "-2", "--points", str(points)]) == 2


def test_check_valid_star_config(tmp_path, capsys):
    u = np.array([[0.6 + 0.8j]])
    pair = boundary.from_unitary(u)
    cfg = write_config(tmp_path / "star.json", "star", 1, pair.A, pair.B)
    code = cli.main(["check", cfg, "--samples", "20", "--seed", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "FAIL" not in out
    for name in ("form-equivalence", "abstract-oracle", "q-identity-quad", "hermiticity", "canonical-range"):
        assert name in out


def test_check_is_deterministic(tmp_path, capsys):
    cfg = write_config(tmp_path / "h0.json", "star", 1, [[1.0]], [[0.0]])
    cli.main(["check", cfg, "--samples", "10", "--seed", "3"])
    first = capsys.readouterr().out
    cli.main(["check", cfg, "--samples", "10", "--seed", "3"])
    second = capsys.readouterr().out
    assert first == second


def test_check_corrupted_pair_fails(tmp_path, capsys):
    cfg = write_config(tmp_path / "bad.json", "star", 2, np.eye(2), 1j * np.eye(2))
    # without the bypass the validation itself rejects the config
    assert cli.main(["check", cfg, "--samples", "5"]) == 1
    code = cli.main(["check", cfg, "--samples", "5", "--skip-validation"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out


def test_relation_to_unitary_reference_extension(tmp_path, capsys):
    cfg = write_config(tmp_path / "h0.json", "star", 1, [[1.0]], [[0.0]])
    assert cli.main(["relation", cfg, "--op", "to-unitary"]) == 0
    assert capsys.readouterr().out.strip() == "1+0i"


def test_relation_is_selfadjoint(tmp_path, capsys):
    good = write_config(tmp_path / "good.json", "star", 2, np.eye(2), np.eye(2))
    assert cli.main(["relation", good, "--op", "is-selfadjoint"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    bad = write_config(tmp_path / "bad.json", "star", 2, np.eye(2), 1j * np.eye(2))
    assert cli.main(["relation", bad, "--op", "is-selfadjoint"]) == 0
    assert capsys.readouterr().out.strip() == "false"


def test_relation_canonical_and_adjoint_shapes(tmp_path, capsys):
    cfg = write_config(tmp_path / "pair.json", "star", 2, np.eye(2), np.eye(2))
    assert cli.main(["relation", cfg, "--op", "canonical"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 4  # 2n rows
    assert cli.main(["relation", cfg, "--op", "adjoint"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 4


def test_spectrum_roundtrip_verifies(robin_config, tmp_path):
    out = tmp_path / "hits.json"
    cli.main(["spectrum", robin_config, "--zmin", "-10", "--zmax", "-0.01", "--out", str(out)])
    payload = json.loads(out.read_text())
    cfg = cli.load_config(robin_config)
    pair = cli.build_pair(cfg)
    model = cli.build_model(cfg)
    for record in payload["hits"]:
        vec = np.array([complex(re, im) for re, im in record["null_vector"]])
        hit = krein.EigenvalueHit(
            z=record["z"],
            null_vector=vec,
            sigma_min=record["sigma_min"],
            residual=record["residual"],
            multiplicity=record["multiplicity"],
        )
        assert krein.verify_eigenpair(pair, model, hit)["passed"]


def test_config_rejects_center_mismatch(tmp_path):
    cfg = {
        "model": "point3d",
        "n": 2,
        "centers": [[0, 0, 0]],
        "A": encode_matrix(np.eye(2)),
        "B": encode_matrix(np.eye(2)),
    }
    path = tmp_path / "bad_centers.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    assert cli.main(["validate", str(path)]) == 2


def test_config_rejects_centers_on_star(tmp_path):
    cfg = {
        "model": "star",
        "n": 1,
        "centers": [[0, 0, 0]],
        "A": encode_matrix([[1.0]]),
        "B": encode_matrix([[0.0]]),
    }
    path = tmp_path / "bad_star.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    assert cli.main(["validate", str(path)]) == 2
