import json
import math
import xml.etree.ElementTree as ET

import pytest

from conesep.cli import main


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def _sector(center_deg, half_deg):
    lo = math.radians(center_deg - half_deg)
    hi = math.radians(center_deg + half_deg)
    return [[math.cos(lo), math.sin(lo)], [math.cos(hi), math.sin(hi)]]


@pytest.fixture
def rays(tmp_path):
    return _write(tmp_path, "rays.json", {
        "dim": 2,
        "cones": {
            "C": {"pieces": [{"generators": [[0, 1]]}]},
            "K": {"pieces": [{"generators": [[1, 0]]}]},
        },
    })


@pytest.fixture
def sector_vs_line_pair(tmp_path):
    return _write(tmp_path, "sector_vs_line_pair.json", {
        "dim": 2,
        "cones": {
            "C": {"pieces": [{"generators": _sector(90, 10)}]},
            "K": {"kind": "union",
                  "pieces": [{"generators": [[1, 0]]},
                             {"generators": [[-1, 0]]}]},
        },
    })


@pytest.fixture
def identical(tmp_path):
    orthant = {"pieces": [{"generators": [[1, 0], [0, 1]]}]}
    return _write(tmp_path, "identical.json", {
        "dim": 2, "cones": {"C": orthant, "K": dict(orthant)},
    })


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_separate_rays(capsys, rays):
    code, doc = _run(capsys, ["separate", rays, "--pair", "C,K"])
    assert code == 0
    assert doc["verdict"] == "separated"
    assert doc["mode"] == "nonsym"
    cert = doc["certificate"]
    assert cert["orientation"] == "CfromK"
    assert cert["alpha_interval"][0] == pytest.approx(0.0, abs=1e-9)
    assert cert["alpha_interval"][1] == pytest.approx(1.0, abs=1e-9)
    assert cert["x_star"] == pytest.approx([0.0, 1.0], abs=1e-9)
    assert doc["verification"]["ok"] is True
    assert doc["verification"]["enclosed_violations"] == 0
    assert doc["verification"]["excluded_violations"] == 0


def test_separate_identical_sym(capsys, identical):
    code, doc = _run(capsys, ["separate", identical, "--mode", "sym",
                              "--pair", "C,K"])
    assert code == 1
    assert doc["verdict"] == "not_separated"
    assert doc["certificate"] is None


def test_separate_both_orders(capsys, sector_vs_line_pair):
    code, doc = _run(capsys, ["separate", sector_vs_line_pair, "--pair", "C,K"])
    assert code == 0
    assert doc["certificate"]["orientation"] == "CfromK"

    code, doc = _run(capsys, ["separate", sector_vs_line_pair, "--pair", "K,C"])
    assert code == 1
    assert doc["verdict"] == "not_separated"


def test_separate_bidir(capsys, tmp_path):
    path = _write(tmp_path, "bidir.json", {
        "dim": 2,
        "cones": {
            "C": {"pieces": [{"generators": [[1, 0], [1, 1]]}]},
            "K": {"pieces": [{"generators": [[-1, 1]]}]},
        },
    })
    code, doc = _run(capsys, ["separate", path, "--mode", "bidir",
                              "--pair", "C,K"])
    assert code == 0
    assert doc["verdict"] == "separated"
    assert doc["cfromk"]["certificate"] is not None
    assert doc["kfromc"]["certificate"] is not None
    assert doc["linear"] is not None


def test_thin_gap_is_inconclusive(capsys, tmp_path):
    path = _write(tmp_path, "thin.json", {
        "dim": 2,
        "cones": {
            "C": {"pieces": [{"generators": [[1, 5e-9]]}]},
            "K": {"pieces": [{"generators": [[1, 0]]}]},
        },
    })
    code, doc = _run(capsys, ["separate", path, "--pair", "C,K"])
    assert code == 2
    assert doc["verdict"] == "inconclusive"
    assert "dead-band" in doc["error"]


def test_non_euclidean_rejected(capsys, tmp_path):
    path = _write(tmp_path, "l1.json", {
        "dim": 2, "norm": "l1",
        "cones": {
            "C": {"pieces": [{"generators": [[0, 1]]}]},
            "K": {"pieces": [{"generators": [[1, 0]]}]},
        },
    })
    code, doc = _run(capsys, ["separate", path, "--pair", "C,K"])
    assert code == 3
    assert doc["error"] == "the distance engine supports only the euclidean norm"


def test_missing_file(capsys, tmp_path):
    code, doc = _run(capsys, ["separate", str(tmp_path / "nope.json"),
                              "--pair", "C,K"])
    assert code == 3
    assert doc["verdict"] == "error"
    assert "nope.json" in doc["error"]


def test_unknown_cone_name(capsys, rays):
    code, doc = _run(capsys, ["separate", rays, "--pair", "C,Z"])
    assert code == 3
    assert "no cone named 'Z'" in doc["error"]


def test_bad_pair_usage_exits_3(rays):
    with pytest.raises(SystemExit) as exc:
        main(["separate", rays, "--pair", "only-one-name"])
    assert exc.value.code == 3


def test_unknown_subcommand_exits_3():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3


def test_help_exits_0():
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0


def test_batch_ndjson_and_exit_max(capsys, rays, identical):
    code = main(["separate", rays, identical, "--mode", "sym",
                 "--pair", "C,K"])
    out = capsys.readouterr().out
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert code == 1
    assert len(lines) == 2
    by_path = {doc["instance"]: doc for doc in lines}
    assert by_path[rays]["verdict"] == "separated"
    assert by_path[identical]["verdict"] == "not_separated"


def test_batch_honors_thread_env(capsys, monkeypatch, rays, identical):
    monkeypatch.setenv("CONESEP_THREADS", "1")
    code = main(["separate", rays, identical, rays, "--mode", "sym",
                 "--pair", "C,K"])
    out = capsys.readouterr().out
    assert code == 1
    assert len(out.strip().splitlines()) == 3


def test_base_command(capsys, tmp_path):
    path = _write(tmp_path, "base.json", {
        "dim": 2,
        "cones": {
            "C": {"pieces": [{"generators": [[1, 0], [0, 1]]}]},
            "H": {"pieces": [{"generators": [[1, 0], [-1, 0], [0, 1]]}]},
        },
    })
    code, doc = _run(capsys, ["base", path, "--cone", "C"])
    assert code == 0
    assert doc["verdict"] == "well_based"
    assert doc["well_based"]["kind"] == "WellBased"
    assert doc["well_based"]["base_vertices"] is not None
    assert doc["convex_base"]["kind"] == "ConvexBase"

    code, doc = _run(capsys, ["base", path, "--cone", "H"])
    assert code == 1
    assert doc["verdict"] == "not_well_based"
    assert doc["well_based"]["witness_points"] is not None


def test_interpolate_command(capsys, tmp_path):
    path = _write(tmp_path, "nest.json", {
        "dim": 2,
        "cones": {
            "W": {"pieces": [{"generators": [[-1, 1], [1, 1]]}]},
            "H": {"pieces": [{"generators": [[1, 0], [-1, 0], [0, 1]]}]},
        },
    })
    code, doc = _run(capsys, ["interpolate", path, "--inner", "W",
                              "--outer", "H"])
    assert code == 0
    assert doc["verdict"] == "interpolated"
    assert doc["x_star"] == pytest.approx([0.0, 1.0], abs=1e-9)
    assert doc["verification"]["ok"] is True

    # boundary contact: a cone cannot be strictly nested inside itself
    code, doc = _run(capsys, ["interpolate", path, "--inner", "H",
                              "--outer", "H"])
    assert code == 1
    assert doc["verdict"] == "not_interpolated"


def test_check_command(capsys, sector_vs_line_pair, identical):
    code, doc = _run(capsys, ["check", sector_vs_line_pair, "--report",
                              "bd-equivalence", "--pair", "C,K"])
    assert code == 0
    assert doc["verdict"] == "separated"
    assert all(doc["conditions"])
    assert doc["consistent"] is True

    code, doc = _run(capsys, ["check", identical, "--report",
                              "bd-equivalence", "--pair", "C,K"])
    assert code == 1
    assert not any(doc["conditions"])
    assert doc["consistent"] is True


def test_oracle_command(capsys, rays, identical):
    code, doc = _run(capsys, ["oracle", rays, "--pair", "C,K",
                              "--resolution", "0.5"])
    assert code == 0
    assert doc["verdict"] == "separated"
    assert doc["direction"] is not None
    assert doc["margin"] > 0

    code, doc = _run(capsys, ["oracle", identical, "--pair", "C,K"])
    assert code == 1
    assert doc["verdict"] == "not_separated"


def test_render_plain_and_with_certificate(capsys, sector_vs_line_pair, tmp_path):
    out = tmp_path / "out.svg"
    code, doc = _run(capsys, ["render", sector_vs_line_pair, "--out", str(out)])
    assert code == 0
    assert doc["verdict"] == "rendered"
    root = ET.parse(out).getroot()
    assert root.tag.endswith("svg")

    # feed a separate run's emitted document straight back as the overlay
    code, sep_doc = _run(capsys, ["separate", sector_vs_line_pair, "--pair", "C,K"])
    assert code == 0
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(json.dumps(sep_doc))
    out2 = tmp_path / "out_cert.svg"
    code, doc = _run(capsys, ["render", sector_vs_line_pair, "--out", str(out2),
                              "--certificate", str(cert_path)])
    assert code == 0
    plain = out.read_text()
    overlaid = out2.read_text()
    ET.fromstring(overlaid)
    assert len(overlaid) > len(plain)


def test_render_is_deterministic(capsys, sector_vs_line_pair, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    _run(capsys, ["render", sector_vs_line_pair, "--out", str(a)])
    _run(capsys, ["render", sector_vs_line_pair, "--out", str(b)])
    assert a.read_text() == b.read_text()
