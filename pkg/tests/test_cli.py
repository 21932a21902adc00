import json
import subprocess
import sys

import pytest

from doubletrace import cli
from doubletrace.braid import parse_braid
from doubletrace.catalog import group_from_spec
from doubletrace.double import tau_fast
from doubletrace.invariants import ScreenConfig, rt_value, screening_report
from doubletrace.presentations import count_homomorphisms, preset_presentation


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 and out.strip() else None), err


def test_tau_examples(capsys):
    code, out, _ = run(capsys, "tau", "-g", "G1", "-b", "s1 s1 s1 s1")
    assert code == 0 and out["tau"] == "28672" and out["components"] == 2
    code, out, _ = run(capsys, "tau", "--group", "cyclic:2", "--braid", "", "--strands", "2")
    assert out["tau"] == "16"
    code, out, _ = run(capsys, "tau", "-g", "Q8", "-b", "s1 s1 s1 s1", "--method", "both")
    _, hom, _ = run(capsys, "homcount", "--target", "Q8", "--presentation", "Q8")
    assert int(out["tau"]) == 64 * int(hom["count"])


def test_lens_and_homcount(capsys):
    code, out, _ = run(capsys, "lens", "--group", "quaternion:2", "--n", "4", "--check")
    assert code == 0 and out["tau"] == "64" == out["tau_fast"]
    code, out, _ = run(capsys, "homcount", "--target", "G2", "--presentation", "Q8")
    assert out["count"] == "16"


def test_homcount_json_presentation(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"generators": 1, "relators": ["g0^4"]}))
    code, out, _ = run(capsys, "homcount", "-g", "Q8", "-p", str(path))
    assert code == 0 and out["count"] == "8"


def test_rt(capsys):
    code, out, _ = run(capsys, "rt", "-g", "symmetric:3", "-b", "s2 s1")
    assert code == 0 and out["rt"] == "2/3"
    assert (out["numerator"], out["denominator"]) == ("2", "3")


def test_screen(capsys, tmp_path):
    code, out, _ = run(capsys, "screen", "--group-a", "F1", "--group-b", "F2")
    assert code == 0 and out["verdict"].startswith("distinguished by abelianization")
    battery = tmp_path / "battery.json"
    battery.write_text(json.dumps({"braids": [{"word": "s1 s1 s1 s1", "strands": 2}], "presentations": ["Q8"]}))
    code, out, _ = run(capsys, "screen", "--group-a", "G1", "--group-b", "G2", "--battery", str(battery),
                       "--extra", "s1 s2^-1")
    assert code == 0
    names = [t["name"] for t in out["tests"]]
    assert names == ["order_profile", "tau[s1 s1 s1 s1]", "tau[s1 s2^-1]", "hom[Q8]", "abelianization"]


def test_perm_commands(capsys):
    code, out, _ = run(capsys, "perm", "similar", "(1 2 3 4)", "(1 2)(3 4)")
    assert code == 0 and out["similar"] is False and out["witness_power"] == 2 and out["verified"]
    code, out, _ = run(capsys, "perm", "similar", "(1 2)", "(3 4)", "--size", "4")
    assert out["similar"] and out["verified"]
    code, out, _ = run(capsys, "perm", "cycle-type", "(1 2 3)", "--size", "5")
    assert out["cycle_type"] == {"1": 2, "3": 1}
    code, out, _ = run(capsys, "perm", "smith", "6")
    assert out["det"] == "32" and out["equal"]
    code, out, _ = run(capsys, "perm", "orbits", "6", "4")
    assert (out["orbit_count"], out["orbit_size"], out["hom_dimension"]) == (2, 12, 2)


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog")
    specs = {row["spec"]: row for row in out["groups"]}
    assert specs["F2"]["abelianization"] == [2, 4]
    assert specs["quaternion:2"]["profile"] == {"1": 1, "2": 1, "4": 6}


@pytest.mark.parametrize(
    "argv",
    [
        ["tau", "-g", "cyclic:0", "-b", "s1"],
        ["tau", "-g", "Q8", "-b", "s3", "--strands", "2"],
        ["tau", "-g", "Q8", "-b", "x1"],
        ["homcount", "-g", "Q8", "-p", "nonsense"],
        ["perm", "similar", "(1 2", "(1 2)"],
        ["lens", "-g", "Q8", "--n", "0"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_budget_exit_3(capsys, monkeypatch):
    code, _, err = run(capsys, "tau", "-g", "Q8", "-b", "s3 s2 s1", "--budget", "100")
    assert code == 3 and "budget" in err
    monkeypatch.setenv("DOUBLETRACE_BUDGET", "10")
    code, _, _ = run(capsys, "tau", "-g", "Q8", "-b", "s1")
    assert code == 3


def test_disagreement_exit_4(capsys, monkeypatch):
    monkeypatch.setattr(cli, "tau_brute", lambda G, b, budget=None, workers=None: -1)
    code, _, err = run(capsys, "tau", "-g", "cyclic:2", "-b", "s1", "--method", "both")
    assert code == 4 and "disagree" in err


def test_out_file_and_table(capsys, tmp_path):
    path = tmp_path / "o.json"
    code = cli.main(["tau", "-g", "cyclic:3", "-b", "s1", "--out", str(path), "--format", "table"])
    out, err = capsys.readouterr()
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["tau"] == "3"
    assert "tau" in err


def test_round_trip_determinism(capsys):
    _, out, _ = run(capsys, "tau", "-g", "SD16", "-b", "s1 s2^-1 s1 s1", "--method", "both")
    G = group_from_spec(out["group"])
    assert out["tau"] == str(tau_fast(G, parse_braid(out["braid"], out["strands"])))

    _, out, _ = run(capsys, "rt", "-g", "dihedral:3", "-b", "s1 s1 s1")
    assert out["rt"] == str(rt_value(group_from_spec(out["group"]), parse_braid(out["braid"], out["strands"])))

    _, out, _ = run(capsys, "homcount", "-g", "F1", "-p", "Q8")
    assert out["count"] == str(count_homomorphisms(preset_presentation(out["presentation"]), group_from_spec("F1")))

    _, out, _ = run(capsys, "screen", "--group-a", "G1", "--group-b", "M16")
    cfg = ScreenConfig.from_json(out["config"])
    rep = screening_report(group_from_spec(out["group_a"]), group_from_spec(out["group_b"]), cfg,
                           out["group_a"], out["group_b"])
    assert {"command": "screen", **rep.to_json()} == out


def test_threads_do_not_change_output(capsys):
    outs = []
    for threads in ("1", "2"):
        _, out, _ = run(capsys, "tau", "-g", "G2", "-b", "s4 s3 s2 s1", "--threads", threads)
        out.pop("elapsed")
        outs.append(out)
    assert outs[0] == outs[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "doubletrace.cli", "lens", "-g", "cyclic:4", "--n", "2"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["tau"] == "8"
