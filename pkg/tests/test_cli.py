import json
from pathlib import Path

import pytest

from pseudofree.cli import main, run

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def report(argv):
    code, rep = run(argv + ["--format", "json"])
    out = rep.to_json()
    out.pop("timing_ms")
    return code, out


def values(out):
    return {v["name"]: v for v in out["verdicts"]}


def test_complex_non_flag_circle():
    code, out = report(["complex", str(DATA / "circle3.cplx"), "--flag", "--homology", "--pi1"])
    v = values(out)
    assert code == 0
    assert v["flag"]["value"] is False
    assert v["homology"]["value"] == ["Z", "Z"]
    assert v["abelianization_matches_H1"]["status"] == "pass"


def test_complex_subdivision_is_flag():
    code, out = report(["complex", str(DATA / "circle3.cplx"), "--subdivide", "--flag"])
    assert code == 0
    v = values(out)
    assert v["subdivision_is_flag"]["status"] == "pass"
    assert v["subdivision_f_vector"]["value"] == [6, 6]


def test_malformed_input_reports_line(capsys):
    assert main(["complex", str(DATA / "bad.cplx")]) == 2
    assert "bad.cplx:2" in capsys.readouterr().err


def test_missing_file_and_bad_usage(capsys):
    assert main(["complex", str(DATA / "nope.cplx")]) == 2
    assert main(["complex"]) == 2
    assert main(["heisenberg", "--samples", "0"]) == 2


def test_davis_square():
    code, out = report(["davis", str(DATA / "square.cplx"), "--links", "--homology", "--fixed", "-1 1 -1 1"])
    v = values(out)
    assert code == 0
    assert v["cell_count"]["value"] == 64
    assert v["homology"]["value"] == ["Z", "Z^2", "Z"]
    assert v["every_vertex_link_is_K"]["status"] == "pass"


def test_davis_cap_exit_code(monkeypatch):
    monkeypatch.setenv("DF_MAX_S", "2")
    assert main(["davis", str(DATA / "square.cplx")]) == 2


def test_gamma_pseudo_free():
    code, out = report(["gamma", str(DATA / "circle3.cplx"), "--pseudofree", "--comparison"])
    assert code == 0
    assert values(out)["pseudo_free"]["status"] == "pass"


def test_census_racg():
    code, out = report(["census", "--racg", str(DATA / "dinf.sys"), "--radius", "4"])
    v = values(out)
    assert code == 0
    assert v["involution_classes"]["value"] == 2
    assert v["mid_count"]["value"] == 1


def test_structset_mentions_the_summand(capsys):
    assert main(["structset", "--n", "6", "--mid", "1"]) == 0
    assert "(Z/2)^inf + (Z/4)^inf" in capsys.readouterr().out
    code, out = report(["structset", "--n", "9", "--mid", "7"])
    assert values(out)["singleton"]["value"] is True


def test_structset_reads_census_report(tmp_path):
    path = tmp_path / "census.json"
    assert main(["census", "--crystal", "1", "--format", "json", "-o", str(path)]) == 0
    code, out = report(["structset", "--n", "6", "--mid", str(path)])
    assert code == 0
    assert values(out)["mid_count"]["value"] == 1


def test_example32_default():
    code, out = report(["example32"])
    assert code == 0
    assert all(v["status"] == "pass" for v in out["verdicts"])


def test_heisenberg_deterministic():
    a = report(["heisenberg", "--samples", "300", "--seed", "4"])
    b = report(["heisenberg", "--samples", "300", "--seed", "4"])
    assert a == b and a[0] == 0


def test_human_output_and_file(tmp_path, capsys):
    assert main(["structset", "--n", "7", "--mid", "2"]) == 0
    assert "structset" in capsys.readouterr().out
    path = tmp_path / "out.json"
    assert main(["structset", "--n", "7", "--mid", "2", "--format", "json", "--output", str(path)]) == 0
    assert json.loads(path.read_text())["command"] == "structset"


GOLDEN_CASES = {
    "census_crystal1": ["census", "--crystal", "1"],
    "structset_6_1": ["structset", "--n", "6", "--mid", "1"],
    "gamma_circle3": ["gamma", "circle3.cplx", "--pseudofree"],
    "example32": ["example32"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_reports(name, monkeypatch):
    monkeypatch.chdir(DATA)
    _, out = report(GOLDEN_CASES[name])
    expected = json.loads((GOLDEN / f"{name}.json").read_text())
    assert out == expected
