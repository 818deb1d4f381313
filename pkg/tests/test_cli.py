import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ellfib import cli, jobs
from ellfib.fibre import concurring_lines, contract, kodaira_config, to_dot
from ellfib.tate import KodairaType
from ellfib.weierstrass import InvariantViolation

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = sorted((ROOT / "configs").glob("*.yaml"))


def run(tmp_path, text, *flags):
    cfg = tmp_path / "job.yaml"
    cfg.write_text(text)
    out = io.StringIO()
    code = cli.analyze(str(cfg), stdout=out, **dict(flags))
    return code, out.getvalue()


def report_for(name, **kw):
    text = (ROOT / "configs" / name).read_text()
    return cli.build_report(text, **kw)


def test_i1_star_report():
    report, _ = report_for("i1star.yaml")
    res = report["results"][0]
    assert res["discriminant"] == "27*s^8 + 4*s^4*t^3"
    assert [(c["component"], c["type"]) for c in res["components"]] == [
        ("s", "I4"),
        ("27*s^4 + 4*t^3", "I1"),
    ]
    (pt,) = res["points"]
    assert pt["orders"] == [2, 3, 7] and pt["pencil"]["type"] == "I1*"
    # input echoed back in canonical form
    assert report["input"]["a4"] == "-1/3*t^2" and report["input"]["a6"] == "s^4 + 2/27*t^3"


def test_non_cdv_report_flags_violation():
    report, _ = report_for("non_cdv.yaml")
    (pt,) = report["results"][0]["points"]
    assert pt["verdict"] == "violates"
    assert pt["detail"] == "violates: mult a4 = 4, mult a6 = 6"
    assert pt["cdv"] == "k>=1"


def test_empty_config(tmp_path):
    code, out = run(tmp_path, "version: 1\ncommands: []\n")
    assert code == 0
    assert json.loads(out)["results"] == []


@pytest.mark.parametrize(
    "text",
    [
        "version: 1\nvariables: [s, t]\na4: 's +'\na6: '1'\ncommands: [analyze]\n",
        "version: 1\nvariables: [s, t]\na4: 'z'\na6: '1'\ncommands: [analyze]\n",
        "version: 1\nvariables: [s, t]\na4: '-1/3*t^2'\na6: 's^4 + 2/27*t^3'\n"
        "components: [{poly: s, order: 3}, {poly: '27*s^4 + 4*t^3', order: 1}]\ncommands: [analyze]\n",
        "version: 1\ncommands: [{classify: {triple: [1, 1, 5]}}]\n",
        "version: 1\ncommands: [{frobnicate: {}}]\n",
        "not: [valid\n",
    ],
)
def test_invalid_input_exits_1(tmp_path, text):
    code, _ = run(tmp_path, text)
    assert code == 1


def test_missing_file_exits_1(tmp_path):
    assert cli.analyze(str(tmp_path / "nope.yaml")) == 1


def test_invariant_violation_exits_2(tmp_path, monkeypatch):
    def boom(job, params):
        raise InvariantViolation("inconsistent orders")

    monkeypatch.setitem(jobs.HANDLERS, "analyze", boom)
    code, _ = run(tmp_path, "version: 1\nvariables: [s, t]\na4: s\na6: t\ncommands: [analyze]\n")
    assert code == 2


def test_non_minimal_is_report_content_under_normalize():
    text = "version: 1\ncommands: [{classify: {triple: [6, 9, 19]}}]\n"
    report, _ = cli.build_report(text, normalize_tate=True)
    (res,) = report["results"]
    assert res["type"] == "I1*" and res["twists"] == 1


def test_out_dir_and_dot_files(tmp_path):
    cfg = ROOT / "configs" / "contractions.yaml"
    assert cli.analyze(str(cfg), out=str(tmp_path), dot=True) == 0
    names = sorted(os.listdir(tmp_path))
    assert "contractions.report.json" in names
    assert any(n.endswith(".dot") for n in names)


def test_reports_byte_identical(tmp_path):
    for cfg in CONFIGS:
        outs = []
        for k in range(2):
            d = tmp_path / f"run{k}"
            assert cli.analyze(str(cfg), out=str(d), dot=True) == 0
            outs.append({n: (d / n).read_bytes() for n in sorted(os.listdir(d))})
        assert outs[0] == outs[1]


def test_parallel_matches_sequential():
    text = (ROOT / "configs" / "contractions.yaml").read_text()
    assert cli.dumps(cli.build_report(text)[0]) == cli.dumps(cli.build_report(text, parallel=True)[0])


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ellfib.cli", "analyze", str(ROOT / "configs" / "empty.yaml")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"] == []


# DOT output


def test_dot_i0_star_is_a_five_node_star():
    text = to_dot(kodaira_config(KodairaType.parse("I0*")))
    nodes = [ln for ln in text.splitlines() if ln.strip().startswith("c") and "label=" in ln and "--" not in ln]
    edges = [ln for ln in text.splitlines() if "--" in ln]
    assert len(nodes) == 5 and len(edges) == 4
    centre = "c4"
    assert all(centre in e for e in edges)


def test_dot_concurring_lines():
    c = contract(kodaira_config(KodairaType.parse("I0*")), {1, 2, 3})
    text = to_dot(c)
    assert 'label="0:1"' in text and 'label="4:2"' in text
    assert text.count("--") == 1
    assert to_dot(concurring_lines()).count("--") == 1


def test_dot_i1_self_loop():
    text = to_dot(kodaira_config(KodairaType.parse("I1")))
    assert "c0 -- c0;" in text
    assert 'xlabel="node"' in text


def test_dot_deterministic(tmp_path):
    from ellfib.fibre import emit_dot

    c = kodaira_config(KodairaType.parse("IV*"))
    a = emit_dot(c, tmp_path / "a.dot")
    b = emit_dot(c, tmp_path / "b.dot")
    assert a == b == (tmp_path / "a.dot").read_text()
