from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from smcloc.cli import run

SCHEMA = json.loads(resources.files("smcloc").joinpath("schema/cli_output.schema.json").read_text())
A4_ARGS = ["rpoly", "--type", "A4", "--u", "s3.s4.s3.s2", "--w", "s4.s3.s1.s4.s2.s1.s3.s2"]


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_rpoly_example(capsys):
    assert call(capsys, *A4_ARGS)[:2] == (0, "1 -3 4 -3 1\n")


def test_rpoly_identity(capsys):
    assert call(capsys, "rpoly", "--type", "A2", "--u", "e", "--w", "e")[:2] == (0, "1\n")


def test_rpoly_all_csv(capsys):
    code, out, _ = call(capsys, "rpoly", "--type", "A2", "--all", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "u,w,coefficients"
    assert len(lines) == 1 + 19  # Bruhat intervals u <= w in A2
    assert "e,s1.s2.s1,-1 2 -2 1" in lines


def test_twisted(capsys):
    assert call(capsys, "twisted-rpoly", "--type", "A2", "--u", "e", "--w", "s2.s1.s2", "--v", "s2")[:2] == (0, "0 -1 1\n")


def test_subwords(capsys):
    code, out, _ = call(capsys, "subwords", "--word", "s4.s3.s1.s4.s2.s1.s3.s2", "--u", "s3.s4.s3.s2", "--list")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 6
    assert lines[1].split("\t")[1:] == ["{2,4,7,8}", "{}", "{1,3,5,6}", "{}", "yes", "yes"]
    code, out, _ = call(capsys, "subwords", "--word", "s4.s3.s1.s4.s2.s1.s3.s2", "--u", "s3.s4.s3.s2")
    assert out == "5\n"


def test_smc(capsys):
    code, out, _ = call(capsys, "smc", "--type", "A2", "--u", "s2", "--w", "s1.s2", "--limit-chamber", "e")
    assert (code, out) == (0, "-y - 1\n")
    code, doc = call_json(capsys, "smc", "--type", "A2")
    assert code == 0 and len(doc["records"]) == 36
    assert {"u", "w", "value"} <= set(doc["records"][0])


def test_ajs(capsys):
    assert call(capsys, "ajs-billey", "--type", "A2", "--u", "s1", "--w", "s1.s2.s1")[:2] == (0, "a1 + a2\n")


def test_limit(capsys):
    code, out, _ = call(capsys, "limit", "--type", "A2", "--u", "s2", "--w", "s1.s2")
    assert code == 0
    assert out.splitlines() == ["e\t-y - 1", "s1\t0", "s2\ty^2 + y", "s1.s2\t0", "s2.s1\ty^2 + y", "s1.s2.s1\t0"]


def test_richardson(capsys):
    code, doc = call_json(capsys, "richardson", "--type", "GL2", "--lambda", "1,0", "--u", "e", "--w", "e")
    assert code == 0
    assert [r["value"] for r in doc["records"]] == ["(-t1 + t2)/(y*t1 + t2)", "0"]


def test_verify_main(capsys):
    code, doc = call_json(capsys, "verify-main", "--type", "GL3", "--lambda", "1,0,0", "--all")
    assert code == 0 and doc["passed"]
    assert len(doc["records"]) == 18 * 3
    assert all(r["equal"] for r in doc["records"])


def test_verify_main_single(capsys):
    code, out, _ = call(capsys, "verify-main", "--type", "GL3", "--lambda", "1,1,0", "--u", "s1", "--w", "s1.s2")
    assert code == 0 and out.splitlines()[-1] == "1/1 pairs pass"


def test_pipedream(capsys):
    assert call(capsys, "pipedream", "--n", "7", "--k", "3", "--f", "2,6,5,10,8,11,7", "--count")[:2] == (0, "265\n")
    code, doc = call_json(capsys, "pipedream", "--n", "3", "--k", "2", "--f", "2,4,6")
    assert code == 0 and doc["count"] == len(doc["records"])
    assert all(set(map(len, r["tiles"])) == {3} for r in doc["records"])
    code, out, _ = call(capsys, "pipedream", "--n", "3", "--k", "2", "--f", "2,4,6", "--verify")
    assert code == 0 and out.splitlines()[-1] == "PASS"
    code, out, _ = call(capsys, "pipedream", "--n", "3", "--k", "1")
    assert code == 0 and len(out.splitlines()) == 7


def test_pipedream_ascii(capsys):
    code, out, _ = call(capsys, "pipedream", "--n", "3", "--k", "1", "--f", "4,2,3", "--ascii")
    assert (code, out) == (0, "%++\n")


@pytest.mark.parametrize("argv", [
    ["rpoly", "--type", "Z9", "--u", "e", "--w", "e"],
    ["rpoly", "--type", "A2", "--u", "s7", "--w", "e"],
    ["rpoly", "--type", "A2", "--bogus"],
    ["rpoly", "--type", "A2"],
    ["richardson", "--type", "GL3", "--lambda", "0,1,0"],
    ["verify-main", "--type", "GL3", "--lambda", "1,0,0", "--u", "e", "--w", "s2"],
    ["pipedream", "--n", "3", "--k", "1", "--f", "1,2,3", "--verify"],
    ["pipedream", "--n", "3", "--k", "1", "--f", "1,2"],
    ["selftest", "--only", "12"],
    [],
])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_selftest_pass_and_fail(capsys):
    code, doc = call_json(capsys, "selftest", "--only", "1,4")
    assert code == 0 and [r["criterion"] for r in doc["records"]] == [1, 4]
    # the stated six-chamber table disagrees with the computed limits
    code, out, _ = call(capsys, "selftest", "--only", "5")
    assert code == 1 and out.startswith("FAIL criterion 5")


def _subprocess(*argv):
    return subprocess.run([sys.executable, "-m", "smcloc", *argv], capture_output=True, check=False)


@pytest.mark.parametrize("argv", [
    ["smc", "--type", "A2", "--json"],
    ["verify-main", "--type", "GL3", "--lambda", "1,0,0", "--all", "--json", "--jobs", "3"],
    ["pipedream", "--n", "4", "--k", "2", "--f", "3,4,5,6", "--format", "csv"],
])
def test_output_is_byte_identical(argv):
    a, b = _subprocess(*argv), _subprocess(*argv)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_jobs_do_not_change_output():
    a = _subprocess("verify-main", "--type", "GL3", "--lambda", "1,1,0", "--all", "--jobs", "1")
    b = _subprocess("verify-main", "--type", "GL3", "--lambda", "1,1,0", "--all", "--jobs", "4")
    assert a.stdout == b.stdout
