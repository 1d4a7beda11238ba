import json
import os

import jsonschema
import pytest

from twogen import cli

SCHEMA_PATH = os.path.join(
    os.path.dirname(__file__), "..", "schemas", "twogen-v1.schema.json"
)
with open(SCHEMA_PATH) as fh:
    SCHEMA = json.load(fh)


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def check_schema(text):
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    return doc


def test_index_word(capsys):
    rc, out, _ = run(capsys, "index", "LW OK LB")
    assert rc == 0
    doc = check_schema(out)
    assert doc["ind"] == 23
    assert doc["normalized"] == "23/27"


def test_index_limit(capsys):
    rc, out, _ = run(capsys, "index", "--limit", "OK ( LW )^w")
    assert rc == 0
    assert check_schema(out)["limit"] == "1/3"


def test_index_bad_word(capsys):
    rc, _, err = run(capsys, "index", "OK BAD")
    assert rc == 1
    assert "parse" in err


def test_adv_check_solvable(capsys):
    rc, out, _ = run(capsys, "adv", "check", "C1")
    assert rc == 0
    doc = check_schema(out)
    assert doc["solvable"] is True
    assert "F1" in doc["families"]


def test_adv_check_obstruction(capsys):
    rc, out, _ = run(capsys, "adv", "check", "R1")
    assert rc == 0
    assert check_schema(out)["solvable"] is False


def test_adv_check_text_format(capsys):
    rc, out, _ = run(capsys, "adv", "check", "R1", "--format", "text")
    assert rc == 0
    assert "obstruction" in out


def test_adv_witness(capsys):
    rc, out, _ = run(capsys, "adv", "witness", "S1")
    assert rc == 0
    assert check_schema(out)["forbidden"].endswith(")^w")


def test_adv_lowerbound(capsys):
    rc, out, _ = run(capsys, "adv", "lowerbound", "C1", "--rmax", "6")
    assert rc == 0
    assert check_schema(out)["rounds"] == 1


def test_sim_run(capsys):
    rc, out, _ = run(
        capsys, "sim", "run", "--adversary", "C1",
        "--scenario", "( OK )^w", "--inputs", "0,1",
    )
    assert rc == 0
    doc = check_schema(out)
    assert doc["decisions"]["white"] == doc["decisions"]["black"]


def test_sim_run_scenario_outside(capsys):
    rc, _, err = run(
        capsys, "sim", "run", "--adversary", "S0",
        "--scenario", "( LB )^w", "--inputs", "0,0",
    )
    assert rc == 1
    assert "domain" in err


def test_sim_verify_ok(capsys):
    rc, out, _ = run(
        capsys, "sim", "verify", "--adversary", "C1", "--depth", "3",
    )
    assert rc == 0
    assert check_schema(out)["ok"] is True


def test_sim_verify_violations_exit_3(capsys):
    rc, out, _ = run(
        capsys, "sim", "verify", "--adversary", "R1",
        "--algorithm", "aw", "--w", "( OK )^w", "--depth", "3",
    )
    assert rc == 3
    doc = check_schema(out)
    assert doc["ok"] is False and doc["violations"]


def test_sim_verify_aeta(capsys):
    rc, out, _ = run(
        capsys, "sim", "verify",
        "--adversary", "GAMMA^w \\ { LW LB ( OK )^w }",
        "--algorithm", "aeta", "--w", "LW LB ( OK )^w", "--depth", "3",
    )
    assert rc == 0
    assert check_schema(out)["ok"] is True


def test_bivalency_explore(capsys):
    rc, out, _ = run(
        capsys, "bivalency", "explore",
        "--adversary", "GAMMA^w \\ { LW LB ( OK )^w }",
        "--inputs", "0,1", "--depth", "2",
    )
    assert rc == 0
    doc = check_schema(out)
    assert doc["valency"] == "Bivalent"
    assert doc["children"]


def test_topo_contrex(capsys):
    rc, out, _ = run(capsys, "topo", "contrex")
    assert rc == 0
    doc = check_schema(out)
    assert doc["abstract_components"] == 2
    assert doc["realization_components"] == 1


def test_topo_subdivide_and_components(capsys, tmp_path):
    out_json = str(tmp_path / "ts.json")
    rc, out, _ = run(
        capsys, "topo", "subdivide", "--rounds", "6",
        "--adversary", "GAMMA^w \\ { LW LB ( OK )^w }",
        "--out", out_json,
    )
    assert rc == 0
    check_schema(out)
    with open(out_json) as fh:
        check_schema(fh.read())

    rc2, out2, _ = run(
        capsys, "topo", "components", "--in", out_json, "--abstract",
        "--realization",
    )
    assert rc2 == 0
    doc = check_schema(out2)
    assert doc["abstract_components"] == 2
    assert doc["realization_components"] == 2


def test_topo_subdivide_svg(capsys, tmp_path):
    out_svg = str(tmp_path / "ts.svg")
    rc, _, _ = run(
        capsys, "topo", "subdivide", "--rounds", "5",
        "--adversary", "GAMMA^w \\ { LW LB ( OK )^w }",
        "--out", out_svg,
    )
    assert rc == 0
    with open(out_svg) as fh:
        body = fh.read()
    assert body.startswith("<svg")
    assert 'stroke-width="3"' in body


def test_topo_obstruction_rejected(capsys):
    rc, _, err = run(capsys, "topo", "components", "--adversary", "R1")
    assert rc == 1
    assert "domain" in err


def test_deterministic_output(capsys):
    rc1, out1, _ = run(capsys, "adv", "check", "S1")
    rc2, out2, _ = run(capsys, "adv", "check", "S1")
    assert (rc1, out1) == (rc2, out2)
    rc3, out3, _ = run(
        capsys, "sim", "verify", "--adversary", "C1", "--depth", "3"
    )
    rc4, out4, _ = run(
        capsys, "sim", "verify", "--adversary", "C1", "--depth", "3"
    )
    assert (rc3, out3) == (rc4, out4)
