import json

import pytest

from isaacs import cli
from isaacs.constructions import dihedral, symmetric
from isaacs.groupfile import group_from_dict, group_to_dict, save_group
from isaacs.group import GroupFormatError


@pytest.fixture
def d8_file(tmp_path):
    path = tmp_path / "d8.json"
    save_group(dihedral(8), path)
    return str(path)


def run(argv, capsys):
    rc = cli.main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_gate_and_verify(d8_file, tmp_path, capsys):
    rc, out, _ = run(["gate", "--group", d8_file], capsys)
    assert rc == 0 and json.loads(out)["passed"] and json.loads(out)["e"] == 2
    rc, out, _ = run(["verify", "--group", d8_file], capsys)
    assert rc == 0 and json.loads(out)["passed"]
    s4 = tmp_path / "s4.json"
    s4.write_text(json.dumps({"kind": "perm", "name": "S4", "degree": 4,
                              "generators": [[1, 2, 3, 0], [1, 0, 2, 3]]}))
    rc, out, _ = run(["gate", "--group", str(s4)], capsys)
    assert rc == 1 and not json.loads(out)["conditions"]["order"]
    rc, _, err = run(["verify", "--group", str(s4)], capsys)
    assert rc == 1 and "not an Isaacs group" in err


def test_chartable_and_aut(d8_file, tmp_path, capsys):
    rc, out, _ = run(["chartable", "--group", d8_file], capsys)
    doc = json.loads(out)
    assert rc == 0 and doc["degree_multiset"] == "[<1,4>,<2,1>]" and doc["orthogonality"]
    out_file = tmp_path / "aut.json"
    rc, _, _ = run(["aut", "--group", d8_file, "--out", str(out_file)], capsys)
    assert rc == 0 and json.loads(out_file.read_text())["aut_order"] == 8
    big = tmp_path / "s4.json"
    save_group(symmetric(4), big)
    rc, _, err = run(["aut", "--group", str(big), "--limit", "8"], capsys)
    assert rc == 1 and "failed" in err


def test_census(tmp_path, capsys):
    out_file = tmp_path / "e2.json"
    rc, _, err = run(["census", "--e", "2", "--out", str(out_file)], capsys)
    doc = json.loads(out_file.read_text())
    assert rc == 0 and len(doc["groups"]) == 2
    assert "2 groups" in err
    rc, _, err = run(["census", "--e", "9"], capsys)
    assert rc == 2 and "--stretch" in err
    rc, _, err = run(["census", "--e", "6"], capsys)
    assert rc == 2


def test_tc(tmp_path, capsys):
    pres = tmp_path / "s3.txt"
    pres.write_text("< a, b | a^3, b^2, (a*b)^2 >\n")
    rc, out, _ = run(["tc", "--presentation", str(pres)], capsys)
    assert rc == 0 and json.loads(out)["index"] == 6
    rc, out, _ = run(["tc", "--presentation", str(pres), "--subgroup", "b"], capsys)
    assert rc == 0 and json.loads(out)["index"] == 3
    rc, _, err = run(["tc", "--presentation", str(pres), "--max-cosets", "4"], capsys)
    assert rc == 1 and "exceeded" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("< a, b | a^3, b^2, (a*b)^2\n")
    rc, _, err = run(["tc", "--presentation", str(bad)], capsys)
    assert rc == 2 and "position" in err
    rc, _, _ = run(["tc", "--presentation", str(tmp_path / "missing.txt")], capsys)
    assert rc == 2


def test_construct(tmp_path, capsys):
    path = tmp_path / "h.json"
    rc, _, _ = run(["construct", "--family", "heisenberg", "--q", "3", "--out", str(path)], capsys)
    assert rc == 0 and json.loads(path.read_text())["order"] == 27
    rc, out, _ = run(["construct", "--family", "extraspecial", "--p", "2", "--variant", "quaternion"], capsys)
    assert rc == 0 and json.loads(out)["name"] == "Q8"
    rc, _, err = run(["construct", "--family", "dihedral", "--n", "7"], capsys)
    assert rc == 1 and "cannot construct" in err


def test_bad_group_files(tmp_path, capsys):
    cases = [
        ("not json", "invalid JSON"),
        (json.dumps({"mul": [[0]]}), "kind"),
        (json.dumps({"kind": "cayley", "mul": [[0, 1], [1, 1]]}), "row 1"),
        (json.dumps({"kind": "cayley", "order": 3, "mul": [[0, 1], [1, 0]]}), "does not match"),
        (json.dumps({"kind": "perm", "degree": 3, "generators": [[0, 0, 1]]}), "not a permutation"),
        (json.dumps({"kind": "matrix"}), "unknown group kind"),
    ]
    for i, (text, msg) in enumerate(cases):
        path = tmp_path / f"bad{i}.json"
        path.write_text(text)
        rc, _, err = run(["gate", "--group", str(path)], capsys)
        assert rc == 2 and msg in err, (text, err)


def test_group_dict_round_trip():
    G = dihedral(8)
    H = group_from_dict(group_to_dict(G))
    assert H.content_hash == G.content_hash and H.name == "D8"
    with pytest.raises(GroupFormatError):
        group_from_dict([])
