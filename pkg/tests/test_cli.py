import json

import pytest

from wallcross import arrangement, load_registry
from wallcross.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_walls_text(capsys):
    code, out, err = run(capsys, "walls", "--family", "dp3", "--space", "t")
    assert code == 0
    assert out == "1/5 1/3 3/7 5/9 9/13\n"
    assert err == ""
    code, out, _ = run(capsys, "walls", "--family", "dp3")
    assert code == 0
    assert out == "2/11 4/13 2/5 10/19 2/3\n"  # c is the default space
    code, out, _ = run(capsys, "walls", "--family", "dp4", "--space", "t")
    assert out == "1/6 2/7 3/8 6/11 2/3\n"
    code, out, _ = run(capsys, "walls", "--family", "p1")
    assert code == 0 and out == "\n"


def test_walls_json(capsys):
    code, out, _ = run(capsys, "walls", "--family", "dp4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc == {
        "family": "dp4",
        "space": "c",
        "walls": ["1/7", "1/4", "1/3", "1/2", "5/8"],
    }


def test_walls_errors(capsys):
    code, _, err = run(capsys, "walls", "--family", "dp2")
    assert code == 2 and "error:" in err  # registered family, no wall table
    code, _, err = run(capsys, "walls", "--family", "nope")
    assert code == 2 and "nope" in err
    code, _, err = run(capsys, "walls")
    assert code == 1 and "usage error:" in err
    code, _, err = run(capsys, "walls", "--family", "dp3", "--space", "q")
    assert code == 1


def test_help_and_unknown_verb(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "walls" in out
    code, _, err = run(capsys, "frobnicate")
    assert code == 1


def test_product_text_report(capsys):
    code, out, _ = run(capsys, "product", "--families", "dp3,dp4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "families: dp3, dp4"
    assert "factor 0 (dp3): 6 chambers, 5 walls" in lines
    assert "factor 1 (dp4): 6 chambers, 5 walls" in lines
    assert "codim-0 cells: 36" in lines
    assert "codim-1 cells: 60" in lines
    assert "codim-2 cells: 25" in lines
    assert "total cells: 121" in lines
    assert "crossing graph: 36 nodes, 60 edges, connected" in lines


def test_product_single_point_factor(capsys):
    code, out, _ = run(capsys, "product", "--families", "p1")
    assert code == 0
    assert "factor 0 (p1): 1 chamber, 0 walls" in out
    assert "codim-0 cells: 1" in out
    assert "crossing graph: 1 node, 0 edges, connected" in out


def test_product_fold_report(capsys):
    code, out, _ = run(capsys, "product", "--families", "dp3,dp3", "--fold")
    assert code == 0
    assert "folding by family id: dp3 -> positions 0,1" in out
    assert "codim-0 orbits: 21 (enumeration) = 21 (burnside)" in out
    assert "codim-1 orbits: 30 (enumeration) = 30 (burnside)" in out
    assert "codim-2 orbits: 15 (enumeration) = 15 (burnside)" in out


def test_product_json(capsys):
    code, out, _ = run(capsys, "product", "--families", "dp3,dp4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["cell_counts"] == {"0": 36, "1": 60, "2": 25}
    code, out2, _ = run(
        capsys, "product", "--families", "dp3,dp3", "--fold", "--format", "json"
    )
    assert json.loads(out2)["folding"]["orbit_counts"]["0"] == 21


def test_product_svg_matches_library_render(capsys):
    code, out, _ = run(capsys, "product", "--families", "dp3,dp4", "--format", "svg")
    assert code == 0
    registry = load_registry()
    arr = arrangement.build_product([registry["dp3"], registry["dp4"]])
    assert out == arrangement.render(arr, "svg")
    code, again, _ = run(capsys, "product", "--families", "dp3,dp4", "--format", "svg")
    assert again == out  # byte-determinism across invocations


def test_product_ascii(capsys):
    code, out, _ = run(capsys, "product", "--families", "dp3", "--format", "ascii")
    assert code == 0 and out.splitlines()[0].count("|") == 5
    code, _, err = run(
        capsys, "product", "--families", "dp3,dp3,dp3", "--format", "svg"
    )
    assert code == 2 and "at most 2 factors" in err


def test_product_t_space(capsys):
    code, out, _ = run(
        capsys, "walls", "--family", "dp3", "--space", "t", "--format", "json"
    )
    walls = json.loads(out)["walls"]
    code, out, _ = run(
        capsys, "product", "--families", "dp3", "--space", "t", "--format", "json"
    )
    assert json.loads(out)["factors"][0]["walls"] == walls


def test_chamber_text(capsys):
    code, out, _ = run(
        capsys, "chamber", "--families", "dp3,dp4", "--point", "1/2,1/5"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "point: 1/2, 1/5"
    assert lines[1] == "cell: (chamber 3, chamber 1)"
    assert lines[2] == "codim: 0"
    code, out, _ = run(
        capsys, "chamber", "--families", "dp3,dp4", "--point", "2/5,1/4"
    )
    assert "cell: (wall 2, wall 1)" in out and "codim: 2" in out


def test_chamber_json(capsys):
    code, out, _ = run(
        capsys,
        "chamber",
        "--families",
        "dp3,dp4",
        "--point",
        "2/5,9/10",
        "--format",
        "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["cell"] == {
        "coords": [
            {"kind": "wall", "index": 2},
            {"kind": "chamber", "index": 5},
        ],
        "codim": 1,
    }


def test_chamber_errors(capsys):
    code, _, err = run(capsys, "chamber", "--families", "dp3,dp4", "--point", "1/2")
    assert code == 2  # wrong point length
    code, _, err = run(capsys, "chamber", "--families", "dp3,dp4", "--point", "0,1/2")
    assert code == 2  # outside the open interval
    code, _, err = run(capsys, "chamber", "--families", "dp3", "--point", "zzz")
    assert code == 1  # unparsable rational is a usage error


def test_stack_text(capsys):
    code, out, _ = run(capsys, "stack", "--factors", "dp3,dp4,dp4,p1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "factors: dp3, dp4, dp4, p1"
    assert lines[1] == "descriptor: dp3 x [dp4^2/S2]"
    assert len(lines) == 2  # no product-map line for arity 4

    code, out, _ = run(capsys, "stack", "--factors", "dp3,dp4")
    assert "descriptor: dp3 x dp4" in out
    assert "product map: isomorphism" in out

    code, out, _ = run(capsys, "stack", "--factors", "dp3,dp3")
    assert "descriptor: [dp3^2/S2]" in out
    assert "product map: s2-gerbe" in out

    code, out, _ = run(capsys, "stack", "--factors", "p1,p1")
    assert "descriptor: pt" in out
    assert "product map: s2-gerbe" in out


def test_stack_iso(capsys):
    code, out, _ = run(
        capsys, "stack", "--factors", "dp3,dp4", "--iso", "dp3=dp4"
    )
    assert code == 0
    assert "descriptor: [dp3^2/S2]" in out
    assert "product map: s2-gerbe" in out
    code, out, _ = run(
        capsys,
        "stack",
        "--factors",
        "dp3,dp4",
        "--iso",
        "dp3=dp4",
        "--format",
        "json",
    )
    doc = json.loads(out)
    assert doc["iso"] == [["dp3", "dp4"]]
    assert doc["descriptor"] == {
        "kind": "sym",
        "base": {"kind": "atom", "id": "dp3"},
        "power": 2,
    }
    assert doc["product_map"] == "s2-gerbe"
    code, _, err = run(capsys, "stack", "--factors", "dp3", "--iso", "dp3")
    assert code == 1  # malformed iso pair is a usage error


def test_stack_json_without_map(capsys):
    code, out, _ = run(
        capsys, "stack", "--factors", "dp3,dp3,dp3", "--format", "json"
    )
    doc = json.loads(out)
    assert doc["product_map"] is None
    assert doc["descriptor"]["kind"] == "sym" and doc["descriptor"]["power"] == 3


def test_git_walls_text(capsys):
    code, out, _ = run(capsys, "git-walls", "--degree", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1/5 1/3 3/7 5/9 9/13"
    assert lines[1] == "registry t-walls (dp3): 1/5 1/3 3/7 5/9 9/13"
    assert lines[2] == "match: yes"


def test_git_walls_json(capsys):
    code, out, _ = run(capsys, "git-walls", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["walls"] == ["1/5", "1/3", "3/7", "5/9", "9/13"]
    assert doc["registry_match"] is True
    assert set(doc["witnesses"]) == set(doc["walls"])
    code, again, _ = run(capsys, "git-walls", "--format", "json")
    assert again == out


def test_git_walls_registry_only_degrees(capsys):
    code, _, err = run(capsys, "git-walls", "--degree", "4")
    assert code == 2
    assert "degree 4 is registry-only" in err


def test_git_walls_mismatch_is_exit_3(capsys, tmp_path):
    overlay = {
        "dp3": {
            "dimension": 2,
            "volume": 3,
            "moduli_note": "deliberately wrong walls",
            "hilbert": ["1", "3/2", "3/2"],
            "c_walls": ["1/2"],
            "reparam": [9, 0, 1, 8],
        }
    }
    path = tmp_path / "overlay.json"
    path.write_text(json.dumps(overlay))
    code, out, _ = run(capsys, "git-walls", "--registry", str(path))
    assert code == 3
    assert "match: NO" in out


def test_check_runs_green(capsys):
    code, out, _ = run(capsys, "check")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "all checks passed"
    assert sum(1 for line in lines if line.startswith("ok ")) == 5
    assert not any(line.startswith("FAIL") for line in lines)


def test_registry_overlay_round_trip(capsys, tmp_path):
    overlay = {
        "toy": {
            "dimension": 1,
            "volume": 2,
            "moduli_note": "toy line",
            "hilbert": ["1", "2"],
            "c_walls": ["1/3", "1/2"],
            "reparam": [1, 0, 0, 1],
        }
    }
    path = tmp_path / "overlay.json"
    path.write_text(json.dumps(overlay))
    code, out, _ = run(capsys, "walls", "--family", "toy", "--registry", str(path))
    assert code == 0 and out == "1/3 1/2\n"
    code, out, _ = run(
        capsys, "product", "--families", "toy,p1", "--registry", str(path)
    )
    assert code == 0 and "codim-0 cells: 3" in out


def test_broken_overlay_is_computation_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"dp3": {"dimension": 2}}))
    code, _, err = run(capsys, "walls", "--family", "dp3", "--registry", str(path))
    assert code == 2 and "error:" in err
    missing = tmp_path / "missing.json"
    code, _, err = run(capsys, "walls", "--family", "dp3", "--registry", str(missing))
    assert code == 2
