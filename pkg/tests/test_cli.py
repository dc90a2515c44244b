from __future__ import annotations

import json

import pytest

import dihedral_doubles.cli as cli


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv + ["--output", "json"])
    assert err == ""
    return code, json.loads(out)


def test_weights_table(capsys):
    code, out, err = run(capsys, ["weights"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 87
    assert lines[-1] == "86 weights, sum of squared dimensions 576"
    assert lines[0].startswith("e:chi1")


def test_weights_json(capsys):
    code, obj = run_json(capsys, ["weights", "--m", "16"])
    assert code == 0
    assert obj["m"] == 16
    assert obj["count"] == 142
    assert obj["total_dim_sq"] == 1024
    assert obj["weights"][0] == {"label": "e:chi1", "dimension": 1, "class": "e"}


def test_tensor_table(capsys):
    code, out, err = run(capsys, ["tensor", "M2,3", "Mx:0,0"])
    assert code == 0
    assert out.strip() == "M2,3 x Mx:0,0 = Mx:0,1 + Mx:1,1"


def test_tensor_json(capsys):
    code, obj = run_json(capsys, ["tensor", "e:chi1", "e:rho3"])
    assert code == 0
    assert obj["dimension"] == 2
    assert obj["summands"] == [{"label": "e:rho3", "mult": 1}]


def test_simple_json_schema(capsys):
    code, obj = run_json(
        capsys, ["simple", "--index", "(2,3)", "--weight", "Mx:0,0", "--full"]
    )
    assert code == 0
    assert obj["dimension"] == 12
    assert obj["verma_dimension"] == 24
    assert obj["checks"] == {"relations": True, "theta": True}
    assert obj["graded_character"][0] == {
        "degree": 0,
        "summands": [{"label": "Mx:0,0", "mult": 1}],
    }
    assert [entry["degree"] for entry in obj["socle"]] == [-1, -2]


def test_simple_table_output(capsys):
    code, out, err = run(capsys, ["simple", "--index", "(2,3)", "--weight", "e:chi1"])
    assert code == 0
    assert "simple module of e:chi1 over (2,3) at m=12: dimension 1" in out
    assert "socle:" in out


def test_malformed_index_is_a_usage_error(capsys):
    code, out, err = run(capsys, ["simple", "--index", "bogus", "--weight", "e:chi1"])
    assert code == 2
    assert err.startswith("error: malformed index set")


def test_unsupported_order_is_a_usage_error(capsys):
    code, out, err = run(capsys, ["weights", "--m", "10"])
    assert code == 2
    assert "m must be >= 12 and divisible by 4" in err


def test_verify_subset(capsys):
    code, out, err = run(
        capsys,
        ["verify", "--index", "(2,3)", "--weights", "e:chi1,M2,3", "--threads", "1"],
    )
    assert code == 0
    assert "all 2 cases verified" in out


def test_verify_json_reports_cases(capsys):
    code, obj = run_json(
        capsys,
        ["verify", "--index", "(2,3)", "--weights", "e:chi1", "--threads", "1"],
    )
    assert code == 0
    assert obj["ok"] is True
    assert obj["failures"] == []
    assert obj["cases"][0]["weight"] == "e:chi1"
    assert obj["cases"][0]["ok"] is True


def test_verify_flags_spherical_and_tensor(capsys):
    code, out, err = run(
        capsys,
        [
            "verify",
            "--index",
            "(2,3)",
            "--weights",
            "e:chi1",
            "--threads",
            "1",
            "--spherical",
            "--tensor-rigid",
        ],
    )
    assert code == 0
    assert "spherical" in out
    assert "rigid tensor checks:" in out


def test_weight_list_tokenizer_handles_commas_in_labels(capsys):
    code, obj = run_json(
        capsys,
        ["verify", "--index", "(2,3)", "--weights", "M2,3,Mx:0,0", "--threads", "1"],
    )
    assert code == 0
    assert [case["weight"] for case in obj["cases"]] == ["M2,3", "Mx:0,0"]


def test_weight_list_rejects_garbage(capsys):
    code, out, err = run(
        capsys, ["verify", "--index", "(2,3)", "--weights", "e:chi1,junk"]
    )
    assert code == 2
    assert "malformed weight list" in err


class _FailingReport:
    ok = False

    @staticmethod
    def to_json_obj():
        return {"ok": False}


def test_verify_exit_code_on_mismatch(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verify_simple", lambda *a, **kw: _FailingReport())
    code, out, err = run(
        capsys,
        ["verify", "--index", "(2,3)", "--weights", "e:chi1", "--threads", "1"],
    )
    assert code == 1
    assert "MISMATCH" in out


def test_spherical_all_singletons(capsys):
    code, out, err = run(capsys, ["spherical"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 13
    assert all("spherical" in line for line in lines)


def test_spherical_one_index_json(capsys):
    code, obj = run_json(capsys, ["spherical", "--index", "(2,4)", "--m", "16"])
    assert code == 0
    row = obj["index_sets"][0]
    assert row["spherical"] is False
    assert row["consistent"] is True
    assert set(row["pivots"]) == {"1", "2", "3", "4"}
    assert not any(row["pivots"].values())
