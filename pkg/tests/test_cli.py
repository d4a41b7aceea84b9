import csv
import io
import json

import pytest

from cdakit.arrayfile import parse_array, read_array
from cdakit.catalog import SEEDS
from cdakit.cli import main
from cdakit.verify import is_oa, is_simple_coa

ZERO_SUM_2_2 = """4 3 2
# family: zero-sum
# t: 2
# lambda: 1
# v: 2
0 0 0
0 1 1
1 0 1
1 1 0
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def plan_file(tmp_path, capsys):
    path = tmp_path / "plan.txt"
    assert main(["catalog", "show", "coa2-2-4-2", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def test_construct_golden(capsys):
    code, out, _ = run(capsys, "construct", "--family", "zero-sum", "--t", "2", "--v", "2")
    assert code == 0
    assert out == ZERO_SUM_2_2


@pytest.mark.parametrize(
    "argv,check",
    [
        (["--family", "bush", "--t", "2", "--q", "4"], lambda a: a.shape == (16, 5) and is_oa(a, 2)),
        (["--family", "bush-even", "--q", "4"], lambda a: a.shape == (64, 6) and is_oa(a, 3)),
        (["--family", "oa3-6", "--v", "5"], lambda a: a.shape == (125, 6) and is_oa(a, 3)),
        (["--family", "recipe", "--v", "10", "--lambda", "3"], lambda a: is_simple_coa(a, 2, 3)),
        (["--family", "seed", "--name", "coa4-6-2"], lambda a: a.shape == (16, 6)),
    ],
)
def test_construct_families(capsys, argv, check):
    code, out, _ = run(capsys, "construct", *argv)
    assert code == 0
    assert check(parse_array(out))


def test_construct_pipeline_through_files(tmp_path, capsys):
    oa = tmp_path / "oa.txt"
    ssoa = tmp_path / "ssoa.txt"
    coa = tmp_path / "coa.txt"
    assert main(["construct", "--family", "zero-sum", "--t", "3", "--v", "2", "-o", str(oa)]) == 0
    assert main(["construct", "--family", "derive-stack", "--t", "2", "--lambda", "2", "--input", str(oa), "-o", str(ssoa)]) == 0
    assert main(["construct", "--family", "wraparound", "--t", "2", "--input", str(ssoa), "-o", str(coa)]) == 0
    a = read_array(coa)
    assert a.shape == (8, 4) and a.family == "wraparound" and is_simple_coa(a, 2, 2)
    # the constructed file verifies through the CLI too
    code, out, _ = run(capsys, "verify", "--property", "cda", "--d", "1", "--t", "2", str(coa))
    assert code == 0 and out.rstrip().endswith("optimum")


def test_construct_macneish_and_inflate(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["construct", "--family", "zero-sum", "--t", "2", "--v", "2", "-o", str(a)])
    main(["construct", "--family", "zero-sum", "--t", "2", "--v", "3", "-o", str(b)])
    code, out, _ = run(capsys, "construct", "--family", "macneish", "--t", "2", "--input", str(a), "--input", str(b))
    assert code == 0 and parse_array(out).v == 6
    rd = tmp_path / "rd.txt"
    main(["catalog", "show", "rowdiv2-coa3-2-5-2", "-o", str(rd)])
    c3 = tmp_path / "c3.txt"
    z = tmp_path / "z.txt"
    main(["construct", "--family", "zero-sum", "--t", "3", "--v", "3", "-o", str(z)])
    main(["construct", "--family", "column-select", "--t", "2", "--lambda", "3", "--sequence", "1,2,3,4,1", "--input", str(z), "-o", str(c3)])
    capsys.readouterr()
    code, out, _ = run(capsys, "construct", "--family", "inflate", "--t", "2", "--input", str(rd), "--input", str(c3))
    obj = parse_array(out)
    assert code == 0 and obj.parts == ((1, 162), (163, 324))


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--family", "bush", "--t", "3", "--q", "3"],
        ["construct", "--family", "bush", "--t", "2", "--q", "6"],
        ["construct", "--family", "zero-sum", "--t", "2"],
        ["construct", "--family", "recipe", "--v", "30", "--lambda", "29"],
        ["construct", "--family", "wraparound", "--t", "2"],
        ["construct", "--family", "nonsense"],
    ],
)
def test_construct_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err


def test_verify_pass_fail_and_witness(tmp_path, capsys):
    d0 = tmp_path / "d0.txt"
    main(["catalog", "show", "coa4-6-2-derived-0", "-o", str(d0)])
    code, out, _ = run(capsys, "verify", "--property", "coa", "--t", "3", "--lambda", "1", str(d0))
    assert code == 1
    assert "witness" in out and '"columns": [2, 3, 4]' in out
    code, out, _ = run(capsys, "verify", "--property", "coa", "--t", "3", "--lambda", "1", "--json", str(d0))
    assert code == 1 and json.loads(out)["witness"]["kind"] == "coverage"


def test_verify_infeasible_and_env_budget(plan_file, capsys, monkeypatch):
    code, _, err = run(capsys, "verify", "--property", "cda", "--d", "1", "--t", "2", "--budget", "5", str(plan_file))
    assert code == 2 and "budget" in err
    monkeypatch.setenv("CDAKIT_WORK_BUDGET", "5")
    code, _, _ = run(capsys, "verify", "--property", "cda", "--d", "1", "--t", "2", str(plan_file))
    assert code == 2


def test_verify_bound_and_equivalence(plan_file, capsys):
    code, out, _ = run(capsys, "verify", "--property", "bound", "--d", "2", "--t", "2", str(plan_file))
    assert code == 1 and "d >= v" in out
    code, out, _ = run(capsys, "verify", "--property", "equivalence", "--d", "1", "--t", "2", "--json", str(plan_file))
    assert code == 0 and json.loads(out)["params"]["cda"] is True


def test_verify_row_divisible_and_compatible(tmp_path, plan_file, capsys):
    rd = tmp_path / "rd.txt"
    main(["catalog", "show", "rowdiv2-coa3-2-5-2", "-o", str(rd)])
    capsys.readouterr()
    code, _, _ = run(capsys, "verify", "--property", "row-divisible-coa", "--t", "2", "--lambda", "3", str(rd))
    assert code == 0
    code, _, err = run(capsys, "verify", "--property", "row-divisible-coa", "--t", "2", str(plan_file))
    assert code == 2 and "parts" in err
    code, _, _ = run(capsys, "verify", "--property", "compatible", "--t", "2", "--other", str(plan_file), str(plan_file))
    assert code == 1


def test_verify_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--property", "oa", "--t", "2", str(tmp_path / "missing.txt"))
    assert code == 2 and err


def test_simulate_locate_roundtrip(plan_file, tmp_path, capsys):
    code, out, _ = run(capsys, "simulate", str(plan_file), "--fault", "2:1,1")
    assert code == 0
    assert out == "1 pass\n2 fail\n3 pass\n4 pass\n5 fail\n6 pass\n7 pass\n8 pass\n"
    outcomes = tmp_path / "o.txt"
    outcomes.write_text(out)
    code, out, _ = run(capsys, "locate", str(plan_file), str(outcomes), "--d", "1", "--t", "2")
    assert code == 0
    assert json.loads(out) == {
        "verdict": "exact",
        "d": 1,
        "t": 2,
        "candidate_count": 1,
        "failing_rows": [2, 5],
        "faults": [{"start_col": 2, "values": [1, 1]}],
    }


def test_locate_exit_codes(plan_file, tmp_path, capsys):
    over = tmp_path / "over.txt"
    main(["simulate", str(plan_file), "--fault", "1:0,0", "--fault", "1:1,1", "-o", str(over)])
    code, out, _ = run(capsys, "locate", str(plan_file), str(over), "--d", "1", "--t", "2")
    assert code == 3 and json.loads(out)["verdict"] == "exceeds-budget"
    odd = tmp_path / "odd.txt"
    odd.write_text("".join(f"{r} {'fail' if r == 3 else 'pass'}\n" for r in range(1, 9)))
    code, out, _ = run(capsys, "locate", str(plan_file), str(odd), "--d", "1", "--t", "2")
    assert code == 4 and json.loads(out)["verdict"] == "inconsistent"
    short = tmp_path / "short.txt"
    short.write_text("1 pass\n2 fail\n")
    code, _, err = run(capsys, "locate", str(plan_file), str(short), "--d", "1", "--t", "2")
    assert code == 2 and err
    bad = tmp_path / "bad.txt"
    bad.write_text("1 perhaps\n")
    assert run(capsys, "locate", str(plan_file), str(bad), "--d", "1", "--t", "2")[0] == 2


def test_simulate_bad_fault(plan_file, capsys):
    assert run(capsys, "simulate", str(plan_file), "--fault", "9:1,1")[0] == 2
    assert run(capsys, "simulate", str(plan_file), "--fault", "nonsense")[0] == 2


def test_export_csv(plan_file, capsys):
    code, out, _ = run(capsys, "export", str(plan_file))
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["factor_1", "factor_2", "factor_3", "factor_4"]
    assert len(rows) == 9 and rows[1] == ["0", "0", "0", "0"]


def test_export_json_with_levels(plan_file, tmp_path, capsys):
    levels = tmp_path / "levels.json"
    levels.write_text(json.dumps({"factor_1": ["off", "on"]}))
    code, out, _ = run(capsys, "export", str(plan_file), "--format", "json", "--levels", str(levels))
    doc = json.loads(out)
    assert code == 0 and doc["N"] == 8 and doc["factors"][0] == "factor_1"
    assert doc["tests"][0] == ["off", 0, 0, 0]
    shared = tmp_path / "shared.json"
    shared.write_text(json.dumps(["lo", "hi"]))
    code, out, _ = run(capsys, "export", str(plan_file), "--levels", str(shared))
    assert out.splitlines()[1] == "lo,lo,lo,lo"


def test_export_rejects_empty_or_invalid(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run(capsys, "export", str(empty))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2 2\n0 1\n")
    assert run(capsys, "export", str(bad))[0] == 2
    levels = tmp_path / "levels.json"
    levels.write_text('["only-one"]')
    good = tmp_path / "good.txt"
    good.write_text("1 1 2\n1\n")
    assert run(capsys, "export", str(good), "--levels", str(levels))[0] == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    names = [line.split("\t")[0] for line in out.splitlines()]
    assert names == list(SEEDS)
    code, out, _ = run(capsys, "catalog", "show", "coa4-6-2")
    assert code == 0 and parse_array(out).shape == (16, 6)
    assert run(capsys, "catalog", "show", "nosuch")[0] == 2
    assert run(capsys, "catalog", "show")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "locate", "a", "b")[0] == 2
    assert run(capsys, "--help")[0] == 0


@pytest.mark.parametrize("name", list(SEEDS))
def test_catalog_show_roundtrips_through_parse(name, capsys):
    from cdakit.arrayfile import format_array

    code, out, _ = run(capsys, "catalog", "show", name)
    assert code == 0
    assert format_array(parse_array(out)) == out


def test_worked_cli_examples(plan_file, tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "--family", "zero-sum", "--t", "3", "--v", "2")
    assert code == 0 and parse_array(out).shape == (8, 4)
    code, out, _ = run(capsys, "construct", "--family", "bush", "--t", "3", "--q", "4")
    assert code == 0 and parse_array(out).shape == (64, 5)
    coa27 = tmp_path / "coa27.txt"
    main(["catalog", "show", "coa3-2-6-3", "-o", str(coa27)])
    capsys.readouterr()
    assert run(capsys, "verify", "--property", "simple-coa", "--t", "2", "--lambda", "3", str(coa27))[0] == 0
    cca = tmp_path / "cca.txt"
    main(["catalog", "show", "cca-9-2-21-3", "-o", str(cca)])
    capsys.readouterr()
    code, out, _ = run(capsys, "export", str(cca))
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 10 and len(rows[0]) == 21
    quiet = tmp_path / "quiet.txt"
    quiet.write_text("".join(f"{r} pass\n" for r in range(1, 9)))
    code, out, _ = run(capsys, "locate", str(plan_file), str(quiet), "--d", "1", "--t", "2")
    assert code == 0 and json.loads(out)["faults"] == []


def test_module_entry_point(plan_file):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "cdakit", "verify", "--property", "coa", "--t", "2", str(plan_file)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("coa: PASS")
