import csv
import io
import json

import pytest

from snorm.cli import main
from snorm.vector import SparseVector, basis, y_qr


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_norm_basis_vector(tmp_path, capsys):
    path = write(tmp_path, "b1.json", basis(1).to_json())
    code, out, _ = run(capsys, ["norm", path])
    assert code == 0
    assert json.loads(out) == {
        "p": 2,
        "p_power": "1/1",
        "decimal": "1.000000000000",
        "certificate": [[1]],
    }


def test_norm_y34_csv(tmp_path, capsys):
    path = write(tmp_path, "y.json", y_qr(3, 4).to_json())
    code, out, _ = run(capsys, ["norm", path, "--format", "csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["p", "p_power", "decimal", "certificate"]
    assert rows[1][:3] == ["2", "25/144", "0.416666666667"]


def test_norm_empty_vector(tmp_path, capsys):
    path = write(tmp_path, "z.json", {"entries": []})
    code, out, _ = run(capsys, ["norm", path])
    assert code == 0
    data = json.loads(out)
    assert data["p_power"] == "0/1" and data["certificate"] == []


def test_float_exponent(tmp_path, capsys):
    path = write(tmp_path, "b1.json", basis(1).to_json())
    code, out, _ = run(capsys, ["norm", path, "--p", "2.5"])
    assert code == 0
    assert json.loads(out)["p"] == 2.5


def test_certify_replays(tmp_path, capsys):
    x = SparseVector({1: 1, 2: "-1/2", 3: "1/3", 9: 2})
    path = write(tmp_path, "x.json", x.to_json())
    code, out, _ = run(capsys, ["certify", path, "--p", "3"])
    data = json.loads(out)
    assert code == 0
    assert data["match"] is True
    assert data["replayed_p_power"] == data["p_power"]


def test_out_file(tmp_path, capsys):
    path = write(tmp_path, "b1.json", basis(1).to_json())
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, ["norm", path, "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["p_power"] == "1/1"


@pytest.mark.parametrize(
    "content,fragment",
    [
        ('{\n "entries": [', "2:14"),
        ('{"entries": [[1, 0.5]]}', "exact rational"),
        ('{"entries": [[2, "1/1"], [1, "1/1"]]}', "increasing"),
    ],
)
def test_bad_input_exit_2(tmp_path, capsys, content, fragment):
    path = write(tmp_path, "bad.json", content)
    code, _, err = run(capsys, ["norm", path])
    assert code == 2
    assert fragment in err


def test_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, ["norm", str(tmp_path / "nope.json")])
    assert code == 2 and "nope.json" in err


def test_growth_json(capsys):
    code, out, _ = run(capsys, ["growth", "--q-max", "4"])
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["rows"][0]["diag_norm"] == "19/20"
    assert data["rows"][0]["y_norm_p_power"] == "869/3600"


def test_growth_large_gate(capsys):
    code, _, err = run(capsys, ["growth", "--q-max", "8"])
    assert code == 2 and "--large" in err


def test_growth_csv_header(capsys):
    code, out, _ = run(capsys, ["growth", "--q-max", "3", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0][0] == "q" and rows[1][0] == "3" and rows[1][-1] == "ok"


def test_verify_suite_lines(capsys):
    code, out, err = run(capsys, ["verify", "calclemma", "--format", "csv"])
    assert code == 0
    assert "PASS calclemma/strict-inequality 1000/1000" in err
    assert out.splitlines()[0] == "suite,property,passed,total,status,details"


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, ["verify", "nope"])
    assert code == 2 and "available" in err


def test_verify_is_byte_identical(capsys):
    first = run(capsys, ["verify", "bng4", "--seed", "7"])
    second = run(capsys, ["verify", "bng4", "--seed", "7"])
    assert first == second


def test_sandwich_random_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, ["sandwich", "--cases", "3"])
    data = json.loads(out)
    assert code == 0 and data["ok"] and len(data["records"]) == 3
    blocks = {"blocks": [basis(1).to_json(), basis(2).to_json(), basis(5).to_json()], "k": [1, 2, 4]}
    path = write(tmp_path, "blocks.json", blocks)
    code, out, _ = run(capsys, ["sandwich", path])
    data = json.loads(out)
    assert code == 0 and data["seed"] is None and data["ok"]


def test_sandwich_bad_file(tmp_path, capsys):
    path = write(tmp_path, "blocks.json", {"nope": []})
    code, _, err = run(capsys, ["sandwich", path])
    assert code == 2 and "blocks" in err


def test_sandwich_misplaced_block(tmp_path, capsys):
    path = write(tmp_path, "blocks.json", {"blocks": [basis(2).to_json()]})
    code, _, _ = run(capsys, ["sandwich", path])
    assert code == 2


def test_bad_seed():
    with pytest.raises(SystemExit) as info:
        main(["verify", "calclemma", "--seed", "-1"])
    assert info.value.code == 2
