"""
Tests for the command-line entry point.
"""
import json

from app.main import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pop_prints_population(capsys):
    code, out, _ = run(capsys, "pop", "--corr", "0001", "--sigma", "2")
    assert code == 0
    assert out.strip() == "82"


def test_pop_every_method(capsys):
    for method in ("rec1", "rec2", "nfc", "brute"):
        code, out, _ = run(capsys, "pop", "--corr", "01010", "--method", method)
        assert (code, out.strip()) == (0, "8")


def test_invalid_correlation(capsys):
    code, out, err = run(capsys, "pop", "--corr", "0110", "--sigma", "2")
    assert code == 3
    assert out == ""
    assert "not a valid correlation" in err


def test_usage_errors(capsys):
    assert run(capsys, "pop", "--corr", "0001", "--method", "fast")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "pop", "--corr", "01x1")[0] == 3
    assert run(capsys, "pop", "--corr", "0001", "--sigma", "1")[0] == 3


def test_budget_error(capsys):
    code, _, err = run(capsys, "pop", "--corr", "0001", "--method", "brute", "--budget", "10")
    assert code == 4
    assert "budget" in err


def test_verify_length_4(capsys):
    code, out, _ = run(capsys, "verify", "4", "--sigma", "2")
    report = json.loads(out)
    assert code == 0
    assert report["summary"] == "all methods agree, sum = 256"
    assert report["correlations"] == 11
    assert all(check["passed"] for check in report["checks"])


def test_verify_small_and_example(capsys):
    code, out, _ = run(capsys, "verify", "1")
    assert code == 0
    assert json.loads(out)["correlations"] == 2
    code, out, _ = run(capsys, "verify", "5", "--threads", "2")
    assert code == 0
    assert json.loads(out)["populations"]["01010"] == 8


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "3", "--sigma", "3", "--format", "text")
    assert code == 0
    assert out.strip().endswith("all methods agree, sum = 729")


def test_pop_table_csv(capsys):
    code, out, _ = run(capsys, "pop-table", "4", "--sigma", "2", "3", "4", "5", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "correlation,2,3,4,5"
    assert "0000,74,3678,45132,297020" in lines
    assert "1111,2,3,4,5" in lines
    assert len(lines) == 12


def test_sets(capsys):
    code, out, _ = run(capsys, "gamma", "4")
    assert json.loads(out) == {"n": 4, "kappa": 4, "members": ["1000", "1001", "1010", "1111"]}
    code, out, _ = run(capsys, "delta", "4", "--format", "text")
    assert len(out.split()) == 11
    code, out, _ = run(capsys, "card", "5", "--format", "csv")
    assert out.splitlines()[5].startswith("4,4,11,")


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "001", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["bba aaa", "verified: true"]
    code, out, _ = run(capsys, "realize", "1010", "--auto")
    assert json.loads(out)["word"] == "abab"


def test_lattice(capsys, tmp_path):
    target = tmp_path / "delta4.dot"
    code, out, _ = run(capsys, "lattice", "4", "--check-jd", "--dot", str(target))
    payload = json.loads(out)
    assert code == 0
    assert payload["jordan_dedekind"]["holds"] is False
    assert len(payload["nodes"]) == 11
    assert target.read_text().startswith("digraph delta")
    code, out, _ = run(capsys, "lattice", "4", "--gamma", "--format", "dot")
    assert out.count("[label=") == 4


def test_borders_and_expect(capsys):
    assert run(capsys, "borders", "4", "--range", "0:3")[1].strip() == "240"
    assert run(capsys, "borders", "4", "--range", "3:1")[0] == 3
    code, out, _ = run(capsys, "borders", "4", "--format", "csv")
    assert out.splitlines()[1:] == ["0,74", "1,82", "2,54", "3,30", "4,16"]
    code, out, _ = run(capsys, "expect", "4", "--sigma", "2")
    assert json.loads(out)["value"] == "35/32"


def test_ratio(capsys):
    code, out, _ = run(capsys, "ratio", "--suffix", "1", "--sigma", "2", "--n-max", "6", "--format", "text")
    assert code == 0
    header = out.splitlines()[0]
    assert header.startswith("s = 1, sigma = 2: [")
    lower, upper = (float(x) for x in header.split("[")[1].rstrip(")").split(", "))
    assert abs(lower - 0.300) <= 1e-3 and abs(upper - 0.600) <= 2e-3
    assert len(out.splitlines()) == 1 + 5
    code, _, err = run(capsys, "ratio", "--suffix", "11", "--precision", "5")
    assert code == 3
    assert "precision" in err


def test_classes(capsys):
    code, out, _ = run(capsys, "classes", "2")
    assert json.loads(out)["mutually_unbordered"] == 2


def test_output_is_deterministic(capsys):
    first = run(capsys, "pop-table", "5", "--sigma", "2", "3")[1]
    assert run(capsys, "pop-table", "5", "--sigma", "2", "3")[1] == first


def test_long_correlations(capsys):
    code, out, _ = run(capsys, "pop", "--corr", "1" + "0" * 29)
    assert code == 0
    assert int(out) > 0
    code, _, err = run(capsys, "pop", "--corr", "0" * 10 + "1", "--method", "nfc")
    assert code == 4
    assert "cap" in err
    assert run(capsys, "gamma", "21")[0] == 4


def test_out_of_memory_maps_to_budget_exit(capsys, monkeypatch):
    def exhausted(*args, **kwargs):
        raise MemoryError

    monkeypatch.setattr("app.main.pop_corr", exhausted)
    code, out, err = run(capsys, "pop", "--corr", "0001")
    assert (code, out) == (4, "")
    assert "out of memory" in err
