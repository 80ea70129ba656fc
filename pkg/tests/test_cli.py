import json

import pytest

from distrel.classes import canonical_code
from distrel.cli import EXIT_CAPACITY, EXIT_USAGE, UsageError, main, parse_rho
from distrel.ttgio import format_ttg, parse_ttg


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def double_star(tmp_path, capsys):
    path = tmp_path / "a4.ttg"
    assert main(["construct", "--family", "A", "--n", "4", "--r", "0", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def test_construct_H_odd_case(capsys):
    code, out, _ = run(capsys, "construct", "--family", "H", "--n", "6", "--m", "9")
    assert code == 0
    G = parse_ttg(out)
    assert G.m == 9 and all(G.has_edge(0, v) and G.has_edge(1, v) for v in range(2, 6))


def test_construct_round_trip(tmp_path, capsys):
    path = tmp_path / "g.ttg"
    main(["construct", "--family", "G", "--n", "11", "--m", "20", "-o", str(path)])
    first = path.read_text()
    assert format_ttg(parse_ttg(first)) == first


def test_eval_exact(double_star, capsys):
    code, out, _ = run(capsys, "eval", "--d", "2", "--rho", "1/2", "-i", str(double_star))
    assert code == 0 and "R = 23/32" in out
    code, out, _ = run(capsys, "eval", "--d", "2", "--rho", "1/2", "--rho", "1",
                       "-i", str(double_star), "--format", "json")
    rows = json.loads(out)
    assert rows[0] == {"rho": "1/2", "R": "23/32", "U": "9/32"}
    assert rows[1]["R"] == "0/1"


def test_decimal_rho_rejected_with_hint(double_star, capsys):
    code, _, err = run(capsys, "eval", "--d", "2", "--rho", "0.25", "-i", str(double_star))
    assert code == EXIT_USAGE and "1/4" in err


@pytest.mark.parametrize("text", ["3/2", "-1/2", "abc", "1/0", "1e-3"])
def test_bad_rho(text):
    with pytest.raises(UsageError):
        parse_rho(text)


def test_census_formats(double_star, capsys):
    code, out, _ = run(capsys, "census", "--d", "3", "-i", str(double_star), "--format", "json")
    assert json.loads(out)["counts"] == ["1", "6", "10", "5", "1"]
    code, out, _ = run(capsys, "census", "--d", "3", "-i", str(double_star), "--format", "csv")
    assert out.splitlines()[:2] == ["i,N_i", "1,1"]


def test_capacity_exit_code(double_star, capsys):
    code, _, err = run(capsys, "census", "--d", "3", "-i", str(double_star),
                       "--backend", "subset-enum", "--max-m", "3")
    assert code == EXIT_CAPACITY and "capacity" in err
    code, _, _ = run(capsys, "enumerate", "--n", "9", "--m", "3", "--count-only")
    assert code == EXIT_CAPACITY


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "census", "--d", "3")[0] == EXIT_USAGE
    assert run(capsys, "umrttg", "--n", "6", "--m", "7")[0] == EXIT_USAGE
    assert run(capsys, "umrttg", "--n", "6", "--m", "7", "--d", "3", "--workers", "0")[0] == EXIT_USAGE


def test_umrttg_winner(capsys):
    code, out, _ = run(capsys, "umrttg", "--n", "6", "--m", "7", "--d", "3", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["umrttg"]["status"] == "exists"
    code, H, _ = run(capsys, "construct", "--family", "H", "--n", "6", "--m", "7")
    assert report["umrttg"]["winners"] == [str(canonical_code(parse_ttg(H)))]


def test_enumerate_stream(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--m", "3")
    blocks = [b for b in out.split("\n\n") if b.strip()]
    assert len(blocks) == 8
    assert run(capsys, "enumerate", "--n", "4", "--m", "3", "--count-only")[1].strip() == "8"


def test_compare_and_transform(tmp_path, capsys):
    g = tmp_path / "g.ttg"
    h = tmp_path / "h.ttg"
    main(["construct", "--family", "G", "--n", "11", "--m", "20", "-o", str(g)])
    main(["construct", "--family", "A", "--n", "11", "--r", "1", "-o", str(h)])
    capsys.readouterr()
    code, out, _ = run(capsys, "compare", "--d", "4", "-i", str(g), "--other", str(h), "--format", "json")
    assert json.loads(out)["kind"] == "crossing"
    p = tmp_path / "p.ttg"
    p.write_text("ttg 6 6\nterminals 0 1\n0 2\n0 3\n1 2\n1 3\n2 4\n3 5\n")
    code, out, _ = run(capsys, "transform", "-i", str(p), "--format", "json")
    assert code == 0 and json.loads(out)["certificate"]["verified"]


def test_csv_table(capsys):
    code, out, _ = run(capsys, "lmrttg", "--n", "6", "--m", "9", "--d", "3", "--format", "csv")
    lines = out.splitlines()
    assert lines[0].startswith("code,N_1,") and len(lines) == 2


def test_audits_and_suite(capsys):
    assert run(capsys, "audit-near0", "--n", "6", "--m", "15", "--d", "3")[0] == 0
    assert run(capsys, "verify-n4", "--n", "7", "--m", "19")[0] == 0
    code, out, _ = run(capsys, "verify-crossing", "--n", "11", "--m", "20", "--d", "4",
                       "--rho", "1/2", "--format", "json")
    assert code == 0 and json.loads(out)["holds"]
    assert run(capsys, "verify-crossing", "--n", "11", "--m", "20", "--d", "4", "--rho", "0")[0] == 1
    code, out, _ = run(capsys, "verify-suite", "um-recurrences")
    assert code == 0 and out.startswith("PASS um-recurrences")


def test_reports_contain_no_floats(capsys):
    _, out, _ = run(capsys, "umrttg", "--n", "6", "--m", "13", "--d", "4", "--format", "json")
    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert not isinstance(x, float)
    walk(json.loads(out))
