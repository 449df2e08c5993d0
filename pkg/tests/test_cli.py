import json

import pytest

from stackyhasse.cli import EXIT_CODES, main
from stackyhasse.decider import Outcome


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exit_codes_total():
    assert set(EXIT_CODES) == set(Outcome)
    assert sorted(EXIT_CODES.values()) == [0, 2, 3]


class TestDecide:
    def test_three_two_five(self, capsys):
        code, out, _ = run(capsys, "decide", "3,2,5")
        assert code == 2
        assert "OBSTRUCTION" in out and "d = -7" in out
        table = [l.split() for l in out.splitlines() if l.split() and l.split()[0] in ("inf", "2", "7")]
        assert [(r[0], r[1]) for r in table] == [("inf", "+1"), ("2", "-1"), ("7", "-1")]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "decide", "3,2,5", "--json")
        rec = json.loads(out)
        assert code == 2
        assert rec["outcome"] == "obstruction" and rec["witness_class"] == -7
        assert rec["epsilon"] == {"inf": 1, "2": -1, "7": -1}
        assert set(rec) == {"a", "b", "c", "q", "outcome", "witness_class", "witness_x",
                            "witness_y", "beh_order", "epsilon", "height_bound"}

    def test_sign_corrected_large_form(self, capsys):
        code, out, _ = run(capsys, "decide", "3,1,850", "--json")
        rec = json.loads(out)
        assert code == 2 and rec["witness_class"] == -31 and rec["q"] == -10199
        assert rec["epsilon"]["inf"] == 1 and rec["epsilon"]["2"] == 1 and rec["epsilon"]["31"] == -1

    def test_exists(self, capsys):
        code, out, _ = run(capsys, "decide", "1,0,1")
        assert code == 0 and "[1:0]" in out
        code, out, _ = run(capsys, "decide", "1,0,1", "--json")
        rec = json.loads(out)
        assert (rec["witness_x"], rec["witness_y"]) == (1, 0)

    def test_negative_leading_coefficient(self, capsys):
        code, out, _ = run(capsys, "decide", "-3,-2,-5")
        assert code == 2 and "-3x^2 - 2xy - 5y^2" in out

    def test_degenerate(self, capsys):
        code, out, _ = run(capsys, "decide", "2,4,2")
        assert code == 3 and "DEGENERATE" in out

    @pytest.mark.parametrize("text", ["3,2", "x,y,z", ""])
    def test_parse_error(self, capsys, text):
        code, _, err = run(capsys, "decide", text)
        assert code == 1 and err


class TestInvariants:
    def test_genus_half(self, capsys):
        code, out, _ = run(capsys, "invariants", "(0;2,2)")
        assert code == 0
        assert "1/2" in out and "Z/2" in out and "simply connected  no" in out

    def test_icosahedral(self, capsys):
        _, out, _ = run(capsys, "invariants", "(0;2,3,5)")
        assert "59/60" in out and "Pic^0             0" in out and "simply connected  no" in out

    def test_plain(self, capsys):
        _, out, _ = run(capsys, "invariants", "(0;)")
        assert "genus             0" in out and "simply connected  yes" in out

    def test_point_list(self, capsys):
        _, out, _ = run(capsys, "invariants", "(1,2);(1,2);(1,2)")
        assert "Z/2 x Z/2" in out and "3/4" in out

    def test_bad_input(self, capsys):
        code, _, err = run(capsys, "invariants", "nonsense")
        assert code == 1 and err


class TestSearch:
    def test_found(self, capsys):
        code, out, _ = run(capsys, "search", "1,0,1", "--height", "10")
        assert code == 0 and "integral point [1:0]" in out

    def test_none(self, capsys):
        _, out, _ = run(capsys, "search", "3,2,5", "--height", "1000")
        assert "no integral point of height <= 1000" in out
        assert "candidates tested: 1216768" in out

    def test_stacky(self, capsys):
        _, out, _ = run(capsys, "search", "0,1,0", "--height", "1")
        assert "stacky point [1:0]" in out

    def test_degenerate_rejected(self, capsys):
        code, _, _ = run(capsys, "search", "1,2,1", "--height", "3")
        assert code == 1


class TestScan:
    def test_scan(self, capsys, tmp_path):
        out = tmp_path / "c.csv"
        code, stdout, _ = run(capsys, "scan", "--a-range", "3:3", "--b-range", "2:2", "--c-range", "5:5",
                              "--height", "100", "--out", str(out))
        assert code == 0
        summary = json.loads(stdout)
        assert summary["obstruction"] == 1
        assert "3,2,5,-56,obstruction,-7" in out.read_text()

    def test_bad_range(self, capsys, tmp_path):
        code, _, _ = run(capsys, "scan", "--a-range", "x", "--b-range", "0:0", "--c-range", "0:0",
                         "--out", str(tmp_path / "c.csv"))
        assert code == 1

    def test_unwritable(self, capsys, tmp_path):
        code, _, err = run(capsys, "scan", "--a-range", "1:1", "--b-range", "0:0", "--c-range", "1:1",
                           "--out", str(tmp_path / "no" / "c.csv"))
        assert code == 1 and err
