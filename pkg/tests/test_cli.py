from __future__ import annotations

import json

import pytest

from zcyclic import kernel
from zcyclic.cli import format_cayley_table, main, parse_cayley_text, parse_group_file
from zcyclic.errors import ParseError
from zcyclic.graphs import cyclic_graph, diameter
from zcyclic.zgen import ZParams, enumerate_z_params, isomorphism_oracle, realize


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestParsing:
    def test_table(self, tmp_path):
        G = parse_group_file(write(tmp_path, "c2.table", "2\n0 1\n1 0"))
        assert G.order == 2 and G.source == "file"

    def test_permutations(self, tmp_path):
        G = parse_group_file(write(tmp_path, "s3.perm", "(0 1)\n(0 1 2)"))
        assert G.order == 6 and G.source == "permutations"

    def test_zparams(self, tmp_path):
        G = parse_group_file(write(tmp_path, "g.z", "15:4:2\n"))
        assert G.order == 60
        assert diameter(cyclic_graph(G)).value == 4

    def test_explicit_format(self, tmp_path):
        G = parse_group_file(write(tmp_path, "g.data", "(0 1 2 3)(4 5)\n"), "perm")
        assert G.order == 4

    def test_comments_and_blank_lines(self, tmp_path):
        G = parse_group_file(write(tmp_path, "c3.table", "# C3\n3\n0 1 2\n\n1 2 0\n2 0 1\n"))
        assert G.order == 3

    @pytest.mark.parametrize("name, text, line", [
        ("a.table", "2\n0 1\n1 x\n", 3),
        ("b.table", "3\n0 1 2\n1 2\n2 0 1\n", 3),
        ("c.table", "two\n", 1),
        ("d.perm", "(0 1)\n(0 a)\n", 2),
        ("e.perm", "(0 1) junk\n", 1),
        ("f.z", "15:4\n", 1),
    ])
    def test_parse_errors_carry_line(self, tmp_path, name, text, line):
        with pytest.raises(ParseError) as info:
            parse_group_file(write(tmp_path, name, text))
        assert info.value.line == line

    def test_unknown_extension(self, tmp_path):
        with pytest.raises(ParseError):
            parse_group_file(write(tmp_path, "g.xyz", "1\n0\n"))

    @pytest.mark.parametrize("p", ["7:3:2", "15:4:2", "5:12:4", "3:8:2"])
    def test_table_round_trip(self, p):
        G = realize(ZParams.parse(p))
        H = parse_cayley_text(format_cayley_table(G))
        assert isomorphism_oracle(G, H)
        assert (H.table == G.table).all()


class TestMain:
    def test_generate(self, capsys):
        assert main(["generate", "--order", "60"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 6
        assert lines[4].startswith("15:4:2") and "cyclic_graph_diameter=finite(4)" in lines[4]

    def test_generate_range(self, capsys):
        assert main(["generate", "--range", "20..21", "--params-only"]) == 0
        out = capsys.readouterr().out.split()
        assert out == [str(p) for N in (20, 21) for p in enumerate_z_params(N)]

    def test_verify(self, tmp_path, capsys):
        report = tmp_path / "r.jsonl"
        assert main(["verify", "--max-order", "30", "--report", str(report)]) == 0
        assert "failed=0" in capsys.readouterr().out
        summary = json.loads(report.read_text().splitlines()[-1])
        assert summary["record"] == "summary" and summary["failed"] == 0

    def test_verify_negative_control(self, capsys):
        assert main(["verify", "--max-order", "12", "--corrupt-delta"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_verify_extra_file(self, tmp_path, capsys):
        f = write(tmp_path, "q.perm", "(0 1 2 3)(4 5 6 7)\n(0 4 2 6)(1 7 3 5)\n")
        assert main(["verify", "--max-order", "6", "--extra", str(f)]) == 0

    def test_analyze(self, tmp_path, capsys):
        f = write(tmp_path, "g.z", "7:3:2\n")
        assert main(["analyze", "--in", str(f)]) == 0
        rec = json.loads(capsys.readouterr().out)
        assert rec["flags"]["is_frobenius"] and rec["graphs"]["cyclic"]["components"] == 8

    def test_export_dot(self, tmp_path):
        f = write(tmp_path, "g.z", "15:4:2\n")
        out = tmp_path / "g.dot"
        assert main(["export", "--in", str(f), "--graph", "cyclic", "--format", "dot", "--out", str(out)]) == 0
        assert sum(1 for l in out.read_text().splitlines() if "[label=" in l) == 59

    def test_export_table(self, tmp_path):
        f = write(tmp_path, "s.perm", "(0 1)\n(0 1 2 3)\n")
        out = tmp_path / "s4.table"
        assert main(["export", "--in", str(f), "--format", "table", "--out", str(out)]) == 0
        assert isomorphism_oracle(parse_group_file(out), kernel.symmetric(4))

    def test_export_commuting_of_abelian_fails(self, tmp_path, capsys):
        f = write(tmp_path, "c.z", "1:6:1\n")
        assert main(["export", "--in", str(f), "--graph", "commuting", "--out", str(tmp_path / "x")]) == 1

    @pytest.mark.parametrize("argv", [[], ["verify", "--jobs", "0"], ["generate"],
                                      ["verify", "--max-order", "5000"], ["bogus"]])
    def test_usage_errors(self, argv):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        main(["verify", "--max-order", "20", "--report", str(a)])
        main(["verify", "--max-order", "20", "--report", str(b)])
        strip = lambda p: [l for l in p.read_text().splitlines()[:-1]]
        assert strip(a) == strip(b)
