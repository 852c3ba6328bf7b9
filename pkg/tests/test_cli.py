from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cidc import generators as G
from cidc.catalog import catalog_text, load_catalog
from cidc.cli import main
from cidc.io import write_graph6, write_multipole
from cidc.reductions import certificate_to_json, certify_planar_bound


def run(capsys, *argv, stdin: str | None = None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_steps(node: dict) -> list[dict]:
    """Steps of a certificate JSON in preorder."""
    out = []
    stack = [node]
    while stack:
        n = stack.pop()
        for s in n.get("steps", []):
            out.append(s)
            stack.extend(reversed(s["children"]))
    return out


class TestCount:
    def test_k4_stdin(self, capsys, monkeypatch):
        code, out, err = run(capsys, "count", stdin="C~\n", monkeypatch=monkeypatch)
        assert code == 0 and out == "2\n" and "engine" in err

    def test_theta_multipole(self, capsys, tmp_path):
        p = tmp_path / "theta.txt"
        p.write_text(write_multipole(G.theta()))
        assert run(capsys, "count", str(p), "--format", "multipole")[:2] == (0, "1\n")

    @pytest.mark.parametrize("engine", ["brute", "backtrack", "dp", "auto"])
    def test_petersen_engines(self, capsys, tmp_path, engine):
        p = tmp_path / "p.g6"
        p.write_text(write_graph6(G.petersen()) + "\n")
        assert run(capsys, "count", str(p), "--engine", engine)[:2] == (0, "52\n")

    def test_parse_error(self, capsys, monkeypatch):
        code, out, err = run(capsys, "count", stdin="C~~~\n", monkeypatch=monkeypatch)
        assert code == 2 and "parse error" in err

    def test_non_cubic(self, capsys, monkeypatch):
        assert run(capsys, "count", stdin="Bw\n", monkeypatch=monkeypatch)[0] == 2

    def test_missing_file(self, capsys):
        assert run(capsys, "count", "/nonexistent/x.g6")[0] == 1

    def test_resource_limit(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv("CIDC_MAX_ASSIGNMENTS", "10")
        p = tmp_path / "p.g6"
        p.write_text(write_graph6(G.petersen()) + "\n")
        assert run(capsys, "count", str(p), "--engine", "brute")[0] == 3

    def test_usage_errors(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["count", "--engine", "nope"])
        assert info.value.code == 1
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 1


class TestScan:
    def test_k4(self, capsys, monkeypatch):
        code, out, err = run(capsys, "scan", stdin="C~\n", monkeypatch=monkeypatch)
        assert code == 0 and out == "4,2\n"
        assert "1 graphs; min ratio 1/1 (approx 1.0000)" in err and "index 0" in err

    def test_empty(self, capsys, monkeypatch):
        code, out, err = run(capsys, "scan", stdin="", monkeypatch=monkeypatch)
        assert code == 0 and out == "" and err.strip() == "0 graphs"

    def test_skips_bad_lines(self, capsys, monkeypatch):
        code, out, err = run(capsys, "scan", stdin="C~\nBw\nC~\n", monkeypatch=monkeypatch)
        assert out == "4,2\n4,2\n" and "2 graphs, 1 skipped" in err and "warning" in err

    def test_order_and_workers(self, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(catalog_text("girth5"))
        outs = []
        for w in ("1", "2"):
            csv = tmp_path / f"out{w}.csv"
            res = subprocess.run(
                [sys.executable, "-m", "cidc", "scan", str(src), "--csv", str(csv), "--workers", w],
                capture_output=True, text=True, check=True,
            )
            outs.append(csv.read_bytes())
            assert "min ratio 13/4" in res.stderr
        assert outs[0] == outs[1]
        lines = outs[0].decode().splitlines()
        assert len(lines) == len(load_catalog("girth5")) and lines[0] == "10,52"


class TestCertify:
    def test_theta(self, capsys, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text(write_multipole(G.theta()))
        code, out, _ = run(capsys, "certify", str(p), "--format", "multipole")
        assert code == 0 and out.splitlines()[0] == "bound 1/1"

    def test_k4(self, capsys, monkeypatch):
        code, out, _ = run(capsys, "certify", stdin="C~\n", monkeypatch=monkeypatch)
        lines = out.splitlines()
        assert code == 0 and lines[0] == "bound 2/1"
        assert lines[1] == "target (5/2)^(2/4) (approx 1.5811)"
        assert lines[2] == "check bound^4 = 16/1 >= (5/2)^2 = 25/4: ok"

    def test_roundtrip_and_tamper(self, capsys, tmp_path):
        g = next(h for h in load_catalog("planar", max_n=14)
                 if len(json_steps(certificate_to_json(certify_planar_bound(h)))) >= 3
                 and json_steps(certificate_to_json(certify_planar_bound(h)))[2]["kind"] == "cycle4")
        src = tmp_path / "g.g6"
        src.write_text(write_graph6(g) + "\n")
        cert = tmp_path / "c.json"
        assert run(capsys, "certify", str(src), "--out", str(cert))[0] == 0
        assert run(capsys, "verify", str(cert))[:2] == (0, "VALID\n")
        data = json.loads(cert.read_text())
        json_steps(data)[2]["factor"] = {"num": 5, "den": 1}
        cert.write_text(json.dumps(data))
        code, out, _ = run(capsys, "verify", str(cert))
        assert code == 4 and out == "INVALID: step 3 factor mismatch\n"

    def test_verify_bad_json(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        assert run(capsys, "verify", str(p))[0] == 2
        p.write_text("{}")
        assert run(capsys, "verify", str(p))[0] == 2

    def test_certify_needs_one_graph(self, capsys, monkeypatch):
        assert run(capsys, "certify", stdin="C~\nC~\n", monkeypatch=monkeypatch)[0] == 1

    def test_certify_dead_end(self, capsys, tmp_path):
        import networkx as nx

        p = tmp_path / "h.g6"
        p.write_text(nx.to_graph6_bytes(nx.heawood_graph(), header=False).decode())
        assert run(capsys, "certify", str(p))[0] == 4


class TestTools:
    def test_boundaries(self, capsys):
        assert run(capsys, "boundaries", "--k", "4")[:2] == (0, "33\n")
        code, out, _ = run(capsys, "boundaries", "--k", "3", "--list")
        assert out == "1\n<(1,2),(1,3),(2,3)|>\n"
        assert run(capsys, "boundaries", "--k", "7")[0] == 1

    def test_lp(self, capsys, tmp_path):
        dump = tmp_path / "lp.json"
        code, out, _ = run(capsys, "lp", "--cycle", "4", "--json", str(dump))
        assert code == 0 and out.splitlines()[0] == "optimum = 1 (certified); factor 4"
        assert len(json.loads(dump.read_text())["variables"]) == 33

    def test_flower(self, capsys):
        code, out, _ = run(capsys, "flower", "--k", "5")
        assert code == 0 and out == "outer-fixed CiDCs: 6 (bound 5: ok; formula: ok)\n"
        assert run(capsys, "flower", "--k", "12")[0] == 1

    @pytest.mark.parametrize("fmt", ["g6", "multipole", "rotation"])
    def test_gen(self, capsys, fmt):
        code, out, _ = run(capsys, "gen", "--family", "petersen", "--format", fmt)
        assert code == 0 and out.strip()
        if fmt == "g6":
            assert out.strip() == write_graph6(G.petersen())

    def test_gen_errors(self, capsys):
        assert run(capsys, "gen", "--family", "nope")[0] == 1
        assert run(capsys, "gen", "--family", "klee")[0] == 1
        assert run(capsys, "gen", "--family", "klee", "--param", "5")[0] == 1

    def test_version_and_module_entry(self):
        res = subprocess.run([sys.executable, "-m", "cidc", "--version"], capture_output=True, text=True)
        assert res.returncode == 0 and res.stdout.startswith("cidc ")
