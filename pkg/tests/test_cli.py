"""End-to-end CLI behavior: round trips, exit codes, byte reproducibility.

Every invocation goes through main(argv) in-process; outputs land in
tmp_path.  Data files must be byte-identical across reruns and worker
counts; manifests may differ only in their wall clock.
"""

import json

from disjointpairs.cli import (FRONTIER_HEADER, PROFILE_HEADER, SCAN_HEADER,
                               main)
from disjointpairs.sets import IntSet


def run(*argv):
    return main([str(a) for a in argv])


def read_manifest(path):
    obj = json.loads(path.read_text())
    clock = obj.pop("wall_clock_utc")
    assert clock.endswith("+00:00")
    return obj


# ---------------------------------------------------------------------------
# construct / verify round trips

def test_construct_verify_profile_round_trip(tmp_path, capsys):
    pair = tmp_path / "base3.json"
    assert run("construct", "--family", "base", "--k", 3, "--limit", 2000,
               "--out", pair) == 0
    obj = json.loads(pair.read_text())
    assert obj["family"] == "base-3"
    a = IntSet.from_json(obj["a"])
    assert a.limit == 2000 and 0 in a and 1 in a

    assert run("verify", "--pair", pair,
               "--report", tmp_path / "verify.json") == 0
    report = json.loads((tmp_path / "verify.json").read_text())
    assert report["disjoint"] is True and report["violations"] == []
    assert all(int(r["product_margin"]) >= 0 for r in report["rows"])

    csv = tmp_path / "prof.csv"
    assert run("profile", "--pair", pair, "--grid", "geometric:10:2000",
               "--csv", csv, "--report", tmp_path / "prof.json",
               "--tail-start", 100) == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == PROFILE_HEADER
    assert len(lines) > 50
    rep = json.loads((tmp_path / "prof.json").read_text())
    assert rep["family"] == "base-3" and rep["skipped"] == []
    assert float(rep["in_estimate"]) > 0
    out = capsys.readouterr().out
    assert "verify: ok" in out and "profile:" in out


def test_construct_mixed_and_witness_families(tmp_path):
    pair = tmp_path / "m.json"
    assert run("construct", "--family", "mixed", "--moduli", "2,3",
               "--limit", 5, "--out", pair) == 0
    obj = json.loads(pair.read_text())
    assert obj["a"]["elems"] == ["0", "1"]
    assert obj["b"]["elems"] == ["0", "2", "4"]

    wit = tmp_path / "w.json"
    assert run("construct", "--family", "witness", "--seed-moduli", "2,2",
               "--k", 2, "--out", wit) == 0
    obj = json.loads(wit.read_text())
    assert obj["family"] == "witness-2" and obj["probe"] == "205"
    assert obj["a"]["limit"] == "410"  # defaults to twice the probe
    assert [int(m) for m in obj["spec"]["moduli"]][:4] == [2, 2, 4, 12]
    assert run("verify", "--pair", wit) == 0


def test_construct_pow2_and_validation(tmp_path):
    assert run("construct", "--family", "pow2", "--limit", 500,
               "--out", tmp_path / "p.json") == 0
    # missing required knobs are usage errors, not crashes
    assert run("construct", "--family", "pow2",
               "--out", tmp_path / "q.json") == 2
    assert run("construct", "--family", "mixed", "--moduli", "2,1",
               "--limit", 5, "--out", tmp_path / "r.json") == 2


def test_verify_names_the_shared_difference(tmp_path, capsys):
    pair = tmp_path / "ok.json"
    run("construct", "--family", "pow2", "--limit", 100, "--out", pair)
    obj = json.loads(pair.read_text())
    # corrupt: 3 creates difference 2 on side A, which side B also has
    elems = sorted(int(e) for e in obj["a"]["elems"]) + [3]
    obj["a"]["elems"] = [str(e) for e in sorted(elems)]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    assert run("verify", "--pair", bad) == 1
    assert "shared difference 2" in capsys.readouterr().err


def test_profile_past_certified_limit(tmp_path, capsys):
    pair = tmp_path / "p.json"
    run("construct", "--family", "pow2", "--limit", 100, "--out", pair)
    csv = tmp_path / "prof.csv"
    assert run("profile", "--pair", pair, "--grid", "points:50,100,200",
               "--csv", csv) == 2
    assert "past certified limit 100" in capsys.readouterr().err
    assert run("profile", "--pair", pair, "--grid", "points:50,100,200",
               "--csv", csv, "--allow-partial",
               "--report", tmp_path / "rep.json") == 0
    rep = json.loads((tmp_path / "rep.json").read_text())
    assert rep["skipped"] == ["200"] and rep["rows"] == 2


def test_profile_from_spec_file_with_probe_grid(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"moduli": ["2", "2", "4", "12", "48"]}))
    csv = tmp_path / "prof.csv"
    assert run("profile", "--spec", spec, "--grid", "probes:1:9000",
               "--csv", csv) == 0
    xs = [int(line.split(",")[0]) for line in
          csv.read_text().splitlines()[1:]]
    assert 205 in xs and 410 in xs
    assert run("profile", "--spec", spec, "--grid", "bogus:1:2",
               "--csv", csv) == 2


# ---------------------------------------------------------------------------
# fit

def test_fit_cli(tmp_path, capsys):
    out = tmp_path / "fit.json"
    assert run("fit", "--targets", "9,100", "--out", out) == 0
    obj = json.loads(out.read_text())
    assert obj["moduli"] == ["2", "4", "2", "5"]
    w1, w2 = obj["windows"]
    assert (w1["lower"], w1["upper"]) == ("9", "12")
    assert (w2["lower"], w2["upper"]) == ("89", "112")
    assert w2["bound"] == {"num": "10", "den": "7"}
    text = capsys.readouterr().out
    assert "window [9, 12]" in text and "ratio >= 10/7" in text

    assert run("fit", "--targets", "9,10", "--out", tmp_path / "bad.json") == 2
    assert "10" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# scan

def test_scan_cli_frozen_table(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"moduli": ["2", "2", "4", "12", "48"]}))
    csv = tmp_path / "scan.csv"
    assert run("scan", "--spec", spec, "--anchor", 205, "--csv", csv,
               "--report", tmp_path / "scan.json") == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == SCAN_HEADER
    assert lines[1:] == [
        "1,4,51,8,8,64,51",
        "1,2,102,8,14,56,51",
        "3,4,153,8,20,160,153",
        "1,1,205,16,24,384,205",
        "5,4,256,16,24,384,205",
        "3,2,307,16,24,384,205",
        "2,1,410,24,24,576,205",
    ]
    rep = json.loads((tmp_path / "scan.json").read_text())
    assert rep["half_a"] == {"num": "1", "den": "2"}
    assert rep["half_b"] == {"num": "7", "den": "12"}


# ---------------------------------------------------------------------------
# search

def test_search_cli_and_worker_bytes(tmp_path, capsys):
    out1 = tmp_path / "s1.json"
    assert run("search", "--n", 4, "--objective", "product",
               "--out", out1) == 0
    obj = json.loads(out1.read_text())
    assert obj["value"] == 8 and obj["optimal"] is True
    assert obj["witnesses"][0]["a"]["elems"] == ["0", "1", "2", "3"]
    assert obj["witnesses"][0]["b"]["elems"] == ["0", "4"]
    assert "value=8" in capsys.readouterr().out

    outs = []
    for tag, workers in (("a", 1), ("b", 8)):
        out = tmp_path / f"bnb_{tag}.json"
        assert run("search", "--n", 14, "--objective", "min", "--engine",
                   "bnb", "--workers", workers, "--out", out) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    obj = json.loads(outs[0])
    assert obj["stats"]["engine"] == "branch-and-bound"

    # raw validation mode reaches the same artifact values
    raw = tmp_path / "raw.json"
    assert run("search", "--n", 6, "--objective", "product", "--raw",
               "--out", raw) == 0
    assert json.loads(raw.read_text())["value"] == 12


def test_search_cli_refusals(tmp_path):
    assert run("search", "--n", 40, "--objective", "sum",
               "--engine", "exhaustive", "--out", tmp_path / "x.json") == 2


# ---------------------------------------------------------------------------
# frontier

def test_frontier_cli(tmp_path, capsys):
    csv = tmp_path / "front.csv"
    assert run("frontier", "--base-k", "2..10", "--pow2", "--csv", csv) == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == FRONTIER_HEADER
    assert len(lines) == 11  # 9 bases plus pow2
    assert lines[1] == "base-2,1,2,0.707106781187,1"
    assert lines[-1].startswith("pow2,1,2,")

    # finite search points are advisory-only: exit stays 0
    assert run("frontier", "--search-n", "4", "--csv",
               tmp_path / "s.csv") == 0
    err = capsys.readouterr().err
    assert "advisory" in err and "VIOLATED" in err
    assert "Infinity" in (tmp_path / "s.csv").read_text()

    assert run("frontier", "--csv", tmp_path / "none.csv") == 2
    assert run("frontier", "--search-n", "0", "--csv",
               tmp_path / "zero.csv") == 2


# ---------------------------------------------------------------------------
# reproducibility

def test_reruns_are_byte_identical(tmp_path):
    files = {}
    for tag in ("one", "two"):
        d = tmp_path / tag
        d.mkdir()
        run("construct", "--family", "base", "--k", 3, "--limit", 5000,
            "--out", d / "pair.json")
        run("profile", "--pair", d / "pair.json",
            "--grid", "geometric:10:5000", "--grid", "powers:3:10:5000",
            "--csv", d / "prof.csv", "--report", d / "rep.json")
        run("frontier", "--base-k", "2..30", "--csv", d / "front.csv")
        files[tag] = d
    def normalized(d, name):
        m = read_manifest(d / f"{name}.manifest.json")
        # recorded path arguments legitimately differ between run dirs
        m["arguments"] = {k: (v.rsplit("/", 1)[-1] if str(d) in v else v)
                          for k, v in m["arguments"].items()}
        return m

    for name in ("pair.json", "prof.csv", "rep.json", "front.csv"):
        assert (files["one"] / name).read_bytes() == \
            (files["two"] / name).read_bytes(), name
        # manifests agree except for the clock and the run directory
        assert normalized(files["one"], name) == normalized(files["two"], name)


def test_manifest_contents(tmp_path):
    out = tmp_path / "pair.json"
    run("construct", "--family", "pow2", "--limit", 64, "--out", out)
    manifest = read_manifest(tmp_path / "pair.json.manifest.json")
    assert manifest["tool"] == "disjointpairs"
    assert manifest["command"] == "construct"
    assert manifest["output"] == "pair.json"
    assert manifest["arguments"]["family"] == "pow2"
    assert manifest["arguments"]["limit"] == "64"
    assert "func" not in manifest["arguments"]
