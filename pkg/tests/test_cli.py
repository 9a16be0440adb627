import json
import subprocess
import sys

import pytest

from cohconf.cli import load_input, main
from cohconf.io import FormatError


def run(capsys, *argv):
    code = main(["--format", "json", *argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_wl_and_inv(capsys):
    code, row, _ = run(capsys, "wl", "catalog:cube")
    assert code == 0 and row["rank"] == 4 and row["n"] == 8
    code, row, _ = run(capsys, "inv", "alt4/orbits=6+4")
    assert code == 0 and row["rank"] == 10 and row["fibers"] == [6, 4]


def test_tsv_output(capsys):
    assert main(["kappa", "catalog:octahedron"]) == 0
    head, line = capsys.readouterr().out.strip().split("\n")
    assert head.split("\t") == ["n", "m", "kappa", "polyhedral"]
    assert line.split("\t") == ["6", "12", "4", "True"]


def test_aut_schurian_iso(capsys):
    assert run(capsys, "aut", "catalog:icosahedron")[1]["order"] == 120
    assert run(capsys, "schurian", "catalog:dodecahedron")[1]["schurian"] is True
    row = run(capsys, "iso", "catalog:icosahedron", "alt5xC2/orbits=12")[1]
    assert row["isomorphic"] and sorted(row["map"]) == list(range(12))
    assert run(capsys, "iso", "empty:5", "empty:6")[1]["isomorphic"] is False


def test_tensor_rows(capsys):
    code, rows, _ = run(capsys, "tensor", "complete:4")
    assert code == 0
    # rank 2: c[1,1,0] = 3 and c[1,1,1] = 2
    table = {(r["r"], r["s"], r["t"]): r["c"] for r in rows}
    assert table[(1, 1, 0)] == 3 and table[(1, 1, 1)] == 2


def test_s2_and_rigid(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    coords = tmp_path / "pts.json"
    row = run(capsys, "s2", "catalog:icosahedron", "--coordinates", str(coords))[1]
    assert row["W"] == 4 and row["faithful"] and row["antipodal_classes"] == 6
    assert len(json.loads(coords.read_text())["points"]) == 12
    code, row, _ = run(capsys, "rigid", "catalog:disdyakis_dodecahedron", "--matrix", "hint",
                       "--eigenvalue", "hint", "--certificate", str(cert))
    assert code == 0 and row["rigid"] and row["replay"]
    assert json.loads(cert.read_text())["result"] == "rigid"


def test_non_injective_map(capsys):
    code, _, err = run(capsys, "s2", "catalog:mobius_kantor", "--matrix", "A", "--eigenvalue", "1")
    assert code == 2 and "not injective" in err
    code, row, _ = run(capsys, "s2", "catalog:mobius_kantor", "--matrix", "A", "--eigenvalue", "1",
                       "--allow-collisions")
    assert code == 0 and row["injective"] is False and row["faithful"] is False


def test_planar(capsys, tmp_path):
    row = run(capsys, "planar", "catalog:dodecahedron")[1]
    assert row["planar"] and row["faces"] == 12 and row["euler_ok"]
    row = run(capsys, "planar", "complete:5")[1]
    assert not row["planar"] and row["kuratowski"] == "K5"
    path = tmp_path / "k33.edges"
    path.write_text("6 9\n" + "".join(f"{a} {b}\n" for a in range(3) for b in range(3, 6)))
    assert run(capsys, "planar", str(path))[1]["kuratowski"] == "K3,3"


def test_search(capsys, tmp_path):
    out = tmp_path / "w"
    code, row, _ = run(capsys, "search", "sym4I/orbits=6+4", "--emit-witnesses", str(out))
    assert code == 0 and (row["edge_bounded"], row["wl_exact"], row["polyhedral"]) == (19, 4, 1)
    assert len(list(out.glob("*.edges"))) == 1
    row = run(capsys, "search", "alt4/orbits=6+4", "--fiber-min-size", "3")[1]
    assert row["edge_bounded"] == 17


def test_exit_codes(capsys, monkeypatch):
    assert run(capsys, "wl", "nonexistent.edges")[0] == 2
    assert run(capsys, "inv", "nogroup/orbits=4")[0] == 2
    code, _, err = run(capsys, "planar", "alt4/orbits=6")
    assert code == 2 and err.startswith("error[")
    monkeypatch.setenv("CC_MAX_N", "5")
    assert run(capsys, "aut", "catalog:cube")[0] == 3
    with pytest.raises(SystemExit):
        main(["nosuchcommand"])


def test_load_input_rejects_bad_counts():
    with pytest.raises(FormatError):
        load_input("empty:x")
    with pytest.raises(FormatError):
        load_input("complete:0")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cohconf", "kappa", "catalog:cube", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["kappa"] == 3
