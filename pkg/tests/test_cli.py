import json
import subprocess
import sys
from pathlib import Path

import pytest

from overcat.cli import main, run
from overcat.io import canonical_bytes

FX = Path(__file__).resolve().parents[1] / "fixtures"


def fx(rel: str) -> str:
    return str(FX / rel)


@pytest.mark.parametrize("argv,code", [
    (["validate", fx("categories/finset012.json")], 0),
    (["validate", fx("overcategories/groth_join.json")], 0),
    (["fiber", fx("overcategories/chain2_x_chain2.json"), "--at", "0"], 0),
    (["cotensor", fx("overcategories/chain2_x_chain2.json"), "--shape", "parallel"], 0),
    (["completeness", fx("overcategories/groth_join.json"), "--shapes", "empty,discrete2"], 1),
    (["overinitial", fx("overcategories/lattice_x_chain2.json"), "--at", "0"], 0),
    (["adjoint", "--functor", fx("overfunctors/inclusion_2_3h.json")], 0),
    (["adjoint", "--functor", fx("overfunctors/discrete2_to_terminal.json")], 1),
    (["monad", "beck", fx("adjunctions/reflection.json")], 0),
    (["monad", "beck", fx("adjunctions/kleisli_top_closure.json")], 1),
    (["monoidal", "validate", "--instance", "finset-cartesian"], 0),
    (["monoidal", "liberal", "--instance", "contrived-cartesian", "--max-size", "2"], 1),
    (["freemonoid", "--instance", "pt-finset-cartesian", "--letters", "a,b", "--oracle"], 0),
    (["validate", fx("categories/chain2.json"), "--kind", "monad"], 2),
    (["nonsense"], 2),
    (["validate", "/does/not/exist.json"], 2),
])
def test_exit_codes(argv, code):
    cert, got = run(argv)
    assert got == code, cert
    assert cert["verdict"] == {0: "positive", 1: "negative", 2: "error"}[code]


def test_freemonoid_stabilizes_at_one():
    cert, code = run(["freemonoid", "--instance", "finset-coproduct", "--letters", "a"])
    assert code == 0
    assert cert["result"]["status"] == "stabilized@1"


def test_adjoint_witness_counts_homs():
    cert, code = run(["adjoint", "--functor", fx("overfunctors/discrete2_to_terminal.json")])
    assert code == 1
    assert cert["result"]["status"] == "none"
    assert cert["witness"]


def test_certificate_shape():
    cert, _ = run(["--jobs", "2", "validate", fx("categories/z2.json")])
    assert set(cert) == {"command", "engine", "inputs", "verdict", "result", "witness", "budget"}
    assert cert["command"] == ["validate", fx("categories/z2.json")]
    assert list(cert["inputs"].values())[0] and len(list(cert["inputs"].values())[0]) == 64


def test_jobs_do_not_change_certificates():
    argv = ["completeness", fx("overcategories/finset012_x_chain2.json"), "--shapes", "empty,discrete2,parallel"]
    one, _ = run(["--jobs", "1"] + argv)
    three, _ = run(["--jobs", "3"] + argv)
    assert canonical_bytes(one) == canonical_bytes(three)


def test_check_witness_replays(tmp_path):
    cert_path = tmp_path / "cert.json"
    assert main(["--cert", str(cert_path), "adjoint", "--functor", fx("overfunctors/reflection_3h_2.json")]) == 0
    replay, rcode = run(["check-witness", str(cert_path)])
    assert rcode == 0 and replay["result"]["identical"]


def test_check_witness_detects_tampering(tmp_path):
    cert_path = tmp_path / "cert.json"
    main(["--cert", str(cert_path), "validate", fx("categories/z2.json")])
    cert = json.loads(cert_path.read_text())
    cert["result"] = {"tampered": True}
    cert_path.write_bytes(canonical_bytes(cert))
    replay, rcode = run(["check-witness", str(cert_path)])
    assert rcode == 1 and replay["witness"]["differing_fields"] == ["result"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "overcat.cli", "validate", fx("categories/chain2.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "positive"


@pytest.mark.parametrize("flags", [["--jobs", "0"], ["--budget", "0"]])
def test_bad_global_flags(flags):
    cert, code = run(flags + ["validate", fx("categories/z2.json")])
    assert code == 2 and cert["result"]["error"] == "UsageError"
