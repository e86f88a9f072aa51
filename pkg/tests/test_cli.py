import json
import subprocess
import sys

import pytest

from hurwitzmaps.cartanweyl import GeneratorSet
from hurwitzmaps.cli import main
from hurwitzmaps.hurwitz import build_hurwitz, symbolic_u
from hurwitzmaps.ksmap import QuadraticMap, quadratic_map
from hurwitzmaps.matrix import ExactMatrix


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr()


def run_json(capsys, *argv):
    status, out = run(capsys, *argv)
    return status, json.loads(out.out)


def test_hurwitz_symbolic(capsys):
    status, obj = run_json(capsys, "hurwitz", "--n", "8")
    assert status == 0 and obj["orthogonal"]
    assert obj["matrix"]["rows"][0][:3] == ["u1", "u2", "u3"]
    assert ExactMatrix.from_json_obj(obj["matrix"]) == build_hurwitz(8, symbolic_u(8))


def test_hurwitz_sixteen_exits_one(capsys):
    status, out = run(capsys, "hurwitz", "--n", "16", "--u", ",".join(str(i) for i in range(1, 17)))
    assert status == 1
    assert "Hurwitz-Radon" in out.err


def test_cayley_rational(capsys):
    status, obj = run_json(capsys, "cayley", "--n", "3", "--u", "1,2,3,4", "--orthonormal")
    assert status == 0
    assert obj["scale_sq"] == "30"
    assert obj["orthonormal"]["rows"][0] == ["2/15", "-14/15", "1/3"]


def test_cayley_singular_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cayley", "--n", "3", "--u", "0,1,2,3"])
    assert exc.value.code == 2


def test_bad_rational_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ksmap", "--n", "3", "--u", "1,x,3,4"])
    assert exc.value.code == 2


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_ksmap_point(capsys):
    status, obj = run_json(capsys, "ksmap", "--n", "3", "--side", "left", "--u", "1,2,3,4")
    assert status == 0 and obj["x"] == ["22", "-4", "-20"]


def test_ksmap_symbolic_round_trip(capsys):
    status, obj = run_json(capsys, "ksmap", "--n", "5", "--side", "right", "--symbolic")
    assert QuadraticMap.from_json_obj(obj) == quadratic_map(5, "right")


def test_laplace_single_poly(capsys):
    status, obj = run_json(capsys, "laplace-verify", "--n", "3", "--side", "right", "--poly", "x1^2*x2 - 3*x3")
    assert status == 0 and obj[0]["passed"] and "residual" not in obj[0]


def test_laplace_suite(capsys):
    status, obj = run_json(capsys, "laplace-verify", "--n", "5", "--side", "left", "--degree", "2")
    assert status == 0 and all(r["passed"] for r in obj)


def test_param_point(capsys):
    status, obj = run_json(capsys, "param", "--target", "r8r5",
                           "--angles", "r=2,eta=0.3,chi=1,theta=0.2,psi=0.5,theta_p=1.4,psi_p=2")
    assert status == 0 and obj["max_residual"] < 1e-10


def test_param_missing_angle(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["param", "--target", "r4r3", "--angles", "theta=1"])
    assert exc.value.code == 2


def test_param_verify(capsys):
    status, obj = run_json(capsys, "param", "--verify", "--trials", "50", "--seed", "7")
    assert status == 0 and all(c["passed"] for c in obj["cases"].values())


def test_cartan_emit(tmp_path, capsys):
    path = tmp_path / "generators.json"
    status, obj = run_json(capsys, "cartan", "--n", "8", "--emit", str(path))
    assert status == 0 and obj["generators"] == 28
    payload = json.loads(path.read_text())
    g = GeneratorSet.from_json_obj(payload)
    assert len(g) == 28 and g.rank() == 28
    assert all(e["closed"] for e in payload["structure_constants"])


def test_so5_table(capsys):
    status, obj = run_json(capsys, "so5-table")
    assert status == 0 and obj["closed"]
    assert obj["table"]["S1"]["T2"] == "0"
    assert obj["table"]["S1"]["S2"] == "-2*S3"
    assert obj["table"]["S2"]["S1"] == "2*S3"


def test_bispherical(capsys):
    status, obj = run_json(capsys, "bispherical", "--l1", "1", "--l2", "1", "--trials", "25", "--seed", "3")
    assert status == 0 and obj["max_residual"] < 1e-10


def test_bispherical_out_of_scale(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bispherical", "--l1", "3"])
    assert exc.value.code == 2


@pytest.mark.parametrize("target,extra", [
    ("hurwitz", ["--n", "4"]),
    ("cayley", ["--n", "7"]),
    ("ksmap-symbolic", ["--n", "9"]),
    ("generators", ["--n", "4"]),
    ("so5-table", []),
    ("hadamard", ["--m", "3"]),
])
def test_emit_targets(tmp_path, capsys, target, extra):
    out = tmp_path / f"{target}.json"
    status, _ = run(capsys, "emit", target, *extra, "--out", str(out))
    assert status == 0
    obj = json.loads(out.read_text())
    if "matrix" in obj:
        M = ExactMatrix.from_json_obj(obj["matrix"])
        assert M.to_json_obj() == obj["matrix"]


def test_emit_hadamard_m2(capsys):
    _, obj = run_json(capsys, "emit", "hadamard", "--m", "2")
    assert obj["matrix"]["rows"][3] == ["1", "-1", "-1", "1"]


def test_verify_all_subset_deterministic(capsys):
    _, a = run_json(capsys, "verify-all", "--only", "so5", "--seed", "11")
    _, b = run_json(capsys, "verify-all", "--only", "so5", "--seed", "11")
    for c in a["cases"] + b["cases"]:
        c.pop("elapsed_ms")
    assert a == b
    assert [c["name"] for c in a["cases"]] == sorted(c["name"] for c in a["cases"])
    assert a["seed"] == 11 and a["version"]


def test_verify_all_injected_corruption_fails(capsys):
    _, obj = run_json(capsys, "verify-all", "--only", "laplace.neg")
    assert [c["name"] for c in obj["cases"]] == ["laplace.negative-control"]
    assert obj["cases"][0]["passed"]
    status, obj = run_json(capsys, "verify-all", "--only", "laplace.inj", "--inject-corruption")
    assert status == 1
    assert [c["passed"] for c in obj["cases"]] == [False]


def test_text_format(capsys):
    status, out = run(capsys, "verify-all", "--only", "cayley.o3-reference", "--format", "text")
    assert status == 0
    assert out.out.startswith("PASS  cayley.o3-reference")


def test_global_flags_before_subcommand(capsys):
    status, out = run(capsys, "--format", "text", "--seed", "2", "verify-all", "--only", "so5.closure")
    assert status == 0 and "seed 2" in out.out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hurwitzmaps", "emit", "hadamard", "--m", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["matrix"]["rows"] == [["1", "1"], ["1", "-1"]]
