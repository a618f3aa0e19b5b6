import io
import json
import os
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from dualcalc import cli

GOLDEN = Path(__file__).parent / "golden"


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def run_json(argv):
    code, out = run(argv)
    return code, json.loads(out)


def test_document_shape():
    code, doc = run_json(["hurwitz", "--genus", "0", "--partition", "2"])
    assert code == 0
    assert set(doc) == {"query", "params", "result", "checks"}
    assert doc["query"] == "hurwitz"


def test_hurwitz_example():
    code, doc = run_json(["hurwitz", "--genus", "0", "--partition", "2",
                          "--method", "both"])
    assert code == 0
    assert doc["result"]["H"] == "1/2"
    assert doc["result"]["agree"] is True


def test_witten_example():
    code, doc = run_json(["witten", "--correlator", "1:1"])
    assert code == 0
    assert doc["result"]["value"] == "1/24"


def test_witten_cross():
    code, doc = run_json(["witten", "--correlator", "1:1", "--psi", "1:1"])
    assert code == 0
    assert doc["result"]["psi_asymptotic"] == "1/24"
    assert doc["checks"] == [{"name": "dvv-vs-asymptotics", "pass": True}]


def test_witten_virasoro():
    code, doc = run_json(["witten", "--virasoro", "0", "--order", "3"])
    assert code == 0
    assert doc["result"]["virasoro_residual_max"] == "0"


def test_mv_pde_example():
    code, doc = run_json(["mv", "--check", "pde", "--degree", "2", "--order", "8"])
    assert code == 0
    assert doc["result"]["residual_zero"] is True


def test_mv_hodge():
    code, doc = run_json(["mv", "hodge", "--genus", "1", "--partition", "1"])
    assert code == 0
    assert doc["result"]["tau_polynomial"][0] == "1/24"


def test_usage_errors_exit_1():
    code, doc = run_json(["hurwitz", "--genus", "0", "--partition", "1,3"])
    assert code == 1 and doc["kind"] == "usage"
    code, doc = run_json(["mv"])
    assert code == 1
    code, doc = run_json(["witten"])
    assert code == 1
    code, doc = run_json(["witten", "--correlator", "nonsense"])
    assert code == 1


def test_unknown_subcommand_exits_1():
    code, _ = run(["frobnicate"])
    assert code == 1


def test_internal_error_maps_to_3(monkeypatch):
    from dualcalc.errors import InternalError

    def boom(args):
        raise InternalError("division leaves a remainder")

    monkeypatch.setitem(cli.HANDLERS, "witten", boom)
    code, doc = run_json(["witten", "--correlator", "1:1"])
    assert code == 3 and doc["kind"] == "internal"


def test_determinism():
    _, a = run(["vertex", "local-p2", "--max-degree", "2", "--max-genus", "1"])
    _, b = run(["vertex", "local-p2", "--max-degree", "2", "--max-genus", "1"])
    assert a == b


def test_fault_injection_exits_2():
    code, doc = run_json(["verify-all", "--profile", "quick",
                          "--inject-fault", "genus0-closed-form"])
    assert code == 2
    failing = [c["name"] for c in doc["checks"] if not c["pass"]]
    assert failing == ["genus0-closed-form"]


def test_mv_dump_series():
    code, doc = run_json(["mv", "--dump", "connected", "--degree", "2",
                          "--order", "6"])
    assert code == 0
    keys = [entry["key"] for entry in doc["result"]["series"]]
    assert ["1"] in keys and ["2"] in keys and ["1,1"] in keys


def test_worker_pool_env(monkeypatch):
    monkeypatch.setenv("DUALCALC_WORKERS", "3")
    code, doc = run_json(["verify-all", "--profile", "quick"])
    assert code == 0
    # results stay in registry order regardless of completion order
    names = [c["name"] for c in doc["checks"]]
    assert names[0] == "hurwitz-oracle-equivalence"
    assert names[-1] == "hori-vafa-equality"


def test_verify_all_defaults():
    code, doc = run_json(["verify-all"])
    assert code == 0
    assert doc["result"]["profile"] == "quick"
    assert doc["result"]["all_pass"] is True
    assert len(doc["checks"]) == 12


def test_toric_spec_file(tmp_path):
    spec = {"generators": [{"name": "H", "nilpotency": 2}],
            "line_bundles": [[2]], "divisors": [[1], [1]]}
    path = tmp_path / "p1.json"
    path.write_text(json.dumps(spec))
    code, doc = run_json(["mirror", "toric", "--spec", str(path),
                          "--max-degree", "1"])
    assert code == 0
    assert doc["result"]["slices"]["1"]["H^1|t^0"] == "4"


def test_toric_unknown_keys_rejected(tmp_path):
    spec = {"generators": [{"name": "H", "nilpotency": 2}],
            "line_bundles": [[2]], "divisors": [[1], [1]], "bogus": 1}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(spec))
    code, doc = run_json(["mirror", "toric", "--spec", str(path)])
    assert code == 1 and doc["kind"] == "usage"


def test_grassmannian_verify():
    code, doc = run_json(["mirror", "grassmannian", "-k", "2", "-n", "3",
                          "--max-degree", "1", "--verify"])
    assert code == 0
    assert doc["result"]["equal"] is True


@pytest.mark.parametrize("name,argv", [
    ("hurwitz", ["hurwitz", "--genus", "1", "--partition", "2,1", "--method", "both"]),
    ("w-expand", ["w", "--mu", "2", "--expand", "4"]),
    ("witten", ["witten", "--correlator", "1:1"]),
    ("vertex", ["vertex", "local-p2", "--max-degree", "2", "--max-genus", "1", "--gv"]),
    ("quintic", ["mirror", "quintic", "--max-degree", "3"]),
])
def test_golden(name, argv):
    code, out = run(argv)
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


# every operation of every module is reachable from some subcommand;
# the mapping below is the audit, and each invocation must succeed
OP_COVERAGE = {
    # exact core
    "series_arith": ["w", "--mu", "1", "--expand", "6"],
    "series_exp_log": ["mv", "--check", "pde", "--degree", "2", "--order", "7"],
    "bernoulli": ["mv", "--check", "lambda-g", "--degree", "1", "--order", "9"],
    "sin_expand": ["vertex", "local-p2", "--max-degree", "1", "--max-genus", "1", "--gv"],
    "qfun_to_lambda": ["w", "--mu", "2", "--expand", "6"],
    # partition engine
    "enumerate_partitions": ["hurwitz", "--genus", "0", "--partition", "3"],
    "basic_stats": ["hurwitz", "--genus", "0", "--partition", "2,1"],
    "character": ["hurwitz", "--genus", "1", "--partition", "2"],
    "hook_dim": ["hurwitz", "--genus", "0", "--partition", "2", "--elsv"],
    "skew_schur_principal": ["w", "--mu", "2,1", "--nu", "1"],
    # chern-simons
    "w_one": ["w", "--mu", "2,1"],
    "w_pair": ["w", "--mu", "2", "--nu", "1,1"],
    # series ring
    "pseries_mul": ["mv", "--check", "pde", "--degree", "2", "--order", "7"],
    "cut_join_linear": ["hurwitz", "--genus", "0", "--partition", "2,1", "--method", "cutjoin"],
    "cut_join_nonlinear": ["mv", "--check", "pde", "--degree", "2", "--order", "7"],
    # hurwitz / elsv
    "burnside_phi": ["hurwitz", "--genus", "1", "--partition", "2,1", "--method", "burnside"],
    "hurwitz_number": ["hurwitz", "--genus", "1", "--partition", "2,1"],
    "double_hurwitz": ["mv", "--check", "convolution", "--degree", "2", "--order", "8"],
    "elsv_I": ["hurwitz", "--genus", "0", "--partition", "1,1,1", "--elsv"],
    "psi_from_asymptotics": ["witten", "--psi", "1:1"],
    # framed series
    "mv_R": ["mv", "--check", "initial", "--degree", "2", "--order", "8"],
    "mv_pde_residual": ["mv", "--check", "pde", "--degree", "2", "--order", "7"],
    "mv_initial_value_check": ["mv", "--check", "initial", "--degree", "2", "--order", "8"],
    "mv_hodge_extract": ["mv", "hodge", "--genus", "0", "--partition", "1,1,1"],
    "lambda_g_check": ["mv", "--check", "lambda-g", "--degree", "1", "--order", "9"],
    "mv_to_elsv_limit": ["mv", "--check", "elsv-limit", "--degree", "2", "--order", "8"],
    "convolution_check": ["mv", "--check", "convolution", "--degree", "2", "--order", "8"],
    "two_family_structure": ["mv", "--check", "two-partition", "--degree", "2", "--order", "7"],
    # vertex / gv
    "local_p2_z": ["vertex", "local-p2", "--max-degree", "1", "--max-genus", "1"],
    "extract_gw": ["vertex", "local-p2", "--max-degree", "1", "--max-genus", "1"],
    "gv_invert": ["vertex", "local-p2", "--max-degree", "1", "--max-genus", "1", "--gv"],
    # witten
    "dvv": ["witten", "--correlator", "0:0,0,0"],
    "virasoro_residual": ["witten", "--virasoro", "1", "--order", "3"],
    # mirror
    "quintic_hg": ["mirror", "quintic", "--max-degree", "2"],
    "candelas": ["mirror", "quintic", "--max-degree", "2"],
    "multiple_cover_invert": ["mirror", "quintic", "--max-degree", "2"],
    "hg_projective": ["mirror", "grassmannian", "-k", "1", "-n", "2", "--max-degree", "1", "--verify"],
    "gr_loc_sum": ["mirror", "grassmannian", "-k", "1", "-n", "2", "--max-degree", "1", "--verify"],
    "hori_vafa_series": ["mirror", "grassmannian", "-k", "2", "-n", "3", "--max-degree", "1", "--verify"],
    # cli itself
    "verify_all": ["verify-all", "--profile", "quick"],
}


def test_toric_coverage(tmp_path):
    spec = {"generators": [{"name": "H", "nilpotency": 5}],
            "line_bundles": [[5]], "divisors": [[1]] * 5}
    path = tmp_path / "p4.json"
    path.write_text(json.dumps(spec))
    code, _ = run(["mirror", "toric", "--spec", str(path), "--max-degree", "1"])
    assert code == 0


@pytest.mark.parametrize("op", sorted(OP_COVERAGE))
def test_op_reachable_from_cli(op):
    code, _ = run(OP_COVERAGE[op])
    assert code == 0, op
