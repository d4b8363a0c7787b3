import io
import json
import subprocess
import sys


from endofree.cli import main
from endofree.report import validate_report


def run(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_canon_examples():
    assert run("canon", "--variety", "free-inverse", "x1*x1^-1*x1")[1].strip() == "x1"
    assert run("canon", "--variety", "free-group", "x1*x2*x2^-1*x1")[1].strip() == "x1^2"
    code, _, err = run("canon", "x1^-1")
    assert code == 3 and "inverse" in err


def test_canon_json():
    code, out, _ = run("canon", "--variety", "free-module", "--ring", "GF(4)", "g2.x1+x1",
                       "--format", "json")
    assert code == 0 and json.loads(out)["canonical"] == "[g3,0]"


def test_matrix_command():
    code, out, _ = run("matrix", "--aut", "inner:x2;x1")
    assert code == 0 and out.strip().splitlines()[-1] == "x2,x2;x1,x1"
    assert run("matrix", "--aut", "mirror")[1].strip().splitlines()[-1] == "x1,x1;x2,x2"


def test_endo_command():
    code, out, _ = run("endo", "--variety", "free-group", "x1*x2;x2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["automorphism"] == "holds" and doc["inverse"] == "x1*x2^-1;x2"


def test_verify_exit_codes():
    code, out, _ = run("verify", "semigroup-binary", "--format", "json")
    assert code == 0
    validate_report(json.loads(out))
    assert run("verify", "inverse-system", "--max-len", "4")[0] == 1
    assert run("verify", "quasi-inner-battery", "--variety", "free-group",
               "--aut", "conj:table:x1<->x1*x2", "--budget", "10")[0] == 2


def test_usage_errors_exit_3():
    assert run("verify", "no-such-suite")[0] == 3
    assert run()[0] == 3
    assert run("canon", "--ring", "GF(4)", "x1")[0] == 3
    assert run("canon", "--variety", "free-module", "--ring", "GF(6)", "x1")[0] == 3
    assert run("verify", "semigroup-binary", "--budget", "0")[0] == 3


def test_budget_environment(monkeypatch):
    monkeypatch.setenv("ENDOFREE_BUDGET", "nope")
    assert run("verify", "semigroup-binary")[0] == 3
    monkeypatch.setenv("ENDOFREE_BUDGET", "10")
    code, out, _ = run("verify", "quasi-inner-battery", "--variety", "free-group",
                       "--aut", "conj:table:x1<->x1*x2", "--format", "json")
    assert code == 2 and json.loads(out)["params"]["budget"] == 10


def test_text_report_lists_checks():
    code, out, _ = run("verify", "mirror-classification", "--samples", "20")
    assert code == 0 and "mirror-not-inner" in out and out.strip().endswith("ms")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "endofree", "canon", "x1*x2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "x1*x2"
