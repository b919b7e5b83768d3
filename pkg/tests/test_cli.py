import subprocess
import sys

import pytest

from golden_cases import CASES, GOLDEN, ROOT, run_case
from sfcalc.cli import main


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv, stdin = CASES[name]
    expected = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    assert run_case(argv, stdin) == expected


def test_every_command_has_a_golden_file():
    commands = {argv[0] for argv, _ in CASES.values()}
    assert commands == {
        "check", "dsem", "equiv", "sim", "step-repl", "realisable",
        "distinguish", "axioms", "laurent", "export-graph",
    }  # fmt: skip
    assert {p.stem for p in GOLDEN.glob("*.txt")} == set(CASES)


def test_output_is_deterministic():
    for name in ("axioms-json", "export-graph-reg", "distinguish-id-scalar2"):
        argv, stdin = CASES[name]
        assert run_case(argv, stdin) == run_case(argv, stdin)


def test_usage_error_exit_code(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["sim"]) == 2
    assert "usage" in capsys.readouterr().err


def test_inputs_file(tmp_path, capsys):
    f = tmp_path / "in.traj"
    f.write_text("0: [1] | [1]\n1: [0] | [1]\n")
    code = main(["sim", str(ROOT / "circuits" / "loop.sfc"), "--inputs-file", str(f)])
    assert code == 0
    assert capsys.readouterr().out.splitlines()[-1] == "ok"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "sfcalc", "equiv", "circuits/id.sfc", "circuits/reg-coreg.sfc"],
        cwd=ROOT,
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout.strip() == "equivalent"
