import subprocess
import sys

import pytest

from ilvm.cli import main

from support import FACT_TEMPLATE, MAX61, MAX64, NON_TAIL_CALL


@pytest.fixture
def program(tmp_path):
    def write(text, name="prog.sexp"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_run_fact(program, capsys):
    assert main(["run", "--lang", "paren-x64", program(FACT_TEMPLATE.format(n=5))]) == 0
    assert capsys.readouterr().out == "120\n"


def test_run_frames(program, capsys):
    assert main(["run", "--lang", "asm-alloc-lang", program(NON_TAIL_CALL)]) == 0
    assert capsys.readouterr().out == "42\n"


def test_lang_from_environment(program, capsys, monkeypatch):
    monkeypatch.setenv("ILVM_LANG", "x64-v1")
    assert main(["run", program("(begin (set! rax 15))")]) == 0
    assert capsys.readouterr().out == "15\n"


def test_invalid_program_exit_2(program, capsys):
    path = program(f"(module (call + {MAX64} 0))")
    assert main(["run", "--lang", "exprs-lang-v7", path]) == 2
    out = capsys.readouterr()
    assert out.out == ""
    assert "exprs-lang-v7" in out.err
    assert main(["validate", "--lang", "exprs-lang-v7", path]) == 2
    assert "invalid:" in capsys.readouterr().err


def test_unchecked_wraps(program, capsys):
    assert main(["run", "--no-checked", "--lang", "exprs-lang-v7", program(f"(+ {MAX64} 0)")]) == 0
    assert capsys.readouterr().out == "-1\n"


def test_validate_ok(program, capsys):
    assert main(["validate", "--lang", "exprs-lang-v7", program(f"(module (call + {MAX61} 0))")]) == 0
    assert capsys.readouterr().out == "valid\n"


def test_runtime_fault_exit_3(program, capsys):
    assert main(["run", "--lang", "paren-x64", program("(begin (set! rax (+ rax 1)) (jump done))")]) == 3
    assert capsys.readouterr().out == ""


def test_bad_result_exit_4(program, capsys):
    assert main(["run", "--lang", "paren-x64", "--output-format", "records",
                 program("(begin (set! rax done) (jump done))")]) == 4
    assert capsys.readouterr().out == "(BadResult done)\n"


def test_records(program, capsys):
    assert main(["run", "--lang", "paren-x64", "--output-format", "records",
                 program(FACT_TEMPLATE.format(n=6))]) == 0
    assert capsys.readouterr().out == "(result 720)\n"
    assert main(["run", "--lang", "exprs-lang-v7", "--output-format", "records",
                 program(f"(+ {MAX64} 0)")]) == 2
    assert capsys.readouterr().out == f"(InvalidProgram (+ {MAX64} 0))\n"


def test_trace_and_dump(program, capsys):
    assert main(["run", "--lang", "paren-x64", "--trace", "--dump-state",
                 program("(begin (set! rax 15) (jump done))")]) == 0
    out = capsys.readouterr()
    assert out.out == "15\n"
    assert "(set! rax 15)" in out.err and "rbp=12959" in out.err


@pytest.mark.parametrize("argv", [
    ["run", "--lang", "paren-x64", "/nonexistent/file"],
    ["run", "--lang", "klingon", "-"],
    ["run", "--bogus"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(argv, monkeypatch):
    monkeypatch.delenv("ILVM_LANG", raising=False)
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code == 1


def test_read_error_exit_1(program, capsys):
    assert main(["run", "--lang", "paren-x64", program("(begin (set! rax 1)")]) == 1
    assert "unclosed" in capsys.readouterr().err


def test_missing_lang(program, monkeypatch):
    monkeypatch.delenv("ILVM_LANG", raising=False)
    assert main(["run", program("(begin)")]) == 1


def test_list_langs(capsys):
    assert main(["list-langs"]) == 0
    assert capsys.readouterr().out.split() == ["x64-v1", "paren-x64", "asm-alloc-lang", "exprs-lang-v7"]


def test_module_entry_point_with_stdin():
    r = subprocess.run([sys.executable, "-m", "ilvm", "run", "--lang", "paren-x64", "-"],
                       input="(begin (set! rax 15) (jump done))", capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "15\n"
