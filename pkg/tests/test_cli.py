import io
import sys

from twolevel.cli import main


def run(capsys, args, stdin=None):
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
        try:
            rc = main(args)
        finally:
            sys.stdin = old
    else:
        rc = main(args)
    out = capsys.readouterr().out
    return rc, out


def test_analyze_word(capsys):
    rc, out = run(capsys, ["analyze", "evde"])
    assert rc == 0
    assert "ev^-DA\t[ROOT=ev]+LOC" in out


def test_analyze_none_marker(capsys):
    rc, out = run(capsys, ["analyze", "xyzzy"])
    assert rc == 0
    assert "*NONE*" in out


def test_analyze_strict_exit_code(capsys):
    rc, _ = run(capsys, ["analyze", "--strict", "xyzzy"])
    assert rc == 1


def test_generate_word(capsys):
    rc, out = run(capsys, ["generate", "ev^"])
    assert rc == 0
    assert out.strip() == "ev"


def test_generate_many(capsys):
    rc, out = run(capsys, ["generate", "saát-lAr-(H)mHz-DAn", "redd-DAn"])
    assert rc == 0
    assert out.split() == ["saatlerimizden", "retten"]


def test_batch_stdin_order_is_input_order(capsys):
    rc, out = run(capsys, ["analyze", "--input", "-", "--jobs", "4"],
                  stdin="evde\nbana\nsuyu\n")
    assert rc == 0
    heads = [line for line in out.splitlines() if line and "\t" not in line]
    assert heads == ["evde", "bana", "suyu"]


def test_roundtrip_analyze_then_generate(capsys):
    rc, out = run(capsys, ["analyze", "geleceğiz"])
    assert rc == 0
    lexical = out.splitlines()[1].split("\t")[0]
    rc, out = run(capsys, ["generate", lexical])
    assert rc == 0
    assert "geleceğiz" in out.split()


def test_syllabify_command(capsys):
    rc, out = run(capsys, ["syllabify", "gazete", "tuz"])
    assert rc == 0
    assert out.split() == ["ga^zete", "tuz^"]


def test_trace_command(capsys):
    rc, out = run(capsys, ["trace", "kitapı"])
    assert rc == 1
    assert "rejected at the rules layer" in out


def test_usage_error_exit_code(capsys):
    rc, _ = run(capsys, ["generate", "--rules", "/nonexistent.twol",
                         "--lexicon", "/nonexistent.lex", "ev"])
    assert rc == 2


def test_compile_reports(capsys):
    rc, out = run(capsys, ["compile"])
    assert rc == 0
    assert "feasible pairs: 136" in out


def test_test_command_runs_corpus(capsys, turkish):
    rc, out = run(capsys, ["test"])
    assert rc == 0
    assert "corpus cases pass" in out
