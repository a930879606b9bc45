import json

import pytest

from conftest import FIXTURES
from punforge.cli import main
from punforge.pipeline import data_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


WORKED = ["--lexicon", str(FIXTURES / "worked.lex"), "--homophones", str(FIXTURES / "worked.hom")]


def test_gen_text(capsys):
    code, out, _ = run(capsys, "gen", *WORKED, "--np", "woolly_jumper", "--schema", "jumper", "--template", "syn_syn")
    assert code == 0
    assert out == "1. What do you get when you cross a sheep with a kangaroo? A woolly jumper.\n"


def test_gen_records(capsys):
    code, out, _ = run(capsys, "gen", *WORKED, "--format", "records")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and rows
    assert {"surface", "question", "answer", "schema", "template", "relations", "bindings", "scores",
            "provenance"} <= set(rows[0])


def test_gen_shows_rejected(capsys):
    _, out, _ = run(capsys, "gen", "--lexicon", str(FIXTURES / "coke.lex"), "--homophones",
                    str(FIXTURES / "coke.hom"), "--show-rejected")
    assert "[rejected: sensible" in out


def test_explain(capsys):
    code, out, _ = run(capsys, "explain", *WORKED, "--np", "woolly_jumper", "--schema", "jumper",
                       "--template", "syn_verb", "--id", "1")
    trace = json.loads(out)
    assert code == 0 and trace["relations"] == {"C1": "describes_all", "C2": "act_verb"}
    code, _, err = run(capsys, "explain", *WORKED, "--id", "99")
    assert code == 2 and "no riddle number" in err


def test_weights_flag(capsys):
    code, _, _ = run(capsys, "gen", "--weights", "funny_letters=2,rhyme=0")
    assert code == 0
    code, _, err = run(capsys, "gen", "--weights", "charm=2")
    assert code == 2 and "charm" in err


def test_load_error_is_located(capsys, tmp_path):
    bad = tmp_path / "bad.lex"
    bad.write_text('lexeme a\ncategory noun\nwritten_form "a"\ncolour red\n')
    code, _, err = run(capsys, "gen", "--lexicon", str(bad), "--homophones", str(FIXTURES / "worked.hom"))
    assert code == 2 and "bad.lex:4" in err


def test_empty_lexicon_exit_zero(capsys, tmp_path):
    empty = tmp_path / "empty.lex"
    empty.write_text("")
    hom = tmp_path / "empty.hom"
    hom.write_text("")
    code, out, _ = run(capsys, "gen", "--lexicon", str(empty), "--homophones", str(hom))
    assert code == 0 and out == ""


def test_validate_clean(capsys):
    paths = [str(data_path(n)) for n in ("demo.lex", "demo.hom", "schemata.txt", "templates.txt")]
    code, _, err = run(capsys, "validate", *paths)
    assert code == 0 and "0 violation" in err


def test_validate_counts(capsys, tmp_path):
    lex = tmp_path / "x.lex"
    lex.write_text('lexeme a\ncategory adj\nwritten_form "a"\nvowel_start no\nsynonym b\n\n'
                   'lexeme b\ncategory adj\nwritten_form "b"\nvowel_start no\n\n'
                   'lexeme c\ncategory np\nwritten_form "a b"\ncomp_lex a\n')
    code, out, _ = run(capsys, "validate", str(lex))
    # asymmetric synonym, short comp_lex, np lacks countable and vowel_start
    assert code == 4, out


def test_validate_cap(capsys, tmp_path):
    lex = tmp_path / "many.lex"
    lex.write_text("\n\n".join(f'lexeme n{i}\ncategory np\nwritten_form "n"\ncomp_lex n0\n' for i in range(60)))
    code, _, _ = run(capsys, "validate", str(lex))
    assert code == 125


def test_validate_unknown_file(capsys, tmp_path):
    f = tmp_path / "x.txt"
    f.write_text("hello world\n")
    code, out, _ = run(capsys, "validate", str(f))
    assert code == 1 and "cannot tell" in out


def test_report(capsys, tmp_path):
    ratings = str(FIXTURES / "ratings.txt")
    code, out, _ = run(capsys, "report", "--ratings", ratings, "--by", "schema")
    assert code == 0 and "ginger" in out and out.rstrip().splitlines()[-1].split() == ["Total", "188", "1.5"]
    rules = tmp_path / "trim.txt"
    rules.write_text("schema double\ntemplate use_syn\n")
    code, out, _ = run(capsys, "report", "--ratings", ratings, "--by", "template", "--trim", str(rules))
    assert code == 0 and "mean after trimming" in out
    rules.write_text("schema nonesuch\n")
    code, _, err = run(capsys, "report", "--ratings", ratings, "--by", "template", "--trim", str(rules))
    assert code == 2 and "nonesuch" in err


def test_no_subcommand():
    with pytest.raises(SystemExit):
        main([])
