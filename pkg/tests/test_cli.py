"""End-to-end command-line behavior: exit codes, JSON, pipelines."""

import json

import pytest

from tengram.cli import main
from tengram.derivation import check, from_script
from tengram.engine import enumerate_words, generates, load_grammar
from tengram.judgement import alpha_equal
from tengram.syntax import format_judgement, parse_judgement

JLM = "fixtures/john_loves_mary.tg"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_prove_derivable_emits_a_replayable_script(capsys):
    code, out, _ = run(capsys, "prove", "1 |- ~p, p")
    assert code == 0
    d = from_script(out)
    assert alpha_equal(check(d), parse_judgement("1 |- ~p, p"))


def test_prove_negative_and_json(capsys):
    code, out, _ = run(capsys, "prove", "1 |- p, p")
    assert code == 1 and out.strip() == "NOT-DERIVABLE"
    code, out, _ = run(capsys, "prove", "1 |- p, p", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload == {"command": "prove", "status": "not-derivable"}


def test_prove_honors_the_restriction_flag(capsys):
    goal = format_judgement(
        parse_judgement("d_i^j |- nab^x_y(s^y_j % ~s^i_x)")
    )
    code, out, _ = run(capsys, "prove", goal)
    assert code == 0
    code, out, _ = run(capsys, "prove", goal, "--lambek-restriction")
    assert code == 1


def test_parse_pipeline_round_trips_through_check(capsys, tmp_path):
    code, script, _ = run(capsys, "parse", JLM, "John loves Mary")
    assert code == 0
    g = load_grammar(JLM)
    d = from_script(script)
    concl = check(d, axioms=g.axioms)
    assert alpha_equal(concl, check(from_script(script), axioms=g.axioms))
    path = tmp_path / "proof.txt"
    path.write_text(script)
    code, out, _ = run(capsys, "check", str(path), "--grammar", JLM)
    assert code == 0 and out.startswith("checked: ")


def test_parse_is_deterministic(capsys):
    one = run(capsys, "parse", JLM, "John loves Mary", "--format", "json")
    two = run(capsys, "parse", JLM, "John loves Mary", "--format", "json")
    assert one == two
    payload = json.loads(one[1])
    assert payload["status"] == "in-language"
    assert payload["used"] == {"ax0": 1, "ax1": 1, "ax2": 1}


def test_parse_failure_modes(capsys):
    code, out, _ = run(capsys, "parse", JLM, "loves John Mary")
    assert code == 1 and out.strip() == "NOT-IN-LANGUAGE"
    code, _, err = run(capsys, "parse", JLM, "John loves Mary", "--max-axioms", "1")
    assert code == 3 and "inconclusive" in err
    code, _, err = run(capsys, "parse", JLM, "John sees Mary")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "parse", "no/such/file.tg", "John loves Mary")
    assert code == 2


def test_check_rejects_bad_scripts(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("axiom ax0\n")
    # an axiom leaf with no grammar behind it cannot be replayed
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1 and "error" in err
    garbled = tmp_path / "garbled.txt"
    garbled.write_text("frobnicate 1 2\n")
    code, _, _ = run(capsys, "check", str(garbled))
    assert code == 2


def test_enumerate_lists_words(capsys):
    code, out, _ = run(capsys, "enumerate", JLM, "--max-len", "3")
    assert code == 0
    assert out.splitlines() == [
        "John loves John",
        "John loves Mary",
        "Mary loves John",
        "Mary loves Mary",
    ]
    code, out, _ = run(capsys, "enumerate", JLM, "--max-len", "3", "--format", "json")
    assert json.loads(out)["words"] == [
        "John loves John",
        "John loves Mary",
        "Mary loves John",
        "Mary loves Mary",
    ]
    code, _, err = run(capsys, "enumerate", JLM, "--max-len", "9")
    assert code == 2 and "error" in err


def test_translate_lambek_to_grammar_file(capsys, tmp_path):
    out_path = tmp_path / "translated.tg"
    code, _, _ = run(
        capsys, "translate", "--from", "lambek", "fixtures/lambek.lex", "-o", str(out_path)
    )
    assert code == 0
    g = load_grammar(str(out_path))
    assert g.kind == "extended" and g.restricted
    assert generates(g, ("John", "loves", "Mary")) is not None


def test_translate_acg_to_stdout(capsys):
    code, out, _ = run(capsys, "translate", "--from", "acg", "fixtures/toy.acg")
    assert code == 0
    from tengram.engine import parse_grammar

    g = parse_grammar(out)
    assert generates(g, ("john", "loves", "mary")) is not None


def test_lexicalize_preserves_the_language(capsys, tmp_path):
    out_path = tmp_path / "lexical.tg"
    code, _, _ = run(capsys, "lexicalize", JLM, "-o", str(out_path))
    assert code == 0
    lexical = load_grammar(str(out_path))
    assert lexical.kind == "extended"
    assert all(e.word != () for j in lexical.axioms.values() for e in j.term.edges)
    assert enumerate_words(lexical, 3) == enumerate_words(load_grammar(JLM), 3)


def test_graph_emits_dot(capsys):
    code, out, _ = run(capsys, "graph", "[w]_i^j |- p^i_j")
    assert code == 0
    assert out.startswith("digraph term {") and '"w"' in out


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest", "--trials", "8")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4 and all(line.startswith("PASS") for line in lines)


def test_usage_errors_exit_via_argparse(capsys):
    with pytest.raises(SystemExit):
        main([])
    with pytest.raises(SystemExit):
        main(["translate", "fixtures/lambek.lex"])  # --from is required
