import json
import random

import pytest

from bfcalc import bfgroup as bf
from bfcalc.cli import (
    CliSemanticError,
    CliSyntaxError,
    Session,
    format_element,
    main,
    parse_a_word,
    parse_element,
    parse_free_word,
    parse_sigma_word,
    parse_tree_text,
)
from bfcalc.render import render_svg, render_text
from bfcalc.braid import AWord
from bfcalc.trees import Tree


H2 = ["h1=A[1,2]"]


def session(arity=2, hgens=H2, lets=()):
    return Session(arity, list(hgens), list(lets))


# --- grammar

def test_parse_tree_text():
    assert parse_tree_text("*", 2) == Tree.single(2)
    assert parse_tree_text("(*,*)", 2) == Tree.caret(2)
    assert parse_tree_text("((*,*),*)", 2) == Tree.caret(2).attach(1)
    assert parse_tree_text("(*,(*,*,*),*)", 3) == Tree.caret(3).attach(2)


def test_parse_tree_arity_checked():
    with pytest.raises(CliSemanticError):
        parse_tree_text("(*,*)", 3)
    with pytest.raises(CliSyntaxError):
        parse_tree_text("(*,*", 2)


def test_parse_words():
    assert parse_a_word("A[1,2] A[1,3]^-1", 3) == AWord(3, ((1, 2, 1), (1, 3, -1)))
    assert parse_sigma_word("s1 s2^-1", 3).letters == (1, -2)
    with pytest.raises(CliSyntaxError):
        parse_a_word("B[1,2]", 3)
    with pytest.raises(CliSemanticError):
        parse_a_word("A[1,9]", 3)


def test_parse_free_word():
    assert parse_free_word("x3 x3^-1 x1", 3).letters == (1,)
    with pytest.raises(CliSemanticError):
        parse_free_word("x4", 3)
    with pytest.raises(CliSyntaxError):
        parse_free_word("y1", 3)


def test_parse_element_examples():
    ctx = session().context
    one = parse_element("{ * ; ; [1] ; * }", ctx)
    assert bf.is_identity(one)
    x = parse_element("{ (*,*) ; A[1,2] ; [1,1] ; (*,*) }", ctx)
    assert x.braid == AWord(2, ((1, 2, 1),))
    with pytest.raises(CliSemanticError):
        parse_element("{ (*,*) ; A[1,3] ; [1,1] ; (*,*) }", ctx)
    with pytest.raises(CliSemanticError):
        parse_element("{ (*,*) ; ; [h7,1] ; (*,*) }", ctx)
    with pytest.raises(CliSyntaxError):
        parse_element("{ (*,*) ; [1,1] ; (*,*) }", ctx)


def test_parse_element_labels():
    ctx = session().context
    x = parse_element("{ (*,*) ; ; [h1 h1^-1 h1, 1] ; (*,*) }", ctx)
    assert x.labels == ((1, -1, 1), ())


def _corpus(count=60):
    rng = random.Random(42)
    ctx = bf.pn_context(2)
    seen = []
    while len(seen) < count - 4:
        x = bf.random_element(ctx, rng, max_leaves=7, max_braid_letters=5,
                              max_label_letters=2)
        seen.append(x)
    seen.append(bf.identity_element(ctx))
    seen.append(bf.identity_element(ctx, Tree.caret(2)))
    caret = Tree.caret(2)
    seen.append(bf.BFElement(ctx, caret, AWord(2, ((1, 2, -1),)), ((), (1,)), caret))
    seen.append(bf.BFElement(ctx, caret.attach(1), AWord(3, ()),
                             ((1, 1), (), (-1,)), caret.attach(2)))
    return ctx, seen


def test_print_parse_round_trip_corpus():
    ctx, corpus = _corpus()
    assert len(corpus) >= 50
    full_ctx = Session(2, ["a1_2=A[1,2]"], []).context
    for x in corpus:
        rendered = format_element(x)
        again = parse_element(rendered, full_ctx)
        assert again.t1 == x.t1 and again.t2 == x.t2
        assert again.braid == x.braid and again.labels == x.labels
        assert format_element(again) == rendered


def test_json_round_trip_corpus():
    _, corpus = _corpus()
    for x in corpus:
        text = bf.to_json(x)
        assert bf.to_json(bf.from_json(text)) == text


# --- commands and exit codes

def run_cli(*argv):
    return main(list(argv))


def test_cmd_parse_ok(capsys):
    assert run_cli("parse", "{ * ; ; [1] ; * }", "-n", "2") == 0
    assert capsys.readouterr().out.strip() == "{ * ;  ; [ 1 ] ; * }"


def test_cmd_parse_syntax_error_exit_1(capsys):
    assert run_cli("parse", "{ (*,* ; ; [1] ; * }", "-n", "2") == 1
    assert "line" in capsys.readouterr().err


def test_cmd_parse_semantic_error_exit_2(capsys):
    assert run_cli("parse", "{ (*,*) ; A[1,3] ; [1,1] ; (*,*) }", "-n", "2") == 2
    capsys.readouterr()


def test_usage_error_exit_1(capsys):
    assert run_cli("nonsense") == 1
    capsys.readouterr()


def test_cmd_cmp_equal(capsys):
    code = run_cli("cmp", "a", "a", "-n", "2",
                   "--let", "a={ (*,*) ; A[1,2] ; [1,1] ; (*,*) }")
    assert code == 0
    assert capsys.readouterr().out.strip() == "equal"


def test_cmd_sign(capsys):
    code = run_cli("sign", "{ (*,*) ; A[1,2]^-1 ; [1,1] ; (*,*) }", "-n", "2")
    assert code == 0
    assert capsys.readouterr().out.strip() == "negative"


def test_cmd_count_verbatim(capsys):
    assert run_cli("count", "--gen1", "-n", "2") == 0
    assert capsys.readouterr().out.strip() == "10"
    assert run_cli("count", "--gen3", "-n", "3") == 0
    assert capsys.readouterr().out.strip() == "19"
    assert run_cli("count", "--irreducible", "-n", "2") == 0
    assert capsys.readouterr().out.strip() == "8"
    assert run_cli("count", "--gen2", "-n", "3", "-k", "3") == 0
    assert capsys.readouterr().out.strip() == "25"


def test_cmd_mul_inv_reduce(capsys):
    let = "a={ (*,*) ; A[1,2] ; [h1,1] ; (*,*) }"
    assert run_cli("mul", "a", "a", "-n", "2", "--hgen", "h1=A[1,2]",
                   "--let", let) == 0
    capsys.readouterr()
    assert run_cli("inv", "a", "-n", "2", "--hgen", "h1=A[1,2]", "--let", let) == 0
    out = capsys.readouterr().out
    assert "A[1,2]^-1" in out and "h1^-1" in out
    assert run_cli("reduce", "a", "-n", "2", "--hgen", "h1=A[1,2]", "--let", let) == 0
    capsys.readouterr()


def test_cmd_expand_and_json(capsys):
    let = "a={ (*,*) ; A[1,2] ; [1,1] ; (*,*) }"
    assert run_cli("expand", "a", "1", "-n", "2", "--let", let, "--json") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["arity"] == 2
    assert bf.from_json(json.dumps(doc, sort_keys=True, separators=(",", ":")))


def test_cmd_decompose_verify(capsys):
    let = "a={ ((*,*),*) ; A[1,2] A[2,3]^-1 ; [1,1,1] ; (*,(*,*)) }"
    assert run_cli("decompose", "a", "--set", "gen1", "-n", "2",
                   "--let", let, "--verify") == 0
    out = capsys.readouterr().out
    assert out.strip()


def test_cmd_gens(capsys):
    assert run_cli("gens", "--set", "gen3", "-n", "2") == 0
    out = capsys.readouterr().out
    assert out.count("\n") == 9
    assert "f1:" in out and "l1_a1_2:" in out


def test_cmd_selftest_small(capsys):
    code = run_cli("selftest", "--suite", "groupaxioms", "-n", "2",
                   "--samples", "5", "--seed", "7")
    assert code == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out


def test_cmd_render_svg(tmp_path, capsys):
    let = "a={ (*,*) ; A[1,2] ; [h1,1] ; (*,*) }"
    target = tmp_path / "out.svg"
    assert run_cli("render", "a", "--svg", str(target), "-n", "2",
                   "--hgen", "h1=A[1,2]", "--let", let) == 0
    capsys.readouterr()
    document = target.read_text()
    assert document.startswith("<svg")
    assert document.count('class="aletter"') == 1
    assert "h1" in document


# --- renderer structure

def test_render_identity_has_no_crossings():
    x = bf.identity_element(bf.pn_context(2), Tree.caret(2))
    document = render_svg(x)
    assert 'class="aletter"' not in document
    assert 'class="strand-label"' not in document
    assert 'class="caret-edge"' in document


def test_render_counts_match_content():
    ctx = bf.pn_context(2)
    caret = Tree.caret(2)
    x = bf.BFElement(ctx, caret, AWord(2, ((1, 2, 1), (1, 2, -1))),
                     ((1,), ()), caret)
    document = render_svg(x)
    assert document.count('class="aletter"') == 2
    assert document.count('class="strand-label"') == 1
    # every caret of both trees appears: one caret per tree, two edges each
    assert document.count('class="caret-edge"') == 4


def test_render_text_mentions_labels():
    ctx = bf.pn_context(2)
    caret = Tree.caret(2)
    x = bf.BFElement(ctx, caret, AWord(2, ()), ((1,), ()), caret)
    text = render_text(x)
    assert "label 1: a1_2" in text
