import pytest
from hypothesis import given, strategies as st

from ilvm.errors import BadToken, EmptyInput, TrailingGarbage, UnbalancedParens
from ilvm.sexpr import Symbol, read, read_all, render

from support import random_tree, seeded


def test_read_atoms_and_lists():
    assert read("42") == 42
    assert read("-7") == -7
    assert read("set!") == "set!"
    assert isinstance(read("rax"), Symbol)
    assert read("(set! rax (+ rax 1))") == ["set!", "rax", ["+", "rax", 1]]
    assert read("()") == []


def test_integers_and_symbols_are_distinct():
    assert read("(1)")[0] == 1
    assert not isinstance(read("(1)")[0], str)
    assert read("-") == "-"
    assert read("+1") == 1
    assert read("1+") == "1+"


def test_comments_and_whitespace():
    text = """
    ; leading comment
    (begin   ; trailing comment
      (set! rax 15))
    """
    assert read(text) == ["begin", ["set!", "rax", 15]]


def test_unbalanced_reports_offset():
    with pytest.raises(UnbalancedParens) as e:
        read("(begin (set! rax 1)")
    assert e.value.offset == 0
    with pytest.raises(UnbalancedParens) as e:
        read("(a))")
    assert e.value.offset == 3


def test_trailing_garbage_and_empty():
    with pytest.raises(TrailingGarbage) as e:
        read("(a) b")
    assert e.value.offset == 4
    with pytest.raises(EmptyInput):
        read("   ; only a comment")


def test_offsets_are_bytes():
    # the lambda is two bytes in UTF-8
    with pytest.raises(TrailingGarbage) as e:
        read("λ x")
    assert e.value.offset == 3


@pytest.mark.parametrize("text", ['"hi"', "#t", "(a #f)"])
def test_unsupported_tokens(text):
    with pytest.raises(BadToken):
        read(text)


def test_read_all():
    assert read_all("(a) 1 b ; c\n") == [["a"], 1, "b"]
    assert read_all("") == []


def test_render_canonical():
    assert render(["begin", ["set!", "rax", -1], []]) == "(begin (set! rax -1) ())"
    assert render(read("(  a\n  ( b   c ) )")) == "(a (b c))"


def test_symbol_validation():
    for bad in ["", "a b", "(", "12", '"x']:
        with pytest.raises(ValueError):
            Symbol(bad)


def test_round_trip_random_trees():
    rng = seeded(1)
    for _ in range(500):
        t = random_tree(rng)
        assert read(render(t)) == t


trees = st.recursive(
    st.integers() | st.sampled_from(["rax", "set!", "x.1", "fv3", "+", "..."]).map(Symbol),
    lambda children: st.lists(children, max_size=4),
    max_leaves=20,
)


@given(trees)
def test_round_trip_property(t):
    assert read(render(t)) == t
    assert render(read(render(t))) == render(t)
