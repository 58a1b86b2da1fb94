import json

import pytest
from hypothesis import given, settings, strategies as st

from fibrcheck.errors import (
    GenusOutOfRange,
    LongitudeNotNullhomologous,
    MalformedToken,
    MissingLongitude,
    RelatorNotBalanced,
    SchemaError,
    UnknownGenerator,
    ZeroExponent,
)
from fibrcheck.words import (
    EMPTY,
    FreeRingElement,
    Phi,
    Word,
    abelianization_phi,
    fox_derivative,
    load_presentation,
    parse_word,
    render_word,
    surgery_presentation,
    word_inverse,
    word_mul,
)

PRETZEL_GENS = list("abcdefghijklm")
XY = ["x", "y"]


def W(text, gens=XY):
    return parse_word(text, gens)


def test_parse_examples():
    assert list(W("h^-1 b h", PRETZEL_GENS)) == [(7, -1), (1, 1), (7, 1)]
    assert W("x x^-1") == EMPTY
    assert list(W("a^7", PRETZEL_GENS)) == [(0, 1)] * 7
    assert W("") == EMPTY


def test_parse_errors():
    with pytest.raises(UnknownGenerator):
        W("x z")
    with pytest.raises(MalformedToken) as exc:
        W("x y^")
    assert exc.value.position == 1
    with pytest.raises(ZeroExponent):
        W("x^0")
    # every words error is a ValueError carrying its module
    with pytest.raises(ValueError):
        W("x^^2")


def test_word_mul_examples():
    assert word_mul(W("x"), W("x^-1")) == EMPTY
    assert word_mul(W("x y"), W("y^-1 x")) == W("x x")
    w = W("x y^2 x^-1")
    assert word_mul(EMPTY, w) == w
    assert word_mul(w, EMPTY) == w


def test_word_inverse_examples():
    assert word_inverse(W("x y")) == W("y^-1 x^-1")
    assert word_inverse(EMPTY) == EMPTY
    assert word_inverse(W("x^-1")) == W("x")


def _ring(*pairs):
    out = FreeRingElement()
    for text, c in pairs:
        out = out + FreeRingElement.of_word(W(text), c)
    return out


def test_fox_examples():
    assert fox_derivative(W("x"), 0) == _ring(("", 1))
    assert fox_derivative(W("x^-1"), 0) == _ring(("x^-1", -1))
    r = W("x y x y^-1 x^-1 y^-1")
    expected = _ring(("", 1), ("x y", 1), ("x y x y^-1 x^-1", -1))
    assert fox_derivative(r, 0) == expected
    assert fox_derivative(W("y"), 0) == FreeRingElement()


# -- property tests ---------------------------------------------------------

letters = st.tuples(st.integers(0, 2), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=30).map(Word.reduced)


def _fox_identity_holds(w, n=3):
    lhs = FreeRingElement()
    for i in range(n):
        d = fox_derivative(w, i)
        lhs = lhs + d * Word.reduced([(i, 1)]) - d
    return lhs == FreeRingElement.of_word(w) - FreeRingElement.of_word(EMPTY)


@settings(max_examples=200, deadline=None)
@given(words)
def test_fundamental_fox_identity(w):
    assert _fox_identity_holds(w)


@settings(max_examples=200, deadline=None)
@given(words, words, st.integers(0, 2))
def test_fox_product_rule(u, v, i):
    lhs = fox_derivative(word_mul(u, v), i)
    rhs = fox_derivative(u, i) + fox_derivative(v, i).left_mul(u)
    assert lhs == rhs


@settings(max_examples=200, deadline=None)
@given(words, words, words)
def test_group_laws(u, v, w):
    assert word_mul(word_mul(u, v), w) == word_mul(u, word_mul(v, w))
    assert word_mul(u, word_inverse(u)) == EMPTY
    assert word_mul(word_inverse(u), u) == EMPTY
    assert word_inverse(word_inverse(u)) == u


@settings(max_examples=200, deadline=None)
@given(words)
def test_parse_render_roundtrip(w):
    gens = ["a", "b2", "c_"]
    assert parse_word(render_word(w, gens), gens) == w


def test_render_normalizes_tokens():
    text = "x  x x^-1   y^1 y^2"
    assert render_word(W(text), XY) == "x y^3"


# -- presentations -----------------------------------------------------------


def test_pretzel_loads(pretzel):
    assert pretzel.num_generators == 13
    assert len(pretzel.relators) == 13
    assert pretzel.genus == 1
    assert pretzel.longitude.exponent_sum() == 0
    assert len(pretzel.longitude) == 20


def _doc(**kw):
    d = {"name": "t", "generators": ["x", "y"], "relations": ["x y x = y x y"],
         "longitude": None, "genus": 1}
    d.update(kw)
    return d


def test_load_errors():
    with pytest.raises(LongitudeNotNullhomologous):
        load_presentation(_doc(generators=["a"], relations=[], relators=[], longitude="a"))
    with pytest.raises(GenusOutOfRange):
        load_presentation(_doc(genus=0))
    with pytest.raises(UnknownGenerator):
        load_presentation(_doc(relators=["x z"]))
    with pytest.raises(SchemaError):
        load_presentation(b"{not json")
    with pytest.raises(SchemaError):
        load_presentation(_doc(generators="xy"))
    with pytest.raises(SchemaError):
        load_presentation(_doc(relations=["x y"]))
    with pytest.raises(SchemaError):
        load_presentation({"generators": ["x"]})
    with pytest.raises(SchemaError):
        load_presentation(_doc(generators=["x", "x"]))


def test_load_accepts_bytes_and_relators():
    doc = _doc(relations=[], relators=["x y x y^-1 x^-1 y^-1"])
    a = load_presentation(json.dumps(doc).encode())
    b = load_presentation(_doc())
    assert a.relators == b.relators
    assert a.content_hash() == b.content_hash()
    assert a.content_hash() != load_presentation(_doc(genus=2)).content_hash()


def test_surgery(pretzel):
    n = surgery_presentation(pretzel)
    assert len(n.relators) == 14
    assert n.relators[-1] == pretzel.longitude
    with pytest.raises(MissingLongitude):
        surgery_presentation(n)
    with pytest.raises(MissingLongitude):
        surgery_presentation(load_presentation(_doc()))


def test_abelianization(pretzel_surgery, trefoil):
    phi = abelianization_phi(pretzel_surgery)
    assert phi.values == (1,) * 13
    assert all(phi(r) == 0 for r in pretzel_surgery.relators)
    assert abelianization_phi(trefoil).values == (1, 1)
    bad = load_presentation(_doc(relations=[], relators=["x y"]))
    with pytest.raises(RelatorNotBalanced) as exc:
        abelianization_phi(bad)
    assert exc.value.index == 0


def test_phi_rejects_zero():
    with pytest.raises(ValueError):
        Phi((0, 0))
