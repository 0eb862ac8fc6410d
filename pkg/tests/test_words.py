"""Word machinery: substitution, classification, span membership, lines."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sdramsey.core import letter
from sdramsey.errors import DomainError, InputError
from sdramsey.words import (
    CONSTANT_WORD,
    LEFT_VARIABLE_WORD,
    VARIABLE,
    VARIABLE_WORD,
    Decomposition,
    VariableWord,
    Word,
    WordSpace,
    assemble,
    classify,
    enumerate_lines,
    format_word,
    hj_min_n,
    parse_word,
    span_membership,
    substitute,
)

A, B = letter(0), letter(1)


def vw(text, alphabet=2):
    return parse_word(text, alphabet, allow_variable=True)


def w(text, alphabet=2):
    return parse_word(text, alphabet)


# ---------------------------------------------------------------------------
# Substitution and classification


def test_substitute_examples():
    assert substitute(vw("v,a,v"), B) == w("b,a,b")
    assert substitute(vw("v"), A) == w("a")
    assert substitute(vw("v,b"), A) == w("a,b")


def test_substitute_guards():
    with pytest.raises(DomainError):
        substitute(vw("v", 1), B)


def test_substitute_properties():
    for text in ("v", "v,a", "a,v,b,v"):
        x = vw(text)
        for le in (A, B):
            out = substitute(x, le)
            assert len(out) == len(x)
            assert classify(out.symbols) == CONSTANT_WORD


def test_classify():
    assert classify(w("a,b").symbols) == CONSTANT_WORD
    assert classify(vw("v,a").symbols) == LEFT_VARIABLE_WORD
    assert classify(vw("a,v").symbols) == VARIABLE_WORD
    assert vw("v,a").left_variable
    assert not vw("a,v").left_variable


def test_variable_word_requires_variable():
    with pytest.raises(DomainError):
        VariableWord(2, (A, B))


# ---------------------------------------------------------------------------
# Span membership


def test_span_examples():
    xs = [vw("v,b"), vw("v")]
    dec = span_membership(w("a,a,b,b"), w("a"), xs)
    assert dec == Decomposition(indices=(0, 1), letters=(A, B))

    assert span_membership(w("a"), w("a"), xs) == Decomposition((), ())
    assert span_membership(w("b,a"), w("a"), xs) is None


def test_span_soundness_reassembles():
    xs = [vw("v,b"), vw("v"), vw("v,a,v")]
    for length in range(7):
        for combo in itertools.product((A, B), repeat=length):
            target = Word(2, combo)
            dec = span_membership(target, w("a"), xs)
            if dec is not None:
                assert assemble(w("a"), xs, dec) == target


def _oracle_decompositions(target, w0, xs):
    """Brute force every (indices, letters) pair."""
    hits = []
    idxs = range(len(xs))
    for r in range(len(xs) + 1):
        for indices in itertools.combinations(idxs, r):
            for letters in itertools.product([letter(i) for i in range(target.alphabet)], repeat=r):
                symbols = list(w0.symbols)
                for i, al in zip(indices, letters):
                    symbols.extend(substitute(xs[i], al).symbols)
                if tuple(symbols) == target.symbols:
                    hits.append((indices, letters))
    return sorted(hits)


def test_span_completeness_against_oracle():
    pools = [
        [vw("v"), vw("v,b")],
        [vw("v,a"), vw("a,v"), vw("v")],
        [vw("v,v"), vw("v,b,a")],
        [vw("v", 1), vw("v,a", 1), vw("a,v,a", 1)],
    ]
    for xs in pools:
        alphabet = xs[0].alphabet
        letters = tuple(letter(i) for i in range(alphabet))
        heads = [Word(alphabet, ()), Word(alphabet, (A,)), Word(alphabet, (A, A))]
        for w0 in heads:
            for length in range(9):
                for combo in itertools.product(letters, repeat=length):
                    target = Word(alphabet, combo)
                    expected = _oracle_decompositions(target, w0, xs)
                    got = span_membership(target, w0, xs)
                    if not expected:
                        assert got is None
                    else:
                        assert got is not None
                        assert (got.indices, got.letters) == expected[0]


def test_left_variable_closure():
    xs = [vw("v"), vw("v,b"), vw("v,a,v")]
    w0 = w("b")
    for length in range(1, 7):
        for combo in itertools.product((A, B), repeat=length):
            target = Word(2, combo)
            dec = span_membership(target, w0, xs)
            if dec is not None:
                assert target.symbols[0] == w0.symbols[0]


def test_span_alphabet_mismatch():
    with pytest.raises(DomainError):
        span_membership(w("a"), w("a", 1), [vw("v")])


# ---------------------------------------------------------------------------
# Lines


def test_enumerate_lines_examples():
    lines = enumerate_lines(1, 2)
    assert len(lines) == 1
    x, line = lines[0]
    assert x.symbols == (VARIABLE,)
    assert set(line) == {w("a"), w("b")}

    xs = [format_word(x.symbols) for x, _ in enumerate_lines(2, 2)]
    assert xs == ["v,v", "v,a", "v,b", "a,v", "b,v"]

    for _, line in enumerate_lines(3, 1):
        assert len(set(line)) == 1

    assert enumerate_lines(0, 2) == []


def test_line_counts():
    for n in range(1, 5):
        for a in (1, 2, 3):
            assert len(enumerate_lines(n, a)) == (a + 1) ** n - a**n


# ---------------------------------------------------------------------------
# Hales-Jewett search


def test_hj_examples():
    assert hj_min_n(2, 2, 4).found == 2
    assert hj_min_n(3, 1, 4).found == 1
    assert hj_min_n(1, 5, 4).found == 1


def test_hj_certificate_when_not_found():
    result = hj_min_n(3, 2, 1)
    assert result.found is None
    cert = result.last_bad
    assert cert is not None and cert.space == WordSpace(3, 1)
    words_at_1 = list(cert.space.elements())
    index = {word: i for i, word in enumerate(words_at_1)}
    for _, line in enumerate_lines(1, 3):
        assert len({cert.assignment[index[word]] for word in line}) > 1


def test_hj_guards():
    with pytest.raises(DomainError):
        hj_min_n(0, 2, 3)
    with pytest.raises(DomainError):
        hj_min_n(2, 0, 3)


# ---------------------------------------------------------------------------
# Parsing


def test_parse_word():
    assert parse_word("", 2) == Word(2, ())
    assert parse_word("a,b", 2).symbols == (A, B)
    with pytest.raises(InputError):
        parse_word("a,?", 2)
    with pytest.raises(InputError):
        parse_word("v", 2)  # variable not allowed in constant context


@given(st.lists(st.sampled_from([A, B, VARIABLE]), min_size=1, max_size=8))
@settings(max_examples=200, deadline=None)
def test_classify_matches_substitution(symbols):
    kind = classify(symbols)
    if VARIABLE in symbols:
        x = VariableWord(2, tuple(symbols))
        sub = substitute(x, A)
        assert classify(sub.symbols) == CONSTANT_WORD
        assert (kind == LEFT_VARIABLE_WORD) == (symbols[0] == VARIABLE)
    else:
        assert kind == CONSTANT_WORD
