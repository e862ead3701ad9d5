import pytest
from hypothesis import given
from hypothesis import strategies as st

from tcmbench.metrics import ngrams, tokenize
from tcmbench.metrics.text import is_cjk


def test_mixed_script_splits_cjk_chars_and_latin_words():
    assert tokenize("人参与Panax ginseng") == ["人", "参", "与", "panax", "ginseng"]


def test_empty_text_gives_empty_sequence():
    assert tokenize("") == []


def test_mode_difference_on_punctuated_latin():
    assert tokenize("A,B", "whitespace") == ["a,b"]
    assert tokenize("A,B") == ["a", "b"]


def test_punctuation_only_material_is_dropped():
    assert tokenize("。，、！？...") == []


def test_cjk_punctuation_is_not_a_token():
    assert tokenize("人参、甘草。") == ["人", "参", "甘", "草"]


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        tokenize("x", "bytes")


@given(st.text(max_size=60))
def test_tokens_are_never_empty_or_whitespace(text):
    for token in tokenize(text):
        assert token
        assert not any(ch.isspace() for ch in token)


@given(st.text(max_size=60))
def test_cjk_tokens_single_char_latin_lowercase(text):
    for token in tokenize(text):
        if any(is_cjk(ch) for ch in token):
            assert len(token) == 1
        else:
            assert token == token.lower()


def test_bigram_counts():
    assert ngrams(["a", "b", "c"], 2) == {("a", "b"): 1, ("b", "c"): 1}


def test_unigram_multiplicity():
    assert ngrams(["a", "a", "a"], 1) == {("a",): 3}


def test_window_longer_than_sequence_is_empty():
    assert ngrams(["a", "b"], 3) == {}


def test_order_must_be_positive():
    with pytest.raises(ValueError):
        ngrams(["a"], 0)


@given(st.lists(st.sampled_from("abcde"), max_size=12), st.integers(min_value=1, max_value=5))
def test_total_count_matches_window_arithmetic(tokens, n):
    bag = ngrams(tokens, n)
    assert sum(bag.values()) == max(0, len(tokens) - n + 1)
    assert all(len(gram) == n for gram in bag)
