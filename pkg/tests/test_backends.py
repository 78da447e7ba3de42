import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argsim.backends import (
    EmbeddingCacheProvider,
    ExactMatchProvider,
    LookupTableProvider,
    MissingSymbolError,
    load_backend,
)

symbols = st.sampled_from(["dog", "monkey", "zoo", "Tease", "notTease", "banana", "x0"])


def test_exact_match():
    eq = ExactMatchProvider()
    assert eq.score("dog", "dog") == 1.0
    assert eq.score("dog", "monkey") == 0.0
    assert eq.score("Tease", "notTease") == 0.0


def test_lookup_symmetric_entry():
    table = LookupTableProvider.from_pairs([("dog", "monkey", 0.466)])
    assert table.score("monkey", "dog") == 0.466
    assert table.score("dog", "monkey") == 0.466
    assert table.score("zoo", "zoo") == 1.0
    assert table.score("dog", "banana") == 0.0


def test_lookup_rejects_out_of_range_scores():
    with pytest.raises(ValueError):
        LookupTableProvider.from_pairs([("a", "b", 1.5)])


def test_lookup_file_round_trip(tmp_path):
    path = tmp_path / "table.json"
    path.write_text(json.dumps({"pairs": [["dog", "monkey", 0.466]]}))
    table = LookupTableProvider.load(path)
    assert table.score("monkey", "dog") == 0.466


def test_lookup_file_format_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    with pytest.raises(ValueError):
        LookupTableProvider.load(path)


@pytest.fixture
def cache():
    return EmbeddingCacheProvider(
        "test-model",
        {
            "dog": (1.0, 0.0),
            "monkey": (0.0, 1.0),
            "diag": (1 / math.sqrt(2), 1 / math.sqrt(2)),
            "antidog": (-1.0, 0.0),
        },
    )


def test_embedding_identical_symbol_is_exactly_one(cache):
    assert cache.score("dog", "dog") == 1.0
    assert cache.score("diag", "diag") == 1.0


def test_embedding_orthogonal(cache):
    assert cache.score("dog", "monkey") == 0.0


def test_embedding_hand_cosine(cache):
    # (1,0) . (1,1)/sqrt(2) = sqrt(2)/2
    assert cache.score("dog", "diag") == pytest.approx(math.sqrt(2) / 2, abs=1e-12)


def test_embedding_negative_cosine_clamped(cache):
    assert cache.score("dog", "antidog") == 0.0


def test_embedding_missing_symbol(cache):
    with pytest.raises(MissingSymbolError) as exc:
        cache.score("dog", "banana")
    assert exc.value.symbol == "banana"


def test_embedding_rejects_bad_vectors():
    with pytest.raises(ValueError):
        EmbeddingCacheProvider("m", {"a": (1.0,), "b": (1.0, 0.0)})
    with pytest.raises(ValueError):
        EmbeddingCacheProvider("m", {"a": (0.0, 0.0)})


def test_embedding_file_round_trip(tmp_path):
    path = tmp_path / "cache.json"
    path.write_text(json.dumps({
        "model": "test-model",
        "dim": 2,
        "vectors": {"dog": [1.0, 0.0], "monkey": [0.0, 1.0]},
    }))
    cache = EmbeddingCacheProvider.load(path)
    assert cache.model_tag == "test-model"
    assert cache.score("dog", "monkey") == 0.0


def test_load_backend_specs(tmp_path):
    assert isinstance(load_backend("eq"), ExactMatchProvider)
    table_path = tmp_path / "t.json"
    table_path.write_text('{"pairs": [["a", "b", 0.5]]}')
    assert load_backend(f"lookup:{table_path}").score("a", "b") == 0.5
    with pytest.raises(ValueError):
        load_backend("lookup")
    with pytest.raises(ValueError):
        load_backend("magic:path")


@settings(max_examples=200, deadline=None)
@given(symbols, symbols)
def test_provider_axioms(s1, s2):
    providers = [
        ExactMatchProvider(),
        LookupTableProvider.from_pairs(
            [("dog", "monkey", 0.466), ("dog", "banana", 0.1), ("Tease", "notTease", 0.7)]
        ),
    ]
    for provider in providers:
        score = provider.score(s1, s2)
        assert 0.0 <= score <= 1.0
        assert score == provider.score(s2, s1)
        assert provider.score(s1, s1) == 1.0
