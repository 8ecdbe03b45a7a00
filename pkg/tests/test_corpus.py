import pytest

from core.config import FuzzConfig
from core.corpus import (CorpusEntry, build_corpora, build_default_corpus, build_equivalence_corpus,
                         build_linear_corpus, corpus_cells, expected_verdict_mismatches,
                         target_cells)
from core.generators import example_instance
from core.hermitian import Signature
from core.maps import Verdict


def test_target_cells_respect_the_caps():
    source = Signature(1, 2)
    cells = list(target_cells(source, 5))
    assert Signature(1, 1, 0) in cells
    assert Signature(3, 2, 0) in cells
    assert Signature(1, 4, 0) in cells
    assert all(1 <= t.r <= 3 and 1 <= t.s <= 4 and t.t <= 2 and t.n <= 5 for t in cells)
    assert len(cells) == len(set(cells))


def test_corpus_cells_skip_large_sources():
    sources = {source for source, _ in corpus_cells(4)}
    assert Signature(1, 1) in sources
    assert Signature(2, 2) in sources
    assert Signature(2, 3) not in sources


def test_corpus_cells_include_degenerate_sources():
    sources = {source for source, _ in corpus_cells(5)}
    assert {Signature(2, 1, 1), Signature(1, 2, 1), Signature(2, 2, 1)} <= sources
    assert Signature(2, 2, 2) not in sources
    assert Signature(2, 2, 2) in {source for source, _ in corpus_cells(8)}


def test_degenerate_sources_carry_standard_and_quasi_maps(small_config):
    corpus = [entry for entry in build_default_corpus(small_config) if entry.source == Signature(2, 2, 1)]
    labels = {entry.label for entry in corpus}
    assert {"null", "standard", "quasi-standard"} <= labels
    for entry in corpus:
        assert entry.orthogonality().orthogonal


def test_corpora_are_built_once_and_shared(small_config):
    corpora = build_corpora(["linear", "equivalence"], small_config)
    assert list(corpora) == ["linear", "equivalence"]
    default = build_default_corpus(small_config)
    kept = corpora["equivalence"][0::2]
    assert kept
    assert all(any(entry.map == base.map for base in default) for entry in kept)
    assert [e.map for e in corpora["linear"]] == [e.map for e in build_linear_corpus(small_config)]


def test_unknown_corpus_kind_is_rejected():
    with pytest.raises(ValueError):
        build_corpora(["default", "bogus"])


def test_entry_memoizes(example_map):
    entry = CorpusEntry(example_map, frozenset({Verdict.QUASI_STANDARD}), seed=3)
    calls = []

    def compute():
        calls.append(1)
        return 42

    assert entry.memo("answer", compute) == 42
    assert entry.memo("answer", compute) == 42
    assert len(calls) == 1
    assert entry.classification() is entry.classification()
    assert entry.summary() == {"label": example_map.label, "source": "(1,1,0)",
                               "target": "(2,2,1)", "degree": 2, "seed": 3}


def test_default_corpus_is_deterministic(small_config):
    first = build_default_corpus(small_config)
    second = build_default_corpus(small_config)
    assert [e.map for e in first] == [e.map for e in second]
    assert [e.seed for e in first] == [e.seed for e in second]
    assert first[0].map != first[1].map


def test_default_corpus_is_orthogonal(small_config):
    corpus = build_default_corpus(small_config)
    labels = {entry.label for entry in corpus}
    assert {"null", "standard", "quasi-standard", "power-map", "whitney"} <= labels
    assert any(entry.map == example_instance() for entry in corpus)
    for entry in corpus:
        assert entry.expected
        assert entry.source.n <= small_config['max_dim']
        assert entry.target.n <= small_config['max_dim']
        assert entry.map.degree <= small_config['max_degree']
        assert entry.orthogonality().orthogonal


def test_linear_corpus(small_config):
    corpus = build_linear_corpus(small_config)
    assert corpus
    for entry in corpus:
        assert entry.orthogonal is False
        assert entry.map.degree == 1
        assert entry.target.r < entry.source.r or entry.target.s < entry.source.s
        assert entry.target.t <= 1


def test_equivalence_corpus(small_config):
    corpus = build_equivalence_corpus(small_config, size=20)
    assert len(corpus) == 20
    assert all(entry.orthogonal is True for entry in corpus[0::2])
    assert all(entry.orthogonal is None for entry in corpus[1::2])
    assert all(entry.label.startswith("perturbed:") for entry in corpus[1::2])


@pytest.mark.slow
def test_small_corpus_matches_construction_promises(small_config):
    corpus = build_default_corpus(small_config)
    assert expected_verdict_mismatches(corpus, small_config['retries']) == []


@pytest.mark.slow
def test_default_corpus_size():
    config = FuzzConfig.create_custom_config(seed=FuzzConfig.DEFAULT_SEED)
    corpus = build_default_corpus(config)
    assert len(corpus) >= 500
    degenerate = {entry.source for entry in corpus if entry.source.t}
    assert degenerate == {Signature(2, 1, 1), Signature(1, 2, 1), Signature(2, 2, 1), Signature(2, 2, 2)}
