import pytest

from nleibniz import axioms, generate
from nleibniz.correspondence import roundtrip_triple

from conftest import CORPUS


def test_bundled_corpus_is_current():
    files = generate.corpus_files()
    assert sorted(files) == sorted(p.name for p in CORPUS.glob("*.json"))
    for name, text in files.items():
        assert (CORPUS / name).read_text() == text, name


def test_corpus_has_required_entries():
    names = {p.stem for p in CORPUS.glob("*.json")}
    assert "a4_euclidean" in names
    assert {"broken_fundamental", "broken_unitarity", "broken_symmetry", "broken_nondegenerate"} <= names
    assert any(generate.VALID_ALGEBRAS[n]().arity == 4 for n in generate.VALID_ALGEBRAS)


@pytest.mark.parametrize("seed", range(5))
def test_random_triples_are_valid(seed):
    T = generate.random_triple(seed)
    assert all(r.passed for r in axioms.check_triple(T))
    assert roundtrip_triple(T).passed


def test_so_p_triples():
    for p in (2, 3, 4, 5):
        T = generate.so_triple(p)
        assert T.g.dim == p * (p - 1) // 2
        assert all(r.passed for r in axioms.check_triple(T))
