import itertools

import pytest
from sympy.polys.domains import QQ

from src.services.bruhat import (
    WeylWord,
    covers,
    is_admissible,
    maximal_chains,
    parse_word,
    projective_subdiagram_word,
    word_matrix,
)
from src.services.errors import InadmissibleWordError, InvalidSubdiagramError, WordSyntaxError
from src.services.rootdata import catalog


@pytest.fixture
def a3():
    return catalog("A", 3)


def test_parse_word(a3):
    assert parse_word(a3, "1,2,3").letters == (1, 2, 3)
    assert parse_word(a3, "(3, 2)").letters == (3, 2)
    assert parse_word(a3, "e").letters == ()
    assert parse_word(a3, "").letters == ()


@pytest.mark.parametrize("text", ["1,x", "5", "0,1"])
def test_parse_word_rejects(a3, text):
    with pytest.raises(WordSyntaxError):
        parse_word(a3, text)


def test_admissibility(a3):
    assert is_admissible(WeylWord(a3, (1, 2)))
    assert is_admissible(WeylWord(a3, (3, 1, 2)))
    assert is_admissible(WeylWord(a3, ()))
    assert not is_admissible(WeylWord(a3, (1, 3)))
    report = is_admissible(WeylWord(a3, (1, 1)))
    assert not report
    assert report.violations


def test_e7_fixture_words_are_admissible(e7):
    assert is_admissible(WeylWord(e7, (4, 6, 5)))
    assert is_admissible(WeylWord(e7, (4, 5, 6)))


def test_covers_delete_each_position(a3):
    word = WeylWord(a3, (1, 2))
    data = covers(word)
    assert [d.subword.letters for d in data] == [(2,), (1,)]
    assert data[0].reflection_coroot.coords == (QQ(1), QQ(0), QQ(0))
    assert data[1].reflection_coroot.coords == (QQ(1), QQ(1), QQ(0))


def test_covers_require_admissible_word(a3):
    with pytest.raises(InadmissibleWordError):
        covers(WeylWord(a3, (1, 3)))


def test_maximal_chains_count(a3):
    chains = list(maximal_chains(WeylWord(a3, (3, 1, 2))))
    assert len(chains) == 6
    assert all(chain[-1].subword.letters == () for chain in chains)


def test_projective_subdiagram_word():
    b3 = catalog("B", 3)
    assert projective_subdiagram_word(b3, 1, (1, 2)).letters == (2, 1)
    with pytest.raises(InvalidSubdiagramError):
        projective_subdiagram_word(b3, 1, (1, 3))
    with pytest.raises(InvalidSubdiagramError):
        projective_subdiagram_word(b3, 2, (2, 3))
    with pytest.raises(InvalidSubdiagramError):
        projective_subdiagram_word(b3, 1, (2, 1))


def _apply_reflection(root, coroot_coords, vec):
    value = sum((a * b for a, b in zip(vec, coroot_coords)), QQ.zero)
    return tuple(v - value * a for v, a in zip(vec, root))


@pytest.mark.parametrize("family,rank", [("A", 3), ("A", 4), ("B", 3), ("C", 3), ("D", 4)])
def test_single_deletions_are_all_covers(family, rank):
    system = catalog(family, rank)
    words = [
        WeylWord(system, letters)
        for k in range(1, rank + 1)
        for letters in itertools.permutations(range(1, rank + 1), k)
    ]
    for word in filter(is_admissible, words):
        subwords = {
            word_matrix(WeylWord(system, tuple(word.letters[p] for p in positions)))
            for k in range(len(word) + 1)
            for positions in itertools.combinations(range(len(word)), k)
        }
        assert len(subwords) == 2 ** len(word)

        image = word_matrix(word)
        for datum in covers(word):
            expected = tuple(
                _apply_reflection(datum.reflection_root, datum.reflection_coroot.coords, row) for row in image
            )
            assert word_matrix(datum.subword) == expected
