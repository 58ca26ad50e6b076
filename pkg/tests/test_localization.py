import pytest
from sympy.polys.domains import QQ

from src.services.bruhat import WeylWord
from src.services.chevalley import fibered_cap
from src.services.errors import DegreeMismatchError, InvalidSubdiagramError, NonConstantSumError
from src.services.integrality import half_delta_class
from src.services.localization import (
    RationalFunctionSum,
    fixed_point_data,
    localize,
    subdiagram,
    subdiagram_word,
    sum_constant,
)
from src.services.mpoly import linear_form, parse_polynomial
from src.services.rootdata import catalog, coweight_class, zeta_weight


def _localized(system, r, selector, generator, d):
    f = half_delta_class(system, r).polynomial
    word = subdiagram_word(system, r, selector, generator)
    z = coweight_class(system, generator, d)
    return localize(system, word, f, z), fibered_cap(f, word, z)


@pytest.mark.parametrize("n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
@pytest.mark.parametrize("d", [1, 2])
def test_odd_orthogonal_projective_subdiagrams(n, d):
    system = catalog("B", n)
    for r in range(1, n):
        localized, chevalley = _localized(system, r, "Gamma", "z0", d)
        assert localized == QQ((-1) ** (n - r + 1) * d, 2)
        assert localized == chevalley
    last = half_delta_class(system, n).polynomial
    assert fibered_cap(last, WeylWord(system, ()), coweight_class(system, "z0", d)) == QQ(-d, 2)


@pytest.mark.parametrize("n", [4, 5, pytest.param(6, marks=pytest.mark.slow)])
@pytest.mark.parametrize("d", [1, 2])
def test_even_orthogonal_subdiagram_gamma_prime_at_z0(n, d):
    system = catalog("D", n)
    for r in range(1, n - 1):
        localized, chevalley = _localized(system, r, "GammaPrime", "z0", d)
        assert localized == QQ((-1) ** (n - r) * d, 2)
        assert localized == chevalley


@pytest.mark.parametrize("n", [4, 5, pytest.param(6, marks=pytest.mark.slow)])
@pytest.mark.parametrize("d", [1, 2])
def test_even_orthogonal_subdiagrams_at_z1(n, d):
    system = catalog("D", n)
    for r in range(1, n - 1):
        sign = (-1) ** (n - r + 1)
        gamma, gamma_cap = _localized(system, r, "Gamma", "z1", d)
        gamma_prime, gamma_prime_cap = _localized(system, r, "GammaPrime", "z1", d)
        assert gamma == sign * QQ(d * n, 4)
        assert gamma_prime == sign * (QQ(d * n, 4) - QQ(d, 2))
        assert gamma == gamma_cap
        assert gamma_prime == gamma_prime_cap


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("d", [1, 2])
def test_even_orthogonal_double_prime_subdiagram(n, d):
    system = catalog("D", n)
    localized, chevalley = _localized(system, n - 1, "GammaDoublePrime", "z1", d)
    assert localized == QQ(d, 2) - QQ(d * (n - 2), 2)
    assert localized == chevalley


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("d", [1, 2])
def test_even_orthogonal_empty_word_cases(n, d):
    system = catalog("D", n)
    empty = WeylWord(system, ())
    zeta = linear_form(zeta_weight(system, n - 1), "eps")
    last = half_delta_class(system, n).polynomial
    assert fibered_cap(zeta, empty, coweight_class(system, "z0", d)) == QQ(d, 2)
    assert fibered_cap(zeta, empty, coweight_class(system, "z1", d)) == QQ(-d * (n - 2), 4)
    assert fibered_cap(last, empty, coweight_class(system, "z0", d)) == QQ(-d, 2)
    assert fibered_cap(last, empty, coweight_class(system, "z1", d)) == QQ(-d * n, 4)


def test_subdiagram_paths():
    d5 = catalog("D", 5)
    assert subdiagram(d5, 2, "Gamma") == (2, 3, 4)
    assert subdiagram(d5, 2, "GammaPrime") == (2, 3, 5)
    assert subdiagram(d5, 4, "auto") == (4, 3)
    assert subdiagram(d5, 2, "auto", "z1") == (2, 3, 4)
    assert subdiagram(d5, 2, "auto", "z0") == (2, 3, 5)
    assert subdiagram(d5, 5, "auto") == ()
    assert subdiagram(catalog("B", 4), 2) == (2, 3)
    assert subdiagram(catalog("A", 3), 2) == (2,)


@pytest.mark.parametrize("family, rank, r, selector", [
    ("B", 3, 1, "GammaPrime"),
    ("D", 5, 4, "Gamma"),
    ("D", 5, 2, "GammaDoublePrime"),
    ("D", 5, 2, "Delta"),
])
def test_invalid_subdiagrams(family, rank, r, selector):
    with pytest.raises(InvalidSubdiagramError):
        subdiagram(catalog(family, rank), r, selector)


def test_fixed_point_count():
    system = catalog("B", 4)
    word = subdiagram_word(system, 1, "Gamma")
    f = half_delta_class(system, 1).polynomial
    data = fixed_point_data(system, word, f, coweight_class(system, "z0"))
    assert len(data) == 2 * (len(word) + 1)
    assert {datum.point for datum in data} == {(j, pole) for j in range(4) for pole in ("0", "inf")}


def test_summation_strategies_agree():
    system = catalog("D", 5)
    word = subdiagram_word(system, 1, "Gamma", "z1")
    f = half_delta_class(system, 1).polynomial
    data = fixed_point_data(system, word, f, coweight_class(system, "z1"))
    S = RationalFunctionSum.from_fixed_points(data)
    symbolic = sum_constant(S, strategy="symbolic")
    assert sum_constant(S, strategy="line") == symbolic
    assert sum_constant(S, strategy="auto", max_degree=1) == symbolic


def test_non_constant_sum_is_rejected():
    a2 = catalog("A", 2)
    S = RationalFunctionSum(((parse_polynomial("e1", a2, "eps"), (parse_polynomial("e2", a2, "eps"),)),))
    with pytest.raises(NonConstantSumError):
        sum_constant(S)


def test_localization_degree_check():
    system = catalog("B", 3)
    word = subdiagram_word(system, 1, "Gamma")
    with pytest.raises(DegreeMismatchError):
        localize(system, word, parse_polynomial("e1*e2", system, "eps"), coweight_class(system, "z0"))
