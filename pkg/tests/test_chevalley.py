import itertools
import random

import pytest
from sympy.polys.domains import QQ

from src.config.env import config
from src.services.bruhat import WeylWord, is_admissible
from src.services.chevalley import CapMode, CapQuery, cap, cap_by_chains, fibered_cap, vertical_cap
from src.services.errors import (
    DegreeMismatchError,
    EquivariantVariableError,
    InadmissibleWordError,
    MixedSystemsError,
)
from src.services.mpoly import elementary_symmetric, invariant_quadratic, parse_polynomial, variables
from src.services.rootdata import catalog, coweight_class


def _grassmann_caps(family, n, r, d):
    system = catalog(family, n)
    eps = variables(system, [f"e{i}" for i in range(1, r + 1)], "eps")
    z = coweight_class(system, "z0", d)
    c1 = fibered_cap(elementary_symmetric(eps, 1, "eps"), WeylWord(system, ()), z)
    c2 = fibered_cap(elementary_symmetric(eps, 2, "eps"), WeylWord(system, (r,)), z) if r >= 2 else None
    return c1, c2


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_grassmannian_closed_forms(n):
    for r in range(1, n + 1):
        for d in range(0, n + 2):
            c1, c2 = _grassmann_caps("A", n, r, d)
            assert c1 == QQ(-d * r, n + 1)
            if c2 is not None:
                assert c2 == QQ(d * (r - 1), n + 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_isotropic_grassmannian_closed_forms(n):
    for r in range(1, n + 1):
        for d in range(0, n + 2):
            c1, c2 = _grassmann_caps("C", n, r, d)
            assert c1 == QQ(-d * r, 2)
            if c2 is not None:
                assert c2 == QQ(d * (r - 1), 2)


@pytest.mark.parametrize("d", [1, 2])
def test_e6_reference_integrals(e6, d):
    z = coweight_class(e6, "z0", d)
    c2 = parse_polynomial("t1*t2 + t1*t3 + t2*t3", e6)
    assert fibered_cap(c2, WeylWord(e6, (3,)), z) == QQ(-d, 3)
    t = variables(e6, [f"t{i}" for i in range(1, 7)], "t")
    c3 = elementary_symmetric(t, 3, "t")
    assert fibered_cap(c3, WeylWord(e6, (3, 6)), z) == QQ(2 * d, 3)


@pytest.mark.parametrize("d", [1, 2])
def test_e7_low_degree_integrals(e7, d):
    z = coweight_class(e7, "z0", d)
    assert fibered_cap(parse_polynomial("t1*t2", e7), WeylWord(e7, (2,)), z) == QQ(d, 2)
    c2 = parse_polynomial("t1*t2 + t1*t3 + t1*t4 + t2*t3 + t2*t4 + t3*t4", e7)
    assert fibered_cap(c2, WeylWord(e7, (4,)), z) == QQ(d, 2)


def test_e7_fixture_integrals(e7, fixture_texts):
    z = coweight_class(e7, "z0", 1)
    p5 = parse_polynomial(fixture_texts["e7-p5"], e7)
    p6 = parse_polynomial(fixture_texts["e7-p6"], e7)
    assert fibered_cap(p5, WeylWord(e7, (4, 6, 5)), z) == QQ(-1, 2)
    assert fibered_cap(p6, WeylWord(e7, (4, 5, 6)), z) == QQ(3, 2)


def test_chain_enumeration_agrees_with_recursion(e7, fixture_texts):
    z = coweight_class(e7, "z0", 1)
    p5 = parse_polynomial(fixture_texts["e7-p5"], e7)
    query = CapQuery(e7, p5, WeylWord(e7, (4, 6, 5)), z, CapMode.FIBERED)
    assert cap_by_chains(query) == cap(query)


def test_factor_order_does_not_matter(e6):
    t = variables(e6, [f"t{i}" for i in range(1, 7)], "t")
    query = CapQuery(e6, elementary_symmetric(t, 3, "t"), WeylWord(e6, (3, 6)), coweight_class(e6, "z0"))
    assert cap(query, peel_order=[5, 4, 3, 2, 1, 0]) == cap(query)
    assert cap(query, basis="zeta") == cap(query)


def test_invariant_quadratic_is_annihilated():
    a3 = catalog("A", 3)
    q = invariant_quadratic(a3, "eps")
    g = parse_polynomial("e1", a3, "eps")
    z = coweight_class(a3, "z0", 1)
    assert fibered_cap(q * g, WeylWord(a3, (1, 2)), z) == 0


def test_vertical_cap_of_a_divisor():
    a2 = catalog("A", 2)
    assert vertical_cap(parse_polynomial("e1", a2, "eps"), WeylWord(a2, (1,))) == -1


def test_cap_is_affine_in_the_coweight(e6):
    t = variables(e6, [f"t{i}" for i in range(1, 7)], "t")
    f = elementary_symmetric(t, 3, "t")
    word = WeylWord(e6, (3, 6))
    values = [fibered_cap(f, word, coweight_class(e6, "z0", d)) for d in (0, 1, 2)]
    assert values[2] - values[1] == values[1] - values[0]


def test_degree_mismatch(e7):
    with pytest.raises(DegreeMismatchError):
        CapQuery(e7, parse_polynomial("t1", e7), WeylWord(e7, (2,)), coweight_class(e7, "z0"))
    with pytest.raises(DegreeMismatchError):
        CapQuery(e7, parse_polynomial("t1*t2 + t1", e7), WeylWord(e7, (2,)), coweight_class(e7, "z0"))


def test_inadmissible_word_is_rejected():
    a3 = catalog("A", 3)
    with pytest.raises(InadmissibleWordError):
        CapQuery(a3, parse_polynomial("e1*e2*e3", a3), WeylWord(a3, (1, 3)), coweight_class(a3, "z0"))


def test_equivariant_variable_is_rejected():
    a2 = catalog("A", 2)
    with pytest.raises(EquivariantVariableError):
        CapQuery(a2, parse_polynomial("e1*e0", a2), WeylWord(a2, (1,)), coweight_class(a2, "z0"))


def test_mixed_systems_are_rejected(e6, e7):
    with pytest.raises(MixedSystemsError):
        CapQuery(e7, parse_polynomial("t1", e6), WeylWord(e7, ()), coweight_class(e7, "z0"))


def test_zero_polynomial_gives_zero(e7):
    query = CapQuery(e7, parse_polynomial("t1 - t1", e7), WeylWord(e7, (4, 6, 5)), coweight_class(e7, "z0"))
    assert cap(query) == 0


RANDOM_SYSTEMS = [("A", 3), ("A", 4), ("B", 3), ("C", 3), ("D", 4)]


def _admissible_words(system, max_length=3):
    return [
        WeylWord(system, letters)
        for k in range(0, max_length + 1)
        for letters in itertools.permutations(range(1, system.rank + 1), k)
        if is_admissible(WeylWord(system, letters))
    ]


def _random_monomial(rng, system, degree, start=None):
    names = system.basis(system.preferred_basis).names
    product = start if start is not None else variables(system, [rng.choice(names)])[0]
    count = degree if start is not None else degree - 1
    for name in (rng.choice(names) for _ in range(count)):
        product = product * variables(system, [name])[0]
    return product


def _random_cases(count):
    rng = random.Random(config.RANDOM_SEED)
    words = {key: _admissible_words(catalog(*key)) for key in RANDOM_SYSTEMS}
    for _ in range(count):
        key = rng.choice(RANDOM_SYSTEMS)
        yield rng, catalog(*key), rng.choice(words[key])


def test_random_monomials_do_not_depend_on_peel_order():
    for rng, system, word in _random_cases(100):
        z = coweight_class(system, "z0", rng.randint(1, 3))
        order = list(range(system.rank))
        rng.shuffle(order)
        fibered = CapQuery(system, _random_monomial(rng, system, len(word) + 1), word, z, CapMode.FIBERED)
        assert cap(fibered, peel_order=order) == cap(fibered)
        assert cap(fibered, basis="zeta") == cap(fibered)
        if len(word):
            vertical = CapQuery(system, _random_monomial(rng, system, len(word)), word, None, CapMode.VERTICAL)
            assert cap(vertical, peel_order=order) == cap(vertical)


def test_random_multiples_of_the_invariant_quadratic_vanish():
    cases = [(rng, system, word) for rng, system, word in _random_cases(150) if len(word) >= 1][:100]
    assert len(cases) == 100
    quadratics = {key: invariant_quadratic(catalog(*key)) for key in RANDOM_SYSTEMS}
    for rng, system, word in cases:
        q = quadratics[(system.family, system.rank)]
        z = coweight_class(system, "z0", rng.randint(1, 3))
        assert fibered_cap(_random_monomial(rng, system, len(word) - 1, start=q), word, z) == 0
        if len(word) >= 2:
            assert vertical_cap(_random_monomial(rng, system, len(word) - 2, start=q), word) == 0
