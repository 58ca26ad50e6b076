import pytest
from sympy.polys.domains import QQ

from src.services.errors import EquivariantVariableError, PolynomialSyntaxError
from src.services.mpoly import (
    coefficient_of,
    complete_symmetric,
    elementary_symmetric,
    equivariant_shift,
    invariant_polynomials,
    invariant_quadratic,
    monomials,
    parse_polynomial,
    variables,
    weyl_act,
)
from src.services.rootdata import catalog, coroot


def test_parse_and_write_back(e7):
    f = parse_polynomial("t1*t2", e7)
    assert f.to_text() == "t1*t2"
    assert f.degree() == 2
    assert f.is_homogeneous()


def test_parse_skips_comment_lines(e7):
    f = parse_polynomial("# commentaire\n3/2*t1*t2\n", e7)
    assert coefficient_of(f, "t1*t2") == QQ(3, 2)


@pytest.mark.parametrize("text", ["2t1", "x1 + t1", "t9", "t1 & t2", "", "t1 +"])
def test_parse_rejects_bad_input(e7, text):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial(text, e7)


def test_basis_conversion_is_exact(e7):
    f = parse_polynomial("t1^2*t5 - 1/3*t2*t7*t8", e7)
    assert f.to_basis("zeta").to_basis("t") == f


def test_equivariant_variable_is_detected():
    a2 = catalog("A", 2)
    assert parse_polynomial("e1*e0", a2).has_equivariant()
    assert not parse_polynomial("e1*e2", a2).has_equivariant()


def test_type_a_last_epsilon_is_an_alias():
    a2 = catalog("A", 2)
    assert parse_polynomial("e1 + e2 + e3", a2).is_zero


def test_elementary_symmetric_matches_text():
    a3 = catalog("A", 3)
    eps = variables(a3, ["e1", "e2", "e3"], "eps")
    assert elementary_symmetric(eps, 2, "eps") == parse_polynomial("e1*e2 + e1*e3 + e2*e3", a3, "eps")
    assert complete_symmetric(eps[:2], 2, "eps") == parse_polynomial("e1^2 + e1*e2 + e2^2", a3, "eps")


def test_weyl_action_permutes_type_a_coordinates():
    a2 = catalog("A", 2)
    e1 = parse_polynomial("e1", a2, "eps")
    assert weyl_act((1,), e1) == parse_polynomial("e2", a2, "eps")
    assert weyl_act((1, 1), e1) == e1


def test_weyl_action_on_e7_t_basis(e7):
    t1 = parse_polynomial("t1", e7)
    assert weyl_act((1,), t1) == parse_polynomial("t2", e7)


@pytest.mark.parametrize("family, rank", [("A", 3), ("B", 3), ("D", 4), ("E6", None), ("E7", None)])
def test_invariant_quadratic_is_fixed_by_every_reflection(family, rank):
    system = catalog(family, rank)
    q = invariant_quadratic(system)
    for i in range(1, system.rank + 1):
        assert weyl_act((i,), q) == q


def test_e7_invariant_quadratic_in_t_basis(e7):
    q = invariant_quadratic(e7, "t")
    expected = parse_polynomial(
        "t1^2 + t2^2 + t3^2 + t4^2 + t5^2 + t6^2 + t7^2 - 1/9*(t1 + t2 + t3 + t4 + t5 + t6 + t7)^2", e7, "t"
    )
    # normalisée : coefficient de t1^2 égal à 1
    assert q == expected * QQ(9, 8)


def test_type_a_invariant_dimensions():
    a3 = catalog("A", 3)
    everything = [1, 2, 3]
    assert len(invariant_polynomials(a3, everything, 1)) == 0
    assert len(invariant_polynomials(a3, everything, 2)) == 1
    assert len(invariant_polynomials(a3, everything, 3)) == 1
    assert len(invariant_polynomials(a3, everything, 4)) == 2


def test_monomials_carry_equivariant_slot():
    result = monomials(2, 2)
    assert result == [(2, 0, 0), (1, 1, 0), (0, 2, 0)]


def test_equivariant_shift_adds_pairing_with_coweight():
    a2 = catalog("A", 2)
    shifted = equivariant_shift(parse_polynomial("e1*e2", a2), coroot(a2, 1))
    assert shifted == parse_polynomial("e1*e2 - e1*e0 + e0*e2 - e0^2", a2)


def test_equivariant_shift_rejects_equivariant_input():
    a2 = catalog("A", 2)
    with pytest.raises(EquivariantVariableError):
        equivariant_shift(parse_polynomial("e1*e0", a2), coroot(a2, 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_elementary_and_complete_symmetric_are_inverse_series(n):
    system = catalog("A", n)
    z = variables(system, [f"z{i}" for i in range(1, n + 1)], "zeta")
    for m in range(1, n + 3):
        total = sum(
            ((-1) ** k * elementary_symmetric(z, k, "zeta") * complete_symmetric(z, m - k, "zeta")
             for k in range(m + 1)),
            elementary_symmetric(z, 0, "zeta") * 0,
        )
        assert total.is_zero
