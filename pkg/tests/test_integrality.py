import pytest
from sympy.polys.domains import QQ

from src.services.errors import CatalogError, FixtureNotFoundError, InvalidClassError
from src.services.integrality import (
    IntegralVerdict,
    NoWitnessFound,
    NonIntegralityCertificate,
    ParabolicChoice,
    certificate_from_dict,
    certify,
    half_delta_class,
    invariant_basis,
    invariant_basis_mod_Iplus,
    iplus_slice,
    is_invariant_mod_iplus,
    presentation,
    span_contains,
    verify_presentation_membership,
)
from src.services.mpoly import invariant_quadratic, parse_polynomial
from src.services.rootdata import catalog


@pytest.mark.parametrize("family, rank", [("B", 3), ("D", 4), ("D", 5)])
def test_presentation_relations_are_weighted_homogeneous(family, rank):
    assert presentation(catalog(family, rank)).is_homogeneous()


def test_presentation_only_for_orthogonal_families():
    with pytest.raises(CatalogError):
        presentation(catalog("A", 3))


@pytest.mark.parametrize("family, rank", [("B", 3), ("B", 4), ("D", 4), ("D", 5)])
def test_half_delta_classes_carry_replayable_proofs(family, rank):
    system = catalog(family, rank)
    for r in range(1, rank + 1):
        integral_class = half_delta_class(system, r)
        assert integral_class.proof.verify()
        assert integral_class.proof.replay() == integral_class.polynomial


def test_eta_route_for_the_penultimate_root():
    system = catalog("D", 5)
    assert half_delta_class(system, 4).proof.route == "eta"
    assert half_delta_class(system, 2).proof.route == "delta"


def test_membership_failure_is_falsy():
    system = catalog("B", 3)
    result = verify_presentation_membership(parse_polynomial("1/2*e1^2", system, "eps"))
    assert not result
    assert result.reason


def test_half_delta_outside_orthogonal_families():
    with pytest.raises(InvalidClassError):
        half_delta_class(catalog("C", 3), 1)


def test_e7_p5_invariant_space(e7, fixture_texts):
    P = ParabolicChoice(e7, 5)
    basis = invariant_basis(e7, P, 4)
    assert len(basis) == 8
    p5 = parse_polynomial(fixture_texts["e7-p5"], e7)
    assert span_contains(basis, p5)
    assert all(coefficient.denominator == 1 for b in basis for _, coefficient in b.terms())


def test_e7_p6_invariants_modulo_iplus(e7, fixture_texts):
    P = ParabolicChoice(e7, 6)
    basis = invariant_basis_mod_Iplus(e7, P, 4)
    assert len(basis) == 2
    p6 = parse_polynomial(fixture_texts["e7-p6"], e7)
    assert span_contains(basis, p6, iplus_slice(e7, 4))
    assert all(is_invariant_mod_iplus(p6, P).values())


def test_iplus_contains_invariant_multiples():
    a3 = catalog("A", 3)
    ideal = iplus_slice(a3, 3)
    q = invariant_quadratic(a3)
    assert ideal.contains(q * parse_polynomial("z1", a3, "zeta"))
    assert not ideal.contains(parse_polynomial("z1^3", a3, "zeta"))


def test_invariant_basis_of_a_grassmannian():
    # W_1 ≅ S_3 fixe ζ1 ; en degré 2 : ζ1² et la quadrique invariante
    a3 = catalog("A", 3)
    assert len(invariant_basis(a3, ParabolicChoice(a3, 1), 2)) == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_grassmannian_certificates(n):
    system = catalog("A", n)
    for r in range(1, n + 1):
        for d in range(1, n + 2):
            result = certify(system, r, "z0", d)
            if d % (n + 1) == 0:
                assert isinstance(result, IntegralVerdict)
            else:
                assert isinstance(result, NonIntegralityCertificate)
                assert result.value.denominator > 1


def test_isotropic_grassmannian_certificates():
    system = catalog("C", 3)
    for r in range(1, 4):
        assert isinstance(certify(system, r, "z0", 1), NonIntegralityCertificate)
        assert isinstance(certify(system, r, "z0", 2), IntegralVerdict)


@pytest.mark.parametrize("family, rank", [("B", 3), ("D", 4), ("D", 5)])
def test_orthogonal_certificates_at_z0(family, rank):
    system = catalog(family, rank)
    for r in range(1, rank + 1):
        certificate = certify(system, r, "z0", 1)
        assert isinstance(certificate, NonIntegralityCertificate)
        assert certificate.value.denominator == 2
        assert isinstance(certify(system, r, "z0", 2), IntegralVerdict)


def test_odd_rank_even_orthogonal_has_order_four_torsion():
    system = catalog("D", 5)
    for r in range(1, 6):
        assert isinstance(certify(system, r, "z1", 1), NonIntegralityCertificate)
        assert isinstance(certify(system, r, "z1", 2), NonIntegralityCertificate)
        assert isinstance(certify(system, r, "z1", 4), IntegralVerdict)


def test_even_rank_z1_falls_back_to_gamma_prime():
    system = catalog("D", 4)
    certificate = certify(system, 1, "z1", 1)
    assert certificate.witness.subdiagram == "GammaPrime"
    assert certificate.value == QQ(1, 2)


@pytest.mark.parametrize("rank", [4, 5, pytest.param(6, marks=pytest.mark.slow)])
def test_even_orthogonal_case_analysis_always_concludes(rank):
    system = catalog("D", rank)
    for r in range(1, rank + 1):
        for generator in ("z0", "z1"):
            for d in range(0, 5):
                assert not isinstance(certify(system, r, generator, d), NoWitnessFound)


def test_exceptional_certificates(e6, e7, fixture_texts):
    assert certify(e6, 3, "z0", 1).value == QQ(-1, 3)
    assert certify(e6, 6, "z0", 2).value == QQ(4, 3)
    assert isinstance(certify(e6, 3, "z0", 3), IntegralVerdict)
    assert certify(e7, 5, "z0", 1, fixture_texts).value == QQ(-1, 2)
    assert certify(e7, 6, "z0", 1, fixture_texts).value == QQ(3, 2)
    assert certify(e7, 2, "z0", 1).value == QQ(1, 2)


def test_e7_fixture_witness_needs_fixture(e7):
    with pytest.raises(FixtureNotFoundError):
        certify(e7, 5, "z0", 1)


def test_certificate_round_trip(e7, fixture_texts):
    for system, r, generator in ((catalog("D", 5), 2, "z1"), (catalog("B", 3), 1, "z0"), (e7, 5, "z0")):
        certificate = certify(system, r, generator, 1, fixture_texts)
        data = certificate.to_dict()
        assert data["integral"] is False
        replayed = certificate_from_dict(data)
        assert replayed.value == certificate.value
        assert replayed.replay() == certificate.value


def test_tampered_certificate_is_rejected():
    data = certify(catalog("B", 3), 1, "z0", 1).to_dict()
    data["value"] = {"num": 1, "den": 3}
    with pytest.raises(InvalidClassError):
        certificate_from_dict(data)
