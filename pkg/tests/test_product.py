"""Tests for semidirect products, strictness and the embedding."""

import pytest
from src.algebra.action import lift, munn, validate_premorphism
from src.algebra.congruence import (
    congruence_generated_by,
    enumerate_congruences,
    validate_congruence,
)
from src.algebra.core import Semilattice, sigma, validate_inverse_semigroup
from src.algebra.errors import GroundMismatch, NotIdempotentPure, NotStrict
from src.algebra.pbij import PartialBijection
from src.algebra.product import (
    alpha_map,
    build_m_subsemigroup,
    build_semidirect,
    check_group_remark,
    embedding_theorem,
    is_fully_strict,
    m_subset,
    strictness,
)
from src.instances.generators import chain, cyclic_group, symmetric_inverse_monoid


def vee():
    return validate_inverse_semigroup([[0, 0, 0], [0, 1, 0], [0, 0, 2]], ["0", "e", "f"])


def vee_product():
    S = vee()
    tau = lift(munn(S), congruence_generated_by(S, [(0, 1)]))
    return build_semidirect(tau)


def test_semidirect_product_of_vee():
    """Test E x S/rho for the vee has the four pairs over ran tau_s."""
    P = vee_product()
    assert P.elements == ((0, 0), (1, 0), (0, 1), (2, 1))
    assert P.render() == "{(0,[e]), (e,[e]), (0,[f]), (f,[f])}"
    assert len(P.semigroup.idempotents) == 4


def test_semidirect_product_multiplication():
    """Test (e,[e])(f,[f]) = (0,[e])."""
    P = vee_product()
    a, b = P.index_of((1, 0)), P.index_of((2, 1))
    assert P.elements[P.semigroup.mul[a][b]] == (0, 0)


def test_semidirect_product_needs_semilattice():
    """Test a set action has no semidirect product."""
    S = cyclic_group(2).semigroup()
    tau = validate_premorphism(S, [PartialBijection.identity(2), PartialBijection(2, (1, 0))], 2)
    with pytest.raises(GroundMismatch):
        build_semidirect(tau)


def test_strictness_and_m_subsemigroup_of_vee():
    """Test alpha and the three-element m-subsemigroup."""
    P = vee_product()
    alpha = strictness(P)
    assert alpha == (0, 0, 1)
    M = build_m_subsemigroup(P, alpha)
    assert M.elements == ((0, 0), (1, 0), (2, 1))
    assert M.parent_indices == (0, 1, 3)
    assert m_subset(P, alpha) == (0, 1, 3)
    assert is_fully_strict(P, alpha)


def test_group_remark_negative():
    """Test the vee: fully strict, not a group, m-subsemigroup is proper."""
    P = vee_product()
    alpha = strictness(P)
    assert len(m_subset(P, alpha)) < len(P)
    assert check_group_remark(P, alpha)


def test_group_remark_positive():
    """Test Z4: the m-subsemigroup is the whole product."""
    P = build_semidirect(munn(cyclic_group(4).semigroup()))
    alpha = strictness(P)
    assert len(P) == 4
    assert len(m_subset(P, alpha)) == len(P)
    assert check_group_remark(P, alpha)


def test_alpha_map_not_strict():
    """Test a point outside every idempotent domain has no alpha."""
    S = vee()
    E = Semilattice.from_semigroup(validate_inverse_semigroup([[0, 0], [0, 1]]))
    tau = validate_premorphism(S, [PartialBijection.identity(2, {0})] * 3, E)
    with pytest.raises(NotStrict) as excinfo:
        alpha_map(tau)
    assert excinfo.value.witness == "1"


def test_embedding_of_vee():
    """Test every clause of the embedding on the vee."""
    S = vee()
    report = embedding_theorem(S, congruence_generated_by(S, [(0, 1)]))
    assert report.all_passed
    assert report.get("injective").passed
    assert report.get("image-equals-m-subsemigroup").passed
    assert "surjective: no; S/rho is a group: no" in report.info
    assert "|E(S) x S/rho| = 4" in report.info
    assert "|m-subsemigroup| = 3" in report.info


def test_embedding_surjective_for_group_congruence():
    """Test Z2 with sigma embeds onto the whole product."""
    S = cyclic_group(2).semigroup()
    report = embedding_theorem(S, sigma(S))
    assert report.all_passed
    assert "surjective: yes; S/rho is a group: yes" in report.info


def test_embedding_rejects_impure_congruence():
    """Test sigma on I_2 is refused."""
    S = symmetric_inverse_monoid(2).semigroup()
    with pytest.raises(NotIdempotentPure):
        embedding_theorem(S, sigma(S))


@pytest.mark.parametrize("instance", [chain(4), symmetric_inverse_monoid(2), cyclic_group(3)])
def test_embedding_for_every_pure_congruence(instance):
    """Test the embedding holds for every idempotent pure congruence."""
    S = instance.semigroup()
    for rho in enumerate_congruences(S, idempotent_pure=True):
        report = embedding_theorem(S, rho)
        assert report.all_passed, report.render()


def test_embedding_with_equality_on_i2():
    """Test the Munn image of I_2 with equality is not surjective."""
    S = symmetric_inverse_monoid(2).semigroup()
    report = embedding_theorem(S, validate_congruence(S, list(range(S.n))))
    assert report.all_passed
    assert report.get("surjective-iff-group-congruence").witness.startswith("(surjective=no")
