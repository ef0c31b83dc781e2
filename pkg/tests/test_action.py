"""Tests for premorphisms, the Munn representation and quotient lifts."""

import pytest
from src.algebra.action import (
    OrderCheck,
    check_f_inverse_lift,
    is_order_preserving,
    lift,
    lift_to_maximum_group_image,
    munn,
    restrict,
    validate_premorphism,
)
from src.algebra.congruence import congruence_generated_by, validate_congruence
from src.algebra.core import semilattice_of_idempotents, sigma, validate_inverse_semigroup
from src.algebra.errors import (
    AxiomOneFails,
    AxiomTwoFails,
    ClassJoinFails,
    GroundMismatch,
    JoinFails,
    NotCovering,
    NotFInverse,
    NotGlobal,
    NotIdealIso,
    NotIdempotentPure,
)
from src.algebra.pbij import PartialBijection
from src.instances.generators import chain, cyclic_group, symmetric_inverse_monoid


def vee():
    return validate_inverse_semigroup([[0, 0, 0], [0, 1, 0], [0, 0, 2]], ["0", "e", "f"])


def z2_swap():
    S = cyclic_group(2).semigroup()
    maps = [PartialBijection.identity(2), PartialBijection(2, (1, 0))]
    return validate_premorphism(S, maps, 2)


def lifted_vee():
    S = vee()
    return lift(munn(S), congruence_generated_by(S, [(0, 1)]))


def test_munn_on_vee():
    """Test delta_s is the identity on the down-set of s."""
    delta = munn(vee())
    assert delta.is_global
    assert delta.render("delta") == "delta0 = id{0}\ndeltae = id{0,e}\ndeltaf = id{0,f}"


def test_munn_on_i2_is_global():
    """Test the Munn representation of I_2 is a homomorphism on E(I_2)."""
    S = symmetric_inverse_monoid(2).semigroup()
    delta = munn(S)
    assert delta.is_global
    assert delta.ground == 4
    swap = S.index_of("21")
    assert not delta.maps[swap].is_idempotent()


def test_lift_of_vee():
    """Test the lift along {0,e},{f} gives id{0,e} and id{0,f}."""
    tau = lifted_vee()
    assert tau.semigroup.names == ("[e]", "[f]")
    assert tau.render_map(0) == "id{0,e}"
    assert tau.render_map(1) == "id{0,f}"
    assert tau.render("delta~") == "delta~[e] = id{0,e}\ndelta~[f] = id{0,f}"
    assert not tau.is_global


def test_lift_of_vee_is_not_order_preserving():
    """Test [e] <= [f] while id{0,e} is not below id{0,f}."""
    assert is_order_preserving(lifted_vee()) == OrderCheck(False, (0, 1))


def test_lift_along_equality_is_the_action():
    """Test lifting along equality returns the same maps."""
    S = vee()
    delta = munn(S)
    lifted = lift(delta, validate_congruence(S, [0, 1, 2]))
    assert lifted.maps == delta.maps


def test_lift_join_fails_for_impure_congruence():
    """Test Z2 on {a,b} with the universal congruence has no join over {1,g}."""
    tau = z2_swap()
    rho = validate_congruence(tau.semigroup, [0, 0])
    with pytest.raises(ClassJoinFails) as excinfo:
        lift(tau, rho)
    assert isinstance(excinfo.value, JoinFails)
    assert isinstance(excinfo.value, NotIdempotentPure)
    assert excinfo.value.class_index == 0
    assert excinfo.value.witness.kind == "two-images"
    assert excinfo.value.witness.point == 0


def test_lift_rejects_foreign_congruence():
    """Test the congruence must live on the acting semigroup."""
    with pytest.raises(GroundMismatch):
        lift(z2_swap(), validate_congruence(vee(), [0, 0, 0]))


def test_axiom_one_fails():
    """Test tau(g^-1) must be tau(g)^-1."""
    S = cyclic_group(2).semigroup()
    maps = [PartialBijection.identity(2), PartialBijection.from_pairs(2, [(0, 1)])]
    with pytest.raises(AxiomOneFails) as excinfo:
        validate_premorphism(S, maps, 2)
    assert excinfo.value.witness == "g"


def test_axiom_two_fails():
    """Test tau(e)tau(f) must lie below tau(ef)."""
    S = vee()
    maps = [PartialBijection.empty(1), PartialBijection.identity(1), PartialBijection.identity(1)]
    with pytest.raises(AxiomTwoFails) as excinfo:
        validate_premorphism(S, maps, 1)
    assert excinfo.value.witness == ("e", "f")


def test_premorphism_that_is_not_global():
    """Test a valid premorphism with tau(e)tau(f) strictly below tau(ef)."""
    S = vee()
    maps = [PartialBijection.identity(1), PartialBijection.empty(1), PartialBijection.empty(1)]
    tau = validate_premorphism(S, maps, 1)
    assert not tau.is_global


def test_premorphism_shape_mismatch():
    """Test one map per element on the declared ground set."""
    S = vee()
    with pytest.raises(GroundMismatch):
        validate_premorphism(S, [PartialBijection.identity(1)], 1)
    with pytest.raises(GroundMismatch):
        validate_premorphism(S, [PartialBijection.identity(2)] * 3, 1)


def test_not_ideal_iso():
    """Test maps into Sigma(E) must act between order ideals."""
    S = vee()
    E = semilattice_of_idempotents(S)
    maps = [PartialBijection.identity(3, {1})] * 3
    with pytest.raises(NotIdealIso):
        validate_premorphism(S, maps, E)


def test_restrict_global_action():
    """Test restricting the Munn representation of the vee to {0,e}."""
    tau = restrict(munn(vee()), [0, 1])
    assert tau.ground == 2
    assert tau.semilattice is not None
    assert tau.point_names == ("0", "e")
    assert tau.maps[2] == PartialBijection(2, (0, None))
    assert tau.maps[1] == PartialBijection.identity(2)


def test_restrict_needs_global_action():
    """Test only global actions restrict."""
    with pytest.raises(NotGlobal):
        restrict(lifted_vee(), [0])


def test_check_f_inverse_lift_on_chain():
    """Test the lift over sigma agrees with the action at the class maximum."""
    C = chain(3).semigroup()
    assert check_f_inverse_lift(munn(C))


def test_check_f_inverse_lift_rejects_vee():
    """Test the vee is not F-inverse."""
    with pytest.raises(NotFInverse):
        check_f_inverse_lift(munn(vee()))


def test_lift_to_maximum_group_image():
    """Test an action of a group lifts to itself along sigma."""
    tau = z2_swap()
    lifted = lift_to_maximum_group_image(tau)
    assert lifted.semigroup.is_group()
    assert lifted.maps == tau.maps


def test_lift_to_maximum_group_image_needs_e_unitary():
    """Test I_2 is rejected."""
    with pytest.raises(NotIdempotentPure):
        lift_to_maximum_group_image(munn(symmetric_inverse_monoid(2).semigroup()))


def test_lift_to_maximum_group_image_needs_cover():
    """Test the idempotent domains must cover the ground set."""
    S = cyclic_group(2).semigroup()
    maps = [PartialBijection.identity(2, {0})] * 2
    tau = validate_premorphism(S, maps, 2)
    with pytest.raises(NotCovering) as excinfo:
        lift_to_maximum_group_image(tau)
    assert excinfo.value.witness == 1


def test_sigma_lift_of_semilattice_collapses_to_top():
    """Test the lift of a chain's Munn representation along sigma is the identity."""
    C = chain(3).semigroup()
    lifted = lift(munn(C), sigma(C))
    assert lifted.maps == (PartialBijection.identity(3),)
