"""Tests for L-triples and their correspondence with partial actions."""

import pytest
from src.algebra.action import lift, munn, restrict, validate_premorphism
from src.algebra.congruence import congruence_generated_by
from src.algebra.core import Semilattice, validate_inverse_semigroup
from src.algebra.errors import (
    BadWitness,
    EmptyDomain,
    IdealViolation,
    NotDownDirected,
    NotGenerated,
    NotOrderPreserving,
    NotPartialOrder,
    SizeBoundExceeded,
)
from src.algebra.ltriple import (
    Poset,
    build_L,
    build_Lm,
    build_ltriple,
    down_directed_equivalence,
    induce_order,
    ltriple_e_map,
    ltriple_to_action,
    search_globalization,
    shrink_globalization,
    validate_ltriple,
)
from src.algebra.pbij import PartialBijection
from src.algebra.product import alpha_map, build_m_subsemigroup, build_semidirect
from src.instances.generators import (
    chain,
    cyclic_group,
    semilattice,
    semilattice_classes,
    symmetric_inverse_monoid,
    vee,
)


def trivial_action(points: int):
    T = validate_inverse_semigroup([[0]])
    return T, validate_premorphism(T, [PartialBijection.identity(points)], points)


def chain_order(size: int) -> Poset:
    return Poset.from_predicate(size, lambda a, b: a <= b)


def chain2_munn():
    return munn(chain(2).semigroup())


def round_trip_instances():
    instances = [chain(k) for k in (2, 3, 4)]
    instances += [cyclic_group(m) for m in (2, 3, 4)]
    instances += [symmetric_inverse_monoid(1), symmetric_inverse_monoid(2)]
    for size in (3, 4):
        instances += [semilattice(size, i) for i in range(len(semilattice_classes(size)))]
    return instances


def test_poset_rejects_non_order():
    """Test antisymmetry is enforced."""
    with pytest.raises(NotPartialOrder):
        Poset.from_predicate(2, lambda a, b: True)


def test_poset_meet():
    """Test meets in a chain and in an antichain."""
    assert chain_order(3).meet(1, 2) == 1
    antichain = Poset.from_predicate(2, lambda a, b: a == b)
    assert antichain.meet(0, 1) is None
    assert antichain.down_directed_witness() == (0, 1)


def test_build_ltriple_from_chain():
    """Test a global action is its own globalization."""
    delta = chain2_munn()
    built = build_ltriple(delta, delta, (0, 1))
    assert built.report.all_passed, built.report.render()
    lt = built.ltriple
    assert lt.X.size == 2
    assert lt.Y == (0, 1)
    assert ltriple_e_map(lt) == alpha_map(delta)
    assert build_L(lt).elements == build_semidirect(delta).elements
    assert ltriple_to_action(lt).action.maps == delta.maps
    assert down_directed_equivalence(lt.X, lt.Y, lt.phi)


def test_build_Lm_matches_m_subsemigroup():
    """Test L_m equals the m-subsemigroup of the semidirect product."""
    delta = chain2_munn()
    lt = build_ltriple(delta, delta, (0, 1)).ltriple
    P = build_semidirect(delta)
    M = build_m_subsemigroup(P, alpha_map(delta))
    Lm = build_Lm(lt)
    assert Lm.elements == M.elements
    assert Lm.semigroup.mul == M.semigroup.mul


@pytest.mark.parametrize("instance", round_trip_instances())
def test_round_trip_munn(instance):
    """Test the Munn representation survives the L-triple round trip."""
    delta = munn(instance.semigroup())
    built = build_ltriple(delta, delta, tuple(range(delta.ground)))
    assert built.report.all_passed, built.report.render()
    assert built.report.get("restriction-recovers-action").passed
    assert built.report.get("L-equals-semidirect").passed


def principal_ideal_instances():
    instances = [chain(3), chain(4), symmetric_inverse_monoid(2), vee()]
    for size in (3, 4):
        instances += [semilattice(size, i) for i in range(len(semilattice_classes(size)))]
    return instances


@pytest.mark.parametrize("instance", principal_ideal_instances())
def test_round_trip_on_principal_ideals(instance):
    """Test the Munn representation restricted to each proper principal ideal survives the round trip."""
    delta = munn(instance.semigroup())
    E = delta.semilattice
    tops = [e for e in range(E.n) if len(E.down_set(e)) < E.n]
    assert tops
    for top in tops:
        Y = sorted(E.down_set(top))
        tau = restrict(delta, Y)
        built = build_ltriple(tau, delta, Y)
        assert built.report.all_passed, built.report.render()
        assert built.report.info[0].startswith(f"|X'| = {E.n}, ")
        assert built.report.info[0].endswith(f", |Y| = {len(Y)}")
        glob = built.globalization
        order = induce_order(glob.action, glob.y_positions, tau.semilattice)
        for j1, y1 in enumerate(glob.y_positions):
            for j2, y2 in enumerate(glob.y_positions):
                assert order.leq(y1, y2) == tau.semilattice.le(j1, j2)


def test_i2_ideal_below_an_atom():
    """Test Y below an atom of I_2 grows to both atoms and the empty map."""
    delta = munn(symmetric_inverse_monoid(2).semigroup())
    E = delta.semilattice
    atom = next(e for e in range(E.n) if E.label(e) == "1-")
    Y = sorted(E.down_set(atom))
    built = build_ltriple(restrict(delta, Y), delta, Y)
    assert built.report.all_passed, built.report.render()
    assert "|X'| = 4, |X| = 3, |Y| = 2" in built.report.info
    assert sorted(built.globalization.action.point_names) == ["--", "-2", "1-"]


def test_group_on_itself_from_one_point():
    """Test Z3 translating itself, seen from one point, spreads to three incomparable points."""
    T = cyclic_group(3).semigroup()
    translations = [PartialBijection(3, tuple((a + x) % 3 for x in range(3))) for a in range(3)]
    phi = validate_premorphism(T, translations, 3)
    point = Semilattice.from_semigroup(validate_inverse_semigroup([[0]]))
    glob = shrink_globalization(phi, [0], point)
    assert glob.points == (0, 1, 2)
    assert glob.y_positions == (0,)
    order = induce_order(glob.action, glob.y_positions, point)
    assert all(order.leq(a, b) == (a == b) for a in range(3) for b in range(3))
    assert down_directed_equivalence(order, glob.y_positions, glob.action)
    with pytest.raises(NotDownDirected):
        validate_ltriple(T, order, glob.y_positions, glob.action)


def test_build_ltriple_rejects_vee_lift():
    """Test the lifted vee action is not order preserving."""
    S = validate_inverse_semigroup([[0, 0, 0], [0, 1, 0], [0, 0, 2]], ["0", "e", "f"])
    tau = lift(munn(S), congruence_generated_by(S, [(0, 1)]))
    with pytest.raises(NotOrderPreserving) as excinfo:
        build_ltriple(tau, tau, (0, 1, 2))
    assert excinfo.value.witness == ("[e]", "[f]")


def test_build_ltriple_bad_witness():
    """Test a placement of Y that breaks the restriction is rejected."""
    delta = chain2_munn()
    with pytest.raises(BadWitness):
        build_ltriple(delta, delta, (1, 0))
    with pytest.raises(BadWitness):
        build_ltriple(delta, delta, (0, 0))


def test_validate_ltriple_not_down_directed():
    """Test an antichain is not down-directed."""
    T, phi = trivial_action(2)
    antichain = Poset.from_predicate(2, lambda a, b: a == b)
    with pytest.raises(NotDownDirected):
        validate_ltriple(T, antichain, [0], phi)


def test_validate_ltriple_y_not_ideal():
    """Test Y must be an order ideal."""
    T, phi = trivial_action(2)
    with pytest.raises(IdealViolation):
        validate_ltriple(T, chain_order(2), [1], phi)


def test_validate_ltriple_not_generated():
    """Test X must be TY."""
    T, phi = trivial_action(2)
    with pytest.raises(NotGenerated) as excinfo:
        validate_ltriple(T, chain_order(2), [0], phi)
    assert excinfo.value.witness == "1"


def test_validate_ltriple_empty_domain():
    """Test every phi_t needs a non-empty domain."""
    T = chain(2).semigroup()
    phi = validate_premorphism(T, [PartialBijection.empty(1), PartialBijection.identity(1)], 1)
    with pytest.raises(EmptyDomain):
        validate_ltriple(T, chain_order(1), [0], phi)


def test_search_globalization_disabled_by_default():
    """Test the search is off unless forced."""
    assert search_globalization(chain2_munn()) is None


def test_search_globalization_finds_witness():
    """Test the search finds a two-point globalization of a global action."""
    found = search_globalization(chain2_munn(), force=True)
    assert found is not None
    phi, iota = found
    assert phi.is_global
    assert phi.ground == 2
    assert iota == (0, 1)


def test_search_globalization_none_for_vee_lift():
    """Test nothing globalizes an action that is not order preserving."""
    S = validate_inverse_semigroup([[0, 0, 0], [0, 1, 0], [0, 0, 2]], ["0", "e", "f"])
    tau = lift(munn(S), congruence_generated_by(S, [(0, 1)]))
    assert search_globalization(tau, force=True) is None


def test_search_globalization_bound():
    """Test the candidate bound."""
    with pytest.raises(SizeBoundExceeded):
        search_globalization(chain2_munn(), force=True, max_points=1)
