"""Tests for inverse semigroup validation and derived relations."""

import pytest
from src.algebra.core import (
    Semilattice,
    compatibility,
    green_r,
    is_e_unitary,
    is_f_inverse,
    natural_partial_order,
    semilattice_of_idempotents,
    sigma,
    validate_inverse_semigroup,
)
from src.algebra.errors import (
    IdempotentsDontCommute,
    MalformedTable,
    NoInverse,
    NotAnInverseSemigroup,
    NotASemilattice,
    NotAssociative,
)
from src.instances.generators import chain, cyclic_group, symmetric_inverse_monoid

VEE = [[0, 0, 0], [0, 1, 0], [0, 0, 2]]


def vee():
    return validate_inverse_semigroup(VEE, ["0", "e", "f"])


def test_validate_vee():
    """Test the three-element semilattice validates with every element idempotent."""
    S = vee()
    assert S.n == 3
    assert S.idempotents == (0, 1, 2)
    assert S.inv == (0, 1, 2)
    assert S.is_semilattice()
    assert S.identity() is None


def test_validate_non_associative():
    """Test a non-associative table is rejected with its failing triple."""
    with pytest.raises(NotAnInverseSemigroup) as excinfo:
        validate_inverse_semigroup([[0, 1], [0, 0]])
    assert isinstance(excinfo.value, NotAssociative)
    assert excinfo.value.witness == (1, 0, 1)


def test_validate_left_zero_band():
    """Test non-commuting idempotents are reported."""
    with pytest.raises(IdempotentsDontCommute) as excinfo:
        validate_inverse_semigroup([[0, 0], [1, 1]])
    assert excinfo.value.witness == (0, 1)


def test_validate_null_semigroup():
    """Test an element without an inverse is reported."""
    with pytest.raises(NoInverse) as excinfo:
        validate_inverse_semigroup([[0, 0], [0, 0]])
    assert excinfo.value.witness == 1


def test_validate_malformed():
    """Test shape errors."""
    with pytest.raises(MalformedTable):
        validate_inverse_semigroup([[0, 1], [0]])
    with pytest.raises(MalformedTable):
        validate_inverse_semigroup([[0, 2], [1, 0]])
    with pytest.raises(MalformedTable):
        validate_inverse_semigroup([])


def test_validate_trivial():
    """Test the one-element semigroup."""
    S = validate_inverse_semigroup([[0]])
    assert S.is_group()
    assert S.is_semilattice()
    assert S.identity() == 0


def test_symmetric_inverse_monoid_shape():
    """Test I_2 has 7 elements, 4 idempotents, a zero and an identity."""
    S = symmetric_inverse_monoid(2).semigroup()
    assert S.n == 7
    assert len(S.idempotents) == 4
    zero, one = S.index_of("--"), S.index_of("12")
    assert S.identity() == one
    assert all(S.leq(zero, s) and S.leq(s, one) for s in S.idempotents)
    swap = S.index_of("21")
    assert S.inv[swap] == swap
    assert not S.leq(swap, one)


def test_natural_order_is_partial_order():
    """Test the natural order of I_2 is a partial order."""
    S = symmetric_inverse_monoid(2).semigroup()
    assert natural_partial_order(S).is_partial_order()


def test_compatibility_in_group_is_equality():
    """Test ~ in a group relates only equal elements."""
    S = cyclic_group(3).semigroup()
    assert compatibility(S).is_equality()


def test_green_r_classes():
    """Test I_2 has one R-class per range."""
    S = symmetric_inverse_monoid(2).semigroup()
    assert len(green_r(S).classes()) == 4


def test_sigma():
    """Test the minimum group congruence on groups, semilattices and I_2."""
    assert sigma(cyclic_group(4).semigroup()).is_equality()
    assert sigma(vee()).is_universal()
    assert sigma(symmetric_inverse_monoid(2).semigroup()).is_universal()


def test_e_unitary():
    """Test E-unitarity."""
    assert is_e_unitary(vee())
    assert is_e_unitary(cyclic_group(3).semigroup())
    assert not is_e_unitary(symmetric_inverse_monoid(2).semigroup())


def test_f_inverse():
    """Test F-inverse detection and the maxima it reports."""
    C = chain(3).semigroup()
    check = is_f_inverse(C)
    assert check.holds
    assert check.maxima == (2,)

    assert not is_f_inverse(vee()).holds
    assert not is_f_inverse(symmetric_inverse_monoid(2).semigroup()).holds
    assert is_f_inverse(cyclic_group(3).semigroup()).holds


def test_semilattice_helpers():
    """Test meets, ideals and subsemilattices of the vee."""
    E = Semilattice.from_semigroup(vee())
    assert E.meet(1, 2) == 0
    assert E.le(0, 1) and not E.le(1, 2)
    assert E.down_set(1) == frozenset({0, 1})
    assert E.is_ideal({0, 1})
    assert not E.is_ideal({1})

    sub = E.subsemilattice([0, 2])
    assert sub.n == 2
    assert sub.names == ("0", "f")
    with pytest.raises(NotASemilattice):
        E.subsemilattice([1, 2])


def test_semilattice_from_group_fails():
    """Test a non-trivial group is not a semilattice."""
    with pytest.raises(NotASemilattice):
        Semilattice.from_semigroup(cyclic_group(2).semigroup())


def test_semilattice_of_idempotents():
    """Test E(I_2) keeps the labels of the idempotents."""
    S = symmetric_inverse_monoid(2).semigroup()
    E = semilattice_of_idempotents(S)
    assert E.n == 4
    assert E.names == tuple(S.label(e) for e in S.idempotents)
    assert E.is_semilattice()
