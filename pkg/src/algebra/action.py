"""Premorphisms and partial actions of finite inverse semigroups."""

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Tuple, Union

from ..utils.logger import logger
from .congruence import Congruence, is_idempotent_pure, quotient
from .core import (
    FiniteInverseSemigroup,
    Semilattice,
    is_e_unitary,
    is_f_inverse,
    semilattice_of_idempotents,
    sigma,
)
from .errors import (
    AxiomOneFails,
    AxiomTwoFails,
    ClassJoinFails,
    GroundMismatch,
    InvariantViolation,
    JoinFails,
    NotASemilattice,
    NotCovering,
    NotFInverse,
    NotGlobal,
    NotIdealIso,
    NotIdempotentPure,
)
from .pbij import PartialBijection, compose, is_ideal_iso, join, leq


@dataclass(frozen=True)
class PartialAction:
    """
    A premorphism S -> I(X), optionally into Sigma(E) when semilattice is set.

    maps[s] is the partial bijection tau_s of {0..ground-1}.
    """

    semigroup: FiniteInverseSemigroup
    ground: int
    maps: Tuple[PartialBijection, ...]
    semilattice: Optional[Semilattice] = None
    is_global: bool = False
    point_names: Optional[Tuple[str, ...]] = None

    def __getitem__(self, s: int) -> PartialBijection:
        return self.maps[s]

    def point_label(self, x: int) -> str:
        return self.point_names[x] if self.point_names else str(x)

    def render_map(self, s: int) -> str:
        return self.maps[s].render(self.point_names)

    def render(self, symbol: str = "tau") -> str:
        S = self.semigroup
        return "\n".join(f"{symbol}{S.label(s)} = {self.render_map(s)}" for s in range(S.n))


Target = Union[int, Semilattice]


def validate_premorphism(
    S: FiniteInverseSemigroup,
    maps: Sequence[PartialBijection],
    target: Target,
    point_names: Optional[Sequence[str]] = None,
) -> PartialAction:
    """
    Validate a table of partial bijections as a premorphism.

    Args:
        S: Acting semigroup
        maps: One partial bijection per element of S
        target: Ground size of a set action, or the semilattice E for Sigma(E)
        point_names: Optional labels of ground points (taken from E when omitted)

    Returns:
        PartialAction with is_global computed

    Raises:
        GroundMismatch: If the table shapes disagree
        AxiomOneFails: With s where tau(s^-1) != tau(s)^-1
        AxiomTwoFails: With (s, t) where tau(s)tau(t) is not below tau(st)
        NotIdealIso: With s where tau_s is not in Sigma(E)
    """
    semilattice = target if isinstance(target, Semilattice) else None
    ground = semilattice.n if semilattice is not None else int(target)
    if len(maps) != S.n:
        raise GroundMismatch(f"{len(maps)} maps for a semigroup of order {S.n}")
    for s, f in enumerate(maps):
        if f.m != ground:
            raise GroundMismatch(f"map {S.label(s)} has ground {f.m}, expected {ground}", s)

    for s in range(S.n):
        if maps[S.inv[s]] != maps[s].inverse():
            raise AxiomOneFails("tau(s^-1) != tau(s)^-1", S.label(s))

    is_global = True
    for s in range(S.n):
        for t in range(S.n):
            product = compose(maps[s], maps[t])
            target_map = maps[S.mul[s][t]]
            if not leq(product, target_map):
                raise AxiomTwoFails("tau(s)tau(t) is not below tau(st)", (S.label(s), S.label(t)))
            if product != target_map:
                is_global = False

    for e in S.idempotents:
        if not maps[e].is_idempotent():
            logger.error(f"Premorphism sends idempotent {S.label(e)} to a non-idempotent")
            raise InvariantViolation("tau(E(S)) is not inside E(I(X))", S.label(e))

    if semilattice is not None:
        for s in range(S.n):
            if not is_ideal_iso(maps[s], semilattice):
                raise NotIdealIso("tau_s is not an isomorphism between ideals", S.label(s))
        if point_names is None:
            point_names = [semilattice.label(x) for x in range(semilattice.n)]

    return PartialAction(
        semigroup=S,
        ground=ground,
        maps=tuple(maps),
        semilattice=semilattice,
        is_global=is_global,
        point_names=tuple(point_names) if point_names is not None else None,
    )


def munn(S: FiniteInverseSemigroup) -> PartialAction:
    """
    The Munn representation: delta_s maps s^-1 s E(S) onto ss^-1 E(S) by e -> ses^-1.

    Ground point i is the idempotent S.idempotents[i].

    Raises:
        InvariantViolation: If the result is not global
    """
    E = semilattice_of_idempotents(S)
    position = {e: i for i, e in enumerate(S.idempotents)}
    maps = []
    for s in range(S.n):
        d = S.source_idempotent(s)
        image: list = [None] * E.n
        for i, e in enumerate(S.idempotents):
            if S.mul[d][e] == e:
                image[i] = position[S.mul[S.mul[s][e]][S.inv[s]]]
        maps.append(PartialBijection(E.n, tuple(image)))
    delta = validate_premorphism(S, maps, E)
    if not delta.is_global:
        logger.error("Munn representation failed the homomorphism check")
        raise InvariantViolation("Munn representation is not global")
    return delta


def lift(tau: PartialAction, rho: Congruence) -> PartialAction:
    """
    The quotient lift: tilde tau_[s] is the join of tau_t over t in [s].

    Joins are attempted even when rho is not idempotent pure, so that the
    failing class can be reported.

    Args:
        tau: Partial action of S
        rho: Congruence on S

    Returns:
        Partial action of S/rho, Sigma(E)-valued whenever tau is

    Raises:
        ClassJoinFails: If rho is not idempotent pure and some class has no join
        InvariantViolation: If rho is idempotent pure and a join fails
    """
    S = tau.semigroup
    if rho.semigroup != S:
        raise GroundMismatch("congruence is on a different semigroup")
    pure = is_idempotent_pure(rho)
    Q, _ = quotient(S, rho)

    maps = []
    for c, block in enumerate(rho.classes):
        try:
            maps.append(join([tau.maps[t] for t in block]))
        except JoinFails as exc:
            if pure:
                logger.error(f"Join over class {rho.class_label(c)} failed for a pure congruence")
                raise InvariantViolation("join over an idempotent pure class failed", exc.witness) from exc
            logger.warning(f"No join over class {rho.class_label(c)}: {exc.witness}")
            raise ClassJoinFails(
                f"class {rho.class_label(c)} has no join", exc.witness, class_index=c
            ) from exc

    if not pure:
        logger.warning("Lifting along a congruence that is not idempotent pure")
    target: Target = tau.semilattice if tau.semilattice is not None else tau.ground
    return validate_premorphism(Q, maps, target, point_names=tau.point_names)


class OrderCheck(NamedTuple):
    """Verdict of is_order_preserving, with the first failing pair."""

    holds: bool
    witness: Optional[Tuple[int, int]] = None


def is_order_preserving(tau: PartialAction) -> OrderCheck:
    """
    Check s <= t => tau_s <= tau_t; this decides whether tau is globalizable.

    Returns:
        OrderCheck with the lexicographically least failing (s, t)
    """
    S = tau.semigroup
    for s in range(S.n):
        for t in range(S.n):
            if s != t and S.leq(s, t) and not leq(tau.maps[s], tau.maps[t]):
                return OrderCheck(False, (s, t))
    return OrderCheck(True)


def restrict(
    phi: PartialAction,
    Y: Sequence[int],
    semilattice: Optional[Semilattice] = None,
    infer_semilattice: bool = True,
) -> PartialAction:
    """
    Restriction of a global action to Y: tau_s = iota^-1 phi_s iota.

    Local point i of the result is Y[i]. The result is tagged with the given
    semilattice, or (when infer_semilattice is set) with the subsemilattice of
    phi's semilattice on Y when Y is closed under meets.

    Raises:
        NotGlobal: If phi is not global
    """
    if not phi.is_global:
        raise NotGlobal("only global actions can be restricted")
    points = list(Y)
    position = {x: i for i, x in enumerate(points)}
    if len(position) != len(points):
        raise GroundMismatch("subset has repeated points", points)

    maps = []
    for s in range(phi.semigroup.n):
        f = phi.maps[s]
        image = tuple(
            position.get(f(x)) if f(x) is not None else None for x in points
        )
        maps.append(PartialBijection(len(points), image))

    names = [phi.point_label(x) for x in points]
    if semilattice is not None:
        return validate_premorphism(phi.semigroup, maps, semilattice, point_names=names)
    if infer_semilattice and phi.semilattice is not None:
        try:
            sub = phi.semilattice.subsemilattice(points)
            return validate_premorphism(phi.semigroup, maps, sub, point_names=names)
        except (NotASemilattice, NotIdealIso):
            logger.debug("Restriction is not semilattice-valued; keeping a set action")
    return validate_premorphism(phi.semigroup, maps, len(points), point_names=names)


def check_f_inverse_lift(tau: PartialAction) -> bool:
    """
    For F-inverse S and global tau, compare the lift over sigma with tau at class maxima.

    Raises:
        NotFInverse: If some sigma-class has no maximum
        NotGlobal: If tau is not global
    """
    S = tau.semigroup
    check = is_f_inverse(S)
    if not check.holds:
        raise NotFInverse("some sigma-class has no maximum")
    if not tau.is_global:
        raise NotGlobal("the action must be global")
    lifted = lift(tau, sigma(S))
    return all(
        lifted.maps[c] == tau.maps[top] for c, top in enumerate(check.maxima)
    )


def lift_to_maximum_group_image(tau: PartialAction) -> PartialAction:
    """
    Lift tau along sigma for E-unitary S whose idempotent domains cover X.

    Returns:
        Partial action of the group S/sigma

    Raises:
        NotIdempotentPure: If S is not E-unitary
        NotCovering: If the domains of tau_e, e idempotent, miss a point
    """
    S = tau.semigroup
    if not is_e_unitary(S):
        raise NotIdempotentPure("sigma is not idempotent pure")
    covered = set()
    for e in S.idempotents:
        covered |= tau.maps[e].domain
    missing = sorted(set(range(tau.ground)) - covered)
    if missing:
        raise NotCovering("idempotent domains do not cover the ground set", missing[0])
    lifted = lift(tau, sigma(S))
    if not lifted.semigroup.is_group():
        raise InvariantViolation("quotient by sigma is not a group")
    return lifted
