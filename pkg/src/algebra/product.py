"""Semidirect products E x_tau S, their m-subsemigroups and the embedding theorem."""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..utils.logger import logger
from .action import PartialAction, lift, munn
from .congruence import Congruence, is_idempotent_pure
from .core import (
    FiniteInverseSemigroup,
    Semilattice,
    green_r,
    is_e_unitary,
    sigma,
    validate_inverse_semigroup,
)
from .errors import GroundMismatch, InvariantViolation, NotIdempotentPure, NotStrict
from .models import Report

Pair = Tuple[int, int]


@dataclass(frozen=True)
class SemidirectProduct:
    """
    Inverse semigroup of pairs (e, s) with e in the base semilattice, s in the acting semigroup.

    semigroup is the validated table on pair indices; elements[i] is the pair
    of index i. For an m-subsemigroup, parent_indices maps back into the full
    product and alpha holds the strictness map.
    """

    base: Semilattice
    acting: FiniteInverseSemigroup
    action: Optional[PartialAction]
    elements: Tuple[Pair, ...]
    semigroup: FiniteInverseSemigroup
    alpha: Optional[Tuple[int, ...]] = None
    parent_indices: Optional[Tuple[int, ...]] = None

    @cached_property
    def index(self) -> Dict[Pair, int]:
        return {pair: i for i, pair in enumerate(self.elements)}

    def index_of(self, pair: Pair) -> int:
        return self.index[pair]

    def __len__(self) -> int:
        return len(self.elements)

    def pair_label(self, pair: Pair) -> str:
        e, s = pair
        return f"({self.base.label(e)},{self.acting.label(s)})"

    def render(self) -> str:
        return "{" + ", ".join(self.pair_label(p) for p in self.elements) + "}"


def pair_semigroup(
    base: Semilattice,
    acting: FiniteInverseSemigroup,
    elements: Sequence[Pair],
    multiply: Callable[[Pair, Pair], Pair],
) -> FiniteInverseSemigroup:
    """
    Tabulate a multiplication on a list of pairs and validate it.

    Raises:
        InvariantViolation: If a product leaves the list
    """
    position = {pair: i for i, pair in enumerate(elements)}
    rows = []
    for p in elements:
        row = []
        for q in elements:
            r = multiply(p, q)
            if r not in position:
                logger.error(f"Product of {p} and {q} left the pair set")
                raise InvariantViolation("pair set is not closed under the product", (p, q, r))
            row.append(position[r])
        rows.append(row)
    names = [f"({base.label(e)},{acting.label(s)})" for e, s in elements]
    return validate_inverse_semigroup(rows, names)


def semidirect_multiplier(tau: PartialAction) -> Callable[[Pair, Pair], Pair]:
    """(e,s)(f,t) = (tau_s(tau_s^-1(e) ∧ f), st)."""
    E = tau.semilattice
    S = tau.semigroup
    inverses = [f.inverse() for f in tau.maps]

    def multiply(p: Pair, q: Pair) -> Pair:
        (e, s), (f, t) = p, q
        pre = inverses[s](e)
        if pre is None:
            raise InvariantViolation("first component is outside ran tau_s", p)
        image = tau.maps[s](E.meet(pre, f))
        if image is None:
            raise InvariantViolation("meet is outside dom tau_s", (p, q))
        return image, S.mul[s][t]

    return multiply


def build_semidirect(tau: PartialAction) -> SemidirectProduct:
    """
    E x_tau S = {(e, s) : e in ran tau_s}, ordered by (s, e).

    Verifies the idempotent and inverse formulas on every element.

    Raises:
        GroundMismatch: If tau is not semilattice-valued
        InvariantViolation: If the product or the formulas fail
    """
    if tau.semilattice is None:
        raise GroundMismatch("semidirect product needs an action on a semilattice")
    E, S = tau.semilattice, tau.semigroup
    elements = tuple((e, s) for s in range(S.n) for e in sorted(tau.maps[s].range))
    table = pair_semigroup(E, S, elements, semidirect_multiplier(tau))
    product = SemidirectProduct(base=E, acting=S, action=tau, elements=elements, semigroup=table)

    for i, (e, s) in enumerate(elements):
        if table.is_idempotent(i) != S.is_idempotent(s):
            raise InvariantViolation("idempotents are not the pairs over E(S)", product.pair_label((e, s)))
        expected = (tau.maps[s].inverse()(e), S.inv[s])
        if elements[table.inv[i]] != expected:
            raise InvariantViolation("inverse formula fails", product.pair_label((e, s)))

    logger.debug(f"Built semidirect product with {len(elements)} elements")
    return product


def alpha_map(tau: PartialAction) -> Tuple[int, ...]:
    """
    alpha(e) = least idempotent f of S with e in dom tau_f.

    Returns:
        alpha as a table from base points to elements of S

    Raises:
        NotStrict: If some set has no minimum or alpha is not a semilattice morphism
    """
    E, S = tau.semilattice, tau.semigroup
    if E is None:
        raise GroundMismatch("strictness needs an action on a semilattice")
    alpha: List[int] = []
    for e in range(E.n):
        candidates = [f for f in S.idempotents if e in tau.maps[f].domain]
        least = next(
            (a for a in candidates if all(S.leq(a, f) for f in candidates)), None
        )
        if least is None:
            raise NotStrict("no least idempotent acting on the point", E.label(e))
        alpha.append(least)
    for e in range(E.n):
        for f in range(e + 1, E.n):
            if alpha[E.meet(e, f)] != S.mul[alpha[e]][alpha[f]]:
                raise NotStrict("alpha is not a semilattice morphism", (E.label(e), E.label(f)))
    return tuple(alpha)


def strictness(P: SemidirectProduct) -> Tuple[int, ...]:
    """
    The strictness map of the product's action, checked against alpha(e) <= ss^-1.

    Raises:
        NotStrict: See alpha_map
        InvariantViolation: If alpha(e) <= ss^-1 fails for a member pair
    """
    alpha = alpha_map(P.action)
    S = P.acting
    for e, s in P.elements:
        if not S.leq(alpha[e], S.range_idempotent(s)):
            raise InvariantViolation("alpha(e) is not below ss^-1", P.pair_label((e, s)))
    return alpha


def m_subset(P: SemidirectProduct, alpha: Sequence[int]) -> Tuple[int, ...]:
    """Indices of the pairs (e, s) with alpha(e) = ss^-1."""
    S = P.acting
    return tuple(i for i, (e, s) in enumerate(P.elements) if alpha[e] == S.range_idempotent(s))


def build_m_subsemigroup(P: SemidirectProduct, alpha: Sequence[int]) -> SemidirectProduct:
    """
    The inverse subsemigroup of pairs with alpha(e) = ss^-1.

    Also checks alpha(tau_s(e)) = s alpha(e) s^-1 for every s and e in dom tau_s.

    Raises:
        InvariantViolation: If the conjugation identity or closure fails
    """
    tau, S = P.action, P.acting
    for s in range(S.n):
        for e, image in tau.maps[s].pairs():
            if alpha[image] != S.mul[S.mul[s][alpha[e]]][S.inv[s]]:
                raise InvariantViolation(
                    "alpha(tau_s(e)) != s alpha(e) s^-1", (S.label(s), P.base.label(e))
                )

    return sub_product(P, m_subset(P, alpha), alpha)


def sub_product(
    P: SemidirectProduct, subset: Sequence[int], alpha: Sequence[int]
) -> SemidirectProduct:
    """
    Restrict a product to an inverse subsemigroup given by pair indices.

    Raises:
        InvariantViolation: If the subset is not closed under products and inverses
    """
    members = set(subset)
    table = P.semigroup
    for i in subset:
        if table.inv[i] not in members:
            raise InvariantViolation("subset is not closed under inverses", P.pair_label(P.elements[i]))
        for j in subset:
            if table.mul[i][j] not in members:
                raise InvariantViolation(
                    "subset is not closed under products",
                    (P.pair_label(P.elements[i]), P.pair_label(P.elements[j])),
                )

    position = {i: k for k, i in enumerate(subset)}
    rows = [[position[table.mul[i][j]] for j in subset] for i in subset]
    restricted = validate_inverse_semigroup(rows, [table.label(i) for i in subset])
    return SemidirectProduct(
        base=P.base,
        acting=P.acting,
        action=P.action,
        elements=tuple(P.elements[i] for i in subset),
        semigroup=restricted,
        alpha=tuple(alpha),
        parent_indices=tuple(subset),
    )


def is_fully_strict(P: SemidirectProduct, alpha: Sequence[int]) -> bool:
    """True iff (e, s) -> s maps the m-subsemigroup onto the acting semigroup."""
    hit = {P.elements[i][1] for i in m_subset(P, alpha)}
    return len(hit) == P.acting.n


def check_group_remark(P: SemidirectProduct, alpha: Sequence[int]) -> bool:
    """
    For fully strict actions: the m-subsemigroup is everything iff the acting semigroup is a group.

    Raises:
        NotStrict: If the action is not fully strict
    """
    if not is_fully_strict(P, alpha):
        raise NotStrict("action is not fully strict")
    everything = len(m_subset(P, alpha)) == len(P.elements)
    return everything == P.acting.is_group()


def embedding_theorem(S: FiniteInverseSemigroup, rho: Congruence) -> Report:
    """
    Run munn -> lift -> semidirect -> strictness -> m-subsemigroup and verify the embedding.

    phi(s) = (ss^-1, [s]). Clauses:
        homomorphism, injective, image-equals-m-subsemigroup, kernel-equals-rho,
        surjective-iff-group-congruence; plus alpha-is-class-map and fully-strict.

    Args:
        S: Inverse semigroup
        rho: Idempotent pure congruence on S

    Returns:
        Report with one check per clause

    Raises:
        NotIdempotentPure: If rho is not idempotent pure
    """
    if not is_idempotent_pure(rho):
        raise NotIdempotentPure("the embedding needs an idempotent pure congruence", rho.render())

    report = Report(title=f"embedding of S into E(S) x (S/rho), rho = {rho.render()}")
    delta = munn(S)
    lifted = lift(delta, rho)
    P = build_semidirect(lifted)
    alpha = strictness(P)
    M = build_m_subsemigroup(P, alpha)
    Q = lifted.semigroup

    position = {e: i for i, e in enumerate(S.idempotents)}
    phi = []
    for s in range(S.n):
        pair = (position[S.range_idempotent(s)], rho.class_of[s])
        if pair not in P.index:
            raise InvariantViolation("phi(s) is not in the product", S.label(s))
        phi.append(P.index_of(pair))

    report.info.append(f"|S| = {S.n}")
    report.info.append(f"|E(S) x S/rho| = {len(P)}")
    report.info.append(f"|m-subsemigroup| = {len(M)}")

    class_alpha = next(
        (e for e, f in enumerate(S.idempotents) if alpha[e] != rho.class_of[f]), None
    )
    report.add(
        "alpha-is-class-map",
        class_alpha is None,
        None if class_alpha is None else S.label(S.idempotents[class_alpha]),
    )
    report.add("fully-strict", is_fully_strict(P, alpha))

    bad_hom = next(
        (
            (s, t)
            for s in range(S.n)
            for t in range(S.n)
            if phi[S.mul[s][t]] != P.semigroup.mul[phi[s]][phi[t]]
        ),
        None,
    )
    report.add(
        "homomorphism",
        bad_hom is None,
        None if bad_hom is None else f"({S.label(bad_hom[0])},{S.label(bad_hom[1])})",
    )

    R = green_r(S)
    collision = next(
        (
            (s, t)
            for s in range(S.n)
            for t in range(s + 1, S.n)
            if phi[s] == phi[t] or (R(s, t) and rho.same(s, t))
        ),
        None,
    )
    report.add(
        "injective",
        collision is None,
        None if collision is None else f"({S.label(collision[0])},{S.label(collision[1])})",
    )

    image = set(phi)
    m_members = set(M.parent_indices)
    stray = sorted(image ^ m_members)
    report.add(
        "image-equals-m-subsemigroup",
        not stray,
        P.pair_label(P.elements[stray[0]]) if stray else None,
    )

    kernel_gap = next(
        (
            (s, t)
            for s in range(S.n)
            for t in range(S.n)
            if rho.same(s, t) != (P.elements[phi[s]][1] == P.elements[phi[t]][1])
        ),
        None,
    )
    report.add(
        "kernel-equals-rho",
        kernel_gap is None,
        None if kernel_gap is None else f"({S.label(kernel_gap[0])},{S.label(kernel_gap[1])})",
    )

    surjective = len(image) == len(P)
    e_unitary = is_e_unitary(S)
    rho_is_sigma = rho.class_of == sigma(S).class_of
    report.add(
        "surjective-iff-group-congruence",
        surjective == (e_unitary and rho_is_sigma),
        f"(surjective={yes_no(surjective)}, e-unitary={yes_no(e_unitary)}, "
        f"rho=sigma={yes_no(rho_is_sigma)})",
    )
    report.info.append(f"surjective: {yes_no(surjective)}; S/rho is a group: {yes_no(Q.is_group())}")

    if not report.all_passed:
        logger.warning(f"Embedding check failed: {[c.name for c in report.failures()]}")
    return report


def yes_no(flag: bool) -> str:
    return "yes" if flag else "no"
