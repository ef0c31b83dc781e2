"""
O'Carroll L-triples and their correspondence with globalizable partial actions.

An L-triple (T, X, Y) is a global action phi of T on a down-directed poset X
by order isomorphisms between non-empty order ideals, together with an order
ideal and meet subsemilattice Y of X such that X = TY. Restricting phi to Y
gives a partial action tau of T on Y with L(T,X,Y) = Y x_tau T; conversely a
strict order-preserving tau with a globalization yields an L-triple.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional, Sequence, Tuple

from ..utils.config import settings
from ..utils.logger import logger
from .action import PartialAction, is_order_preserving, restrict, validate_premorphism
from .congruence import iter_partitions
from .core import FiniteInverseSemigroup, Semilattice, validate_inverse_semigroup
from .errors import (
    BadWitness,
    EmptyDomain,
    GroundMismatch,
    IdealViolation,
    InvariantViolation,
    NotDownDirected,
    NotGenerated,
    NotGlobal,
    NotInjective,
    NotOrderIsomorphism,
    NotOrderPreserving,
    NotPartialOrder,
    NotStrict,
    NotSubsemilattice,
    PremorphismError,
    SizeBoundExceeded,
)
from .models import Report
from .pbij import PartialBijection
from .product import (
    SemidirectProduct,
    alpha_map,
    build_m_subsemigroup,
    build_semidirect,
    is_fully_strict,
    pair_semigroup,
    sub_product,
    yes_no,
)


@dataclass(frozen=True)
class Poset:
    """A finite partial order; le[a][b] means a <= b."""

    size: int
    le: Tuple[Tuple[bool, ...], ...]
    names: Optional[Tuple[str, ...]] = None

    @classmethod
    def from_predicate(
        cls,
        size: int,
        predicate: Callable[[int, int], bool],
        names: Optional[Sequence[str]] = None,
    ) -> "Poset":
        """
        Build and validate a poset.

        Raises:
            NotPartialOrder: With the failing element, pair or triple
        """
        le = tuple(tuple(bool(predicate(a, b)) for b in range(size)) for a in range(size))
        for a in range(size):
            if not le[a][a]:
                raise NotPartialOrder("not reflexive", a)
            for b in range(size):
                if a != b and le[a][b] and le[b][a]:
                    raise NotPartialOrder("not antisymmetric", (a, b))
                if le[a][b]:
                    for c in range(size):
                        if le[b][c] and not le[a][c]:
                            raise NotPartialOrder("not transitive", (a, b, c))
        return cls(size, le, tuple(names) if names is not None else None)

    def leq(self, a: int, b: int) -> bool:
        return self.le[a][b]

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def meet(self, a: int, b: int) -> Optional[int]:
        """Greatest lower bound of a and b, if it exists."""
        lower = [c for c in range(self.size) if self.le[c][a] and self.le[c][b]]
        return next((m for m in lower if all(self.le[c][m] for c in lower)), None)

    def ideal_escape(self, subset: Sequence[int]) -> Optional[Tuple[int, int]]:
        """A pair (y, x) with y in subset, x <= y and x outside the subset; None for ideals."""
        points = set(subset)
        for y in sorted(points):
            for x in range(self.size):
                if self.le[x][y] and x not in points:
                    return y, x
        return None

    def is_ideal(self, subset: Sequence[int]) -> bool:
        return self.ideal_escape(subset) is None

    def down_directed_witness(self) -> Optional[Tuple[int, int]]:
        for a in range(self.size):
            for b in range(a + 1, self.size):
                if not any(self.le[c][a] and self.le[c][b] for c in range(self.size)):
                    return a, b
        return None

    def order_iso_witness(self, f: PartialBijection) -> Optional[Tuple[int, int]]:
        """A pair of domain points where f or f^-1 fails to preserve the order."""
        for x1, y1 in f.pairs():
            for x2, y2 in f.pairs():
                if self.le[x1][x2] != self.le[y1][y2]:
                    return x1, x2
        return None


@dataclass(frozen=True)
class LTriple:
    """A validated L-triple; Y lists points of X, Y[i] being the i-th point of the semilattice Y."""

    T: FiniteInverseSemigroup
    X: Poset
    Y: Tuple[int, ...]
    phi: PartialAction

    @cached_property
    def y_semilattice(self) -> Semilattice:
        position = {y: i for i, y in enumerate(self.Y)}
        rows = [[position[self.X.meet(a, b)] for b in self.Y] for a in self.Y]
        S = validate_inverse_semigroup(rows, [self.X.label(y) for y in self.Y])
        return Semilattice.from_semigroup(S)


def validate_ltriple(
    T: FiniteInverseSemigroup, X: Poset, Y: Sequence[int], phi: PartialAction
) -> LTriple:
    """
    Check every L-triple axiom.

    Raises:
        GroundMismatch: If phi does not act on X by T
        NotGlobal: If phi is not a homomorphism
        NotDownDirected: With a pair lacking a lower bound
        IdealViolation: With (y, x) escaping Y, dom phi_t or ran phi_t
        NotSubsemilattice: With a pair of Y without a meet in Y
        EmptyDomain: With t such that dom phi_t is empty
        NotOrderIsomorphism: With t whose map does not reflect or preserve the order
        NotGenerated: With a point of X outside TY
    """
    if phi.semigroup != T:
        raise GroundMismatch("the action is not by T")
    if phi.ground != X.size:
        raise GroundMismatch(f"action on {phi.ground} points, poset has {X.size}")
    if not phi.is_global:
        raise NotGlobal("an L-triple needs a global action")

    witness = X.down_directed_witness()
    if witness is not None:
        raise NotDownDirected("no common lower bound", tuple(X.label(x) for x in witness))

    escape = X.ideal_escape(Y)
    if escape is not None:
        raise IdealViolation("Y is not an order ideal", tuple(X.label(x) for x in escape))
    members = set(Y)
    for a in Y:
        for b in Y:
            m = X.meet(a, b)
            if m is None or m not in members:
                raise NotSubsemilattice("no meet inside Y", (X.label(a), X.label(b)))

    covered = set()
    for t in range(T.n):
        f = phi.maps[t]
        if not f.domain:
            raise EmptyDomain("dom phi_t is empty", T.label(t))
        for side, points in (("dom", f.domain), ("ran", f.range)):
            escape = X.ideal_escape(sorted(points))
            if escape is not None:
                raise IdealViolation(
                    f"{side} phi_t is not an order ideal",
                    (T.label(t),) + tuple(X.label(x) for x in escape),
                )
        if X.order_iso_witness(f) is not None:
            raise NotOrderIsomorphism("phi_t is not an order isomorphism", T.label(t))
        covered |= {f(y) for y in Y if y in f.domain}

    missing = sorted(set(range(X.size)) - covered)
    if missing:
        raise NotGenerated("X is not TY", X.label(missing[0]))

    return LTriple(T=T, X=X, Y=tuple(Y), phi=phi)


def ltriple_e_map(LT: LTriple) -> Tuple[int, ...]:
    """
    e(y) = least idempotent f of T with y in dom phi_f, indexed by position in Y.

    Raises:
        NotStrict: If some e(y) is undefined or e is not a semilattice morphism
    """
    T, E = LT.T, LT.y_semilattice
    e_map: List[int] = []
    for y in LT.Y:
        candidates = [f for f in T.idempotents if y in LT.phi.maps[f].domain]
        least = next((a for a in candidates if all(T.leq(a, f) for f in candidates)), None)
        if least is None:
            raise NotStrict("no least idempotent acting on the point", LT.X.label(y))
        e_map.append(least)
    for i in range(E.n):
        for j in range(i + 1, E.n):
            if e_map[E.meet(i, j)] != T.mul[e_map[i]][e_map[j]]:
                raise NotStrict("e is not a semilattice morphism", (E.label(i), E.label(j)))
    return tuple(e_map)


def build_L(LT: LTriple) -> SemidirectProduct:
    """
    L(T,X,Y) = {(a,t) : a in Y ∩ ran phi_t, phi_t^-1(a) in Y}, with a given by its position in Y.

    Pairs are ordered by (t, a) and multiplied by the semidirect product rule.
    """
    T, X, phi, E = LT.T, LT.X, LT.phi, LT.y_semilattice
    position = {y: i for i, y in enumerate(LT.Y)}
    inverses = [f.inverse() for f in phi.maps]

    elements = []
    for t in range(T.n):
        for i, a in enumerate(LT.Y):
            pre = inverses[t](a)
            if pre is not None and pre in position:
                elements.append((i, t))

    def multiply(p: Tuple[int, int], q: Tuple[int, int]) -> Tuple[int, int]:
        (i, t), (j, u) = p, q
        pre = inverses[t](LT.Y[i])
        image = phi.maps[t](X.meet(pre, LT.Y[j]))
        if image not in position:
            raise InvariantViolation("product leaves Y", (p, q))
        return position[image], T.mul[t][u]

    table = pair_semigroup(E, T, elements, multiply)
    return SemidirectProduct(base=E, acting=T, action=None, elements=tuple(elements), semigroup=table)


def build_Lm(LT: LTriple, e_map: Optional[Sequence[int]] = None) -> SemidirectProduct:
    """
    L_m(T,X,Y) = {(a,t) in L(T,X,Y) : e(a) = tt^-1}.

    Raises:
        NotStrict: If the e-map is undefined
    """
    e_map = ltriple_e_map(LT) if e_map is None else e_map
    L = build_L(LT)
    subset = [k for k, (i, t) in enumerate(L.elements) if e_map[i] == LT.T.range_idempotent(t)]
    return sub_product(L, subset, e_map)


def _same_table(a: SemidirectProduct, b: SemidirectProduct) -> bool:
    return a.elements == b.elements and a.semigroup.mul == b.semigroup.mul


def _strict_map(compute: Callable[[], Tuple[int, ...]]) -> Optional[Tuple[int, ...]]:
    try:
        return compute()
    except NotStrict:
        return None


@dataclass(frozen=True)
class TripleCorrespondence:
    """The restriction of an L-triple's action to Y plus the certificate relating them."""

    action: PartialAction
    report: Report


def ltriple_to_action(LT: LTriple) -> TripleCorrespondence:
    """
    Restrict phi to Y and certify L(T,X,Y) = Y x_tau T and the strictness transfers.

    Returns:
        TripleCorrespondence whose report must pass for every valid L-triple
    """
    tau = restrict(LT.phi, LT.Y, LT.y_semilattice)
    report = Report(title="L-triple to partial action")

    empty = next((t for t in range(LT.T.n) if not tau.maps[t].domain), None)
    report.add("domains-nonempty", empty is None, None if empty is None else LT.T.label(empty))

    P = build_semidirect(tau)
    L = build_L(LT)
    report.add("L-equals-semidirect", _same_table(P, L), f"(|L| = {len(L)})")

    alpha = _strict_map(lambda: alpha_map(tau))
    e_map = _strict_map(lambda: ltriple_e_map(LT))
    report.add(
        "strict-transfers",
        (alpha is None) == (e_map is None),
        f"(action strict={yes_no(alpha is not None)}, triple strict={yes_no(e_map is not None)})",
    )
    if alpha is not None and e_map is not None:
        report.add("alpha-equals-e-map", alpha == e_map)
        M = build_m_subsemigroup(P, alpha)
        Lm = build_Lm(LT, e_map)
        report.add("Lm-equals-m-subsemigroup", _same_table(M, Lm))
        triple_fully_strict = {t for _, t in Lm.elements} == set(range(LT.T.n))
        report.add(
            "fully-strict-transfers",
            is_fully_strict(P, alpha) == triple_fully_strict,
            f"(fully strict={yes_no(triple_fully_strict)})",
        )
    return TripleCorrespondence(action=tau, report=report)


@dataclass(frozen=True)
class Globalization:
    """
    A global action on X together with the placement of Y inside it.

    points[i] is the original ground point of local point i; y_positions[j]
    is the local point carrying the j-th point of Y.
    """

    action: PartialAction
    points: Tuple[int, ...]
    y_positions: Tuple[int, ...]


def shrink_globalization(
    phi_prime: PartialAction, Y: Sequence[int], y_semilattice: Semilattice
) -> Globalization:
    """
    Cut a globalization down to X = TY and restrict the action to it.

    Args:
        phi_prime: Global action on X'
        Y: Points of X' carrying the semilattice, in semilattice order
        y_semilattice: The semilattice structure on Y

    Raises:
        NotGlobal: If phi_prime is not global
        NotStrict: If the restriction to Y is not strict
        InvariantViolation: If Y escapes TY, the cut action is not global or restrictions differ
    """
    if not phi_prime.is_global:
        raise NotGlobal("a globalization must be global")
    tau_prime = restrict(phi_prime, Y, y_semilattice)
    alpha_map(tau_prime)

    orbit = set()
    for t in range(phi_prime.semigroup.n):
        f = phi_prime.maps[t]
        orbit |= {f(y) for y in Y if y in f.domain}
    points = tuple(sorted(orbit))
    outside = [y for y in Y if y not in orbit]
    if outside:
        raise InvariantViolation("Y is not contained in TY", phi_prime.point_label(outside[0]))

    phi = restrict(phi_prime, points, infer_semilattice=False)
    if not phi.is_global:
        logger.error("Restriction of a global action to TY is not global")
        raise InvariantViolation("restriction to TY is not global")

    position = {x: i for i, x in enumerate(points)}
    y_positions = tuple(position[y] for y in Y)
    if restrict(phi, y_positions, y_semilattice).maps != tau_prime.maps:
        raise InvariantViolation("restrictions to Y differ")
    logger.debug(f"Shrunk globalization from {phi_prime.ground} to {len(points)} points")
    return Globalization(action=phi, points=points, y_positions=y_positions)


def induce_order(
    phi: PartialAction, y_positions: Sequence[int], y_semilattice: Semilattice
) -> Poset:
    """
    The order x1 <=' x2 iff x1 = phi_t(y1), x2 = phi_t(y2) for some t and y1 <= y2 in Y ∩ dom phi_t.

    Verifies that <=' is a partial order, every phi_t is an order isomorphism
    between order ideals, Y is an order ideal and <=' agrees with the order of Y.

    Raises:
        InvariantViolation: With the failing witness
    """
    size = phi.ground
    le = [[False] * size for _ in range(size)]
    for t in range(phi.semigroup.n):
        f = phi.maps[t]
        inside = [(j, y) for j, y in enumerate(y_positions) if y in f.domain]
        for j1, y1 in inside:
            for j2, y2 in inside:
                if y_semilattice.le(j1, j2):
                    le[f(y1)][f(y2)] = True

    try:
        order = Poset.from_predicate(size, lambda a, b: le[a][b], phi.point_names)
    except NotPartialOrder as exc:
        raise InvariantViolation(f"induced relation: {exc.message}", exc.witness) from exc

    T = phi.semigroup
    for t in range(T.n):
        f = phi.maps[t]
        for points in (f.domain, f.range):
            if order.ideal_escape(sorted(points)) is not None:
                raise InvariantViolation("phi_t does not act between order ideals", T.label(t))
        if order.order_iso_witness(f) is not None:
            raise InvariantViolation("phi_t is not an order isomorphism", T.label(t))

    if order.ideal_escape(y_positions) is not None:
        raise InvariantViolation("Y is not an order ideal", order.ideal_escape(y_positions))
    for j1, y1 in enumerate(y_positions):
        for j2, y2 in enumerate(y_positions):
            if order.leq(y1, y2) != y_semilattice.le(j1, j2):
                raise InvariantViolation(
                    "induced order disagrees on Y", (y_semilattice.label(j1), y_semilattice.label(j2))
                )
    return order


@dataclass(frozen=True)
class LTripleBuild:
    """An L-triple built from a partial action, with its globalization and certificate."""

    ltriple: LTriple
    globalization: Globalization
    report: Report


def build_ltriple(
    tau: PartialAction, phi_prime: PartialAction, iota: Sequence[int]
) -> LTripleBuild:
    """
    Build a strict L-triple from a strict order-preserving partial action and a globalization.

    Args:
        tau: Partial action of T on a semilattice Y
        phi_prime: Global action of T on X'
        iota: iota[y] is the point of X' carrying y

    Returns:
        LTripleBuild whose report certifies Y x_tau T = L and Y x^m_tau T = L_m

    Raises:
        NotStrict: If tau is not strict
        NotOrderPreserving: With (s, t), s <= t but tau_s not below tau_t
        EmptyDomain: If some dom tau_t is empty
        BadWitness: If phi_prime is not global or does not restrict to tau along iota
    """
    E, T = tau.semilattice, tau.semigroup
    if E is None:
        raise GroundMismatch("an L-triple needs an action on a semilattice")
    alpha = alpha_map(tau)
    check = is_order_preserving(tau)
    if not check.holds:
        s, t = check.witness
        raise NotOrderPreserving("tau is not globalizable", (T.label(s), T.label(t)))
    empty = next((t for t in range(T.n) if not tau.maps[t].domain), None)
    if empty is not None:
        raise EmptyDomain("dom tau_t is empty", T.label(empty))

    if phi_prime.semigroup != T or not phi_prime.is_global:
        raise BadWitness("the witness is not a global action of T")
    points = list(iota)
    if len(points) != E.n or len(set(points)) != E.n or not all(0 <= x < phi_prime.ground for x in points):
        raise BadWitness("iota is not an injection of Y", points)
    try:
        restricted = restrict(phi_prime, points, E)
    except PremorphismError as exc:
        raise BadWitness("the witness restricts to no action on Y", exc.witness) from exc
    bad = next((s for s in range(T.n) if restricted.maps[s] != tau.maps[s]), None)
    if bad is not None:
        raise BadWitness("the witness does not restrict to tau", T.label(bad))

    glob = shrink_globalization(phi_prime, points, E)
    order = induce_order(glob.action, glob.y_positions, E)
    lt = validate_ltriple(T, order, glob.y_positions, glob.action)

    report = Report(title="partial action to L-triple")
    report.info.append(f"|X'| = {phi_prime.ground}, |X| = {order.size}, |Y| = {E.n}")
    correspondence = ltriple_to_action(lt)
    report.add("restriction-recovers-action", correspondence.action.maps == tau.maps)
    report.checks.extend(correspondence.report.checks)
    report.add("alpha-recovered", ltriple_e_map(lt) == alpha)
    report.add("down-directed-equivalence", down_directed_equivalence(order, lt.Y, lt.phi))

    if not report.all_passed:
        logger.warning(f"L-triple certificate failed: {[c.name for c in report.failures()]}")
    return LTripleBuild(ltriple=lt, globalization=glob, report=report)


def down_directed_equivalence(X: Poset, Y: Sequence[int], phi: PartialAction) -> bool:
    """
    Compare (X down-directed and every dom phi_t non-empty) with (every ran tau_t non-empty).

    tau is the restriction of phi to Y; the two sides agree whenever phi acts
    by order isomorphisms between ideals, Y is an ideal and TY = X.
    """
    left = X.down_directed_witness() is None and all(f.domain for f in phi.maps)
    tau = restrict(phi, Y, infer_semilattice=False)
    right = all(f.range for f in tau.maps)
    return left == right


def search_globalization(
    tau: PartialAction, force: bool = False, max_points: Optional[int] = None
) -> Optional[Tuple[PartialAction, Tuple[int, ...]]]:
    """
    Bounded brute-force search for a globalization of a strict partial action.

    Candidate points are the pairs (t, y) with y in dom tau_{t^-1 t}; every set
    partition of them, in restricted growth order, is tried as X with
    phi_s[(t,y)] = [(st,y)] and iota(y) = [(alpha(y), y)]. The first partition
    giving a global action that restricts to tau is returned.

    Args:
        tau: Strict partial action on a semilattice
        force: Run even when settings.witness_search is off
        max_points: Bound on the candidate count (settings.witness_search_max_points)

    Returns:
        (phi, iota) or None when disabled or nothing is found

    Raises:
        SizeBoundExceeded: If there are more candidate points than the bound
        NotStrict: If tau is not strict
    """
    if not (force or settings.witness_search):
        logger.info("Globalization witness search is disabled")
        return None
    bound = settings.witness_search_max_points if max_points is None else max_points
    T, E = tau.semigroup, tau.semilattice
    alpha = alpha_map(tau)

    candidates = [
        (t, y)
        for t in range(T.n)
        for y in range(E.n)
        if y in tau.maps[T.source_idempotent(t)].domain
    ]
    if len(candidates) > bound:
        raise SizeBoundExceeded(f"{len(candidates)} candidate points exceed {bound}", len(candidates))
    index = {p: i for i, p in enumerate(candidates)}
    anchors = [index[(alpha[y], y)] for y in range(E.n)]

    def consistent(prefix: List[int]) -> bool:
        seen = {}
        for y, i in enumerate(anchors):
            if i < len(prefix):
                if prefix[i] in seen:
                    return False
                seen[prefix[i]] = y
        return True

    for class_of in iter_partitions(len(candidates), consistent):
        found = _candidate_globalization(tau, candidates, index, class_of, anchors)
        if found is not None:
            logger.info(f"Found a globalization on {found[0].ground} points")
            return found
    return None


def _candidate_globalization(
    tau: PartialAction,
    candidates: Sequence[Tuple[int, int]],
    index: dict,
    class_of: Sequence[int],
    anchors: Sequence[int],
) -> Optional[Tuple[PartialAction, Tuple[int, ...]]]:
    T = tau.semigroup
    k = max(class_of) + 1
    maps = []
    for s in range(T.n):
        image: List[Optional[int]] = [None] * k
        defined: List[Optional[bool]] = [None] * k
        for i, (t, y) in enumerate(candidates):
            c = class_of[i]
            target = index.get((T.mul[s][t], y))
            if defined[c] is None:
                defined[c] = target is not None
            elif defined[c] != (target is not None):
                return None
            if target is None:
                continue
            d = class_of[target]
            if image[c] is not None and image[c] != d:
                return None
            image[c] = d
        try:
            maps.append(PartialBijection(k, tuple(image)))
        except NotInjective:
            return None
    try:
        phi = validate_premorphism(T, maps, k)
    except PremorphismError:
        return None
    if not phi.is_global:
        return None
    iota = tuple(class_of[i] for i in anchors)
    if restrict(phi, iota, tau.semilattice).maps != tau.maps:
        return None
    return phi, iota
