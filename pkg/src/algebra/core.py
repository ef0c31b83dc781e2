"""Finite inverse semigroups given by Cayley tables, and their derived relations."""

from dataclasses import dataclass
from functools import cached_property
from typing import (
    TYPE_CHECKING,
    Callable,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from ..utils.logger import logger
from .errors import (
    IdempotentsDontCommute,
    InvariantViolation,
    MalformedTable,
    NoInverse,
    NotASemilattice,
    NotAssociative,
)

if TYPE_CHECKING:
    from .congruence import Congruence


Table = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class BinaryRelation:
    """A relation on {0..n-1} stored as an n x n boolean table."""

    n: int
    table: Tuple[Tuple[bool, ...], ...]

    @classmethod
    def from_predicate(cls, n: int, predicate: Callable[[int, int], bool]) -> "BinaryRelation":
        return cls(n, tuple(tuple(bool(predicate(a, b)) for b in range(n)) for a in range(n)))

    def __call__(self, a: int, b: int) -> bool:
        return self.table[a][b]

    def pairs(self) -> Iterator[Tuple[int, int]]:
        for a in range(self.n):
            for b in range(self.n):
                if self.table[a][b]:
                    yield a, b

    def issubset(self, other: "BinaryRelation") -> bool:
        return self.n == other.n and all(other(a, b) for a, b in self.pairs())

    def intersection(self, other: "BinaryRelation") -> "BinaryRelation":
        return BinaryRelation.from_predicate(self.n, lambda a, b: self(a, b) and other(a, b))

    def is_reflexive(self) -> bool:
        return all(self.table[a][a] for a in range(self.n))

    def is_symmetric(self) -> bool:
        return all(self(b, a) for a, b in self.pairs())

    def is_antisymmetric(self) -> bool:
        return all(a == b or not self(b, a) for a, b in self.pairs())

    def is_transitive(self) -> bool:
        return all(
            self(a, c)
            for a, b in self.pairs()
            for c in range(self.n)
            if self(b, c)
        )

    def is_partial_order(self) -> bool:
        return self.is_reflexive() and self.is_antisymmetric() and self.is_transitive()

    def is_equivalence(self) -> bool:
        return self.is_reflexive() and self.is_symmetric() and self.is_transitive()

    def is_equality(self) -> bool:
        return all(a == b for a, b in self.pairs()) and self.is_reflexive()

    def classes(self) -> List[Tuple[int, ...]]:
        """Blocks of an equivalence relation, ordered by least member."""
        seen: set = set()
        blocks = []
        for a in range(self.n):
            if a in seen:
                continue
            block = tuple(b for b in range(self.n) if self(a, b))
            seen.update(block)
            blocks.append(block)
        return blocks


@dataclass(frozen=True)
class FiniteInverseSemigroup:
    """
    An inverse semigroup on the dense indices 0..n-1.

    Instances are produced by validate_inverse_semigroup and never mutated.
    """

    n: int
    mul: Table
    inv: Tuple[int, ...]
    names: Optional[Tuple[str, ...]] = None

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def label(self, s: int) -> str:
        return self.names[s] if self.names else str(s)

    def labels(self, elements: Iterable[int]) -> str:
        return "{" + ",".join(self.label(s) for s in elements) + "}"

    def index_of(self, name: str) -> int:
        """Look up an element by label."""
        for s in range(self.n):
            if self.label(s) == name:
                return s
        raise KeyError(name)

    @cached_property
    def idempotents(self) -> Tuple[int, ...]:
        return tuple(s for s in range(self.n) if self.mul[s][s] == s)

    def is_idempotent(self, s: int) -> bool:
        return self.mul[s][s] == s

    def source_idempotent(self, s: int) -> int:
        """s^-1 s"""
        return self.mul[self.inv[s]][s]

    def range_idempotent(self, s: int) -> int:
        """s s^-1"""
        return self.mul[s][self.inv[s]]

    def leq(self, s: int, t: int) -> bool:
        """Natural partial order: s <= t iff s = ss^-1 t."""
        return s == self.mul[self.range_idempotent(s)][t]

    def is_group(self) -> bool:
        return len(self.idempotents) == 1

    def is_semilattice(self) -> bool:
        return len(self.idempotents) == self.n and all(
            self.mul[a][b] == self.mul[b][a] for a in range(self.n) for b in range(a)
        )

    def identity(self) -> Optional[int]:
        for e in self.idempotents:
            if all(self.mul[e][x] == x == self.mul[x][e] for x in range(self.n)):
                return e
        return None


def _check_table(mul: Sequence[Sequence[int]]) -> Table:
    n = len(mul)
    if n == 0:
        raise MalformedTable("empty table")
    for a, row in enumerate(mul):
        if len(row) != n:
            raise MalformedTable(f"row {a} has length {len(row)}, expected {n}", a)
        for b, value in enumerate(row):
            if not isinstance(value, int) or not 0 <= value < n:
                raise MalformedTable(f"entry ({a},{b}) = {value!r} out of range", (a, b))
    return tuple(tuple(row) for row in mul)


def validate_inverse_semigroup(
    mul: Sequence[Sequence[int]],
    names: Optional[Sequence[str]] = None,
) -> FiniteInverseSemigroup:
    """
    Validate a Cayley table as an inverse semigroup.

    Checks run in the order shape, associativity, regularity, commuting
    idempotents; the first failure in index order is reported.

    Args:
        mul: n x n table of element indices
        names: Optional labels, one per element

    Returns:
        Validated FiniteInverseSemigroup with its inverse map

    Raises:
        MalformedTable: If the table is not square or has entries out of range
        NotAssociative: With the failing triple
        NoInverse: With the element lacking an inverse
        IdempotentsDontCommute: With the failing pair
    """
    table = _check_table(mul)
    n = len(table)
    if names is not None and len(names) != n:
        raise MalformedTable(f"{len(names)} names for {n} elements")

    for a in range(n):
        row_a = table[a]
        for b in range(n):
            ab = row_a[b]
            row_ab = table[ab]
            row_b = table[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    raise NotAssociative("(ab)c != a(bc)", (a, b, c))

    inv: List[int] = []
    for s in range(n):
        for t in range(n):
            if table[table[s][t]][s] == s and table[table[t][s]][t] == t:
                inv.append(t)
                break
        else:
            raise NoInverse("no t with sts = s and tst = t", s)

    idempotents = [e for e in range(n) if table[e][e] == e]
    for i, e in enumerate(idempotents):
        for f in idempotents[i + 1:]:
            if table[e][f] != table[f][e]:
                raise IdempotentsDontCommute("ef != fe", (e, f))

    logger.debug(f"Validated inverse semigroup of order {n} with {len(idempotents)} idempotents")
    return FiniteInverseSemigroup(
        n=n,
        mul=table,
        inv=tuple(inv),
        names=tuple(names) if names is not None else None,
    )


@dataclass(frozen=True)
class Semilattice(FiniteInverseSemigroup):
    """A commutative inverse semigroup of idempotents; e <= f iff ef = e."""

    @classmethod
    def from_semigroup(cls, S: FiniteInverseSemigroup) -> "Semilattice":
        """
        Reinterpret a validated semigroup as a semilattice.

        Raises:
            NotASemilattice: If some element is not idempotent or two elements don't commute
        """
        for a in range(S.n):
            if S.mul[a][a] != a:
                raise NotASemilattice("element is not idempotent", a)
            for b in range(a):
                if S.mul[a][b] != S.mul[b][a]:
                    raise NotASemilattice("elements don't commute", (b, a))
        return cls(n=S.n, mul=S.mul, inv=S.inv, names=S.names)

    def le(self, e: int, f: int) -> bool:
        return self.mul[e][f] == e

    def meet(self, e: int, f: int) -> int:
        return self.mul[e][f]

    def down_set(self, e: int) -> FrozenSet[int]:
        return frozenset(f for f in range(self.n) if self.mul[f][e] == f)

    def is_ideal(self, subset: Iterable[int]) -> bool:
        points = set(subset)
        return all(self.mul[x][y] in points for x in points for y in range(self.n))

    def subsemilattice(self, points: Sequence[int]) -> "Semilattice":
        """
        Restrict to a meet-closed subset; element i of the result is points[i].

        Raises:
            NotASemilattice: If the subset is not closed under meets
        """
        position = {p: i for i, p in enumerate(points)}
        rows = []
        for a in points:
            row = []
            for b in points:
                m = self.mul[a][b]
                if m not in position:
                    raise NotASemilattice("subset is not closed under meets", (a, b))
                row.append(position[m])
            rows.append(tuple(row))
        return Semilattice(
            n=len(points),
            mul=tuple(rows),
            inv=tuple(range(len(points))),
            names=tuple(self.label(p) for p in points),
        )


def semilattice_of_idempotents(S: FiniteInverseSemigroup) -> Semilattice:
    """
    E(S) as a standalone semilattice.

    Element i of the result is the idempotent S.idempotents[i]; labels are kept.
    """
    points = S.idempotents
    position = {e: i for i, e in enumerate(points)}
    rows = tuple(tuple(position[S.mul[e][f]] for f in points) for e in points)
    return Semilattice(
        n=len(points),
        mul=rows,
        inv=tuple(range(len(points))),
        names=tuple(S.label(e) for e in points),
    )


def natural_partial_order(S: FiniteInverseSemigroup) -> BinaryRelation:
    """s <= t iff s = ss^-1 t."""
    return BinaryRelation.from_predicate(S.n, S.leq)


def compatibility(S: FiniteInverseSemigroup) -> BinaryRelation:
    """s ~ t iff s^-1 t and s t^-1 are both idempotent."""
    return BinaryRelation.from_predicate(
        S.n,
        lambda s, t: S.is_idempotent(S.mul[S.inv[s]][t]) and S.is_idempotent(S.mul[s][S.inv[t]]),
    )


def green_r(S: FiniteInverseSemigroup) -> BinaryRelation:
    """Green's R: ss^-1 = tt^-1."""
    return BinaryRelation.from_predicate(
        S.n, lambda s, t: S.range_idempotent(s) == S.range_idempotent(t)
    )


def sigma(S: FiniteInverseSemigroup) -> "Congruence":
    """
    The minimum group congruence: s sigma t iff some u lies below both.

    Returns:
        Validated Congruence whose quotient is a group
    """
    from .congruence import validate_congruence

    relation = BinaryRelation.from_predicate(
        S.n, lambda s, t: any(S.leq(u, s) and S.leq(u, t) for u in range(S.n))
    )
    class_of = [0] * S.n
    for index, block in enumerate(relation.classes()):
        for s in block:
            class_of[s] = index
    return validate_congruence(S, class_of)


def is_e_unitary(S: FiniteInverseSemigroup) -> bool:
    """True iff sigma is idempotent pure."""
    from .congruence import is_idempotent_pure

    return is_idempotent_pure(sigma(S))


class FInverseCheck(NamedTuple):
    """Result of is_f_inverse: the verdict and the maximum of each sigma-class."""

    holds: bool
    maxima: Tuple[Optional[int], ...]


def is_f_inverse(S: FiniteInverseSemigroup) -> FInverseCheck:
    """
    Check whether every sigma-class has a maximum under the natural order.

    Returns:
        FInverseCheck with one entry per sigma-class (None where no maximum exists)

    Raises:
        InvariantViolation: If S is F-inverse but not E-unitary
    """
    congruence = sigma(S)
    maxima: List[Optional[int]] = []
    for block in congruence.classes:
        top = next((m for m in block if all(S.leq(s, m) for s in block)), None)
        maxima.append(top)
    holds = all(m is not None for m in maxima)
    if holds and not is_e_unitary(S):
        logger.error("F-inverse semigroup failed the E-unitary check")
        raise InvariantViolation("F-inverse but not E-unitary", S.names)
    return FInverseCheck(holds=holds, maxima=tuple(maxima))
