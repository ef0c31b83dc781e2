"""Congruences on finite inverse semigroups."""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..utils.config import settings
from ..utils.logger import logger
from .core import (
    BinaryRelation,
    FiniteInverseSemigroup,
    compatibility,
    sigma,
    validate_inverse_semigroup,
)
from .errors import InvariantViolation, MalformedTable, NotCompatible, SizeBoundExceeded


@dataclass(frozen=True)
class Congruence:
    """
    A partition of S compatible with multiplication.

    class_of is normalized so that class ids appear in order of first occurrence.
    """

    semigroup: FiniteInverseSemigroup
    class_of: Tuple[int, ...]
    k: int

    @cached_property
    def classes(self) -> Tuple[Tuple[int, ...], ...]:
        blocks: List[List[int]] = [[] for _ in range(self.k)]
        for s, c in enumerate(self.class_of):
            blocks[c].append(s)
        return tuple(tuple(block) for block in blocks)

    def same(self, s: int, t: int) -> bool:
        return self.class_of[s] == self.class_of[t]

    def relation(self) -> BinaryRelation:
        return BinaryRelation.from_predicate(self.semigroup.n, self.same)

    def issubset(self, other: "Congruence") -> bool:
        return all(other.same(block[0], s) for block in self.classes for s in block)

    def is_equality(self) -> bool:
        return self.k == self.semigroup.n

    def is_universal(self) -> bool:
        return self.k == 1

    def class_label(self, c: int) -> str:
        """[x] where x is the maximum of the class if there is one, else its least member."""
        S = self.semigroup
        block = self.classes[c]
        top = next((m for m in block if all(S.leq(s, m) for s in block)), block[0])
        return f"[{S.label(top)}]"

    def render(self) -> str:
        return ",".join(self.semigroup.labels(block) for block in self.classes)


def _normalize(class_of: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    renumber: dict = {}
    for c in class_of:
        renumber.setdefault(c, len(renumber))
    return tuple(renumber[c] for c in class_of), len(renumber)


def validate_congruence(S: FiniteInverseSemigroup, partition: Sequence[int]) -> Congruence:
    """
    Validate a partition given as class ids, one per element.

    Args:
        S: Base semigroup
        partition: Class id of each element (any hashable labels)

    Returns:
        Normalized Congruence

    Raises:
        MalformedTable: If the partition does not cover 0..n-1
        NotCompatible: With a witness (u, s, t) where s, t are related but us, ut (or su, tu) are not
    """
    if len(partition) != S.n:
        raise MalformedTable(f"partition has {len(partition)} entries, expected {S.n}")
    class_of, k = _normalize(partition)

    # Comparing each element with the first member of its class is enough by transitivity.
    first: dict = {}
    for s, c in enumerate(class_of):
        r = first.setdefault(c, s)
        if r == s:
            continue
        for u in range(S.n):
            if class_of[S.mul[u][s]] != class_of[S.mul[u][r]]:
                raise NotCompatible("not left compatible", (u, r, s))
            if class_of[S.mul[s][u]] != class_of[S.mul[r][u]]:
                raise NotCompatible("not right compatible", (u, r, s))
    return Congruence(semigroup=S, class_of=class_of, k=k)


def congruence_from_blocks(S: FiniteInverseSemigroup, blocks: Iterable[Iterable[int]]) -> Congruence:
    """Validate a partition given as a list of blocks."""
    class_of: List[Optional[int]] = [None] * S.n
    for c, block in enumerate(blocks):
        for s in block:
            class_of[s] = c
    if any(c is None for c in class_of):
        raise MalformedTable("blocks do not cover every element")
    return validate_congruence(S, class_of)


def is_idempotent_pure(rho: Congruence) -> bool:
    """
    True iff every class containing an idempotent contains only idempotents.

    When true, also verifies rho ⊆ ~ and rho ⊆ sigma.

    Raises:
        InvariantViolation: If an idempotent pure congruence escapes ~ or sigma
    """
    S = rho.semigroup
    pure = all(
        all(S.is_idempotent(s) for s in block)
        for block in rho.classes
        if any(S.is_idempotent(s) for s in block)
    )
    if pure:
        relation = rho.relation()
        if not relation.issubset(compatibility(S)):
            logger.error("Idempotent pure congruence is not contained in ~")
            raise InvariantViolation("rho is not contained in ~", rho.class_of)
        if not relation.issubset(sigma(S).relation()):
            logger.error("Idempotent pure congruence is not contained in sigma")
            raise InvariantViolation("rho is not contained in sigma", rho.class_of)
    return pure


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def congruence_generated_by(
    S: FiniteInverseSemigroup, pairs: Iterable[Tuple[int, int]]
) -> Congruence:
    """
    The least congruence containing the given pairs.

    Unions the pairs, then closes under left and right translation until a
    fixpoint is reached.
    """
    uf = _UnionFind(S.n)
    for a, b in pairs:
        if not (0 <= a < S.n and 0 <= b < S.n):
            raise MalformedTable(f"pair ({a},{b}) out of range", (a, b))
        uf.union(a, b)

    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        for s in range(S.n):
            r = uf.find(s)
            if r == s:
                continue
            for u in range(S.n):
                changed |= uf.union(S.mul[u][s], S.mul[u][r])
                changed |= uf.union(S.mul[s][u], S.mul[r][u])

    logger.debug(f"Generated congruence closed after {rounds} rounds")
    return validate_congruence(S, [uf.find(s) for s in range(S.n)])


def quotient(
    S: FiniteInverseSemigroup, rho: Congruence
) -> Tuple[FiniteInverseSemigroup, Tuple[int, ...]]:
    """
    The quotient S/rho and the projection S -> S/rho.

    Class c of the result is labelled rho.class_label(c).

    Returns:
        (quotient semigroup, projection table)
    """
    reps = [block[0] for block in rho.classes]
    table = [[rho.class_of[S.mul[a][b]] for b in reps] for a in reps]
    names = [rho.class_label(c) for c in range(rho.k)]
    Q = validate_inverse_semigroup(table, names)
    return Q, rho.class_of


def iter_partitions(
    n: int, consistent: Optional[Callable[[List[int]], bool]] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Set partitions of {0..n-1} as restricted growth strings, in lexicographic order.

    Args:
        n: Number of points
        consistent: Pruning test called on every prefix; returning False
            discards all extensions of that prefix

    Yields:
        Class id tuples
    """
    prefix: List[int] = []

    def extend(blocks: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(blocks + 1):
            prefix.append(c)
            if consistent is None or consistent(prefix):
                yield from extend(max(blocks, c + 1))
            prefix.pop()

    if n == 0:
        yield ()
        return
    yield from extend(0)


def enumerate_congruences(
    S: FiniteInverseSemigroup,
    idempotent_pure: bool = False,
    bound: Optional[int] = None,
) -> List[Congruence]:
    """
    All congruences of S in restricted-growth-string order.

    Args:
        S: Base semigroup
        idempotent_pure: Keep only idempotent pure congruences
        bound: Largest allowed order (settings.max_enumeration_size by default)

    Returns:
        Deterministically ordered list of congruences

    Raises:
        SizeBoundExceeded: If S is larger than the bound
    """
    bound = settings.max_enumeration_size if bound is None else bound
    if S.n > bound:
        raise SizeBoundExceeded(f"order {S.n} exceeds enumeration bound {bound}", S.n)

    mul = S.mul

    def consistent(prefix: List[int]) -> bool:
        # Only constraints whose four elements are all assigned can be checked.
        i = len(prefix) - 1
        for s in range(i + 1):
            if prefix[s] != prefix[i]:
                continue
            for u in range(S.n):
                for a, b in ((mul[u][s], mul[u][i]), (mul[s][u], mul[i][u])):
                    if a <= i and b <= i and prefix[a] != prefix[b]:
                        return False
        return True

    result = []
    for class_of in iter_partitions(S.n, consistent):
        try:
            rho = validate_congruence(S, class_of)
        except NotCompatible:
            continue
        if idempotent_pure and not is_idempotent_pure(rho):
            continue
        result.append(rho)

    logger.debug(f"Enumerated {len(result)} congruences on a semigroup of order {S.n}")
    return result
