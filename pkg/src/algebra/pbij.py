"""Partial bijections of a finite set: the symmetric inverse monoid I(X)."""

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple

from .core import Semilattice
from .errors import GroundMismatch, JoinFails, NotInjective


@dataclass(frozen=True)
class PartialBijection:
    """
    An injective partial self-map of {0..m-1}.

    image[j] is the image of j, or None where the map is undefined.
    """

    m: int
    image: Tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.image) != self.m:
            raise GroundMismatch(f"image table has length {len(self.image)}, expected {self.m}")
        seen = {}
        for x, y in enumerate(self.image):
            if y is None:
                continue
            if not 0 <= y < self.m:
                raise GroundMismatch(f"image {y} out of range", (x, y))
            if y in seen:
                raise NotInjective("two points share an image", (seen[y], x, y))
            seen[y] = x

    @classmethod
    def empty(cls, m: int) -> "PartialBijection":
        return cls(m, (None,) * m)

    @classmethod
    def identity(cls, m: int, subset: Optional[Iterable[int]] = None) -> "PartialBijection":
        points = set(range(m)) if subset is None else set(subset)
        return cls(m, tuple(x if x in points else None for x in range(m)))

    @classmethod
    def from_pairs(cls, m: int, pairs: Iterable[Tuple[int, int]]) -> "PartialBijection":
        image: list = [None] * m
        for x, y in pairs:
            if image[x] is not None and image[x] != y:
                raise NotInjective("point has two images", (x, image[x], y))
            image[x] = y
        return cls(m, tuple(image))

    def __call__(self, x: int) -> Optional[int]:
        return self.image[x]

    def __len__(self) -> int:
        return len(self.domain)

    @cached_property
    def domain(self) -> FrozenSet[int]:
        return frozenset(x for x, y in enumerate(self.image) if y is not None)

    @cached_property
    def range(self) -> FrozenSet[int]:
        return frozenset(y for y in self.image if y is not None)

    def pairs(self) -> Iterator[Tuple[int, int]]:
        for x, y in enumerate(self.image):
            if y is not None:
                yield x, y

    def inverse(self) -> "PartialBijection":
        image: list = [None] * self.m
        for x, y in self.pairs():
            image[y] = x
        return PartialBijection(self.m, tuple(image))

    def is_idempotent(self) -> bool:
        return all(x == y for x, y in self.pairs())

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        """Compact text such as id{0,e} or {a->b, b->a}."""
        label = (lambda x: names[x]) if names else str
        if self.is_idempotent():
            return "id{" + ",".join(label(x) for x in sorted(self.domain)) + "}"
        return "{" + ", ".join(f"{label(x)}->{label(y)}" for x, y in self.pairs()) + "}"


def _same_ground(f: PartialBijection, g: PartialBijection) -> None:
    if f.m != g.m:
        raise GroundMismatch(f"ground sizes {f.m} and {g.m} differ", (f.m, g.m))


def compose(f: PartialBijection, g: PartialBijection) -> PartialBijection:
    """
    The product fg = f after g, defined on g^-1(dom f ∩ ran g).

    Raises:
        GroundMismatch: If the maps live on different ground sets
    """
    _same_ground(f, g)
    return PartialBijection(
        f.m, tuple(None if y is None else f.image[y] for y in g.image)
    )


def leq(f: PartialBijection, g: PartialBijection) -> bool:
    """f <= g in I(X), i.e. f is contained in g as a set of pairs."""
    _same_ground(f, g)
    return all(g.image[x] == y for x, y in f.pairs())


class JoinConflict(NamedTuple):
    """Why a union of partial maps is not a partial bijection."""

    kind: str  # "two-images" or "not-injective"
    point: int
    values: Tuple[int, int]

    def __str__(self) -> str:
        if self.kind == "two-images":
            return f"point {self.point} has images {self.values[0]} and {self.values[1]}"
        return f"points {self.values[0]} and {self.values[1]} both map to {self.point}"


def join(maps: Sequence[PartialBijection], m: Optional[int] = None) -> PartialBijection:
    """
    Join of a family in I(X): the union of the maps when it is a partial bijection.

    Args:
        maps: Family of partial bijections on a common ground set
        m: Ground size, required only when maps is empty

    Returns:
        The union, which is then the join

    Raises:
        JoinFails: With a JoinConflict witness
        GroundMismatch: If ground sizes differ
    """
    if not maps:
        if m is None:
            raise GroundMismatch("ground size of an empty join is unknown")
        return PartialBijection.empty(m)
    ground = maps[0].m
    image: list = [None] * ground
    preimage: dict = {}
    for f in maps:
        if f.m != ground:
            raise GroundMismatch(f"ground sizes {ground} and {f.m} differ", (ground, f.m))
        for x, y in f.pairs():
            if image[x] is not None and image[x] != y:
                conflict = JoinConflict("two-images", x, (image[x], y))
                raise JoinFails("union is not a function", conflict)
            if y in preimage and preimage[y] != x:
                conflict = JoinConflict("not-injective", y, (preimage[y], x))
                raise JoinFails("union is not injective", conflict)
            image[x] = y
            preimage[y] = x
    return PartialBijection(ground, tuple(image))


def is_ideal_iso(f: PartialBijection, E: Semilattice) -> bool:
    """True iff f is an order isomorphism between order ideals of E."""
    if f.m != E.n:
        return False
    if not (E.is_ideal(f.domain) and E.is_ideal(f.range)):
        return False
    return all(
        E.le(x1, x2) == E.le(y1, y2)
        for x1, y1 in f.pairs()
        for x2, y2 in f.pairs()
    )
