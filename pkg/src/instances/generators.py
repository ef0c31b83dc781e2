"""Builtin instance families and the certification corpus."""

from functools import lru_cache
from itertools import permutations, product
from typing import List, Optional, Tuple

from ..algebra.errors import OutOfRange
from ..algebra.pbij import PartialBijection, compose
from ..utils.config import settings
from ..utils.logger import logger
from .fileformat import InstanceFile

# Family -> inclusive parameter range
FAMILY_RANGES = {
    "In": (1, 3),
    "chain": (1, 8),
    "cyclic": (1, 8),
    "vee": (0, 0),
    "semilattice": (1, 6),
}


def _check_range(family: str, param: int) -> None:
    low, high = FAMILY_RANGES[family]
    if not low <= param <= high:
        raise OutOfRange(f"{family} takes a parameter in [{low},{high}], got {param}", param)


def symmetric_inverse_monoid(n: int) -> InstanceFile:
    """
    I_n on {1..n}, elements ordered by domain size then image.

    An element is named by its image word, e.g. "2-" sends 1 to 2 and leaves 2 undefined.
    """
    maps = []
    for image in product([None, *range(n)], repeat=n):
        defined = [y for y in image if y is not None]
        if len(set(defined)) == len(defined):
            maps.append(PartialBijection(n, image))
    maps.sort(key=lambda f: (len(f), tuple(n if y is None else y for y in f.image)))
    position = {f: i for i, f in enumerate(maps)}
    table = [[position[compose(f, g)] for g in maps] for f in maps]
    names = ["".join("-" if y is None else str(y + 1) for y in f.image) for f in maps]
    return InstanceFile(table=table, names=names)


def chain(k: int) -> InstanceFile:
    """The chain 0 < 1 < ... < k-1 under min."""
    return InstanceFile(
        table=[[min(a, b) for b in range(k)] for a in range(k)],
        names=[str(a) for a in range(k)],
    )


def cyclic_group(m: int) -> InstanceFile:
    """Z_m written multiplicatively: 1, g, g^2, ..."""
    names = ["1", "g"] + [f"g^{i}" for i in range(2, m)]
    return InstanceFile(
        table=[[(a + b) % m for b in range(m)] for a in range(m)],
        names=names[:m],
    )


def vee() -> InstanceFile:
    """
    The semilattice {0, e, f} with ef = 0, the congruence generated by (0, e)
    and the Munn representation as an action on idempotents.
    """
    return InstanceFile(
        table=[[0, 0, 0], [0, 1, 0], [0, 0, 2]],
        names=["0", "e", "f"],
        congruence_pairs=[(0, 1)],
        action_ground=3,
        action_rows=[[0, None, None], [0, 1, None], [0, None, 2]],
        action_on_idempotents=True,
    )


def _meet_table(le: List[List[bool]]) -> Optional[List[List[int]]]:
    size = len(le)
    table = []
    for a in range(size):
        row = []
        for b in range(size):
            lower = [c for c in range(size) if le[c][a] and le[c][b]]
            top = next((m for m in lower if all(le[c][m] for c in lower)), None)
            if top is None:
                return None
            row.append(top)
        table.append(row)
    return table


def _canonical(le: List[List[bool]]) -> Tuple[Tuple[bool, ...], ...]:
    # The bottom 0 is fixed by every isomorphism.
    size = len(le)
    best = None
    for perm in permutations(range(1, size)):
        relabel = (0,) + perm
        form = tuple(
            tuple(le[relabel[a]][relabel[b]] for b in range(size)) for a in range(size)
        )
        if best is None or form > best:
            best = form
    return best


@lru_cache(maxsize=None)
def semilattice_classes(size: int) -> Tuple[Tuple[Tuple[bool, ...], ...], ...]:
    """
    One order relation per isomorphism class of meet semilattices of the given size.

    Orders are enumerated on 0..size-1 with 0 the bottom and a <= b only when
    a <= b as integers; classes are sorted by their canonical form.
    """
    if size == 1:
        return (((True,),),)
    upper = [(a, b) for a in range(1, size) for b in range(a + 1, size)]
    found = set()
    for bits in product([False, True], repeat=len(upper)):
        le = [[a == b or a == 0 for b in range(size)] for a in range(size)]
        for (a, b), bit in zip(upper, bits):
            le[a][b] = bit
        transitive = all(
            le[a][c] for a in range(size) for b in range(size) for c in range(size)
            if le[a][b] and le[b][c]
        )
        if transitive and _meet_table(le) is not None:
            found.add(_canonical(le))
    classes = tuple(sorted(found, reverse=True))
    logger.debug(f"Found {len(classes)} semilattices of size {size}")
    return classes


def semilattice(size: int, index: int = 0) -> InstanceFile:
    """
    The index-th meet semilattice of the given size, up to isomorphism.

    Raises:
        OutOfRange: If index does not name a class
    """
    classes = semilattice_classes(size)
    if not 0 <= index < len(classes):
        raise OutOfRange(
            f"there are {len(classes)} semilattices of size {size}, index {index} given", index
        )
    le = [list(row) for row in classes[index]]
    return InstanceFile(table=_meet_table(le), names=[str(a) for a in range(size)])


def generate(family: str, param: int = 0, index: int = 0) -> InstanceFile:
    """
    Build a member of a builtin family.

    Args:
        family: One of In, chain, cyclic, vee, semilattice
        param: n for I_n, k for chains, m for Z_m, the size for semilattices
        index: Isomorphism class for semilattices

    Raises:
        OutOfRange: If the family is unknown or a parameter is out of range
    """
    if family not in FAMILY_RANGES:
        raise OutOfRange(f"unknown family {family!r}", family)
    _check_range(family, param)
    if family == "In":
        return symmetric_inverse_monoid(param)
    if family == "chain":
        return chain(param)
    if family == "cyclic":
        return cyclic_group(param)
    if family == "vee":
        return vee()
    return semilattice(param, index)


def build_corpus(max_n: Optional[int] = None) -> List[Tuple[str, InstanceFile]]:
    """
    The certification corpus, keyed and sorted by name.

    Semilattices up to settings.corpus_semilattice_max, chains C_2..C_8,
    groups Z_2..Z_8, I_1, I_2 and the vee; everything larger than max_n is skipped.
    """
    max_n = settings.corpus_max_n if max_n is None else max_n
    corpus: List[Tuple[str, InstanceFile]] = []
    for size in range(1, min(settings.corpus_semilattice_max, max_n) + 1):
        for index in range(len(semilattice_classes(size))):
            corpus.append((f"semilattice-{size}-{index:02d}", semilattice(size, index)))
    for k in range(2, min(8, max_n) + 1):
        corpus.append((f"chain-{k}", chain(k)))
        corpus.append((f"cyclic-{k}", cyclic_group(k)))
    for n in (1, 2):
        instance = symmetric_inverse_monoid(n)
        if instance.order <= max_n:
            corpus.append((f"In-{n}", instance))
    if max_n >= 3:
        corpus.append(("vee", vee()))
    corpus.sort(key=lambda item: item[0])
    logger.info(f"Corpus holds {len(corpus)} instances up to order {max_n}")
    return corpus
