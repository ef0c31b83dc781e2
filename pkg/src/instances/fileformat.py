"""
Line-oriented instance files.

    # comment
    semigroup <n>
    <n rows of n integers>
    names <n tokens>
    congruence <k>            (then one row of n class ids in [0,k))
    congruence-gen <p>        (then p rows "a b")
    action <m> [idempotents]  (then n rows of m tokens, an integer or "-")
    subset <points>

emit_instance writes the canonical form, which parse_instance reads back
unchanged.
"""

from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, Field

from ..algebra.action import PartialAction, validate_premorphism
from ..algebra.congruence import Congruence, congruence_generated_by, validate_congruence
from ..algebra.core import (
    FiniteInverseSemigroup,
    semilattice_of_idempotents,
    validate_inverse_semigroup,
)
from ..algebra.errors import GroundMismatch, ParseError
from ..algebra.pbij import PartialBijection
from ..utils.logger import logger


class InstanceFile(BaseModel):
    """Raw contents of an instance file; nothing is validated until asked for."""

    table: List[List[int]]
    names: Optional[List[str]] = None
    congruence_count: Optional[int] = Field(default=None, description="k of a 'congruence' block")
    congruence_classes: Optional[List[int]] = None
    congruence_pairs: Optional[List[Tuple[int, int]]] = None
    action_ground: Optional[int] = None
    action_rows: Optional[List[List[Optional[int]]]] = None
    action_on_idempotents: bool = False
    subset: Optional[List[int]] = None

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def has_congruence(self) -> bool:
        return self.congruence_classes is not None or self.congruence_pairs is not None

    @property
    def has_action(self) -> bool:
        return self.action_rows is not None

    def semigroup(self) -> FiniteInverseSemigroup:
        return validate_inverse_semigroup(self.table, self.names)

    def congruence(self, S: Optional[FiniteInverseSemigroup] = None) -> Optional[Congruence]:
        """The declared congruence, validated or generated; None if the file has none."""
        S = S or self.semigroup()
        if self.congruence_classes is not None:
            return validate_congruence(S, self.congruence_classes)
        if self.congruence_pairs is not None:
            return congruence_generated_by(S, self.congruence_pairs)
        return None

    def action(self, S: Optional[FiniteInverseSemigroup] = None) -> Optional[PartialAction]:
        """
        The declared action, validated as a premorphism; None if the file has none.

        Raises:
            GroundMismatch: If an action on idempotents has the wrong ground size
        """
        if self.action_rows is None:
            return None
        S = S or self.semigroup()
        maps = [PartialBijection(self.action_ground, tuple(row)) for row in self.action_rows]
        if self.action_on_idempotents:
            E = semilattice_of_idempotents(S)
            if E.n != self.action_ground:
                raise GroundMismatch(
                    f"action on idempotents needs {E.n} points, got {self.action_ground}"
                )
            return validate_premorphism(S, maps, E)
        return validate_premorphism(S, maps, self.action_ground)


class _Lines:
    """Significant lines with their 1-based numbers."""

    def __init__(self, text: str):
        self.items: List[Tuple[int, List[str]]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = raw.split("#", 1)[0].split()
            if tokens:
                self.items.append((number, tokens))
        self.pos = 0
        self.last = 0

    def next(self, wanted: str) -> Tuple[int, List[str]]:
        if self.pos >= len(self.items):
            raise ParseError(self.last + 1, f"unexpected end of file, expected {wanted}")
        item = self.items[self.pos]
        self.pos += 1
        self.last = item[0]
        return item

    def __bool__(self) -> bool:
        return self.pos < len(self.items)


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} {token!r} is not an integer") from None


def _count(tokens: List[str], line: int, size: int = 2) -> int:
    if len(tokens) != size:
        raise ParseError(line, f"'{tokens[0]}' takes {size - 1} argument(s)")
    value = _int(tokens[1], line, "count")
    if value < 0:
        raise ParseError(line, f"negative count {value}")
    return value


def _row(lines: _Lines, width: int, bound: int, what: str) -> List[int]:
    line, tokens = lines.next(what)
    if len(tokens) != width:
        raise ParseError(line, f"{what} has {len(tokens)} entries, expected {width}")
    values = [_int(token, line, "entry") for token in tokens]
    for value in values:
        if not 0 <= value < bound:
            raise ParseError(line, f"entry {value} out of range [0,{bound})")
    return values


def parse_instance(source: Union[str, Path]) -> InstanceFile:
    """
    Parse an instance file.

    Args:
        source: A path, or the file text itself

    Returns:
        InstanceFile with raw tables

    Raises:
        ParseError: With the offending line number
    """
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    else:
        text = source
    lines = _Lines(text)

    line, tokens = lines.next("'semigroup <n>'")
    if tokens[0] != "semigroup":
        raise ParseError(line, "file must start with 'semigroup <n>'")
    n = _count(tokens, line)
    if n == 0:
        raise ParseError(line, "empty semigroup")
    data = {"table": [_row(lines, n, n, "table row") for _ in range(n)]}

    seen = {"semigroup"}
    while lines:
        line, tokens = lines.next("a block")
        keyword = tokens[0]
        group = "congruence" if keyword.startswith("congruence") else keyword
        if group in seen:
            raise ParseError(line, f"duplicate '{keyword}' block")
        seen.add(group)

        if keyword == "names":
            if len(tokens) != n + 1:
                raise ParseError(line, f"names has {len(tokens) - 1} entries, expected {n}")
            if len(set(tokens[1:])) != n:
                raise ParseError(line, "names are not distinct")
            data["names"] = tokens[1:]
        elif keyword == "congruence":
            k = _count(tokens, line)
            data["congruence_count"] = k
            data["congruence_classes"] = _row(lines, n, k, "class row")
        elif keyword == "congruence-gen":
            p = _count(tokens, line)
            data["congruence_pairs"] = [tuple(_row(lines, 2, n, "pair")) for _ in range(p)]
        elif keyword == "action":
            if len(tokens) not in (2, 3) or (len(tokens) == 3 and tokens[2] != "idempotents"):
                raise ParseError(line, "expected 'action <m>' or 'action <m> idempotents'")
            m = _count(tokens[:2], line)
            data["action_ground"] = m
            data["action_on_idempotents"] = len(tokens) == 3
            data["action_rows"] = [_action_row(lines, m) for _ in range(n)]
        elif keyword == "subset":
            points = [_int(token, line, "point") for token in tokens[1:]]
            if len(set(points)) != len(points):
                raise ParseError(line, "subset repeats a point")
            data["subset"] = points
        else:
            raise ParseError(line, f"unknown block '{keyword}'")

    logger.debug(f"Parsed instance of order {n} with blocks {sorted(seen)}")
    return InstanceFile(**data)


def _action_row(lines: _Lines, m: int) -> List[Optional[int]]:
    line, tokens = lines.next("action row")
    if len(tokens) != m:
        raise ParseError(line, f"action row has {len(tokens)} entries, expected {m}")
    row: List[Optional[int]] = []
    for token in tokens:
        if token == "-":
            row.append(None)
            continue
        value = _int(token, line, "image")
        if not 0 <= value < m:
            raise ParseError(line, f"image {value} out of range [0,{m})")
        row.append(value)
    return row


def emit_instance(instance: InstanceFile) -> str:
    """Canonical text of an instance, ending with a newline."""
    out = [f"semigroup {instance.order}"]
    out += [" ".join(map(str, row)) for row in instance.table]
    if instance.names is not None:
        out.append("names " + " ".join(instance.names))
    if instance.congruence_classes is not None:
        k = instance.congruence_count
        if k is None:
            k = max(instance.congruence_classes, default=-1) + 1
        out.append(f"congruence {k}")
        out.append(" ".join(map(str, instance.congruence_classes)))
    elif instance.congruence_pairs is not None:
        out.append(f"congruence-gen {len(instance.congruence_pairs)}")
        out += [f"{a} {b}" for a, b in instance.congruence_pairs]
    if instance.action_rows is not None:
        header = f"action {instance.action_ground}"
        if instance.action_on_idempotents:
            header += " idempotents"
        out.append(header)
        out += [
            " ".join("-" if y is None else str(y) for y in row) for row in instance.action_rows
        ]
    if instance.subset is not None:
        out.append("subset " + " ".join(map(str, instance.subset)))
    return "\n".join(out) + "\n"
