"""Typed string-diagram intermediate representation in slice normal form.

A diagram is an ordered list of slices; each slice is an ordered list of
generators placed side by side.  Wires are typed by :class:`SpaceLabel`.
Slice k's concatenated output spaces must equal slice k+1's concatenated
input spaces.  The empty diagram (no slices, no wires) denotes the scalar 1.

All values are immutable; every operation returns a new diagram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar, Optional, Tuple

from .errors import (
    DimensionCapError,
    InvalidArgumentError,
    InvalidGeneratorError,
    TypeMismatchError,
)
from .spaces import TRIVIAL, GroupSpec, SpaceLabel

# Cap on product(input dims) * product(output dims) of a diagram interface.
DEFAULT_DIMENSION_CAP = 1 << 24

Spaces = Tuple[SpaceLabel, ...]


def dims_product(spaces) -> int:
    return math.prod(s.dimension for s in spaces)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


class Generator:
    """Base class for the atomic boxes a slice is built from."""

    variant: ClassVar[str] = ""

    @property
    def dom(self) -> Spaces:
        raise NotImplementedError

    @property
    def cod(self) -> Spaces:
        raise NotImplementedError

    def adjoint(self) -> "Generator":
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(Generator):
    space: SpaceLabel
    variant: ClassVar[str] = "Identity"

    @property
    def dom(self):
        return (self.space,)

    @property
    def cod(self):
        return (self.space,)

    def adjoint(self):
        return self


@dataclass(frozen=True)
class Mult(Generator):
    """Matching multiplication m: S (x) S -> S, m(|i>(x)|j>) = delta_ij |i>."""

    space: SpaceLabel
    variant: ClassVar[str] = "Mult"

    @property
    def dom(self):
        return (self.space, self.space)

    @property
    def cod(self):
        return (self.space,)

    def adjoint(self):
        return Comult(self.space)


@dataclass(frozen=True)
class Unit(Generator):
    """u: 1 -> S, the unnormalized all-ones state sum_i |i>."""

    space: SpaceLabel
    variant: ClassVar[str] = "Unit"

    @property
    def dom(self):
        return ()

    @property
    def cod(self):
        return (self.space,)

    def adjoint(self):
        return Counit(self.space)


@dataclass(frozen=True)
class Comult(Generator):
    """Copying m†: S -> S (x) S."""

    space: SpaceLabel
    variant: ClassVar[str] = "Comult"

    @property
    def dom(self):
        return (self.space,)

    @property
    def cod(self):
        return (self.space, self.space)

    def adjoint(self):
        return Mult(self.space)


@dataclass(frozen=True)
class Counit(Generator):
    """Deletion u†: S -> 1."""

    space: SpaceLabel
    variant: ClassVar[str] = "Counit"

    @property
    def dom(self):
        return (self.space,)

    @property
    def cod(self):
        return ()

    def adjoint(self):
        return Unit(self.space)


@dataclass(frozen=True)
class FunctionBox(Generator):
    """Linearization of a total function between finite sets.

    The function is stored as an index array: ``table[i]`` is the image of
    basis element i.  The 0/1 matrix is derived on demand.
    """

    domain: SpaceLabel
    codomain: SpaceLabel
    table: Tuple[int, ...]
    variant: ClassVar[str] = "FunctionBox"

    def __post_init__(self):
        if len(self.table) != self.domain.dimension:
            raise InvalidGeneratorError(
                f"function table has {len(self.table)} entries for a "
                f"{self.domain.dimension}-dimensional domain"
            )
        for i, t in enumerate(self.table):
            if not 0 <= t < self.codomain.dimension:
                raise InvalidGeneratorError(f"table entry {t} at {i} out of codomain range")

    @property
    def dom(self):
        return (self.domain,)

    @property
    def cod(self):
        return (self.codomain,)

    def adjoint(self):
        # Transposed 0/1 matrix; no longer a function in general.
        rows = tuple(
            tuple(1.0 + 0j if self.table[j] == i else 0j for j in range(self.domain.dimension))
            for i in range(self.codomain.dimension)
        )
        transposed = tuple(
            tuple(rows[i][j] for i in range(self.codomain.dimension))
            for j in range(self.domain.dimension)
        )
        return CustomBox("function†", (self.codomain,), (self.domain,), transposed)


@dataclass(frozen=True)
class Point(Generator):
    """A chosen basis element x: 1 -> S."""

    space: SpaceLabel
    index: int
    variant: ClassVar[str] = "Point"

    def __post_init__(self):
        if not 0 <= self.index < self.space.dimension:
            raise InvalidGeneratorError(
                f"point index {self.index} out of range for dimension {self.space.dimension}"
            )

    @property
    def dom(self):
        return ()

    @property
    def cod(self):
        return (self.space,)

    def adjoint(self):
        return PointEffect(self.space, self.index)


@dataclass(frozen=True)
class PointEffect(Generator):
    """x†: S -> 1, the effect <x|."""

    space: SpaceLabel
    index: int
    variant: ClassVar[str] = "PointEffect"

    def __post_init__(self):
        if not 0 <= self.index < self.space.dimension:
            raise InvalidGeneratorError(
                f"point index {self.index} out of range for dimension {self.space.dimension}"
            )

    @property
    def dom(self):
        return (self.space,)

    @property
    def cod(self):
        return ()

    def adjoint(self):
        return Point(self.space, self.index)


@dataclass(frozen=True)
class GroupMult(Generator):
    """Linearized group multiplication G (x) G -> G."""

    group: GroupSpec
    variant: ClassVar[str] = "GroupMult"

    @property
    def dom(self):
        g = self.group.space()
        return (g, g)

    @property
    def cod(self):
        return (self.group.space(),)

    def adjoint(self):
        n = self.group.order
        # delta-matrix transpose: G -> G (x) G.
        rows = []
        for i in range(n):
            for j in range(n):
                row = [0j] * n
                row[self.group.multiply(i, j)] = 1.0 + 0j
                rows.append(tuple(row))
        return CustomBox("groupmult†", (self.group.space(),), self.dom, tuple(rows))


@dataclass(frozen=True)
class GroupUnit(Generator):
    """The group unit e as a state 1 -> G."""

    group: GroupSpec
    variant: ClassVar[str] = "GroupUnit"

    @property
    def dom(self):
        return ()

    @property
    def cod(self):
        return (self.group.space(),)

    def adjoint(self):
        return PointEffect(self.group.space(), self.group.identity_index)


@dataclass(frozen=True)
class RepBox(Generator):
    """An irreducible representation of a finite group, as the effect
    G -> 1 sending |g> to chi(g).

    Only one-dimensional irreps are supported: for those the character row
    of the group's character table *is* the representation.
    """

    group: GroupSpec
    irrep_index: int
    dimension: int = 1
    variant: ClassVar[str] = "RepBox"

    def __post_init__(self):
        if self.group.character_table is None:
            raise InvalidGeneratorError("group has no character table")
        if not 0 <= self.irrep_index < self.group.irrep_count():
            raise InvalidGeneratorError(f"irrep index {self.irrep_index} out of range")
        if self.dimension != 1 or self.group.irrep_dimension(self.irrep_index) != 1:
            raise InvalidGeneratorError("only 1-dimensional irreps are supported")

    @property
    def dom(self):
        return (self.group.space(),)

    @property
    def cod(self):
        return ()

    def adjoint(self):
        chars = self.group.character_table[self.irrep_index]
        col = tuple((c.conjugate(),) for c in chars)
        return CustomBox("rep†", (), (self.group.space(),), col)


@dataclass(frozen=True)
class CustomBox(Generator):
    """An arbitrary linear map with an explicit matrix.

    ``matrix`` is row-major with shape (product of cod dims, product of dom
    dims), stored as nested tuples of complex so boxes stay hashable.
    """

    name: str
    dom_spaces: Spaces
    cod_spaces: Spaces
    matrix: Tuple[Tuple[complex, ...], ...]
    variant: ClassVar[str] = "CustomBox"

    def __post_init__(self):
        rows = dims_product(self.cod_spaces)
        cols = dims_product(self.dom_spaces)
        if len(self.matrix) != rows or any(len(r) != cols for r in self.matrix):
            raise InvalidGeneratorError(
                f"matrix of box {self.name!r} must be {rows}x{cols}"
            )

    @property
    def dom(self):
        return self.dom_spaces

    @property
    def cod(self):
        return self.cod_spaces

    def adjoint(self):
        rows = len(self.matrix)
        cols = len(self.matrix[0]) if rows else dims_product(self.dom_spaces)
        conj_t = tuple(
            tuple(self.matrix[i][j].conjugate() for i in range(rows)) for j in range(cols)
        )
        return CustomBox(self.name + "†", self.cod_spaces, self.dom_spaces, conj_t)


@dataclass(frozen=True)
class Swap(Generator):
    left: SpaceLabel
    right: SpaceLabel
    variant: ClassVar[str] = "Swap"

    @property
    def dom(self):
        return (self.left, self.right)

    @property
    def cod(self):
        return (self.right, self.left)

    def adjoint(self):
        return Swap(self.right, self.left)


def scalar_box(value: complex, name: str = "scalar") -> CustomBox:
    """A closed box denoting multiplication by a scalar."""
    return CustomBox(name, (), (), ((complex(value),),))


# ---------------------------------------------------------------------------
# Diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    input_spaces: Spaces
    output_spaces: Spaces
    slices: Tuple[Tuple[Generator, ...], ...]


EMPTY = Diagram((), (), ())


def slice_dom(sl) -> Spaces:
    return tuple(s for g in sl for s in g.dom)


def slice_cod(sl) -> Spaces:
    return tuple(s for g in sl for s in g.cod)


def make_generator(g: Generator) -> Diagram:
    """Single-slice diagram for one generator.

    The identity on a trivial (1-dimensional) space is the empty diagram.
    """
    if isinstance(g, Identity) and g.space.kind == "trivial":
        return EMPTY
    return Diagram(g.dom, g.cod, ((g,),))


def identity_diagram(spaces) -> Diagram:
    spaces = tuple(spaces)
    if not spaces:
        return EMPTY
    return Diagram(spaces, spaces, (tuple(Identity(s) for s in spaces),))


def _first_mismatch(expected: Spaces, found: Spaces):
    for pos, (e, f) in enumerate(zip(expected, found)):
        if e != f:
            return pos, e, f
    if len(expected) != len(found):
        pos = min(len(expected), len(found))
        e = expected[pos] if pos < len(expected) else None
        f = found[pos] if pos < len(found) else None
        return pos, e, f
    return None


def compose(first: Diagram, then: Diagram) -> Diagram:
    """Sequential composition: `first` below, `then` above.

    eval(compose(a, b)) == eval(b) @ eval(a).
    """
    mm = _first_mismatch(first.output_spaces, then.input_spaces)
    if mm is not None:
        pos, e, f = mm
        raise TypeMismatchError(
            f"cannot compose: wire {pos} has output {e} but input {f}"
        )
    return Diagram(first.input_spaces, then.output_spaces, first.slices + then.slices)


def tensor(left: Diagram, right: Diagram, cap: Optional[int] = None) -> Diagram:
    """Side-by-side placement; the shorter diagram is padded with identity
    slices on its outputs so both have the same number of slices."""
    cap = DEFAULT_DIMENSION_CAP if cap is None else cap
    inputs = left.input_spaces + right.input_spaces
    outputs = left.output_spaces + right.output_spaces
    if dims_product(inputs) * dims_product(outputs) > cap:
        raise DimensionCapError(
            f"tensor interface exceeds dimension cap {cap}"
        )
    height = max(len(left.slices), len(right.slices))

    def padded(d):
        pad = tuple(Identity(s) for s in d.output_spaces)
        return d.slices + (pad,) * (height - len(d.slices))

    slices = tuple(l + r for l, r in zip(padded(left), padded(right)))
    return Diagram(inputs, outputs, slices)


def dagger(d: Diagram) -> Diagram:
    """Vertical reflection: slice order reversed, every generator adjointed."""
    slices = tuple(tuple(g.adjoint() for g in sl) for sl in reversed(d.slices))
    return Diagram(d.output_spaces, d.input_spaces, slices)


# ---------------------------------------------------------------------------
# Typing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WireMismatch:
    slice_index: int
    wire_position: int
    expected: Optional[SpaceLabel]
    found: Optional[SpaceLabel]


@dataclass
class TypingReport:
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def validate(d: Diagram) -> TypingReport:
    """Check inter-slice wire typing and the diagram's declared interface.

    Mismatches are reported with the slice index *above* the offending
    boundary (index 0 means the diagram's declared inputs disagree with the
    first slice).
    """
    report = TypingReport()
    if not d.slices:
        mm = _first_mismatch(d.input_spaces, d.output_spaces)
        if mm is not None:
            report.mismatches.append(WireMismatch(0, mm[0], mm[1], mm[2]))
        return report

    boundaries = [(0, d.input_spaces, slice_dom(d.slices[0]))]
    for k in range(len(d.slices) - 1):
        boundaries.append((k + 1, slice_cod(d.slices[k]), slice_dom(d.slices[k + 1])))
    boundaries.append((len(d.slices), slice_cod(d.slices[-1]), d.output_spaces))

    for idx, expected, found in boundaries:
        n = max(len(expected), len(found))
        for pos in range(n):
            e = expected[pos] if pos < len(expected) else None
            f = found[pos] if pos < len(found) else None
            if e != f:
                report.mismatches.append(WireMismatch(idx, pos, e, f))
    return report
