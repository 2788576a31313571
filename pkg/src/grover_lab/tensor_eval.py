"""Functorial evaluation of diagrams to dense complex matrices.

Composition goes to matrix product, side-by-side placement to Kronecker
product.  Evaluation is strictly slice by slice; each slice contributes the
Kronecker product of its generators' matrices, multiplied onto the running
matrix from the left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagram import (
    DEFAULT_DIMENSION_CAP,
    Comult,
    Counit,
    CustomBox,
    Diagram,
    FunctionBox,
    Generator,
    GroupMult,
    GroupUnit,
    Identity,
    Mult,
    Point,
    PointEffect,
    RepBox,
    Swap,
    Unit,
    dims_product,
)
from .errors import DimensionCapError, InvalidGeneratorError, NotClosedError, TypeMismatchError
from . import diagram as _diagram


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """A complex matrix with rows = product of output dims, cols = product
    of input dims.  A closed diagram evaluates to a 1x1 tensor."""

    matrix: np.ndarray

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    @property
    def entries(self):
        """Row-major flat list of entries."""
        return list(self.matrix.reshape(-1))

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[z.real, z.imag] for z in self.matrix.reshape(-1)],
        }


def eval_generator(g: Generator) -> np.ndarray:
    """Matrix of a single generator, shape (prod cod dims, prod dom dims)."""
    if isinstance(g, Identity):
        return np.eye(g.space.dimension, dtype=complex)
    if isinstance(g, Mult):
        n = g.space.dimension
        m = np.zeros((n, n * n), dtype=complex)
        for i in range(n):
            m[i, i * n + i] = 1.0
        return m
    if isinstance(g, Comult):
        return eval_generator(Mult(g.space)).T
    if isinstance(g, Unit):
        return np.ones((g.space.dimension, 1), dtype=complex)
    if isinstance(g, Counit):
        return np.ones((1, g.space.dimension), dtype=complex)
    if isinstance(g, FunctionBox):
        m = np.zeros((g.codomain.dimension, g.domain.dimension), dtype=complex)
        for i, t in enumerate(g.table):
            m[t, i] = 1.0
        return m
    if isinstance(g, Point):
        m = np.zeros((g.space.dimension, 1), dtype=complex)
        m[g.index, 0] = 1.0
        return m
    if isinstance(g, PointEffect):
        m = np.zeros((1, g.space.dimension), dtype=complex)
        m[0, g.index] = 1.0
        return m
    if isinstance(g, GroupMult):
        n = g.group.order
        m = np.zeros((n, n * n), dtype=complex)
        for i in range(n):
            for j in range(n):
                m[g.group.multiply(i, j), i * n + j] = 1.0
        return m
    if isinstance(g, GroupUnit):
        m = np.zeros((g.group.order, 1), dtype=complex)
        m[g.group.identity_index, 0] = 1.0
        return m
    if isinstance(g, RepBox):
        chars = g.group.character_table[g.irrep_index]
        return np.array([list(chars)], dtype=complex)
    if isinstance(g, Swap):
        dl, dr = g.left.dimension, g.right.dimension
        m = np.zeros((dr * dl, dl * dr), dtype=complex)
        for i in range(dl):
            for j in range(dr):
                m[j * dl + i, i * dr + j] = 1.0
        return m
    if isinstance(g, CustomBox):
        return np.array(g.matrix, dtype=complex).reshape(
            dims_product(g.cod_spaces), dims_product(g.dom_spaces)
        )
    raise InvalidGeneratorError(f"unknown generator {g!r}")


def _slice_matrix(sl, cap: int) -> np.ndarray:
    m = np.eye(1, dtype=complex)
    for g in sl:
        gm = eval_generator(g)
        if m.size * gm.size > cap:
            raise DimensionCapError("slice matrix exceeds dimension cap")
        m = np.kron(m, gm)
    return m


def evaluate(d: Diagram, cap: int | None = None) -> DenseTensor:
    """Evaluate a diagram; raises if it fails typing or exceeds the cap."""
    cap = DEFAULT_DIMENSION_CAP if cap is None else cap
    report = _diagram.validate(d)
    if not report.ok:
        mm = report.mismatches[0]
        raise TypeMismatchError(
            f"diagram fails typing at slice {mm.slice_index}, wire {mm.wire_position}: "
            f"expected {mm.expected}, found {mm.found}",
            report=report,
        )
    if dims_product(d.input_spaces) * dims_product(d.output_spaces) > cap:
        raise DimensionCapError("diagram interface exceeds dimension cap")
    m = np.eye(dims_product(d.input_spaces), dtype=complex)
    for sl in d.slices:
        m = _slice_matrix(sl, cap) @ m
    return DenseTensor(m)


def scalar_of(d: Diagram, cap: int | None = None) -> complex:
    """The value of a closed diagram."""
    if d.input_spaces or d.output_spaces:
        raise NotClosedError(
            f"diagram has {len(d.input_spaces)} inputs and "
            f"{len(d.output_spaces)} outputs; expected a closed diagram"
        )
    return complex(evaluate(d, cap=cap).matrix[0, 0])
