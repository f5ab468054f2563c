"""Weighted F[x]-module minimisation.

A polynomial matrix is stored as a 3-D coefficient cube of shape
(rows, cols, D), lowest degree first, so a Mulders-Storjohann simple
transformation is a single vectorised row update.

The (nu, w)-weighted degree of a row v is max_i(nu * deg v_i + w_i). Two
embeddings turn it into plain degree:

* W(v)  = (x^{w_i} v_i(x^nu))_i, used only to cross-check;
* Pi(v) = pi((x^{floor(w_i / nu)} v_i)_i), which keeps degrees small and is
  what the decoders reduce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from src.algebra.poly import NEG_INF, UniPoly
from src.exceptions import ModuleMinimisationError
from src.logger import logger


def _entry_degrees(raw: np.ndarray) -> np.ndarray:
    """Degrees of the entries of an integer coefficient cube, -1 for zero."""
    nz = raw != 0
    D = raw.shape[-1]
    last = D - 1 - np.argmax(nz[..., ::-1], axis=-1)
    return np.where(nz.any(axis=-1), last, -1)


def _row_state(deg_row: np.ndarray) -> Tuple[int, int]:
    d = int(deg_row.max()) if deg_row.size else -1
    if d < 0:
        return -1, -1
    lp = deg_row.size - 1 - int(np.argmax(deg_row[::-1] == d))
    return d, lp


class PolyMatrix:
    """Matrix over F[x] backed by a (rows, cols, D) coefficient cube."""

    def __init__(self, coeffs: galois.FieldArray):
        if coeffs.ndim != 3:
            raise ModuleMinimisationError("coefficient cube must be 3-dimensional")
        if coeffs.shape[2] == 0:
            coeffs = type(coeffs).Zeros(coeffs.shape[:2] + (1,))
        self.GF = type(coeffs)
        self.coeffs = coeffs

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[UniPoly]], GF) -> PolyMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        D = max([1] + [e.coeffs.size for row in rows for e in row])
        cube = GF.Zeros((nrows, ncols, D))
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ModuleMinimisationError("ragged rows")
            for j, e in enumerate(row):
                cube[i, j, : e.coeffs.size] = e.coeffs
        return cls(cube)

    @classmethod
    def from_lists(cls, GF, entries: Sequence[Sequence[Sequence[int]]]) -> PolyMatrix:
        """Build from nested integer coefficient lists (lowest degree first)."""
        return cls.from_rows(
            [[UniPoly(GF(list(e)) if len(e) else GF.Zeros(0), GF) for e in row] for row in entries],
            GF,
        )

    @classmethod
    def identity(cls, GF, size: int) -> PolyMatrix:
        cube = GF.Zeros((size, size, 1))
        for i in range(size):
            cube[i, i, 0] = 1
        return cls(cube)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.coeffs.shape[0], self.coeffs.shape[1]

    def copy(self) -> PolyMatrix:
        return PolyMatrix(self.coeffs.copy())

    def entry(self, i: int, j: int) -> UniPoly:
        return UniPoly(self.coeffs[i, j], self.GF)

    def row(self, i: int) -> List[UniPoly]:
        return [self.entry(i, j) for j in range(self.shape[1])]

    def rows(self) -> List[List[UniPoly]]:
        return [self.row(i) for i in range(self.shape[0])]

    def entry_degrees(self) -> np.ndarray:
        return _entry_degrees(self.coeffs.view(np.ndarray))

    def row_degrees(self) -> list:
        return [d if d >= 0 else NEG_INF for d in self.entry_degrees().max(axis=1).tolist()]

    def leading_positions(self) -> List[Optional[int]]:
        out = []
        for deg_row in self.entry_degrees():
            d, lp = _row_state(deg_row)
            out.append(lp if d >= 0 else None)
        return out

    def degree(self):
        return max(self.row_degrees(), default=NEG_INF)

    def rowdeg(self) -> int:
        """Sum of row degrees (all rows assumed nonzero)."""
        return int(sum(self.row_degrees()))

    def is_weak_popov(self) -> bool:
        lps = self.leading_positions()
        return None not in lps and len(set(lps)) == len(lps)

    def compact(self) -> PolyMatrix:
        """Drop trailing all-zero degree slices."""
        deg = int(self.entry_degrees().max()) if self.coeffs.size else -1
        return PolyMatrix(self.coeffs[:, :, : max(deg + 1, 1)].copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self.compact().coeffs, other.compact().coeffs
        return a.shape == b.shape and np.array_equal(a.view(np.ndarray), b.view(np.ndarray))

    def __repr__(self) -> str:
        return f"PolyMatrix({self.shape[0]}x{self.shape[1]}, deg={self.degree()})"


def degree(v: Sequence[UniPoly]):
    """Row degree, ``NEG_INF`` for the zero row."""
    return max((e.degree for e in v), default=NEG_INF)


def leading_position(v: Sequence[UniPoly]) -> int:
    """Right-most index attaining the row degree."""
    d = degree(v)
    if d == NEG_INF:
        raise ModuleMinimisationError("leading position of the zero row")
    return max(i for i, e in enumerate(v) if e.degree == d)


@dataclass
class ReductionStats:
    """Counters collected while reducing a matrix."""

    steps: int = 0
    orthogonality_defect: int = 0


def weak_popov(V: PolyMatrix, stats: Optional[ReductionStats] = None) -> PolyMatrix:
    """Mulders-Storjohann reduction to weak Popov form.

    While two rows share a leading position, the row of larger degree is
    reduced by the other (on a degree tie, the larger row index is
    reduced) with c * x^delta, c the ratio of leading coefficients.
    """
    U = V.copy()
    cube = U.coeffs
    raw = cube.view(np.ndarray)
    nrows, _, D = cube.shape

    state = [_row_state(deg_row) for deg_row in _entry_degrees(raw)]
    if any(d < 0 for d, _ in state):
        raise ModuleMinimisationError("input matrix has a zero row")

    steps = 0
    while True:
        pair = None
        owner = {}
        for i, (_, lp) in enumerate(state):
            if lp in owner:
                pair = (owner[lp], i)
                break
            owner[lp] = i
        if pair is None:
            break

        a, b = pair
        if state[a][0] > state[b][0]:
            target, pivot = a, b
        else:
            target, pivot = b, a
        d_t, lp = state[target]
        d_p, _ = state[pivot]
        delta = d_t - d_p
        c = cube[target, lp, d_t] / cube[pivot, lp, d_p]
        cube[target, :, delta:] = cube[target, :, delta:] - c * cube[pivot, :, : D - delta]

        state[target] = _row_state(_entry_degrees(raw[target]))
        steps += 1
        if state[target][0] < 0:
            raise ModuleMinimisationError(
                f"row {target} reduced to zero: the rows are linearly dependent"
            )

    if stats is not None:
        stats.steps += steps
        stats.orthogonality_defect += V.rowdeg() - sum(d for d, _ in state)
    return U


def minimal_row_index(U: PolyMatrix, I: Iterable[int]) -> int:
    """Row with LP in I of minimal degree, ties broken by least LP."""
    allowed = set(I)
    best = None
    for i, deg_row in enumerate(U.entry_degrees()):
        d, lp = _row_state(deg_row)
        if d < 0 or lp not in allowed:
            continue
        if best is None or (d, lp) < best[0]:
            best = ((d, lp), i)
    if best is None:
        raise ModuleMinimisationError(f"no row has its leading position in {sorted(allowed)}")
    return best[1]


def minimal_row(U: PolyMatrix, I: Iterable[int]) -> List[UniPoly]:
    return U.row(minimal_row_index(U, I))


@dataclass(frozen=True)
class WeightSpec:
    """Column weights w and modulus nu; ``pi[i]`` is the new position of column i."""

    nu: int
    w: Tuple[int, ...]
    pi: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.nu < 1:
            raise ModuleMinimisationError(f"nu must be positive, got {self.nu}")
        w = tuple(int(v) for v in self.w)
        if any(v < 0 for v in w):
            raise ModuleMinimisationError("weights must be nonnegative")
        order = sorted(range(len(w)), key=lambda i: (w[i] % self.nu, i))
        pi = [0] * len(w)
        for pos, i in enumerate(order):
            pi[i] = pos
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "pi", tuple(pi))

    @property
    def shifts(self) -> Tuple[int, ...]:
        return tuple(v // self.nu for v in self.w)

    def inverse(self) -> Tuple[int, ...]:
        inv = [0] * len(self.pi)
        for i, p in enumerate(self.pi):
            inv[p] = i
        return tuple(inv)


def weighted_degree(v: Sequence[UniPoly], spec: WeightSpec):
    return max(
        (spec.nu * e.degree + spec.w[i] for i, e in enumerate(v) if not e.is_zero),
        default=NEG_INF,
    )


def pi_embed(V: PolyMatrix, spec: WeightSpec) -> PolyMatrix:
    nrows, ncols, D = V.coeffs.shape
    if ncols != len(spec.w):
        raise ModuleMinimisationError("weight vector does not match the column count")
    shifts = spec.shifts
    out = V.GF.Zeros((nrows, ncols, D + max(shifts, default=0)))
    for i, s in enumerate(shifts):
        out[:, spec.pi[i], s : s + D] = V.coeffs[:, i, :]
    return PolyMatrix(out)


def pi_extract(row: Sequence[UniPoly], spec: WeightSpec) -> List[UniPoly]:
    out = []
    for i, s in enumerate(spec.shifts):
        e = row[spec.pi[i]]
        if e.valuation() < s:
            raise ModuleMinimisationError(f"entry for column {i} is not divisible by x^{s}")
        out.append(UniPoly(e.coeffs[s:], e.GF))
    return out


def w_embed(V: PolyMatrix, spec: WeightSpec) -> PolyMatrix:
    nrows, ncols, D = V.coeffs.shape
    nu = spec.nu
    out = V.GF.Zeros((nrows, ncols, nu * (D - 1) + max(spec.w, default=0) + 1))
    for i, w in enumerate(spec.w):
        out[:, i, w : w + nu * D : nu] = V.coeffs[:, i, :]
    return PolyMatrix(out)


def minimize_weighted(
    V: PolyMatrix,
    spec: WeightSpec,
    I: Iterable[int],
    stats: Optional[ReductionStats] = None,
) -> List[UniPoly]:
    """Module vector of minimal (nu, w)-weighted degree with weighted LP in I."""
    I = list(I)
    if not I:
        raise ModuleMinimisationError("index set must be nonempty")
    embedded = pi_embed(V, spec)
    U = weak_popov(embedded, stats)
    chosen = minimal_row_index(U, [spec.pi[i] for i in I])
    row = pi_extract(U.row(chosen), spec)
    logger.debug(
        f"minimised {V.shape[0]}x{V.shape[1]} module: row {chosen}, "
        f"weighted degree {weighted_degree(row, spec)}"
    )
    return row
