"""Exact rational matrices and Gaussian elimination.

Entries are exact rationals: Python ints where possible (most structure maps
are integral and int arithmetic is much cheaper) and
:class:`fractions.Fraction` otherwise.  Matrices are immutable and
stored row-major; a matrix with zero rows still remembers its column count so
that maps into or out of the zero space compose correctly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO = 0
ONE = 1


def frac(x):
    """An exact rational: ints and Fractions pass through, anything else is parsed."""
    t = type(x)
    if t is int:
        return x
    if t is Fraction:
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


class Mat:
    """An immutable ``nrows x ncols`` matrix of fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(x if type(x) is int else frac(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, rows, ncols):
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Mat":
        cols = [tuple(frac(x) for x in c) for c in cols]
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Mat":
        if self.nrows == 0:
            return Mat._raw(tuple(() for _ in range(self.ncols)), 0)
        return Mat._raw(tuple(zip(*self.rows)), self.nrows)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Mat{self.shape}[{body}]"

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __neg__(self):
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Mat":
        c = frac(c)
        return Mat._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                s = ZERO
                for k, a in nz:
                    b = c[k]
                    if b:
                        s += a * b
                row.append(s)
            out.append(tuple(row))
        return Mat._raw(tuple(out), other.ncols)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Mat.identity(self.nrows)

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Mat":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("not square")
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Mat._raw(tuple(tuple(r[n:]) for r in red[:n]), n)


def hstack(mats: Sequence[Mat], nrows: int) -> Mat:
    rows = [[] for _ in range(nrows)]
    ncols = 0
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("row count mismatch in hstack")
        ncols += m.ncols
        for i in range(nrows):
            rows[i].extend(m.rows[i])
    return Mat._raw(tuple(tuple(r) for r in rows), ncols)


def vstack(mats: Sequence[Mat], ncols: int) -> Mat:
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column count mismatch in vstack")
        rows.extend(m.rows)
    return Mat._raw(tuple(rows), ncols)


def block_diag(mats: Sequence[Mat]) -> Mat:
    ncols = sum(m.ncols for m in mats)
    rows = []
    off = 0
    for m in mats:
        for r in m.rows:
            rows.append((ZERO,) * off + r + (ZERO,) * (ncols - off - m.ncols))
        off += m.ncols
    return Mat._raw(tuple(rows), ncols)


def _as_sparse(row) -> dict[int, Fraction]:
    if isinstance(row, dict):
        return {c: x if type(x) is int else frac(x) for c, x in row.items() if x}
    return {c: x if type(x) is int else frac(x) for c, x in enumerate(row) if x}


def rref_sparse(rows: Iterable, ncols: int) -> list[tuple[int, dict[int, Fraction]]]:
    """Reduced row echelon form of sparse rows, as sorted (pivot column, row) pairs.

    Rows may be dicts ``{column: value}`` or dense sequences.  Invariant: each
    stored row has a 1 at its pivot, zeros at every other pivot column and
    zeros left of its pivot, so one pass of elimination reduces a new row.
    """
    piv: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        r = _as_sparse(raw)
        for c in sorted(c for c in r if c in piv):
            f = r.get(c)
            if f:
                for j, v in piv[c].items():
                    x = r.get(j, ZERO) - f * v
                    if x:
                        r[j] = x
                    else:
                        r.pop(j, None)
        if not r:
            continue
        c = min(r)
        inv = frac(Fraction(1) / r[c])
        if inv != 1:
            r = {j: v * inv for j, v in r.items()}
        for d, p in piv.items():
            f = p.get(c)
            if f:
                for j, v in r.items():
                    x = p.get(j, ZERO) - f * v
                    if x:
                        p[j] = x
                    else:
                        p.pop(j, None)
        piv[c] = r
    return sorted(piv.items())


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns the nonzero rows and pivot columns."""
    red = rref_sparse(rows, ncols)
    dense = []
    for _, r in red:
        row = [ZERO] * ncols
        for j, v in r.items():
            row[j] = v
        dense.append(row)
    return dense, [c for c, _ in red]


def free_coordinates(rows: Iterable, ncols: int) -> tuple[list[int], list[dict[int, Fraction]]]:
    """Coordinates of every standard basis vector modulo the row space.

    Returns ``(free, coords)``: ``free`` lists the non-pivot columns and
    ``coords[p]`` is a sparse vector over ``range(len(free))``.  Read by
    rows, ``coords`` is also the matrix whose columns span the null space.
    """
    red = rref_sparse(rows, ncols)
    pivset = {c for c, _ in red}
    free = [j for j in range(ncols) if j not in pivset]
    slot = {f: i for i, f in enumerate(free)}
    coords: list[dict[int, Fraction]] = [{} for _ in range(ncols)]
    for f, i in slot.items():
        coords[f][i] = ONE
    for p, r in red:
        coords[p] = {slot[j]: -v for j, v in r.items() if j != p}
    return free, coords


def nullspace(m) -> list[tuple]:
    """Basis of ``{x : m x = 0}``; one vector per free column, in column order.

    ``m`` is a :class:`Mat` or a pair ``(rows, ncols)`` of sparse rows.
    """
    rows, ncols = (m.rows, m.ncols) if isinstance(m, Mat) else m
    free, coords = free_coordinates(rows, ncols)
    basis = [[ZERO] * ncols for _ in free]
    for p, c in enumerate(coords):
        for i, v in c.items():
            basis[i][p] = v
    return [tuple(v) for v in basis]


def column_basis(m: Mat) -> list[int]:
    """Indices of the pivot columns: the leftmost columns spanning the image."""
    return rref(m.rows, m.ncols)[1]


def image(m: Mat) -> Mat:
    """Matrix whose columns are the pivot columns of ``m`` (a basis of its image)."""
    idx = column_basis(m)
    return Mat.from_columns([m.column(j) for j in idx], m.nrows)


def solve(a: Mat, b: Mat) -> Mat:
    """The unique ``x`` with ``a x = b``; ``a`` must have independent columns."""
    n = a.ncols
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    red, piv = rref(aug, n + b.ncols)
    if piv[: n] != list(range(n)) or any(p >= n for p in piv):
        raise ValueError("system is inconsistent or underdetermined")
    return Mat._raw(tuple(tuple(r[n:]) for r in red[:n]), b.ncols)


def quotient_map(relations: Iterable, dim: int) -> tuple[Mat, list[int]]:
    """Coordinates on ``Q^dim / span(relations)``.

    Returns ``(q, free)`` where ``free`` lists the standard basis vectors that
    survive as a basis of the quotient and ``q`` sends a vector to its
    coordinates in that basis.  Relations may be sparse dict rows.
    """
    free, coords = free_coordinates(relations, dim)
    q_rows = [[ZERO] * dim for _ in free]
    for p, c in enumerate(coords):
        for i, v in c.items():
            q_rows[i][p] = v
    return Mat._raw(tuple(tuple(r) for r in q_rows), dim), free
