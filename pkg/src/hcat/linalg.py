"""Dense exact linear algebra: row reduction, kernels, solving, Kronecker
products.

Everything reduces to `rref`; its pivoting is deterministic (first nonzero
entry scanning top to bottom), so every downstream construction in the
package is reproducible bit for bit.  The `solve` routine sets free
variables to zero in the rref parameterization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .fields import check_same_field


class DimensionMismatchError(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over an exact field (row-major)."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_rref")

    def __init__(self, field, rows: Sequence[Sequence], ncols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if rows:
            ncols_found = len(rows[0])
            if any(len(r) != ncols_found for r in rows):
                raise DimensionMismatchError("ragged rows")
            if ncols is not None and ncols != ncols_found:
                raise DimensionMismatchError("ncols does not match row length")
            ncols = ncols_found
        elif ncols is None:
            ncols = 0
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self._rref = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries):
        entries = [field.coerce(e) for e in entries]
        if len(entries) != nrows * ncols:
            raise DimensionMismatchError(
                f"expected {nrows * ncols} entries, got {len(entries)}"
            )
        return cls(field, [entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    # -- basics ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, tuple(map(tuple, self.rows))))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def entry_strings(self):
        fmt = self.field.format
        return [[fmt(e) for e in row] for row in self.rows]

    def is_zero(self):
        z = self.field.zero
        return all(e == z for row in self.rows for e in row)

    def column(self, j) -> "Matrix":
        return Matrix(self.field, [[row[j]] for row in self.rows], 1)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def flatten_column(self) -> "Matrix":
        """Row-major flattening of the matrix into a single column vector."""
        return Matrix(self.field, [[e] for row in self.rows for e in row], 1)

    # -- arithmetic --------------------------------------------------------

    def _check_compat(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other)}")
        check_same_field(self.field, other.field)

    def __add__(self, other):
        self._check_compat(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatchError("matrix addition shape mismatch")
        add = self.field.add
        return Matrix(
            self.field,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.ncols,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.field.neg
        return Matrix(self.field, [[neg(e) for e in row] for row in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        mul = self.field.mul
        return Matrix(self.field, [[mul(c, e) for e in row] for row in self.rows], self.ncols)

    def __mul__(self, other) -> "Matrix":
        self._check_compat(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        f = self.field
        zero, add, mul = f.zero, f.add, f.mul
        orows = other.rows
        out = []
        for arow in self.rows:
            acc = [zero] * other.ncols
            for k, a in enumerate(arow):
                if a == zero:
                    continue
                brow = orows[k]
                acc = [add(x, mul(a, b)) for x, b in zip(acc, brow)]
            out.append(acc)
        return Matrix(f, out, other.ncols)

    # -- block operations --------------------------------------------------

    def hstack(self, other) -> "Matrix":
        self._check_compat(other)
        if self.nrows != other.nrows:
            raise DimensionMismatchError("hstack row mismatch")
        return Matrix(
            self.field,
            [ra + rb for ra, rb in zip(self.rows, other.rows)],
            self.ncols + other.ncols,
        )

    def vstack(self, other) -> "Matrix":
        self._check_compat(other)
        if self.ncols != other.ncols:
            raise DimensionMismatchError("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    @classmethod
    def block_diagonal(cls, field, blocks) -> "Matrix":
        nr = sum(b.nrows for b in blocks)
        nc = sum(b.ncols for b in blocks)
        out = cls.zeros(field, nr, nc).rows
        r0 = c0 = 0
        for b in blocks:
            check_same_field(field, b.field)
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = list(row)
            r0 += b.nrows
            c0 += b.ncols
        return cls(field, out, nc)

    @classmethod
    def from_blocks(cls, field, grid) -> "Matrix":
        """Assemble a matrix from a 2D grid of blocks (all shapes must fit)."""
        rows = []
        for block_row in grid:
            stacked = block_row[0]
            for b in block_row[1:]:
                stacked = stacked.hstack(b)
            rows.append(stacked)
        out = rows[0]
        for r in rows[1:]:
            out = out.vstack(r)
        check_same_field(field, out.field)
        return out

    def kron(self, other) -> "Matrix":
        """Kronecker product; index contract (i, k) -> i * dim_other + k."""
        self._check_compat(other)
        f = self.field
        zero, mul = f.zero, f.mul
        out = []
        for arow in self.rows:
            for brow in other.rows:
                line = []
                for a in arow:
                    if a == zero:
                        line.extend([zero] * other.ncols)
                    else:
                        line.extend(mul(a, b) for b in brow)
                out.append(line)
        return Matrix(f, out, self.ncols * other.ncols)

    # -- elimination -------------------------------------------------------

    def rref(self) -> "RrefResult":
        if self._rref is not None:
            return self._rref
        f = self.field
        zero, sub, mul, div = f.zero, f.sub, f.mul, f.div
        rows = [list(r) for r in self.rows]
        nrows, ncols = self.nrows, self.ncols
        pivots: List[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            pr = None
            for i in range(r, nrows):
                if rows[i][c] != zero:
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            prow = rows[r]
            pv = prow[c]
            if pv != f.one:
                rows[r] = prow = [div(e, pv) for e in prow]
            nz = [j for j in range(c, ncols) if prow[j] != zero]
            for i in range(nrows):
                if i == r:
                    continue
                fac = rows[i][c]
                if fac == zero:
                    continue
                irow = rows[i]
                for j in nz:
                    irow[j] = sub(irow[j], mul(fac, prow[j]))
            pivots.append(c)
            r += 1
        result = RrefResult(Matrix(f, rows, ncols), tuple(pivots), len(pivots))
        self._rref = result
        result.matrix._rref = result
        return result

    def rank(self) -> int:
        return self.rref().rank

    def kernel_basis(self) -> "Matrix":
        """Columns form a basis of the null space (free variables set to 1
        one at a time, pivot variables back-filled from the rref)."""
        res = self.rref()
        f = self.field
        zero, neg = f.zero, f.neg
        pivots = res.pivots
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        R = res.matrix.rows
        cols = []
        for j in free:
            v = [zero] * self.ncols
            v[j] = f.one
            for r, pc in enumerate(pivots):
                v[pc] = neg(R[r][j])
            cols.append(v)
        return Matrix(f, [[col[i] for col in cols] for i in range(self.ncols)],
                      len(cols))

    def solve(self, b: "Matrix") -> Optional["Matrix"]:
        """Solve self @ X = b; None when inconsistent.  Free variables are
        zero, so the solution is the deterministic rref representative."""
        self._check_compat(b)
        if b.nrows != self.nrows:
            raise DimensionMismatchError("solve: right-hand side row mismatch")
        f = self.field
        zero = f.zero
        aug = self.hstack(b).rref()
        for pc in aug.pivots:
            if pc >= self.ncols:
                return None
        R = aug.matrix.rows
        out_rows = [[zero] * b.ncols for _ in range(self.ncols)]
        for r, pc in enumerate(aug.pivots):
            out_rows[pc] = R[r][self.ncols:]
        return Matrix(f, out_rows, b.ncols)

    def inverse(self) -> Optional["Matrix"]:
        if self.nrows != self.ncols:
            return None
        res = self.rref()
        if res.rank != self.nrows:
            return None
        return self.solve(Matrix.identity(self.field, self.nrows))

    def column_space_pivots(self) -> Tuple[int, ...]:
        return self.rref().pivots

    def column_space_basis(self) -> "Matrix":
        """Deterministic basis of the column span (the pivot columns)."""
        pivots = self.rref().pivots
        return Matrix(
            self.field,
            [[row[j] for j in pivots] for row in self.rows],
            len(pivots),
        )

    def in_column_space(self, v: "Matrix") -> bool:
        return self.solve(v) is not None


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    pivots: Tuple[int, ...]
    rank: int


def rref(m: Matrix) -> RrefResult:
    return m.rref()


def kernel_basis(m: Matrix) -> Matrix:
    return m.kernel_basis()


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    return m.solve(b)


def kron(m: Matrix, n: Matrix) -> Matrix:
    return m.kron(n)


def kron_apply(x: Matrix, y: Matrix, cols: Matrix) -> Matrix:
    """Apply kron(x, y) to each column of ``cols`` without forming the
    Kronecker product, via vec(X V Y^T) for the row-major vec."""
    f = x.field
    m, n = x.ncols, y.ncols
    p, q = x.nrows, y.nrows
    if cols.nrows != m * n:
        raise DimensionMismatchError("kron_apply column length mismatch")
    yt = y.transpose()
    out = [[f.zero] * cols.ncols for _ in range(p * q)]
    for t in range(cols.ncols):
        v = Matrix(f, [[cols.rows[i * n + k][t] for k in range(n)]
                       for i in range(m)], n)
        w = x * v * yt
        for i in range(p):
            wrow = w.rows[i]
            base = i * q
            for k in range(q):
                out[base + k][t] = wrow[k]
    return Matrix(f, out, cols.ncols)


def quotient_maps(ambient_dim: int, subspace: Matrix):
    """Projection/section pair for V/W given a spanning matrix W (columns).

    Returns (proj, section, coords) where proj is (q x n), section (n x q)
    picks the non-pivot standard basis vectors as representatives, and
    ``coords`` maps any vector of V to quotient coordinates (proj itself).
    The choice is the rref-pivot convention, hence deterministic.
    """
    f = subspace.field
    W = subspace.column_space_basis()  # n x w, independent columns
    n = ambient_dim
    if W.nrows != n:
        raise DimensionMismatchError("subspace ambient dimension mismatch")
    w = W.ncols
    q = n - w
    # Row-reduce [W | I] to express reduction of arbitrary vectors.
    aug = W.hstack(Matrix.identity(f, n)).rref()
    # Pivot columns inside the W block identify dependent coordinates.
    w_pivots = [p for p in aug.pivots if p < w]
    if len(w_pivots) != w:
        raise ValueError("subspace basis not independent")
    # Complement representatives: standard vectors whose unit column is NOT
    # expressible... use elimination: a vector v lies in W + span(chosen).
    # Deterministic scheme: scan standard basis vectors, keep those that
    # enlarge the span.
    span = W
    section_cols = []
    zero, one = f.zero, f.one
    for j in range(n):
        if span.ncols == w + q and len(section_cols) == q:
            break
        e = Matrix(f, [[one if i == j else zero] for i in range(n)], 1)
        cand = span.hstack(e)
        if cand.rank() > span.rank():
            span = cand
            section_cols.append(j)
    section = Matrix(
        f,
        [[one if i == j else zero for j in section_cols] for i in range(n)],
        q,
    )
    # proj: solve [W | section] x = v, take the section block of x.
    basis = W.hstack(section)  # n x n, invertible
    inv = basis.inverse()
    assert inv is not None
    proj = Matrix(f, inv.rows[w:], n)
    return proj, section
