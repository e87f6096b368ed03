"""Finite-dimensional associative algebras and their modules.

An algebra is given by structure constants over an exact field; modules are
given by one action matrix per algebra basis vector.  Bimodules are not a
separate type: an (A, B)-bimodule is a left module over A (x) B^op, carried
with an optional ``pair`` tag and marginal-action accessors.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import check_same_field
from .linalg import Matrix, quotient_maps


class AlgebraError(ValueError):
    pass


class ModuleError(ValueError):
    pass


MulTable = Dict[Tuple[int, int], Dict[int, object]]


class Algebra:
    """Unital associative algebra from structure constants.

    ``table[(i, j)]`` maps k to the (nonzero) coefficient of e_k in
    e_i * e_j; absent entries are zero.  ``unit`` holds the coordinates of 1.
    """

    def __init__(self, field, dim: int, table: MulTable, unit: Sequence,
                 labels: Optional[Sequence[str]] = None,
                 generators: Optional[List[List]] = None,
                 validate: bool = True):
        self.field = field
        self.dim = dim
        zero = field.zero
        self.table = {
            ij: {k: field.coerce(v) for k, v in comps.items() if field.coerce(v) != zero}
            for ij, comps in table.items()
        }
        self.table = {ij: comps for ij, comps in self.table.items() if comps}
        self.unit = [field.coerce(u) for u in unit]
        if len(self.unit) != dim:
            raise AlgebraError("unit coordinate length does not match dimension")
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != dim:
            raise AlgebraError("label count does not match dimension")
        if generators is None:
            one = field.one
            generators = [[one if i == j else zero for j in range(dim)]
                          for i in range(dim)]
        self.generators = generators
        self._left_regular: Optional[List[Matrix]] = None
        if validate:
            self.validate()

    # -- multiplication ----------------------------------------------------

    def basis_product(self, i: int, j: int) -> Dict[int, object]:
        return self.table.get((i, j), {})

    def mul_vectors(self, x: Sequence, y: Sequence) -> List:
        f = self.field
        zero = f.zero
        out = [zero] * self.dim
        for i, xi in enumerate(x):
            if xi == zero:
                continue
            for j, yj in enumerate(y):
                if yj == zero:
                    continue
                c = f.mul(xi, yj)
                for k, v in self.basis_product(i, j).items():
                    out[k] = f.add(out[k], f.mul(c, v))
        return out

    def left_regular_matrices(self) -> List[Matrix]:
        """Matrix of left multiplication by each basis vector."""
        if self._left_regular is None:
            f = self.field
            zero = f.zero
            mats = []
            for i in range(self.dim):
                cols = [[zero] * self.dim for _ in range(self.dim)]
                for j in range(self.dim):
                    for k, v in self.basis_product(i, j).items():
                        cols[j][k] = v
                mats.append(Matrix(f, [[cols[j][k] for j in range(self.dim)]
                                       for k in range(self.dim)], self.dim))
            self._left_regular = mats
        return self._left_regular

    def left_mul_matrix(self, x: Sequence) -> Matrix:
        f = self.field
        mats = self.left_regular_matrices()
        out = Matrix.zeros(f, self.dim, self.dim)
        for i, xi in enumerate(x):
            if xi != f.zero:
                out = out + mats[i].scale(xi)
        return out

    def right_mul_matrix(self, x: Sequence) -> Matrix:
        f = self.field
        zero = f.zero
        cols = []
        for j in range(self.dim):
            ej = [f.one if t == j else zero for t in range(self.dim)]
            cols.append(self.mul_vectors(ej, x))
        return Matrix(f, [[cols[j][k] for j in range(self.dim)]
                          for k in range(self.dim)], self.dim)

    def is_commutative(self) -> bool:
        for (i, j), comps in self.table.items():
            if self.basis_product(j, i) != comps:
                return False
        return True

    # -- validation --------------------------------------------------------

    def validate(self):
        f = self.field
        zero, one = f.zero, f.one
        n = self.dim
        for i in range(n):
            ei = [one if t == i else zero for t in range(n)]
            left = self.mul_vectors(self.unit, ei)
            if left != ei:
                raise AlgebraError(f"unit fails on the left at basis vector {i}")
            right = self.mul_vectors(ei, self.unit)
            if right != ei:
                raise AlgebraError(f"unit fails on the right at basis vector {i}")
        basis = [[one if t == i else zero for t in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                ij = self.mul_vectors(basis[i], basis[j])
                for l in range(n):
                    lhs = self.mul_vectors(ij, basis[l])
                    rhs = self.mul_vectors(basis[i], self.mul_vectors(basis[j], basis[l]))
                    if lhs != rhs:
                        raise AlgebraError(
                            f"associativity fails at triple ({i}, {j}, {l})"
                        )

    # -- derived algebras --------------------------------------------------

    def opposite(self) -> "Algebra":
        table: MulTable = {}
        for (i, j), comps in self.table.items():
            table[(j, i)] = dict(comps)
        labels = None
        if self.labels is not None:
            labels = [f"{l}^op" for l in self.labels]
        return Algebra(self.field, self.dim, table, self.unit, labels,
                       generators=[list(g) for g in self.generators],
                       validate=False)

    def tensor(self, other: "Algebra") -> "Algebra":
        """Tensor product algebra; basis index (i, k) -> i * dim_other + k."""
        check_same_field(self.field, other.field)
        f = self.field
        nB = other.dim
        table: MulTable = {}
        for (i, j), compsA in self.table.items():
            for (k, l), compsB in other.table.items():
                comps = {}
                for a, va in compsA.items():
                    for b, vb in compsB.items():
                        comps[a * nB + b] = f.mul(va, vb)
                table[(i * nB + k, j * nB + l)] = comps
        unit = [f.zero] * (self.dim * nB)
        for i, ua in enumerate(self.unit):
            if ua == f.zero:
                continue
            for k, ub in enumerate(other.unit):
                if ub != f.zero:
                    unit[i * nB + k] = f.mul(ua, ub)
        gens = []
        for g in self.generators:
            vec = [f.zero] * (self.dim * nB)
            for i, gi in enumerate(g):
                if gi == f.zero:
                    continue
                for k, ub in enumerate(other.unit):
                    if ub != f.zero:
                        vec[i * nB + k] = f.mul(gi, ub)
            gens.append(vec)
        for g in other.generators:
            vec = [f.zero] * (self.dim * nB)
            for i, ua in enumerate(self.unit):
                if ua == f.zero:
                    continue
                for k, gk in enumerate(g):
                    if gk != f.zero:
                        vec[i * nB + k] = f.mul(ua, gk)
            gens.append(vec)
        labels = None
        if self.labels is not None and other.labels is not None:
            labels = [f"{a}*{b}" for a in self.labels for b in other.labels]
        return Algebra(f, self.dim * nB, table, unit, labels,
                       generators=gens, validate=False)

    def enveloping(self) -> "Algebra":
        return self.tensor(self.opposite())

    def quotient_by_ideal(self, ideal_basis: Matrix) -> Tuple["Algebra", Matrix, Matrix]:
        """Quotient algebra A / I for a two-sided ideal given by spanning
        columns.  Returns (quotient, proj, section)."""
        f = self.field
        proj, section = quotient_maps(self.dim, ideal_basis)
        q = proj.nrows
        table: MulTable = {}
        secs = [[section[i, t] for i in range(self.dim)] for t in range(q)]
        for i in range(q):
            for j in range(q):
                prod = self.mul_vectors(secs[i], secs[j])
                img = proj * Matrix(f, [[x] for x in prod], 1)
                comps = {k: img[k, 0] for k in range(q) if img[k, 0] != f.zero}
                if comps:
                    table[(i, j)] = comps
        unit_img = proj * Matrix(f, [[x] for x in self.unit], 1)
        unit = [unit_img[k, 0] for k in range(q)]
        return (
            Algebra(f, q, table, unit, validate=False),
            proj,
            section,
        )

    def __repr__(self):
        return f"Algebra(dim={self.dim} over {self.field!r})"


def trivial_algebra(field) -> Algebra:
    """The base field as a one-dimensional algebra."""
    return Algebra(field, 1, {(0, 0): {0: field.one}}, [field.one],
                   labels=["1"], validate=False)


def opposite_algebra(a: Algebra) -> Algebra:
    return a.opposite()


def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    return a.tensor(b)


def enveloping(a: Algebra) -> Algebra:
    return a.enveloping()


def bimodule_algebra(left: Algebra, right: Algebra) -> Algebra:
    """The algebra whose left modules are (left, right)-bimodules."""
    return left.tensor(right.opposite())


# ---------------------------------------------------------------------------
# Modules


class LeftModule:
    """Finite-dimensional left module: one action matrix per basis vector.

    ``pair`` optionally records a bimodule reading (A, B) with
    ``algebra == A (x) B^op``; marginal actions are recovered from it.
    """

    def __init__(self, algebra: Algebra, dim: int, action: Sequence[Matrix],
                 pair: Optional[Tuple[Algebra, Algebra]] = None,
                 check: object = "auto"):
        if len(action) != algebra.dim:
            raise ModuleError("need one action matrix per algebra basis vector")
        for m in action:
            if m.nrows != dim or m.ncols != dim:
                raise ModuleError("action matrix shape mismatch")
            check_same_field(algebra.field, m.field)
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        if pair is not None:
            la, ra = pair
            if la.dim * ra.dim != algebra.dim:
                raise ModuleError("bimodule pair dimensions inconsistent")
        self.pair = pair
        if check == "auto":
            cost = len(algebra.generators) * algebra.dim * dim ** 3
            check = cost <= 3_000_000
        if check:
            self.validate()

    # -- action ------------------------------------------------------------

    def rho(self, x: Sequence) -> Matrix:
        f = self.algebra.field
        out = Matrix.zeros(f, self.dim, self.dim)
        for i, xi in enumerate(x):
            if xi != f.zero:
                out = out + self.action[i].scale(xi)
        return out

    def validate(self):
        a = self.algebra
        f = a.field
        ident = Matrix.identity(f, self.dim)
        if self.rho(a.unit) != ident:
            raise ModuleError("unit does not act as the identity")
        zero, one = f.zero, f.one
        basis = [[one if t == i else zero for t in range(a.dim)]
                 for i in range(a.dim)]
        for g in a.generators:
            rg = self.rho(g)
            for i in range(a.dim):
                prod = a.mul_vectors(g, basis[i])
                if self.rho(prod) != rg * self.action[i]:
                    raise ModuleError(
                        f"representation identity fails for generator on e_{i}"
                    )

    def is_zero(self) -> bool:
        return self.dim == 0

    # -- bimodule accessors ------------------------------------------------

    def _need_pair(self):
        if self.pair is None:
            raise ModuleError("module carries no bimodule pair")
        return self.pair

    def left_unit_index_matrix(self, i: int) -> Matrix:
        """Action of e_i (x) 1 for the bimodule reading."""
        la, ra = self._need_pair()
        f = self.algebra.field
        out = Matrix.zeros(f, self.dim, self.dim)
        for k, uk in enumerate(ra.unit):
            if uk != f.zero:
                out = out + self.action[i * ra.dim + k].scale(uk)
        return out

    def right_unit_index_matrix(self, j: int) -> Matrix:
        """Action of 1 (x) e_j (right action of e_j of B)."""
        la, ra = self._need_pair()
        f = self.algebra.field
        out = Matrix.zeros(f, self.dim, self.dim)
        for i, ui in enumerate(la.unit):
            if ui != f.zero:
                out = out + self.action[i * ra.dim + j].scale(ui)
        return out

    def restrict_left(self) -> "LeftModule":
        """Forget the right action: the underlying left module over A."""
        la, ra = self._need_pair()
        mats = [self.left_unit_index_matrix(i) for i in range(la.dim)]
        return LeftModule(la, self.dim, mats, check=False)

    def restrict_right(self) -> "LeftModule":
        """Forget the left action: a left module over B^op."""
        la, ra = self._need_pair()
        mats = [self.right_unit_index_matrix(j) for j in range(ra.dim)]
        return LeftModule(ra.opposite(), self.dim, mats, check=False)

    def swap_sides(self) -> "LeftModule":
        """Reinterpret an (A, B)-bimodule as a (B^op, A^op)-bimodule."""
        la, ra = self._need_pair()
        nA, nB = la.dim, ra.dim
        lop, rop = ra.opposite(), la.opposite()
        alg = bimodule_algebra(lop, rop)
        mats = [None] * (nA * nB)
        for i in range(nA):
            for j in range(nB):
                mats[j * nA + i] = self.action[i * nB + j]
        return LeftModule(alg, self.dim, mats, pair=(lop, rop), check=False)

    def __repr__(self):
        return f"LeftModule(dim={self.dim} over {self.algebra!r})"


class ModuleHom:
    """Intertwiner between left modules over the same algebra."""

    def __init__(self, source: LeftModule, target: LeftModule, matrix: Matrix,
                 check: bool = True):
        if matrix.nrows != target.dim or matrix.ncols != source.dim:
            raise ModuleError("hom matrix shape mismatch")
        if source.algebra.dim != target.algebra.dim:
            raise ModuleError("source and target algebras differ")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            self.validate()

    def validate(self):
        for g in self.source.algebra.generators:
            if self.matrix * self.source.rho(g) != self.target.rho(g) * self.matrix:
                raise ModuleError("matrix does not intertwine the actions")

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """self o other."""
        return ModuleHom(other.source, self.target, self.matrix * other.matrix,
                         check=False)

    def __repr__(self):
        return f"ModuleHom({self.source.dim} -> {self.target.dim})"


# ---------------------------------------------------------------------------
# Module constructors


def zero_module(algebra: Algebra, pair=None) -> LeftModule:
    f = algebra.field
    return LeftModule(algebra, 0, [Matrix.zeros(f, 0, 0)] * algebra.dim,
                      pair=pair, check=False)


def free_module(algebra: Algebra, rank: int) -> LeftModule:
    if rank < 0:
        raise ModuleError("rank must be nonnegative")
    if rank == 0:
        return zero_module(algebra)
    f = algebra.field
    eye = Matrix.identity(f, rank)
    mats = [eye.kron(L) for L in algebra.left_regular_matrices()]
    return LeftModule(algebra, rank * algebra.dim, mats, check=False)


def regular_module(algebra: Algebra) -> LeftModule:
    return free_module(algebra, 1)


def regular_bimodule(algebra: Algebra) -> LeftModule:
    """A as a module over its enveloping algebra: (a (x) b) . m = a m b."""
    env = algebra.enveloping()
    f = algebra.field
    n = algebra.dim
    L = algebra.left_regular_matrices()
    R = [algebra.right_mul_matrix([f.one if t == j else f.zero for t in range(n)])
         for j in range(n)]
    # action of e_i (x) e_j : m -> e_i * m * e_j
    mats = [L[i] * R[j] for i in range(n) for j in range(n)]
    return LeftModule(env, n, mats, pair=(algebra, algebra), check=False)


def module_as_bimodule(m: LeftModule) -> LeftModule:
    """View a left A-module as an (A, K)-bimodule over A (x) K^op."""
    if m.pair is not None:
        return m
    triv = trivial_algebra(m.algebra.field)
    alg = bimodule_algebra(m.algebra, triv)
    return LeftModule(alg, m.dim, list(m.action), pair=(m.algebra, triv),
                      check=False)


def direct_sum(modules: Sequence[LeftModule]) -> LeftModule:
    if not modules:
        raise ModuleError("empty direct sum needs an algebra")
    a = modules[0].algebra
    f = a.field
    pair = modules[0].pair
    for m in modules[1:]:
        if m.algebra.dim != a.dim:
            raise ModuleError("direct sum over different algebras")
    mats = []
    for i in range(a.dim):
        mats.append(Matrix.block_diagonal(f, [m.action[i] for m in modules]))
    return LeftModule(a, sum(m.dim for m in modules), mats, pair=pair,
                      check=False)


def dual_module(m: LeftModule) -> LeftModule:
    """Dual space as a left module over the opposite algebra."""
    op = m.algebra.opposite()
    mats = [mat.transpose() for mat in m.action]
    return LeftModule(op, m.dim, mats, check=False)


def dual_bimodule(m: LeftModule) -> LeftModule:
    """K-linear dual of an (A, B)-bimodule, as a (B, A)-bimodule."""
    la, ra = m._need_pair()
    alg = bimodule_algebra(ra, la)
    nA, nB = la.dim, ra.dim
    mats = [None] * (nA * nB)
    for j in range(nB):
        for i in range(nA):
            mats[j * nA + i] = m.action[i * nB + j].transpose()
    return LeftModule(alg, m.dim, mats, pair=(ra, la), check=False)


# ---------------------------------------------------------------------------
# Hom spaces and isomorphism testing


def _vec_right_mul_operator(a: Matrix, rows: int) -> Matrix:
    """Operator X -> X a on row-major vec(X) with X of shape rows x a.nrows."""
    return Matrix.identity(a.field, rows).kron(a.transpose())


def _vec_left_mul_operator(b: Matrix, cols: int) -> Matrix:
    """Operator X -> b X on row-major vec(X) with X of shape b.ncols x cols."""
    return b.kron(Matrix.identity(b.field, cols))


def hom_space(m: LeftModule, n: LeftModule,
              reverse_rows: bool = False) -> List[ModuleHom]:
    """Basis of Hom_A(M, N) (matrices F with F rho_M = rho_N F).

    ``reverse_rows`` assembles the constraint rows in the opposite order;
    the resulting dimension must agree (used as a cross-check).
    """
    if m.algebra.dim != n.algebra.dim:
        raise ModuleError("hom_space over different algebras")
    check_same_field(m.algebra.field, n.algebra.field)
    f = m.algebra.field
    if m.dim == 0 or n.dim == 0:
        return []
    blocks = []
    gens = list(m.algebra.generators)
    if reverse_rows:
        gens = gens[::-1]
    for g in gens:
        rg_m = m.rho(g)
        rg_n = n.rho(g)
        op = _vec_right_mul_operator(rg_m, n.dim) - _vec_left_mul_operator(rg_n, m.dim)
        blocks.append(op)
    system = blocks[0]
    for b in blocks[1:]:
        system = system.vstack(b)
    ker = system.kernel_basis()
    homs = []
    for j in range(ker.ncols):
        entries = [ker[i, j] for i in range(ker.nrows)]
        mat = Matrix.from_entries(f, n.dim, m.dim, entries)
        homs.append(ModuleHom(m, n, mat, check=False))
    return homs


def hom_space_dim(m: LeftModule, n: LeftModule) -> int:
    return len(hom_space(m, n))


def _grid_points(k: int, max_side: int, cap: int):
    """Deterministic enumeration of integer coefficient tuples, increasing
    grid side, skipping the all-zero tuple."""
    count = 0
    for side in range(2, max_side + 1):
        for tup in itertools.product(range(side), repeat=k):
            if all(t == 0 for t in tup):
                continue
            if max(tup) != side - 1:
                continue  # already seen on a smaller grid
            yield tup
            count += 1
            if count >= cap:
                return


class InconclusiveIsomorphism(Exception):
    """Search space exhausted without certificate either way."""


def is_isomorphic(m: LeftModule, n: LeftModule,
                  cap: int = 20000) -> Optional[ModuleHom]:
    """An invertible intertwiner M -> N, or None.

    Absence is certified by dimension or Hom-dimension obstructions when
    possible; otherwise the determinant polynomial of the Hom space is
    evaluated on a deterministic integer grid (sufficient over the rationals
    and over large prime fields).  Over tiny prime fields with oversized Hom
    spaces the search may raise InconclusiveIsomorphism.
    """
    if m.algebra.dim != n.algebra.dim:
        raise ModuleError("is_isomorphic over different algebras")
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return ModuleHom(m, n, Matrix.zeros(m.algebra.field, 0, 0), check=False)
    homs = hom_space(m, n)
    if not homs:
        return None
    d_mn = len(homs)
    d_mm = hom_space_dim(m, m)
    d_nn = hom_space_dim(n, n)
    if d_mn != d_mm or d_mn != d_nn:
        return None
    f = m.algebra.field
    k = len(homs)
    # Grid side exceeding both the Hom dimension and the determinant degree
    # makes exhaustion a certificate of absence.
    max_side = max(k, m.dim) + 2
    if f.char != 0:
        max_side = min(max_side, f.char)
    tried = 0
    for tup in _grid_points(k, max_side, cap):
        tried += 1
        cand = Matrix.zeros(f, n.dim, m.dim)
        for c, h in zip(tup, homs):
            if c:
                cand = cand + h.matrix.scale(f.coerce(c))
        if cand.rank() == m.dim:
            hom = ModuleHom(m, n, cand, check=True)
            if cand.inverse() is None:
                raise AssertionError("rank check and inverse disagree")
            return hom
    if tried >= cap:
        raise InconclusiveIsomorphism(
            f"isomorphism grid search cap {cap} reached (hom dim {k})"
        )
    if f.char != 0 and max_side == f.char and f.char < max(k, m.dim) + 2:
        raise InconclusiveIsomorphism(
            f"field too small to certify absence over {f!r}"
        )
    return None


# ---------------------------------------------------------------------------
# Submodules, quotients, center, radical


def submodule_generated(m: LeftModule, vectors: Matrix) -> Tuple[LeftModule, ModuleHom]:
    """Smallest submodule containing the given column vectors."""
    f = m.algebra.field
    span = vectors.column_space_basis()
    while True:
        grown = span
        for g in m.algebra.generators:
            grown = grown.hstack(m.rho(g) * span)
        grown = grown.column_space_basis()
        if grown.ncols == span.ncols:
            break
        span = grown
    basis = span
    mats = []
    for i in range(m.algebra.dim):
        img = m.action[i] * basis
        coeff = basis.solve(img)
        if coeff is None:
            raise ModuleError("submodule closure failed (internal error)")
        mats.append(coeff)
    sub = LeftModule(m.algebra, basis.ncols, mats, pair=m.pair, check=False)
    incl = ModuleHom(sub, m, basis, check=False)
    return sub, incl


def quotient_module(m: LeftModule, sub_incl: ModuleHom) -> Tuple[LeftModule, ModuleHom]:
    """Quotient of M by the image of a submodule inclusion."""
    f = m.algebra.field
    proj, section = quotient_maps(m.dim, sub_incl.matrix)
    mats = [proj * m.action[i] * section for i in range(m.algebra.dim)]
    quot = LeftModule(m.algebra, proj.nrows, mats, pair=m.pair, check=False)
    return quot, ModuleHom(m, quot, proj, check=False)


def center(a: Algebra) -> List[List]:
    """Basis vectors of the center {z : z x = x z for all x}."""
    f = a.field
    n = a.dim
    blocks = []
    for i in range(n):
        ei = [f.one if t == i else f.zero for t in range(n)]
        blocks.append(a.left_mul_matrix(ei) - a.right_mul_matrix(ei))
    system = blocks[0]
    for b in blocks[1:]:
        system = system.vstack(b)
    ker = system.kernel_basis()
    return [[ker[i, j] for i in range(n)] for j in range(ker.ncols)]


class UnsupportedFieldError(NotImplementedError):
    pass


def radical_basis(a: Algebra) -> Matrix:
    """Jacobson radical via the trace form of the regular representation
    (valid in characteristic zero only)."""
    if a.field.char != 0:
        raise UnsupportedFieldError(
            "trace-form radical needs characteristic zero"
        )
    f = a.field
    L = a.left_regular_matrices()
    n = a.dim
    gram = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = L[i] * L[j]
            tr = f.zero
            for t in range(n):
                tr = f.add(tr, prod[t, t])
            row.append(tr)
        gram.append(row)
    return Matrix(f, gram, n).kernel_basis()


def is_semisimple(a: Algebra) -> bool:
    return radical_basis(a).ncols == 0


def _sympy_rational_to_field(field, c):
    from fractions import Fraction
    import sympy

    r = sympy.Rational(c)
    return field.coerce(Fraction(int(r.p), int(r.q)))


def _min_poly(mat: Matrix):
    """Minimal polynomial of a matrix over QQ as a sympy Poly."""
    import sympy

    f = mat.field
    n = mat.nrows
    powers = [Matrix.identity(f, n)]
    while True:
        stacked = powers[0].flatten_column()
        for p in powers[1:]:
            stacked = stacked.hstack(p.flatten_column())
        nxt = powers[-1] * mat
        coeffs = stacked.solve(nxt.flatten_column())
        if coeffs is not None:
            x = sympy.Symbol("x")
            poly = x ** len(powers)
            for i in range(coeffs.nrows):
                poly -= sympy.Rational(coeffs[i, 0]) * x ** i
            return sympy.Poly(poly, x, domain="QQ")
        powers.append(nxt)


def _central_idempotents(a: Algebra) -> List[List]:
    """Primitive idempotents of the center of a semisimple QQ-algebra."""
    import sympy

    f = a.field
    zcols = center(a)
    if len(zcols) == 1:
        return [list(a.unit)]
    # Find a generic central element whose minimal polynomial has full degree.
    for t in range(1, 50):
        z = [f.zero] * a.dim
        for idx, zc in enumerate(zcols):
            w = f.coerce(t ** idx)
            for i in range(a.dim):
                z[i] = f.add(z[i], f.mul(w, zc[i]))
        Lz = a.left_mul_matrix(z)
        mp = _min_poly(Lz)
        if mp.degree() == len(zcols):
            break
    else:
        raise AlgebraError("could not find a generating central element")
    x = sympy.Symbol("x")
    factors = sympy.factor_list(mp.as_expr())[1]
    idems = []
    for fac, mult in factors:
        if mult != 1:
            raise AlgebraError("center is not semisimple")
        fac_p = sympy.Poly(fac, x, domain="QQ")
        g, rem = sympy.div(mp, fac_p, x)
        if not sympy.Poly(rem, x, domain="QQ").is_zero:
            raise AlgebraError("factor does not divide the minimal polynomial")
        s, _, gcd = sympy.gcdex(g.as_expr(), fac_p.as_expr(), x)
        gcd_p = sympy.Poly(gcd, x, domain="QQ")
        if gcd_p.degree() != 0:
            raise AlgebraError("minimal polynomial factors are not coprime")
        # e = g(z) * s(z) / c with s*g + t*fac = c constant, so e = 1 mod fac.
        hpoly = sympy.Poly(sympy.expand(s * g.as_expr() / gcd), x, domain="QQ")
        coeffs = hpoly.all_coeffs()[::-1]
        # Evaluate at z inside the algebra via powers of z.
        acc = [f.zero] * a.dim
        power = list(a.unit)
        for c in coeffs:
            cf = _sympy_rational_to_field(f, c)
            for i in range(a.dim):
                acc[i] = f.add(acc[i], f.mul(cf, power[i]))
            power = a.mul_vectors(power, z)
        idems.append(acc)
    return idems


def simple_modules(a: Algebra) -> List[LeftModule]:
    """A complete list of pairwise nonisomorphic simple left modules.

    Characteristic zero only (uses the trace-form radical).  Works for split
    semisimple quotients; refines candidate left ideals by splitting along
    singular endomorphisms.
    """
    f = a.field
    J = radical_basis(a)
    if J.ncols:
        semi, proj, section = a.quotient_by_ideal(J)
    else:
        semi, proj, section = a, Matrix.identity(f, a.dim), Matrix.identity(f, a.dim)
    reg = regular_module(semi)
    idems = _central_idempotents(semi)
    simples_over_semi = []
    for e in idems:
        evec = Matrix(f, [[x] for x in e], 1)
        block, _ = submodule_generated(reg, evec)
        cand = _refine_to_simple(block)
        simples_over_semi.append(cand)
    out = []
    for s in simples_over_semi:
        mats = []
        for i in range(a.dim):
            # e_i of A acts through its image in A/J (J kills simples)
            col = proj * Matrix(f, [[f.one if t == i else f.zero]
                                    for t in range(a.dim)], 1)
            mats.append(s.rho([col[k, 0] for k in range(semi.dim)]))
        out.append(LeftModule(a, s.dim, mats, check=False))
    return out


def _refine_to_simple(m: LeftModule) -> LeftModule:
    """Shrink a module over a semisimple algebra to a simple submodule."""
    current = m
    while True:
        homs = hom_space(current, current)
        if len(homs) == 1:
            return current
        split = None
        for h in homs:
            r = h.matrix.rank()
            if 0 < r < current.dim:
                split = h
                break
        if split is None:
            # Try differences/combinations via minimal polynomial factors.
            import sympy

            for h in homs:
                mp = _min_poly(h.matrix)
                factors = sympy.factor_list(mp.as_expr())[1]
                if len(factors) > 1 or factors[0][1] > 1:
                    fac = sympy.Poly(factors[0][0], sympy.Symbol("x"), domain="QQ")
                    coeffs = fac.all_coeffs()[::-1]
                    acc = Matrix.zeros(m.algebra.field, current.dim, current.dim)
                    power = Matrix.identity(m.algebra.field, current.dim)
                    for c in coeffs:
                        acc = acc + power.scale(_sympy_rational_to_field(m.algebra.field, c))
                        power = power * h.matrix
                    if 0 < acc.rank() < current.dim:
                        split = ModuleHom(current, current, acc, check=False)
                        break
            if split is None:
                # Division endomorphism ring: the module is simple.
                return current
        ker = split.matrix.kernel_basis()
        if ker.ncols == 0:
            img = split.matrix.column_space_basis()
            sub, _ = submodule_generated(current, img)
        else:
            sub, _ = submodule_generated(current, ker)
        if sub.dim == current.dim:
            return current
        current = sub


def transport_module(target: Algebra, phi: Matrix, m: LeftModule,
                     check: bool = True) -> LeftModule:
    """View ``m`` as a module over ``target`` along an algebra isomorphism
    phi: target -> m.algebra given by its coordinate matrix.

    When ``check`` is set, phi is certified unital, multiplicative, and
    invertible before the transported module is built.
    """
    src = m.algebra
    f = target.field
    if phi.nrows != src.dim or phi.ncols != target.dim:
        raise AlgebraError("isomorphism matrix shape mismatch")
    if check:
        if phi.inverse() is None:
            raise AlgebraError("transport map is not invertible")
        unit_img = phi * Matrix(f, [[u] for u in target.unit], 1)
        if any(unit_img.rows[r][0] != src.unit[r] for r in range(src.dim)):
            raise AlgebraError("transport map does not preserve the unit")
        for i in range(target.dim):
            ei = [f.one if t == i else f.zero for t in range(target.dim)]
            pi = [r[0] for r in (phi * Matrix(f, [[x] for x in ei], 1)).rows]
            for j in range(target.dim):
                ej = [f.one if t == j else f.zero
                      for t in range(target.dim)]
                pj = [r[0] for r in (phi * Matrix(f, [[x] for x in ej],
                                                  1)).rows]
                lhs = src.mul_vectors(pi, pj)
                prod = target.table.get((i, j), {})
                vec = [f.zero] * target.dim
                for k, v in prod.items():
                    vec[k] = v
                rhs = [r[0] for r in (phi * Matrix(f, [[x] for x in vec],
                                                   1)).rows]
                if lhs != rhs:
                    raise AlgebraError(
                        f"transport map not multiplicative at basis pair "
                        f"({i}, {j})")
    action = []
    for i in range(target.dim):
        col = phi.column(i)
        mat = Matrix.zeros(f, m.dim, m.dim)
        for j in range(src.dim):
            c = col.rows[j][0]
            if c != f.zero:
                mat = mat + m.action[j].scale(c)
        action.append(mat)
    return LeftModule(target, m.dim, action)


def is_commutative(a: Algebra) -> bool:
    for (i, j), comps in a.table.items():
        if a.table.get((j, i), {}) != comps:
            return False
    return True


def symmetric_bimodule(m: LeftModule) -> LeftModule:
    """View a left module over a commutative algebra as an (A, A)-bimodule
    with the same action on both sides."""
    if m.pair is not None:
        return m
    a = m.algebra
    if not is_commutative(a):
        raise ModuleError(
            "symmetric bimodule needs a commutative algebra; supply an "
            "explicit bimodule instead")
    alg = bimodule_algebra(a, a)
    action = []
    for i in range(a.dim):
        for j in range(a.dim):
            action.append(m.action[i] * m.action[j])
    return LeftModule(alg, m.dim, action, pair=(a, a), check=False)
