"""Bounded cochain complexes of modules and their calculus.

Shift, cone, Hom complex, tensor complex over a middle algebra, cohomology
with explicit subquotient witnesses, quasi-isomorphism and null-homotopy
tests.  Sign conventions: shift negates the differential once per step; the
Hom differential is d(f) = d_N f - (-1)^i f d_M; the tensor differential is
d(m (x) n) = dm (x) n + (-1)^{deg m} m (x) dn.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .fields import check_same_field
from .linalg import Matrix, kron_apply, quotient_maps
from .algebra import (
    Algebra,
    LeftModule,
    ModuleHom,
    ModuleError,
    bimodule_algebra,
    direct_sum,
    hom_space,
    module_as_bimodule,
    trivial_algebra,
    zero_module,
)


class ComplexError(ValueError):
    pass


class Complex:
    """Bounded cochain complex of left modules with degree +1 differential."""

    def __init__(self, algebra: Algebra, modules: Dict[int, LeftModule],
                 diffs: Dict[int, Matrix], pair=None, check: bool = True):
        self.algebra = algebra
        self.pair = pair
        mods = {d: m for d, m in modules.items() if m.dim > 0}
        self.modules = mods
        if mods:
            self.lo = min(mods)
            self.hi = max(mods)
        else:
            self.lo = 0
            self.hi = 0
        self.diffs = {}
        for d, mat in diffs.items():
            if mat.nrows == 0 or mat.ncols == 0:
                continue
            if mat.ncols != self.dim(d) or mat.nrows != self.dim(d + 1):
                raise ComplexError(f"differential shape mismatch at degree {d}")
            if not mat.is_zero():
                self.diffs[d] = mat
        if check:
            self.validate()

    # -- access ------------------------------------------------------------

    def module(self, i: int) -> LeftModule:
        m = self.modules.get(i)
        if m is None:
            return zero_module(self.algebra, pair=self.pair)
        return m

    def dim(self, i: int) -> int:
        m = self.modules.get(i)
        return m.dim if m is not None else 0

    def diff(self, i: int) -> Matrix:
        d = self.diffs.get(i)
        if d is None:
            f = self.algebra.field
            return Matrix.zeros(f, self.dim(i + 1), self.dim(i))
        return d

    def degrees(self):
        if not self.modules:
            return []
        return list(range(self.lo, self.hi + 1))

    def is_zero_complex(self) -> bool:
        return not self.modules

    def total_dim(self) -> int:
        return sum(m.dim for m in self.modules.values())

    def dims(self) -> Dict[int, int]:
        return {d: m.dim for d, m in sorted(self.modules.items())}

    def __repr__(self):
        return f"Complex({self.dims()} over {self.algebra!r})"

    # -- validation --------------------------------------------------------

    def validate(self):
        for d in self.degrees():
            mat = self.diffs.get(d)
            if mat is None:
                continue
            ModuleHom(self.module(d), self.module(d + 1), mat)  # intertwining
            nxt = self.diffs.get(d + 1)
            if nxt is not None and not (nxt * mat).is_zero():
                raise ComplexError(f"d^2 != 0 at degree {d}")

    # -- constructions -----------------------------------------------------

    def shift(self, k: int) -> "Complex":
        """M[k]: degree i holds M^{i+k}; differential scaled by (-1)^k."""
        f = self.algebra.field
        sign = f.one if k % 2 == 0 else f.neg(f.one)
        mods = {d - k: m for d, m in self.modules.items()}
        diffs = {d - k: mat.scale(sign) for d, mat in self.diffs.items()}
        return Complex(self.algebra, mods, diffs, pair=self.pair, check=False)


def single_complex(m: LeftModule, degree: int = 0, pair=None) -> Complex:
    if pair is None:
        pair = m.pair
    return Complex(m.algebra, {degree: m}, {}, pair=pair, check=False)


def shift(m: Complex, k: int) -> Complex:
    return m.shift(k)


class ChainMap:
    """Degreewise map of complexes commuting with the differentials."""

    def __init__(self, source: Complex, target: Complex,
                 comps: Dict[int, Matrix], check: bool = True):
        self.source = source
        self.target = target
        self.comps = {
            d: m for d, m in comps.items()
            if m.nrows and m.ncols and not m.is_zero()
        }
        if check:
            self.validate()

    def comp(self, i: int) -> Matrix:
        c = self.comps.get(i)
        if c is None:
            f = self.source.algebra.field
            return Matrix.zeros(f, self.target.dim(i), self.source.dim(i))
        return c

    def validate(self):
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for d in degs:
            c = self.comps.get(d)
            if c is not None:
                if (c.nrows, c.ncols) != (self.target.dim(d), self.source.dim(d)):
                    raise ComplexError(f"chain map shape mismatch at degree {d}")
                ModuleHom(self.source.module(d), self.target.module(d), c)
            lhs = self.comp(d + 1) * self.source.diff(d)
            rhs = self.target.diff(d) * self.comp(d)
            if lhs != rhs:
                raise ComplexError(f"chain map does not commute at degree {d}")

    def is_zero(self) -> bool:
        return not self.comps

    def shift(self, k: int) -> "ChainMap":
        return ChainMap(self.source.shift(k), self.target.shift(k),
                        {d - k: m for d, m in self.comps.items()}, check=False)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self o other."""
        comps = {}
        for d in set(self.comps) | set(other.comps):
            comps[d] = self.comp(d) * other.comp(d)
        return ChainMap(other.source, self.target, comps, check=False)

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def identity_chain_map(x: Complex) -> ChainMap:
    f = x.algebra.field
    return ChainMap(x, x, {d: Matrix.identity(f, x.dim(d)) for d in x.degrees()},
                    check=False)


def zero_chain_map(x: Complex, y: Complex) -> ChainMap:
    return ChainMap(x, y, {}, check=False)


# ---------------------------------------------------------------------------
# Cone


def cone(alpha: ChainMap) -> Tuple[Complex, ChainMap, ChainMap]:
    """Mapping cone T(L) (+) M of alpha : L -> M, with the canonical
    inclusion M -> cone and projection cone -> T(L).  The T(L) summand
    comes first in the block order."""
    L, M = alpha.source, alpha.target
    f = L.algebra.field
    mods = {}
    diffs = {}
    degs = set()
    for d in L.degrees():
        degs.add(d - 1)
    degs.update(M.degrees())
    for d in degs:
        top = L.module(d + 1)
        bot = M.module(d)
        if top.dim + bot.dim == 0:
            continue
        if top.dim == 0:
            mods[d] = bot
        elif bot.dim == 0:
            mods[d] = top
        else:
            mods[d] = direct_sum([top, bot])
    for d in sorted(degs):
        nt, nb = L.dim(d + 2), M.dim(d + 1)
        mt, mb = L.dim(d + 1), M.dim(d)
        if (nt + nb) == 0 or (mt + mb) == 0:
            continue
        dl = L.diff(d + 1).scale(f.neg(f.one))
        a = alpha.comp(d + 1)
        dm = M.diff(d)
        grid = [
            [dl, Matrix.zeros(f, nt, mb)],
            [a, dm],
        ]
        diffs[d] = Matrix.from_blocks(f, grid)
    cone_cx = Complex(L.algebra, mods, diffs, pair=L.pair, check=False)
    incl_comps = {}
    proj_comps = {}
    for d in cone_cx.degrees():
        mt, mb = L.dim(d + 1), M.dim(d)
        if mb:
            incl_comps[d] = Matrix.zeros(f, mt, mb).vstack(Matrix.identity(f, mb))
        if mt:
            proj_comps[d] = Matrix.identity(f, mt).hstack(Matrix.zeros(f, mt, mb))
    incl = ChainMap(M, cone_cx, incl_comps, check=False)
    proj = ChainMap(cone_cx, L.shift(1), proj_comps, check=False)
    return cone_cx, incl, proj


# ---------------------------------------------------------------------------
# Cohomology


class Cohomology:
    """H^i with witnesses: representative cocycles and the class map."""

    def __init__(self, cx: Complex, degree: int):
        self.complex = cx
        self.degree = degree
        f = cx.algebra.field
        d_out = cx.diff(degree)
        d_in = cx.diff(degree - 1)
        n = cx.dim(degree)
        Z = d_out.kernel_basis() if n else Matrix.zeros(f, 0, 0)
        if n and d_in.ncols:
            img_coords = Z.solve(d_in)
            if img_coords is None:
                raise ComplexError("image is not contained in the kernel")
        else:
            img_coords = Matrix.zeros(f, Z.ncols, 0)
        proj, section = quotient_maps(Z.ncols, img_coords)
        self.cocycles = Z                       # n x z
        self.class_proj = proj                  # h x z
        self.section = Z * section if n else Matrix.zeros(f, 0, proj.nrows)
        h = proj.nrows
        amb = cx.module(degree)
        mats = []
        for i in range(cx.algebra.dim):
            if h == 0:
                mats.append(Matrix.zeros(f, 0, 0))
                continue
            imgs = amb.action[i] * self.section
            mats.append(self.class_of(imgs))
        self.module = LeftModule(cx.algebra, h, mats, pair=cx.pair, check=False)

    @property
    def dim(self) -> int:
        return self.module.dim

    def class_of(self, cols: Matrix) -> Matrix:
        """Quotient coordinates of cocycle columns."""
        if self.class_proj.nrows == 0:
            return Matrix.zeros(self.complex.algebra.field,
                                0, cols.ncols)
        coords = self.cocycles.solve(cols)
        if coords is None:
            raise ComplexError("vector is not a cocycle")
        return self.class_proj * coords


def cohomology(cx: Complex, i: int) -> Cohomology:
    return Cohomology(cx, i)


def cohomology_dims(cx: Complex) -> Dict[int, int]:
    out = {}
    for d in range(cx.lo, cx.hi + 1):
        h = Cohomology(cx, d).dim
        if h:
            out[d] = h
    return out


def is_acyclic(cx: Complex) -> bool:
    return not cohomology_dims(cx)


def induced_map(phi: ChainMap, i: int) -> Tuple[Matrix, Cohomology, Cohomology]:
    """H^i(phi) together with the two cohomology witnesses."""
    hs = Cohomology(phi.source, i)
    ht = Cohomology(phi.target, i)
    if hs.dim == 0 or ht.dim == 0:
        mat = Matrix.zeros(phi.source.algebra.field, ht.dim, hs.dim)
        return mat, hs, ht
    return ht.class_of(phi.comp(i) * hs.section), hs, ht


def is_quasi_iso(phi: ChainMap) -> bool:
    """True iff all induced cohomology maps are isomorphisms; cross-checked
    against acyclicity of the cone."""
    lo = min(phi.source.lo, phi.target.lo) - 1
    hi = max(phi.source.hi, phi.target.hi) + 1
    by_h = True
    for d in range(lo, hi + 1):
        mat, hs, ht = induced_map(phi, d)
        if hs.dim != ht.dim or (hs.dim and mat.rank() != hs.dim):
            by_h = False
            break
    cone_cx, _, _ = cone(phi)
    by_cone = is_acyclic(cone_cx)
    if by_h != by_cone:
        raise AssertionError("cohomology and cone acyclicity tests disagree")
    return by_h


# ---------------------------------------------------------------------------
# Hom complex


def _module_pair(m: LeftModule):
    if m.pair is not None:
        return m.pair
    triv = trivial_algebra(m.algebra.field)
    return (m.algebra, triv)


def plain_complex(x: Complex) -> Complex:
    """Forget any bimodule pair tag: the same complex viewed over its full
    owning algebra."""
    if x.pair is None:
        return x
    mods = {d: LeftModule(m.algebra, m.dim, m.action, pair=None, check=False)
            for d, m in x.modules.items()}
    return Complex(x.algebra, mods, dict(x.diffs), pair=None, check=False)


def _as_bimodule_complex(x: Complex) -> Complex:
    if x.pair is not None:
        return x
    mods = {d: module_as_bimodule(m) for d, m in x.modules.items()}
    if mods:
        alg = next(iter(mods.values())).algebra
    else:
        alg = bimodule_algebra(x.algebra, trivial_algebra(x.algebra.field))
    pair = (x.algebra, trivial_algebra(x.algebra.field))
    return Complex(alg, mods, dict(x.diffs), pair=pair, check=False)


class HomComplex:
    """Hom complex over the shared left algebra of two bimodule complexes.

    For M an (A, B)-complex and N an (A, C)-complex, the result is a
    (B, C)-bimodule complex: (b . f . c)(m) = f(m . b) . c.  Component
    bookkeeping (which source degree each coordinate block comes from) is
    kept for extracting and inserting graded maps.
    """

    def __init__(self, m: Complex, n: Complex):
        m = _as_bimodule_complex(m)
        n = _as_bimodule_complex(n)
        (a1, b) = m.pair
        (a2, c) = n.pair
        if a1.dim != a2.dim:
            raise ComplexError("hom complex over different left algebras")
        check_same_field(m.algebra.field, n.algebra.field)
        f = m.algebra.field
        self.source = m
        self.target = n
        self.left_algebra = a1
        out_alg = bimodule_algebra(b, c)
        self.pair = (b, c)
        # Basis of Hom_A(M^j, N^{j+i}) per degree i and source degree j.
        lo = n.lo - m.hi
        hi = n.hi - m.lo
        self.field = f
        self.components: Dict[int, List[Tuple[int, List[Matrix]]]] = {}
        self.offsets: Dict[int, Dict[int, int]] = {}
        self._dims: Dict[int, int] = {}
        self._flat: Dict[Tuple[int, int], Matrix] = {}
        mods: Dict[int, LeftModule] = {}
        left_m = {j: m.module(j).restrict_left() for j in m.degrees()}
        left_n = {j: n.module(j).restrict_left() for j in n.degrees()}
        for i in range(lo, hi + 1):
            comps = []
            offs = {}
            total = 0
            for j in m.degrees():
                if n.dim(j + i) == 0 or m.dim(j) == 0:
                    continue
                basis = [h.matrix for h in hom_space(left_m[j], left_n[j + i])]
                if not basis:
                    continue
                offs[j] = total
                total += len(basis)
                comps.append((j, basis))
                flat = basis[0].flatten_column()
                for bmat in basis[1:]:
                    flat = flat.hstack(bmat.flatten_column())
                self._flat[(i, j)] = flat
            if not comps:
                continue
            self.components[i] = comps
            self.offsets[i] = offs
            self._dims[i] = total
            mods[i] = self._degree_module(out_alg, b, c, m, n, i, comps, total)
        diffs = {}
        for i in sorted(self.components):
            dmat = self._differential(m, n, i)
            if dmat is not None:
                diffs[i] = dmat
        self.complex = Complex(out_alg, mods, diffs, pair=self.pair, check=False)

    # -- coordinates <-> graded maps --------------------------------------

    def coords_of(self, i: int, mats: Dict[int, Matrix]) -> Matrix:
        """Coordinates of a degree-i graded map given per-source-degree
        matrices M^j -> N^{j+i}."""
        f = self.field
        dim = self._dims.get(i, 0)
        col = [[f.zero] for _ in range(dim)]
        for j, basis in self.components.get(i, []):
            g = mats.get(j)
            if g is None or g.is_zero():
                continue
            coords = self._flat[(i, j)].solve(g.flatten_column())
            if coords is None:
                raise ComplexError("graded map is not an intertwiner combination")
            off = self.offsets[i][j]
            for t in range(coords.nrows):
                col[off + t][0] = coords[t, 0]
        return Matrix(f, col, 1)

    def maps_of(self, i: int, vec: Matrix) -> Dict[int, Matrix]:
        """Per-source-degree matrices of a coordinate vector in degree i."""
        f = self.field
        out = {}
        for j, basis in self.components.get(i, []):
            off = self.offsets[i][j]
            acc = Matrix.zeros(f, basis[0].nrows, basis[0].ncols)
            for t, bmat in enumerate(basis):
                cval = vec[off + t, 0]
                if cval != f.zero:
                    acc = acc + bmat.scale(cval)
            out[j] = acc
        return out

    # -- internals ---------------------------------------------------------

    def _degree_module(self, out_alg, b, c, m, n, i, comps, total):
        f = m.algebra.field
        mats = []
        for bi in range(b.dim):
            for ci in range(c.dim):
                # (e_b (x) e_c) . f = rho_N(1 (x) e_c) f rho_M(1 (x) e_b)
                cols = []
                for j, basis in comps:
                    right_b = m.module(j).right_unit_index_matrix(bi)
                    right_c = n.module(j + i).right_unit_index_matrix(ci)
                    for bmat in basis:
                        img = right_c * bmat * right_b
                        coords = self._flat[(i, j)].solve(img.flatten_column())
                        if coords is None:
                            raise ComplexError("bimodule action leaves hom space")
                        col = [f.zero] * total
                        off = self.offsets[i][j]
                        for t in range(coords.nrows):
                            col[off + t] = coords[t, 0]
                        cols.append(col)
                mats.append(Matrix(f, [[cols[s][r] for s in range(total)]
                                       for r in range(total)], total))
        return LeftModule(out_alg, total, mats, pair=(b, c), check=False)

    def _differential(self, m, n, i):
        """d(f) = d_N f - (-1)^i f d_M in coordinates."""
        if (i + 1) not in self.components:
            return None
        f_ = m.algebra.field
        src_dim = self._dims.get(i, 0)
        tgt_dim = self._dims.get(i + 1, 0)
        if src_dim == 0 or tgt_dim == 0:
            return None
        sign = f_.one if i % 2 == 0 else f_.neg(f_.one)
        cols = []
        for j, basis in self.components[i]:
            for bmat in basis:
                target_mats: Dict[int, Matrix] = {}
                dn = n.diff(j + i)
                if dn.nrows:
                    target_mats[j] = dn * bmat
                dm = m.diff(j - 1)
                if dm.ncols:
                    term = (bmat * dm).scale(f_.neg(sign))
                    if (j - 1) in target_mats:
                        target_mats[j - 1] = target_mats[j - 1] + term
                    else:
                        target_mats[j - 1] = term
                cols.append(self.coords_of(i + 1, target_mats))
        out = cols[0]
        for cvec in cols[1:]:
            out = out.hstack(cvec)
        return out


def hom_complex(m: Complex, n: Complex) -> HomComplex:
    return HomComplex(m, n)


def chain_map_from_hom_element(hc: HomComplex, vec: Matrix,
                               check: bool = True) -> ChainMap:
    """Interpret a degree-0 cocycle of the Hom complex as a chain map."""
    comps = hc.maps_of(0, vec)
    return ChainMap(hc.source, hc.target, comps, check=check)


def is_null_homotopic(phi: ChainMap) -> Optional[Dict[int, Matrix]]:
    """Degree -1 maps h with phi = d h + h d, or None.

    The homotopy is found as a preimage of phi under the Hom-complex
    differential in degree -1.
    """
    hc = HomComplex(plain_complex(phi.source), plain_complex(phi.target))
    target_vec = hc.coords_of(0, dict(phi.comps))
    if target_vec.is_zero() and not phi.comps:
        return {}
    dmat = hc.complex.diff(-1)
    if dmat.ncols == 0:
        return None if not target_vec.is_zero() else {}
    sol = dmat.solve(target_vec)
    if sol is None:
        return None
    return hc.maps_of(-1, sol)


def homotopic(phi: ChainMap, psi: ChainMap) -> bool:
    diff = ChainMap(phi.source, phi.target,
                    {d: phi.comp(d) - psi.comp(d)
                     for d in set(phi.comps) | set(psi.comps)}, check=False)
    return is_null_homotopic(diff) is not None


# ---------------------------------------------------------------------------
# Tensor complex


class BalancedTensor:
    """M (x)_B N for an (A, B)-bimodule M and (B, C)-bimodule N, presented as
    the cokernel of the balancing map inside M (x)_K N."""

    def __init__(self, m: LeftModule, n: LeftModule):
        (a, b1) = _module_pair(m)
        (b2, c) = _module_pair(n)
        if b1.dim != b2.dim:
            raise ComplexError("tensor contraction algebras differ")
        f = m.algebra.field
        self.left = m
        self.right = n
        md, nd = m.dim, n.dim
        cols = []
        for s in range(md):
            es = Matrix(f, [[f.one if t == s else f.zero] for t in range(md)], 1)
            for bi in range(b1.dim):
                mb = m.right_unit_index_matrix(bi) * es  # m . b
                for t in range(nd):
                    et = Matrix(f, [[f.one if u == t else f.zero]
                                    for u in range(nd)], 1)
                    bn = n.left_unit_index_matrix(bi) * et  # b . n
                    col = [f.zero] * (md * nd)
                    for i2 in range(md):
                        v = mb[i2, 0]
                        if v != f.zero:
                            col[i2 * nd + t] = f.add(col[i2 * nd + t], v)
                    for j2 in range(nd):
                        v = bn[j2, 0]
                        if v != f.zero:
                            col[s * nd + j2] = f.sub(col[s * nd + j2], v)
                    cols.append(col)
        if cols:
            bal = Matrix(f, [[cols[cc][r] for cc in range(len(cols))]
                             for r in range(md * nd)], len(cols))
        else:
            bal = Matrix.zeros(f, md * nd, 0)
        proj, section = quotient_maps(md * nd, bal)
        self.proj = proj
        self.section = section
        out_alg = bimodule_algebra(a, c)
        q = proj.nrows
        mats = []
        for ai in range(a.dim):
            la = m.left_unit_index_matrix(ai)
            for ci in range(c.dim):
                rc = n.right_unit_index_matrix(ci)
                mats.append(proj * kron_apply(la, rc, section))
        self.module = LeftModule(out_alg, q, mats, pair=(a, c), check=False)


def tensor_complex(m: Complex, n: Complex, check: bool = True) -> Complex:
    """Total tensor product contracting the right algebra of M against the
    left algebra of N, degreewise balanced."""
    m = _as_bimodule_complex(m)
    n = _as_bimodule_complex(n)
    f = m.algebra.field
    cells: Dict[Tuple[int, int], BalancedTensor] = {}
    for i in m.degrees():
        for j in n.degrees():
            if m.dim(i) and n.dim(j):
                cells[(i, j)] = BalancedTensor(m.module(i), n.module(j))
    by_degree: Dict[int, List[Tuple[int, int]]] = {}
    for (i, j) in cells:
        by_degree.setdefault(i + j, []).append((i, j))
    for lst in by_degree.values():
        lst.sort()
    mods = {}
    offsets: Dict[int, Dict[Tuple[int, int], int]] = {}
    for d, lst in by_degree.items():
        offs = {}
        total = 0
        blocks = []
        for ij in lst:
            offs[ij] = total
            total += cells[ij].module.dim
            blocks.append(cells[ij].module)
        offsets[d] = offs
        mods[d] = direct_sum(blocks) if len(blocks) > 1 else blocks[0]
    diffs = {}
    for d in sorted(by_degree):
        if (d + 1) not in by_degree:
            continue
        src = mods[d]
        tgt = mods[d + 1]
        big = Matrix.zeros(f, tgt.dim, src.dim).rows
        for (i, j) in by_degree[d]:
            cell = cells[(i, j)]
            c0 = offsets[d][(i, j)]
            # horizontal: d_M (x) id
            if (i + 1, j) in cells:
                tcell = cells[(i + 1, j)]
                dm = m.diff(i)
                blk = tcell.proj * kron_apply(
                    dm, Matrix.identity(f, n.dim(j)), cell.section)
                r0 = offsets[d + 1][(i + 1, j)]
                for r in range(blk.nrows):
                    for c in range(blk.ncols):
                        big[r0 + r][c0 + c] = blk[r, c]
            # vertical: (-1)^i id (x) d_N
            if (i, j + 1) in cells:
                tcell = cells[(i, j + 1)]
                dn = n.diff(j)
                sign = f.one if i % 2 == 0 else f.neg(f.one)
                blk = tcell.proj * kron_apply(
                    Matrix.identity(f, m.dim(i)), dn, cell.section)
                blk = blk.scale(sign)
                r0 = offsets[d + 1][(i, j + 1)]
                for r in range(blk.nrows):
                    for c in range(blk.ncols):
                        big[r0 + r][c0 + c] = blk[r, c]
        diffs[d] = Matrix(f, big, src.dim)
    pair = (m.pair[0], n.pair[1])
    out_alg = mods[next(iter(mods))].algebra if mods else bimodule_algebra(
        m.pair[0], n.pair[1])
    return Complex(out_alg, mods, diffs, pair=pair, check=check)


def direct_sum_complexes(xs: List[Complex]) -> Complex:
    f = xs[0].algebra.field
    degs = set()
    for x in xs:
        degs.update(x.degrees())
    mods = {}
    diffs = {}
    for d in degs:
        blocks = [x.module(d) for x in xs]
        mods[d] = direct_sum(blocks)
        diffs[d] = Matrix.block_diagonal(f, [x.diff(d) for x in xs])
    return Complex(xs[0].algebra, mods, diffs, pair=xs[0].pair, check=False)
