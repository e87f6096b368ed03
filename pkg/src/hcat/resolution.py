"""Truncated projective resolutions of modules and complexes, and injective
resolutions via vector-space duality, with explicit validity windows.

A resolution of depth ``w`` certifies cohomology comparisons in all degrees
strictly above ``hi(target) - w``; resolutions that terminate (zero kernel,
or a kernel certified projective by a split check) are exact everywhere and
carry no validity restriction.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .linalg import Matrix, quotient_maps
from .algebra import (
    Algebra,
    LeftModule,
    ModuleError,
    UnsupportedFieldError,
    dual_module,
    free_module,
    hom_space,
    radical_basis,
    regular_module,
)
from .complexes import (
    ChainMap,
    Complex,
    Cohomology,
    HomComplex,
    cohomology_dims,
    cone,
    identity_chain_map,
    plain_complex,
    single_complex,
)


class ResolutionError(ValueError):
    pass


class Resolution:
    """A complex of projectives with an augmentation quasi-isomorphism.

    ``finite`` means the augmentation is a genuine quasi-isomorphism;
    otherwise cohomology comparisons are certified only in degrees
    strictly above ``valid_above``.
    """

    def __init__(self, target: Complex, complex_: Complex,
                 augmentation: ChainMap, window: int, finite: bool,
                 valid_above: Optional[int] = None,
                 syzygies: Optional[List[LeftModule]] = None):
        self.target = target
        self.complex = complex_
        self.augmentation = augmentation
        self.window = window
        self.finite = finite
        self.valid_above = None if finite else valid_above
        self.syzygies = syzygies or []

    def valid_degree(self, i: int) -> bool:
        return self.finite or i > self.valid_above

    def length(self) -> int:
        if self.complex.is_zero_complex():
            return 0
        return self.target.hi - self.complex.lo if not self.target.is_zero_complex() \
            else -self.complex.lo

    def __repr__(self):
        tag = "finite" if self.finite else f"valid above {self.valid_above}"
        return f"Resolution({self.complex.dims()}, {tag})"


# ---------------------------------------------------------------------------
# Covers and projectivity


def _generator_columns(m: LeftModule, minimal: bool) -> Matrix:
    """Columns generating M: the full basis, or (characteristic 0) lifts of a
    basis of M / rad(A)M."""
    f = m.algebra.field
    if not minimal:
        return Matrix.identity(f, m.dim)
    rad = radical_basis(m.algebra)
    cols = None
    for j in range(rad.ncols):
        block = m.rho([rad[i, j] for i in range(rad.nrows)])
        cols = block if cols is None else cols.hstack(block)
    if cols is None:
        cols = Matrix.zeros(f, m.dim, 0)
    _, section = quotient_maps(m.dim, cols)
    return section


def free_cover(m: LeftModule, minimal: bool = False
               ) -> Tuple[LeftModule, Matrix, int]:
    """A surjection F = A^r -> M; returns (F, matrix of the surjection, r)."""
    a = m.algebra
    f = a.field
    gens = _generator_columns(m, minimal)
    r = gens.ncols
    if r == 0:
        return free_module(a, 0), Matrix.zeros(f, m.dim, 0), 0
    cols: List[List] = []
    for t in range(r):
        g = Matrix(f, [[gens[i, t]] for i in range(m.dim)], 1)
        for i in range(a.dim):
            cols.append([r[0] for r in (m.action[i] * g).rows])
    pi = Matrix(f, [[cols[c][row] for c in range(len(cols))]
                    for row in range(m.dim)], len(cols))
    if pi.rank() != m.dim:
        raise ResolutionError("cover is not surjective")
    fr = free_module(a, r)
    if m.pair is not None:
        fr = LeftModule(a, fr.dim, fr.action, pair=m.pair, check=False)
    return fr, pi, r


def kernel_module(f_mod: LeftModule, pi: Matrix) -> Tuple[LeftModule, Matrix]:
    """Kernel of a module surjection as a module, with its inclusion."""
    f = f_mod.algebra.field
    incl = pi.kernel_basis()
    k = incl.ncols
    mats = []
    for i in range(f_mod.algebra.dim):
        img = f_mod.action[i] * incl
        coords = incl.solve(img)
        if coords is None:
            raise ResolutionError("kernel is not action-stable")
        mats.append(coords)
    km = LeftModule(f_mod.algebra, k, mats, pair=f_mod.pair, check=False)
    return km, incl


def split_section(m: LeftModule, pi: Matrix, rank: int) -> Optional[Matrix]:
    """A module-map section s of the cover pi : A^r -> M (pi s = id), or
    None; existence certifies that M is projective."""
    a = m.algebra
    f = a.field
    n = a.dim
    if m.dim == 0:
        return Matrix.zeros(f, rank * n, 0)
    homs = [h.matrix for h in hom_space(m, regular_module(a))]
    if not homs:
        return None
    cols = []
    for j in range(rank):
        pij = Matrix(f, [[pi[r_, j * n + c] for c in range(n)]
                         for r_ in range(m.dim)], n)
        for h in homs:
            cols.append((pij * h).flatten_column())
    sysm = cols[0]
    for c in cols[1:]:
        sysm = sysm.hstack(c)
    rhs = Matrix.identity(f, m.dim).flatten_column()
    sol = sysm.solve(rhs)
    if sol is None:
        return None
    blocks = []
    for j in range(rank):
        acc = Matrix.zeros(f, n, m.dim)
        for t, h in enumerate(homs):
            cval = sol[j * len(homs) + t, 0]
            if cval != f.zero:
                acc = acc + h.scale(cval)
        blocks.append(acc)
    section = blocks[0]
    for b in blocks[1:]:
        section = section.vstack(b)
    return section


def is_projective(m: LeftModule, minimal: Optional[bool] = None) -> bool:
    if m.dim == 0:
        return True
    if minimal is None:
        minimal = m.algebra.field.char == 0
    _, pi, r = free_cover(m, minimal)
    if pi.kernel_basis().ncols == 0:
        return True
    return split_section(m, pi, r) is not None


# ---------------------------------------------------------------------------
# Module resolutions


def projective_resolution(m: LeftModule, window: int,
                          minimal: bool = False) -> Resolution:
    """F^{-d} -> ... -> F^0 ->> M with free terms (the final term may be a
    certified-projective kernel), exact in degrees > -window."""
    if window < 0:
        raise ResolutionError("window must be nonnegative")
    target = single_complex(m)
    if m.dim == 0:
        p = Complex(m.algebra, {}, {}, pair=m.pair, check=False)
        return Resolution(target, p, ChainMap(p, target, {}, check=False),
                          window, finite=True)
    f0, pi0, r0 = free_cover(m, minimal)
    k0, incl0 = kernel_module(f0, pi0)
    if k0.dim == 0 or split_section(m, pi0, r0) is not None:
        # M itself is projective: the length-0 resolution.
        p = single_complex(m)
        aug = identity_chain_map(p)
        return Resolution(target, p, ChainMap(p, target, dict(aug.comps),
                                              check=False),
                          window, finite=True)
    terms = [f0]
    maps: List[Matrix] = []
    syzygies = [k0]
    kmod, incl = k0, incl0
    finite = False
    while len(terms) <= window:
        fc, pic, rc = free_cover(kmod, minimal)
        kn, incln = kernel_module(fc, pic)
        if kn.dim == 0:
            terms.append(fc)
            maps.append(incl * pic)
            finite = True
            break
        if split_section(kmod, pic, rc) is not None:
            terms.append(kmod)
            maps.append(incl)
            finite = True
            break
        terms.append(fc)
        maps.append(incl * pic)
        syzygies.append(kn)
        kmod, incl = kn, incln
    mods = {-i: t for i, t in enumerate(terms)}
    diffs = {-i: maps[i - 1] for i in range(1, len(terms))}
    p = Complex(m.algebra, mods, diffs, pair=m.pair, check=False)
    aug = ChainMap(p, target, {0: pi0}, check=False)
    return Resolution(target, p, aug, window, finite=finite,
                      valid_above=-window, syzygies=syzygies)


# ---------------------------------------------------------------------------
# Complex resolutions


def _all_terms_projective(x: Complex, minimal: Optional[bool] = None) -> bool:
    return all(is_projective(x.module(d), minimal) for d in x.degrees())


def lift_along(eps: ChainMap, f: ChainMap
               ) -> Optional[Tuple[ChainMap, Dict[int, Matrix]]]:
    """Given eps : Z -> Y and f : P -> Y with P a complex of projectives,
    find a chain map g : P -> Z and a homotopy h with
    eps g - f = d_Y h + h d_P.  Returns (g, h) or None."""
    p = plain_complex(f.source)
    z = plain_complex(eps.source)
    y = plain_complex(eps.target)
    fld = p.algebra.field
    hz = HomComplex(p, z)
    hy = HomComplex(p, y)
    nu = hz._dims.get(0, 0)
    nv = hy._dims.get(-1, 0)
    dz0 = hz.complex.diff(0)
    dym1 = hy.complex.diff(-1)
    fvec = hy.coords_of(0, dict(f.comps))
    psi_cols = []
    for j, basis in hz.components.get(0, []):
        for b in basis:
            psi_cols.append(hy.coords_of(0, {j: eps.comp(j) * b}))
    ny0 = hy._dims.get(0, 0)
    if psi_cols:
        psi = psi_cols[0]
        for c in psi_cols[1:]:
            psi = psi.hstack(c)
    else:
        psi = Matrix.zeros(fld, ny0, 0)
    top = dz0.hstack(Matrix.zeros(fld, dz0.nrows, nv))
    bottom = psi.hstack(dym1.scale(fld.neg(fld.one)))
    sysm = top.vstack(bottom)
    rhs = Matrix.zeros(fld, dz0.nrows, 1).vstack(fvec)
    sol = sysm.solve(rhs)
    if sol is None:
        return None
    u = Matrix(fld, sol.rows[:nu], 1)
    v = Matrix(fld, sol.rows[nu:], 1)
    g = ChainMap(f.source, eps.source, hz.maps_of(0, u), check=False)
    h = hy.maps_of(-1, v)
    return g, h


def _concentrated_degree(x: Complex) -> Optional[int]:
    dims = cohomology_dims(x)
    if len(dims) == 1:
        return next(iter(dims))
    return None


def k_projective_resolution(x: Complex, window: int,
                            minimal: Optional[bool] = None) -> Resolution:
    """Bounded-above complex of projectives quasi-isomorphic to X within the
    window (degrees > hi(X) - window)."""
    if minimal is None:
        minimal = x.algebra.field.char == 0
    if x.is_zero_complex():
        p = Complex(x.algebra, {}, {}, pair=x.pair, check=False)
        return Resolution(x, p, ChainMap(p, x, {}, check=False),
                          window, finite=True)
    if _all_terms_projective(x, minimal):
        return Resolution(x, x, identity_chain_map(x), window, finite=True)
    conc = _concentrated_degree(x)
    if conc is not None:
        h = Cohomology(x, conc)
        res = projective_resolution(h.module, window, minimal)
        p = res.complex.shift(-conc)
        aug_top = h.section * res.augmentation.comp(0)
        aug = ChainMap(p, x, {conc: aug_top}, check=False)
        return Resolution(x, p, aug, window, finite=res.finite,
                          valid_above=None if res.finite else conc - window)
    if cohomology_dims(x) == {}:
        p = Complex(x.algebra, {}, {}, pair=x.pair, check=False)
        return Resolution(x, p, ChainMap(p, x, {}, check=False),
                          window, finite=True)
    # General case: X = cone(alpha : X^{lo}[-lo-1] -> (truncation above lo)).
    lo, hi = x.lo, x.hi
    bottom = single_complex(x.module(lo), lo + 1, pair=x.pair)
    upper = Complex(x.algebra,
                    {d: x.module(d) for d in range(lo + 1, hi + 1)},
                    {d: x.diff(d) for d in range(lo + 1, hi)},
                    pair=x.pair, check=False)
    alpha = ChainMap(bottom, upper, {lo + 1: x.diff(lo)}, check=False)
    extra = 0
    while True:
        res_l_mod = projective_resolution(x.module(lo),
                                          window + (hi - lo) + extra, minimal)
        res_m = k_projective_resolution(upper, window + extra, minimal)
        p_l = res_l_mod.complex.shift(-(lo + 1))
        eps_l = res_l_mod.augmentation.shift(-(lo + 1))
        lifted = lift_along(res_m.augmentation,
                            alpha.compose(eps_l))
        if lifted is not None:
            break
        extra += 4
        if extra > 12:
            raise ResolutionError(
                "could not lift through the truncated resolution; "
                "window too small")
    g, h = lifted
    p, _, _ = cone(g)
    fld = x.algebra.field
    aug_comps = {}
    for d in p.degrees():
        nt, nb = p_l.dim(d + 1), res_m.complex.dim(d)
        xt, xb = bottom.dim(d + 1), upper.dim(d)
        if xt + xb == 0:
            continue
        blocks = [
            [eps_l.comp(d + 1), Matrix.zeros(fld, xt, nb)],
            [h.get(d + 1, Matrix.zeros(fld, xb, nt)),
             res_m.augmentation.comp(d)],
        ]
        aug_comps[d] = Matrix.from_blocks(fld, blocks)
    aug = ChainMap(p, x, aug_comps, check=False)
    finite = res_l_mod.finite and res_m.finite
    valid = None
    if not finite:
        vl = res_l_mod.valid_above
        vl = (vl + lo + 1) if vl is not None else None
        vm = res_m.valid_above
        cands = []
        if vm is not None:
            cands.append(vm)
        if vl is not None:
            cands.append(vl - 1)
        valid = max(cands) if cands else None
        if valid is None:
            finite = True
    return Resolution(x, p, aug, window, finite=finite, valid_above=valid)


# ---------------------------------------------------------------------------
# Injective resolutions by duality


def _module_over(algebra: Algebra, m: LeftModule,
                 pair=None) -> LeftModule:
    """Reinterpret a module over an algebra with identical structure
    constants (e.g. (A^op)^op as A)."""
    if algebra.dim != m.algebra.dim:
        raise ModuleError("algebra dimension mismatch")
    return LeftModule(algebra, m.dim, m.action, pair=pair, check=False)


class InjectiveResolution:
    """M >-> I^0 -> ... -> I^d, obtained by dualizing a projective
    resolution of the dual module over the opposite algebra."""

    def __init__(self, target: LeftModule, complex_: Complex,
                 coaugmentation: ChainMap, window: int, finite: bool):
        self.target = target
        self.complex = complex_
        self.coaugmentation = coaugmentation
        self.window = window
        self.finite = finite

    def length(self) -> int:
        return self.complex.hi if not self.complex.is_zero_complex() else 0

    def __repr__(self):
        tag = "finite" if self.finite else f"truncated at {self.window}"
        return f"InjectiveResolution({self.complex.dims()}, {tag})"


def injective_resolution(m: LeftModule, window: int,
                         minimal: Optional[bool] = None) -> InjectiveResolution:
    a = m.algebra
    if minimal is None:
        minimal = a.field.char == 0
    md = dual_module(m)
    res = projective_resolution(md, window, minimal)
    mods = {}
    diffs = {}
    for d in res.complex.degrees():
        mods[-d] = _module_over(a, dual_module(res.complex.module(d)))
    for d in res.complex.degrees():
        mat = res.complex.diffs.get(d)
        if mat is not None:
            diffs[-d - 1] = mat.transpose()
    icx = Complex(a, mods, diffs, check=False)
    coaug = ChainMap(single_complex(
        LeftModule(a, m.dim, m.action, check=False)), icx,
        {0: res.augmentation.comp(0).transpose()}, check=False)
    return InjectiveResolution(m, icx, coaug, window, res.finite)


def projective_dimension_within(m: LeftModule, window: int,
                                minimal: Optional[bool] = None
                                ) -> Optional[int]:
    """Projective dimension if certified within the window, else None."""
    if minimal is None:
        minimal = m.algebra.field.char == 0
    res = projective_resolution(m, window, minimal)
    if not res.finite:
        return None
    if res.complex.is_zero_complex():
        return 0
    return -res.complex.lo


def injective_dimension_within(m: LeftModule, window: int,
                               minimal: Optional[bool] = None
                               ) -> Optional[int]:
    """Injective dimension if certified within the window, else None
    (never a false 'finite')."""
    if minimal is None:
        minimal = m.algebra.field.char == 0
    return projective_dimension_within(dual_module(m), window, minimal)
