"""Algebras, modules, bimodules: validation, hom spaces, structure."""

import pytest

from hcat.fields import QQ, PrimeField
from hcat.linalg import Matrix
from hcat.algebra import (
    Algebra,
    AlgebraError,
    LeftModule,
    ModuleError,
    ModuleHom,
    center,
    direct_sum,
    dual_bimodule,
    dual_module,
    free_module,
    hom_space,
    hom_space_dim,
    is_commutative,
    is_isomorphic,
    is_semisimple,
    module_as_bimodule,
    quotient_module,
    radical_basis,
    regular_bimodule,
    regular_module,
    simple_modules,
    submodule_generated,
    symmetric_bimodule,
    transport_module,
    trivial_algebra,
)
from hcat.catalog import get_algebra, get_module


T = get_algebra("triangular2")
M2 = get_algebra("mat2")
D = get_algebra("dualnumbers")
K = get_algebra("k")


def test_catalog_algebras_validate():
    for name in ("k", "dualnumbers", "triangular2", "mat2", "kxn:4"):
        a = get_algebra(name)
        a.validate()


def test_nonassociative_rejected_with_triple():
    # e0*e0 = e1, e1*e0 = e0 but e0*e1 = 0 breaks associativity.
    table = {(0, 0): {1: QQ.one}, (1, 0): {0: QQ.one}}
    with pytest.raises(AlgebraError) as exc:
        Algebra(QQ, 2, table, [QQ.one, QQ.zero])
    msg = str(exc.value)
    assert any(ch.isdigit() for ch in msg)  # names the failing triple


def test_bad_unit_rejected():
    table = {(0, 0): {0: QQ.one}}
    with pytest.raises(AlgebraError):
        Algebra(QQ, 1, table, [QQ.coerce(2)])


def test_opposite_and_tensor_dims():
    assert T.opposite().dim == T.dim
    e = T.enveloping()
    assert e.dim == T.dim * T.dim
    e.validate()


def test_commutativity():
    assert is_commutative(D)
    assert is_commutative(K)
    assert not is_commutative(T)
    assert not is_commutative(M2)


def test_center_dims():
    # [DERIVED] classical centers: K[x]/(x^2) is commutative (dim 2);
    # upper-triangular and full 2x2 matrices have 1-dimensional center.
    assert len(center(D)) == 2
    assert len(center(T)) == 1
    assert len(center(M2)) == 1


def test_radical_dims():
    # [DERIVED] rad(mat2) = 0, rad(triangular2) = span(e12),
    # rad(K[x]/(x^2)) = span(x).
    assert radical_basis(M2).ncols == 0
    assert radical_basis(T).ncols == 1
    assert radical_basis(D).ncols == 1
    assert is_semisimple(M2)
    assert not is_semisimple(T)


def test_simple_modules():
    st = simple_modules(T)
    assert sorted(m.dim for m in st) == [1, 1]
    assert is_isomorphic(st[0], st[1]) is None
    sm = simple_modules(M2)
    assert [m.dim for m in sm] == [2]
    sd = simple_modules(D)
    assert [m.dim for m in sd] == [1]


def test_module_validation():
    # x acting non-nilpotently over K[x]/(x^2) violates x^2 = 0.
    with pytest.raises((ModuleError, AlgebraError, AssertionError,
                        ValueError)):
        LeftModule(D, 1, [Matrix.identity(QQ, 1), Matrix.identity(QQ, 1)])


def test_hom_space_dims_triangular():
    # [DERIVED] projectives P1 = Ae11 (dim 2), P2 = Ae22 (dim 1);
    # Hom(P_i, M) = e_i M gives the dimension table below.
    reg = regular_module(T)
    s = simple_modules(T)
    # End(A) has dim = dim A for any algebra (right multiplications).
    assert hom_space_dim(reg, reg) == 3
    assert hom_space_dim(s[0], s[1]) == 0
    assert hom_space_dim(s[0], s[0]) == 1


def test_hom_space_basis_intertwines():
    reg = regular_module(T)
    for h in hom_space(reg, reg):
        for i in range(T.dim):
            assert (h.matrix * reg.action[i]
                    - reg.action[i] * h.matrix).is_zero()


def test_dual_and_double_dual():
    s = simple_modules(T)[0]
    d = dual_module(s)
    assert d.algebra.dim == T.dim
    dd = dual_module(d)
    assert dd.dim == s.dim
    assert is_isomorphic(dd, s) is not None


def test_dual_bimodule_sides():
    r = dual_bimodule(regular_bimodule(T))
    assert r.pair is not None
    assert r.dim == T.dim
    left = r.restrict_left()
    right = r.restrict_right()
    assert left.algebra.dim == T.dim and right.algebra.dim == T.dim


def test_regular_bimodule_actions_commute():
    rb = regular_bimodule(T)
    # left and right marginal actions commute.
    lm = rb.restrict_left()
    rm = rb.restrict_right()
    for x in lm.action:
        for y in rm.action:
            assert (x * y - y * x).is_zero()


def test_direct_sum_and_quotient():
    s = simple_modules(T)
    both = direct_sum(s)
    assert both.dim == 2
    reg = regular_module(T)
    gen = Matrix(QQ, [[1], [0], [0]], 1)
    sub, incl = submodule_generated(reg, gen)
    quo, proj = quotient_module(reg, incl)
    assert sub.dim + quo.dim == reg.dim
    # projection is a module map onto the quotient
    assert proj.matrix.rank() == quo.dim


def test_is_isomorphic_negative_by_dim():
    s = simple_modules(T)[0]
    assert is_isomorphic(s, free_module(T, 1)) is None


def test_symmetric_bimodule_requires_commutative():
    with pytest.raises(ModuleError):
        symmetric_bimodule(regular_module(T))
    sym = symmetric_bimodule(get_module(D, "simple"))
    assert sym.pair is not None


def test_transport_module_checks():
    # Valid identification: identity on the same algebra.
    reg = regular_module(T)
    phi = Matrix.identity(QQ, 3)
    tm = transport_module(T, phi, reg)
    assert is_isomorphic(tm, reg) is not None
    # A non-multiplicative map is rejected.
    bad = Matrix(QQ, [[1, 0, 0], [0, 0, 1], [0, 1, 0]], 3)
    with pytest.raises(AlgebraError):
        transport_module(T, bad, reg)


def test_prime_field_module_basics():
    F5 = PrimeField(5)
    d5 = get_algebra("dualnumbers", F5)
    reg = regular_module(d5)
    assert hom_space_dim(reg, reg) == 2
