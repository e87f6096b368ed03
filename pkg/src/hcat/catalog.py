"""Builtin catalog of example algebras and standard module references.

Algebra names:
    ``k``           the ground field as a 1-dimensional algebra
    ``dualnumbers`` K[x]/(x^2)
    ``triangular2`` upper-triangular 2x2 matrices (basis e11, e12, e22)
    ``mat2``        full 2x2 matrix algebra (basis e11, e12, e21, e22)
    ``kxn:<n>``     the truncated polynomial algebra K[x]/(x^n)

Module references (relative to a catalog algebra A):
    ``A`` / ``regular``  the regular left module
    ``Ae``               the regular bimodule (A as an A-bimodule)
    ``R``                the dual of the regular bimodule (an A-bimodule)
    ``simple``           the first simple module
    ``simple:<i>``       the i-th simple module (0-based)
    ``free:<r>``         the free left module of rank r
"""

from __future__ import annotations

from typing import List

from .fields import QQ
from .algebra import (
    Algebra,
    LeftModule,
    dual_bimodule,
    free_module,
    regular_bimodule,
    regular_module,
    simple_modules,
    trivial_algebra,
)


class CatalogError(ValueError):
    pass


def catalog_names() -> List[str]:
    return ["k", "dualnumbers", "triangular2", "mat2", "kxn:<n>"]


def _kxn(field, n: int) -> Algebra:
    """K[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    if n < 1:
        raise CatalogError("kxn requires n >= 1")
    table = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                table[(i, j)] = {i + j: field.one}
    unit = [field.one] + [field.zero] * (n - 1)
    return Algebra(field, n, table, unit)


def _matrix_units(field, pairs) -> Algebra:
    """Algebra spanned by matrix units e_{ab} for (a, b) in ``pairs``."""
    idx = {p: i for i, p in enumerate(pairs)}
    table = {}
    for i, (a, b) in enumerate(pairs):
        for j, (c, d) in enumerate(pairs):
            if b == c:
                table[(i, j)] = {idx[(a, d)]: field.one}
    unit = [field.zero] * len(pairs)
    for a in {p[0] for p in pairs}:
        unit[idx[(a, a)]] = field.one
    return Algebra(field, len(pairs), table, unit)


def get_algebra(name: str, field=QQ) -> Algebra:
    name = name.strip()
    if name == "k":
        return trivial_algebra(field)
    if name == "dualnumbers":
        return _kxn(field, 2)
    if name == "triangular2":
        return _matrix_units(field, [(0, 0), (0, 1), (1, 1)])
    if name == "mat2":
        return _matrix_units(field, [(0, 0), (0, 1), (1, 0), (1, 1)])
    if name.startswith("kxn:"):
        try:
            n = int(name[4:])
        except ValueError:
            raise CatalogError(f"bad kxn index in {name!r}")
        return _kxn(field, n)
    raise CatalogError(f"unknown catalog algebra {name!r}")


def algebra_labels(name: str) -> List[str]:
    """Human-readable basis labels for catalog algebras."""
    if name == "k":
        return ["1"]
    if name == "dualnumbers":
        return ["1", "x"]
    if name == "triangular2":
        return ["e11", "e12", "e22"]
    if name == "mat2":
        return ["e11", "e12", "e21", "e22"]
    if name.startswith("kxn:"):
        n = int(name[4:])
        return ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    raise CatalogError(f"unknown catalog algebra {name!r}")


def get_module(algebra: Algebra, ref: str) -> LeftModule:
    ref = ref.strip()
    if ref in ("A", "regular"):
        return regular_module(algebra)
    if ref == "Ae":
        return regular_bimodule(algebra)
    if ref == "R":
        return dual_bimodule(regular_bimodule(algebra))
    if ref == "simple" or ref.startswith("simple:"):
        i = 0 if ref == "simple" else int(ref.split(":", 1)[1])
        simples = simple_modules(algebra)
        if not 0 <= i < len(simples):
            raise CatalogError(
                f"simple index {i} out of range (algebra has "
                f"{len(simples)} simples)")
        return simples[i]
    if ref.startswith("free:"):
        try:
            r = int(ref.split(":", 1)[1])
        except ValueError:
            raise CatalogError(f"bad free rank in {ref!r}")
        return free_module(algebra, r)
    raise CatalogError(f"unknown module reference {ref!r}")
