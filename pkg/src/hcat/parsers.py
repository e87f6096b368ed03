"""Plain-text input formats and their parsers/emitters.

All formats are line-oriented UTF-8; ``#`` starts a comment, blank lines are
ignored.  Scalar literals are rational strings like ``-3/7`` over ``q`` and
integers over ``f<p>``.

``.alg`` — structure constants::

    field q            # or f<p>
    dim 3
    label 0 e11        # optional, one per basis index
    unit 1 0 1
    c 0 1 1 1          # e_0 * e_1 contains 1 * e_1; omitted triples are zero

``.quiver`` — quiver with relations (statements may also be separated by
semicolons)::

    vertex v1 v2
    arrow a: v1 -> v2
    relations: a*a, b*a - 2*c
    cap 10

A word ``a*b`` is the path that applies ``b`` first, then ``a`` (so it is
composable when the target of ``b`` equals the source of ``a``).  Each
relation must combine paths of equal length between the same endpoints.  The
algebra is the path algebra modulo the two-sided ideal of the relations,
computed length by length; if the quotient dimension would exceed ``cap``
the parse fails.

``.mod`` — a left module over an ambient algebra::

    dim 2
    action 0           # matrix of the action of basis vector e_0,
    1 0                # given as dim rows of dim entries
    0 1
    action 1
    0 0
    1 0

``.cx`` — a bounded complex; each ``degree`` block contains a module block
and an optional ``diff`` block holding the matrix of d into the next
degree (rows = dim of next degree)::

    degree 0
    dim 1
    action 0
    1
    diff
    1
    0
    degree 1
    dim 2
    action 0
    1 0
    0 1
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .fields import QQ, field_from_name, field_name
from .linalg import Matrix, quotient_maps
from .algebra import Algebra, LeftModule
from .complexes import Complex


class ParseError(ValueError):
    pass


class CapExceededError(ParseError):
    pass


def _strip(text: str) -> List[Tuple[int, str]]:
    """(line number, content) pairs with comments and blanks removed."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def _scalar(field, token: str, lineno: int):
    try:
        return field.parse(token)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"line {lineno}: bad scalar {token!r}: {e}")


# ---------------------------------------------------------------------------
# Structure constants (.alg)


@dataclass
class AlgebraSpec:
    field: object
    dim: int
    unit: List
    constants: Dict[Tuple[int, int, int], object]
    labels: Optional[List[str]] = None

    def build(self) -> Algebra:
        table: Dict[Tuple[int, int], Dict[int, object]] = {}
        for (i, j, k), v in self.constants.items():
            table.setdefault((i, j), {})[k] = v
        return Algebra(self.field, self.dim, table, self.unit,
                       labels=self.labels)


def parse_structure_constants(text: str) -> AlgebraSpec:
    field = None
    dim = None
    unit = None
    constants: Dict[Tuple[int, int, int], object] = {}
    first_line: Dict[Tuple[int, int, int], int] = {}
    labels: Dict[int, str] = {}
    for lineno, line in _strip(text):
        parts = line.split()
        kw = parts[0]
        if kw == "field":
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: field takes one argument")
            try:
                field = field_from_name(parts[1])
            except Exception as e:
                raise ParseError(f"line {lineno}: {e}")
        elif kw == "dim":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"line {lineno}: dim takes one integer")
            dim = int(parts[1])
        elif kw == "label":
            if len(parts) != 3 or not parts[1].isdigit():
                raise ParseError(f"line {lineno}: label takes index and name")
            labels[int(parts[1])] = parts[2]
        elif kw == "unit":
            if field is None or dim is None:
                raise ParseError(
                    f"line {lineno}: unit before field/dim declarations")
            if len(parts) != dim + 1:
                raise ParseError(
                    f"line {lineno}: unit needs {dim} coordinates")
            unit = [_scalar(field, t, lineno) for t in parts[1:]]
        elif kw == "c":
            if field is None or dim is None:
                raise ParseError(
                    f"line {lineno}: constants before field/dim declarations")
            if len(parts) != 5:
                raise ParseError(f"line {lineno}: c takes i j k value")
            try:
                i, j, k = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"line {lineno}: bad index in {line!r}")
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise ParseError(
                        f"line {lineno}: index {idx} out of range 0..{dim-1}")
            key = (i, j, k)
            if key in constants:
                raise ParseError(
                    f"line {lineno}: duplicate constant {key} (first at line "
                    f"{first_line[key]})")
            constants[key] = _scalar(field, parts[4], lineno)
            first_line[key] = lineno
        else:
            raise ParseError(f"line {lineno}: unknown keyword {kw!r}")
    if field is None:
        raise ParseError("missing field declaration")
    if dim is None:
        raise ParseError("missing dim declaration")
    if unit is None:
        raise ParseError("missing unit declaration")
    label_list = None
    if labels:
        label_list = [labels.get(i, f"e{i}") for i in range(dim)]
    return AlgebraSpec(field, dim, unit, constants, label_list)


def emit_structure_constants(a: Algebra) -> str:
    lines = [f"field {field_name(a.field)}", f"dim {a.dim}"]
    if a.labels:
        for i, lab in enumerate(a.labels):
            lines.append(f"label {i} {lab}")
    lines.append("unit " + " ".join(a.field.format(u) for u in a.unit))
    for (i, j) in sorted(a.table):
        for k in sorted(a.table[(i, j)]):
            v = a.table[(i, j)][k]
            if v != a.field.zero:
                lines.append(f"c {i} {j} {k} {a.field.format(v)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Quiver with relations (.quiver)


@dataclass
class _Quiver:
    vertices: List[str] = dc_field(default_factory=list)
    arrows: Dict[str, Tuple[str, str]] = dc_field(default_factory=dict)
    relations: List[Tuple[int, str]] = dc_field(default_factory=list)
    cap: int = 200


def _parse_quiver_statements(text: str) -> _Quiver:
    qv = _Quiver()
    seen_cap = False
    for lineno, line in _strip(text):
        for stmt in filter(None, (s.strip() for s in line.split(";"))):
            parts = stmt.split(None, 1)
            kw = parts[0]
            rest = parts[1] if len(parts) > 1 else ""
            if kw == "vertex":
                names = rest.split()
                if not names:
                    raise ParseError(f"line {lineno}: vertex needs names")
                for n in names:
                    if n in qv.vertices:
                        raise ParseError(
                            f"line {lineno}: duplicate vertex {n!r}")
                    qv.vertices.append(n)
            elif kw == "arrow":
                # arrow a: v1 -> v2
                if ":" not in rest:
                    raise ParseError(
                        f"line {lineno}: arrow syntax is 'arrow a: v1 -> v2'")
                name, spec = (s.strip() for s in rest.split(":", 1))
                if "->" not in spec:
                    raise ParseError(
                        f"line {lineno}: arrow syntax is 'arrow a: v1 -> v2'")
                src, tgt = (s.strip() for s in spec.split("->", 1))
                if src not in qv.vertices:
                    raise ParseError(f"line {lineno}: unknown vertex {src!r}")
                if tgt not in qv.vertices:
                    raise ParseError(f"line {lineno}: unknown vertex {tgt!r}")
                if name in qv.arrows or name in qv.vertices:
                    raise ParseError(
                        f"line {lineno}: duplicate name {name!r}")
                qv.arrows[name] = (src, tgt)
            elif kw == "relations:" or kw == "relations":
                rest = rest if kw == "relations:" else rest.lstrip(":").strip()
                for rel in filter(None, (r.strip() for r in rest.split(","))):
                    qv.relations.append((lineno, rel))
            elif kw == "cap":
                if not rest.strip().isdigit():
                    raise ParseError(f"line {lineno}: cap takes an integer")
                qv.cap = int(rest.strip())
                seen_cap = True
            else:
                raise ParseError(f"line {lineno}: unknown keyword {kw!r}")
    if not qv.vertices:
        raise ParseError("quiver has no vertices")
    if not seen_cap:
        qv.cap = 200
    return qv


def _parse_relation(qv: _Quiver, lineno: int, rel: str, field):
    """A relation as a list of (coefficient, arrow-name word).  Validates
    composability and homogeneity (all words the same length and the same
    endpoints)."""
    terms: List[Tuple[object, Tuple[str, ...]]] = []
    # Split into signed terms.
    rel = rel.replace("-", "+-")
    for raw in filter(None, (t.strip() for t in rel.split("+"))):
        sign = field.one
        if raw.startswith("-"):
            sign = field.neg(sign)
            raw = raw[1:].strip()
        factors = [f.strip() for f in raw.split("*")]
        coeff = sign
        word: List[str] = []
        for f in factors:
            if f in qv.arrows:
                word.append(f)
            else:
                coeff = field.mul(coeff, _scalar(field, f, lineno))
        if not word:
            raise ParseError(
                f"line {lineno}: relation term {raw!r} has no arrows")
        # Composability: word applies right-to-left.
        for a, b in zip(word, word[1:]):
            if qv.arrows[a][0] != qv.arrows[b][1]:
                raise ParseError(
                    f"line {lineno}: {a!r} after {b!r} is not composable "
                    f"(target of {b!r} is {qv.arrows[b][1]!r}, source of "
                    f"{a!r} is {qv.arrows[a][0]!r})")
        terms.append((coeff, tuple(word)))
    lengths = {len(w) for _, w in terms}
    if len(lengths) != 1:
        raise ParseError(
            f"line {lineno}: relation mixes path lengths {sorted(lengths)}; "
            "relations must be homogeneous in path length")
    ends = {(qv.arrows[w[-1]][0], qv.arrows[w[0]][1]) for _, w in terms}
    if len(ends) != 1:
        raise ParseError(
            f"line {lineno}: relation mixes paths with different endpoints")
    return terms


def parse_quiver(text: str, field=QQ) -> Algebra:
    qv = _parse_quiver_statements(text)
    relations = [_parse_relation(qv, lineno, rel, field)
                 for lineno, rel in qv.relations]

    # Paths of length l as tuples of arrow names (right-to-left application);
    # the trivial path of a vertex is the 1-tuple of its name.
    src = {(v,): v for v in qv.vertices}
    tgt = {(v,): v for v in qv.vertices}

    level = [(v,) for v in qv.vertices]
    length = 0
    # Quotient data per length: (basis reps as path tuples via section,
    # projection matrix, path index map).
    proj_by_len: Dict[int, Matrix] = {}
    section_by_len: Dict[int, Matrix] = {}
    index_by_len: Dict[int, Dict[Tuple[str, ...], int]] = {}
    paths_by_len: Dict[int, List[Tuple[str, ...]]] = {}
    quot_dim: Dict[int, int] = {}
    total = 0
    zero, one = field.zero, field.one
    rel_by_len: Dict[int, List] = {}
    for terms in relations:
        rel_by_len.setdefault(len(terms[0][1]), []).append(terms)

    full_from: Optional[int] = None
    while True:
        paths_by_len[length] = level
        index_by_len[length] = {p: i for i, p in enumerate(level)}
        n = len(level)
        if n == 0:
            full_from = length
            break
        # Ideal component at this length: u * r * v over all splittings.
        cols: List[List] = []
        for m, rels in rel_by_len.items():
            if m > length:
                continue
            for s in range(0, length - m + 1):
                t = length - m - s
                for terms in rels:
                    w0 = terms[0][1]
                    rel_src = qv.arrows[w0[-1]][0]
                    rel_tgt = qv.arrows[w0[0]][1]
                    for u in paths_by_len.get(s, []):
                        if src[u] != rel_tgt:
                            continue
                        uw = () if (len(u) == 1 and u[0] in qv.vertices) \
                            else u
                        for v in paths_by_len.get(t, []):
                            if tgt[v] != rel_src:
                                continue
                            vw = () if (len(v) == 1 and v[0] in qv.vertices) \
                                else v
                            vec = [zero] * n
                            for coeff, w in terms:
                                word = uw + w + vw
                                idx = index_by_len[length][word]
                                vec[idx] = field.add(vec[idx], coeff)
                            if any(x != zero for x in vec):
                                cols.append(vec)
        if cols:
            sub = Matrix(field, [[c[i] for c in cols] for i in range(n)],
                         len(cols))
        else:
            sub = Matrix(field, [[] for _ in range(n)], 0)
        proj, section = quotient_maps(n, sub)
        q = proj.nrows
        proj_by_len[length] = proj
        section_by_len[length] = section
        quot_dim[length] = q
        total += q
        if total > qv.cap:
            raise CapExceededError(
                f"quiver algebra dimension exceeds cap {qv.cap} at path "
                f"length {length}")
        if q == 0:
            full_from = length
            break
        # Extend to the next length.
        nxt = []
        for p in level:
            base = () if (len(p) == 1 and p[0] in qv.vertices) else p
            for a, (s_, t_) in qv.arrows.items():
                if s_ == tgt[p]:
                    np = (a,) + base
                    nxt.append(np)
                    src[np] = src[p]
                    tgt[np] = t_
        level = nxt
        length += 1

    # Global basis: quotient representatives per length.
    basis: List[Tuple[int, int]] = []          # (length, quotient index)
    offset: Dict[int, int] = {}
    for l in sorted(quot_dim):
        if quot_dim[l] == 0:
            continue
        offset[l] = len(basis)
        basis.extend((l, i) for i in range(quot_dim[l]))
    dim = len(basis)

    def rep_vector(l: int, i: int) -> List:
        col = section_by_len[l].column(i)
        return [col.rows[r][0] for r in range(col.nrows)]

    def word_of(p: Tuple[str, ...]) -> Tuple[str, ...]:
        return () if (len(p) == 1 and p[0] in qv.vertices) else p

    table: Dict[Tuple[int, int], Dict[int, object]] = {}
    for bi, (l1, i1) in enumerate(basis):
        u = rep_vector(l1, i1)
        for bj, (l2, i2) in enumerate(basis):
            v = rep_vector(l2, i2)
            l = l1 + l2
            if full_from is not None and l >= full_from:
                continue
            if l not in index_by_len:
                continue
            n = len(paths_by_len[l])
            prod = [zero] * n
            nonzero = False
            for pi, p in enumerate(paths_by_len[l1]):
                cu = u[pi]
                if cu == zero:
                    continue
                for qi, q_ in enumerate(paths_by_len[l2]):
                    cv = v[qi]
                    if cv == zero:
                        continue
                    if src[p] != tgt[q_]:
                        continue
                    word = word_of(p) + word_of(q_)
                    if not word:
                        word = q_  # both trivial at the same vertex
                    idx = index_by_len[l].get(word)
                    if idx is None:
                        continue
                    prod[idx] = field.add(prod[idx], field.mul(cu, cv))
                    nonzero = True
            if not nonzero:
                continue
            coords = proj_by_len[l] * Matrix(field, [[x] for x in prod], 1)
            comps = {}
            for r in range(coords.nrows):
                val = coords.rows[r][0]
                if val != zero:
                    comps[offset[l] + r] = val
            if comps:
                table[(bi, bj)] = comps

    unit = [zero] * dim
    if 0 in proj_by_len:
        n0 = len(paths_by_len[0])
        ones = Matrix(field, [[one] for _ in range(n0)], 1)
        coords = proj_by_len[0] * ones
        for r in range(coords.nrows):
            unit[offset[0] + r] = coords.rows[r][0]

    labels = []
    for (l, i) in basis:
        col = rep_vector(l, i)
        parts = []
        for pi, c in enumerate(col):
            if c != zero:
                p = paths_by_len[l][pi]
                parts.append("*".join(p))
        labels.append("+".join(parts) if parts else "0")
    return Algebra(field, dim, table, unit, labels=labels)


# ---------------------------------------------------------------------------
# Modules (.mod) and complexes (.cx)


def _parse_matrix_rows(lines, pos, nrows, ncols, field):
    rows = []
    for _ in range(nrows):
        if pos >= len(lines):
            raise ParseError("unexpected end of input inside a matrix block")
        lineno, line = lines[pos]
        toks = line.split()
        if len(toks) != ncols:
            raise ParseError(
                f"line {lineno}: expected {ncols} entries, got {len(toks)}")
        rows.append([_scalar(field, t, lineno) for t in toks])
        pos += 1
    return Matrix(field, rows, ncols), pos


def _parse_module_block(lines, pos, algebra) -> Tuple[LeftModule, int]:
    field = algebra.field
    if pos >= len(lines) or lines[pos][1].split()[0] != "dim":
        lineno = lines[pos][0] if pos < len(lines) else "<eof>"
        raise ParseError(f"line {lineno}: expected 'dim <n>'")
    lineno, line = lines[pos]
    parts = line.split()
    if len(parts) != 2 or not parts[1].isdigit():
        raise ParseError(f"line {lineno}: dim takes one integer")
    mdim = int(parts[1])
    pos += 1
    action: List[Optional[Matrix]] = [None] * algebra.dim
    while pos < len(lines) and lines[pos][1].split()[0] == "action":
        lineno, line = lines[pos]
        parts = line.split()
        if len(parts) != 2 or not parts[1].isdigit():
            raise ParseError(f"line {lineno}: action takes one index")
        i = int(parts[1])
        if not 0 <= i < algebra.dim:
            raise ParseError(
                f"line {lineno}: action index {i} out of range "
                f"0..{algebra.dim - 1}")
        if action[i] is not None:
            raise ParseError(f"line {lineno}: duplicate action block for {i}")
        pos += 1
        action[i], pos = _parse_matrix_rows(lines, pos, mdim, mdim, field)
    missing = [i for i, m in enumerate(action) if m is None]
    if missing:
        raise ParseError(f"missing action blocks for indices {missing}")
    return LeftModule(algebra, mdim, action), pos


def parse_module(text: str, algebra: Algebra) -> LeftModule:
    lines = _strip(text)
    mod, pos = _parse_module_block(lines, 0, algebra)
    if pos != len(lines):
        raise ParseError(
            f"line {lines[pos][0]}: trailing content after module block")
    return mod


def emit_module(m: LeftModule) -> str:
    f = m.algebra.field
    lines = [f"dim {m.dim}"]
    for i, mat in enumerate(m.action):
        lines.append(f"action {i}")
        for row in mat.rows:
            lines.append(" ".join(f.format(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_complex(text: str, algebra: Algebra) -> Complex:
    lines = _strip(text)
    pos = 0
    modules: Dict[int, LeftModule] = {}
    pending_diff: Dict[int, Tuple[int, int]] = {}  # degree -> (pos, lineno)
    raw_diffs: Dict[int, Matrix] = {}
    order: List[int] = []
    while pos < len(lines):
        lineno, line = lines[pos]
        parts = line.split()
        if parts[0] != "degree":
            raise ParseError(f"line {lineno}: expected 'degree <d>'")
        try:
            d = int(parts[1])
        except (IndexError, ValueError):
            raise ParseError(f"line {lineno}: degree takes one integer")
        if d in modules:
            raise ParseError(f"line {lineno}: duplicate degree {d}")
        pos += 1
        modules[d], pos = _parse_module_block(lines, pos, algebra)
        order.append(d)
        if pos < len(lines) and lines[pos][1] == "diff":
            dl = lines[pos][0]
            pos += 1
            pending_diff[d] = (pos, dl)
            # Rows counted once the next degree's dimension is known; store
            # position and parse after the loop.
            # Skip rows heuristically: consume until next keyword.
            start = pos
            while pos < len(lines) and lines[pos][1].split()[0] not in (
                    "degree",):
                pos += 1
            pending_diff[d] = (start, pos)
    for d, (start, stop) in pending_diff.items():
        if d + 1 not in modules:
            raise ParseError(
                f"diff at degree {d} has no degree {d + 1} module")
        nrows = modules[d + 1].dim
        if stop - start != nrows:
            raise ParseError(
                f"diff at degree {d}: expected {nrows} rows, got "
                f"{stop - start}")
        mat, _ = _parse_matrix_rows(lines, start, nrows, modules[d].dim,
                                    algebra.field)
        raw_diffs[d] = mat
    try:
        return Complex(algebra, modules, raw_diffs)
    except Exception as e:
        raise ParseError(f"invalid complex: {e}")


def emit_complex(c: Complex) -> str:
    lines = []
    for d in c.degrees():
        lines.append(f"degree {d}")
        lines.append(emit_module(c.module(d)).rstrip("\n"))
        dmat = c.diff(d)
        if d + 1 in c.degrees() and not dmat.is_zero():
            f = c.module(d).algebra.field
            lines.append("diff")
            for row in dmat.rows:
                lines.append(" ".join(f.format(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, field) -> Matrix:
    """A bare matrix file: one line per row, whitespace-separated entries."""
    lines = _strip(text)
    if not lines:
        raise ParseError("empty matrix file")
    rows = []
    ncols = None
    for lineno, line in lines:
        toks = line.split()
        if ncols is None:
            ncols = len(toks)
        elif len(toks) != ncols:
            raise ParseError(
                f"line {lineno}: expected {ncols} entries, got {len(toks)}")
        rows.append([_scalar(field, t, lineno) for t in toks])
    return Matrix(field, rows, ncols)


def parse_chain_map(text: str, source: Complex, target: Complex):
    """Chain-map file: ``comp <d>`` headers followed by the matrix of the
    degree-d component (rows = target dim, cols = source dim)."""
    from .complexes import ChainMap

    lines = _strip(text)
    pos = 0
    comps: Dict[int, Matrix] = {}
    while pos < len(lines):
        lineno, line = lines[pos]
        parts = line.split()
        if parts[0] != "comp":
            raise ParseError(f"line {lineno}: expected 'comp <d>'")
        try:
            d = int(parts[1])
        except (IndexError, ValueError):
            raise ParseError(f"line {lineno}: comp takes one integer")
        if d in comps:
            raise ParseError(f"line {lineno}: duplicate component {d}")
        pos += 1
        comps[d], pos = _parse_matrix_rows(
            lines, pos, target.dim(d), source.dim(d), source.algebra.field)
    try:
        return ChainMap(source, target, comps)
    except Exception as e:
        raise ParseError(f"invalid chain map: {e}")
