"""Command-line interface.

``hcat <command> [subjects...] --field q|f<p> --window N --out report.json
--plot DIR``

Subjects are catalog names (see ``hcat catalog``), catalog module
references, or file paths (``.alg``, ``.quiver``, ``.mod``, ``.cx``).
Results are printed as tab-delimited lines; ``--out`` additionally writes a
JSON report with re-checkable certificates and ``--plot`` renders dimension
profiles as figures (PNG + CSV) into a directory.

Exit codes: 0 computed / verified pass, 1 verified fail, 2 inconclusive
within the window, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Dict, List, Optional

from .fields import field_from_name
from .algebra import AlgebraError, ModuleError, ModuleHom, \
    UnsupportedFieldError, regular_bimodule, symmetric_bimodule
from .complexes import ComplexError, cohomology_dims, cone, single_complex
from .catalog import CatalogError, algebra_labels, catalog_names, \
    get_algebra, get_module
from .derived import (
    DerivedComplex,
    DerivedError,
    WindowError,
    derived_hom,
    dpic_mul,
    ext,
    hochschild,
    identify_shifted_regular,
    is_rigid,
    ltensor,
    quasi_inverse,
    regularity_bound,
    regularity_probe,
    rhom,
    ses_to_triangle,
    square,
    triangle_les_exact,
    verify_dualizing,
    verify_tilting,
)
from .parsers import (
    ParseError,
    parse_chain_map,
    parse_complex,
    parse_matrix,
    parse_module,
    parse_quiver,
    parse_structure_constants,
)
from .reports import (
    build_report,
    complex_certificate,
    load_report,
    module_iso_certificate,
    validate_report,
    write_report,
)
from .resolution import ResolutionError, k_projective_resolution

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3

INPUT_ERRORS = (ParseError, CatalogError, AlgebraError, ModuleError,
                ComplexError, DerivedError, ResolutionError, OSError,
                ValueError, UnsupportedFieldError)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def load_algebra(spec: str, field):
    if spec.endswith(".alg"):
        parsed = parse_structure_constants(_read(spec))
        return parsed.build()
    if spec.endswith(".quiver"):
        return parse_quiver(_read(spec), field)
    return get_algebra(spec, field)


def load_module(algebra, ref: str):
    if ref.endswith(".mod"):
        return parse_module(_read(ref), algebra)
    return get_module(algebra, ref)


def load_complex(algebra, ref: str):
    if ref.endswith(".cx"):
        return parse_complex(_read(ref), algebra)
    return single_complex(load_module(algebra, ref))


def _inflate_bimodule(cx):
    """Give a plain-module complex the outer (A, K)-bimodule structure."""
    if cx.pair is not None:
        return cx
    from .algebra import module_as_bimodule
    from .complexes import Complex as _Cx
    mods = {d: module_as_bimodule(cx.module(d)) for d in cx.degrees()}
    return _Cx(mods[cx.lo].algebra, mods,
               {d: cx.diff(d) for d in cx.degrees()
                if d + 1 in cx.degrees()},
               pair=mods[cx.lo].pair)


def _verdict_exit(verdict: str) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(verdict,
                                                      EXIT_INCONCLUSIVE)


def _emit_verifier(report, out: List[str]) -> int:
    out.append(f"verdict\t{report.verdict}")
    for c in report.conditions:
        out.append(f"condition\t{c.name}\t{c.verdict}\t{c.details}")
    return _verdict_exit(report.verdict)


def _report_conditions(report) -> List[Dict]:
    return [{"name": c.name, "verdict": c.verdict, "details": c.details}
            for c in report.conditions]


def _trusted_note(dc: DerivedComplex) -> str:
    parts = []
    if dc.trusted_min is not None:
        parts.append(f"degrees < {dc.trusted_min} untrusted")
    if dc.trusted_max is not None:
        parts.append(f"degrees > {dc.trusted_max} untrusted")
    return "; ".join(parts) if parts else "all degrees certified"


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument(
        "--field", default="q" if not suppress else d,
        help="ground field: q (rationals) or f<p> (prime field)")
    parser.add_argument(
        "--window", type=int, default=6 if not suppress else d,
        help="resolution truncation depth (certified range)")
    parser.add_argument("--out", default=d,
                        help="write a JSON report to this path")
    parser.add_argument("--plot", default=d,
                        help="render dimension-profile figures into this "
                             "directory")


def main(argv: Optional[List[str]] = None) -> int:
    p = argparse.ArgumentParser(
        prog="hcat",
        description="derived-category workbench for finite-dimensional "
                    "algebras (exact arithmetic)")
    _add_common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add_parser(*a, **kw):
        sp = sub.add_parser(*a, **kw)
        _add_common(sp, suppress=True)
        return sp

    sp = add_parser("catalog", help="list builtin algebras")

    sp = add_parser("cohomology", help="cohomology dimensions of a "
                                           "complex")
    sp.add_argument("algebra")
    sp.add_argument("complex")

    sp = add_parser("ext", help="dim Ext^i(M, N)")
    sp.add_argument("algebra")
    sp.add_argument("m")
    sp.add_argument("n")
    sp.add_argument("i", type=int)

    sp = add_parser("derived-hom", help="dim Hom_D(M, N[i])")
    sp.add_argument("algebra")
    sp.add_argument("m")
    sp.add_argument("n")
    sp.add_argument("i", type=int)

    sp = add_parser("cone", help="mapping cone of a chain map")
    sp.add_argument("algebra")
    sp.add_argument("source", help="source complex (.cx or module ref)")
    sp.add_argument("target", help="target complex (.cx or module ref)")
    sp.add_argument("map", help="chain-map file ('comp d' blocks)")

    sp = add_parser("triangle",
                        help="connecting morphism of a short exact sequence")
    sp.add_argument("algebra")
    sp.add_argument("l")
    sp.add_argument("m")
    sp.add_argument("n")
    sp.add_argument("alpha", help="matrix file for L -> M")
    sp.add_argument("beta", help="matrix file for M -> N")

    sp = add_parser("resolve", help="K-projective resolution")
    sp.add_argument("algebra")
    sp.add_argument("complex")

    sp = add_parser("rhom", help="RHom(M, N) cohomology dimensions")
    sp.add_argument("algebra")
    sp.add_argument("m")
    sp.add_argument("n")
    sp.add_argument("--route", default="projective",
                    choices=["projective", "injective"])

    sp = add_parser("ltensor",
                        help="derived tensor cohomology dimensions")
    sp.add_argument("algebra")
    sp.add_argument("m")
    sp.add_argument("n")

    sp = add_parser("verify-dualizing",
                        help="dualizing-complex conditions")
    sp.add_argument("algebra")
    sp.add_argument("r", nargs="?", default="R",
                    help="bimodule complex candidate (default: dual of the "
                         "regular bimodule)")

    sp = add_parser("verify-tilting", help="two-sided tilting check")
    sp.add_argument("algebra")
    sp.add_argument("t", nargs="?", default="R")
    sp.add_argument("tv", nargs="?",
                    help="quasi-inverse candidate (default: RHom(T, A))")

    sp = add_parser("dpic-mul",
                        help="derived Picard product of bimodule complexes")
    sp.add_argument("algebra")
    sp.add_argument("factors", nargs="+",
                    help="two or more bimodule complexes")

    sp = add_parser("square", help="square functor Sq(M)")
    sp.add_argument("algebra")
    sp.add_argument("m", nargs="?", default="R")

    sp = add_parser("rigid", help="M ~ Sq(M) rigidity check")
    sp.add_argument("algebra")
    sp.add_argument("m", nargs="?", default="R")

    sp = add_parser("hochschild", help="Hochschild cohomology dimension")
    sp.add_argument("algebra")
    sp.add_argument("i", type=int)
    sp.add_argument("m", nargs="?",
                    help="coefficient bimodule (default: the regular "
                         "bimodule)")

    sp = add_parser("regularity",
                        help="global-dimension probe via simple modules")
    sp.add_argument("algebra")

    sp = add_parser("validate-report",
                        help="re-check the certificates of a saved report")
    sp.add_argument("report")

    args = p.parse_args(argv)
    try:
        field = field_from_name(args.field)
    except Exception as e:
        print(f"error\t{e}", file=sys.stderr)
        return EXIT_INPUT

    out_lines: List[str] = []
    try:
        code, results, certs, subject = _dispatch(args, field, out_lines)
    except WindowError as e:
        print(f"inconclusive\t{e}")
        return EXIT_INCONCLUSIVE
    except INPUT_ERRORS as e:
        print(f"error\t{e}", file=sys.stderr)
        return EXIT_INPUT

    for line in out_lines:
        print(line)
    report = build_report(args.command, subject, field, args.window,
                          results, certs)
    if args.out:
        write_report(report, args.out)
        print(f"report\t{args.out}")
    if args.plot:
        from .plotting import render_report_figures
        for path in render_report_figures(report, args.plot):
            print(f"figure\t{path}")
    return code


def _dispatch(args, field, out: List[str]):
    """Returns (exit code, results, certificates, subject echo)."""
    cmd = args.command
    certs: List[Dict] = []

    if cmd == "catalog":
        for name in catalog_names():
            if "<" in name:
                out.append(f"entry\t{name}")
            else:
                labels = " ".join(algebra_labels(name))
                out.append(f"entry\t{name}\t{labels}")
        return EXIT_PASS, {"entries": catalog_names()}, certs, {}

    if cmd == "validate-report":
        checks = validate_report(load_report(args.report))
        ok = all(c["ok"] for c in checks)
        for c in checks:
            out.append(f"certificate\t{c['index']}\t{c['type']}\t"
                       f"{'ok' if c['ok'] else 'FAILED'}")
        out.append(f"verdict\t{'pass' if ok else 'fail'}")
        return (EXIT_PASS if ok else EXIT_FAIL), {"checks": checks}, certs, \
            {"report": args.report}

    a = load_algebra(args.algebra, field)
    w = args.window
    subject = {k: v for k, v in vars(args).items()
               if k not in ("command", "field", "window", "out", "plot")}

    if cmd == "cohomology":
        cx = load_complex(a, args.complex)
        dims = cohomology_dims(cx)
        for d in sorted(dims):
            out.append(f"H^{d}\t{dims[d]}")
        if not dims:
            out.append("acyclic\ttrue")
        certs.append(complex_certificate(cx))
        return EXIT_PASS, {"cohomology": {str(d): n
                                          for d, n in dims.items()}}, \
            certs, subject

    if cmd == "ext":
        m = load_module(a, args.m)
        n = load_module(a, args.n)
        val = ext(m, n, args.i, w)
        out.append(f"ext^{args.i}\t{val}")
        return EXIT_PASS, {"ext": val, "degree": args.i}, certs, subject

    if cmd == "derived-hom":
        m = load_module(a, args.m)
        n = load_module(a, args.n)
        dim, basis = derived_hom(m, n, args.i, w)
        out.append(f"dim\t{dim}")
        return EXIT_PASS, {"dim": dim, "degree": args.i}, certs, subject

    if cmd == "cone":
        src = load_complex(a, args.source)
        tgt = load_complex(a, args.target)
        phi = parse_chain_map(_read(args.map), src, tgt)
        c, _, _ = cone(phi)
        dims = cohomology_dims(c)
        out.append("cone degrees\t" +
                   " ".join(f"{d}:{c.dim(d)}" for d in c.degrees()))
        for d in sorted(dims):
            out.append(f"H^{d}\t{dims[d]}")
        out.append(f"quasi-iso\t{'true' if not dims else 'false'}")
        certs.append(complex_certificate(c))
        return EXIT_PASS, {
            "dims": {str(d): c.dim(d) for d in c.degrees()},
            "cohomology": {str(d): n for d, n in dims.items()},
            "map_is_quasi_iso": not dims,
        }, certs, subject

    if cmd == "triangle":
        l = load_module(a, args.l)
        m = load_module(a, args.m)
        n = load_module(a, args.n)
        alpha = ModuleHom(l, m, parse_matrix(_read(args.alpha), field))
        beta = ModuleHom(m, n, parse_matrix(_read(args.beta), field))
        gamma = ses_to_triangle(alpha, beta, w)
        les = triangle_les_exact(alpha, beta, gamma)
        gz = gamma.is_zero()
        out.append(f"gamma zero\t{'true' if gz else 'false'}")
        out.append(f"les exact\t{'true' if les else 'false'}")
        return (EXIT_PASS if les else EXIT_FAIL), \
            {"gamma_zero": gz, "les_exact": les}, certs, subject

    if cmd == "resolve":
        cx = load_complex(a, args.complex)
        res = k_projective_resolution(cx, w)
        pc = res.complex
        out.append("terms\t" +
                   " ".join(f"{d}:{pc.dim(d)}" for d in pc.degrees()))
        out.append(f"finite\t{'true' if res.finite else 'false'}")
        if not res.finite:
            out.append(f"exact above degree\t{res.valid_above}")
        certs.append(complex_certificate(pc))
        return EXIT_PASS, {
            "terms": {str(d): pc.dim(d) for d in pc.degrees()},
            "finite": res.finite,
            "valid_above": res.valid_above,
        }, certs, subject

    if cmd in ("rhom", "ltensor"):
        m = load_complex(a, args.m)
        n = load_complex(a, args.n)
        if cmd == "rhom":
            dc = rhom(m, n, w, route=args.route)
        else:
            if m.pair is None:
                # A plain left module has no right structure to contract;
                # over a commutative algebra the symmetric one is canonical.
                from .complexes import Complex as _Cx
                mods = {d: symmetric_bimodule(m.module(d))
                        for d in m.degrees()}
                m = _Cx(mods[m.lo].algebra, mods,
                        {d: m.diff(d) for d in m.degrees()
                         if d + 1 in m.degrees()},
                        pair=mods[m.lo].pair, check=False)
            dc = ltensor(m, n, w)
        dims = dc.trusted_cohomology_dims()
        for d in sorted(dims):
            out.append(f"H^{d}\t{dims[d]}")
        out.append(f"window\t{_trusted_note(dc)}")
        certs.append(complex_certificate(dc.complex))
        return EXIT_PASS, {
            "cohomology": {str(d): v for d, v in dims.items()},
            "trusted_min": dc.trusted_min,
            "trusted_max": dc.trusted_max,
        }, certs, subject

    if cmd == "verify-dualizing":
        r = load_complex(a, args.r)
        rep = verify_dualizing(r, w)
        code = _emit_verifier(rep, out)
        return code, {"verdict": rep.verdict,
                      "conditions": _report_conditions(rep)}, certs, subject

    if cmd == "verify-tilting":
        t = load_complex(a, args.t)
        tv = quasi_inverse(t, w) if args.tv is None \
            else load_complex(a, args.tv)
        rep = verify_tilting(t, tv, w)
        code = _emit_verifier(rep, out)
        return code, {"verdict": rep.verdict,
                      "conditions": _report_conditions(rep)}, certs, subject

    if cmd == "dpic-mul":
        if len(args.factors) < 2:
            raise ParseError("dpic-mul needs at least two factors")
        acc = load_complex(a, args.factors[0])
        for ref in args.factors[1:]:
            acc = dpic_mul(acc, load_complex(a, ref), w)
        dims = acc.trusted_cohomology_dims()
        for d in sorted(dims):
            out.append(f"H^{d}\t{dims[d]}")
        out.append(f"window\t{_trusted_note(acc)}")
        ident = identify_shifted_regular(acc, a)
        results = {"cohomology": {str(d): v for d, v in dims.items()}}
        if ident is not None:
            k, witness = ident
            out.append(f"isomorphic to\tA[{k}]")
            results["isomorphic_to"] = f"A[{k}]"
            if hasattr(witness, "matrix"):
                certs.append(module_iso_certificate(
                    witness.source, witness.target, witness.matrix))
        certs.append(complex_certificate(acc.complex))
        return EXIT_PASS, results, certs, subject

    if cmd == "square":
        m = _inflate_bimodule(load_complex(a, args.m))
        dc = square(m, w)
        dims = dc.trusted_cohomology_dims()
        for d in sorted(dims):
            out.append(f"H^{d}\t{dims[d]}")
        out.append(f"window\t{_trusted_note(dc)}")
        certs.append(complex_certificate(dc.complex))
        return EXIT_PASS, {"cohomology": {str(d): v
                                          for d, v in dims.items()}}, \
            certs, subject

    if cmd == "rigid":
        m = _inflate_bimodule(load_complex(a, args.m))
        rep = is_rigid(m, w)
        code = _emit_verifier(rep, out)
        return code, {"verdict": rep.verdict,
                      "conditions": _report_conditions(rep)}, certs, subject

    if cmd == "hochschild":
        coeff = load_module(a, args.m) if args.m else regular_bimodule(a)
        val = hochschild(a, coeff, args.i, w)
        out.append(f"hh^{args.i}\t{val}")
        return EXIT_PASS, {"hochschild": val, "degree": args.i}, certs, \
            subject

    if cmd == "regularity":
        rep = regularity_probe(a, w)
        code = _emit_verifier(rep, out)
        bound = regularity_bound(rep)
        if bound is not None:
            out.append(f"bound\t{bound}")
        return code, {"verdict": rep.verdict, "bound": bound,
                      "conditions": _report_conditions(rep)}, certs, subject

    raise ParseError(f"unknown command {cmd!r}")


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
