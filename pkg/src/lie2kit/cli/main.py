"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a check fails or a
construction is refused, 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .. import fingpd, lie2
from ..errors import Lie2KitError, SizeGuardError
from ..liealg import verify_lie_algebra
from ..report import Report, jsonable
from ..twovect import cocycle_identities, resolve_cocycle, verify_cocycle
from . import fixtures
from .documents import Document, FormatError, dumps, load_path

OK, FAIL, MALFORMED = 0, 1, 2

BUNDLE_KINDS = {"lie_bibundle": "lie", "lie2_functor": "lie",
                "fin_bibundle": "fin", "fin_functor": "fin"}


class UsageError(Exception):
    """Valid document of the wrong kind for the requested verb."""


# --- verification ---------------------------------------------------------------------

def _with_components(name, parts, main):
    rep = Report(name)
    ok = True
    for prefix, sub in parts:
        ok = rep.extend(sub, prefix) and ok
    if ok:
        inner = main()
        rep.extend(inner)
        rep.derived.update(inner.derived)
    return rep


def _verify_cell_list(name, value):
    d, zs, recorded = value
    rep = Report(name)
    base = verify_cocycle(d)
    rep.extend(base, "cocycle.")
    if base.ok:
        actual = cocycle_identities(d, zs)
        bad = next(([i + 1, j + 1] for i, row in enumerate(actual)
                    for j, holds in enumerate(row) if not holds), None)
        rep.add("identities", bad is None, "w_ij = z_i z_j^-1 for all i, j",
                bad and {"i": bad[0], "j": bad[1]})
        rep.add("recorded", actual == recorded, "recorded identity matrix matches",
                None if actual == recorded else {"recorded": recorded, "actual": actual})
    return rep


def verify_document(doc: Document) -> Report:
    kind, name, v = doc.kind, doc.name, doc.value
    try:
        if kind == "lie_algebra":
            return verify_lie_algebra(v, name)
        if kind == "crossed_module":
            return lie2.verify_crossed_module(v, name)
        if kind == "lie2_algebra":
            return lie2.verify_lie2(v, name)
        if kind == "lie2_functor":
            return _with_components(
                name,
                [("source.", lie2.verify_lie2(v.source)), ("target.", lie2.verify_lie2(v.target))],
                lambda: lie2.verify_lie2_functor(v))
        if kind == "lie_bibundle":
            return _with_components(
                name,
                [("source.", lie2.verify_lie2(v.source)), ("target.", lie2.verify_lie2(v.target))],
                lambda: lie2.verify_bibundle(v))
        if kind == "fin_groupoid":
            return fingpd.verify_groupoid(v, name)
        if kind == "fin_functor":
            return _with_components(
                name, [("source.", fingpd.verify_groupoid(v.source)),
                       ("target.", fingpd.verify_groupoid(v.target))],
                lambda: fingpd.verify_functor(v))
        if kind == "fin_bibundle":
            return _with_components(
                name, [("source.", fingpd.verify_groupoid(v.source)),
                       ("target.", fingpd.verify_groupoid(v.target))],
                lambda: fingpd.verify_bibundle(v))
        if kind == "cocycle":
            return verify_cocycle(v, name)
        if kind == "cell_list":
            return _verify_cell_list(name, v)
    except Lie2KitError as exc:
        rep = Report(name)
        rep.add("structure", False, "data is structurally consistent", str(exc))
        return rep
    raise UsageError(f"cannot verify documents of kind {kind!r}")


def _as_bundle(doc: Document):
    if doc.kind not in BUNDLE_KINDS:
        raise UsageError(f"{doc.name}: expected a bibundle or functor document, got {doc.kind}")
    if doc.kind == "lie2_functor":
        return "lie", lie2.bundle_of_functor(doc.value)
    if doc.kind == "fin_functor":
        return "fin", fingpd.bundle_of_functor(doc.value)
    return BUNDLE_KINDS[doc.kind], doc.value


def _require_valid(doc: Document):
    rep = verify_document(doc)
    if not rep.ok:
        raise Refused(f"{doc.name} does not verify", rep)
    return rep


class Refused(Exception):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def isomorphism_check(doc: Document, other: Document) -> Report:
    fam, P = _as_bundle(doc)
    fam2, Q = _as_bundle(other)
    if fam != fam2:
        raise UsageError("cannot compare a Lie bibundle with a finite one")
    rep = Report(f"{doc.name} ~ {other.name}")
    same = P.source == Q.source and P.target == Q.target
    rep.add("same_ends", same, "both bundles connect the same structures",
            None if same else {"left": [describe(P.source), describe(P.target)],
                               "right": [describe(Q.source), describe(Q.target)]})
    if not same:
        return rep
    if fam == "fin":
        delta = fingpd.find_bibundle_iso(P, Q)
        rep.add("isomorphic", delta is not None, "a bibundle isomorphism exists",
                None if delta is not None else "exhaustive search found no isomorphism")
        if delta is not None:
            rep.derived["isomorphism"] = [[p, delta[p]] for p in P.elements]
    else:
        M = lie2.find_bibundle_iso(P, Q)
        rep.add("isomorphic", M is not None, "a bibundle isomorphism was found",
                None if M is not None else "no isomorphism among the searched candidates")
        if M is not None:
            rep.derived["isomorphism"] = [list(row) for row in M.data]
    return rep


def describe(x) -> str:
    if isinstance(x, lie2.Lie2Algebra):
        return (f"Lie 2-algebra (V1 {list(x.V1.basis_names)}, V0 {list(x.V0.basis_names)}, "
                f"dim V1 = {x.V1.dim}, dim V0 = {x.V0.dim})")
    if isinstance(x, fingpd.FinGroupoid):
        objects = [jsonable(o) for o in x.objects]
        n = len(x.arrows)
        return f"groupoid with objects {objects} and {n} arrow{'' if n == 1 else 's'}"
    return repr(x)


# --- output helpers ----------------------------------------------------------------------

def _print_reports(reports, fmt):
    if fmt == "json":
        data = [r.to_dict() for r in reports]
        out = json.dumps(data[0] if len(data) == 1 else data, indent=2, ensure_ascii=False)
    else:
        out = "\n\n".join(r.to_text() for r in reports)
    sys.stdout.write(out + "\n")


def _emit(kind, name, value, out_path):
    text = dumps(kind, name, value)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(msg):
    sys.stderr.write(f"error: {msg}\n")


# --- verbs -----------------------------------------------------------------------------------

def cmd_verify(args):
    if os.path.isdir(args.path):
        paths = sorted(os.path.join(args.path, f) for f in os.listdir(args.path)
                       if f.endswith(".json") and os.path.isfile(os.path.join(args.path, f)))
    else:
        paths = [args.path]
    against = load_path(args.against) if args.against else None
    if against is not None:
        _require_valid(against)
    reports, code = [], OK
    for path in paths:
        try:
            doc = load_path(path)
            rep = verify_document(doc)
            if against is not None and rep.ok:
                iso = isomorphism_check(doc, against)
                rep.extend(iso, "against.")
                rep.derived.update({f"against.{k}": v for k, v in iso.derived.items()})
        except FormatError as exc:
            _error(f"{path}: {exc}")
            code = max(code, MALFORMED)
            continue
        except SizeGuardError as exc:
            _error(f"{path}: {exc}")
            code = max(code, FAIL)
            continue
        reports.append(rep)
        code = max(code, OK if rep.ok else FAIL)
    if reports:
        _print_reports(reports, args.format)
    return code


BUILDERS = {
    "lie2-of-cm": {"crossed_module": ("lie2_algebra", lie2.lie2_of_crossed_module)},
    "cm-of-lie2": {"lie2_algebra": ("crossed_module", lie2.crossed_module_of_lie2)},
    "bundle-of-functor": {
        "lie2_functor": ("lie_bibundle", lie2.bundle_of_functor),
        "fin_functor": ("fin_bibundle", fingpd.bundle_of_functor),
    },
    "linking": {"fin_bibundle": ("fin_groupoid", lambda P: fingpd.linking_groupoid(P)[0])},
}


def cmd_build(args):
    doc = load_path(args.file)
    table = BUILDERS[args.construction]
    if doc.kind not in table:
        raise UsageError(f"{args.construction} expects {' or '.join(table)}, got {doc.kind}")
    _require_valid(doc)
    kind, build = table[doc.kind]
    _emit(kind, args.name or f"{args.construction}({doc.name})", build(doc.value), args.output)
    return OK


def cmd_compose(args):
    q_doc, p_doc = load_path(args.Q), load_path(args.P)
    fam_q, Q = _as_bundle(q_doc)
    fam_p, P = _as_bundle(p_doc)
    if fam_q != fam_p:
        raise UsageError("cannot compose a Lie bibundle with a finite one")
    _require_valid(q_doc)
    _require_valid(p_doc)
    if P.target != Q.source:
        raise Refused(f"cannot compose: {p_doc.name} ends at {describe(P.target)} "
                      f"but {q_doc.name} starts at {describe(Q.source)}")
    if fam_q == "lie":
        kind, R = "lie_bibundle", lie2.compose_bibundles(Q, P)
    else:
        kind, R = "fin_bibundle", fingpd.compose_bibundles(Q, P)
    _emit(kind, args.name or f"{q_doc.name} o {p_doc.name}", R, args.output)
    return OK


def cmd_morita(args):
    doc = load_path(args.file)
    if doc.kind not in BUNDLE_KINDS:
        raise UsageError(f"morita expects a bibundle or functor document, got {doc.kind}")
    _require_valid(doc)
    v = doc.value
    if doc.kind == "lie_bibundle":
        rep = lie2.is_weakly_invertible(v, doc.name)
    elif doc.kind == "lie2_functor":
        rep = lie2.functor_is_essential_equivalence(v, doc.name)
    elif doc.kind == "fin_bibundle":
        rep = fingpd.biprincipal_report(v, doc.name)
    else:
        rep = fingpd.is_essential_equivalence(v, doc.name)
    _print_reports([rep], args.format)
    return OK if rep.ok else FAIL


def cmd_resolve_cocycle(args):
    doc = load_path(args.file)
    if doc.kind != "cocycle":
        raise UsageError(f"resolve-cocycle expects a cocycle document, got {doc.kind}")
    try:
        zs = resolve_cocycle(doc.value)
    except Lie2KitError as exc:
        raise Refused(str(exc), getattr(exc, "report", None)) from None
    value = (doc.value, zs, cocycle_identities(doc.value, zs))
    _emit("cell_list", args.name or f"cells({doc.name})", value, args.output)
    return OK


def cmd_sample(args):
    value = fixtures.sample(args.kind, args.seed)
    _emit(args.kind, args.name or f"{args.kind}-seed{args.seed}", value, args.output)
    return OK


def cmd_fixtures(args):
    root = args.directory
    for sub, entries in (("", fixtures.valid_corpus()), ("invalid", fixtures.invalid_corpus())):
        folder = os.path.join(root, sub)
        os.makedirs(folder, exist_ok=True)
        for name, kind, value in entries:
            _emit(kind, name, value, os.path.join(folder, f"{name}.json"))
    folder = os.path.join(root, "malformed")
    os.makedirs(folder, exist_ok=True)
    with open(os.path.join(folder, "truncated.json"), "w", encoding="utf-8") as fh:
        fh.write(fixtures.TRUNCATED)
    return OK


# --- argument parsing ----------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="lie2kit",
        description="Verify and construct crossed modules, Lie 2-algebras, bibundles "
                    "and finite groupoids stored as JSON documents.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def out_flags(p):
        p.add_argument("-o", "--output", help="write the document here instead of stdout")
        p.add_argument("--name", help="name of the emitted document")

    p = sub.add_parser("verify", help="run the full check suite on a document or directory")
    p.add_argument("path")
    p.add_argument("--against", metavar="FILE",
                   help="also look for a bibundle isomorphism to this bundle or functor")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build", help="construct a derived structure")
    p.add_argument("construction", choices=tuple(BUILDERS))
    p.add_argument("file")
    out_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("compose", help="compose bibundles: Q after P")
    p.add_argument("Q")
    p.add_argument("P")
    out_flags(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("morita", help="decide weak invertibility or essential equivalence")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_morita)

    p = sub.add_parser("resolve-cocycle", help="write a cocycle as z_i z_j^-1")
    p.add_argument("file")
    out_flags(p)
    p.set_defaults(func=cmd_resolve_cocycle)

    p = sub.add_parser("sample", help="emit a seeded random document")
    p.add_argument("kind", choices=tuple(fixtures.SAMPLERS))
    p.add_argument("--seed", type=int, default=0)
    out_flags(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("fixtures", help="write the fixture corpus into a directory")
    p.add_argument("directory")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        _error(str(exc))
        return MALFORMED
    except UsageError as exc:
        _error(str(exc))
        return MALFORMED
    except Refused as exc:
        _error(str(exc))
        if exc.report is not None:
            sys.stderr.write(exc.report.to_text() + "\n")
        return FAIL
    except Lie2KitError as exc:
        _error(str(exc))
        return FAIL
