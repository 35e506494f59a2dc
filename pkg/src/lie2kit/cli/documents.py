"""JSON documents: ``{"version", "kind", "name", "payload"}``.

Scalars are written as integers when integral and as ``"p/q"`` strings
otherwise.  Matrices are lists of rows; their shapes come from context, so
a matrix with no rows is simply ``[]``.  Finite-groupoid labels are JSON
strings, integers or (nested) lists, and lists are read back as tuples.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ..errors import SizeGuardError
from ..exactla import Matrix, scalar
from ..fingpd import FinBibundle, FinFunctor, FinGroupoid
from ..lie2 import CrossedModule, Lie2Algebra, Lie2Functor, LieBibundle
from ..liealg import LieAlgebra, LieHom
from ..twovect import Cell, CocycleData, TwoTermComplex

VERSION = "1"
KINDS = (
    "lie_algebra", "crossed_module", "lie2_algebra", "lie2_functor", "lie_bibundle",
    "fin_groupoid", "fin_functor", "fin_bibundle", "cocycle", "cell_list",
)


class FormatError(ValueError):
    """Malformed document; ``line`` and ``column`` are set for JSON syntax errors."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line, self.column = line, column

    def __str__(self):
        msg = super().__str__()
        return f"line {self.line}, column {self.column}: {msg}" if self.line else msg


# --- scalars, vectors, matrices ----------------------------------------------------

def dump_scalar(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def load_scalar(x, where="scalar"):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return scalar(x)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"{where}: not a rational number: {x!r}") from None


def dump_vector(v):
    return [dump_scalar(x) for x in v]


def load_vector(v, n, where="vector"):
    if not isinstance(v, list) or len(v) != n:
        raise FormatError(f"{where}: expected a list of {n} scalars")
    return tuple(load_scalar(x, where) for x in v)


def dump_matrix(M: Matrix):
    return [dump_vector(row) for row in M.data]


def load_matrix(rows, shape, where="matrix"):
    r, c = shape
    if not isinstance(rows, list) or len(rows) != r:
        raise FormatError(f"{where}: expected {r} rows of length {c}")
    return Matrix([load_vector(row, c, where) for row in rows], r, c)


def _require(payload, keys, where):
    if not isinstance(payload, dict):
        raise FormatError(f"{where}: expected an object")
    missing = [k for k in keys if k not in payload]
    if missing:
        raise FormatError(f"{where}: missing field(s) {', '.join(missing)}")
    extra = sorted(set(payload) - set(keys))
    if extra:
        raise FormatError(f"{where}: unknown field(s) {', '.join(extra)}")
    return [payload[k] for k in keys]


# --- Lie side ---------------------------------------------------------------------------

def dump_lie_algebra(L: LieAlgebra):
    names, c, d = L.basis_names, L.constants, L.dim
    brackets = []

    def entry(i, j):
        row = c[i][j]
        return [names[i], names[j], {names[k]: dump_scalar(x) for k, x in enumerate(row) if x}]

    for i in range(d):
        if any(c[i][i]):
            brackets.append(entry(i, i))
        for j in range(i + 1, d):
            # [e_j, e_i] is implied by antisymmetry unless it disagrees
            skew = c[j][i] != tuple(-x for x in c[i][j])
            if any(c[i][j]) or skew:
                brackets.append(entry(i, j))
            if skew:
                brackets.append(entry(j, i))
    return {"basis": list(names), "brackets": brackets}


def load_lie_algebra(payload, where="lie_algebra"):
    basis, brackets = _require(payload, ["basis", "brackets"], where)
    if not isinstance(basis, list) or not all(isinstance(n, str) for n in basis):
        raise FormatError(f"{where}.basis: expected a list of names")
    if len(set(basis)) != len(basis):
        raise FormatError(f"{where}.basis: names must be distinct")
    idx = {n: i for i, n in enumerate(basis)}
    d = len(basis)
    c = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    given = set()
    if not isinstance(brackets, list):
        raise FormatError(f"{where}.brackets: expected a list")
    for entry in brackets:
        if not (isinstance(entry, list) and len(entry) == 3 and isinstance(entry[2], dict)):
            raise FormatError(f"{where}.brackets: entries are [x, y, {{z: coeff}}]")
        a, b, value = entry
        if a not in idx or b not in idx or any(k not in idx for k in value):
            raise FormatError(f"{where}.brackets: unknown basis name in {entry!r}")
        i, j = idx[a], idx[b]
        if (i, j) in given:
            raise FormatError(f"{where}.brackets: bracket [{a}, {b}] given twice")
        given.add((i, j))
        row = [Fraction(0)] * d
        for name, coeff in value.items():
            row[idx[name]] = load_scalar(coeff, f"{where}.brackets")
        c[i][j] = row
        if (j, i) not in given:
            c[j][i] = [-x for x in row]
    return LieAlgebra(c, basis)


def dump_crossed_module(cm: CrossedModule):
    return {
        "m": dump_lie_algebra(cm.m),
        "n": dump_lie_algebra(cm.n),
        "delta": dump_matrix(cm.delta.matrix),
        "action": {name: dump_matrix(A) for name, A in zip(cm.n.basis_names, cm.action)},
    }


def load_crossed_module(payload, where="crossed_module"):
    m, n, delta, action = _require(payload, ["m", "n", "delta", "action"], where)
    m, n = load_lie_algebra(m, f"{where}.m"), load_lie_algebra(n, f"{where}.n")
    delta = load_matrix(delta, (n.dim, m.dim), f"{where}.delta")
    if not isinstance(action, dict) or set(action) != set(n.basis_names):
        raise FormatError(f"{where}.action: expected one matrix per basis name of n")
    mats = [load_matrix(action[y], (m.dim, m.dim), f"{where}.action.{y}") for y in n.basis_names]
    return CrossedModule(m, n, LieHom(m, n, delta), mats)


def dump_lie2_algebra(A: Lie2Algebra):
    return {
        "V1": dump_lie_algebra(A.V1),
        "V0": dump_lie_algebra(A.V0),
        "s": dump_matrix(A.s),
        "t": dump_matrix(A.t),
        "unit": dump_matrix(A.unit),
        "comp": dump_matrix(A.comp),
    }


def load_lie2_algebra(payload, where="lie2_algebra"):
    V1, V0, s, t, unit, comp = _require(payload, ["V1", "V0", "s", "t", "unit", "comp"], where)
    V1, V0 = load_lie_algebra(V1, f"{where}.V1"), load_lie_algebra(V0, f"{where}.V0")
    d1, d0 = V1.dim, V0.dim
    return Lie2Algebra(
        V1, V0,
        load_matrix(s, (d0, d1), f"{where}.s"),
        load_matrix(t, (d0, d1), f"{where}.t"),
        load_matrix(unit, (d1, d0), f"{where}.unit"),
        load_matrix(comp, (d1, 2 * d1), f"{where}.comp"),
    )


def dump_lie2_functor(F: Lie2Functor):
    return {
        "source": dump_lie2_algebra(F.source),
        "target": dump_lie2_algebra(F.target),
        "F1": dump_matrix(F.F1.matrix),
        "F0": dump_matrix(F.F0.matrix),
    }


def load_lie2_functor(payload, where="lie2_functor"):
    src, tgt, F1, F0 = _require(payload, ["source", "target", "F1", "F0"], where)
    A, B = load_lie2_algebra(src, f"{where}.source"), load_lie2_algebra(tgt, f"{where}.target")
    F1 = load_matrix(F1, (B.V1.dim, A.V1.dim), f"{where}.F1")
    F0 = load_matrix(F0, (B.V0.dim, A.V0.dim), f"{where}.F0")
    return Lie2Functor(A, B, LieHom(A.V1, B.V1, F1), LieHom(A.V0, B.V0, F0))


def dump_lie_bibundle(P: LieBibundle):
    return {
        "source": dump_lie2_algebra(P.source),
        "target": dump_lie2_algebra(P.target),
        "p": dump_lie_algebra(P.p),
        "aL": dump_matrix(P.aL),
        "aR": dump_matrix(P.aR),
        "actL": dump_matrix(P.actL),
        "actR": dump_matrix(P.actR),
    }


def load_lie_bibundle(payload, where="lie_bibundle"):
    src, tgt, p, aL, aR, actL, actR = _require(
        payload, ["source", "target", "p", "aL", "aR", "actL", "actR"], where)
    G, H = load_lie2_algebra(src, f"{where}.source"), load_lie2_algebra(tgt, f"{where}.target")
    p = load_lie_algebra(p, f"{where}.p")
    d = p.dim
    return LieBibundle(
        G, H, p,
        load_matrix(aL, (G.V0.dim, d), f"{where}.aL"),
        load_matrix(aR, (H.V0.dim, d), f"{where}.aR"),
        load_matrix(actL, (d, G.V1.dim + d), f"{where}.actL"),
        load_matrix(actR, (d, d + H.V1.dim), f"{where}.actR"),
    )


# --- finite groupoids ---------------------------------------------------------------

def dump_label(x):
    if isinstance(x, tuple):
        return [dump_label(y) for y in x]
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"label {x!r} cannot be serialized")
    return x


def load_label(x, where="label"):
    if isinstance(x, list):
        return tuple(load_label(y, where) for y in x)
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"{where}: labels are strings, integers or lists, got {x!r}")
    return x


def _rows(value, width, where):
    if not isinstance(value, list) or any(
        not isinstance(r, list) or len(r) != width for r in value
    ):
        raise FormatError(f"{where}: expected a list of {width}-element lists")
    return [tuple(load_label(x, where) for x in r) for r in value]


def _table(rows, nkeys, where):
    out = {}
    for r in rows:
        key = r[0] if nkeys == 1 else r[:nkeys]
        if key in out:
            raise FormatError(f"{where}: duplicate entry for {dump_label(key)!r}")
        out[key] = r[nkeys]
    return out


def _distinct(labels, where):
    if len(set(labels)) != len(labels):
        raise FormatError(f"{where}: labels must be distinct")
    return labels


def dump_fin_groupoid(G: FinGroupoid):
    comp = [[dump_label(a) for a in (g2, g1, G.comp[(g2, g1)])]
            for g2 in G.arrows for g1 in G.arrows if (g2, g1) in G.comp]
    return {
        "objects": [dump_label(x) for x in G.objects],
        "arrows": [[dump_label(g), dump_label(G.source[g]), dump_label(G.target[g])]
                   for g in G.arrows],
        "units": [[dump_label(x), dump_label(G.unit[x])] for x in G.objects if x in G.unit],
        "composition": comp,
        "inverses": [[dump_label(g), dump_label(G.inv[g])] for g in G.arrows if g in G.inv],
    }


def load_fin_groupoid(payload, where="fin_groupoid"):
    objects, arrows, units, comp, inverses = _require(
        payload, ["objects", "arrows", "units", "composition", "inverses"], where)
    if not isinstance(objects, list):
        raise FormatError(f"{where}.objects: expected a list")
    objects = _distinct([load_label(x, f"{where}.objects") for x in objects], f"{where}.objects")
    arrows = _rows(arrows, 3, f"{where}.arrows")
    labels = _distinct([a[0] for a in arrows], f"{where}.arrows")
    return FinGroupoid(
        objects, labels,
        {g: s for g, s, _ in arrows},
        {g: t for g, _, t in arrows},
        _table(_rows(units, 2, f"{where}.units"), 1, f"{where}.units"),
        _table(_rows(comp, 3, f"{where}.composition"), 2, f"{where}.composition"),
        _table(_rows(inverses, 2, f"{where}.inverses"), 1, f"{where}.inverses"),
    )


def dump_fin_functor(f: FinFunctor):
    G = f.source
    return {
        "source": dump_fin_groupoid(G),
        "target": dump_fin_groupoid(f.target),
        "objects": [[dump_label(x), dump_label(f.on_objects[x])]
                    for x in G.objects if x in f.on_objects],
        "arrows": [[dump_label(g), dump_label(f.on_arrows[g])]
                   for g in G.arrows if g in f.on_arrows],
    }


def load_fin_functor(payload, where="fin_functor"):
    src, tgt, objs, arrs = _require(payload, ["source", "target", "objects", "arrows"], where)
    return FinFunctor(
        load_fin_groupoid(src, f"{where}.source"),
        load_fin_groupoid(tgt, f"{where}.target"),
        _table(_rows(objs, 2, f"{where}.objects"), 1, f"{where}.objects"),
        _table(_rows(arrs, 2, f"{where}.arrows"), 1, f"{where}.arrows"),
    )


def dump_fin_bibundle(P: FinBibundle):
    G, H, E = P.source, P.target, P.elements
    return {
        "source": dump_fin_groupoid(G),
        "target": dump_fin_groupoid(H),
        "elements": [[dump_label(p), dump_label(P.left_anchor.get(p)),
                      dump_label(P.right_anchor.get(p))] for p in E],
        "left_action": [[dump_label(g), dump_label(p), dump_label(P.left_action[(g, p)])]
                        for g in G.arrows for p in E if (g, p) in P.left_action],
        "right_action": [[dump_label(p), dump_label(h), dump_label(P.right_action[(p, h)])]
                         for p in E for h in H.arrows if (p, h) in P.right_action],
    }


def load_fin_bibundle(payload, where="fin_bibundle"):
    src, tgt, elems, left, right = _require(
        payload, ["source", "target", "elements", "left_action", "right_action"], where)
    elems = _rows(elems, 3, f"{where}.elements")
    labels = _distinct([e[0] for e in elems], f"{where}.elements")
    return FinBibundle(
        load_fin_groupoid(src, f"{where}.source"),
        load_fin_groupoid(tgt, f"{where}.target"),
        labels,
        {p: a for p, a, _ in elems},
        {p: b for p, _, b in elems},
        _table(_rows(left, 3, f"{where}.left_action"), 2, f"{where}.left_action"),
        _table(_rows(right, 3, f"{where}.right_action"), 2, f"{where}.right_action"),
    )


# --- cocycles -----------------------------------------------------------------------------

def dump_cocycle(d: CocycleData):
    cx = d.complex
    return {
        "U": cx.U,
        "W": cx.W,
        "delta": dump_matrix(cx.delta),
        "objects": [dump_vector(v) for v in d.objects],
        "morphisms": [[dump_vector(u) for u in row] for row in d.morphisms],
        "weights": dump_vector(d.weights),
    }


def _dim(x, where):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise FormatError(f"{where}: expected a non-negative integer")
    return x


def load_cocycle(payload, where="cocycle"):
    U, W, delta, objects, morphisms, weights = _require(
        payload, ["U", "W", "delta", "objects", "morphisms", "weights"], where)
    U, W = _dim(U, f"{where}.U"), _dim(W, f"{where}.W")
    cx = TwoTermComplex(U, W, load_matrix(delta, (W, U), f"{where}.delta"))
    if not isinstance(objects, list) or not objects:
        raise FormatError(f"{where}.objects: expected a non-empty list")
    s = len(objects)
    if not isinstance(morphisms, list) or len(morphisms) != s or any(
        not isinstance(r, list) or len(r) != s for r in morphisms
    ):
        raise FormatError(f"{where}.morphisms: expected a {s} x {s} table of vectors")
    return CocycleData(
        cx,
        [load_vector(v, W, f"{where}.objects") for v in objects],
        [[load_vector(u, U, f"{where}.morphisms") for u in row] for row in morphisms],
        load_vector(weights, s, f"{where}.weights"),
    )


def dump_cell_list(value):
    d, cells, identities = value
    return {
        "cocycle": dump_cocycle(d),
        "cells": [{"u": dump_vector(c.u), "v": dump_vector(c.v)} for c in cells],
        "identities": identities,
    }


def load_cell_list(payload, where="cell_list"):
    cocycle, cells, identities = _require(payload, ["cocycle", "cells", "identities"], where)
    d = load_cocycle(cocycle, f"{where}.cocycle")
    if not isinstance(cells, list) or len(cells) != d.size:
        raise FormatError(f"{where}.cells: expected {d.size} cells")
    zs = []
    for c in cells:
        u, v = _require(c, ["u", "v"], f"{where}.cells")
        zs.append(Cell(load_vector(u, d.complex.U, f"{where}.cells"),
                       load_vector(v, d.complex.W, f"{where}.cells")))
    if not (isinstance(identities, list) and all(
        isinstance(r, list) and all(isinstance(b, bool) for b in r) for r in identities
    )):
        raise FormatError(f"{where}.identities: expected a matrix of booleans")
    return d, zs, identities


# --- documents -------------------------------------------------------------------------------

CODECS = {
    "lie_algebra": (load_lie_algebra, dump_lie_algebra),
    "crossed_module": (load_crossed_module, dump_crossed_module),
    "lie2_algebra": (load_lie2_algebra, dump_lie2_algebra),
    "lie2_functor": (load_lie2_functor, dump_lie2_functor),
    "lie_bibundle": (load_lie_bibundle, dump_lie_bibundle),
    "fin_groupoid": (load_fin_groupoid, dump_fin_groupoid),
    "fin_functor": (load_fin_functor, dump_fin_functor),
    "fin_bibundle": (load_fin_bibundle, dump_fin_bibundle),
    "cocycle": (load_cocycle, dump_cocycle),
    "cell_list": (load_cell_list, dump_cell_list),
}


class Document:
    __slots__ = ("kind", "name", "value")

    def __init__(self, kind, name, value):
        self.kind, self.name, self.value = kind, name, value

    def __repr__(self):
        return f"Document({self.kind!r}, {self.name!r})"


def to_json(kind, name, value) -> dict:
    return {"version": VERSION, "kind": kind, "name": name, "payload": CODECS[kind][1](value)}


def dumps(kind, name, value) -> str:
    return render_json(to_json(kind, name, value)) + "\n"


def _inlinable(data) -> bool:
    if isinstance(data, list):
        return all(_inlinable(x) for x in data)
    if isinstance(data, dict):
        return not any(isinstance(v, (dict, list)) for v in data.values())
    return True


def render_json(data, indent=0, width=88) -> str:
    """Indented JSON; short lists of scalars, lists and flat dicts stay on one line."""
    flat = json.dumps(data, ensure_ascii=False)
    if not isinstance(data, (dict, list)) or not data:
        return flat
    if isinstance(data, list) and len(flat) + indent <= width and _inlinable(data):
        return flat
    pad = " " * (indent + 2)
    if isinstance(data, dict):
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {render_json(v, indent + 2, width)}"
                 for k, v in data.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    items = [pad + render_json(v, indent + 2, width) for v in data]
    return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"


def from_json(data) -> Document:
    version, kind, name, payload = _require(
        data, ["version", "kind", "name", "payload"], "document"
    )
    if version != VERSION:
        raise FormatError(f"unsupported format version {version!r}")
    if kind not in CODECS:
        raise FormatError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if not isinstance(name, str):
        raise FormatError("document name must be a string")
    try:
        value = CODECS[kind][0](payload)
    except (FormatError, SizeGuardError):
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise FormatError(f"{kind}: {exc}") from None
    return Document(kind, name, value)


def loads(text: str) -> Document:
    try:
        data = json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    return from_json(data)


def _no_float(text):
    raise FormatError(f"floating-point literal {text} is not exact; write it as 'p/q'")


def load_path(path) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)
