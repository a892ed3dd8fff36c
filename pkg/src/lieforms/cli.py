"""Command-line interface.

    lieforms COMMAND [INPUT] [--catalog NAME] [--param NAME=VALUE ...] [--format md|json]

INPUT is a plain-text document made of blocks; a block starts with `key:` at
the beginning of a line and may continue on indented lines:

    algebra: (0^3,12,13,23)          # Salamon tuple, or `complex n` + `dfj = ...` lines
    params:  t = 1/2                 # one `name = value` per line
    J:                               # 2n rows of rationals, J acting on vectors
      0 -1 0 0
      ...
    symplectic: 16+25+34
    dcomplex: +-+-                   # or `plus: 1, 4-2` / `minus: 2, 3` lines
    metric_frame: 1, 2, 3, 4          # orthonormal coframe for the de Rham Laplacian

Exit codes: 0 success, 1 parse error, 2 validation error, 3 unknown catalog
entry or command, 4 regression mismatch in `catalog run`.
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dfield

from . import __version__
from .catalog import Entry, UnknownEntry, catalog, names, parse_form
from .cohom import (DeRham, aeppli, bott_chern, complex_derham, deldelbar_lemma, dolbeault,
                    frolicher_report, massey_triple, varouchas, varouchas_checks)
from .cplx import CLASS_REPRESENTATIVES, ComplexStructure
from .exterior import Form
from .harmonic import harmonic_dims
from .lie import LieAlgebra, ParseError, ValidationError, parse_algebra
from .linalg import QQ, QQI, FieldMismatch, Matrix, Scalar
from .lizhang import plus_minus, pure_full_report, stage_blocks, type_subgroup

SCHEMA_VERSION = "1.0"

COMMANDS = ("validate", "betti", "hodge", "bottchern", "aeppli", "varouchas", "frolicher",
            "deldelbar", "harmonic", "lizhang", "symplectic", "dcomplex", "massey", "tables",
            "sweep", "catalog")

CHART_ORDER = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3),
               (3, 1), (2, 2), (1, 3), (3, 2), (2, 3)]


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# input documents


@dataclass
class InputDocument:
    algebra: str
    params: dict = dfield(default_factory=dict)
    J: list | None = None
    symplectic: str | None = None
    dcomplex: object = None
    metric_frame: list | None = None


BLOCKS = ("algebra", "params", "J", "symplectic", "dcomplex", "metric_frame")


def parse_input(text: str) -> InputDocument:
    blocks: dict = {}
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"^([A-Za-z_]+)\s*:(.*)$", line)
        if m and not raw[0].isspace():
            key = m.group(1)
            if key not in BLOCKS:
                raise ParseError(f"line {ln}: unknown block {key!r}")
            if key in blocks:
                raise ParseError(f"line {ln}: duplicate block {key!r}")
            blocks[key] = [m.group(2).strip()] if m.group(2).strip() else []
            current = key
        elif current is not None and raw[0].isspace():
            blocks[current].append(line.strip())
        else:
            raise ParseError(f"line {ln}: line outside any block: {line.strip()!r}")
    if "algebra" not in blocks or not blocks["algebra"]:
        raise ParseError("missing algebra block")
    doc = InputDocument("\n".join(blocks["algebra"]))
    for line in blocks.get("params", []):
        for item in line.split(","):
            if not item.strip():
                continue
            if "=" not in item:
                raise ParseError(f"parameter without value: {item.strip()!r}")
            k, v = item.split("=", 1)
            doc.params[k.strip()] = v.strip()
    if "J" in blocks:
        doc.J = [row.split() for row in blocks["J"]]
    if "symplectic" in blocks:
        doc.symplectic = " ".join(blocks["symplectic"])
    if "dcomplex" in blocks:
        lines = blocks["dcomplex"]
        if len(lines) == 1 and re.fullmatch(r"\(?[+\-]+\)?", lines[0]):
            doc.dcomplex = lines[0].strip("()")
        else:
            parts = {}
            for line in lines:
                if ":" not in line:
                    raise ParseError(f"expected plus: or minus: in dcomplex block, got {line!r}")
                k, v = line.split(":", 1)
                parts[k.strip()] = [x.strip() for x in v.split(",") if x.strip()]
            if set(parts) != {"plus", "minus"}:
                raise ParseError("dcomplex block needs plus: and minus: lines")
            doc.dcomplex = parts
    if "metric_frame" in blocks:
        doc.metric_frame = [x.strip() for x in ",".join(blocks["metric_frame"]).split(",") if x.strip()]
    return doc


def _scalar(text: str, field=QQ) -> Scalar:
    try:
        return field(text)
    except FieldMismatch as exc:
        raise ValidationError(str(exc)) from None
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {text!r}: {exc}") from None


def _form(text: str, n: int, field=QQ) -> Form:
    try:
        f = parse_form(text, n, field)
    except FieldMismatch as exc:
        raise ValidationError(str(exc)) from None
    except (ValueError, IndexError, ZeroDivisionError) as exc:
        raise ParseError(f"bad form {text!r}: {exc}") from None
    return f


def _vector(text: str, n: int) -> dict:
    f = _form(text, n)
    if f.terms and f.degrees() != {1}:
        raise ValidationError(f"{text!r} is not a vector")
    return {m[0]: c for m, c in f.terms.items()}


# ---------------------------------------------------------------------------
# structures under study


@dataclass
class Context:
    name: str
    algebra: LieAlgebra                 # real model when available
    native: LieAlgebra                  # algebra as presented (complex coframe or real)
    complex_builder: object = None
    omega: Form | None = None
    dcx_builder: object = None
    metric_frame: list | None = None
    entry: Entry | None = None
    _cs: object = None

    @property
    def complex(self) -> ComplexStructure:
        if self.complex_builder is None:
            raise ValidationError(f"{self.name} has no complex structure")
        if self._cs is None:
            self._cs = self.complex_builder()
        return self._cs

    @property
    def has_complex(self) -> bool:
        return self.complex_builder is not None

    @property
    def dcx(self):
        if self.dcx_builder is None:
            raise ValidationError(f"{self.name} has no D-complex structure")
        return self.dcx_builder()


def context_from_entry(e: Entry, structure: str | None = None) -> Context:
    def pick(d):
        if not d:
            return None
        if structure and structure in d:
            return structure
        return next(iter(d))

    cl, sl, dl = pick(e.complex), pick(e.symplectic), pick(e.dcomplex)
    ctx = Context(e.name, e.algebra, e.algebra, entry=e)
    if structure and structure not in {cl, sl, dl}:
        raise ValidationError(f"{e.name} has no structure labelled {structure!r}")
    if cl:
        ctx.complex_builder = lambda: e.complex_structure(cl)
        cs = e.complex_structure(cl)
        if cs.native:
            ctx.native = cs.cx
    if sl:
        ctx.omega = e.omega(sl)
    if dl:
        ctx.dcx_builder = lambda: e.dcx(dl)
    return ctx


def context_from_document(doc: InputDocument, params: dict, name: str = "input") -> Context:
    allp = dict(doc.params)
    allp.update(params)
    g = parse_algebra(doc.algebra, {k: _scalar(v, QQI) for k, v in allp.items()}, name=name)
    if g.presentation == "complex":
        cs = ComplexStructure.from_native(g, name=name)
        real = cs.real if cs.real is not None else g
        ctx = Context(name, real, g, complex_builder=lambda: cs)
    else:
        if g.field.gaussian:
            g = parse_algebra(doc.algebra, {k: _scalar(v, QQ) for k, v in allp.items()}, name=name)
        ctx = Context(name, g, g)
    n = ctx.algebra.n
    if doc.J is not None:
        if g.presentation == "complex":
            raise ValidationError("a J block needs a real (Salamon) algebra")
        if len(doc.J) != n or any(len(r) != n for r in doc.J):
            raise ValidationError(f"J must be a {n}x{n} matrix")
        J = Matrix.from_rows([[_scalar(x) for x in r] for r in doc.J], QQ)
        cs = ComplexStructure.from_J_matrix(ctx.algebra, J, "vectors", name=name)
        ctx.complex_builder = lambda: cs
    if doc.symplectic is not None:
        ctx.omega = _form(doc.symplectic, n)
    if doc.dcomplex is not None:
        from .dcx import DComplexStructure

        if isinstance(doc.dcomplex, str):
            k = DComplexStructure.from_signs(ctx.algebra, doc.dcomplex)
        else:
            plus = [_vector(v, n) for v in doc.dcomplex["plus"]]
            minus = [_vector(v, n) for v in doc.dcomplex["minus"]]
            k = DComplexStructure.from_splitting(ctx.algebra, plus, minus)
        ctx.dcx_builder = lambda: k
    if doc.metric_frame is not None:
        if len(doc.metric_frame) != n:
            raise ValidationError(f"metric_frame needs {n} one-forms")
        ctx.metric_frame = [_form(x, n) for x in doc.metric_frame]
    return ctx


def parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ParseError(f"--param expects NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _catalog_params(name: str, params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if name == "iwasawa_def" and k == "class":
            if v not in CLASS_REPRESENTATIVES:
                raise ValidationError(f"unknown deformation class {v!r}")
            out["sigma"] = CLASS_REPRESENTATIVES[v]
        elif name == "iwasawa_def" and k == "sigma":
            out["sigma"] = tuple(_scalar(x, QQI) for x in v.strip("()").split(";"))
        elif k == "n":
            try:
                out[k] = int(v)
            except ValueError:
                raise ParseError(f"n must be an integer, got {v!r}") from None
        else:
            out[k] = _scalar(v, QQI) if name == "iwasawa_def" else _scalar(v, QQ)
    return out


def load_context(args) -> Context:
    params = parse_params(args.param)
    if args.catalog:
        try:
            e = catalog(args.catalog, **_catalog_params(args.catalog, params))
        except UnknownEntry:
            raise CliError(3, f"unknown catalog entry {args.catalog!r}") from None
        return context_from_entry(e, args.structure)
    if not args.input:
        raise ParseError("no input: give an INPUT file or --catalog NAME")
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
    return context_from_document(parse_input(text), params, name=args.input.rsplit("/", 1)[-1])


# ---------------------------------------------------------------------------
# encoding


def key_str(k) -> str:
    if isinstance(k, tuple):
        if k and all(isinstance(x, tuple) for x in k):
            return ",".join(f"({key_str(x)})" for x in k)
        return ",".join(str(x) for x in k)
    return str(k)


def encode_form(f: Form, g: LieAlgebra | None = None) -> dict:
    text = g.fmt(f) if g is not None and g.n == f.n else str(f)
    return {"n": f.n, "field": f.field.name, "text": text,
            "terms": {",".join(str(i) for i in m): str(c) for m, c in f.sorted_terms()}}


def decode_form(d: dict) -> Form:
    fld = QQI if d["field"] == "qi" else QQ
    terms = {tuple(int(x) for x in k.split(",")) if k else (): Scalar.parse(v, fld.gaussian)
             for k, v in d["terms"].items()}
    return Form(d["n"], terms, fld)


def decode_scalar(s: str) -> Scalar:
    return Scalar.parse(s)


def encode(obj, g: LieAlgebra | None = None):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Scalar):
        return str(obj)
    if isinstance(obj, Form):
        return encode_form(obj, g)
    if isinstance(obj, dict):
        return {key_str(k): encode(v, g) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v, g) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def algebra_meta(ctx: Context) -> dict:
    g = ctx.algebra
    pinned = ctx.entry.pinned if ctx.entry else None
    fl = g.flags(pinned)
    return {
        "name": ctx.name,
        "dim": g.n,
        "presentation": ctx.native.presentation,
        "field": ctx.native.field.name,
        "structure_equations": ctx.native.to_salamon(),
        "flags": {"nilpotent": fl.nilpotent, "nilpotency_step": fl.nilpotency_step,
                  "solvable": fl.solvable, "completely_solvable": fl.completely_solvable,
                  "unimodular": fl.unimodular},
    }


def result_document(command: str, ctx: Context | None, result: dict, g: LieAlgebra | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": encode(result, g)}
    if ctx is not None:
        doc["algebra"] = algebra_meta(ctx)
    return doc


# ---------------------------------------------------------------------------
# commands


def _table(t, with_reps: bool, top: int) -> dict:
    out = {"dims": t.dims, "totals": t.totals(top)}
    if with_reps and t.reps is not None:
        out["reps"] = t.reps
    return out


def _field_algebra(ctx: Context, field: str) -> LieAlgebra:
    if field == "auto":
        return ctx.native
    if field == "q":
        if ctx.algebra.field.gaussian:
            raise ValidationError("no rational real model for this algebra")
        return ctx.algebra
    if ctx.native.field.gaussian:
        return ctx.native
    g = ctx.algebra
    return LieAlgebra(g.name, [s.with_field(QQI) for s in g.structure], QQI, "real")


def cmd_validate(ctx: Context, args) -> tuple:
    res = {"jacobi": True}
    if ctx.has_complex:
        c = ctx.complex
        res["complex"] = {"integrable": c.integrable,
                          "nijenhuis_witnesses": len(c.nijenhuis_witnesses()) if c.real is not None else 0}
    if ctx.omega is not None:
        from .sympl import SymplecticStructure

        closed = not ctx.algebra.d_form(ctx.omega)
        nondeg = ctx.algebra.n % 2 == 0 and bool(ctx.omega.power(ctx.algebra.n // 2))
        res["symplectic"] = {"closed": closed, "nondegenerate": nondeg}
        if closed and nondeg:
            SymplecticStructure(ctx.algebra, ctx.omega)
    if ctx.dcx_builder is not None:
        k = ctx.dcx
        res["dcomplex"] = {"integrable": k.integrable, "abelian": k.integrable and k.abelian}
    return res, ctx.algebra


def cmd_betti(ctx: Context, args) -> tuple:
    g = _field_algebra(ctx, args.field)
    dr = DeRham(g)
    res = {"field": g.field.name, "betti": dr.bettis()}
    if args.with_reps:
        res["reps"] = {k: dr.basis_forms(k) for k in range(g.n + 1)}
    return res, g


def _integrable(ctx: Context) -> ComplexStructure:
    c = ctx.complex
    c.require_integrable()
    return c


def cmd_hodge(ctx, args):
    c = _integrable(ctx)
    return _table(dolbeault(c, args.with_reps), args.with_reps, c.n), c.cx


def cmd_bottchern(ctx, args):
    c = _integrable(ctx)
    return _table(bott_chern(c, args.with_reps), args.with_reps, c.n), c.cx


def cmd_aeppli(ctx, args):
    c = _integrable(ctx)
    return _table(aeppli(c, args.with_reps), args.with_reps, c.n), c.cx


def cmd_varouchas(ctx, args):
    c = _integrable(ctx)
    v = varouchas(c)
    res = varouchas_checks(c)
    res["spaces"] = {x: getattr(v, x) for x in "abcdef"}
    return res, c.cx


def cmd_frolicher(ctx, args):
    c = _integrable(ctx)
    return frolicher_report(c), c.cx


def cmd_deldelbar(ctx, args):
    c = _integrable(ctx)
    return deldelbar_lemma(c), c.cx


def cmd_harmonic(ctx, args):
    kinds = ["deRham", "Dolbeault", "BottChern", "Aeppli"] if args.kind == "all" else [args.kind]
    res = {}
    for kind in kinds:
        if kind == "deRham":
            g = ctx.algebra
            if ctx.metric_frame is not None:
                g = g.substitute_coframe(ctx.metric_frame)
            h = harmonic_dims("deRham", g)
            sub = dict(enumerate(DeRham(g).bettis()))
        else:
            c = _integrable(ctx)
            h = harmonic_dims(kind, c)
            sub = {"Dolbeault": dolbeault, "BottChern": bott_chern, "Aeppli": aeppli}[kind](c).dims
        res[kind] = {"harmonic": h, "subquotient": sub, "agree": h == sub}
    return res, None


def _parse_S(text: str) -> list:
    pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
    if not pairs or re.sub(r"\(\s*\d+\s*,\s*\d+\s*\)|[\s,]", "", text):
        raise ParseError(f"bad bidegree list {text!r}")
    return [(int(p), int(q)) for p, q in pairs]


def cmd_lizhang(ctx, args):
    c = ctx.complex
    fld = {"r": "real", "q": "real", "auto": "real", "c": "complex", "qi": "complex"}[args.field]
    if args.S:
        S = _parse_S(args.S)
        k = args.degree if args.degree is not None else sum(S[0])
        t = type_subgroup(c, S, k, fld)
        dr = DeRham(c.real) if fld == "real" else complex_derham(c)
        return {"S": key_str(tuple(sorted(set(S)))), "degree": k, "field": fld, "dim": t.dim,
                "b": dr.betti(k)}, None
    res = {"field": fld, "stages": {}}
    stages = [args.degree] if args.degree is not None else range(1, c.n)
    for k, st in pure_full_report(c, stages, fld).items():
        res["stages"][k] = {"dims": st.dims, "b": st.b, "pure": st.pure, "full": st.full,
                            "pure_witness": st.pure_witness, "full_witness": st.full_witness}
    if c.n >= 2:
        res["h_plus"], res["h_minus"] = plus_minus(c, fld)
    g = c.real if fld == "real" else c.cx
    return res, g


def cmd_symplectic(ctx, args):
    from .sympl import SymplecticStructure

    if ctx.omega is None:
        raise ValidationError(f"{ctx.name} has no symplectic form")
    s = SymplecticStructure(ctx.algebra, ctx.omega)
    t = s.tseng_yau_tables(harmonic_check=True)
    subs = s.omega_subgroups()
    res = {
        "identities": s.operator_identities(),
        "betti": t.b,
        "H_dLambda": t.dLambda,
        "H_d+dLambda": t.d_plus_dLambda,
        "H_ddLambda": t.ddLambda,
        "harmonic_agree": t.harmonic_d_plus_dLambda == t.d_plus_dLambda and t.harmonic_ddLambda == t.ddLambda,
        "hlc": s.hlc_check(),
        "equivalence": t.equivalence(),
        "subgroups": {"dims": subs.dims, "direct": subs.direct, "full": subs.full},
    }
    if args.decompose:
        a = _form(args.decompose, s.dim)
        res["decomposition"] = [{"r": r, "primitive": B} for r, B in s.primitive_decompose(a)]
    return res, ctx.algebra


def cmd_dcomplex(ctx, args):
    k = ctx.dcx
    res = {"integrable": k.integrable}
    if not k.integrable:
        res["witness"] = k.integrability_witness()
        return res, ctx.algebra
    res["abelian"] = k.abelian
    res["commuting"] = k.commuting()
    res["steps"] = list(k.steps) if ctx.algebra.is_nilpotent() else None
    stages = [args.degree] if args.degree is not None else range(1, k.g.n)
    res["stages"] = {}
    for ell in stages:
        st = k.stage(ell)
        res["stages"][ell] = {"plus": st.plus, "minus": st.minus, "b": st.b, "pure": st.pure, "full": st.full,
                              "pure_witness": st.pure_witness, "full_witness": st.full_witness}
    res["lemmas"] = k.structural_lemmas()
    if ctx.omega is not None:
        res["dkahler"] = k.dkahler_check(ctx.omega)
    return res, ctx.algebra


def cmd_massey(ctx, args):
    g = _field_algebra(ctx, args.field)
    dr = DeRham(g)
    if args.triple:
        parts = [p for p in args.triple.split(";")]
        if len(parts) != 3:
            raise ParseError("--triple expects three forms separated by ';'")
        a, b, c = (_form(p, g.n, g.field) for p in parts)
        vanish, rep = massey_triple(g, a, b, c)
        return {"field": g.field.name, "vanishes": vanish, "representative": rep}, g
    basis = dr.basis_forms(1)
    nonzero = []
    total = 0
    for (i, a), (j, b), (l, c) in itertools.product(enumerate(basis), repeat=3):
        if not (dr.is_exact(a.wedge(b)) and dr.is_exact(b.wedge(c))):
            continue
        total += 1
        vanish, rep = massey_triple(g, a, b, c)
        if not vanish:
            nonzero.append({"classes": [a, b, c], "representative": rep})
    return {"field": g.field.name, "defined_triples": total, "nonzero_triples": len(nonzero),
            "examples": nonzero[:5]}, g


def cmd_tables(ctx, args):
    c = _integrable(ctx)
    return {"deRham": complex_derham(c).bettis(), "Dolbeault": dolbeault(c).dims,
            "BottChern": bott_chern(c).dims, "Aeppli": aeppli(c).dims}, None


HANDLERS = {
    "validate": cmd_validate, "betti": cmd_betti, "hodge": cmd_hodge, "bottchern": cmd_bottchern,
    "aeppli": cmd_aeppli, "varouchas": cmd_varouchas, "frolicher": cmd_frolicher,
    "deldelbar": cmd_deldelbar, "harmonic": cmd_harmonic, "lizhang": cmd_lizhang,
    "symplectic": cmd_symplectic, "dcomplex": cmd_dcomplex, "massey": cmd_massey, "tables": cmd_tables,
}


def run(command: str, ctx: Context, args) -> dict:
    res, g = HANDLERS[command](ctx, args)
    return result_document(command, ctx, res, g)


# ---------------------------------------------------------------------------
# sweeps


def _sweep_point(name: str, params: dict, command: str, args) -> dict:
    try:
        e = catalog(name, **_catalog_params(name, params))
        ctx = context_from_entry(e, args.structure)
        return run(command, ctx, args)
    except (ValidationError, FieldMismatch) as exc:
        return {"schema_version": SCHEMA_VERSION, "command": command, "error": str(exc)}


def cmd_sweep(args) -> dict:
    if not args.catalog:
        raise ParseError("sweep needs --catalog NAME")
    if not args.over or "=" not in args.over:
        raise ParseError("sweep needs --over NAME=V1,V2,...")
    pname, values = args.over.split("=", 1)
    pname = pname.strip()
    values = [v.strip() for v in values.split(",") if v.strip()]
    if args.catalog not in names():
        raise CliError(3, f"unknown catalog entry {args.catalog!r}")
    base = parse_params(args.param)
    command = args.command or ("dcomplex" if args.catalog.startswith("dcx") else "tables")
    if command not in HANDLERS:
        raise CliError(3, f"unknown command {command!r}")
    points = []
    for v in values:
        p = dict(base)
        p[pname] = v
        points.append(p)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            docs = list(ex.map(_sweep_point, [args.catalog] * len(points), points,
                               [command] * len(points), [args] * len(points)))
    else:
        docs = [_sweep_point(args.catalog, p, command, args) for p in points]
    summary = []
    for v, d in zip(values, docs):
        row = {"value": v}
        if "error" in d:
            row["error"] = d["error"]
        elif command == "dcomplex":
            st = d["result"].get("stages", {}).get(str(args.degree or 2))
            if st is None:
                row["integrable"] = d["result"]["integrable"]
            else:
                row.update({k: st[k] for k in ("plus", "minus", "b", "pure", "full")})
        elif command == "tables":
            row.update(d["result"])
        summary.append(row)
    return {"schema_version": SCHEMA_VERSION, "command": "sweep",
            "sweep": {"catalog": args.catalog, "parameter": pname, "values": values, "command": command},
            "summary": summary, "points": docs}


# ---------------------------------------------------------------------------
# markdown


def _md_table(header: list, rows: list) -> str:
    out = ["| " + " | ".join(str(h) for h in header) + " |", "|" + "---|" * len(header)]
    for r in rows:
        out.append("| " + " | ".join(_md_value(x) for x in r) + " |")
    return "\n".join(out)


def _md_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, dict) and "terms" in v and "text" in v:
        return v["text"]
    if isinstance(v, list):
        return "[" + ", ".join(_md_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_md_value(x)}" for k, x in v.items()) + "}"
    return str(v)


def _chart_label(v: str) -> str:
    bases = {k.split(".")[0] for k in CLASS_REPRESENTATIVES}
    return f"({v})" if v in CLASS_REPRESENTATIVES or v in bases else v


def _merge_rows(rows: list) -> list:
    """Merge rows with equal values; classes sharing a base letter collapse to it."""
    out = []
    for label, vals in rows:
        if out and out[-1][1] == vals:
            out[-1][0].append(label)
        else:
            out.append([[label], vals])
    merged = []
    for labels, vals in out:
        bases = []
        for lab in labels:
            base = lab.split(".")[0]
            full = [x for x in labels if x.split(".")[0] == base]
            cls = [k for k in CLASS_REPRESENTATIVES if k.split(".")[0] == base]
            name = base if sorted(full) == sorted(cls) and len(cls) > 1 else lab
            if name not in bases:
                bases.append(name)
        merged.append((", ".join(_chart_label(b) for b in bases), vals))
    return merged


def render_charts(rows: list) -> str:
    """rows: [(label, tables result dict)] -> the four charts in bidegree layout."""
    parts = []
    top = len(rows[0][1]["deRham"]) - 1
    dr = _merge_rows([(lab, r["deRham"][1:top]) for lab, r in rows])
    parts.append(_md_table(["H_dR"] + [f"b_{k}" for k in range(1, top)],
                           [[lab] + v for lab, v in dr]))
    for kind, title, merge_classes in (("Dolbeault", "H_dbar", True), ("BottChern", "H_BC", False),
                                       ("Aeppli", "H_A", False)):
        cols = [pq for pq in CHART_ORDER if key_str(pq) in rows[0][1][kind]] if top == 6 else \
            [tuple(int(x) for x in k.split(",")) for k in rows[0][1][kind]]
        cols = [pq for pq in cols if 0 < sum(pq) < top]
        data = [(lab, [r[kind][key_str(pq)] for pq in cols]) for lab, r in rows]
        data = _merge_rows(data) if merge_classes else [(_chart_label(lab), v) for lab, v in data]
        parts.append(_md_table([title] + [f"h^{{{p},{q}}}" for p, q in cols],
                               [[lab] + v for lab, v in data]))
    return "\n\n".join(parts) + "\n"


def _md_lines(prefix: str, v, out: list):
    if isinstance(v, dict) and not ("terms" in v and "text" in v):
        if v and all(re.fullmatch(r"\d+,\d+", k) for k in v) and all(isinstance(x, int) for x in v.values()):
            keys = list(v)
            out.append(f"{prefix}:")
            out.append(_md_table(["(p,q)"] + keys, [["dim"] + [v[k] for k in keys]]))
            return
        for k, x in v.items():
            _md_lines(f"{prefix}.{k}" if prefix else k, x, out)
        return
    if isinstance(v, list) and v and all(isinstance(x, dict) and "terms" not in x for x in v):
        keys = list(v[0])
        if all(list(x) == keys for x in v):
            out.append(f"{prefix}:")
            out.append(_md_table(keys, [[x[k] for k in keys] for x in v]))
            return
    out.append(f"{prefix}: {_md_value(v)}")


def render_md(doc: dict) -> str:
    command = doc["command"]
    if command == "tables" and "result" in doc:
        return render_charts([(doc["algebra"]["name"], doc["result"])])
    if command == "sweep":
        sw = doc["sweep"]
        head = f"sweep {sw['catalog']} over {sw['parameter']} = {', '.join(sw['values'])}\n\n"
        if sw["command"] == "tables" and all("error" not in r for r in doc["summary"]):
            return head + render_charts([(r["value"], r) for r in doc["summary"]])
        keys = []
        for r in doc["summary"]:
            for k in r:
                if k not in keys:
                    keys.append(k)
        return head + _md_table(keys, [[r.get(k) for k in keys] for r in doc["summary"]]) + "\n"
    lines = []
    if "algebra" in doc:
        a = doc["algebra"]
        eqs = "; ".join(a["structure_equations"].splitlines())
        lines.append(f"{command}: {a['name']} {eqs}")
    for k, v in doc.get("result", {}).items():
        _md_lines(k, v, lines)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# catalog subcommand


def _criterion(i: int):
    from . import regress

    return regress.CRITERIA[i - 1]()


def cmd_catalog(args) -> tuple:
    action = args.action or "list"
    if action == "list":
        return {"schema_version": SCHEMA_VERSION, "command": "catalog list", "entries": names()}, 0
    if action == "show":
        if not args.target:
            raise ParseError("catalog show needs an entry name")
        try:
            e = catalog(args.target, **_catalog_params(args.target, parse_params(args.param)))
        except UnknownEntry:
            raise CliError(3, f"unknown catalog entry {args.target!r}") from None
        ctx = context_from_entry(e)
        doc = result_document("catalog show", ctx, {
            "complex": list(e.complex), "symplectic": {k: v for k, v in e.symplectic.items()},
            "dcomplex": list(e.dcomplex), "params": {k: v for k, v in e.params.items() if k != "sigma"},
            "notes": e.notes}, e.algebra)
        return doc, 0
    if action == "run":
        nums = list(range(1, 11))
        if args.only:
            nums = [int(x) for x in args.only.split(",")]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                results = list(ex.map(_criterion, nums))
        else:
            results = [_criterion(i) for i in nums]
        doc = {"schema_version": SCHEMA_VERSION, "command": "catalog run",
               "criteria": [{"number": r.number, "title": r.title, "ok": r.ok, "checks": r.checks,
                             "failures": r.failures} for r in results],
               "ok": all(r.ok for r in results)}
        return doc, 0 if doc["ok"] else 4
    raise CliError(3, f"unknown catalog action {action!r}")


def _render_catalog(doc: dict) -> str:
    if doc["command"] == "catalog list":
        return "\n".join(doc["entries"]) + "\n"
    if doc["command"] == "catalog run":
        lines = []
        for c in doc["criteria"]:
            status = "PASS" if c["ok"] else "FAIL"
            lines.append(f"[{status}] criterion {c['number']}: {c['title']} ({c['checks']} checks)")
            for f in c["failures"]:
                lines.append(f"    {f}")
        lines.append("all criteria pass" if doc["ok"] else "regression FAILED")
        return "\n".join(lines) + "\n"
    return render_md(doc)


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lieforms", description="Cohomology of left-invariant structures on Lie algebras.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("command", help=" | ".join(COMMANDS))
    p.add_argument("input", nargs="?", help="input document (or catalog action for `catalog`)")
    p.add_argument("target", nargs="?", help="entry name for `catalog show`")
    p.add_argument("--catalog", help="use a built-in catalog entry")
    p.add_argument("--structure", help="structure label within the catalog entry")
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--with-reps", action="store_true", help="include cohomology representatives")
    p.add_argument("--field", choices=("auto", "q", "qi", "r", "c"), default="auto")
    p.add_argument("--S", help='bidegree list for lizhang, e.g. "(2,0),(0,2)"')
    p.add_argument("--degree", type=int)
    p.add_argument("--kind", choices=("deRham", "Dolbeault", "BottChern", "Aeppli", "all"), default="all")
    p.add_argument("--triple", help="three closed forms separated by ';' for massey")
    p.add_argument("--decompose", help="form to decompose into primitive parts (symplectic)")
    p.add_argument("--over", help="sweep parameter and values, NAME=V1,V2,...")
    p.add_argument("--command", dest="command_", help="command evaluated at each sweep point")
    p.add_argument("--only", help="comma-separated criterion numbers for `catalog run`")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", help="write the output to a file")
    return p


def _emit(text: str, args):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
            raise CliError(3, f"unknown command {argv[0]!r}; expected one of {', '.join(COMMANDS)}")
        args = build_parser().parse_args(argv)
        args.command_ = getattr(args, "command_", None)
        if args.command == "catalog":
            args.action, args.target = args.input, args.target
            doc, code = cmd_catalog(args)
            _emit(dumps(doc) if args.format == "json" else _render_catalog(doc), args)
            return code
        if args.command == "sweep":
            args.command = args.command_
            doc = cmd_sweep(args)
            _emit(dumps(doc) if args.format == "json" else render_md(doc), args)
            return 0
        if args.target:
            raise ParseError(f"unexpected argument {args.target!r}")
        if args.command in ("lizhang",) and args.field not in ("auto", "r", "c", "q", "qi"):
            raise ParseError(f"bad field {args.field!r}")
        if args.command != "lizhang" and args.field in ("r", "c"):
            args.field = {"r": "q", "c": "qi"}[args.field]
        ctx = load_context(args)
        doc = run(args.command, ctx, args)
        _emit(dumps(doc) if args.format == "json" else render_md(doc), args)
        return 0
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, FieldMismatch) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except UnknownEntry as exc:
        print(f"error: unknown catalog entry {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
