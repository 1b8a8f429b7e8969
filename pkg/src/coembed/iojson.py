"""JSON input documents and machine-readable reports.

One input format covers presentations, homs, ideals, Poisson structures,
star products and derivation targets; expression strings inside JSON use the
grammar of ``expressions``.  Reports are deterministic: fixed field order,
canonical polynomial printing, byte-identical across runs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import AlgebraPresentation, check_pbw_confluence
from .arith import FIELDS
from .derivations import Derivation
from .diffops import DiffOp
from .errors import InputError, NonConfluentError
from .expressions import parse_polynomial, poly_str, series_str
from .ideals import IdealPresentation
from .morphisms import AlgebraHom
from .poisson import PoissonStructure
from .starprod import BidiffOperator, StarProduct, exp_star

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "command", "status", "exact_arithmetic", "payload"],
    "properties": {
        "schema_version": {"const": 1},
        "command": {"type": "array", "items": {"type": "string"}},
        "status": {
            "enum": ["ok", "infeasible-within-bound", "axiom-failure", "error"]
        },
        "exact_arithmetic": {"const": True},
        "payload": {"type": "object"},
    },
    "additionalProperties": False,
}

EXIT_CODES = {"ok": 0, "infeasible-within-bound": 1, "axiom-failure": 1, "error": 2}


@dataclass
class Report:
    command: list
    status: str
    payload: dict
    schema_version: int = 1
    exact_arithmetic: bool = True

    def to_dict(self):
        return {
            "schema_version": self.schema_version,
            "command": list(self.command),
            "status": self.status,
            "exact_arithmetic": self.exact_arithmetic,
            "payload": self.payload,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def exit_code(self):
        return EXIT_CODES[self.status]


def render_text(report):
    lines = [
        f"command: {' '.join(report.command)}",
        f"status: {report.status}",
        "exact arithmetic: yes",
    ]
    lines.extend(_render_value("", report.payload))
    return "\n".join(lines)


def _render_value(prefix, value):
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            key = f"{prefix}{k}" if not prefix else f"{prefix}.{k}"
            out.extend(_render_value(key, v))
        return out
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [f"{prefix}: [{', '.join(str(v) for v in value)}]"]
        out = []
        for n, v in enumerate(value):
            out.extend(_render_value(f"{prefix}[{n}]", v))
        return out
    return [f"{prefix}: {value}"]


# -- building blocks -----------------------------------------------------------


def load_algebra(obj):
    for key in ("name", "kind", "scalars", "generators"):
        if key not in obj:
            raise InputError(f"algebra object lacks {key!r}")
    if obj["scalars"] not in FIELDS:
        raise InputError(f"unknown scalar field {obj['scalars']!r}")
    fld = FIELDS[obj["scalars"]]
    gens = tuple(obj["generators"])
    kind = obj["kind"]
    cover_kind = "free" if kind in ("free", "pbw") else "commutative"
    cover = AlgebraPresentation(obj["name"] + ".cover", cover_kind, gens, fld)
    relations = tuple(
        parse_polynomial(src, cover) for src in obj.get("relations", [])
    )
    algebra = AlgebraPresentation(obj["name"], kind, gens, fld, relations)
    if kind == "pbw":
        verdict = check_pbw_confluence(algebra)
        if not verdict.ok:
            triples = ", ".join(
                "*".join(algebra.generators[t] for t in (k, j, i))
                for k, j, i, _ in verdict.failures
            )
            raise NonConfluentError(
                f"presentation {obj['name']!r} is rejected: critical triples"
                f" {triples} do not resolve"
            )
    return algebra


@dataclass
class Document:
    algebras: dict = field(default_factory=dict)
    hom: AlgebraHom = None
    ideal: IdealPresentation = None
    kernel: IdealPresentation = None
    targets: list = field(default_factory=list)
    derivation: Derivation = None
    poisson: PoissonStructure = None
    restriction_target: Derivation = None
    star: StarProduct = None
    classify: object = None

    def single_algebra(self):
        if len(self.algebras) != 1:
            raise InputError("expected exactly one algebra in the input document")
        return next(iter(self.algebras.values()))


def load_document(data, order_override=None):
    if not isinstance(data, dict):
        raise InputError("input document must be a JSON object")
    doc = Document()
    algebra_objs = []
    if "algebra" in data:
        algebra_objs.append(data["algebra"])
    algebra_objs.extend(data.get("algebras", []))
    for obj in algebra_objs:
        algebra = load_algebra(obj)
        if obj["name"] in doc.algebras:
            raise InputError(f"duplicate algebra name {obj['name']!r}")
        doc.algebras[obj["name"]] = algebra

    if "hom" in data:
        doc.hom = _load_hom(data["hom"], doc)
    if "ideal" in data:
        doc.ideal = _load_ideal(data["ideal"], doc, default=None)
    if "kernel" in data:
        if doc.hom is None:
            raise InputError("'kernel' requires a 'hom' section")
        doc.kernel = _load_ideal(
            {"algebra": doc.hom.domain.name, **data["kernel"]}, doc, default=doc.hom.domain
        )
        doc.hom = AlgebraHom(
            doc.hom.domain, doc.hom.codomain, doc.hom.images, doc.hom.witnesses, doc.kernel
        )
    for obj in data.get("targets", []):
        base = doc.hom.codomain if doc.hom is not None else doc.single_algebra()
        doc.targets.append(
            (obj.get("name", f"target-{len(doc.targets)}"), load_derivation(obj, base))
        )
    if "derivation" in data:
        doc.derivation = load_derivation(data["derivation"], doc.single_algebra())
    if "poisson" in data:
        doc.poisson = _load_poisson(data["poisson"], doc)
    if "restriction" in data:
        if doc.poisson is None:
            raise InputError("'restriction' requires a 'poisson' section")
        sub = data["restriction"]
        if "ideal" in sub:
            doc.ideal = _load_ideal(sub["ideal"], doc, default=doc.poisson.algebra)
        if doc.ideal is None:
            raise InputError("'restriction' needs an ideal")
        doc.restriction_target = sub.get("target")  # resolved by the command
    if "star" in data:
        doc.star = _load_star(data["star"], doc, order_override)
    if "f" in data:
        base = doc.poisson.algebra if doc.poisson is not None else doc.single_algebra()
        doc.classify = parse_polynomial(data["f"], base)
    return doc


def _resolve_algebra(doc, name, default=None):
    if name is None:
        if default is not None:
            return default
        return doc.single_algebra()
    if name not in doc.algebras:
        raise InputError(f"unknown algebra name {name!r}")
    return doc.algebras[name]


def _load_hom(obj, doc):
    for key in ("domain", "codomain", "images"):
        if key not in obj:
            raise InputError(f"hom object lacks {key!r}")
    domain = _resolve_algebra(doc, obj["domain"])
    codomain = _resolve_algebra(doc, obj["codomain"])
    images = {g: parse_polynomial(src, codomain) for g, src in obj["images"].items()}
    witnesses = None
    if "witnesses" in obj:
        witnesses = {
            g: parse_polynomial(src, domain) for g, src in obj["witnesses"].items()
        }
    return AlgebraHom(domain, codomain, images, witnesses)


def _load_ideal(obj, doc, default):
    ambient = _resolve_algebra(doc, obj.get("algebra"), default)
    gens = tuple(parse_polynomial(src, ambient) for src in obj.get("generators", []))
    return IdealPresentation(ambient, gens)


def load_derivation(obj, algebra):
    if "images" not in obj:
        raise InputError("derivation object lacks 'images'")
    images = {}
    for g in algebra.generators:
        if g not in obj["images"]:
            raise InputError(f"derivation lacks an image for generator {g!r}")
        images[g] = parse_polynomial(obj["images"][g], algebra)
    extra = set(obj["images"]) - set(algebra.generators)
    if extra:
        raise InputError(f"derivation image for unknown generator {sorted(extra)[0]!r}")
    return Derivation.from_dict(algebra, images)


def _load_poisson(obj, doc):
    ambient = _resolve_algebra(doc, obj.get("algebra"))
    table = {}
    for comp in obj.get("components", []):
        if "pair" not in comp or "bracket" not in comp:
            raise InputError("poisson component needs 'pair' and 'bracket'")
        g1, g2 = comp["pair"]
        i, j = ambient.gen_index(g1), ambient.gen_index(g2)
        if i == j:
            raise InputError("poisson component pair must be distinct generators")
        value = parse_polynomial(comp["bracket"], ambient)
        if i > j:
            i, j, value = j, i, -value
        table[(i, j)] = value
    return PoissonStructure.from_dict(ambient, table)


def _load_star(obj, doc, order_override):
    if "order" not in obj and order_override is None:
        raise InputError("star object lacks 'order'")
    order = order_override if order_override is not None else obj["order"]
    ambient = _resolve_algebra(doc, obj.get("algebra"))
    if "exp" in obj:
        spec = obj["exp"]
        X = load_derivation({"images": spec["X"]}, ambient)
        Y = load_derivation({"images": spec["Y"]}, ambient)
        return exp_star(X, Y, order)
    if "operators" not in obj:
        raise InputError("star object needs 'exp' or 'operators'")
    operators = [BidiffOperator.multiplication(ambient)]
    by_k = {entry["k"]: entry for entry in obj["operators"]}
    for k in range(1, order + 1):
        entry = by_k.get(k)
        if entry is None:
            operators.append(BidiffOperator(ambient, {}))
            continue
        terms = {}
        for term in entry["terms"]:
            coeff = parse_polynomial(term["coeff"], ambient)
            key = (tuple(term["alpha"]), tuple(term["beta"]))
            terms[key] = terms.get(key, ambient.zero()) + coeff
        operators.append(BidiffOperator(ambient, terms))
    return StarProduct(ambient, order, tuple(operators))


# -- payload rendering ----------------------------------------------------------


def derivation_payload(D):
    return {g: poly_str(img) for g, img in zip(D.algebra.generators, D.images)}


def solve_report_payload(report):
    out = {
        "degree_bound": report.degree_bound,
        "status": report.status,
        "constraints": list(report.constraints),
        "dims": dict(report.dims),
        "basis": [derivation_payload(D) for D in report.basis],
    }
    if report.particular is not None:
        out["particular"] = derivation_payload(report.particular)
    if report.notes:
        out["notes"] = list(report.notes)
    return out


def series_payload(series, algebra):
    return series_str(series, algebra)
