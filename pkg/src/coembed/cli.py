"""Command-line driver.

Exit codes: 0 = ok, 1 = mathematical negative (infeasible within the bound,
or a failed axiom), 2 = malformed input or internal error.  Reports go to
stdout as JSON (default) or a text rendering of the same payload.
"""
from __future__ import annotations

import argparse
import json
import sys

from .derivations import is_inner, solve_derivations
from .errors import CoembedError
from .expressions import poly_str, series_str
from .fixtures import DEMOS
from .ideals import groebner_basis
from .iojson import (
    Report,
    derivation_payload,
    load_document,
    render_text,
    solve_report_payload,
)
from .kaehler import hom_der_correspondence, induced_map, kaehler_presentation
from .morphisms import check_hom
from .poisson import (
    QuotientRestriction,
    coisotropy_and_normalizer,
    jacobi_check,
    quotient_of,
    solve_poisson_vector_fields,
)
from .starprod import check_star_axioms, tangentiality_check


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coembed",
        description="Exact bounded-degree decision procedures for submanifold "
        "algebras: derivation lifting, Kaehler presentations, Poisson "
        "obstructions, and truncated star products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="JSON input document")
        p.add_argument("--max-degree", type=int, default=3, help="degree bound")
        p.add_argument("--order", type=int, default=None, help="hbar truncation order")
        p.add_argument("--output", choices=("json", "text"), default="json")

    common(sub.add_parser("check-presentation", help="validate presentations"))
    common(sub.add_parser("derivations", help="solve for derivations at a bound"))
    common(sub.add_parser("coembed", help="full lifting pipeline for targets"))
    common(sub.add_parser("inner", help="inner-derivation witness search"))
    common(sub.add_parser("kaehler", help="Kaehler presentation and correspondence"))
    common(sub.add_parser("poisson", help="Poisson solvers and coisotropy"))
    common(sub.add_parser("star", help="star-product axioms and tangentiality"))
    demo = sub.add_parser("demo", help="run a named built-in fixture")
    demo.add_argument("name", choices=sorted(DEMOS))
    common(demo, needs_input=False)
    return parser


def _load(args):
    with open(args.input) as fh:
        data = json.load(fh)
    return load_document(data, order_override=args.order)


def cmd_check_presentation(args):
    doc = _load(args)
    entries = []
    for name, algebra in doc.algebras.items():
        entry = {
            "name": name,
            "kind": algebra.kind,
            "generators": list(algebra.generators),
            "scalars": algebra.field.tag,
            "relations": [poly_str(r) for r in algebra.relations],
        }
        if algebra.kind == "pbw":
            entry["confluent"] = True  # non-confluent presentations fail to load
        if algebra.kind == "commutative" and algebra.relations:
            entry["groebner_basis"] = [poly_str(g) for g in algebra.groebner()]
        entries.append(entry)
    return "ok", {"algebras": entries}


def cmd_derivations(args):
    doc = _load(args)
    algebra = doc.single_algebra()
    report = solve_derivations(algebra, args.max_degree, preserve=doc.ideal)
    return "ok", {"algebra": algebra.name, "solve": solve_report_payload(report)}


def cmd_coembed(args):
    doc = _load(args)
    if doc.hom is None:
        raise CoembedError("coembed needs a 'hom' section")
    hom_report = check_hom(doc.hom)
    if not hom_report.ok:
        raise CoembedError(
            "hom fails verification on relations "
            + ", ".join(poly_str(r) for r, _ in hom_report.failing_relations)
        )
    payload = {
        "hom": {
            "domain": doc.hom.domain.name,
            "codomain": doc.hom.codomain.name,
            "check_hom": True,
        }
    }
    if doc.hom.kernel is not None:
        der_pi = solve_derivations(doc.hom.domain, args.max_degree, preserve=doc.hom.kernel)
        payload["der_pi"] = solve_report_payload(der_pi)
    verdicts = {}
    all_liftable = True
    for name, target in doc.targets:
        ladder = {}
        witness = None
        for d in range(1, args.max_degree + 1):
            report = solve_derivations(
                doc.hom.domain, d, preserve=doc.hom.kernel, pushforward=(doc.hom, target)
            )
            ladder[str(d)] = report.status
            if report.status == "affine-solution":
                witness = derivation_payload(report.particular)
                break
        liftable = witness is not None
        all_liftable = all_liftable and liftable
        verdicts[name] = {
            "liftable": liftable,
            "ladder": ladder,
        }
        if witness is not None:
            verdicts[name]["lift"] = witness
    payload["targets"] = verdicts
    status = "ok" if all_liftable else "infeasible-within-bound"
    return status, payload


def cmd_inner(args):
    doc = _load(args)
    algebra = doc.single_algebra()
    if doc.derivation is None:
        raise CoembedError("inner needs a 'derivation' section")
    witness = is_inner(algebra, doc.derivation, args.max_degree)
    payload = {
        "algebra": algebra.name,
        "derivation": derivation_payload(doc.derivation),
        "degree_bound": args.max_degree,
    }
    if witness is None:
        payload["witness"] = "none-within-bound"
        return "infeasible-within-bound", payload
    payload["witness"] = poly_str(witness)
    return "ok", payload


def cmd_kaehler(args):
    doc = _load(args)
    if doc.hom is not None:
        matrix = induced_map(doc.hom)
        return "ok", {
            "induced_map_rows": [
                {"dx": doc.hom.domain.generators[i], "row": [poly_str(e) for e in row]}
                for i, row in enumerate(matrix)
            ]
        }
    algebra = doc.single_algebra()
    presentation = kaehler_presentation(algebra)
    correspondence = hom_der_correspondence(presentation, args.max_degree)
    return "ok", {
        "algebra": algebra.name,
        "relation_rows": [[poly_str(e) for e in row] for row in presentation.rows],
        "correspondence": {
            "degree_bound": correspondence.degree_bound,
            "dims": dict(correspondence.dims),
            "module_maps": [
                [poly_str(e) for e in entry] for entry in correspondence.module_maps
            ],
            "derivations": [derivation_payload(D) for D in correspondence.derivations],
        },
    }


def cmd_poisson(args):
    doc = _load(args)
    if doc.poisson is None:
        raise CoembedError("poisson needs a 'poisson' section")
    P = doc.poisson
    jacobi = jacobi_check(P)
    payload = {
        "algebra": P.algebra.name,
        "components": {
            f"{{{P.algebra.generators[i]},{P.algebra.generators[j]}}}": poly_str(p)
            for (i, j), p in P.components
        },
        "jacobi": jacobi.ok,
    }
    if not jacobi.ok:
        payload["jacobi_failures"] = [
            {
                "triple": [P.algebra.generators[t] for t in (i, j, k)],
                "jacobiator": poly_str(value),
            }
            for i, j, k, value in jacobi.failures
        ]
        return "axiom-failure", payload
    status = "ok"
    if doc.restriction_target is not None:
        quotient, qhom = quotient_of(P.algebra, doc.ideal)
        from .iojson import load_derivation

        target = load_derivation(doc.restriction_target, quotient)
        report = solve_poisson_vector_fields(
            P, args.max_degree, QuotientRestriction(doc.ideal, qhom, target)
        )
        payload["restricted_solve"] = solve_report_payload(report)
        if report.status == "infeasible-within-bound":
            status = "infeasible-within-bound"
    else:
        report = solve_poisson_vector_fields(P, args.max_degree)
        payload["poisson_fields"] = solve_report_payload(report)
    if doc.ideal is not None:
        rep = coisotropy_and_normalizer(P, doc.ideal, doc.classify)
        payload["coisotropic"] = rep.coisotropic
        if doc.classify is not None:
            payload["classification"] = {
                "f": poly_str(doc.classify),
                "verdict": rep.classification,
            }
    return status, payload


def cmd_star(args):
    doc = _load(args)
    if doc.star is None:
        raise CoembedError("star needs a 'star' section")
    star = doc.star
    A = star.algebra
    axioms = check_star_axioms(star)
    payload = {
        "algebra": A.name,
        "order": star.order,
        "axioms": {
            "unit_left": axioms.unit_left_ok,
            "unit_right": axioms.unit_right_ok,
            "associativity": axioms.associativity_ok,
            "c1_antisymmetric": axioms.c1_antisymmetric,
            "probe_degree": axioms.probe_degree,
        },
    }
    if axioms.associativity_witness is not None:
        f, g, h, order, defect = axioms.associativity_witness
        payload["associativity_witness"] = {
            "triple": [poly_str(f), poly_str(g), poly_str(h)],
            "hbar_order": order,
            "defect": poly_str(defect),
        }
    if axioms.poisson is not None:
        payload["extracted_bracket"] = {
            f"{{{A.generators[i]},{A.generators[j]}}}": poly_str(p)
            for (i, j), p in axioms.poisson.components
        }
    if A.ngens >= 2:
        x, y = A.gen(0), A.gen(1)
        commutator = star.multiply_polys(x, y) - star.multiply_polys(y, x)
        payload["commutator"] = {
            "pair": [A.generators[0], A.generators[1]],
            "value": series_str(commutator, A),
        }
    if doc.ideal is not None:
        tang = tangentiality_check(star, doc.ideal, args.max_degree)
        payload["tangential"] = tang.ok
        if not tang.ok:
            k, j, f, value = tang.failures[0]
            payload["tangentiality_failure"] = {
                "k": k,
                "ideal_element": poly_str(j),
                "probe": poly_str(f),
                "value": poly_str(value),
            }
    status = "ok" if axioms.ok else "axiom-failure"
    return status, payload


def cmd_demo(args):
    runner = DEMOS[args.name]
    return "ok", runner()


HANDLERS = {
    "check-presentation": cmd_check_presentation,
    "derivations": cmd_derivations,
    "coembed": cmd_coembed,
    "inner": cmd_inner,
    "kaehler": cmd_kaehler,
    "poisson": cmd_poisson,
    "star": cmd_star,
    "demo": cmd_demo,
}


def run_command(argv):
    """Parse argv, execute, and return (Report, output mode); prints nothing."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, payload = HANDLERS[args.command](args)
        report = Report(list(argv), status, payload)
    except (CoembedError, OSError, json.JSONDecodeError) as exc:
        report = Report(list(argv), "error", {"error": str(exc)})
    return report, args.output


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    report, mode = run_command(argv)
    print(report.to_json() if mode == "json" else render_text(report))
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
