"""Built-in fixtures reproducing the worked examples end to end.

Each demo runs a pipeline, asserts its expected verdicts (the demos double as
reproduction harnesses: a mismatch is an internal error, not a negative
result), and returns a payload of expression strings.
"""
from __future__ import annotations

from .algebra import AlgebraPresentation
from .arith import QI, QQ
from .derivations import (
    Derivation,
    check_derivation,
    free_lift,
    is_inner,
    pushforward,
    solve_derivations,
)
from .errors import CoembedError
from .expressions import parse_polynomial as poly
from .expressions import poly_str, series_str
from .ideals import IdealPresentation, ideal_member
from .iojson import derivation_payload, solve_report_payload
from .morphisms import AlgebraHom, check_hom
from .poisson import (
    PoissonStructure,
    QuotientRestriction,
    coisotropy_and_normalizer,
    hamiltonian_vector_field,
    is_hamiltonian,
    jacobi_check,
    quotient_of,
    solve_poisson_vector_fields,
)
from .starprod import (
    check_star_axioms,
    exp_star,
    extract_poisson_structure,
    solve_order1_derivations,
    tangentiality_check,
)


def _expect(condition, message):
    if not condition:
        raise CoembedError(f"demo expectation failed: {message}")


# -- fixture builders (shared with the test suite) ---------------------------


def dual_numbers_setup():
    """Q[t] onto the dual numbers Q[e]/<e^2> via t -> e."""
    A = AlgebraPresentation("Qt", "commutative", ("t",), QQ)
    cover = AlgebraPresentation("Dual.cover", "commutative", ("e",), QQ)
    B = AlgebraPresentation("Dual", "commutative", ("e",), QQ, (poly("e^2", cover),))
    kernel = IdealPresentation(A, (poly("t^2", A),))
    hom = AlgebraHom(A, B, {"t": poly("e", B)}, {"e": poly("t", A)}, kernel)
    return A, B, hom


def double_point_setup():
    """The ordinary double point Q[x,y]/<xy> onto its axis Q[x]."""
    cover = AlgebraPresentation("DP.cover", "commutative", ("x", "y"), QQ)
    A = AlgebraPresentation("DP", "commutative", ("x", "y"), QQ, (poly("x*y", cover),))
    B = AlgebraPresentation("Axis", "commutative", ("x",), QQ)
    kernel = IdealPresentation(A, (poly("y", A),))
    hom = AlgebraHom(A, B, {"x": poly("x", B), "y": poly("0", B)}, {"x": poly("x", A)}, kernel)
    return A, B, hom


def free_pair_setup():
    """The free algebra Q<x,y> onto Q[x,y]; kernel = commutator ideal."""
    F = AlgebraPresentation("Free2", "free", ("x", "y"), QQ)
    C = AlgebraPresentation("Comm2", "commutative", ("x", "y"), QQ)
    kernel = IdealPresentation(F, (poly("x*y - y*x", F),))
    hom = AlgebraHom(
        F, C,
        {"x": poly("x", C), "y": poly("y", C)},
        {"x": poly("x", F), "y": poly("y", F)},
        kernel,
    )
    return F, C, hom


def usb2_setup():
    """U(sb(2,R)) with [H,E] = E onto Q[x] via H -> x, E -> 0."""
    cover = AlgebraPresentation("U.cover", "free", ("H", "E"), QQ)
    U = AlgebraPresentation("Usb2", "pbw", ("H", "E"), QQ, (poly("E*H - H*E + E", cover),))
    B = AlgebraPresentation("Qx", "commutative", ("x",), QQ)
    kernel = IdealPresentation(U, (poly("E", U),))
    hom = AlgebraHom(U, B, {"H": poly("x", B), "E": poly("0", B)}, {"x": poly("H", U)}, kernel)
    return U, B, hom


def kminstar_setup(order=2):
    """Weyl-type star product of X = d/dx, Y = y d/dy on Q(i)[x,y]."""
    P = AlgebraPresentation("PlaneQi", "commutative", ("x", "y"), QI)
    X = Derivation(P, (poly("1", P), poly("0", P)))
    Y = Derivation(P, (poly("0", P), poly("y", P)))
    return P, exp_star(X, Y, order)


def symplectic_plane():
    """{x, y} = 1 on Q[x,y]."""
    P = AlgebraPresentation("Plane", "commutative", ("x", "y"), QQ)
    return P, PoissonStructure.from_dict(P, {(0, 1): P.one()})


# -- demos ---------------------------------------------------------------------


def demo_dual_numbers(max_degree=3):
    A, B, hom = dual_numbers_setup()
    _expect(check_hom(hom).ok, "quotient map onto the dual numbers is a hom")
    target = Derivation(B, (poly("e", B),))
    lift = solve_derivations(A, 2, preserve=hom.kernel, pushforward=(hom, target))
    _expect(lift.status == "affine-solution", "e*d/de lifts")
    _expect(lift.particular.images[0] == poly("t", A), "particular lift is t*d/dt")
    der_pi = solve_derivations(A, max_degree, preserve=hom.kernel)
    _expect(
        all(D.images[0].constant() == 0 for D in der_pi.basis),
        "Der_pi images vanish at the origin",
    )
    return {
        "map": {"t": poly_str(hom.images[0])},
        "target": "e*d/de",
        "lift": solve_report_payload(lift),
        "der_pi": solve_report_payload(der_pi),
        "all_der_pi_images_vanish_at_0": True,
    }


def demo_double_point(max_degree=3, ladder_top=6):
    A, B, hom = double_point_setup()
    _expect(check_hom(hom).ok, "projection to the axis is a hom")
    der = solve_derivations(A, max_degree)
    ideal_x = IdealPresentation(A, (poly("x", A),))
    ideal_y = IdealPresentation(A, (poly("y", A),))
    memberships = all(
        ideal_member(ideal_x, D.images[0]) and ideal_member(ideal_y, D.images[1])
        for D in der.basis
    )
    _expect(memberships, "every basis element has D(x) in <x> and D(y) in <y>")
    good = Derivation(B, (poly("x", B),))
    bad = Derivation(B, (poly("1", B),))
    good_report = solve_derivations(A, max_degree, preserve=hom.kernel, pushforward=(hom, good))
    _expect(good_report.status == "affine-solution", "x*d/dx lifts")
    ladder = {}
    for d in range(1, ladder_top + 1):
        r = solve_derivations(A, d, preserve=hom.kernel, pushforward=(hom, bad))
        ladder[str(d)] = r.status
        _expect(r.status == "infeasible-within-bound", f"d/dx is unliftable at degree {d}")
    return {
        "derivations": solve_report_payload(der),
        "basis_images_in_ideals": memberships,
        "target x*d/dx": solve_report_payload(good_report),
        "target d/dx ladder": ladder,
    }


def demo_free_algebra(max_degree=3):
    F, C, hom = free_pair_setup()
    _expect(check_hom(hom).ok, "abelianization is a hom")
    der = solve_derivations(F, max_degree)
    words = sum(2 ** n for n in range(max_degree + 1))
    _expect(der.dims["dim"] == 2 * words, "Der(F) has dimension 2 * #words")
    ddx = Derivation(C, (poly("1", C), poly("0", C)))
    xddy = Derivation(C, (poly("0", C), poly("x", C)))
    lifts = {}
    for name, target in (("d/dx", ddx), ("x*d/dy", xddy)):
        lifted = free_lift(hom, target)
        back = pushforward(lifted, hom)
        _expect(back.images == target.images, f"free lift of {name} round-trips")
        lifts[name] = derivation_payload(lifted)
    return {
        "dimension": der.dims,
        "expected_dimension": 2 * words,
        "free_lifts": lifts,
    }


def demo_usb2(ladder_top=4):
    U, B, hom = usb2_setup()
    _expect(check_hom(hom).ok, "pi(H)=x, pi(E)=0 is a hom")
    target = Derivation(B, (poly("x", B),))
    ladder = {}
    for d in range(1, ladder_top + 1):
        r = solve_derivations(U, d, preserve=hom.kernel, pushforward=(hom, target))
        ladder[str(d)] = r.status
        _expect(r.status == "infeasible-within-bound", f"x*d/dx is unliftable at degree {d}")
    ad_h = Derivation(U, (poly("0", U), poly("E", U)))
    _expect(check_derivation(ad_h).ok, "[H,-] is a derivation")
    pushed = pushforward(ad_h, hom)
    _expect(pushed.is_zero(), "pushforward of [H,-] is zero")
    witness = is_inner(U, ad_h, 1)
    _expect(witness == poly("H", U), "[H,-] is inner with witness H")
    return {
        "check_hom": True,
        "target x*d/dx ladder": ladder,
        "pushforward of [H,-]": derivation_payload(pushed),
        "inner witness for [H,-]": poly_str(witness),
    }


def demo_kappa_minkowski(order=2, probe_degree=3, tangency_degree=4):
    P, star = kminstar_setup(order)
    axioms = check_star_axioms(star, probe_degree)
    _expect(axioms.ok, "star axioms hold")
    bracket = axioms.poisson
    _expect(bracket.component(0, 1) == poly("y", P), "extracted bracket is {x,y} = y")
    ideal_y = IdealPresentation(P, (poly("y", P),))
    tang = tangentiality_check(star, ideal_y, tangency_degree)
    _expect(tang.ok, "star is tangential to <y>")
    commutator = star.multiply_polys(poly("x", P), poly("y", P)) - star.multiply_polys(
        poly("y", P), poly("x", P)
    )
    from .expressions import parse_series

    _expect(
        commutator == parse_series("2*i*y*h", P, order),
        "x*y - y*x = 2*i*h*y",
    )
    quotient, qhom = quotient_of(P, ideal_y, "AxisQi")
    target_bad = Derivation.from_dict(quotient, {"x": poly("x", quotient), "y": poly("0", quotient)})
    target_good = Derivation.from_dict(quotient, {"x": poly("1", quotient), "y": poly("0", quotient)})
    obstruction = {}
    for d in range(1, 6):
        r = solve_poisson_vector_fields(
            bracket, d, QuotientRestriction(ideal_y, qhom, target_bad)
        )
        obstruction[str(d)] = r.status
        _expect(r.status == "infeasible-within-bound", f"x*d/dx does not extend at degree {d}")
    feasible = solve_poisson_vector_fields(
        bracket, 2, QuotientRestriction(ideal_y, qhom, target_good)
    )
    _expect(feasible.status == "affine-solution", "the constant field d/dx extends")
    _, star1 = kminstar_setup(1)
    order1 = {}
    for d in (1, 2, 3):
        rep = solve_order1_derivations(star1, d)
        order1[str(d)] = dict(rep.dims)
    return {
        "axioms": {
            "unit_left": axioms.unit_left_ok,
            "unit_right": axioms.unit_right_ok,
            "associativity": axioms.associativity_ok,
            "c1_antisymmetric": axioms.c1_antisymmetric,
            "probe_degree": axioms.probe_degree,
        },
        "extracted_bracket {x,y}": poly_str(bracket.component(0, 1)),
        "tangential_to <y>": tang.ok,
        "commutator x*y - y*x": series_str(commutator, P),
        "obstruction x*d/dx ladder": obstruction,
        "constant field d/dx": feasible.status,
        "order1_derivation_dims": order1,
    }


def demo_coisotropic_line():
    P, sympl = symplectic_plane()
    _expect(jacobi_check(sympl).ok, "symplectic plane satisfies Jacobi")
    ideal_y = IdealPresentation(P, (poly("y", P),))
    classifications = {}
    for src, expected in (("x", "outside"), ("y^2", "in-ideal"), ("y + 1", "in-normalizer")):
        rep = coisotropy_and_normalizer(sympl, ideal_y, poly(src, P))
        _expect(rep.coisotropic, "<y> is coisotropic in the symplectic plane")
        _expect(rep.classification == expected, f"{src} classifies as {expected}")
        classifications[src] = rep.classification
    Pq, kmin = kminstar_setup(1)
    bracket = extract_poisson_structure(kmin)
    ideal_yq = IdealPresentation(Pq, (poly("y", Pq),))
    rep = coisotropy_and_normalizer(bracket, ideal_yq, poly("x", Pq))
    _expect(rep.coisotropic and rep.classification == "in-normalizer",
            "<y> is a Poisson ideal for {x,y} = y, so x normalizes")
    field = Derivation(P, (poly("x", P), poly("-y", P)))
    potential = is_hamiltonian(sympl, field, 2)
    _expect(potential == poly("-x*y", P), "x*d/dx - y*d/dy has potential -x*y")
    non_f = is_hamiltonian(sympl, Derivation(P, (poly("x", P), poly("y", P))), 4)
    _expect(non_f is None, "the Euler field is not Hamiltonian")
    ham = hamiltonian_vector_field(sympl, poly("-x*y", P))
    _expect(ham.images == field.images, "X_{-xy} recovers the field")
    return {
        "coisotropic <y> (symplectic plane)": True,
        "classification": classifications,
        "poisson-ideal case {x,y}=y, f=x": rep.classification,
        "hamiltonian potential of x*d/dx - y*d/dy": poly_str(potential),
        "euler field x*d/dx + y*d/dy": "none-within-bound",
    }


DEMOS = {
    "dual-numbers": demo_dual_numbers,
    "double-point": demo_double_point,
    "free-algebra": demo_free_algebra,
    "usb2": demo_usb2,
    "kappa-minkowski": demo_kappa_minkowski,
    "coisotropic-line": demo_coisotropic_line,
}
