"""Built-in, parameterized presentations.

Each entry builds an AlgebraPresentation from a parameter association and
ships with the confluence status its tests pin down.  Naming follows the
ASCII convention of the DSL (eta, tau, taustar, xi, kplus, hD, ...).

The polynomial sl2 deformation takes the free polynomial h0 as a list of
rational coefficients (constant first, degree <= 8); the quantized-disk
entries keep qR, q as formal scalars, so all results are generic in them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingParameter, UnknownKey
from .ratfunc import ONE, RatFunc, Substitution, automorphism
from .rewrite import AlgebraPresentation, commutator_rules

MAX_H0_DEGREE = 8


def _h0_coeffs(params: dict) -> list:
    raw = params.get("h0", [1])
    if isinstance(raw, (int, Fraction)):
        raw = [raw]
    coeffs = [Fraction(c) for c in raw]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise MissingParameter("h0 must be a nonzero polynomial")
    if len(coeffs) - 1 > MAX_H0_DEGREE:
        raise MissingParameter(f"h0 degree bounded by {MAX_H0_DEGREE}")
    return coeffs


def _poly_of(coeffs, value: RatFunc) -> RatFunc:
    acc = RatFunc.const(0)
    for k, c in enumerate(coeffs):
        if c:
            acc = acc + RatFunc.const(c) * value**k
    return acc


def build_nonlinear_sl2(params: dict) -> AlgebraPresentation:
    h0 = _h0_coeffs(params)
    gens = ("e_m1", "e_0", "e_1")
    # [e_1, e_m1] = e_0 h0(e_0): words e_0^(k+1)
    top = {("e_0",) * (k + 1): c for k, c in enumerate(h0) if c}
    rules = commutator_rules(
        gens,
        {
            ("e_0", "e_m1"): {("e_m1",): 1},
            ("e_1", "e_0"): {("e_1",): 1},
            ("e_1", "e_m1"): top,
        },
    )
    return AlgebraPresentation(
        "nonlinear_sl2", gens, rules, quadratic=(len(h0) <= 2)
    )


def build_nonlinear_sl2_linearization(params: dict) -> AlgebraPresentation:
    h0 = _h0_coeffs(params)
    eta = RatFunc.var("eta")
    gens = ("a_m1", "a_0", "a_1")
    rules = commutator_rules(
        gens,
        {
            ("a_0", "a_m1"): {("a_m1",): 1},
            ("a_1", "a_0"): {("a_1",): 1},
            ("a_1", "a_m1"): {("a_0",): _poly_of(h0, eta)},
        },
    )
    sigma = {
        "a_m1": automorphism({"eta": eta - 1}),
        "a_0": Substitution.identity(),
        "a_1": automorphism({"eta": eta + 1}),
    }
    return AlgebraPresentation(
        "nonlinear_sl2_linearization", gens, rules, sigma=sigma, coeff_vars=("eta",)
    )


def build_uq_sl2(params: dict) -> AlgebraPresentation:
    q = RatFunc.var("q")
    kp, km = RatFunc.var("kplus"), RatFunc.var("kminus")
    gens = ("e_m1", "e_0", "e_1")
    rules = commutator_rules(
        gens,
        {
            ("e_0", "e_m1"): {("e_m1",): 1},
            ("e_1", "e_0"): {("e_1",): 1},
            ("e_1", "e_m1"): {(): kp - km},
        },
    )
    sigma = {
        "e_m1": automorphism({"kplus": kp / q, "kminus": q * km}),
        "e_0": Substitution.identity(),
        "e_1": automorphism({"kplus": q * kp, "kminus": km / q}),
    }
    return AlgebraPresentation(
        "uq_sl2", gens, rules, sigma=sigma,
        coeff_vars=("kplus", "kminus"), scalars=("q",),
    )


def build_uq_sl2_linearization(params: dict) -> AlgebraPresentation:
    q = RatFunc.var("q")
    ep, em = RatFunc.var("etaplus"), RatFunc.var("etaminus")
    gens = ("a_m1", "a_0", "a_1")
    rules = commutator_rules(
        gens,
        {
            ("a_0", "a_m1"): {("a_m1",): 1},
            ("a_1", "a_0"): {("a_1",): 1},
            ("a_1", "a_m1"): {(): ep - em},
        },
    )
    sigma = {
        "a_m1": automorphism({"etaplus": ep / q, "etaminus": q * em}),
        "a_0": Substitution.identity(),
        "a_1": automorphism({"etaplus": q * ep, "etaminus": em / q}),
    }
    return AlgebraPresentation(
        "uq_sl2_linearization", gens, rules, sigma=sigma,
        coeff_vars=("etaplus", "etaminus"), scalars=("q",),
    )


def build_heisenberg(params: dict) -> AlgebraPresentation:
    gens = ("p", "q", "r")
    rules = commutator_rules(gens, {("q", "p"): {("r",): -1}})
    return AlgebraPresentation("heisenberg", gens, rules)


def build_osc(params: dict) -> AlgebraPresentation:
    gens = ("p", "q", "r", "eps")
    rules = commutator_rules(
        gens,
        {
            ("q", "p"): {("r",): -1},
            ("eps", "p"): {("p",): -1},
            ("eps", "q"): {("q",): 1},
        },
    )
    return AlgebraPresentation("osc", gens, rules)


def build_osc_localized(params: dict) -> AlgebraPresentation:
    eps = RatFunc.var("eps")
    gens = ("p", "q", "r")
    rules = commutator_rules(gens, {("q", "p"): {("r",): -1}})
    sigma = {
        "p": automorphism({"eps": eps + 1}),
        "q": automorphism({"eps": eps - 1}),
        "r": Substitution.identity(),
    }
    return AlgebraPresentation(
        "osc_localized", gens, rules, sigma=sigma, coeff_vars=("eps",)
    )


def _lobachevskii_sigma():
    eta = RatFunc.var("eta")
    return {
        "tau": automorphism({"eta": eta / (1 + eta)}),
        "taustar": automorphism({"eta": eta / (1 - eta)}),
    }


def build_lobachevskii_lin1(params: dict) -> AlgebraPresentation:
    eta, qr = RatFunc.var("eta"), RatFunc.var("qR")
    gens = ("taustar", "tau")
    rules = {(1, 0): {(0, 1): ONE, (): eta**2 / (qr * (1 - eta))}}
    return AlgebraPresentation(
        "lobachevskii_lin1", gens, rules, sigma=_lobachevskii_sigma(),
        coeff_vars=("eta",), scalars=("qR",),
    )


def build_lobachevskii_lin2(params: dict) -> AlgebraPresentation:
    eta = RatFunc.var("eta")
    gens = ("taustar", "tau")
    rules = {(1, 0): {(0, 1): 1 - eta, (): eta}}
    return AlgebraPresentation(
        "lobachevskii_lin2", gens, rules, sigma=_lobachevskii_sigma(),
        coeff_vars=("eta",),
    )


def build_lobachevskii_lin2_xi(params: dict) -> AlgebraPresentation:
    # xi plays the role of an inverted disk coordinate; it is kept as an
    # invertible coefficient (xi tau tau* - (xi-1) tau* tau = 1 cannot be
    # re-solved for tau tau* inside polynomial words: the normal form of
    # tau tau* is (1 - 1/xi) tau* tau + 1/xi, which needs 1/xi).
    xi = RatFunc.var("xi")
    gens = ("taustar", "tau")
    rules = {(1, 0): {(0, 1): (xi - 1) / xi, (): 1 / xi}}
    sigma = {
        "tau": automorphism({"xi": xi + 1}),
        "taustar": automorphism({"xi": xi - 1}),
    }
    return AlgebraPresentation(
        "lobachevskii_lin2_xi", gens, rules, sigma=sigma, coeff_vars=("xi",)
    )


def build_u_sl2_sl2_localized(params: dict) -> AlgebraPresentation:
    hD = RatFunc.var("hD")
    gens = ("fD", "fd", "hd", "ed", "eD")
    rules = commutator_rules(
        gens,
        {
            ("hd", "fD"): {("fd",): -2},
            ("hd", "fd"): {("fD",): -2},
            ("ed", "fD"): {("hd",): 1},
            ("ed", "fd"): {(): hD},
            ("ed", "hd"): {("eD",): -2},
            ("eD", "fD"): {(): hD},
            ("eD", "fd"): {("hd",): 1},
            ("eD", "hd"): {("ed",): -2},
        },
    )
    shift_down = automorphism({"hD": hD - 2})
    shift_up = automorphism({"hD": hD + 2})
    sigma = {
        "eD": shift_down,
        "ed": shift_down,
        "hd": Substitution.identity(),
        "fD": shift_up,
        "fd": shift_up,
    }
    return AlgebraPresentation(
        "u_sl2_sl2_localized", gens, rules, sigma=sigma, coeff_vars=("hD",)
    )


def polynomial_presentation(name: str, variables) -> AlgebraPresentation:
    """Free commutative polynomial algebra on the given generators; the
    coefficient-algebra side of the linearization data."""
    gens = tuple(variables)
    return AlgebraPresentation(name, gens, commutator_rules(gens, {}))


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    builder: object
    description: str
    params: str = ""


_ENTRIES = [
    CatalogEntry(
        "nonlinear_sl2", build_nonlinear_sl2,
        "polynomial deformation of sl2: [e_1,e_m1] = e_0*h0(e_0)",
        "h0: coefficient list, constant first (default [1])",
    ),
    CatalogEntry(
        "nonlinear_sl2_linearization", build_nonlinear_sl2_linearization,
        "linearized deformation: [a_1,a_m1] = h0(eta)*a_0 over Q(eta)",
        "h0: coefficient list, constant first (default [1])",
    ),
    CatalogEntry(
        "uq_sl2", build_uq_sl2,
        "quantum sl2 with Cartan exponentials as coefficients kplus, kminus",
    ),
    CatalogEntry(
        "uq_sl2_linearization", build_uq_sl2_linearization,
        "linearized quantum sl2: [a_1,a_m1] = etaplus - etaminus",
    ),
    CatalogEntry(
        "heisenberg", build_heisenberg,
        "Heisenberg algebra: [p,q] = r central",
    ),
    CatalogEntry(
        "osc", build_osc,
        "oscillator algebra: Heisenberg plus grading element eps",
    ),
    CatalogEntry(
        "osc_localized", build_osc_localized,
        "oscillator algebra with eps adjoined to the coefficient field Q(eps)",
    ),
    CatalogEntry(
        "lobachevskii_lin1", build_lobachevskii_lin1,
        "quantized disk, first linearized form: [tau,tau*] = eta^2/(qR*(1-eta))",
    ),
    CatalogEntry(
        "lobachevskii_lin2", build_lobachevskii_lin2,
        "quantized disk, quadratic form: tau tau* - (1-eta) tau* tau = eta",
    ),
    CatalogEntry(
        "lobachevskii_lin2_xi", build_lobachevskii_lin2_xi,
        "quantized disk, inverted-coefficient form: "
        "xi tau tau* - (xi-1) tau* tau = 1",
    ),
    CatalogEntry(
        "u_sl2_sl2_localized", build_u_sl2_sl2_localized,
        "U(sl2+sl2) in sum/difference basis over Q(hD), diagonal Cartan "
        "adjoined to the coefficients",
    ),
]

_BY_KEY = {e.key: e for e in _ENTRIES}


def list_entries() -> list:
    """Stable-order summaries of every shipped entry."""
    return list(_ENTRIES)


def build(key: str, params: dict | None = None) -> AlgebraPresentation:
    entry = _BY_KEY.get(key)
    if entry is None:
        raise UnknownKey(f"no catalogue entry {key!r}")
    return entry.builder(params or {})
