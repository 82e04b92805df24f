"""Structural checkers: generator morphisms, linearization data, and
quantization-of-constants properties.

A GeneratorMorphism assigns target Elements to the source generators and
source coefficient variables.  Rational functions of coefficient
variables push forward by evaluating numerator and denominator at the
assigned images; that needs the denominator image to be invertible, which
here means a nonzero element of the target coefficient field.  Relations
whose images would need the inverse of a genuine word element are
reported as "deferred" -- they are discharged at the operator-realization
level (see the verma module), not silently skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .errors import PbwError, TwistAxiomFailure
from .ratfunc import ONE, Poly, RatFunc, poly_lcm
from .rewrite import AlgebraPresentation, Element
from .reports import Report


class NonInvertibleImage(PbwError):
    """A coefficient image would need the inverse of a word element."""

    def __init__(self, coefficient):
        super().__init__(f"non-invertible image of coefficient {coefficient}")
        self.coefficient = coefficient


@dataclass
class LieAlgebra:
    """Structure constants over Q: brackets[(a, b)][c] with a after b in the
    basis order; the rest follows by antisymmetry."""

    basis: tuple
    brackets: dict

    def c(self, a: str, b: str, k: str) -> Fraction:
        if a == b:
            return Fraction(0)
        ia, ib = self.basis.index(a), self.basis.index(b)
        if ia > ib:
            return Fraction(self.brackets.get((a, b), {}).get(k, 0))
        return -Fraction(self.brackets.get((b, a), {}).get(k, 0))

    def pairs(self):
        for ib, b in enumerate(self.basis):
            for a in self.basis[ib + 1 :]:
                yield a, b


def sl2() -> LieAlgebra:
    return LieAlgebra(
        basis=("e_m1", "e_0", "e_1"),
        brackets={
            ("e_0", "e_m1"): {"e_m1": Fraction(1)},
            ("e_1", "e_0"): {"e_1": Fraction(1)},
            ("e_1", "e_m1"): {"e_0": Fraction(1)},
        },
    )


class GeneratorMorphism:
    """Assignment of target Elements to source generators and coefficient
    variables; kind is one of pi / iota / quant / generic."""

    def __init__(
        self,
        source: AlgebraPresentation,
        target: AlgebraPresentation,
        assignment: dict,
        kind: str = "generic",
        scalar_map: dict | None = None,
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.kind = kind
        self.name = name or f"{source.name}->{target.name}"
        self.assignment = {}
        for sym, img in assignment.items():
            if sym not in source.gens and sym not in source.coeff_vars:
                raise ValueError(f"{self.name}: {sym} is not a source symbol")
            self.assignment[sym] = target.coerce(img)
        missing = [
            s for s in (*source.gens, *source.coeff_vars) if s not in self.assignment
        ]
        if missing:
            raise ValueError(f"{self.name}: unassigned source symbols {missing}")
        self.scalar_map = {}
        for s in source.scalars:
            img = (scalar_map or {}).get(s, RatFunc.var(s))
            img = RatFunc._coerce(img)
            if not img.variables() <= set(target.coeff_vars) | set(target.scalars):
                raise ValueError(f"{self.name}: scalar image of {s} is undeclared in target")
            self.scalar_map[s] = img
        self._check_commuting_images()

    def _check_commuting_images(self):
        imgs = [(v, self.assignment[v]) for v in self.source.coeff_vars]
        for k, (v1, e1) in enumerate(imgs):
            for v2, e2 in imgs[k + 1 :]:
                if not self.target.commutator(e1, e2).is_zero():
                    raise ValueError(
                        f"{self.name}: images of {v1} and {v2} do not commute"
                    )

    # -- pushing values forward ------------------------------------------

    def _poly_image(self, p: Poly) -> Element:
        acc = self.target.zero()
        for mono, c in p.terms.items():
            term = self.target.coerce(c)
            for var, e in mono:
                if var in self.scalar_map:
                    img = self.target.coerce(self.scalar_map[var] ** e)
                else:
                    img = self.assignment[var] ** e
                term = self.target.multiply(term, img)
            acc = acc + term
        return acc

    def apply_coeff(self, c: RatFunc) -> Element:
        num = self._poly_image(c.num)
        if c.den.is_const():
            return num.scale(1 / c.den.const_value())
        den = self._poly_image(c.den)
        if not den.is_coefficient():
            raise NonInvertibleImage(c)
        k = den.constant_part()
        if k.is_zero():
            raise NonInvertibleImage(c)
        return num.scale(k.inverse())

    def apply(self, e: Element) -> Element:
        acc = self.target.zero()
        for w, c in e.terms.items():
            img = self.apply_coeff(c)
            for g in w:
                img = self.target.multiply(img, self.assignment[self.source.gens[g]])
            acc = acc + img
        return acc

    def compose(self, inner: "GeneratorMorphism") -> "GeneratorMorphism":
        """self ∘ inner."""
        if inner.target is not self.source:
            raise ValueError("composition mismatch")
        assignment = {
            sym: self.apply(img) for sym, img in inner.assignment.items()
        }
        scalar_map = {
            s: self._scalar_push(img) for s, img in inner.scalar_map.items()
        }
        return GeneratorMorphism(
            inner.source, self.target, assignment,
            kind="generic", scalar_map=scalar_map,
            name=f"{self.name}.{inner.name}",
        )

    def _scalar_push(self, img: RatFunc) -> RatFunc:
        pushed = self.apply_coeff(img)
        if not pushed.is_coefficient():
            raise NonInvertibleImage(img)
        return pushed.constant_part()


def identity_morphism(p: AlgebraPresentation) -> GeneratorMorphism:
    assignment = {g: p.gen(g) for g in p.gens}
    assignment.update({v: p.coerce(RatFunc.var(v)) for v in p.coeff_vars})
    return GeneratorMorphism(p, p, assignment, kind="generic", name=f"id[{p.name}]")


# -- verification ----------------------------------------------------------


def verify_homomorphism(m: GeneratorMorphism, depth: int = 2) -> Report:
    """Images of all source relations must normalize to zero in the target.

    Covers the normal-ordering rules and the coefficient-exchange
    relations g x = sigma_g(x) g.  For kind 'pi' the report also checks
    that every target generator lies in the span of images of source
    words up to total degree `depth` (the operational epimorphism test).
    """
    rep = Report(f"homomorphism {m.name}")
    src = m.source
    for (j, i) in sorted(src.rules):
        label = f"rule {src.gens[j]}*{src.gens[i]}"
        try:
            lhs = m.target.multiply(
                m.assignment[src.gens[j]], m.assignment[src.gens[i]]
            )
            rhs = m.apply(src.element(src.rules[(j, i)]))
            residue = lhs - rhs
            rep.add(label, residue.is_zero(),
                    "" if residue.is_zero() else f"residue {residue.render()}")
        except NonInvertibleImage as exc:
            rep.defer(label, str(exc))
    for g in src.gens:
        sg = src.sigma[g]
        for x in src.coeff_vars:
            label = f"exchange {g}~{x}"
            try:
                lhs = m.target.multiply(m.assignment[g], m.apply_coeff(RatFunc.var(x)))
                rhs = m.target.multiply(m.apply_coeff(sg(RatFunc.var(x))), m.assignment[g])
                residue = lhs - rhs
                rep.add(label, residue.is_zero(),
                        "" if residue.is_zero() else f"residue {residue.render()}")
            except NonInvertibleImage as exc:
                rep.defer(label, str(exc))
    if m.kind == "pi":
        _epi_check(m, depth, rep)
    return rep


def _epi_check(m: GeneratorMorphism, depth: int, rep: Report) -> None:
    tgt = m.target
    vectors = []
    words = _ascending_words(m.source, depth)
    for w in words:
        img = m.apply(Element(m.source, {w: ONE}))
        vectors.append(img)
    support = sorted({w for v in vectors for w in v.terms}, key=lambda w: (len(w), w))
    idx = {w: k for k, w in enumerate(support)}
    rows = []
    for v in vectors:
        row = [RatFunc.const(0)] * len(support)
        for w, c in v.terms.items():
            row[idx[w]] = c
        rows.append(row)
    for g in tgt.gens:
        target_vec = [RatFunc.const(0)] * len(support)
        gw = (tgt.gen_index(g),)
        if gw not in idx:
            rep.add(f"epi covers {g}", False, "generator absent from image support")
            continue
        target_vec[idx[gw]] = ONE
        ok = linalg.in_span(rows, target_vec, ONE, RatFunc.const(0))
        rep.add(f"epi covers {g}", ok, "" if ok else f"degree {depth} span misses {g}")


def _ascending_words(p: AlgebraPresentation, degree: int) -> list:
    words = []
    for d in range(degree + 1):
        words.extend(combinations_with_replacement(range(len(p.gens)), d))
    return words


def coordinates_over_Q(elements: list) -> list:
    """Expand target Elements into exact Q-coordinate vectors.

    Per word, coefficients are put over the lcm denominator and read off
    monomial by monomial, so Q-linear relations between the elements are
    exactly the kernel of the resulting matrix.
    """
    support = sorted({w for e in elements for w in e.terms}, key=lambda w: (len(w), w))
    rows = []
    for w in support:
        coeffs = [e.terms.get(w, RatFunc.const(0)) for e in elements]
        den = Poly.const(1)
        for c in coeffs:
            den = poly_lcm(den, c.den)
        polys = []
        for c in coeffs:
            scale = _poly_quot(den, c.den)
            polys.append(c.num * scale)
        monos = sorted({m for p in polys for m in p.terms})
        for mono in monos:
            rows.append([p.terms.get(mono, Fraction(0)) for p in polys])
    return rows


def _poly_quot(a: Poly, b: Poly) -> Poly:
    from .ratfunc import _poly_div_exact

    return _poly_div_exact(a, b)


def verify_monomorphism(m: GeneratorMorphism, degree: int = 6) -> Report:
    """Q-linear independence of the images of all source PBW words up to
    the given total degree (exact kernel computation)."""
    rep = Report(f"monomorphism {m.name} (degree {degree})")
    words = _ascending_words(m.source, degree)
    images = [m.apply(Element(m.source, {w: ONE})) for w in words]
    zero_words = [w for w, img in zip(words, images) if img.is_zero()]
    if zero_words:
        w = zero_words[0]
        rep.add("independence", False,
                f"image of {m.source.render_word(w)} is zero")
        return rep
    rows = coordinates_over_Q(images)
    ker = linalg.kernel(rows, len(images), Fraction(1), Fraction(0))
    if ker:
        vec = ker[0]
        witness = " + ".join(
            f"({c})*{m.source.render_word(w)}" for c, w in zip(vec, words) if c
        )
        rep.add("independence", False, f"kernel vector {witness}")
    else:
        rep.add("independence", True, f"{len(words)} basis words independent")
    return rep


def check_quantization_of_constants(
    lie: LieAlgebra, A: AlgebraPresentation, q: GeneratorMorphism
) -> Report:
    """Zero structure constants must stay zero: whenever c_ij^k = 0, the
    a_k-component of [q(e_i), q(e_j)] vanishes identically."""
    rep = Report(f"quantization of constants {q.name}")
    gen_words = {}
    for e in lie.basis:
        img = q.assignment[e]
        words = list(img.terms)
        if len(words) != 1 or len(words[0]) != 1 or img.terms[words[0]] != ONE:
            rep.add(f"image of {e} is a generator", False, img.render())
            return rep
        gen_words[e] = words[0]
    for a, b in lie.pairs():
        comm = A.commutator(q.assignment[a], q.assignment[b])
        long_words = [w for w in comm.terms if len(w) > 1]
        rep.add(
            f"[{a},{b}] lies in the coefficient span of generators",
            not long_words,
            "" if not long_words else comm.render(),
        )
        for k in lie.basis:
            if lie.c(a, b, k) == 0:
                comp = comm.terms.get(gen_words[k], RatFunc.const(0))
                rep.add(
                    f"vanishing [{a},{b}]^{k}",
                    comp.is_zero(),
                    "" if comp.is_zero() else f"component {comp}",
                )
    return rep


def check_quasilinear(A: AlgebraPresentation) -> Report:
    """Every generator transports every coefficient variable by a verified
    exchange automorphism compatible with the rewrite rules."""
    rep = Report(f"quasilinear {A.name}")
    for g in A.gens:
        for x in A.coeff_vars:
            label = f"twist {g}~{x}"
            try:
                tw = A.derive_twist(g, x)
                rep.add(label, True, f"{x} |-> {tw.transported}")
            except TwistAxiomFailure as exc:
                rep.add(label, False, f"{exc} (witness {exc.witness})")
    return rep


def check_subalgebra_preserving(
    q: GeneratorMorphism, subalgebras: list
) -> Report:
    """Per subalgebra (label, basis subset, restricted LieAlgebra): images
    realize the brackets exactly and stay Q-linearly independent."""
    rep = Report(f"subalgebra preservation {q.name}")
    A = q.target
    for label, subset, lie in subalgebras:
        images = [q.assignment[e] for e in subset]
        for ib, b in enumerate(subset):
            for a in subset[ib + 1 :]:
                lhs = A.commutator(q.assignment[a], q.assignment[b])
                rhs = A.zero()
                for k in lie.basis:
                    c = lie.c(a, b, k)
                    if c and k in q.assignment:
                        rhs = rhs + q.assignment[k].scale(c)
                ok = (lhs - rhs).is_zero()
                rep.add(
                    f"{label}: bracket [{a},{b}]",
                    ok,
                    "" if ok else f"got {lhs.render()}, want {rhs.render()}",
                )
        rows = coordinates_over_Q(images)
        ker = linalg.kernel(rows, len(images), Fraction(1), Fraction(0))
        rep.add(f"{label}: images independent", not ker,
                "" if not ker else f"kernel {ker[0]}")
    return rep
