"""Extremal projector and transversal (double-coset) algebra for the pair
sl2 + sl2 over its diagonal sl2.

The enveloping algebra is presented in the sum/difference basis
fD < fd < hd < ed < eD over K = Q(hD) (catalogue entry
u_sl2_sl2_localized).  The projector is the series

    P = sum_k c_k(hD) fD^k eD^k,   c_0 = 1,

with the c_k solved order by order from eD * P = 0 modulo words that end
in eD: at each k the single surviving word fD^(k-1) eD^k gives one linear
equation over Q(hD).  Nothing is transcribed; the same coefficients also
make P * fD vanish and are cross-checked against tensor-product modules
by the singular-vector oracle.

Transversal reduction deletes every normal word that begins with fD or
ends with eD; on the quotient this is the classical double-coset picture,
and the product of reduced classes is a # b = reduce(a * P * b).  The
three reduced generators are s+ = reduce(P ed P) = ed,
s- = reduce(P fd P) = fd and the zero-weight candidate
reduce(P hd P) = hd; the candidate is not central on the nose, so the
central normalization gamma(hD) * hd + delta(hD) is solved for rather
than asserted, and the found normalization is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import catalog, linalg
from .errors import CutoffTooSmall, DegenerateWeight, SolveFailure
from .ratfunc import ONE, Poly, RatFunc, Substitution, poly_lcm
from .rewrite import AlgebraPresentation, Element
from .reports import Report

HD = RatFunc.var("hD")


def _shift(c: RatFunc, k: int) -> RatFunc:
    """c(hD + k)."""
    return c.substitute({"hD": HD + k})


@dataclass
class ProjectorSeries:
    """Cutoff kmax and coefficients c_0..c_kmax in Q(hD), c_0 = 1."""

    kmax: int
    coeffs: list

    def truncated(self, kmax: int) -> "ProjectorSeries":
        if kmax > self.kmax:
            raise CutoffTooSmall(f"series only reaches k={self.kmax}")
        return ProjectorSeries(kmax, self.coeffs[: kmax + 1])


class ExtremalLab:
    """Workbench state: the localized presentation, a solved projector and
    the transversal-product machinery."""

    def __init__(self, kmax: int = 6):
        if kmax < 1:
            raise ValueError("need kmax >= 1")
        self.pres = catalog.build("u_sl2_sl2_localized")
        self.i_fD = self.pres.gen_index("fD")
        self.i_fd = self.pres.gen_index("fd")
        self.i_hd = self.pres.gen_index("hd")
        self.i_ed = self.pres.gen_index("ed")
        self.i_eD = self.pres.gen_index("eD")
        self.projector = self.build_projector(kmax)
        self._p_elements = {}

    # -- projector ---------------------------------------------------------

    def _fe_word(self, k: int) -> tuple:
        return (self.i_fD,) * k + (self.i_eD,) * k

    def projector_element(self, series: ProjectorSeries | None = None) -> Element:
        series = series or self.projector
        key = series.kmax
        cached = self._p_elements.get(key)
        if cached is not None:
            return cached
        elem = Element(
            self.pres,
            {self._fe_word(k): c for k, c in enumerate(series.coeffs)},
        )
        self._p_elements[key] = elem
        return elem

    def build_projector(self, kmax: int) -> ProjectorSeries:
        pres = self.pres
        e = pres.gen("eD")
        sigma_e_inv = pres.sigma["eD"].inverse
        coeffs = [ONE]
        partial = pres.one()
        for k in range(1, kmax + 1):
            target = (self.i_fD,) * (k - 1) + (self.i_eD,) * k
            base = pres.multiply(e, Element(pres, {self._fe_word(k): ONE}))
            b = base.terms.get(target)
            if b is None or b.is_zero():
                raise SolveFailure(f"no pivot for c_{k}")
            residue = pres.multiply(e, partial)
            a = residue.terms.get(target, RatFunc.const(0))
            # e * (c_k f^k e^k) contributes sigma_e(c_k) * base
            c_k = sigma_e_inv(-a / b)
            coeffs.append(c_k)
            partial = partial + Element(pres, {self._fe_word(k): c_k})
        # the defining condition holds below the cutoff: only the top word
        # fD^kmax eD^(kmax+1) survives in e * P
        residue = pres.multiply(e, partial)
        top = (self.i_fD,) * kmax + (self.i_eD,) * (kmax + 1)
        extra = [w for w in residue.terms if w != top]
        if extra:
            raise SolveFailure(f"unexpected residue words {extra}")
        return ProjectorSeries(kmax, coeffs)

    # -- transversal reduction -----------------------------------------------

    def reduce_to_Z(self, x: Element) -> Element:
        """Delete every term whose word begins with fD or ends with eD."""
        out = {}
        for w, c in x.terms.items():
            if w and (w[0] == self.i_fD or w[-1] == self.i_eD):
                continue
            out[w] = c
        return Element(self.pres, out)

    def sandwich(self, a: Element, b: Element, series: ProjectorSeries | None = None) -> Element:
        p_el = self.projector_element(series)
        return self.reduce_to_Z(
            self.pres.multiply(self.pres.multiply(a, p_el), b)
        )

    def z_generator(self, which: str, series: ProjectorSeries | None = None) -> Element:
        series = series or self.projector
        if series.kmax < 3:
            raise CutoffTooSmall("single generators need kmax >= 3")
        lift = {
            "plus": self.pres.gen("ed"),
            "minus": self.pres.gen("fd"),
            "zero": self.pres.gen("hd"),
        }.get(which)
        if lift is None:
            raise ValueError(f"which must be plus/minus/zero, got {which!r}")
        p_el = self.projector_element(series)
        full = self.reduce_to_Z(
            self.pres.multiply(self.pres.multiply(p_el, lift), p_el)
        )
        check = self.reduce_to_Z(
            self.pres.multiply(
                self.pres.multiply(self.projector_element(series.truncated(series.kmax - 2)), lift),
                self.projector_element(series.truncated(series.kmax - 2)),
            )
        )
        if full != check:
            raise CutoffTooSmall(f"z_generator({which}) unstable at kmax={series.kmax}")
        return full

    def z_multiply(self, a: Element, b: Element, series: ProjectorSeries | None = None) -> Element:
        series = series or self.projector
        if series.kmax < 3:
            raise CutoffTooSmall("products need kmax >= 3")
        full = self.sandwich(a, b, series)
        check = self.sandwich(a, b, series.truncated(series.kmax - 2))
        if full != check:
            raise CutoffTooSmall(f"z_multiply unstable at kmax={series.kmax}")
        return full

    # -- central normalization of the zero generator ---------------------------

    def central_zero(self, max_degree: int = 4) -> tuple:
        """Solve for gamma, delta in Q[hD] of bounded degree making
        s0 = gamma * hd + delta central for the transversal product.

        Returns (s0 element, gamma, delta).  The kernel always contains the
        constants (gamma = 0); a representative with gamma != 0 is chosen,
        gamma made monic and the constant part of delta dropped.
        """
        zc = self.z_generator("zero")
        sp = self.z_generator("plus")
        sm = self.z_generator("minus")
        unit = self.pres.one()
        data = []
        for s, lift_shift in ((sp, -2), (sm, +2)):
            u = self.z_multiply(zc, s)      # zc # s
            v = self.z_multiply(s, zc)      # s # zc
            e1 = self.z_multiply(unit, s)   # 1 # s  (= s)
            e2 = self.z_multiply(s, unit)   # s # 1  (= s)
            data.append((u, v, e1, e2, lift_shift))
        # unknowns: gamma_0..gamma_D, delta_0..delta_D
        ncols = 2 * (max_degree + 1)
        poly_rows = []
        for u, v, e1, e2, shift in data:
            support = sorted(set(u.terms) | set(v.terms) | set(e1.terms) | set(e2.terms))
            for w in support:
                mults = []
                for d in range(max_degree + 1):
                    c = (
                        u.coefficient(w) * HD**d
                        - v.coefficient(w) * _shift(HD**d, shift)
                    )
                    mults.append(c)
                for d in range(max_degree + 1):
                    c = (
                        e1.coefficient(w) * HD**d
                        - e2.coefficient(w) * _shift(HD**d, shift)
                    )
                    mults.append(c)
                den = Poly.const(1)
                for c in mults:
                    den = poly_lcm(den, c.den)
                nums = []
                for c in mults:
                    from .ratfunc import _poly_div_exact

                    nums.append(c.num * _poly_div_exact(den, c.den))
                monos = sorted({m for p in nums for m in p.terms})
                for mono in monos:
                    poly_rows.append(
                        [p.terms.get(mono, Fraction(0)) for p in nums]
                    )
        ker = linalg.kernel(poly_rows, ncols, Fraction(1), Fraction(0))
        best = None
        for vec in ker:
            if any(vec[: max_degree + 1]):
                best = vec
                break
        if best is None:
            raise SolveFailure("no central combination gamma*hd + delta found")
        gamma = sum(
            (RatFunc.const(c) * HD**d for d, c in enumerate(best[: max_degree + 1])),
            RatFunc.const(0),
        )
        delta = sum(
            (RatFunc.const(c) * HD**d for d, c in enumerate(best[max_degree + 1 :])),
            RatFunc.const(0),
        )
        # normalize: gamma monic, delta without the free additive constant
        lead = Fraction(0)
        for d in range(max_degree, -1, -1):
            if best[d]:
                lead = best[d]
                break
        gamma = gamma / lead
        delta = delta / lead
        delta = delta - RatFunc.const(delta.eval({"hD": Fraction(0)}) if delta.den.is_const() and not delta.num.variables() else 0)
        if delta.is_const():
            delta = RatFunc.const(0)
        s0 = zc.scale(gamma) + unit.scale(delta)
        return s0, gamma, delta


# -- singular-vector oracle ---------------------------------------------------


class TensorModule:
    """Truncated tensor product of two cyclic modules with eD killing the
    cyclic vector: basis w_a (x) w_b, level n = a + b <= N."""

    def __init__(self, lam1, lam2, N: int):
        self.lam1 = Fraction(lam1)
        self.lam2 = Fraction(lam2)
        self.N = N

    def level_dim(self, n: int) -> int:
        return n + 1

    def weight(self, n: int) -> Fraction:
        return self.lam1 + self.lam2 - 2 * n

    def _e_coeff(self, lam: Fraction, a: int) -> Fraction:
        return a * (lam - a + 1)

    def apply_gen(self, gen: str, n: int, vec: list) -> tuple:
        """Apply one generator to a level-n vector; returns (level, vector)."""
        l1, l2 = self.lam1, self.lam2
        if gen in ("eD", "ed"):
            sign = 1 if gen == "eD" else -1
            out = [Fraction(0)] * n if n > 0 else []
            for a, c in enumerate(vec):
                if not c:
                    continue
                b = n - a
                if a >= 1:
                    out[a - 1] += c * self._e_coeff(l1, a)
                if b >= 1:
                    out[a] += sign * c * self._e_coeff(l2, b)
            return n - 1, out
        if gen in ("fD", "fd"):
            sign = 1 if gen == "fD" else -1
            if n + 1 > self.N:
                raise DegenerateWeight("raising past the truncation level")
            out = [Fraction(0)] * (n + 2)
            for a, c in enumerate(vec):
                if not c:
                    continue
                out[a + 1] += c
                out[a] += sign * c
            return n + 1, out
        if gen == "hd":
            out = [
                c * ((l1 - 2 * a) - (l2 - 2 * (n - a))) for a, c in enumerate(vec)
            ]
            return n, out
        raise ValueError(f"unknown generator {gen!r}")

    def apply_element(self, x: Element, n: int, vec: list) -> dict:
        """Apply an Element (coefficients rational in hD) to a level-n
        vector; returns {level: vector}."""
        pres = x.pres
        out: dict = {}
        for w, c in x.terms.items():
            level, cur = n, list(vec)
            for gi in reversed(w):
                level, cur = self.apply_gen(pres.gens[gi], level, cur)
                if level < 0:
                    cur = None
                    break
            if cur is None or all(v == 0 for v in cur):
                continue
            try:
                scale = c.eval({"hD": self.weight(level)})
            except ZeroDivisionError:
                raise DegenerateWeight(
                    f"coefficient pole at level {level}, weight {self.weight(level)}"
                ) from None
            if scale == 0:
                continue
            acc = out.setdefault(level, [Fraction(0)] * (level + 1))
            for i, v in enumerate(cur):
                acc[i] += scale * v
        return {lv: v for lv, v in out.items() if any(v)}

    def singular_vector(self, n: int) -> list:
        """The one-dimensional kernel of eD on level n (generic weights)."""
        if n == 0:
            return [Fraction(1)]
        rows = []
        for row in range(n):
            rows.append([Fraction(0)] * (n + 1))
        for a in range(n + 1):
            b = n - a
            if a >= 1:
                rows[a - 1][a] += self._e_coeff(self.lam1, a)
            if b >= 1:
                rows[a][a] += self._e_coeff(self.lam2, b)
        ker = linalg.kernel(rows, n + 1, Fraction(1), Fraction(0))
        if len(ker) != 1:
            raise DegenerateWeight(
                f"singular space at level {n} has dimension {len(ker)}"
            )
        vec = ker[0]
        # normalize the top coefficient
        lead = next(c for c in vec if c)
        return [c / lead for c in vec]


def singular_vector_oracle(
    lab: ExtremalLab, lam1, lam2, kmax: int | None = None, N: int | None = None
) -> Report:
    """Module-level cross-check of the projector and the transversal algebra.

    Builds the truncated tensor module, verifies that P fixes singular
    vectors and annihilates the raising-image complement, that eD P = 0
    and P^2 = P hold levelwise, and that the symbolic transversal products
    act exactly as the composed matrix actions on the singular basis.
    """
    series = lab.projector if kmax is None else lab.projector.truncated(kmax)
    kmax = series.kmax
    N = kmax if N is None else min(N, kmax)
    mod = TensorModule(lam1, lam2, N)
    pres = lab.pres
    p_el = lab.projector_element(series)
    rep = Report(f"singular-vector oracle (lam1={lam1}, lam2={lam2}, N={N})")

    def apply_to_level(x: Element, n: int, vec: list) -> dict:
        return mod.apply_element(x, n, vec)

    def project(n: int, vecs: dict) -> dict:
        out = {}
        for lv, v in vecs.items():
            img = apply_to_level(p_el, lv, v)
            for lv2, v2 in img.items():
                acc = out.setdefault(lv2, [Fraction(0)] * (lv2 + 1))
                for i, c in enumerate(v2):
                    acc[i] += c
        return {lv: v for lv, v in out.items() if any(v)}

    singulars = {n: mod.singular_vector(n) for n in range(N + 1)}

    ok_fix = ok_ep = ok_idem = ok_kill = True
    for n in range(N + 1):
        basis = []
        for a in range(n + 1):
            basis.append([Fraction(1) if i == a else Fraction(0) for i in range(n + 1)])
        for v in basis:
            pv = apply_to_level(p_el, n, v)
            epv = {}
            for lv, vv in pv.items():
                lv2, vv2 = mod.apply_gen("eD", lv, vv)
                if lv2 >= 0 and any(vv2):
                    epv[lv2] = vv2
            if epv:
                ok_ep = False
            ppv = {}
            for lv, vv in pv.items():
                for lv2, vv2 in apply_to_level(p_el, lv, vv).items():
                    acc = ppv.setdefault(lv2, [Fraction(0)] * (lv2 + 1))
                    for i, c in enumerate(vv2):
                        acc[i] += c
            flat_ppv = ppv.get(n, [Fraction(0)] * (n + 1))
            flat_pv = pv.get(n, [Fraction(0)] * (n + 1))
            if flat_ppv != flat_pv:
                ok_idem = False
        u = singulars[n]
        pu = apply_to_level(p_el, n, u)
        if pu.get(n) != u or len(pu) != 1:
            ok_fix = False
        if n >= 1:
            for prev in range(n):
                lifted_lv, lifted = mod.apply_gen("fD", n - 1, singulars[n - 1])
            img = apply_to_level(p_el, lifted_lv, lifted)
            if img:
                ok_kill = False
    rep.add("P fixes singular vectors", ok_fix)
    rep.add("eD P = 0 on all levels", ok_ep)
    rep.add("P^2 = P on all levels", ok_idem)
    rep.add("P kills the raising-image complement", ok_kill)

    # matrices of s+/s- on the singular basis
    sp = lab.z_generator("plus", series)
    sm = lab.z_generator("minus", series)
    alphas = {}
    betas = {}
    ok_sing = True
    for n in range(1, N + 1):
        img = project(n, apply_to_level(sp, n, singulars[n]))
        comp = _component_along(img.get(n - 1, []), singulars[n - 1])
        if comp is None:
            ok_sing = False
        alphas[n] = comp
    for n in range(N):
        img = project(n, apply_to_level(sm, n, singulars[n]))
        comp = _component_along(img.get(n + 1, []), singulars[n + 1])
        if comp is None:
            ok_sing = False
        betas[n] = comp
    rep.add("s+/- map singular vectors to singular vectors", ok_sing)

    # oracle agreement: symbolic products act as composed actions
    try:
        x = lab.z_multiply(sp, sm, series)
        y = lab.z_multiply(sm, sp, series)
    except CutoffTooSmall as exc:
        rep.add("transversal products stabilize", False, str(exc))
        return rep
    ok_agree = True
    for n in range(N):
        via_elem = project(n, apply_to_level(x, n, singulars[n]))
        via_comp = project(
            n, apply_to_level(sp, n + 1, _only_level(project(n, apply_to_level(sm, n, singulars[n])), n + 1))
        ) if n + 1 <= N else None
        lhs = via_elem.get(n, [Fraction(0)] * (n + 1))
        expect = [alphas[n + 1] * betas[n] * c for c in singulars[n]] if n + 1 <= N else None
        if expect is not None and lhs != expect:
            ok_agree = False
        if via_comp is not None:
            rhs = via_comp.get(n, [Fraction(0)] * (n + 1))
            if lhs != rhs:
                ok_agree = False
    for n in range(1, N + 1):
        if n - 1 < 0:
            continue
        via_elem = project(n, apply_to_level(y, n, singulars[n]))
        lhs = via_elem.get(n, [Fraction(0)] * (n + 1))
        expect = [betas[n - 1] * alphas[n] * c for c in singulars[n]]
        if lhs != expect:
            ok_agree = False
    rep.add("symbolic products match matrix products on singular basis", ok_agree)
    return rep


def _component_along(vec: list, basis_vec: list):
    """vec = c * basis_vec -> c, else None (zero vec counts as 0)."""
    if not vec or all(v == 0 for v in vec):
        return Fraction(0)
    if len(vec) != len(basis_vec):
        return None
    c = None
    for v, b in zip(vec, basis_vec):
        if b == 0:
            if v != 0:
                return None
            continue
        ratio = v / b
        if c is None:
            c = ratio
        elif ratio != c:
            return None
    return c


def _only_level(vecs: dict, level: int) -> list:
    return vecs.get(level, [Fraction(0)] * (level + 1))
