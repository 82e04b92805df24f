"""Exact arithmetic in coefficient fields K = Q(v1, ..., vm).

Values are multivariate rational functions with Fraction coefficients.
Variables are plain strings; formal scalar parameters (q, qR, r, mu, ...)
are ordinary transcendental variables, so nothing here is ever numeric
unless every variable has been substituted away.

Canonical form: numerator and denominator share no common factor and the
denominator is monic under the graded-lexicographic monomial order (total
degree first, then exponents along the alphabetically sorted variable
list).  Equality of values is therefore equality of representations.

Polynomials are dicts mapping a monomial -- a sorted tuple of
(variable, exponent) pairs with positive exponents -- to a nonzero
Fraction.  The zero polynomial is the empty dict.  Gcds are computed by
primitive/subresultant pseudo-remainder sequences, with a plain monic
Euclid fast path for univariate inputs.

Everything in this module is immutable after construction and every
operation is a pure function.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

from .errors import DivisionByZero

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by variable name

_MONO_ONE: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_cmp(m1: Monomial, m2: Monomial) -> int:
    """Graded lex: total degree first, then exponents along the sorted
    variable list (the alphabetically earliest differing variable decides,
    larger exponent wins).  Compatible with monomial multiplication."""
    d1, d2 = _mono_degree(m1), _mono_degree(m2)
    if d1 != d2:
        return -1 if d1 < d2 else 1
    i = j = 0
    while i < len(m1) or j < len(m2):
        v1 = m1[i][0] if i < len(m1) else None
        v2 = m2[j][0] if j < len(m2) else None
        if v1 == v2:
            e1, e2 = m1[i][1], m2[j][1]
            if e1 != e2:
                return 1 if e1 > e2 else -1
            i += 1
            j += 1
        elif v2 is None or (v1 is not None and v1 < v2):
            return 1
        else:
            return -1
    return 0


_mono_key = cmp_to_key(_mono_cmp)


class Poly:
    """Multivariate polynomial over Q; internal support type for RatFunc."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None, _trusted: bool = False):
        if _trusted:
            self.terms = terms if terms is not None else {}
        else:
            self.terms = {}
            if terms:
                for m, c in terms.items():
                    c = Fraction(c)
                    if c:
                        self.terms[m] = c
        self._hash = None

    @staticmethod
    def const(c) -> "Poly":
        c = Fraction(c)
        return Poly({_MONO_ONE: c} if c else {}, _trusted=True)

    @staticmethod
    def var(name: str) -> "Poly":
        return Poly({((name, 1),): Fraction(1)}, _trusted=True)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _MONO_ONE in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[_MONO_ONE]

    def variables(self) -> set:
        vs = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return vs

    def total_degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out, _trusted=True)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()}, _trusted=True)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                if s is None:
                    out[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Poly(out, _trusted=True)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Poly; use RatFunc")
        acc = Poly.const(1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=_mono_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return Poly({m: c / lc for m, c in self.terms.items()}, _trusted=True)

    # -- univariate views ------------------------------------------------

    def degree_in(self, x: str) -> int:
        d = 0
        for m in self.terms:
            for v, e in m:
                if v == x and e > d:
                    d = e
        return d

    def as_univariate(self, x: str) -> dict:
        """View as a polynomial in x with Poly coefficients: {deg: Poly}."""
        out: dict = {}
        for m, c in self.terms.items():
            e_x = 0
            rest = []
            for v, e in m:
                if v == x:
                    e_x = e
                else:
                    rest.append((v, e))
            bucket = out.setdefault(e_x, {})
            bucket[tuple(rest)] = bucket.get(tuple(rest), Fraction(0)) + c
        return {d: Poly(t) for d, t in out.items() if any(t.values())}

    @staticmethod
    def from_univariate(coeffs: dict, x: str) -> "Poly":
        out: dict = {}
        for d, p in coeffs.items():
            for m, c in p.terms.items():
                full = _mono_mul(m, ((x, d),)) if d else m
                out[full] = out.get(full, Fraction(0)) + c
        return Poly(out)

    # -- evaluation ------------------------------------------------------

    def eval(self, point: dict) -> Fraction:
        """Evaluate at a rational point covering all variables."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for name, e in m:
                v *= Fraction(point[name]) ** e
            total += v
        return total

    def substitute(self, images: dict) -> "RatFunc":
        """Homomorphic image under variable -> RatFunc (identity default)."""
        total = RatFunc.const(0)
        for m, c in self.terms.items():
            term = RatFunc.const(c)
            for name, e in m:
                img = images.get(name)
                if img is None:
                    img = RatFunc.var(name)
                term = term * img**e
            total = total + term
        return total

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def _poly_div_exact(a: Poly, b: Poly) -> Poly:
    """Exact division a / b; raises ValueError when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("poly division by zero")
    if a.is_zero():
        return a
    if b.is_const():
        return a * (1 / b.const_value())
    out: dict = {}
    rem = dict(a.terms)
    lm_b = b.leading_monomial()
    lc_b = b.terms[lm_b]
    vec_b = dict(lm_b)
    while rem:
        lm_r = max(rem, key=_mono_key)
        vec_r = dict(lm_r)
        q_vec = {}
        ok = True
        for v, e in vec_b.items():
            d = vec_r.get(v, 0) - e
            if d < 0:
                ok = False
                break
            if d:
                q_vec[v] = d
        if not ok:
            raise ValueError("inexact polynomial division")
        for v, e in vec_r.items():
            if v not in vec_b:
                q_vec[v] = e
        q_mono = tuple(sorted(q_vec.items()))
        q_coef = rem[lm_r] / lc_b
        out[q_mono] = q_coef
        for m, c in b.terms.items():
            mm = _mono_mul(m, q_mono)
            s = rem.get(mm, Fraction(0)) - c * q_coef
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return Poly(out)


def _gcd_univariate(a: Poly, b: Poly, x: str) -> Poly:
    """Monic Euclid over Q[x]; coefficients stay small thanks to monic steps."""

    def to_list(p: Poly) -> list:
        d = p.degree_in(x)
        out = [Fraction(0)] * (d + 1)
        for m, c in p.terms.items():
            e = m[0][1] if m else 0
            out[e] += c
        while out and not out[-1]:
            out.pop()
        return out

    fa, fb = to_list(a), to_list(b)
    while fb:
        lc = fb[-1]
        fb = [c / lc for c in fb]
        # remainder of fa modulo monic fb
        r = list(fa)
        while len(r) >= len(fb) and r:
            k = len(r) - len(fb)
            lead = r[-1]
            for i, c in enumerate(fb):
                r[k + i] -= lead * c
            while r and not r[-1]:
                r.pop()
        fa, fb = fb, r
    if not fa:
        return Poly()
    lc = fa[-1]
    return Poly({((x, e),) if e else _MONO_ONE: c / lc for e, c in enumerate(fa) if c})


def _content_primitive(a: Poly, x: str) -> tuple:
    coeffs = a.as_univariate(x)
    cont = Poly()
    for p in coeffs.values():
        cont = poly_gcd(cont, p)
        if cont.is_const() and not cont.is_zero():
            cont = Poly.const(1)
            break
    if cont.is_zero():
        return Poly(), a
    prim = Poly.from_univariate({d: _poly_div_exact(p, cont) for d, p in coeffs.items()}, x)
    return cont, prim


def _pseudo_rem(f: Poly, g: Poly, x: str) -> Poly:
    """prem(f, g): remainder of lc(g)^(deg f - deg g + 1) * f by g."""
    df, dg = f.degree_in(x), g.degree_in(x)
    gu = g.as_univariate(x)
    lg = gu[dg]
    n = df - dg + 1
    r = f
    steps = 0
    while not r.is_zero():
        dr = r.degree_in(x)
        if dr < dg:
            break
        ru = r.as_univariate(x)
        lr = ru[dr]
        xk = Poly({((x, dr - dg),): Fraction(1)}) if dr > dg else Poly.const(1)
        r = r * lg - g * (lr * xk)
        steps += 1
    for _ in range(n - steps):
        r = r * lg
    return r


def _gcd_subresultant(f: Poly, g: Poly, x: str) -> Poly:
    """Subresultant PRS on primitive inputs; returns the primitive gcd."""
    if f.degree_in(x) < g.degree_in(x):
        f, g = g, f
    h = Poly.const(1)
    gg = Poly.const(1)
    while True:
        delta = f.degree_in(x) - g.degree_in(x)
        r = _pseudo_rem(f, g, x)
        if r.is_zero():
            return _content_primitive(g, x)[1]
        if r.degree_in(x) == 0:
            return Poly.const(1)
        f, g = g, _poly_div_exact(r, gg * h**delta)
        gg = f.as_univariate(x)[f.degree_in(x)]
        if delta > 0:
            h = _poly_div_exact(gg**delta, h ** (delta - 1)) if delta > 1 else gg
        # delta == 0: h unchanged


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd in Q[variables]."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return Poly.const(1)
    vs = sorted(a.variables() | b.variables())
    if len(vs) == 1:
        return _gcd_univariate(a, b, vs[0])
    x = vs[-1]
    ca, pa = _content_primitive(a, x)
    cb, pb = _content_primitive(b, x)
    cg = poly_gcd(ca, cb)
    g = _gcd_subresultant(pa, pb, x)
    return (cg * g).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    return _poly_div_exact(a * b, poly_gcd(a, b)).monic()


class RatFunc:
    """A value of K: a reduced fraction of Polys with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None, _trusted: bool = False):
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _trusted:
            if num.is_zero():
                den = Poly.const(1)
            else:
                g = poly_gcd(num, den)
                if not (g.is_const() and g.const_value() == 1):
                    num = _poly_div_exact(num, g)
                    den = _poly_div_exact(den, g)
                lc = den.leading_coeff()
                if lc != 1:
                    num = num * (1 / lc)
                    den = den * (1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly.const(c), _trusted=True)

    @staticmethod
    def var(name: str) -> "RatFunc":
        return RatFunc(Poly.var(name), _trusted=True)

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc.const(x)
        if isinstance(x, Poly):
            return RatFunc(x)
        raise TypeError(f"cannot coerce {x!r} into RatFunc")

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num.const_value()

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = RatFunc._coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _trusted=True)

    def __sub__(self, other):
        return self + (-RatFunc._coerce(other))

    def __rsub__(self, other):
        return RatFunc._coerce(other) + (-self)

    def __mul__(self, other):
        other = RatFunc._coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.const(0)
        # cross-cancellation keeps the final gcd trivial
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_const() else _poly_div_exact(self.num, g1)
        d2 = other.den if g1.is_const() else _poly_div_exact(other.den, g1)
        n2 = other.num if g2.is_const() else _poly_div_exact(other.num, g2)
        d1 = self.den if g2.is_const() else _poly_div_exact(self.den, g2)
        num = n1 * n2
        den = d1 * d2
        lc = den.leading_coeff()
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        return RatFunc(num, den, _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = RatFunc._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n == 0:
            return RatFunc.const(1)
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _trusted=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- substitution and evaluation ---------------------------------------

    def substitute(self, images: dict) -> "RatFunc":
        num = self.num.substitute(images)
        den = self.den.substitute(images)
        if den.is_zero():
            raise DivisionByZero("denominator vanishes under substitution")
        return num / den

    def eval(self, point: dict) -> Fraction:
        den = self.den.eval(point)
        if den == 0:
            raise DivisionByZero("evaluation at a pole")
        return self.num.eval(point) / den

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)})"

    def __str__(self):
        return format_ratfunc(self)


class Substitution:
    """A field endomorphism of K given by images of variables.

    Unmapped variables go to themselves.  A substitution flagged as an
    automorphism carries its two-sided inverse; `verify_automorphism`
    certifies the round trip on a declared variable list.
    """

    __slots__ = ("mapping", "inverse")

    def __init__(self, mapping: dict | None = None, inverse: "Substitution | None" = None):
        clean = {}
        for v, img in (mapping or {}).items():
            img = RatFunc._coerce(img)
            if img != RatFunc.var(v):
                clean[v] = img
        self.mapping = clean
        self.inverse = inverse

    @staticmethod
    def identity() -> "Substitution":
        s = Substitution({})
        s.inverse = s
        return s

    def is_identity(self) -> bool:
        return not self.mapping

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.mapping == other.mapping

    def __call__(self, value: RatFunc) -> RatFunc:
        if not self.mapping:
            return value
        return value.substitute(self.mapping)

    def image(self, var: str) -> RatFunc:
        return self.mapping.get(var, RatFunc.var(var))

    def after(self, other: "Substitution") -> "Substitution":
        """self ∘ other (apply `other` first)."""
        if self.is_identity():
            return other
        if other.is_identity():
            return self
        names = set(self.mapping) | set(other.mapping)
        mapping = {v: self(other.image(v)) for v in names}
        inv = None
        if self.inverse is not None and other.inverse is not None:
            inv = Substitution(
                {v: other.inverse(self.inverse.image(v)) for v in names}
            )
        return Substitution(mapping, inverse=inv)

    def verify_automorphism(self, variables) -> bool:
        if self.inverse is None:
            return False
        for v in variables:
            x = RatFunc.var(v)
            if self(self.inverse(x)) != x or self.inverse(self(x)) != x:
                return False
        return True

    def try_mobius_inverse(self) -> "Substitution | None":
        """Invert when every moved variable maps to a Möbius expression of
        itself (coefficients may involve the other variables)."""
        inv_map = {}
        for v, img in self.mapping.items():
            nu = img.num.as_univariate(v)
            de = img.den.as_univariate(v)
            if max(nu, default=0) > 1 or max(de, default=0) > 1:
                return None
            a = nu.get(1, Poly())
            b = nu.get(0, Poly())
            c = de.get(1, Poly())
            d = de.get(0, Poly())
            if v in (a.variables() | b.variables() | c.variables() | d.variables()):
                return None
            # y = (a v + b)/(c v + d)  =>  v = (d y - b)/(-c y + a)
            y = Poly.var(v)
            num = d * y - b
            den = -(c * y) + a
            if den.is_zero():
                return None
            inv_map[v] = RatFunc(num, den)
        inv = Substitution(inv_map)
        inv.inverse = Substitution(dict(self.mapping))
        return inv

    def __repr__(self):
        inner = ", ".join(f"{v} -> {img}" for v, img in sorted(self.mapping.items()))
        return f"Substitution({inner})"


def automorphism(mapping: dict) -> Substitution:
    """Build a Substitution with an automatically derived Möbius inverse."""
    s = Substitution(mapping)
    inv = s.try_mobius_inverse()
    if inv is None:
        raise ValueError("cannot invert substitution automatically; give an inverse")
    s.inverse = inv
    return s


# -- rendering -----------------------------------------------------------
#
# The format is the expression grammar of the command-line DSL: explicit
# '*', '^' for integer powers, rationals as p/q.  parse(format(x)) == x.


def _format_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_term(m: Monomial, c: Fraction) -> str:
    parts = []
    if not m:
        return _format_fraction(c)
    if c == -1:
        lead = "-"
    elif c == 1:
        lead = ""
    else:
        lead = _format_fraction(c) + "*"
    for v, e in m:
        parts.append(v if e == 1 else f"{v}^{e}")
    return lead + "*".join(parts)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    monos = sorted(p.terms, key=_mono_key, reverse=True)
    out = _format_term(monos[0], p.terms[monos[0]])
    for m in monos[1:]:
        c = p.terms[m]
        piece = _format_term(m, abs(c) if c < 0 else c)
        out += (" - " if c < 0 else " + ") + piece
    return out


def format_ratfunc(r: RatFunc) -> str:
    if r.den.is_const() and r.den.const_value() == 1:
        return format_poly(r.num)
    return f"({format_poly(r.num)})/({format_poly(r.den)})"


ZERO = RatFunc.const(0)
ONE = RatFunc.const(1)
