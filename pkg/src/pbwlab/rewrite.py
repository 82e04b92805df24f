"""The rewriting kernel: finitely presented skew-PBW algebras.

A presentation has a totally ordered generator list over a coefficient
field K = Q(scalars, coefficient variables).  Elements are finite sums
c_w * w with the coefficient on the LEFT of an ascending word w.  Moving a
generator g rightwards past a coefficient applies the generator's exchange
automorphism: g * c = sigma_g(c) * g.  A descending adjacent pair g_j g_i
(j > i) is replaced by the presentation's rule, a K-combination of
ascending words (length <= 2 for quadratic presentations; longer right
sides are admitted when a presentation declares itself non-quadratic, as
the polynomial sl2 deformation needs).

Rewriting always reduces the leftmost descending pair first, so reports
are reproducible; on confluent presentations the choice is immaterial.
A step budget (PBW_STEP_BUDGET, default 10**6) converts ill-founded rule
sets into a NonTerminating error instead of a hang.

Presentations are immutable after validation and all operations are pure;
the memo tables only cache pure results, so sharing across threads is
safe in the usual CPython sense.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import NonTerminating, TwistAxiomFailure, UnknownGenerator
from .ratfunc import ONE, RatFunc, Substitution

Word = tuple  # tuple[int, ...] of generator indices, ascending when normal

DEFAULT_STEP_BUDGET = 10**6


def _step_budget() -> int:
    raw = os.environ.get("PBW_STEP_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_STEP_BUDGET


def word_key(w: Word):
    return (len(w), w)


class Element:
    """A finite K-combination of ascending words over one presentation."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: "AlgebraPresentation", terms: dict):
        self.pres = pres
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def is_coefficient(self) -> bool:
        """True when the element lies in K (empty word only)."""
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def coefficient(self, word) -> RatFunc:
        w = self.pres.word_index(word)
        return self.terms.get(w, RatFunc.const(0))

    def constant_part(self) -> RatFunc:
        return self.terms.get((), RatFunc.const(0))

    def words(self):
        return sorted(self.terms, key=word_key)

    def max_word_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, (int,)) and other == 0:
            return self.is_zero()
        if not isinstance(other, Element):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.pres), frozenset(self.terms.items())))

    def __add__(self, other):
        other = self.pres.coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return Element(self.pres, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.pres, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.pres.coerce(other))

    def __rsub__(self, other):
        return self.pres.coerce(other) + (-self)

    def __mul__(self, other):
        return self.pres.multiply(self, self.pres.coerce(other))

    def __rmul__(self, other):
        return self.pres.multiply(self.pres.coerce(other), self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined for Elements")
        acc = self.pres.one()
        for _ in range(n):
            acc = self.pres.multiply(acc, self)
        return acc

    def scale(self, c) -> "Element":
        c = RatFunc._coerce(c)
        return Element(self.pres, {w: c * x for w, x in self.terms.items()})

    def map_coefficients(self, fn) -> "Element":
        return Element(self.pres, {w: fn(c) for w, c in self.terms.items()})

    def render(self) -> str:
        return self.pres.render_element(self)

    def __repr__(self):
        return f"<{self.pres.name}: {self.render()}>"


@dataclass
class CriticalPairReport:
    """One diamond-lemma check: either an overlap triple g_k g_j g_i or a
    (rule, coefficient variable) sigma-compatibility pair."""

    subject: tuple
    left: Element
    right: Element

    @property
    def resolved(self) -> bool:
        return self.left == self.right

    def describe(self, pres: "AlgebraPresentation") -> str:
        if len(self.subject) == 3:
            names = " ".join(pres.gens[i] for i in self.subject)
            kind = f"overlap {names}"
        else:
            (j, i), var = self.subject
            kind = f"rule {pres.gens[j]}*{pres.gens[i]} vs coefficient {var}"
        status = "resolved" if self.resolved else "UNRESOLVED"
        out = f"{kind}: {status}"
        if not self.resolved:
            out += f" (left={self.left.render()!s} right={self.right.render()!s})"
        return out


@dataclass
class TwistReport:
    generator: str
    variable: str
    transported: RatFunc  # sigma_g(x); the twist is transported (x) g

    def pair(self):
        return (self.transported, self.generator)


class AlgebraPresentation:
    """Ordered generators over K with exchange automorphisms and
    normal-ordering rewrite rules for every descending pair."""

    def __init__(
        self,
        name: str,
        gens,
        rules: dict,
        sigma: dict | None = None,
        coeff_vars=(),
        scalars=(),
        quadratic: bool = True,
    ):
        self.name = name
        self.gens = tuple(gens)
        self.coeff_vars = tuple(coeff_vars)
        self.scalars = tuple(scalars)
        self.quadratic = quadratic
        if len(set(self.gens)) != len(self.gens):
            raise ValueError(f"{name}: duplicate generator names")
        overlap = set(self.gens) & (set(self.coeff_vars) | set(self.scalars))
        if overlap:
            raise ValueError(f"{name}: {overlap} used both as generator and variable")
        self.sigma = {}
        for g in self.gens:
            s = (sigma or {}).get(g)
            self.sigma[g] = s if s is not None else Substitution.identity()
        self.rules = {}
        for (j, i), rhs in rules.items():
            if not (0 <= i < j < len(self.gens)):
                raise ValueError(f"{name}: rule key {(j, i)} is not a descending pair")
            self.rules[(j, i)] = {w: RatFunc._coerce(c) for w, c in rhs.items() if not RatFunc._coerce(c).is_zero()}
        self._validate()
        self._mul_cache: dict = {}
        self._transport_cache: dict = {(): Substitution.identity()}
        self._steps_left = 0

    # -- validation -------------------------------------------------------

    def _validate(self):
        allowed = set(self.coeff_vars) | set(self.scalars)
        for g, s in self.sigma.items():
            for v, img in s.mapping.items():
                if v not in allowed:
                    raise ValueError(f"{self.name}: sigma_{g} moves undeclared variable {v}")
                if not img.variables() <= allowed:
                    raise ValueError(f"{self.name}: sigma_{g}({v}) uses undeclared variables")
            if not s.verify_automorphism(self.coeff_vars):
                raise ValueError(f"{self.name}: sigma_{g} is not a verified automorphism")
        n = len(self.gens)
        for j in range(n):
            for i in range(j):
                if (j, i) not in self.rules:
                    raise ValueError(
                        f"{self.name}: missing rule for descending pair "
                        f"{self.gens[j]}*{self.gens[i]}"
                    )
        for (j, i), rhs in self.rules.items():
            for w, c in rhs.items():
                if any(x not in range(n) for x in w):
                    raise ValueError(f"{self.name}: rule RHS uses unknown generator index")
                if any(w[k] > w[k + 1] for k in range(len(w) - 1)):
                    raise ValueError(f"{self.name}: rule RHS word {w} is not ascending")
                if self.quadratic and len(w) > 2:
                    raise ValueError(
                        f"{self.name}: quadratic presentation has RHS word of length {len(w)}"
                    )
                if not c.variables() <= set(self.coeff_vars) | set(self.scalars):
                    raise ValueError(f"{self.name}: rule coefficient uses undeclared variables")

    # -- basic constructors ------------------------------------------------

    def gen_index(self, g) -> int:
        if isinstance(g, int):
            if not 0 <= g < len(self.gens):
                raise UnknownGenerator(f"{self.name}: index {g}")
            return g
        try:
            return self.gens.index(g)
        except ValueError:
            raise UnknownGenerator(f"{self.name}: {g}") from None

    def word_index(self, word) -> Word:
        return tuple(self.gen_index(g) for g in word)

    def element(self, terms: dict) -> Element:
        """Build an element from {word: coefficient} without normalizing;
        words must already be ascending."""
        out = {}
        for w, c in terms.items():
            w = self.word_index(w)
            if any(w[k] > w[k + 1] for k in range(len(w) - 1)):
                raise ValueError(f"word {w} is not ascending; use normal_form")
            c = RatFunc._coerce(c)
            if not c.is_zero():
                out[w] = out.get(w, RatFunc.const(0)) + c
        return Element(self, out)

    def gen(self, g) -> Element:
        return Element(self, {(self.gen_index(g),): ONE})

    def one(self) -> Element:
        return Element(self, {(): ONE})

    def zero(self) -> Element:
        return Element(self, {})

    def coerce(self, x) -> Element:
        if isinstance(x, Element):
            if x.pres is not self:
                raise ValueError("element belongs to a different presentation")
            return x
        if isinstance(x, str):
            return self.gen(x)
        return Element(self, {(): RatFunc._coerce(x)})

    def coeff_var(self, name: str) -> RatFunc:
        if name not in self.coeff_vars and name not in self.scalars:
            raise ValueError(f"{self.name}: undeclared variable {name}")
        return RatFunc.var(name)

    # -- coefficient transport ----------------------------------------------

    def transport(self, word: Word, c: RatFunc) -> RatFunc:
        """sigma_w(c): the coefficient that emerges on the left when the
        word w is moved leftwards past c (w * c = sigma_w(c) * w)."""
        return self._transport_subst(word)(c)

    def _transport_subst(self, word: Word) -> Substitution:
        s = self._transport_cache.get(word)
        if s is None:
            head = self.sigma[self.gens[word[0]]]
            s = head.after(self._transport_subst(word[1:]))
            self._transport_cache[word] = s
        return s

    # -- normal form --------------------------------------------------------

    def _spend_step(self):
        self._steps_left -= 1
        if self._steps_left < 0:
            raise NonTerminating(
                f"{self.name}: rewriting step budget exceeded "
                f"(PBW_STEP_BUDGET overrides the default {DEFAULT_STEP_BUDGET})"
            )

    def _mul_word_letter(self, w: Word, g: int) -> dict:
        """Normal form of (ascending word w) * g as {word: coeff}."""
        if not w or w[-1] <= g:
            return {w + (g,): ONE}
        key = (w, g)
        cached = self._mul_cache.get(key)
        if cached is not None:
            return cached
        self._spend_step()
        head, a = w[:-1], w[-1]
        out: dict = {}
        for v, c in self.rules[(a, g)].items():
            c = self.transport(head, c)
            for w2, c2 in self._mul_word_word(head, v).items():
                s = out.get(w2)
                s = c * c2 if s is None else s + c * c2
                if s.is_zero():
                    out.pop(w2, None)
                else:
                    out[w2] = s
        self._mul_cache[key] = out
        return out

    def _mul_word_word(self, u: Word, v: Word) -> dict:
        """Normal form of u * v for ascending u, arbitrary v."""
        acc = {u: ONE}
        for g in v:
            nxt: dict = {}
            for w, c in acc.items():
                for w2, c2 in self._mul_word_letter(w, g).items():
                    s = nxt.get(w2)
                    s = c * c2 if s is None else s + c * c2
                    if s.is_zero():
                        nxt.pop(w2, None)
                    else:
                        nxt[w2] = s
            acc = nxt
        return acc

    def normal_form(self, raw) -> Element:
        """Normalize a formal sum of (coefficient, arbitrary word) pairs.

        Accepts an Element (returned as is: Elements are always normal),
        an iterable of (coeff, word) pairs, or a bare word.
        """
        if isinstance(raw, Element):
            return raw
        if isinstance(raw, (tuple, list)) and all(
            isinstance(x, (str, int)) for x in raw
        ):
            raw = [(ONE, raw)]
        self._steps_left = _step_budget()
        out: dict = {}
        for c, word in raw:
            c = RatFunc._coerce(c)
            word = self.word_index(word)
            for w2, c2 in self._mul_word_word((), word).items():
                s = out.get(w2)
                s = c * c2 if s is None else s + c * c2
                if s.is_zero():
                    out.pop(w2, None)
                else:
                    out[w2] = s
        return Element(self, out)

    def multiply(self, a: Element, b: Element) -> Element:
        a = self.coerce(a)
        b = self.coerce(b)
        self._steps_left = _step_budget()
        out: dict = {}
        for u, cu in a.terms.items():
            subst = self._transport_subst(u)
            for v, cv in b.terms.items():
                c = cu * subst(cv)
                if c.is_zero():
                    continue
                for w, cw in self._mul_word_word(u, v).items():
                    s = out.get(w)
                    s = c * cw if s is None else s + c * cw
                    if s.is_zero():
                        out.pop(w, None)
                    else:
                        out[w] = s
        return Element(self, out)

    def commutator(self, a: Element, b: Element) -> Element:
        return self.multiply(a, b) - self.multiply(b, a)

    # -- diamond-lemma checking ---------------------------------------------

    def check_confluence(self) -> list:
        """All overlap triples (two reduction orders of g_k g_j g_i) plus the
        sigma-compatibility pair for every rule and coefficient variable."""
        reports = []
        n = len(self.gens)
        for k in range(n):
            for j in range(k):
                for i in range(j):
                    left = self._reduce_left_first(k, j, i)
                    right = self._reduce_right_first(k, j, i)
                    reports.append(CriticalPairReport((k, j, i), left, right))
        for (j, i) in sorted(self.rules):
            for x in self.coeff_vars:
                c = RatFunc.var(x)
                # transport first: g_j g_i x = sigma_j(sigma_i(x)) g_j g_i
                lhs_c = self.sigma[self.gens[j]](self.sigma[self.gens[i]](c))
                left = self.normal_form([(lhs_c, (j, i))])
                # rewrite first: (rule RHS) x
                rhs = self.element({w: cc for w, cc in self.rules[(j, i)].items()})
                right = self.multiply(rhs, self.coerce(c))
                reports.append(CriticalPairReport(((j, i), x), left, right))
        return reports

    def is_confluent(self) -> bool:
        return all(r.resolved for r in self.check_confluence())

    def _reduce_left_first(self, k: int, j: int, i: int) -> Element:
        parts = []
        for v, c in self.rules[(k, j)].items():
            parts.append((c, v + (i,)))
        return self.normal_form(parts)

    def _reduce_right_first(self, k: int, j: int, i: int) -> Element:
        parts = []
        sk = self.sigma[self.gens[k]]
        for v, c in self.rules[(j, i)].items():
            parts.append((sk(c), (k,) + v))
        return self.normal_form(parts)

    # -- twist derivation ----------------------------------------------------

    def derive_twist(self, g, x: str) -> TwistReport:
        """The single-term twist transporting x across g, with its axiom
        check g(x b) = sigma_g(x) (g b) on all words b of length <= 2, plus
        the automorphism certificate and rule compatibility for g."""
        gi = self.gen_index(g)
        gname = self.gens[gi]
        if x not in self.coeff_vars:
            raise ValueError(f"{x} is not a coefficient variable of {self.name}")
        s = self.sigma[gname]
        if not s.verify_automorphism(self.coeff_vars):
            raise TwistAxiomFailure(
                f"sigma_{gname} has no verified two-sided inverse", witness=gname
            )
        xq = RatFunc.var(x)
        a = self.gen(gname)
        words = [()]
        words += [(i,) for i in range(len(self.gens))]
        words += [
            (i, j) for i in range(len(self.gens)) for j in range(i, len(self.gens))
        ]
        for w in words:
            b = Element(self, {w: ONE})
            lhs = self.multiply(a, b.scale(xq))
            rhs = self.multiply(a, b).scale(s(xq))
            if lhs != rhs:
                raise TwistAxiomFailure(
                    f"transport axiom fails for ({gname}, {x})", witness=w
                )
        for (j, i) in sorted(self.rules):
            if gi not in (j, i):
                continue
            lhs_c = self.sigma[self.gens[j]](self.sigma[self.gens[i]](xq))
            left = self.normal_form([(lhs_c, (j, i))])
            rhs = self.element(self.rules[(j, i)])
            right = self.multiply(rhs, self.coerce(xq))
            if left != right:
                raise TwistAxiomFailure(
                    f"rule {self.gens[j]}*{self.gens[i]} is incompatible with "
                    f"the exchange of {x}",
                    witness=(j, i),
                )
        return TwistReport(gname, x, s(xq))

    # -- rendering ------------------------------------------------------------

    def render_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        k = 0
        while k < len(w):
            run = 1
            while k + run < len(w) and w[k + run] == w[k]:
                run += 1
            name = self.gens[w[k]]
            parts.append(name if run == 1 else f"{name}^{run}")
            k += run
        return "*".join(parts)

    def render_element(self, e: Element) -> str:
        if e.is_zero():
            return "0"
        pieces = []
        for w in e.words():
            c = e.terms[w]
            if not w:
                pieces.append(str(c))
                continue
            word = self.render_word(w)
            if c == ONE:
                pieces.append(word)
            elif c == RatFunc.const(-1):
                pieces.append(f"-{word}")
            elif c.is_const() and c.den.is_const():
                pieces.append(f"{c}*{word}")
            else:
                pieces.append(f"({c})*{word}")
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented
        return (
            self.name == other.name
            and self.gens == other.gens
            and self.coeff_vars == other.coeff_vars
            and self.scalars == other.scalars
            and self.rules == other.rules
            and all(self.sigma[g] == other.sigma[g] for g in self.gens)
        )

    def __repr__(self):
        return f"AlgebraPresentation({self.name!r}, gens={self.gens})"


def commutator_rules(gens, brackets: dict, coerce=RatFunc._coerce) -> dict:
    """Turn Lie-style bracket data [g_j, g_i] = sum c_w w (j > i) into
    normal-ordering rules g_j g_i -> g_i g_j + bracket."""
    index = {g: k for k, g in enumerate(gens)}
    rules = {}
    for (gj, gi), rhs in brackets.items():
        j, i = index[gj], index[gi]
        if j < i:
            raise ValueError(f"bracket [{gj},{gi}] given with ascending pair")
        terms = {(i, j): ONE}
        for w, c in rhs.items():
            w = tuple(index[x] for x in w)
            terms[w] = terms.get(w, RatFunc.const(0)) + coerce(c)
        rules[(j, i)] = terms
    n = len(gens)
    for j in range(n):
        for i in range(j):
            rules.setdefault((j, i), {(i, j): ONE})
    return rules
