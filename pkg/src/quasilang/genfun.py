"""Multivariate generating functions of languages.

Closed forms live in the class K_N: rational functions with coefficients in
Q(zeta_N) whose denominator is a product of factors (1 - lambda_k), each
lambda_k a Z[zeta_N]-integral linear form in the variables.  The factored
shape is maintained constructively end to end; no factorization of general
denominators is ever attempted.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import lcm

from .cyclotomic import (
    CyclotomicNumber,
    cyclotomic_from_json,
    cyclotomic_to_json,
)
from .errors import AmbiguousExpressionError, ValidationError
from .langkit import (
    AbelianGroup,
    Concat,
    Dfa,
    Empty,
    Epsilon,
    Norm,
    QuasiOrderedExpr,
    Star,
    Sym,
    Union,
    compile_ordered,
    intersect_dfa,
)

# ---------------------------------------------------------------------------
# polynomial helpers: dicts exponent-tuple -> CyclotomicNumber


def _pstrip(p: dict) -> dict:
    return {e: c for e, c in p.items() if not c.is_zero()}


def _padd(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        out[e] = out[e] + c if e in out else c
    return _pstrip(out)


def _pscale(p: dict, c) -> dict:
    return _pstrip({e: v * c for e, v in p.items()})


def _pmul(p: dict, q: dict, bound: tuple[int, ...] | None = None) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if bound is not None and any(x > b for x, b in zip(e, bound)):
                continue
            out[e] = out[e] + c1 * c2 if e in out else c1 * c2
    return _pstrip(out)


class LinearForm:
    """A finitely supported linear form sum_i c_i t_i with cyclotomic c_i."""

    __slots__ = ("terms",)

    def __init__(self, coeffs: dict):
        self.terms = tuple(
            sorted(((v, c) for v, c in coeffs.items() if not c.is_zero()), key=lambda t: t[0])
        )

    def lift(self, order: int) -> "LinearForm":
        return LinearForm({v: c.lift(order) for v, c in self.terms})

    def key(self, order: int):
        return tuple((v, c.lift(order).coeffs) for v, c in self.terms)

    def is_integral(self) -> bool:
        return all(c.is_integral() for _, c in self.terms)

    def scaled_vars(self, scale: dict[int, CyclotomicNumber]) -> "LinearForm":
        return LinearForm({v: (c * scale[v] if v in scale else c) for v, c in self.terms})

    def rename(self, mapping) -> "LinearForm":
        out: dict = {}
        for v, c in self.terms:
            w = mapping[v]
            out[w] = out[w] + c if w in out else c
        return LinearForm(out)

    def as_poly(self, nvars: int) -> dict:
        def unit(v):
            e = [0] * nvars
            e[v] = 1
            return tuple(e)

        return {unit(v): c for v, c in self.terms}

    def __repr__(self) -> str:
        return " + ".join(f"({c!r})*t{v}" for v, c in self.terms) or "0"


class FactoredRational:
    """numerator / prod_k (1 - lambda_k) with everything over Q(zeta_order).

    The "1 -" of each denominator factor is implicit: `factors` stores the
    linear forms lambda_k themselves, which never have a constant term.
    """

    __slots__ = ("nvars", "order", "numerator", "factors")

    def __init__(self, nvars: int, order: int, numerator: dict, factors=()):
        self.nvars = nvars
        self.order = order
        self.numerator = {
            e: c.lift(order) for e, c in numerator.items() if not c.is_zero()
        }
        for e in self.numerator:
            if len(e) != nvars:
                raise ValidationError(f"exponent {e} does not have {nvars} coordinates")
        self.factors = tuple(
            sorted((f.lift(order) for f in factors), key=lambda f: f.key(order))
        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "FactoredRational":
        return cls(nvars, 1, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "FactoredRational":
        c = value if isinstance(value, CyclotomicNumber) else CyclotomicNumber.from_rational(value)
        return cls(nvars, c.order, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "FactoredRational":
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, nvars: int, var: int) -> "FactoredRational":
        e = [0] * nvars
        e[var] = 1
        return cls(nvars, 1, {tuple(e): CyclotomicNumber.one()})

    @classmethod
    def geometric(cls, nvars: int, form: LinearForm) -> "FactoredRational":
        """1 / (1 - form)."""
        order = 1
        for _, c in form.terms:
            order = lcm(order, c.order)
        return cls(nvars, order, {(0,) * nvars: CyclotomicNumber.one(order)}, (form,))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "FactoredRational") -> None:
        if self.nvars != other.nvars:
            raise ValidationError("operands have different variable counts")

    def __add__(self, other: "FactoredRational") -> "FactoredRational":
        self._check(other)
        order = lcm(self.order, other.order)
        # multiset cancellation of syntactically identical linear factors
        ca = Counter(f.key(order) for f in self.factors)
        cb = Counter(f.key(order) for f in other.factors)
        common = ca & cb
        extra_a = ca - common
        extra_b = cb - common
        forms = {}
        for f in itertools.chain(self.factors, other.factors):
            forms.setdefault(f.key(order), f.lift(order))

        def poly_of(counter) -> dict:
            p = {(0,) * self.nvars: CyclotomicNumber.one(order)}
            for key, mult in counter.items():
                factor_poly = _padd(
                    {(0,) * self.nvars: CyclotomicNumber.one(order)},
                    _pscale(forms[key].as_poly(self.nvars), -1),
                )
                for _ in range(mult):
                    p = _pmul(p, factor_poly)
            return p

        num = _padd(
            _pmul(self.numerator, poly_of(extra_b)),
            _pmul(other.numerator, poly_of(extra_a)),
        )
        all_factors = list(common.elements()) + list(extra_a.elements()) + list(extra_b.elements())
        return FactoredRational(self.nvars, order, num, tuple(forms[k] for k in all_factors))

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        self._check(other)
        order = lcm(self.order, other.order)
        return FactoredRational(
            self.nvars,
            order,
            _pmul(self.numerator, other.numerator),
            self.factors + other.factors,
        )

    def scale(self, c) -> "FactoredRational":
        if not isinstance(c, CyclotomicNumber):
            c = CyclotomicNumber.from_rational(c)
        order = lcm(self.order, c.order)
        return FactoredRational(self.nvars, order, _pscale(self.numerator, c), self.factors)

    def __neg__(self) -> "FactoredRational":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not self.numerator

    def is_integral_denominator(self) -> bool:
        """K_N shape check: all denominator linear forms lie in Z[zeta_N]."""
        return all(f.is_integral() for f in self.factors)

    # -- substitutions -------------------------------------------------------

    def translate(self, exponents, root_order: int | None = None) -> "FactoredRational":
        """Substitute t_i <- zeta^(k_i) t_i with zeta primitive of root_order."""
        if len(exponents) != self.nvars:
            raise ValidationError("need one root-of-unity exponent per variable")
        ro = root_order or self.order
        order = lcm(self.order, ro)
        scale = {i: CyclotomicNumber.root(ro, k).lift(order) for i, k in enumerate(exponents)}
        num = {}
        for e, c in self.numerator.items():
            mult = CyclotomicNumber.root(ro, sum(k * n for k, n in zip(exponents, e)))
            num[e] = c * mult
        factors = tuple(f.lift(order).scaled_vars(scale) for f in self.factors)
        return FactoredRational(self.nvars, order, num, factors)

    def rename_variables(self, mapping, new_nvars: int) -> "FactoredRational":
        """Substitute t_i <- t_mapping[i] (a variable-to-variable ring map)."""
        num: dict = {}
        for e, c in self.numerator.items():
            new_e = [0] * new_nvars
            for v, k in enumerate(e):
                new_e[mapping[v]] += k
            key = tuple(new_e)
            num[key] = num[key] + c if key in num else c
        factors = tuple(f.rename(mapping) for f in self.factors)
        return FactoredRational(new_nvars, self.order, num, factors)

    # -- expansion ------------------------------------------------------------

    def expand(self, bound) -> "SeriesTruncation":
        if isinstance(bound, int):
            bound = (bound,) * self.nvars
        bound = tuple(bound)
        if len(bound) != self.nvars:
            raise ValidationError("bound must have one coordinate per variable")
        poly = {e: c for e, c in self.numerator.items() if all(x <= b for x, b in zip(e, bound))}
        exponents = sorted(
            itertools.product(*(range(b + 1) for b in bound)), key=lambda e: (sum(e), e)
        )
        for f in self.factors:
            # U = poly / (1 - lam) via U[e] = poly[e] + sum_v c_v U[e - e_v],
            # filled in graded order
            terms = f.terms
            new: dict = {}
            for e in exponents:
                acc = poly.get(e)
                for v, c in terms:
                    if e[v]:
                        prev = new.get(e[:v] + (e[v] - 1,) + e[v + 1 :])
                        if prev is not None:
                            contrib = prev * c
                            acc = contrib if acc is None else acc + contrib
                if acc is not None and not acc.is_zero():
                    new[e] = acc
            poly = new
        return SeriesTruncation(self.order, bound, poly)

    def __repr__(self) -> str:
        return f"FactoredRational(order={self.order}, num={len(self.numerator)} terms, {len(self.factors)} factors)"

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "order": self.order,
            "numerator": [
                [list(e), cyclotomic_to_json(c)]
                for e, c in sorted(self.numerator.items())
            ],
            "factors": [
                [[v, cyclotomic_to_json(c)] for v, c in f.terms] for f in self.factors
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FactoredRational":
        num = {tuple(e): cyclotomic_from_json(c) for e, c in data["numerator"]}
        factors = tuple(
            LinearForm({v: cyclotomic_from_json(c) for v, c in terms})
            for terms in data["factors"]
        )
        return cls(int(data["nvars"]), int(data["order"]), num, factors)


class SeriesTruncation:
    """Exact truncated power series: coefficients for exponents <= bound."""

    __slots__ = ("order", "bound", "coefficients")

    def __init__(self, order: int, bound: tuple[int, ...], coefficients: dict):
        self.order = order
        self.bound = tuple(bound)
        self.coefficients = {}
        for e, c in coefficients.items():
            if any(x > b for x, b in zip(e, self.bound)):
                raise ValidationError(f"exponent {e} exceeds the bound {self.bound}")
            if not isinstance(c, CyclotomicNumber):
                c = CyclotomicNumber.from_rational(c)
            if not c.is_zero():
                self.coefficients[e] = c

    def coefficient(self, exponent) -> CyclotomicNumber:
        return self.coefficients.get(tuple(exponent), CyclotomicNumber.zero(self.order))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesTruncation):
            return NotImplemented
        if self.bound != other.bound:
            return False
        keys = set(self.coefficients) | set(other.coefficients)
        return all(self.coefficient(e) == other.coefficient(e) for e in keys)

    __hash__ = None

    def __repr__(self) -> str:
        return f"SeriesTruncation(bound={self.bound}, {len(self.coefficients)} nonzero)"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "bound": list(self.bound),
            "coefficients": [
                [list(e), cyclotomic_to_json(c)] for e, c in sorted(self.coefficients.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SeriesTruncation":
        coeffs = {tuple(e): cyclotomic_from_json(c) for e, c in data["coefficients"]}
        return cls(int(data["order"]), tuple(data["bound"]), coeffs)


# ---------------------------------------------------------------------------
# series from automata (the brute-force oracle)


def series_from_dfa(dfa: Dfa, norm: Norm, bound) -> SeriesTruncation:
    """Count accepted words by norm via dynamic programming over (state, norm)."""
    if isinstance(bound, int):
        bound = (bound,) * norm.size
    bound = tuple(bound)
    sym_norm = [(dfa.symbol_index(s), norm.index(s)) for s in dfa.alphabet]
    exponents = sorted(
        itertools.product(*(range(b + 1) for b in bound)), key=lambda e: (sum(e), e)
    )
    n = dfa.n_states
    table: dict[tuple[int, ...], list[int]] = {}
    zero = (0,) * len(bound)
    start_row = [0] * n
    start_row[dfa.start] = 1
    table[zero] = start_row
    for e in exponents:
        row = table.get(e)
        if row is None:
            continue
        for si, ni in sym_norm:
            ne = list(e)
            ne[ni] += 1
            if ne[ni] > bound[ni]:
                continue
            ne = tuple(ne)
            target = table.setdefault(ne, [0] * n)
            for q, cnt in enumerate(row):
                if cnt:
                    target[dfa.delta[q][si]] += cnt
    coeffs = {}
    for e, row in table.items():
        total = sum(row[q] for q in dfa.accepting)
        if total:
            coeffs[e] = CyclotomicNumber.from_rational(total)
    return SeriesTruncation(1, bound, coeffs)


# ---------------------------------------------------------------------------
# unambiguity certificate


def _concat_ambiguous(d1: Dfa, d2: Dfa) -> bool:
    """Whether some word of L(d1)L(d2) splits in two ways.

    Searches for u in L1, v != eps, x with uv in L1, vx in L2, x in L2 by
    reachability over three phases: reading u in d1; reading v in d1 and d2
    simultaneously; reading x in d2 from both the post-v state and the start.
    """
    alphabet = d1.alphabet
    k = len(alphabet)
    seen = set()
    stack: list[tuple] = [(1, d1.start)]
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        phase = state[0]
        if phase == 1:
            p = state[1]
            for i in range(k):
                stack.append((1, d1.delta[p][i]))
                if p in d1.accepting:  # u ends here; start reading v
                    stack.append((2, d1.delta[p][i], d2.delta[d2.start][i]))
        elif phase == 2:
            _, p, q = state
            if p in d1.accepting:  # uv complete; start reading x
                stack.append((3, q, d2.start))
            for i in range(k):
                stack.append((2, d1.delta[p][i], d2.delta[q][i]))
        else:
            _, q, q2 = state
            if q in d2.accepting and q2 in d2.accepting:
                return True
            for i in range(k):
                stack.append((3, d2.delta[q][i], d2.delta[q2][i]))
    return False


def certify_unambiguous(expr, alphabet) -> Dfa:
    """Check that the expression denotes every word exactly once.

    Unions must have pairwise disjoint branches; concatenations must admit a
    unique factorization for every word.  Returns the compiled automaton of
    the whole expression; raises AmbiguousExpressionError otherwise.
    """
    symbols = tuple(alphabet.symbols) if hasattr(alphabet, "symbols") else tuple(alphabet)
    if isinstance(expr, (Empty, Epsilon, Sym, Star)):
        return compile_ordered(expr, symbols)
    if isinstance(expr, Union):
        dfas = [certify_unambiguous(p, symbols) for p in expr.parts]
        for i in range(len(dfas)):
            for j in range(i + 1, len(dfas)):
                if not intersect_dfa(dfas[i], dfas[j]).is_empty():
                    raise AmbiguousExpressionError(
                        f"union branches {i} and {j} overlap"
                    )
        return compile_ordered(expr, symbols)
    if isinstance(expr, Concat):
        dfas = [certify_unambiguous(p, symbols) for p in expr.parts]
        if not expr.parts:
            return compile_ordered(expr, symbols)
        acc = dfas[0]
        for j in range(1, len(dfas)):
            if _concat_ambiguous(acc, dfas[j]):
                raise AmbiguousExpressionError(
                    f"concatenation admits two factorizations at position {j}"
                )
            acc = compile_ordered(Concat(expr.parts[: j + 1]), symbols)
        return acc
    raise ValidationError(f"not a language expression: {expr!r}")


# ---------------------------------------------------------------------------
# closed forms


def ordered_genfun(expr, alphabet, norm: Norm | None = None) -> FactoredRational:
    """Closed K_1 form of a certified-unambiguous ordered expression.

    Singleton(x) becomes t_(nu x); Star(Pi) becomes 1/(1 - sum of its
    variables); concatenation multiplies and certified-disjoint union adds.
    """
    symbols = tuple(alphabet.symbols) if hasattr(alphabet, "symbols") else tuple(alphabet)
    if norm is None:
        norm = Norm.universal(symbols)
    if not norm.is_universal:
        raise ValidationError("ordered_genfun requires a universal norm")
    certify_unambiguous(expr, symbols)
    nvars = norm.size

    def build(e) -> FactoredRational:
        if isinstance(e, Empty):
            return FactoredRational.zero(nvars)
        if isinstance(e, Epsilon):
            return FactoredRational.one(nvars)
        if isinstance(e, Sym):
            return FactoredRational.monomial(nvars, norm.index(e.symbol))
        if isinstance(e, Star):
            coeffs: dict = {}
            for s in e.symbols:
                v = norm.index(s)
                coeffs[v] = coeffs.get(v, CyclotomicNumber.zero()) + CyclotomicNumber.one()
            return FactoredRational.geometric(nvars, LinearForm(coeffs))
        if isinstance(e, Union):
            acc = FactoredRational.zero(nvars)
            for p in e.parts:
                acc = acc + build(p)
            return acc
        if isinstance(e, Concat):
            acc = FactoredRational.one(nvars)
            for p in e.parts:
                acc = acc * build(p)
            return acc
        raise ValidationError(f"not a language expression: {e!r}")

    return build(expr)


def cyclotomic_translate(F: FactoredRational, exponents, root_order: int | None = None) -> FactoredRational:
    """Substitute t_i <- zeta^(k_i) t_i; coefficient of t^n picks up prod zeta_i^(n_i)."""
    return F.translate(exponents, root_order)


def congruence_filter(F: FactoredRational, psi, group: AbelianGroup, target) -> FactoredRational:
    """Keep exactly the coefficients a_n with psi(n) in the target subset.

    psi is given on basis vectors (one group element per variable).  The
    result is the character-sum combination of cyclotomic translates of F:
    sum over characters chi of c_chi * F(chi(psi(e_1)) t_1, ...), with
    c_chi = (1/#Lambda) * sum_{s in target} chi(s)^(-1).
    """
    psi = list(psi)
    if len(psi) != F.nvars:
        raise ValidationError("psi must assign a group element to every variable")
    for g in psi:
        if not group.contains(g):
            raise ValidationError(f"{g!r} is not an element of the group")
    n_mod = group.exponent
    size = group.size
    result = FactoredRational.zero(F.nvars)
    for chi in group.elements():
        weight = CyclotomicNumber.zero(n_mod)
        for s in target:
            weight = weight + CyclotomicNumber.root(n_mod, -group.char_exponent(chi, s, n_mod))
        coeff = weight * Fraction(1, size)
        if coeff.is_zero():
            continue
        exps = [group.char_exponent(chi, g, n_mod) for g in psi]
        result = result + cyclotomic_translate(F, exps, n_mod).scale(coeff)
    return result


def quasi_ordered_genfun(q: QuasiOrderedExpr, norm: Norm | None = None) -> FactoredRational:
    """Closed K_N form of an (unambiguous) ordered language cut by a congruence.

    Requires the universal norm so the congruence map factors through it.
    """
    symbols = q.cong.alphabet
    if norm is None:
        norm = Norm.universal(symbols)
    if not norm.is_universal:
        raise ValidationError("quasi_ordered_genfun requires a universal norm")
    F = ordered_genfun(q.ordered, symbols, norm)
    group = q.cong.group
    psi = [group.identity()] * norm.size
    for s in symbols:
        psi[norm.index(s)] = q.cong.phi[s]
    return congruence_filter(F, psi, group, q.cong.target)


def expand_rational(F: FactoredRational, bound) -> SeriesTruncation:
    """Exact geometric-series expansion of a factored rational function."""
    return F.expand(bound)
