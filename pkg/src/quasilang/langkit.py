"""Finite automata and the language classes driving the generating functions:
ordered languages (singletons and subset-stars under union/concatenation),
congruence languages (preimages of subsets of a finite abelian group), and
their intersections, the quasi-ordered languages."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm, prod

from .errors import ValidationError

Symbol = object  # symbols are opaque hashables (strings, tuples, ...)


# ---------------------------------------------------------------------------
# finite abelian groups as products of cyclic groups


@dataclass(frozen=True)
class AbelianGroup:
    """Z/n_1 x ... x Z/n_r; elements are tuples of residues."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(n < 1 for n in self.orders):
            raise ValidationError(f"cyclic orders must be positive: {self.orders}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == len(self.orders)
            and all(0 <= x < n for x, n in zip(g, self.orders))
        )

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def sum(self, elems) -> tuple[int, ...]:
        total = self.identity()
        for e in elems:
            total = self.add(total, e)
        return total

    def element_order(self, a) -> int:
        return lcm(*(n // gcd(x, n) for x, n in zip(a, self.orders))) if self.orders else 1

    def char_exponent(self, m, g, modulus: int | None = None) -> int:
        """Exponent e with chi_m(g) = zeta_N^e, N the exponent (or a multiple)."""
        n_mod = modulus if modulus is not None else self.exponent
        total = 0
        for mi, gi, ni in zip(m, g, self.orders):
            total += mi * gi * (n_mod // ni)
        return total % n_mod


# ---------------------------------------------------------------------------
# alphabets and norms


class Norm:
    """A monoid map Sigma* -> N^I induced by a function symbol -> index."""

    def __init__(self, mapping: dict, size: int | None = None):
        self.mapping = dict(mapping)
        self.size = size if size is not None else (max(self.mapping.values()) + 1 if self.mapping else 0)
        for v in self.mapping.values():
            if not (0 <= v < self.size):
                raise ValidationError(f"norm index {v} out of range 0..{self.size - 1}")

    @classmethod
    def universal(cls, symbols) -> "Norm":
        symbols = list(symbols)
        return cls({s: i for i, s in enumerate(symbols)}, len(symbols))

    @classmethod
    def length(cls, symbols) -> "Norm":
        return cls({s: 0 for s in symbols}, 1)

    @property
    def is_universal(self) -> bool:
        vals = list(self.mapping.values())
        return len(vals) == len(set(vals))

    def index(self, symbol) -> int:
        try:
            return self.mapping[symbol]
        except KeyError:
            raise ValidationError(f"symbol {symbol!r} has no norm index") from None

    def vector(self, word) -> tuple[int, ...]:
        v = [0] * self.size
        for s in word:
            v[self.index(s)] += 1
        return tuple(v)


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple
    norm_map: dict | None = None

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValidationError("alphabet symbols must be distinct")

    def norm(self) -> Norm:
        if self.norm_map is None:
            return Norm.universal(self.symbols)
        return Norm({s: self.norm_map[s] for s in self.symbols})


# ---------------------------------------------------------------------------
# ordered-language expressions


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Sym:
    symbol: object


@dataclass(frozen=True)
class Star:
    symbols: tuple  # the subset Pi of the alphabet

    def __init__(self, symbols):
        object.__setattr__(self, "symbols", tuple(sorted(set(symbols), key=repr)))


@dataclass(frozen=True)
class Union:
    parts: tuple

    def __init__(self, *parts):
        if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
            parts = tuple(parts[0])
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Concat:
    parts: tuple

    def __init__(self, *parts):
        if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
            parts = tuple(parts[0])
        object.__setattr__(self, "parts", tuple(parts))


LanguageExpr = (Empty, Epsilon, Sym, Star, Union, Concat)


def expr_symbols(expr) -> set:
    if isinstance(expr, (Empty, Epsilon)):
        return set()
    if isinstance(expr, Sym):
        return {expr.symbol}
    if isinstance(expr, Star):
        return set(expr.symbols)
    if isinstance(expr, (Union, Concat)):
        out: set = set()
        for p in expr.parts:
            out |= expr_symbols(p)
        return out
    raise ValidationError(f"not a language expression: {expr!r}")


def validate_expr(expr, symbols) -> None:
    extra = expr_symbols(expr) - set(symbols)
    if extra:
        raise ValidationError(f"expression uses symbols outside the alphabet: {sorted(map(repr, extra))}")


# ---------------------------------------------------------------------------
# DFAs


class Dfa:
    """Deterministic automaton with a total transition function.

    States are 0..n-1; `delta[state][symbol_index]` is the successor.  States
    are canonically numbered by BFS from the start state (symbols in alphabet
    order), so equal languages compiled the same way serialize identically.
    """

    def __init__(self, alphabet, delta, start: int, accepting):
        self.alphabet = tuple(alphabet)
        self.delta = tuple(tuple(row) for row in delta)
        self.start = start
        self.accepting = frozenset(accepting)
        self._sym_index = {s: i for i, s in enumerate(self.alphabet)}
        n = len(self.delta)
        for row in self.delta:
            if len(row) != len(self.alphabet) or any(not (0 <= t < n) for t in row):
                raise ValidationError("transition table is not total over the state set")
        if not (0 <= start < n) or any(a not in range(n) for a in self.accepting):
            raise ValidationError("start/accepting states out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def symbol_index(self, symbol) -> int:
        try:
            return self._sym_index[symbol]
        except KeyError:
            raise ValidationError(f"symbol {symbol!r} not in the automaton alphabet") from None

    def step(self, state: int, symbol) -> int:
        return self.delta[state][self.symbol_index(symbol)]

    def accepts(self, word) -> bool:
        state = self.start
        for s in word:
            state = self.step(state, s)
        return state in self.accepting

    def is_empty(self) -> bool:
        seen = {self.start}
        stack = [self.start]
        while stack:
            q = stack.pop()
            if q in self.accepting:
                return False
            for t in self.delta[q]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return True


def _canonicalize(alphabet, delta, start, accepting) -> Dfa:
    """Renumber reachable states in BFS order (alphabet order for ties)."""
    order = {start: 0}
    queue = [start]
    while queue:
        q = queue.pop(0)
        for t in delta[q]:
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    new_delta = [[0] * len(alphabet) for _ in range(len(order))]
    for old, new in order.items():
        for i, t in enumerate(delta[old]):
            new_delta[new][i] = order[t]
    new_acc = {order[q] for q in accepting if q in order}
    return Dfa(alphabet, new_delta, 0, new_acc)


def _minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement followed by canonical renumbering."""
    n = dfa.n_states
    block = [1 if q in dfa.accepting else 0 for q in range(n)]
    while True:
        signature = {}
        new_block = [0] * n
        for q in range(n):
            sig = (block[q], tuple(block[t] for t in dfa.delta[q]))
            if sig not in signature:
                signature[sig] = len(signature)
            new_block[q] = signature[sig]
        if new_block == block:
            break
        block = new_block
    k = max(block) + 1
    delta = [[0] * len(dfa.alphabet) for _ in range(k)]
    for q in range(n):
        for i, t in enumerate(dfa.delta[q]):
            delta[block[q]][i] = block[t]
    accepting = {block[q] for q in dfa.accepting}
    return _canonicalize(dfa.alphabet, delta, block[dfa.start], accepting)


class _Nfa:
    """Internal epsilon-NFA used by compile_ordered."""

    def __init__(self):
        self.n = 0
        self.edges: dict[tuple[int, object], set[int]] = {}
        self.eps: dict[int, set[int]] = {}

    def state(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, a: int, symbol, b: int) -> None:
        self.edges.setdefault((a, symbol), set()).add(b)

    def epsilon(self, a: int, b: int) -> None:
        self.eps.setdefault(a, set()).add(b)

    def closure(self, states) -> frozenset:
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for t in self.eps.get(q, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


def _expr_to_nfa(expr, nfa: _Nfa) -> tuple[int, int]:
    """Thompson-style fragment (start, accept)."""
    start, out = nfa.state(), nfa.state()
    if isinstance(expr, Empty):
        pass
    elif isinstance(expr, Epsilon):
        nfa.epsilon(start, out)
    elif isinstance(expr, Sym):
        nfa.edge(start, expr.symbol, out)
    elif isinstance(expr, Star):
        nfa.epsilon(start, out)
        for s in expr.symbols:
            nfa.edge(start, s, start)
    elif isinstance(expr, Union):
        # an empty union denotes the empty language (no edges at all)
        for p in expr.parts:
            s, o = _expr_to_nfa(p, nfa)
            nfa.epsilon(start, s)
            nfa.epsilon(o, out)
    elif isinstance(expr, Concat):
        cur = start
        for p in expr.parts:
            s, o = _expr_to_nfa(p, nfa)
            nfa.epsilon(cur, s)
            cur = o
        nfa.epsilon(cur, out)
    else:
        raise ValidationError(f"not a language expression: {expr!r}")
    return start, out


def compile_ordered(expr, alphabet) -> Dfa:
    """Compile an ordered-language expression to a minimal canonical DFA."""
    symbols = tuple(alphabet.symbols if isinstance(alphabet, Alphabet) else alphabet)
    validate_expr(expr, symbols)
    nfa = _Nfa()
    start, accept = _expr_to_nfa(expr, nfa)
    # subset construction with an implicit total sink (the empty subset)
    init = nfa.closure({start})
    index = {init: 0}
    delta: list[list[int]] = []
    queue = [init]
    while queue:
        cur = queue.pop(0)
        row = []
        for s in symbols:
            nxt = set()
            for q in cur:
                nxt |= nfa.edges.get((q, s), set())
            nxt = nfa.closure(nxt)
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            row.append(index[nxt])
        delta.append(row)
    accepting = {i for sub, i in index.items() if accept in sub}
    dfa = Dfa(symbols, delta, 0, accepting)
    return _minimize(dfa)


@dataclass(frozen=True)
class CongruenceSpec:
    """phi: Sigma -> Lambda together with a target subset S of Lambda."""

    group: AbelianGroup
    phi: dict
    target: frozenset
    alphabet: tuple

    def __init__(self, group, phi, target, alphabet):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "phi", dict(phi))
        object.__setattr__(self, "target", frozenset(target))
        object.__setattr__(self, "alphabet", tuple(alphabet))
        for s in self.alphabet:
            if s not in self.phi:
                raise ValidationError(f"phi is not total: missing {s!r}")
            if not group.contains(self.phi[s]):
                raise ValidationError(f"phi({s!r}) = {self.phi[s]!r} is not a group element")
        for t in self.target:
            if not group.contains(t):
                raise ValidationError(f"target element {t!r} is not in the group")

    def value(self, word):
        return self.group.sum(self.phi[s] for s in word)


@dataclass(frozen=True)
class QuasiOrderedExpr:
    """Intersection of an ordered language with a congruence language."""

    ordered: object
    cong: CongruenceSpec

    def __post_init__(self):
        validate_expr(self.ordered, self.cong.alphabet)


def compile_congruence(spec: CongruenceSpec) -> Dfa:
    """The #Lambda-state automaton: states are group elements, start 0,
    transition g -> g + phi(a), accepting exactly the target subset."""
    elements = spec.group.elements()
    index = {g: i for i, g in enumerate(elements)}
    delta = [
        [index[spec.group.add(g, spec.phi[s])] for s in spec.alphabet]
        for g in elements
    ]
    accepting = {index[t] for t in spec.target}
    return Dfa(spec.alphabet, delta, index[spec.group.identity()], accepting)


def intersect_dfa(a: Dfa, b: Dfa) -> Dfa:
    """Reachable product automaton recognizing L(a) n L(b)."""
    if a.alphabet != b.alphabet:
        raise ValidationError("cannot intersect automata over different alphabets")
    index = {(a.start, b.start): 0}
    delta: list[list[int]] = []
    queue = [(a.start, b.start)]
    while queue:
        p, q = queue.pop(0)
        row = []
        for i in range(len(a.alphabet)):
            t = (a.delta[p][i], b.delta[q][i])
            if t not in index:
                index[t] = len(index)
                queue.append(t)
            row.append(index[t])
        delta.append(row)
    accepting = {i for (p, q), i in index.items() if p in a.accepting and q in b.accepting}
    return Dfa(a.alphabet, delta, 0, accepting)


def membership(dfa: Dfa, word) -> bool:
    return dfa.accepts(word)


def enumerate_by_norm(dfa: Dfa, norm: Norm, bound) -> list[tuple]:
    """All accepted words with norm coordinatewise <= bound, lexicographically
    by alphabet order (prefixes before their extensions)."""
    if isinstance(bound, int):
        bound = (bound,) * norm.size
    bound = tuple(bound)
    if len(bound) != norm.size:
        raise ValidationError(f"bound has {len(bound)} coordinates, norm has {norm.size}")
    out: list[tuple] = []
    sym_norm = [(s, norm.index(s)) for s in dfa.alphabet]

    def rec(state: int, word: list, budget: list[int]) -> None:
        if state in dfa.accepting:
            out.append(tuple(word))
        for s, i in sym_norm:
            if budget[i] > 0:
                budget[i] -= 1
                word.append(s)
                rec(dfa.step(state, s), word, budget)
                word.pop()
                budget[i] += 1

    rec(dfa.start, [], list(bound))
    return out


def compile_quasi_ordered(expr: QuasiOrderedExpr) -> Dfa:
    """Intersection of the compiled ordered and congruence automata."""
    return intersect_dfa(compile_ordered(expr.ordered, expr.cong.alphabet), compile_congruence(expr.cong))


# ---------------------------------------------------------------------------
# JSON codecs: symbols may be strings or (letter, weight-tuple) pairs


def symbol_to_json(sym):
    if isinstance(sym, tuple):
        return [symbol_to_json(x) for x in sym]
    return sym


def symbol_from_json(data):
    if isinstance(data, list):
        return tuple(symbol_from_json(x) for x in data)
    return data


def expr_to_json(expr) -> dict:
    if isinstance(expr, Empty):
        return {"kind": "empty"}
    if isinstance(expr, Epsilon):
        return {"kind": "epsilon"}
    if isinstance(expr, Sym):
        return {"kind": "symbol", "symbol": symbol_to_json(expr.symbol)}
    if isinstance(expr, Star):
        return {"kind": "star", "symbols": [symbol_to_json(s) for s in expr.symbols]}
    if isinstance(expr, Union):
        return {"kind": "union", "parts": [expr_to_json(p) for p in expr.parts]}
    if isinstance(expr, Concat):
        return {"kind": "concat", "parts": [expr_to_json(p) for p in expr.parts]}
    raise ValidationError(f"not a language expression: {expr!r}")


def expr_from_json(data: dict):
    kind = data.get("kind")
    if kind == "empty":
        return Empty()
    if kind == "epsilon":
        return Epsilon()
    if kind == "symbol":
        return Sym(symbol_from_json(data["symbol"]))
    if kind == "star":
        return Star(tuple(symbol_from_json(s) for s in data["symbols"]))
    if kind == "union":
        return Union(tuple(expr_from_json(p) for p in data["parts"]))
    if kind == "concat":
        return Concat(tuple(expr_from_json(p) for p in data["parts"]))
    raise ValidationError(f"unknown expression kind {kind!r}")


def dfa_to_json(dfa: Dfa) -> dict:
    return {
        "alphabet": [symbol_to_json(s) for s in dfa.alphabet],
        "delta": [list(row) for row in dfa.delta],
        "start": dfa.start,
        "accepting": sorted(dfa.accepting),
    }


def dfa_from_json(data: dict) -> Dfa:
    return Dfa(
        tuple(symbol_from_json(s) for s in data["alphabet"]),
        data["delta"],
        int(data["start"]),
        set(data["accepting"]),
    )


def congruence_to_json(spec: CongruenceSpec) -> dict:
    return {
        "orders": list(spec.group.orders),
        "alphabet": [symbol_to_json(s) for s in spec.alphabet],
        "phi": [[symbol_to_json(s), list(spec.phi[s])] for s in spec.alphabet],
        "target": sorted(list(t) for t in spec.target),
    }


def congruence_from_json(data: dict) -> CongruenceSpec:
    group = AbelianGroup(tuple(int(n) for n in data["orders"]))
    phi = {symbol_from_json(s): tuple(v) for s, v in data["phi"]}
    target = {tuple(t) for t in data["target"]}
    alphabet = tuple(symbol_from_json(s) for s in data["alphabet"])
    return CongruenceSpec(group, phi, target, alphabet)


def quasi_to_json(q: QuasiOrderedExpr) -> dict:
    return {"ordered": expr_to_json(q.ordered), "congruence": congruence_to_json(q.cong)}


def quasi_from_json(data: dict) -> QuasiOrderedExpr:
    return QuasiOrderedExpr(expr_from_json(data["ordered"]), congruence_from_json(data["congruence"]))
