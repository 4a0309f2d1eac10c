"""Segre products of simplicial complexes, rational homology, and the
character data of product-group actions on iterated powers.

A subset S of X_0 x Y_0 is a simplex of the Segre product exactly when both
projections are simplices of the same cardinality as S.  Homology is over Q
by exact Gaussian elimination; equivariant traces are computed by lifting
group elements to signed chain maps and projecting onto a cycle basis.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .cyclotomic import CyclotomicNumber
from .errors import ValidationError
from .grouptheory import CharacterTable

DEFAULT_SIMPLEX_BUDGET = 200_000


class SimplicialComplex:
    """Finite abstract simplicial complex; simplices stored by dimension as
    sorted vertex tuples (vertices must be sortable)."""

    def __init__(self, vertices, facets):
        self.vertices = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        simplices: set[tuple] = set()
        for facet in facets:
            fs = tuple(sorted(set(facet)))
            if not set(fs) <= vset:
                raise ValidationError(f"facet {facet!r} uses unknown vertices")
            for k in range(1, len(fs) + 1):
                simplices.update(itertools.combinations(fs, k))
        for v in self.vertices:
            simplices.add((v,))
        by_dim: dict[int, list] = {}
        for s in simplices:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self.simplices = {d: sorted(by_dim[d]) for d in sorted(by_dim)}

    @property
    def dim(self) -> int:
        return max(self.simplices) if self.simplices else -1

    def simplex_count(self) -> int:
        return sum(len(v) for v in self.simplices.values())

    def has_simplex(self, s) -> bool:
        key = tuple(sorted(s))
        return key in set(self.simplices.get(len(key) - 1, ()))

    def facets(self) -> list[tuple]:
        out = []
        all_simps = {s for group in self.simplices.values() for s in group}
        for s in all_simps:
            if not any(s != t and set(s) <= set(t) for t in all_simps):
                out.append(s)
        return sorted(out)

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) if isinstance(v, tuple) else v for v in self.vertices],
            "facets": [
                [list(x) if isinstance(x, tuple) else x for x in f] for f in self.facets()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        def fix(v):
            return tuple(v) if isinstance(v, list) else v

        return cls([fix(v) for v in data["vertices"]], [[fix(x) for x in f] for f in data["facets"]])


def segre_product(x: SimplicialComplex, y: SimplicialComplex) -> SimplicialComplex:
    """Simplices are S in X_0 x Y_0 with both projections simplices of the
    same cardinality as S (no collapsing in either coordinate)."""
    facets = []
    for d in x.simplices:
        if d not in y.simplices:
            continue
        k = d + 1
        for sx in x.simplices[d]:
            for sy in y.simplices[d]:
                for perm in itertools.permutations(sy):
                    facets.append(tuple(zip(sx, perm)))
    vertices = [(a, b) for a in x.vertices for b in y.vertices]
    return SimplicialComplex(vertices, facets)


def _flatten_pair(v):
    """(tuple, w) -> tuple + (w,), keeping iterated product vertices flat."""
    a, b = v
    if isinstance(a, tuple):
        return a + (b,)
    return (a, b)


def iterated_segre(x: SimplicialComplex, n: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> SimplicialComplex:
    """X^(*n) with vertices canonically labeled by n-tuples of X_0."""
    if n < 1:
        raise ValidationError("iterated Segre power needs n >= 1")
    if n == 1:
        out = SimplicialComplex(
            [(v,) for v in x.vertices],
            [tuple((v,) for v in s) for group in x.simplices.values() for s in group],
        )
        return out
    acc = iterated_segre(x, 1, budget)
    for _ in range(n - 1):
        prod = segre_product(acc, x)
        relabeled = [
            tuple(_flatten_pair(v) for v in s)
            for group in prod.simplices.values()
            for s in group
        ]
        acc = SimplicialComplex([_flatten_pair(v) for v in prod.vertices], relabeled)
        if acc.simplex_count() > budget:
            raise ValidationError(
                f"simplex budget {budget} exceeded at {acc.simplex_count()} simplices"
            )
    return acc


# ---------------------------------------------------------------------------
# exact linear algebra over Q


def _rank(matrix: list[list[Fraction]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    m = [row[:] for row in matrix]
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = Fraction(1) / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def _nullspace(matrix: list[list[Fraction]], n_cols: int) -> list[list[Fraction]]:
    """Basis of the kernel (as column vectors) by reduced row echelon form."""
    m = [row[:] for row in matrix]
    rows = len(m)
    pivots = []
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = Fraction(1) / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -m[r][f]
        basis.append(vec)
    return basis


def _solve(columns: list[list[Fraction]], target: list[Fraction]) -> list[Fraction] | None:
    """Solve sum_j a_j columns[j] = target exactly; None if inconsistent."""
    if not columns:
        return [] if all(v == 0 for v in target) else None
    rows = len(columns[0])
    aug = [[col[r] for col in columns] + [target[r]] for r in range(rows)]
    n = len(columns)
    rank = 0
    pivots = []
    for col in range(n):
        pivot = next((r for r in range(rank, rows) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = Fraction(1) / aug[rank][col]
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(rows):
            if r != rank and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, rows):
        if aug[r][n] != 0:
            return None
    out = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        out[p] = aug[r][n]
    return out


# ---------------------------------------------------------------------------
# homology


def boundary_matrix(x: SimplicialComplex, i: int) -> list[list[Fraction]]:
    """The map C_i -> C_(i-1); rows indexed by (i-1)-simplices."""
    top = x.simplices.get(i, [])
    bottom = x.simplices.get(i - 1, [])
    index = {s: r for r, s in enumerate(bottom)}
    matrix = [[Fraction(0)] * len(top) for _ in bottom]
    for c, s in enumerate(top):
        for k in range(len(s)):
            face = s[:k] + s[k + 1 :]
            if face:
                matrix[index[face]][c] = Fraction((-1) ** k)
    return matrix


class HomologyData:
    """Per degree: the rank and a cycle basis independent modulo boundaries."""

    def __init__(self, ranks: dict, cycle_bases: dict):
        self.ranks = ranks
        self.cycle_bases = cycle_bases

    def rank(self, i: int) -> int:
        return self.ranks.get(i, 0)


def _select_independent_mod(candidates, base_cols):
    """Greedily keep the candidates that are independent modulo span(base_cols)."""
    elim: list[tuple[int, list[Fraction]]] = []

    def reduce(vec):
        v = list(vec)
        for p, b in elim:
            if v[p] != 0:
                f = v[p] / b[p]
                v = [a - f * c for a, c in zip(v, b)]
        return v

    def insert(vec) -> bool:
        v = reduce(vec)
        p = next((k for k, val in enumerate(v) if val != 0), None)
        if p is None:
            return False
        elim.append((p, v))
        return True

    for col in base_cols:
        insert(col)
    return [z for z in candidates if insert(z)]


def check_boundary_squares_to_zero(x: SimplicialComplex) -> None:
    for i in range(1, x.dim + 1):
        di = boundary_matrix(x, i)
        di1 = boundary_matrix(x, i + 1)
        if not di or not di1 or not di1[0]:
            continue
        for c in range(len(di1[0])):
            col = [row[c] for row in di1]
            out = [sum(di[r][k] * col[k] for k in range(len(col))) for r in range(len(di))]
            if any(v != 0 for v in out):
                raise ValidationError("boundary composed with boundary is nonzero")


def homology_ranks(x: SimplicialComplex, i_max: int) -> HomologyData:
    """Ranks of rational simplicial homology up to degree i_max, with a cycle
    basis per degree (columns over the i-simplices)."""
    check_boundary_squares_to_zero(x)
    ranks = {}
    bases = {}
    for i in range(i_max + 1):
        chains = x.simplices.get(i, [])
        if not chains:
            ranks[i] = 0
            bases[i] = []
            continue
        d_i = boundary_matrix(x, i)
        if i == 0:
            cycles = [
                [Fraction(1) if r == k else Fraction(0) for r in range(len(chains))]
                for k in range(len(chains))
            ]
        else:
            cycles = _nullspace(d_i, len(chains))
        d_up = boundary_matrix(x, i + 1)
        boundary_cols = []
        if d_up and d_up[0]:
            boundary_cols = [
                [d_up[r][c] for r in range(len(chains))] for c in range(len(d_up[0]))
            ]
        boundary_rank = _rank(d_up) if d_up and d_up[0] else 0
        ranks[i] = len(cycles) - boundary_rank
        bases[i] = _select_independent_mod(cycles, boundary_cols)
        if len(bases[i]) != ranks[i]:
            raise AssertionError("homology basis selection disagrees with the rank")
    return HomologyData(ranks, bases)


# ---------------------------------------------------------------------------
# group actions and equivariant character data


class GroupAction:
    """An action of a group (with character table) on a complex by vertex
    permutations, one permutation per element index."""

    def __init__(self, table: CharacterTable, complex_: SimplicialComplex, vertex_maps):
        self.table = table
        self.complex = complex_
        self.vertex_maps = [dict(m) for m in vertex_maps]
        group = table.group
        if group is None:
            raise ValidationError("equivariant data needs a table bound to a group")
        if len(self.vertex_maps) != group.order:
            raise ValidationError("need one vertex permutation per group element")
        for g in range(group.order):
            m = self.vertex_maps[g]
            if sorted(m) != list(complex_.vertices) or sorted(m.values()) != list(
                complex_.vertices
            ):
                raise ValidationError(f"element {g} does not permute the vertices")
        for a in range(group.order):
            for b in range(group.order):
                c = group.table[a][b]
                for v in complex_.vertices:
                    if self.vertex_maps[c][v] != self.vertex_maps[a][self.vertex_maps[b][v]]:
                        raise ValidationError("vertex maps are not a group action")
        for d, simplices in complex_.simplices.items():
            simplex_set = set(simplices)
            for g in range(group.order):
                m = self.vertex_maps[g]
                for s in simplices:
                    if tuple(sorted(m[v] for v in s)) not in simplex_set:
                        raise ValidationError("the action does not preserve simplices")


def _chain_map_trace_matrix(complex_: SimplicialComplex, i: int, vertex_map) -> dict:
    """Sparse signed permutation action on C_i: column simplex -> (row, sign)."""
    simplices = complex_.simplices.get(i, [])
    index = {s: r for r, s in enumerate(simplices)}
    out = {}
    for c, s in enumerate(simplices):
        image = [vertex_map[v] for v in s]
        order = sorted(range(len(image)), key=lambda k: image[k])
        sign = 1
        perm = list(order)
        # parity of the sort permutation
        seen = [False] * len(perm)
        for start in range(len(perm)):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        target = tuple(sorted(image))
        out[c] = (index[target], sign)
    return out


def equivariant_trace(
    complex_: SimplicialComplex,
    homology: HomologyData,
    i: int,
    vertex_map,
) -> Fraction:
    """Trace of the induced map on H_i, via projection onto the cycle basis
    modulo boundaries."""
    cycles = homology.cycle_bases.get(i, [])
    rank = homology.rank(i)
    if rank == 0:
        return Fraction(0)
    d_up = boundary_matrix(complex_, i + 1)
    n_chains = len(complex_.simplices.get(i, []))
    boundary_cols = []
    if d_up and d_up[0]:
        for c in range(len(d_up[0])):
            boundary_cols.append([d_up[r][c] for r in range(n_chains)])
    action = _chain_map_trace_matrix(complex_, i, vertex_map)
    # solve per cycle: g . z_j = sum_k a_(jk) z_k + boundary
    columns = [list(z) for z in cycles] + boundary_cols
    trace = Fraction(0)
    for j, z in enumerate(cycles):
        image = [Fraction(0)] * n_chains
        for c, coeff in enumerate(z):
            if coeff:
                r, sign = action[c]
                image[r] += sign * coeff
        sol = _solve(columns, image)
        if sol is None:
            raise ValidationError("chain image is not a cycle modulo boundaries")
        trace += sol[j]
    return trace


def equivariant_hilbert_data(
    action: GroupAction,
    i: int,
    n_max: int,
    budget: int = DEFAULT_SIMPLEX_BUDGET,
) -> list[dict]:
    """For each n <= n_max, the character of G^n on H_i(X^(*n)) pushed to the
    monomial image: a dict exponent-vector (over irr(G)) -> multiplicity."""
    action_table = action.table
    vertex_maps = action.vertex_maps
    x = action.complex
    group = action_table.group
    results = []
    class_reps = [cls[0] for cls in group.conjugacy_classes()]
    # bind table classes to group classes via element_class
    rep_class = [action_table.element_class[r] for r in class_reps]
    n_irr = len(action_table.rows)
    for n in range(1, n_max + 1):
        power = iterated_segre(x, n, budget)
        homology = homology_ranks(power, i)
        traces = {}
        for combo in itertools.product(range(len(class_reps)), repeat=n):
            vmap = {}
            for v in power.vertices:
                vmap[v] = tuple(
                    vertex_maps[class_reps[combo[k]]][v[k]] for k in range(n)
                )
            traces[combo] = equivariant_trace(power, homology, i, vmap)
        poly: dict = {}
        order_n = group.order**n
        for js in itertools.product(range(n_irr), repeat=n):
            total = CyclotomicNumber.zero()
            for combo, tr in traces.items():
                if tr == 0:
                    continue
                weight = 1
                val = CyclotomicNumber.from_rational(tr)
                for k in range(n):
                    weight *= action_table.class_sizes[rep_class[combo[k]]]
                    val = val * action_table.rows[js[k]][rep_class[combo[k]]].conjugate()
                total = total + val * weight
            total = total * Fraction(1, order_n)
            q = total.rational_value()
            if q.denominator != 1 or q < 0:
                raise ValidationError(f"non-integral equivariant multiplicity {q}")
            if q:
                content = [0] * n_irr
                for j in js:
                    content[j] += 1
                key = tuple(content)
                poly[key] = poly.get(key, 0) + int(q)
        results.append(poly)
    return results
