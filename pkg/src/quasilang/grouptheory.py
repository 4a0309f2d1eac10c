"""Ordinary (characteristic-zero) character theory for finite groups given by
multiplication tables: built-in tables for cyclic, symmetric, and product
groups, restriction and abelianization maps on representation rings, Smith
normal form, and the split-injection test for good families of subgroups."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm

from .cyclotomic import CyclotomicNumber
from .errors import UnsupportedGroupError, ValidationError

# ---------------------------------------------------------------------------
# partitions and symmetric-group characters


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n in descending lexicographic order."""
    if n == 0:
        return ((),)
    out = []

    def rec(remaining: int, maximum: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, maximum), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def centralizer_order(cycle_type: tuple[int, ...]) -> int:
    """z_mu = prod_i i^(m_i) m_i! for the cycle type mu."""
    out = 1
    for k in set(cycle_type):
        m = cycle_type.count(k)
        out *= k**m * factorial(m)
    return out


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@lru_cache(maxsize=None)
def mn_character(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Symmetric-group character chi_lam at cycle type mu, by border-strip
    recursion on beta numbers."""
    if sum(lam) != sum(mu):
        raise ValidationError("partition and cycle type have different sizes")
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    r = len(lam)
    betas = tuple(lam[i] + (r - 1 - i) for i in range(r))  # strictly decreasing
    beta_set = set(betas)
    total = 0
    for b in betas:
        target = b - k
        if target < 0 or target in beta_set:
            continue
        height = sum(1 for c in betas if target < c < b)
        new_betas = sorted((beta_set - {b}) | {target}, reverse=True)
        new_lam = tuple(nb - (r - 1 - i) for i, nb in enumerate(new_betas))
        new_lam = tuple(p for p in new_lam if p > 0)
        total += (-1) ** height * mn_character(new_lam, rest)
    return total


# ---------------------------------------------------------------------------
# finite groups by multiplication table


class FiniteGroup:
    """A finite group as labels plus a multiplication table on indices.

    Identity, inverses, and associativity are verified on construction.
    `kind` records how the group was built, which selects the character
    table construction.
    """

    def __init__(self, table, labels=None, name: str = "G", kind=("custom",)):
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.name = name
        self.kind = kind
        if len(self.labels) != n or any(len(row) != n for row in self.table):
            raise ValidationError("multiplication table must be square")
        identity = None
        for e in range(n):
            if all(self.table[e][g] == g == self.table[g][e] for g in range(n)):
                identity = e
                break
        if identity is None:
            raise ValidationError("no identity element")
        self.identity = identity
        inverse = [None] * n
        for g in range(n):
            for h in range(n):
                if self.table[g][h] == identity:
                    inverse[g] = h
                    break
            if inverse[g] is None:
                raise ValidationError(f"element {g} has no inverse")
        self.inverse = tuple(inverse)
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = ta[b]
                tb = t[b]
                for c in range(n):
                    if t[tab][c] != ta[tb[c]]:
                        raise ValidationError("multiplication table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mult(self, a: int, b: int) -> int:
        return self.table[a][b]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Classes as sorted index tuples, ordered by their minimal element."""
        n = self.order
        assigned = [False] * n
        classes = []
        for x in range(n):
            if assigned[x]:
                continue
            orbit = {self.table[self.table[g][x]][self.inverse[g]] for g in range(n)}
            for y in orbit:
                assigned[y] = True
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda c: c[0])
        return classes

    def subgroup_closure(self, generators) -> tuple[int, ...]:
        seen = {self.identity} | set(generators)
        queue = list(seen)
        while queue:
            g = queue.pop()
            for h in list(seen):
                for x in (self.table[g][h], self.table[h][g]):
                    if x not in seen:
                        seen.add(x)
                        queue.append(x)
        return tuple(sorted(seen))

    def commutator_subgroup(self) -> tuple[int, ...]:
        comms = {
            self.table[self.table[g][h]][self.table[self.inverse[g]][self.inverse[h]]]
            for g in range(self.order)
            for h in range(self.order)
        }
        return self.subgroup_closure(comms)

    def quotient(self, normal: tuple[int, ...]):
        """The quotient by a normal subgroup; returns (group, projection)."""
        nset = set(normal)
        for g in range(self.order):
            for h in nset:
                if self.table[self.table[g][h]][self.inverse[g]] not in nset:
                    raise ValidationError("subgroup is not normal")
        cosets: list[tuple[int, ...]] = []
        proj = [None] * self.order
        for g in range(self.order):
            if proj[g] is not None:
                continue
            coset = tuple(sorted(self.table[g][h] for h in nset))
            idx = len(cosets)
            cosets.append(coset)
            for x in coset:
                proj[x] = idx
        table = [
            [proj[self.table[c1[0]][c2[0]]] for c2 in cosets] for c1 in cosets
        ]
        q = FiniteGroup(table, labels=tuple(c[0] for c in cosets), name=f"{self.name}/N")
        return q, tuple(proj)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return cls(table, labels=tuple(range(n)), name=f"Z/{n}", kind=("cyclic", n))

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        elems = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(elems)}
        # composition (p * q)(i) = p[q[i]]: q acts first
        table = [
            [index[tuple(p[q[i]] for i in range(n))] for q in elems] for p in elems
        ]
        return cls(table, labels=tuple(elems), name=f"S{n}", kind=("symmetric", n))

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        pairs = [(a, b) for a in range(g.order) for b in range(h.order)]
        index = {p: i for i, p in enumerate(pairs)}
        table = [
            [index[(g.table[a1][a2], h.table[b1][b2])] for (a2, b2) in pairs]
            for (a1, b1) in pairs
        ]
        labels = tuple((g.labels[a], h.labels[b]) for a, b in pairs)
        return cls(table, labels=labels, name=f"{g.name}x{h.name}", kind=("product", g, h))

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        return cls(tuple(tuple(int(v) for v in row) for row in data["table"]),
                   name=data.get("name", "G"))

    def to_json(self) -> dict:
        return {"name": self.name, "table": [list(row) for row in self.table]}


# ---------------------------------------------------------------------------
# linear characters of abelian groups (iterative extension along generators)


def abelian_characters(group: FiniteGroup):
    """All homomorphisms to the roots of unity, as exponent maps.

    Returns (chars, M): chars is a list of tuples assigning to each element an
    exponent e with chi(g) = zeta_M^e, and M is the group exponent.
    """
    if not group.is_abelian():
        raise ValidationError("abelian_characters needs an abelian group")
    n = group.order
    M = 1
    for g in range(n):
        M = lcm(M, group.element_order(g))
    subgroup = [group.identity]
    chars = [{group.identity: 0}]
    in_sub = {group.identity}
    while len(subgroup) < n:
        g = min(x for x in range(n) if x not in in_sub)
        # index of g over the current subgroup
        k, power = 1, g
        while power not in in_sub:
            power = group.table[power][g]
            k += 1
        new_chars = []
        for chi in chars:
            t = chi[power]
            base = (t // k) % M  # k divides t since chi(g^k)^(M/k) = chi(g^M) = 1
            if (k * base) % M != t % M:
                raise AssertionError("character extension arithmetic failed")
            for j in range(k):
                x = (base + j * (M // k)) % M
                ext = {}
                for s in subgroup:
                    elem = s
                    for i in range(k):
                        ext[elem] = (chi[s] + i * x) % M
                        elem = group.table[elem][g]
                new_chars.append(ext)
        new_subgroup = []
        for s in subgroup:
            elem = s
            for _ in range(k):
                new_subgroup.append(elem)
                elem = group.table[elem][g]
        subgroup = new_subgroup
        in_sub = set(subgroup)
        chars = new_chars
    return [tuple(chi[g] for g in range(n)) for chi in chars], M


# ---------------------------------------------------------------------------
# character tables


class CharacterTable:
    """Irreducible characters over Q(zeta_N), rows by irreducible, columns by
    conjugacy class; `element_class` binds table columns to group elements
    when an explicit group is attached."""

    def __init__(
        self,
        order: int,
        class_sizes,
        rows,
        identity_class: int,
        row_names=None,
        class_names=None,
        group: FiniteGroup | None = None,
        element_class=None,
    ):
        self.order = order
        self.class_sizes = tuple(class_sizes)
        self.rows = tuple(tuple(v for v in row) for row in rows)
        self.identity_class = identity_class
        self.row_names = tuple(row_names) if row_names is not None else tuple(range(len(self.rows)))
        self.class_names = (
            tuple(class_names) if class_names is not None else tuple(range(len(self.class_sizes)))
        )
        self.group = group
        self.element_class = tuple(element_class) if element_class is not None else None
        if len(self.rows) != len(self.class_sizes):
            raise ValidationError("need as many irreducibles as conjugacy classes")
        for row in self.rows:
            if len(row) != len(self.class_sizes):
                raise ValidationError("character row length does not match class count")
        if self.class_sizes[identity_class] != 1:
            raise ValidationError("identity class must have size 1")

    @property
    def n_classes(self) -> int:
        return len(self.class_sizes)

    @property
    def group_order(self) -> int:
        return sum(self.class_sizes)

    def dims(self) -> list[int]:
        out = []
        for row in self.rows:
            v = row[self.identity_class]
            if not (v.is_rational() and v.rational_value().denominator == 1):
                raise ValidationError("character degree is not an integer")
            out.append(int(v.rational_value()))
        return out

    def trivial_index(self) -> int:
        for i, row in enumerate(self.rows):
            if all(v == 1 for v in row):
                return i
        raise ValidationError("no trivial character found")

    def value(self, irr: int, elem: int) -> CyclotomicNumber:
        if self.element_class is None:
            raise ValidationError("table has no element-to-class binding")
        return self.rows[irr][self.element_class[elem]]

    def inner_product(self, a, b) -> Fraction:
        """Class-size-weighted inner product of two class functions (rows)."""
        total = CyclotomicNumber.zero()
        for size, x, y in zip(self.class_sizes, a, b):
            total = total + x * y.conjugate() * size
        total = total * Fraction(1, self.group_order)
        return total.rational_value()

    def validate(self) -> None:
        dims = self.dims()
        if sum(d * d for d in dims) != self.group_order:
            raise ValidationError("sum of squared degrees does not match the group order")
        for i in range(len(self.rows)):
            for j in range(len(self.rows)):
                expect = 1 if i == j else 0
                if self.inner_product(self.rows[i], self.rows[j]) != expect:
                    raise ValidationError(f"rows {i}, {j} are not orthonormal")


def cyclic_table(n: int, group: FiniteGroup | None = None) -> CharacterTable:
    rows = [[CyclotomicNumber.root(n, j * k) for k in range(n)] for j in range(n)]
    return CharacterTable(
        order=n,
        class_sizes=[1] * n,
        rows=rows,
        identity_class=0,
        row_names=tuple(range(n)),
        class_names=tuple(range(n)),
        group=group,
        element_class=tuple(range(n)),
    )


def symmetric_table(n: int, group: FiniteGroup | None = None) -> CharacterTable:
    """Character table of S_n: rows and columns indexed by partitions of n."""
    parts = partitions(n)
    sizes = [factorial(n) // centralizer_order(mu) for mu in parts]
    rows = [
        [CyclotomicNumber.from_rational(mn_character(lam, mu)) for mu in parts]
        for lam in parts
    ]
    identity_class = parts.index((1,) * n) if n > 0 else 0
    element_class = None
    if group is not None:
        part_index = {mu: i for i, mu in enumerate(parts)}
        element_class = tuple(part_index[cycle_type(p)] for p in group.labels)
    return CharacterTable(
        order=1,
        class_sizes=sizes,
        rows=rows,
        identity_class=identity_class,
        row_names=parts,
        class_names=parts,
        group=group,
        element_class=element_class,
    )


def product_table(ta: CharacterTable, tb: CharacterTable, group: FiniteGroup | None = None) -> CharacterTable:
    order = lcm(ta.order, tb.order)
    sizes = []
    rows = []
    class_names = []
    for sa, sb in itertools.product(ta.class_sizes, tb.class_sizes):
        sizes.append(sa * sb)
    for na, nb in itertools.product(ta.class_names, tb.class_names):
        class_names.append((na, nb))
    row_names = []
    for ia in range(len(ta.rows)):
        for ib in range(len(tb.rows)):
            row_names.append((ta.row_names[ia], tb.row_names[ib]))
            rows.append(
                [
                    va * vb
                    for va, vb in itertools.product(ta.rows[ia], tb.rows[ib])
                ]
            )
    identity_class = ta.identity_class * tb.n_classes + tb.identity_class
    element_class = None
    if group is not None and ta.element_class is not None and tb.element_class is not None:
        nb_elems = len(tb.element_class)
        element_class = []
        for a in range(len(ta.element_class)):
            for b in range(nb_elems):
                element_class.append(ta.element_class[a] * tb.n_classes + tb.element_class[b])
        element_class = tuple(element_class)
    return CharacterTable(
        order=order,
        class_sizes=sizes,
        rows=rows,
        identity_class=identity_class,
        row_names=row_names,
        class_names=class_names,
        group=group,
        element_class=element_class,
    )


def abelian_table(group: FiniteGroup) -> CharacterTable:
    chars, M = abelian_characters(group)
    rows = [[CyclotomicNumber.root(M, chi[g]) for g in range(group.order)] for chi in chars]
    return CharacterTable(
        order=M,
        class_sizes=[1] * group.order,
        rows=rows,
        identity_class=group.identity,
        group=group,
        element_class=tuple(range(group.order)),
    )


def character_table(group: FiniteGroup) -> CharacterTable:
    """Dispatch on the group's construction; raises UnsupportedGroupError when
    no built-in method applies and no table was supplied."""
    kind = group.kind[0]
    if kind == "cyclic":
        return cyclic_table(group.kind[1], group)
    if kind == "symmetric":
        return symmetric_table(group.kind[1], group)
    if kind == "product":
        ta = character_table(group.kind[1])
        tb = character_table(group.kind[2])
        return product_table(ta, tb, group)
    if group.is_abelian():
        return abelian_table(group)
    raise UnsupportedGroupError(
        f"no built-in character table for {group.name}; supply one explicitly"
    )


# ---------------------------------------------------------------------------
# representation-ring maps


def _as_nonneg_int(q: Fraction, context: str) -> int:
    if q.denominator != 1 or q < 0:
        raise ValidationError(f"{context}: expected a non-negative integer, got {q}")
    return int(q)


def validate_embedding(G: FiniteGroup, H: FiniteGroup, embedding) -> None:
    emb = tuple(embedding)
    if len(emb) != H.order or len(set(emb)) != H.order:
        raise ValidationError("embedding must be injective on H")
    for a in range(H.order):
        for b in range(H.order):
            if emb[H.table[a][b]] != G.table[emb[a]][emb[b]]:
                raise ValidationError("embedding is not a homomorphism")


def restriction_matrix(G: FiniteGroup, H: FiniteGroup, embedding) -> list[list[int]]:
    """Multiplicities <Res V, W>_H: rows over irr(G), columns over irr(H)."""
    validate_embedding(G, H, embedding)
    emb = tuple(embedding)
    tG, tH = character_table(G), character_table(H)
    out = []
    for i in range(len(tG.rows)):
        row = []
        for j in range(len(tH.rows)):
            total = CyclotomicNumber.zero()
            for h in range(H.order):
                total = total + tG.value(i, emb[h]) * tH.value(j, H.inverse[h])
            total = total * Fraction(1, H.order)
            row.append(_as_nonneg_int(total.rational_value(), "restriction multiplicity"))
        out.append(row)
    return out


def abelianization_matrix(H: FiniteGroup):
    """Multiplicities <chi_V, lambda o pi>_H for the linear characters lambda
    of H/[H,H]; returns (matrix, exponent of the abelianization)."""
    derived = H.commutator_subgroup()
    quotient, proj = H.quotient(derived)
    chars, M = abelian_characters(quotient)
    tH = character_table(H)
    out = []
    for i in range(len(tH.rows)):
        row = []
        for chi in chars:
            total = CyclotomicNumber.zero()
            for h in range(H.order):
                lam_inv = CyclotomicNumber.root(M, -chi[proj[h]])
                total = total + tH.value(i, h) * lam_inv
            total = total * Fraction(1, H.order)
            row.append(_as_nonneg_int(total.rational_value(), "abelianization multiplicity"))
        out.append(row)
    return out, M


# ---------------------------------------------------------------------------
# Smith normal form over the integers, with transforms


def smith_normal_form(matrix):
    """Diagonalize an integer matrix: returns (divisors, U, V) with
    U * M * V diagonal, d_1 | d_2 | ..., and U, V products of elementary
    unimodular operations."""
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        for k in range(n):
            A[dst][k] += c * A[src][k]
        for k in range(m):
            U[dst][k] += c * U[src][k]

    def add_col(src, dst, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        for k in range(n):
            A[i][k] = -A[i][k]
        for k in range(m):
            U[i][k] = -U[i][k]

    r = min(m, n)
    for t in range(r):
        # move a minimal nonzero entry of the trailing block to (t, t)
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                if pivot[0] != t:
                    swap_rows(t, pivot[0])
                if pivot[1] != t:
                    swap_cols(t, pivot[1])
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if done and all(A[i][t] == 0 for i in range(t + 1, m)) and all(
                A[t][j] == 0 for j in range(t + 1, n)
            ):
                # enforce divisibility of the remaining block by the pivot
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % A[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
        if A[t][t] < 0:
            negate_row(t)
    divisors = [A[i][i] for i in range(r)]
    return divisors, U, V


# ---------------------------------------------------------------------------
# good families


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def is_good_family(G: FiniteGroup, subgroups, covering_only: bool = False) -> dict:
    """Test whether restriction (then abelianization) to the given subgroups
    is a split injection of representation rings.

    `subgroups` is a list of (H, embedding) pairs.  Returns goodness, the
    nonzero elementary divisors, and the lcm of the abelianization exponents
    (the certified root-of-unity order)."""
    blocks = []
    exponents = []
    for H, emb in subgroups:
        R = restriction_matrix(G, H, emb)
        if covering_only:
            blocks.append(R)
        else:
            Aab, M = abelianization_matrix(H)
            blocks.append(_matmul(R, Aab))
            exponents.append(M)
    n_irr = len(character_table(G).rows)
    stacked = [
        list(itertools.chain.from_iterable(block[i] for block in blocks))
        for i in range(n_irr)
    ]
    divisors, _, _ = smith_normal_form(stacked)
    nonzero = [d for d in divisors if d != 0]
    good = len(nonzero) == n_irr and all(d == 1 for d in nonzero)
    return {
        "good": good,
        "elementary_divisors": nonzero,
        "exponent_lcm": lcm(*exponents) if exponents else 1,
    }


def young_subgroups(n: int, group: FiniteGroup | None = None):
    """All Young subgroups S_lambda of S_n as (partition, subgroup, embedding).

    The subgroup is built as a direct product of symmetric groups; the
    embedding sends a tuple of block permutations to the block-diagonal
    permutation of [n]."""
    G = group if group is not None else FiniteGroup.symmetric(n)
    perm_index = {p: i for i, p in enumerate(G.labels)}
    out = []
    for lam in partitions(n):
        factors = [FiniteGroup.symmetric(p) for p in lam]
        H = factors[0]
        for f in factors[1:]:
            H = FiniteGroup.direct_product(H, f)

        def flatten(label, sizes):
            if len(sizes) == 1:
                return [label]
            left = flatten(label[0], sizes[:-1])
            return left + [label[1]]

        offsets = []
        pos = 0
        for p in lam:
            offsets.append(pos)
            pos += p
        embedding = []
        for label in H.labels:
            blocks = flatten(label, lam) if len(lam) > 1 else [label]
            perm = list(range(n))
            for block, off, size in zip(blocks, offsets, lam):
                for i in range(size):
                    perm[off + i] = off + block[i]
            embedding.append(perm_index[tuple(perm)])
        out.append((lam, H, tuple(embedding)))
    return out
