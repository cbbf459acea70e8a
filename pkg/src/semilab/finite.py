"""Finite magmas as Cayley tables: associativity, the four reversibility
laws, group detection, right-group decomposition, and exhaustive generation
of all small associative tables (the brute-force oracle for everything else).

Law naming follows the classical reversibility terminology, which is
handedness-reversed relative to modern cancellativity; every report field is
therefore documented by its literal equation schema.
"""

from __future__ import annotations

from dataclasses import dataclass


class TableError(ValueError):
    """Invalid table, parameters out of range, or unmet precondition."""


class DecompositionError(TableError):
    """Right-group hypotheses fail; carries the law name and the first
    counterexample pair."""

    def __init__(self, law: str, pair: tuple, message: str):
        super().__init__(message)
        self.law = law
        self.pair = pair


@dataclass(frozen=True)
class CayleyTable:
    """An n x n multiplication table; rows[i][j] is the index of x_i * x_j."""

    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise TableError("table must be square")
            for v in row:
                if not (isinstance(v, int) and 0 <= v < n):
                    raise TableError(f"entry {v!r} out of range [0, {n})")

    @property
    def n(self) -> int:
        return len(self.rows)

    def mul(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def transpose(self) -> "CayleyTable":
        n = self.n
        return CayleyTable(tuple(tuple(self.rows[j][i] for j in range(n))
                                 for i in range(n)))

    def to_json(self) -> dict:
        return {"n": self.n, "table": [list(row) for row in self.rows]}

    @staticmethod
    def from_json(obj) -> "CayleyTable":
        try:
            n = obj["n"]
            rows = obj["table"]
        except (TypeError, KeyError):
            raise TableError('table JSON needs fields "n" and "table"') from None
        if len(rows) != n:
            raise TableError(f'"table" must have {n} rows')
        return CayleyTable(tuple(tuple(row) for row in rows))


def table_from_product(elements, mult) -> CayleyTable:
    """Tabulate an external product over a fixed element list."""
    index = {x: i for i, x in enumerate(elements)}
    return CayleyTable(tuple(tuple(index[mult(x, y)] for y in elements)
                             for x in elements))


def closure(generators, mult, max_size: int = 4096):
    """Least set closed under ``mult`` containing the generators, numbered by
    discovery order, with its full table.  Returns (table, elements)."""
    elements = []
    index = {}
    for g in generators:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
    frontier = list(elements)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(elements):
                for z in (mult(x, y), mult(y, x)):
                    if z not in index:
                        if len(elements) >= max_size:
                            raise TableError(
                                f"closure exceeded cap of {max_size} elements")
                        index[z] = len(elements)
                        elements.append(z)
                        fresh.append(z)
        frontier = fresh
    return table_from_product(elements, mult), elements


def associativity_failure(t: CayleyTable):
    """First triple (x, y, z) with (xy)z != x(yz), or None."""
    rows = t.rows
    n = t.n
    rng = range(n)
    for x in rng:
        rx = rows[x]
        for y in rng:
            xy = rx[y]
            ry = rows[y]
            rxy = rows[xy]
            for z in rng:
                if rxy[z] != rx[ry[z]]:
                    return (x, y, z)
    return None


def is_associative(t: CayleyTable) -> bool:
    """Exhaustive check of (xy)z = x(yz) over all triples."""
    return associativity_failure(t) is None


@dataclass(frozen=True)
class LawReport:
    """The four reversibility laws on one finite table.

    left_unique:     xa = ya  implies  x = y   (right cancellation)
    right_unique:    ax = ay  implies  x = y   (left cancellation)
    left_unlimited:  counts[a][b] = #{X : X a = b}
    right_unlimited: counts[a][b] = #{X : a X = b}

    A finite table cannot have infinitely many solutions, so the unlimited
    laws are reported as solution-count matrices; ``solvable`` (all counts
    >= 1) is the finite surrogate for them.
    """

    left_unique: bool
    right_unique: bool
    left_unlimited: tuple
    right_unlimited: tuple
    left_solvable: bool
    right_solvable: bool

    def to_json(self) -> dict:
        return {
            "left_unique": self.left_unique,
            "right_unique": self.right_unique,
            "left_unlimited": [list(r) for r in self.left_unlimited],
            "right_unlimited": [list(r) for r in self.right_unlimited],
            "left_solvable": self.left_solvable,
            "right_solvable": self.right_solvable,
            "unlimited_note": "finite table: solution counts reported; "
                              "solvable (all counts >= 1) is the finite "
                              "surrogate for the unlimited laws",
        }


def check_laws(t: CayleyTable) -> LawReport:
    """Evaluate all four laws; rejects non-associative tables."""
    if not is_associative(t):
        raise TableError("check_laws requires an associative table")
    n = t.n
    rng = range(n)
    rows = t.rows
    left_unique = all(
        len({rows[x][a] for x in rng}) == n for a in rng)
    right_unique = all(len(set(rows[a])) == n for a in rng)
    left_counts = tuple(
        tuple(sum(1 for x in rng if rows[x][a] == b) for b in rng)
        for a in rng)
    right_counts = tuple(
        tuple(sum(1 for x in rng if rows[a][x] == b) for b in rng)
        for a in rng)
    return LawReport(
        left_unique, right_unique, left_counts, right_counts,
        all(c >= 1 for row in left_counts for c in row),
        all(c >= 1 for row in right_counts for c in row))


def identity_of(t: CayleyTable):
    """The two-sided identity's index, or None."""
    n = t.n
    for e in range(n):
        if all(t.rows[e][x] == x == t.rows[x][e] for x in range(n)):
            return e
    return None


def is_group(t: CayleyTable) -> bool:
    """True iff an identity exists and every element has a two-sided inverse
    (the table is assumed associative)."""
    e = identity_of(t)
    if e is None:
        return False
    n = t.n
    return all(any(t.rows[x][y] == e == t.rows[y][x] for y in range(n))
               for x in range(n))


@dataclass(frozen=True)
class RightGroupDecomposition:
    """S as (group) x (right-zero classes): every element factors uniquely as
    (group part, idempotent class), and the product works coordinatewise with
    the class taken from the right factor."""

    group_part: CayleyTable
    group_elements: tuple       # indices of S forming the subgroup S e0
    idempotents: tuple          # indices of the idempotents, ascending
    classes: tuple              # element index -> position in idempotents
    witness: tuple              # element index -> (group position, class)

    def reconstructs(self, t: CayleyTable) -> bool:
        """Re-multiply through the factorization and compare with t."""
        g_of = {s: self.group_elements[g] for s, (g, _) in enumerate(self.witness)}
        e_of = {s: self.idempotents[c] for s, (_, c) in enumerate(self.witness)}
        for s in range(t.n):
            for u in range(t.n):
                g = t.rows[g_of[s]][g_of[u]]
                if t.rows[s][u] != t.rows[g][e_of[u]]:
                    return False
        return True


def decompose_right_group(t: CayleyTable) -> RightGroupDecomposition:
    """Split a right group (a X = b always solvable, ax = ay implies x = y)
    into group x right-zero parts; raises DecompositionError naming the first
    violated hypothesis otherwise."""
    if not is_associative(t):
        raise TableError("decompose_right_group requires an associative table")
    n = t.n
    rng = range(n)
    for a in rng:
        row = t.rows[a]
        hit = set(row)
        for b in rng:
            if b not in hit:
                raise DecompositionError(
                    "right-unlimited", (a, b),
                    f"a X = b has no solution: a={a}, b={b}")
        seen = {}
        for x in rng:
            if row[x] in seen:
                raise DecompositionError(
                    "left-cancellation", (seen[row[x]], x),
                    f"a x = a y with x != y: a={a}, x={seen[row[x]]}, y={x}")
            seen[row[x]] = x

    idempotents = tuple(e for e in rng if t.rows[e][e] == e)
    if not idempotents:
        raise DecompositionError("structure", (0, 0), "no idempotent exists")
    classes = []
    for s in rng:
        owners = [k for k, e in enumerate(idempotents) if t.rows[s][e] == s]
        if len(owners) != 1:
            raise DecompositionError(
                "structure", (s, len(owners)),
                f"element {s} lies in {len(owners)} right-zero classes")
        classes.append(owners[0])
    e0 = idempotents[0]
    group_elements = tuple(s for s in rng if t.rows[s][e0] == s)
    lookup = {s: k for k, s in enumerate(group_elements)}
    group_part = CayleyTable(tuple(
        tuple(lookup[t.rows[x][y]] for y in group_elements)
        for x in group_elements))
    if not is_group(group_part):
        raise DecompositionError("structure", (e0, e0),
                                 "S e0 is not a group")
    witness = tuple((lookup[t.rows[s][e0]], classes[s]) for s in rng)
    decomp = RightGroupDecomposition(group_part, group_elements, idempotents,
                                     tuple(classes), witness)
    if not decomp.reconstructs(t):
        raise DecompositionError("structure", (0, 0),
                                 "factorization failed to reproduce the table")
    return decomp


def enumerate_semigroups(n: int):
    """Yield every associative table on n elements exactly once (raw, not up
    to isomorphism), by backtracking with associativity pruning.  Hard cap
    n <= 4."""
    if not 1 <= n <= 4:
        raise TableError("enumerate_semigroups supports orders 1 to 4 only")
    size = n * n
    t = [-1] * size
    rng = range(n)

    def consistent_after(cell):
        # scan the triples whose four products are all decided; a cheap full
        # pass beats bookkeeping at n <= 4
        for x in rng:
            base = x * n
            for y in rng:
                xy = t[base + y]
                if xy < 0:
                    continue
                yb = y * n
                xyb = xy * n
                for z in rng:
                    yz = t[yb + z]
                    if yz < 0:
                        continue
                    left = t[xyb + z]
                    right = t[base + yz]
                    if left >= 0 and right >= 0 and left != right:
                        return False
        return True

    def fill(cell):
        if cell == size:
            yield CayleyTable(tuple(tuple(t[i * n + j] for j in rng)
                                    for i in rng))
            return
        for v in rng:
            t[cell] = v
            if consistent_after(cell):
                yield from fill(cell + 1)
        t[cell] = -1

    yield from fill(0)
