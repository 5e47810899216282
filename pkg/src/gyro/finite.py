"""Exhaustive gyrogroup classification of finite magmas given by Cayley tables.

Row ``a`` of a table lists ``a(+)0, ..., a(+)(n-1)``.  Candidate gyrations
are derived from left cancellation, ``gyr[a,b]c = -(a(+)b) (+) (a(+)(b(+)c))``,
and every axiom is then checked over all tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .axioms import Realization

MAX_ORDER = 64


class TableParseError(ValueError):
    pass


@dataclass(frozen=True)
class CayleyTable:
    n: int
    table: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a Cayley table needs at least one element")
        rows = tuple(tuple(int(x) for x in row) for row in self.table)
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise ValueError(f"table must be {self.n}x{self.n}")
        for a, row in enumerate(rows):
            for b, x in enumerate(row):
                if not 0 <= x < self.n:
                    raise ValueError(f"entry {a},{b} = {x} out of range [0, {self.n})")
        object.__setattr__(self, "table", rows)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.n, self.n)

    def to_text(self) -> str:
        return "\n".join([str(self.n), *(" ".join(map(str, row)) for row in self.table)]) + "\n"

    @classmethod
    def from_function(cls, n: int, f) -> "CayleyTable":
        return cls(n, tuple(tuple(f(a, b) for b in range(n)) for a in range(n)))


def parse_table(text: str) -> CayleyTable:
    """Parse the Cayley-table file format; ``#`` lines are comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise TableParseError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise TableParseError(f"first line must be the order n, got {lines[0]!r}") from None
    if n < 1:
        raise TableParseError(f"order must be positive, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise TableParseError(f"expected {n} rows, got {len(rows)}")
    table = []
    for i, line in enumerate(rows):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise TableParseError(f"row {i}: malformed line {line!r}") from None
        if len(row) != n:
            raise TableParseError(f"row {i}: expected {n} entries, got {len(row)}")
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise TableParseError(f"row {i}, column {j}: entry {x} out of range [0, {n})")
        table.append(tuple(row))
    return CayleyTable(n, tuple(table))


def find_left_identities(t: CayleyTable) -> list[int]:
    T = t.array()
    return [int(e) for e in np.flatnonzero(np.all(T == np.arange(t.n), axis=1))]


def find_left_inverses(t: CayleyTable, e: int) -> list[list[int]]:
    """For each ``a``, every ``x`` with ``x(+)a = e``."""
    T = t.array()
    return [[int(x) for x in np.flatnonzero(T[:, a] == e)] for a in range(t.n)]


@dataclass
class GyrationDerivation:
    """Candidate gyration tables; ``tables[a, b]`` is the map ``c -> gyr[a,b]c``."""

    identity: int
    inverses: list[int]
    tables: np.ndarray
    permutations: np.ndarray  # bool (n, n): is gyr[a,b] a bijection
    g3_failure: dict | None = None
    uniqueness_failure: dict | None = None
    diagnostics: list[str] = field(default_factory=list)


class MissingInverse(Exception):
    def __init__(self, element: int, identity: int):
        super().__init__(f"element {element} has no left inverse with respect to {identity}")
        self.element = element
        self.identity = identity


def _gyration_tables(T: np.ndarray, inv: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    ar = np.arange(n)
    # a(+)(b(+)c) for all a, b, c
    right = T[ar[:, None, None], T[None, :, :]]
    return T[inv[T][:, :, None], right]


def derive_gyrations(t: CayleyTable, e: int, inverses: list[int] | None = None) -> GyrationDerivation:
    """Gyrations through left cancellation, plus the G3 and G3-uniqueness scans.

    Raises :class:`MissingInverse` when some element has no left inverse.
    ``inverses`` overrides the default choice of the smallest left inverse.
    """
    candidates = find_left_inverses(t, e)
    diagnostics = []
    if inverses is None:
        for a, cands in enumerate(candidates):
            if not cands:
                raise MissingInverse(a, e)
            if len(cands) > 1:
                diagnostics.append(f"element {a} has left inverses {cands}; using {cands[0]}")
        inverses = [c[0] for c in candidates]
    T = t.array()
    inv = np.array(inverses, dtype=np.int64)
    G = _gyration_tables(T, inv)
    n = t.n
    perms = np.array([[len(np.unique(G[a, b])) == n for b in range(n)] for a in range(n)])
    d = GyrationDerivation(e, list(inverses), G, perms, diagnostics=diagnostics)

    ar = np.arange(n)
    lhs = T[ar[:, None, None], T[None, :, :]]  # a(+)(b(+)c)
    rhs = T[T[:, :, None], G]  # (a(+)b)(+)gyr[a,b]c
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = (int(x) for x in bad[0])
        d.g3_failure = {"a": a, "b": b, "c": c, "lhs": int(lhs[a, b, c]), "rhs": int(rhs[a, b, c])}

    # uniqueness: (a(+)b)(+)X = a(+)(b(+)c) must have exactly one solution X
    counts = np.zeros((n, n, n), dtype=np.int64)
    for x in range(n):
        counts += T[T, x][:, :, None] == lhs
    bad = np.argwhere(counts != 1)
    if len(bad):
        a, b, c = (int(x) for x in bad[0])
        sols = [x for x in range(n) if T[T[a, b], x] == lhs[a, b, c]]
        d.uniqueness_failure = {"a": a, "b": b, "c": c, "target": int(lhs[a, b, c]), "solutions": sols}
    return d


@dataclass
class Classification:
    verdict: str  # "gyrogroup" | "not_gyrogroup"
    failed_axiom: str | None = None
    counterexample: dict | None = None
    gyrocommutative: bool | None = None
    trivial_gyrations: bool | None = None
    identity: int | None = None
    inverses: list[int] | None = None
    gyration_tables: np.ndarray | None = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def is_gyrogroup(self) -> bool:
        return self.verdict == "gyrogroup"

    def nontrivial_gyrations(self) -> list[dict]:
        if self.gyration_tables is None:
            return []
        n = self.gyration_tables.shape[0]
        ident = np.arange(n)
        return [
            {"a": a, "b": b, "permutation": [int(x) for x in self.gyration_tables[a, b]]}
            for a in range(n)
            for b in range(n)
            if not np.array_equal(self.gyration_tables[a, b], ident)
        ]

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "gyrocommutative": self.gyrocommutative,
            "trivial_gyrations": self.trivial_gyrations,
            "failed_axiom": self.failed_axiom,
            "counterexample": self.counterexample,
            "identity": self.identity,
            "inverses": self.inverses,
            "nontrivial_gyrations": self.nontrivial_gyrations(),
            "diagnostics": list(self.diagnostics),
        }


def _not(axiom, counterexample, **kw) -> Classification:
    return Classification("not_gyrogroup", failed_axiom=axiom, counterexample=counterexample, **kw)


def _classify_with(t: CayleyTable, e: int, inverses: list[int] | None) -> Classification:
    try:
        d = derive_gyrations(t, e, inverses)
    except MissingInverse as exc:
        return _not("G2", {"a": exc.element, "identity": e}, identity=e)
    kw = dict(identity=e, inverses=d.inverses, gyration_tables=d.tables, diagnostics=d.diagnostics)
    if d.g3_failure:
        return _not("G3", d.g3_failure, **kw)
    if d.uniqueness_failure:
        return _not("G3_uniqueness", d.uniqueness_failure, **kw)

    T, G, n = t.array(), d.tables, t.n
    if not d.permutations.all():
        a, b = (int(x) for x in np.argwhere(~d.permutations)[0])
        return _not("G4", {"a": a, "b": b, "reason": "not a bijection", "gyration": G[a, b].tolist()}, **kw)
    for a in range(n):
        for b in range(n):
            g = G[a, b]
            hom_l = g[T]  # g(c(+)d)
            hom_r = T[g[:, None], g[None, :]]  # g(c)(+)g(d)
            bad = np.argwhere(hom_l != hom_r)
            if len(bad):
                c, dd = (int(x) for x in bad[0])
                ce = {"a": a, "b": b, "c": c, "d": dd, "lhs": int(hom_l[c, dd]), "rhs": int(hom_r[c, dd])}
                return _not("G4", ce, **kw)

    # G5: gyr[a(+)b, b] = gyr[a, b]
    loop = G[T, np.arange(n)[None, :]]
    bad = np.argwhere(loop != G)
    if len(bad):
        a, b, c = (int(x) for x in bad[0])
        ce = {"a": a, "b": b, "c": c, "lhs": int(loop[a, b, c]), "rhs": int(G[a, b, c])}
        return _not("G5", ce, **kw)

    # G6: a(+)b = gyr[a,b](b(+)a)
    ar = np.arange(n)
    comm = G[ar[:, None], ar[None, :], T.T]
    gyrocommutative = bool(np.array_equal(T, comm))
    trivial = bool(np.all(G == ar[None, None, :]))
    ce = None
    if not gyrocommutative:
        a, b = (int(x) for x in np.argwhere(T != comm)[0])
        ce = {"a": a, "b": b, "lhs": int(T[a, b]), "rhs": int(comm[a, b])}
    return Classification(
        "gyrogroup",
        counterexample=ce,
        gyrocommutative=gyrocommutative,
        trivial_gyrations=trivial,
        **kw,
    )


def classify(t: CayleyTable) -> Classification:
    """Decide G1-G5 (and G6) exhaustively.

    With several left identities or left inverses the smallest is used; the
    alternatives are re-checked one at a time and any change of verdict is
    reported as an ``ambiguous_witness`` failure.
    """
    if t.n > MAX_ORDER:
        raise ValueError(f"exhaustive classification is capped at order {MAX_ORDER}")
    identities = find_left_identities(t)
    if not identities:
        T = t.array()
        # for each candidate e, some a with e(+)a != a
        witnesses = {str(e): int(np.flatnonzero(T[e] != np.arange(t.n))[0]) for e in range(t.n)}
        return _not("G1", {"witnesses": witnesses})
    base = _classify_with(t, identities[0], None)
    diagnostics = list(base.diagnostics)
    if len(identities) > 1:
        diagnostics.insert(0, f"left identities {identities}; using {identities[0]}")

    variants = [(e, None) for e in identities[1:]]
    candidates = find_left_inverses(t, identities[0])
    if all(candidates):
        chosen = [c[0] for c in candidates]
        for a, cands in enumerate(candidates):
            for alt in cands[1:]:
                inv = list(chosen)
                inv[a] = alt
                variants.append((identities[0], inv))
    for e, inv in variants:
        other = _classify_with(t, e, inv)
        if other.verdict != base.verdict:
            ce = {
                "identity": e,
                "inverses": inv,
                "alternative_verdict": other.verdict,
                "base_verdict": base.verdict,
                "base_failed_axiom": base.failed_axiom,
            }
            return _not("ambiguous_witness", ce, identity=identities[0], diagnostics=diagnostics)
    base.diagnostics = diagnostics
    return base


def replay(t: CayleyTable, c: Classification) -> bool:
    """True iff the recorded counterexample is a genuine violation in ``t``."""
    op = t.op
    ce = c.counterexample
    axiom = c.failed_axiom if not c.is_gyrogroup else ("G6" if ce else None)
    if axiom is None:
        return False
    if axiom == "G1":
        return all(op(int(e), a) != a for e, a in ce["witnesses"].items()) and len(ce["witnesses"]) == t.n
    if axiom == "G2":
        return all(op(x, ce["a"]) != ce["identity"] for x in range(t.n))
    if axiom == "ambiguous_witness":
        return ce["alternative_verdict"] != ce["base_verdict"]

    def gyr(a, b, x):
        return op(c.inverses[op(a, b)], op(a, op(b, x)))

    a, b = ce["a"], ce["b"]
    if axiom == "G3":
        x = ce["c"]
        return op(a, op(b, x)) != op(op(a, b), gyr(a, b, x))
    if axiom == "G3_uniqueness":
        target = op(a, op(b, ce["c"]))
        return sum(op(op(a, b), x) == target for x in range(t.n)) != 1
    if axiom == "G4":
        if "d" in ce:
            x, y = ce["c"], ce["d"]
            return gyr(a, b, op(x, y)) != op(gyr(a, b, x), gyr(a, b, y))
        return len({gyr(a, b, x) for x in range(t.n)}) != t.n
    if axiom == "G5":
        x = ce["c"]
        return gyr(op(a, b), b, x) != gyr(a, b, x)
    if axiom == "G6":
        return op(a, b) != gyr(a, b, op(b, a))
    raise ValueError(f"unknown axiom {axiom!r}")


class FiniteRealization(Realization):
    """A Cayley table as an axiom-engine carrier, checked over all tuples.

    ``zero`` is the smallest left identity (0 if there is none) and ``neg``
    the smallest left inverse; ``None`` stands for an undefined result and
    never compares equal.
    """

    def __init__(self, t: CayleyTable, name: str = "table"):
        self.t = t
        self.name = f"finite[{name},n={t.n}]"
        self.elements = tuple(range(t.n))
        ids = find_left_identities(t)
        self._zero = ids[0] if ids else 0
        self._inv = [c[0] if c else None for c in find_left_inverses(t, self._zero)]

    def op(self, a, b):
        if a is None or b is None:
            return None
        return self.t.table[a][b]

    def neg(self, a):
        return None if a is None else self._inv[a]

    @property
    def zero(self):
        return self._zero

    def gyr(self, a, b, c):
        return self.op(self.neg(self.op(a, b)), self.op(a, self.op(b, c)))

    def eq(self, x, y, tol=None):
        if x is None or y is None:
            return False, 1
        return (x == y), int(x != y)

    def render(self, x):
        return x

    def sample(self, seed, index):
        return self.elements[index % self.t.n]


def cyclic(n: int) -> CayleyTable:
    return CayleyTable.from_function(n, lambda a, b: (a + b) % n)


def klein_four() -> CayleyTable:
    return CayleyTable.from_function(4, lambda a, b: a ^ b)


def symmetric_group_3() -> CayleyTable:
    """S3 with elements indexed by the lexicographic order of permutations of (0, 1, 2)."""
    from itertools import permutations

    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def mul(i, j):
        p, q = perms[i], perms[j]
        return index[tuple(p[q[k]] for k in range(3))]

    return CayleyTable.from_function(6, mul)
