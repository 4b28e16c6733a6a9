"""Finite ranked incidence complexes.

An incidence complex of rank n is a ranked poset with a unique minimal face
of rank -1, a unique maximal face of rank n, all maximal chains of length
n + 2, at least two middle faces over every incident (j-1, j+1) pair, and
strong flag-connectedness.  Only the proper faces (ranks 0 .. n-1) are
stored; the improper faces are implicit, and the partial order is generated
by the stored covering relation (the Hasse diagram).

Face identifiers are opaque strings, unique within their rank.  A flag is a
tuple of n face ids indexed by rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import PreconditionError

FaceId = str
FaceRef = tuple[int, FaceId]  # (rank, id)
Flag = tuple[FaceId, ...]  # proper faces only, position = rank

# Violation tags.  "malformed/*" marks structural defects of the input data;
# "axiom/*" marks failures of the defining conditions of an incidence complex.
MALFORMED_DUPLICATE = "malformed/duplicate-id"
MALFORMED_DANGLING = "malformed/dangling-cover"
MALFORMED_RANK = "malformed/rank-out-of-range"
AXIOM_FLAG_LENGTH = "axiom/flag-length"
AXIOM_MIDDLE_COUNT = "axiom/middle-count"
AXIOM_CONNECTIVITY = "axiom/flag-connectivity"


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violations: tuple[tuple[str, tuple], ...]

    def tags(self) -> tuple[str, ...]:
        return tuple(tag for tag, _ in self.violations)

    def __str__(self):
        if self.passed:
            return "valid incidence complex"
        lines = [f"{len(self.violations)} violation(s):"]
        for tag, witness in self.violations:
            lines.append(f"  {tag}: {witness}")
        return "\n".join(lines)


class IncidenceComplex:
    """Immutable ranked poset given by rank, face ids, and covering lists.

    ``records`` is an iterable of (rank, id, covered) triples where
    ``covered`` lists the ids of the (rank-1)-faces the face covers.
    Rank-0 faces have empty cover lists; the improper faces are never
    listed.  Construction accepts malformed data so that
    :func:`validate_complex` can report structural defects; all other
    operations assume a validated complex.
    """

    def __init__(self, rank: int, records: Iterable[tuple[int, FaceId, Iterable[FaceId]]]):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        self.rank = rank
        self._records = tuple((int(j), str(i), tuple(str(c) for c in cov)) for j, i, cov in records)
        layers: dict[int, dict[FaceId, frozenset[FaceId]]] = {j: {} for j in range(rank)}
        for j, fid, cov in self._records:
            if j in layers and fid not in layers[j]:
                layers[j][fid] = frozenset(cov)
        self._layers = layers

    @classmethod
    def from_covers(cls, rank: int, covers: dict[int, dict[FaceId, Iterable[FaceId]]]) -> "IncidenceComplex":
        records = [(j, fid, tuple(cov)) for j, layer in sorted(covers.items()) for fid, cov in sorted(layer.items())]
        return cls(rank, records)

    # -- basic queries ---------------------------------------------------

    def faces(self, j: int) -> tuple[FaceId, ...]:
        """Ids of the proper faces of rank j, in sorted order."""
        return tuple(sorted(self._layers.get(j, ())))

    def n_faces(self, j: int) -> int:
        return len(self._layers.get(j, ()))

    def proper_faces(self) -> Iterator[FaceRef]:
        for j in range(self.rank):
            for fid in self.faces(j):
                yield (j, fid)

    def has_face(self, ref: FaceRef) -> bool:
        j, fid = ref
        return fid in self._layers.get(j, {})

    def covered(self, j: int, fid: FaceId) -> frozenset[FaceId]:
        """Ids of the (j-1)-faces covered by face (j, fid)."""
        return self._layers[j][fid]

    @cached_property
    def _covering(self) -> dict[int, dict[FaceId, frozenset[FaceId]]]:
        up: dict[int, dict[FaceId, set[FaceId]]] = {j: {fid: set() for fid in layer} for j, layer in self._layers.items()}
        for j in range(1, self.rank):
            for fid, cov in self._layers[j].items():
                for low in cov:
                    if low in up.get(j - 1, {}):
                        up[j - 1][low].add(fid)
        return {j: {fid: frozenset(s) for fid, s in layer.items()} for j, layer in up.items()}

    def covering(self, j: int, fid: FaceId) -> frozenset[FaceId]:
        """Ids of the (j+1)-faces covering face (j, fid)."""
        return self._covering[j][fid]

    def up_set(self, j: int, fid: FaceId) -> set[FaceRef]:
        """All proper faces strictly above (j, fid)."""
        out: set[FaceRef] = set()
        frontier = [(j, fid)]
        while frontier:
            k, g = frontier.pop()
            if k + 1 >= self.rank:
                continue
            for h in self.covering(k, g):
                if (k + 1, h) not in out:
                    out.add((k + 1, h))
                    frontier.append((k + 1, h))
        return out

    def down_set(self, j: int, fid: FaceId) -> set[FaceRef]:
        """All proper faces strictly below (j, fid)."""
        out: set[FaceRef] = set()
        frontier = [(j, fid)]
        while frontier:
            k, g = frontier.pop()
            if k - 1 < 0:
                continue
            for h in self.covered(k, g):
                if (k - 1, h) not in out:
                    out.add((k - 1, h))
                    frontier.append((k - 1, h))
        return out

    def leq(self, a: FaceRef, b: FaceRef) -> bool:
        """Partial order on proper faces (reflexive)."""
        if a == b:
            return True
        if a[0] > b[0]:
            return False
        return a in self.down_set(*b)

    # -- flags -----------------------------------------------------------

    @cached_property
    def _flags(self) -> tuple[Flag, ...]:
        if self.rank == 0:
            return ((),)
        out: list[Flag] = []
        chain: list[FaceId] = []

        def extend(j: int):
            if j == self.rank:
                out.append(tuple(chain))
                return
            if j == 0:
                candidates: Iterable[FaceId] = self.faces(0)
            else:
                candidates = sorted(self.covering(j - 1, chain[-1]))
            for fid in candidates:
                chain.append(fid)
                extend(j + 1)
                chain.pop()

        extend(0)
        return tuple(sorted(out))

    def flag_faces(self, flag: Flag) -> tuple[FaceRef, ...]:
        return tuple((j, fid) for j, fid in enumerate(flag))

    # -- equality (structural) -------------------------------------------

    def _normal_form(self):
        return (self.rank, tuple(sorted((j, fid, tuple(sorted(cov))) for j, layer in self._layers.items() for fid, cov in layer.items())))

    def __eq__(self, other):
        return isinstance(other, IncidenceComplex) and self._normal_form() == other._normal_form()

    def __repr__(self):
        counts = ", ".join(str(self.n_faces(j)) for j in range(self.rank))
        return f"IncidenceComplex(rank={self.rank}, faces=[{counts}])"


# -- operations ------------------------------------------------------------


def flags(c: IncidenceComplex) -> tuple[Flag, ...]:
    """All maximal chains of proper faces, in lexicographic order."""
    return c._flags


def adjacent_flags(c: IncidenceComplex, flag: Flag, j: int) -> tuple[Flag, ...]:
    """Flags equal to ``flag`` except at rank j.

    Nonempty for every validated complex; a polytope has exactly one
    j-adjacent flag for each j.
    """
    n = c.rank
    if not 0 <= j <= n - 1:
        raise PreconditionError(f"adjacency rank {j} out of range 0..{n - 1}")
    if j + 1 <= n - 1:
        upper = c.covered(j + 1, flag[j + 1])
    else:
        upper = frozenset(c.faces(n - 1))
    if j >= 1:
        lower_ok = lambda fid: flag[j - 1] in c.covered(j, fid)
    else:
        lower_ok = lambda fid: True
    out = []
    for fid in sorted(upper):
        if fid != flag[j] and lower_ok(fid):
            out.append(flag[:j] + (fid,) + flag[j + 1:])
    return tuple(out)


def section(c: IncidenceComplex, low: Optional[FaceRef], high: Optional[FaceRef]) -> IncidenceComplex:
    """The section high/low: all faces H with low <= H <= high.

    ``low=None`` means the improper minimal face, ``high=None`` the improper
    maximal face.  Ranks are shifted so that ``low`` plays rank -1.  Face ids
    are preserved.  section(c, None, None) is c itself; the vertex-figure at
    a vertex v is section(c, (0, v), None).
    """
    lo_rank = -1 if low is None else low[0]
    hi_rank = c.rank if high is None else high[0]
    if low is not None and not c.has_face(low):
        raise PreconditionError(f"no such face {low}")
    if high is not None and not c.has_face(high):
        raise PreconditionError(f"no such face {high}")
    if low is not None and high is not None and not c.leq(low, high):
        raise PreconditionError(f"{low} is not below {high}")
    new_rank = hi_rank - lo_rank - 1
    if new_rank < 0:
        raise PreconditionError("section has negative rank")

    above = c.up_set(*low) | {low} if low is not None else None
    below = c.down_set(*high) | {high} if high is not None else None

    def member(ref: FaceRef) -> bool:
        if ref[0] <= lo_rank or ref[0] >= hi_rank:
            return False
        if above is not None and ref not in above:
            return False
        if below is not None and ref not in below:
            return False
        return True

    records = []
    for j in range(lo_rank + 1, hi_rank):
        new_j = j - lo_rank - 1
        for fid in c.faces(j):
            if not member((j, fid)):
                continue
            if new_j == 0:
                cov: tuple[FaceId, ...] = ()
            else:
                cov = tuple(g for g in sorted(c.covered(j, fid)) if member((j - 1, g)))
            records.append((new_j, fid, cov))
    return IncidenceComplex(new_rank, records)


def vertex_figure(c: IncidenceComplex, vertex: FaceId) -> IncidenceComplex:
    """Co-face at a vertex: section from the vertex to the maximal face."""
    return section(c, (0, vertex), None)


def skeleton(c: IncidenceComplex, k: int) -> IncidenceComplex:
    """The k-skeleton: faces of rank <= k plus the maximal face, rank k+1."""
    if not 0 <= k <= c.rank - 1:
        raise PreconditionError(f"skeleton rank {k} out of range 0..{c.rank - 1}")
    records = [(j, fid, tuple(sorted(c.covered(j, fid)))) for j in range(k + 1) for fid in c.faces(j)]
    return IncidenceComplex(k + 1, records)


def _middle_pairs(c: IncidenceComplex):
    """Incident pairs (F of rank j-1, G of rank j+1) with their middle faces.

    The improper faces take part: F may be the minimal face (j = 0) and G
    the maximal face (j = n-1).  Yields (j, F, G, middle_ids); F and G are
    ids or None for the improper faces.
    """
    n = c.rank
    for j in range(n):
        if j == 0 and j == n - 1:
            yield j, None, None, tuple(c.faces(0))
            continue
        if j == 0:
            for g in c.faces(1):
                yield j, None, g, tuple(sorted(c.covered(1, g)))
            continue
        if j == n - 1:
            for f in c.faces(n - 2):
                yield j, f, None, tuple(sorted(c.covering(n - 2, f)))
            continue
        for g in c.faces(j + 1):
            mids = sorted(c.covered(j + 1, g))
            lows: dict[FaceId, list[FaceId]] = {}
            for m in mids:
                for f in c.covered(j, m):
                    lows.setdefault(f, []).append(m)
            for f, ms in sorted(lows.items()):
                yield j, f, g, tuple(ms)


def validate_complex(c: IncidenceComplex) -> ValidationReport:
    """Check every defining condition, reporting each violation with a witness.

    Structural defects of the raw input (duplicate ids, dangling cover
    references) are reported with ``malformed/*`` tags and suppress the
    axiom checks, which assume resolvable data.
    """
    violations: list[tuple[str, tuple]] = []

    seen: set[FaceRef] = set()
    for j, fid, cov in c._records:
        if not 0 <= j <= c.rank - 1:
            violations.append((MALFORMED_RANK, (j, fid)))
            continue
        if (j, fid) in seen:
            violations.append((MALFORMED_DUPLICATE, (j, fid)))
        seen.add((j, fid))
        for low in cov:
            if j == 0 or low not in c._layers.get(j - 1, {}):
                violations.append((MALFORMED_DANGLING, (j, fid, low)))
    if violations:
        return ValidationReport(False, tuple(violations))

    n = c.rank
    # Flag length: every maximal chain must contain n+2 faces.  With covers
    # between consecutive ranks this reduces to nonempty layers and no face
    # lacking a downward or upward cover.
    for j in range(n):
        if c.n_faces(j) == 0:
            violations.append((AXIOM_FLAG_LENGTH, ("empty-rank", j)))
    if not violations:
        for j in range(1, n):
            for fid in c.faces(j):
                if not c.covered(j, fid):
                    violations.append((AXIOM_FLAG_LENGTH, ("no-face-below", j, fid)))
        for j in range(0, n - 1):
            for fid in c.faces(j):
                if not c.covering(j, fid):
                    violations.append((AXIOM_FLAG_LENGTH, ("no-face-above", j, fid)))
    if violations:
        return ValidationReport(False, tuple(violations))

    for j, f, g, mids in _middle_pairs(c):
        if len(mids) < 2:
            violations.append((AXIOM_MIDDLE_COUNT, (j, f, g, len(mids))))

    violations.extend(_connectivity_violations(c))
    return ValidationReport(not violations, tuple(violations))


def _flag_graph_connected(c: IncidenceComplex) -> bool:
    fl = flags(c)
    if len(fl) <= 1:
        return True
    index = {f: i for i, f in enumerate(fl)}
    seen = {0}
    stack = [fl[0]]
    while stack:
        f = stack.pop()
        for j in range(c.rank):
            for g in adjacent_flags(c, f, j):
                i = index[g]
                if i not in seen:
                    seen.add(i)
                    stack.append(g)
    return len(seen) == len(fl)


def _connectivity_violations(c: IncidenceComplex):
    """Strong flag-connectedness, checked section by section.

    Flags containing a fixed chain correspond to tuples of flags of the
    sections between consecutive chain members, and moves that fix the chain
    act within one section at a time, so strong flag-connectedness holds iff
    every section of rank >= 2 (including the complex itself) has a
    connected flag-adjacency graph.
    """
    out = []
    pairs: list[tuple[Optional[FaceRef], Optional[FaceRef]]] = []
    n = c.rank
    if n >= 2:
        pairs.append((None, None))
    for j in range(n):
        if n - j - 1 >= 2:
            for fid in c.faces(j):
                pairs.append(((j, fid), None))
        if j >= 2:
            for fid in c.faces(j):
                pairs.append((None, (j, fid)))
    for jl in range(n):
        for jh in range(jl + 3, n):
            for fl_ in c.faces(jl):
                for fh in sorted(c.up_set(jl, fl_) & {(jh, x) for x in c.faces(jh)}):
                    pairs.append(((jl, fl_), fh))
    for low, high in pairs:
        s = section(c, low, high)
        if not _flag_graph_connected(s):
            out.append((AXIOM_CONNECTIVITY, (low, high)))
    return out


def middle_counts(c: IncidenceComplex, interior: Optional[set[FaceRef]] = None) -> dict[int, set[int]]:
    """Observed middle-face counts per rank.

    With ``interior`` given, only pairs whose proper members lie in it are
    counted (used for windowed complexes where boundary pairs are cut off).
    """
    counts: dict[int, set[int]] = {j: set() for j in range(c.rank)}
    for j, f, g, mids in _middle_pairs(c):
        if interior is not None:
            if f is not None and (j - 1, f) not in interior:
                continue
            if g is not None and (j + 1, g) not in interior:
                continue
        counts[j].add(len(mids))
    return counts


def uniform_middle_count(c: IncidenceComplex, interior: Optional[set[FaceRef]] = None) -> Optional[list[int]]:
    """The list k_0..k_{n-1} if every (j-1, j+1) pair has the same number of
    middle j-faces, else None."""
    counts = middle_counts(c, interior)
    out = []
    for j in range(c.rank):
        if len(counts[j]) != 1:
            return None
        out.append(next(iter(counts[j])))
    return out


def is_polytope(c: IncidenceComplex, interior: Optional[set[FaceRef]] = None) -> bool:
    """True iff every middle count is exactly two."""
    counts = middle_counts(c, interior)
    return all(cs == {2} for cs in counts.values())
