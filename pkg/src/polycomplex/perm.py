"""Small permutation-group helpers.

Permutations are tuples of ints acting on 0..degree-1.  Groups act on the
right throughout, matching the coset formulas elsewhere in the package:
``mult(a, b)`` is "a then b", so a point x moves to ``b[a[x]]``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import GroupTooLargeError

Perm = tuple[int, ...]

DEFAULT_LIMIT = 10**6


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def mult(a: Perm, b: Perm) -> Perm:
    """Composition in right-action order: apply a, then b."""
    return tuple(b[x] for x in a)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def mulclose(gens: Iterable[Perm], limit: int = DEFAULT_LIMIT) -> set[Perm]:
    """Closure of the generators under multiplication (includes identity)."""
    gens = [tuple(g) for g in gens]
    degree = len(gens[0]) if gens else 0
    els: set[Perm] = {identity(degree)} if gens else set()
    frontier = list(els)
    while frontier:
        new = []
        for b in frontier:
            for a in gens:
                c = mult(a, b)
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if len(els) > limit:
                        raise GroupTooLargeError(f"group exceeds element limit {limit}")
        frontier = new
    return els


def orbit(gens: Sequence[Perm], point: int) -> set[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def generating_subset(elements: Iterable[Perm]) -> list[Perm]:
    """A small generating set for an explicitly listed group."""
    els = sorted(set(elements))
    if not els:
        return []
    degree = len(els[0])
    gens: list[Perm] = []
    closure: set[Perm] = {identity(degree)}
    for e in els:
        if e not in closure:
            gens.append(e)
            closure = mulclose(gens)
            if len(closure) == len(els):
                break
    return gens


def product_set(a: Iterable[Perm], b: Iterable[Perm]) -> set[Perm]:
    """The subset product AB = {xy : x in A, y in B}."""
    bl = list(b)
    return {mult(x, y) for x in a for y in bl}


def cycles(p: Perm) -> str:
    """Disjoint-cycle notation on points 1..degree; identity prints as ()."""
    parts = []
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


def from_cycles(text: str, degree: int) -> Perm:
    """Parse disjoint-cycle notation on points 1..degree."""
    from .errors import FormatError

    out = list(range(degree))
    text = text.strip()
    if text in ("()", ""):
        return tuple(out)
    depth = 0
    cyc: list[int] = []
    token = ""

    def flush_token():
        if token:
            cyc.append(int(token) - 1)

    for ch in text:
        if ch == "(":
            if depth:
                raise FormatError("nested parenthesis in cycle notation")
            depth = 1
            cyc = []
            token = ""
        elif ch == ")":
            flush_token()
            token = ""
            depth = 0
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if not 0 <= a < degree:
                    raise FormatError(f"cycle point {a + 1} out of range 1..{degree}")
                out[a] = b
        elif ch in " ,":
            flush_token()
            token = ""
        elif ch.isdigit():
            token += ch
        else:
            raise FormatError(f"unexpected character {ch!r} in cycle notation")
    if depth:
        raise FormatError("unbalanced parenthesis in cycle notation")
    return tuple(out)
