"""Coordinate compressibility, multicompressibility and minimum slice covers.

Only coordinate index subsets are searched.  Every in-scope compressibility
claim is witnessed by coordinate subspaces, so the searches verify all of
them; results are exact for the coordinate notion and lower bounds for the
subspace notion, and outputs are labeled accordingly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .core import Support, Tensor


@dataclass(frozen=True)
class ZeroBox:
    """Index subsets whose product box misses the certified support entirely."""

    i_set: tuple[int, ...]
    j_set: tuple[int, ...]
    k_set: tuple[int, ...]

    def dims(self) -> tuple[int, int, int]:
        return (len(self.i_set), len(self.j_set), len(self.k_set))

    def avoids(self, s: Support) -> bool:
        box = set(itertools.product(self.i_set, self.j_set, self.k_set))
        return not box & s.as_set()


@dataclass(frozen=True)
class SliceCover:
    """A set of (axis, index) slices that jointly cover a support."""

    slices: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.slices)

    def covers(self, s: Support) -> bool:
        chosen = set(self.slices)
        return all(
            any((axis, t[axis]) in chosen for axis in range(3)) for t in s.triples
        )


def find_zero_box(s: Support, a1: int, b1: int, c1: int) -> Optional[ZeroBox]:
    """Exact search for index subsets I, J, K of the requested sizes with
    (I x J x K) disjoint from the support; None proves there are none.

    Axes are processed in increasing target size; the smallest target is
    enumerated by subset backtracking, the other two by a biclique search on
    the pairs left unblocked.  Within an axis, indices are tried in ascending
    occupancy so sparse slices are used first.
    """
    dims = tuple(s.shape)
    targets = (a1, b1, c1)
    for want, have in zip(targets, dims):
        if not 0 <= want <= have:
            raise ValueError(f"requested box {targets} exceeds shape {dims}")

    if 0 in targets:
        # a zero-dimensional factor makes the box empty, hence trivially disjoint
        sets: list[tuple[int, ...]] = []
        for want in targets:
            sets.append(tuple(range(want)))
        return ZeroBox(*sets)

    order = sorted(range(3), key=lambda d: (targets[d], d))
    d0, d1, d2 = order

    occupancy = [[0] * dims[d] for d in range(3)]
    for t in s.triples:
        for d in range(3):
            occupancy[d][t[d]] += 1

    # triples re-expressed in processing order (v0, v1, v2)
    tris = [(t[d0], t[d1], t[d2]) for t in s.triples]
    n0, n1, n2 = dims[d0], dims[d1], dims[d2]
    w0, w1, w2 = targets[d0], targets[d1], targets[d2]
    by_v0: list[list[tuple[int, int]]] = [[] for _ in range(n0)]
    for v0, v1, v2 in tris:
        by_v0[v0].append((v1, v2))

    cand0 = sorted(range(n0), key=lambda v: (occupancy[d0][v], v))

    def biclique(blocked: set[tuple[int, int]]) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
        allowed = [set(range(n2)) for _ in range(n1)]
        for v1, v2 in blocked:
            allowed[v1].discard(v2)
        cand1 = sorted(
            (v for v in range(n1) if len(allowed[v]) >= w2),
            key=lambda v: (occupancy[d1][v], v),
        )

        chosen: list[int] = []

        def grow(start: int, common: set[int]) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
            if len(chosen) == w1:
                picked = sorted(common, key=lambda v: (occupancy[d2][v], v))[:w2]
                return tuple(sorted(chosen)), tuple(sorted(picked))
            for pos in range(start, len(cand1)):
                if len(cand1) - pos < w1 - len(chosen):
                    return None
                v = cand1[pos]
                nxt = common & allowed[v]
                if len(nxt) < w2:
                    continue
                chosen.append(v)
                res = grow(pos + 1, nxt)
                chosen.pop()
                if res is not None:
                    return res
            return None

        return grow(0, set(range(n2)))

    picked0: list[int] = []

    def pick0(start: int, blocked: set[tuple[int, int]]) -> Optional[ZeroBox]:
        if len(picked0) == w0:
            rest = biclique(blocked)
            if rest is None:
                return None
            out = [None, None, None]
            out[d0] = tuple(sorted(picked0))
            out[d1], out[d2] = rest
            return ZeroBox(*out)  # type: ignore[arg-type]
        for pos in range(start, len(cand0)):
            if len(cand0) - pos < w0 - len(picked0):
                return None
            v = cand0[pos]
            added = [p for p in by_v0[v] if p not in blocked]
            picked0.append(v)
            blocked.update(added)
            res = pick0(pos + 1, blocked)
            blocked.difference_update(added)
            picked0.pop()
            if res is not None:
                return res
        return None

    box = pick0(0, set())
    if box is not None and not box.avoids(s):
        raise AssertionError("internal: returned box intersects the support")
    return box


def total_compressibility(s: Support) -> tuple[int, ZeroBox]:
    """Largest a'+b'+c' admitting a zero box (coordinate notion)."""
    a, b, c = s.shape
    for total in range(a + b + c, -1, -1):
        for a1 in range(min(a, total), -1, -1):
            rem = total - a1
            for b1 in range(min(b, rem), -1, -1):
                c1 = rem - b1
                if c1 > c:
                    continue
                box = find_zero_box(s, a1, b1, c1)
                if box is not None:
                    return total, box
    raise AssertionError("internal: the empty box always exists")


def multicompressibility(s: Support) -> int:
    """Largest r such that every in-range size split (a', b', c') with
    a'+b'+c' = r admits a zero box.  Splits are monotone, so r is scanned
    upward until some split fails."""
    a, b, c = s.shape
    best = 0
    for total in range(1, a + b + c + 1):
        ok = True
        for a1 in range(min(a, total) + 1):
            rem = total - a1
            if rem > b + c:
                continue
            for b1 in range(min(b, rem) + 1):
                c1 = rem - b1
                if c1 > c:
                    continue
                if find_zero_box(s, a1, b1, c1) is None:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
        best = total
    return best


def slice_cover(s: Support) -> SliceCover:
    """Minimum cover of the support by axis slices, by exact branch and bound.

    Every triple lies in exactly three slices, so branching on an uncovered
    triple has factor three; a greedy cover seeds the upper bound.
    """
    triples = list(s.triples)
    if not triples:
        return SliceCover(())
    slices: dict[tuple[int, int], set[int]] = {}
    for idx, t in enumerate(triples):
        for axis in range(3):
            slices.setdefault((axis, t[axis]), set()).add(idx)

    # greedy upper bound
    uncovered = set(range(len(triples)))
    greedy: list[tuple[int, int]] = []
    while uncovered:
        sl = max(sorted(slices), key=lambda key: len(slices[key] & uncovered))
        greedy.append(sl)
        uncovered -= slices[sl]
    best: list[tuple[int, int]] = sorted(greedy)
    max_cover = max(len(v) for v in slices.values())

    def dfs(uncov: set[int], chosen: list[tuple[int, int]]) -> None:
        nonlocal best
        if not uncov:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        lower = len(chosen) + -(-len(uncov) // max_cover)
        if lower >= len(best):
            return
        pivot = min(uncov)
        t = triples[pivot]
        for axis in range(3):
            key = (axis, t[axis])
            chosen.append(key)
            dfs(uncov - slices[key], chosen)
            chosen.pop()

    dfs(set(range(len(triples))), [])
    cover = SliceCover(tuple(best))
    if not cover.covers(s):
        raise AssertionError("internal: cover search returned a non-cover")
    return cover


def contracted_flattening_rank(t: Tensor, axis: int, functional: Sequence[Fraction]) -> int:
    """Exact rank of the matrix obtained by pairing one factor with a covector.

    This is the constructive quantity behind single-axis compressibility
    statements: a rank-r contraction certifies (1, b', c')-compressibility
    for suitable splits in an adapted basis.
    """
    sizes = tuple(t.shape)
    if len(functional) != sizes[axis]:
        raise ValueError("functional length must match the contracted axis")
    others = [d for d in range(3) if d != axis]
    rows: list[dict[int, Fraction]] = [dict() for _ in range(sizes[others[0]])]
    for tr, v in t.entries.items():
        coef = Fraction(functional[tr[axis]]) * v
        if coef:
            r, col = tr[others[0]], tr[others[1]]
            rows[r][col] = rows[r].get(col, Fraction(0)) + coef
    cleaned = [linalg.row_from_fractions(r) for r in rows]
    return linalg.rank(cleaned, sizes[others[1]])
