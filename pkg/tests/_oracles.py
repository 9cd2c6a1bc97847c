"""Independent brute-force oracles used to validate the fast implementations.

These deliberately avoid the library's algorithms: the tightness oracle is a
complete bounded search over integer weightings, the antichain oracle is a
maximum-independent-set search, the stabilizer oracle solves the full linear
system, and the functional oracle is a simplex grid sweep.
"""

from __future__ import annotations

import itertools

import numpy as np

from trisupport import linalg
from trisupport.core import Shape, Support, Triple

SEARCH_BOUND = 12
_NODE_CAP = 20_000_000


def _domain(bound: int) -> list[int]:
    # small absolute values first so forced sums stay in range early
    vals = [0]
    for v in range(1, bound + 1):
        vals.extend((v, -v))
    return vals


def _components(triples: list[Triple]) -> list[list[Triple]]:
    remaining = list(triples)
    comps: list[list[Triple]] = []
    while remaining:
        comp = [remaining.pop(0)]
        vars_in = {(d, comp[0][d]) for d in range(3)}
        changed = True
        while changed:
            changed = False
            for t in list(remaining):
                if any((d, t[d]) in vars_in for d in range(3)):
                    comp.append(t)
                    remaining.remove(t)
                    vars_in |= {(d, t[d]) for d in range(3)}
                    changed = True
        comps.append(comp)
    return comps


def _search(triples: list[Triple], bound: int) -> bool:
    """Complete DFS for an injective zero-sum weighting with values in
    [-bound, bound] on the variables of the given triples."""
    domain = _domain(bound)
    assign: dict[tuple[int, int], int] = {}
    used: list[set[int]] = [set(), set(), set()]
    nodes = 0

    def place(var: tuple[int, int], val: int) -> bool:
        if abs(val) > bound or val in used[var[0]]:
            return False
        assign[var] = val
        used[var[0]].add(val)
        return True

    def unplace(var: tuple[int, int]) -> None:
        used[var[0]].remove(assign.pop(var))

    def solve(ti: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > _NODE_CAP:
            raise RuntimeError("tightness oracle exceeded its node cap")
        if ti == len(triples):
            return True
        t = triples[ti]
        tvars = [(d, t[d]) for d in range(3)]
        missing = [v for v in tvars if v not in assign]
        have = sum(assign[v] for v in tvars if v in assign)
        if not missing:
            return have == 0 and solve(ti + 1)
        if len(missing) == 1:
            v = missing[0]
            if place(v, -have):
                if solve(ti + 1):
                    return True
                unplace(v)
            return False
        first = missing[0]
        rest = missing[1:]
        for val in domain:
            if not place(first, val):
                continue
            if len(rest) == 1:
                v = rest[0]
                if place(v, -have - val):
                    if solve(ti + 1):
                        return True
                    unplace(v)
            else:
                for val2 in domain:
                    if not place(rest[0], val2):
                        continue
                    if place(rest[1], -have - val - val2):
                        if solve(ti + 1):
                            return True
                        unplace(rest[1])
                    unplace(rest[0])
            unplace(first)
        return False

    return solve(0)


def oracle_tight(s: Support, bound: int = SEARCH_BOUND) -> bool:
    """Exhaustive bounded search for a tightness certificate.

    Components of the constraint hypergraph are refuted independently first
    (a global witness restricts to each component), which keeps exhaustion of
    unsatisfiable inputs cheap.
    """
    triples = list(s.triples)
    if not triples:
        return True
    comps = _components(triples)
    for comp in comps:
        if not _search(comp, bound):
            return False
    if len(comps) == 1:
        return True
    ordered = [t for comp in comps for t in comp]
    return _search(ordered, bound)


def oracle_oblique(s: Support) -> bool:
    """Obliqueness by trying every triple of axis orders directly."""
    from trisupport.core import AxisPermutations, apply_permutations
    from trisupport.deciders import is_antichain

    a, b, c = s.shape
    for pa in itertools.permutations(range(a)):
        for pb in itertools.permutations(range(b)):
            for pc in itertools.permutations(range(c)):
                moved = apply_permutations(s, AxisPermutations(pa, pb, pc))
                if is_antichain(moved):
                    return True
    return False


def oracle_max_antichain(shape: Shape) -> int:
    """Size of a maximum antichain by branch-and-bound independent set search."""
    verts = [
        (i, j, k)
        for i in range(shape.a)
        for j in range(shape.b)
        for k in range(shape.c)
    ]
    n = len(verts)
    adj = [0] * n
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            p, q = verts[x], verts[y]
            if all(p[d] <= q[d] for d in range(3)) or all(q[d] <= p[d] for d in range(3)):
                adj[x] |= 1 << y
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if cand == 0 or size + bin(cand).count("1") <= best:
            return
        while cand:
            vbit = cand & -cand
            v = vbit.bit_length() - 1
            grow(cand & ~adj[v] & ~vbit, size + 1)
            cand &= ~vbit
            if size + bin(cand).count("1") <= best:
                return

    grow((1 << n) - 1, 0)
    return best


def oracle_span_stabilizer_dim(s: Support) -> int:
    """Stabilizer dimension by assembling and ranking the full linear system."""
    a, b, c = s.shape
    ncols = a * a + b * b + c * c
    offsets = (0, a * a, a * a + b * b)
    sizes = (a, b, c)
    members = s.as_set()
    rows: list[dict[int, int]] = []
    for t in s.triples:
        for axis in range(3):
            n = sizes[axis]
            for v in range(n):
                moved = list(t)
                moved[axis] = v
                if tuple(moved) not in members:
                    # coefficient of e_moved in L.e_t is the single entry (v, t[axis])
                    rows.append({offsets[axis] + v * n + t[axis]: 1})
    return ncols - linalg.rank(rows, ncols)


def _compositions(total: int, parts: int):
    """All nonnegative integer vectors of the given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


_GRID_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _simplex_grid(total: int, parts: int) -> np.ndarray:
    key = (total, parts)
    if key not in _GRID_CACHE:
        _GRID_CACHE[key] = np.array(list(_compositions(total, parts)), dtype=np.float64)
    return _GRID_CACHE[key]


def oracle_zeta_grid(
    points: tuple[Triple, ...],
    theta: tuple[float, float, float],
    coarse: int = 64,
    fine: int = 512,
) -> float:
    """Simplex grid sweep of the weighted marginal-entropy objective: a full
    pass at step 1/coarse, then a local pass at step 1/fine around the best
    coarse cell.  Returns 2**best."""
    n = len(points)
    sizes = tuple(max(t[axis] for t in points) + 1 for axis in range(3))
    proj = [np.zeros((sizes[axis], n)) for axis in range(3)]
    for col, t in enumerate(points):
        for axis in range(3):
            proj[axis][t[axis], col] = 1.0

    def batch_objective(probs: np.ndarray) -> np.ndarray:
        f = np.zeros(probs.shape[0])
        for axis in range(3):
            if theta[axis] <= 0:
                continue
            marg = probs @ proj[axis].T
            with np.errstate(divide="ignore", invalid="ignore"):
                term = np.where(marg > 0, marg * np.log2(np.where(marg > 0, marg, 1.0)), 0.0)
            f -= theta[axis] * term.sum(axis=1)
        return f

    grid = _simplex_grid(coarse, n) / coarse
    scores = batch_objective(grid)
    best_idx = int(scores.argmax())
    best_f = float(scores[best_idx])

    ratio = fine // coarse
    base = np.rint(grid[best_idx] * fine).astype(int)
    deltas = [d for d in itertools.product(range(-ratio, ratio + 1), repeat=n) if sum(d) == 0]
    cands = base + np.array(deltas, dtype=int)
    cands = cands[(cands >= 0).all(axis=1)]
    if len(cands):
        refined = batch_objective(cands.astype(np.float64) / fine)
        best_f = max(best_f, float(refined.max()))
    return float(2.0**best_f)


def downward_closed_sets(max_size: int) -> list[tuple[Triple, ...]]:
    """All downward-closed triple sets of size <= max_size containing the origin."""
    found: set[frozenset[Triple]] = set()
    frontier = [frozenset({(0, 0, 0)})]
    found.add(frontier[0])
    while frontier:
        nxt = []
        for cur in frontier:
            if len(cur) == max_size:
                continue
            bound = max_size  # coordinates can never exceed the size budget
            for i in range(bound):
                for j in range(bound):
                    for k in range(bound):
                        t = (i, j, k)
                        if t in cur:
                            continue
                        preds = [(i - 1, j, k), (i, j - 1, k), (i, j, k - 1)]
                        if all(p in cur for p in preds if min(p) >= 0):
                            grown = cur | {t}
                            if grown not in found:
                                found.add(grown)
                                nxt.append(grown)
        frontier = nxt
    return [tuple(sorted(fs)) for fs in sorted(found, key=lambda fs: (len(fs), tuple(sorted(fs))))]
