"""Non-commuting graphs of small GL_n(q) and exact maximum cliques.

The graph has one vertex per non-central group element, with an edge exactly
when the two elements do not commute; its clique number equals the largest
pairwise non-commuting subset of the group (central elements never extend a
clique of size two or more, and the one-vertex case is the abelian group,
where the answer is 1).

The solver is a branch-and-bound over bitset adjacency rows with greedy
colouring bounds, seeded with the pairwise non-commuting set built from one
cyclic matrix per distinct cyclic-matrix centralizer.  Whenever that seed
already meets the covering upper bound (one count per covering abelian
subgroup), no search happens at all: lower bound equals upper bound.  A
finished search, or a met bound, is the only way `optimal` is ever reported
True; exhausting the time or step budget returns the best clique found with
`optimal=False`, never a wrong certificate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from glcensus.census import UnsupportedRegimeError, a_polynomial, omega_closed
from glcensus.oracle import (
    Budget,
    BudgetError,
    GLGroup,
    _budget,
    count_cyclic_centralizers,
    gl_group,
)


@dataclass(frozen=True)
class SolverBudget:
    seconds: float = 60.0
    steps: int = 1_000_000_000


@dataclass(frozen=True)
class NonComGraph:
    """Bitset adjacency over the non-central elements of GL_n(q).

    ``vertices[i]`` is the group-element index of vertex i; vertices are in
    degeneracy order (smallest degree removed first), which the solver
    exploits.  ``adjacency[i]`` has bit j set when vertices i and j do not
    commute.
    """

    n: int
    q: int
    vertices: tuple[int, ...]
    adjacency: tuple[int, ...]
    identity_index: int

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def position_of(self, element_index: int) -> int:
        return self.vertices.index(element_index)


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]  # group-element indices
    optimal: bool
    upper_bound_used: int | None
    steps: int
    seconds: float


class SeedVerificationError(RuntimeError):
    """The constructed seed failed its pairwise non-commuting check.

    This cannot happen unless the centralizer census itself is wrong, so it
    aborts loudly instead of degrading."""


def build_graph(n: int, q: int, budget: Budget | None = None) -> NonComGraph:
    """Exact non-commuting graph of GL_n(q), vertices in degeneracy order."""
    budget = _budget(budget)
    group = gl_group(n, q, budget)
    if group.order * group.order > budget.steps:
        raise BudgetError(
            f"non-commuting graph of GL_{n}({q}) exceeds the scan budget",
            group.order * group.order, budget.steps,
        )
    central = set(group.center_indices())
    verts = [i for i in range(group.order) if i not in central]
    pos = {element: k for k, element in enumerate(verts)}
    V = len(verts)
    # boolean adjacency, one commuting scan per vertex
    adj = np.zeros((V, V), dtype=bool)
    for k, element in enumerate(verts):
        commuting = group.commuting_indices(group.mats[element])
        row = np.ones(V, dtype=bool)
        for j in commuting:
            p = pos.get(j)
            if p is not None:
                row[p] = False
        row[k] = False
        adj[k] = row
    order = _degeneracy_order(adj)
    verts_ordered = tuple(verts[k] for k in order)
    adj_ordered = adj[np.ix_(order, order)]
    rows = tuple(_bits_from_bools(adj_ordered[i]) for i in range(V))
    identity_index = group.index_of(group.mats[0]) if group.order else 0
    return NonComGraph(n=n, q=q, vertices=verts_ordered, adjacency=rows,
                       identity_index=identity_index)


def _degeneracy_order(adj: np.ndarray) -> list[int]:
    """Repeatedly remove a smallest-degree vertex; removal order reversed
    puts small degrees last, ties broken by vertex number for determinism."""
    V = adj.shape[0]
    alive = np.ones(V, dtype=bool)
    degrees = adj.sum(axis=1).astype(np.int64)
    removal: list[int] = []
    big = np.iinfo(np.int64).max
    work = degrees.copy()
    for _ in range(V):
        v = int(np.argmin(np.where(alive, work, big)))
        removal.append(v)
        alive[v] = False
        work = work - adj[v]
    return removal[::-1]


def _bits_from_bools(row: np.ndarray) -> int:
    out = 0
    for j in np.flatnonzero(row):
        out |= 1 << int(j)
    return out


def seed_clique(n: int, q: int, budget: Budget | None = None) -> tuple[int, ...]:
    """One cyclic matrix per distinct cyclic-matrix centralizer; the result
    is pairwise non-commuting, and that is re-verified before returning."""
    count, reps = count_cyclic_centralizers(n, q, budget)
    group = gl_group(n, q, budget)
    if not _pairwise_noncommuting(group, reps):
        raise SeedVerificationError(
            f"seed for GL_{n}({q}) contains a commuting pair; centralizer census is inconsistent"
        )
    assert len(reps) == count
    return reps


def _pairwise_noncommuting(group: GLGroup, indices) -> bool:
    k = len(indices)
    if k < 2:
        return True
    if group.field.e == 1:
        sel = group.np_mats[list(indices)]
        chunk = max(1, 2_000_000 // (k * group.n * group.n))
        for start in range(0, k, chunk):
            block = sel[start:start + chunk]
            left = np.matmul(block[:, None], sel[None, :]) % group.q
            right = np.matmul(sel[None, :], block[:, None]) % group.q
            commute = (left == right).all(axis=(2, 3))
            for bi in range(commute.shape[0]):
                commute[bi, start + bi] = False
            if commute.any():
                return False
        return True
    mats = [group.mats[i] for i in indices]
    for i in range(k):
        for j in range(i + 1, k):
            if mats[i].commutes_with(mats[j]):
                return False
    return True


def covering_upper_bound(n: int, q: int) -> int:
    """Count of covering abelian subgroups: a proven clique-number ceiling.

    Supported exactly where a closed count exists: q > n, and the refined
    q = n > 2 value.  Elsewhere raises, and the solver runs unbounded.
    """
    if q > n:
        return a_polynomial(n).eval_int(q)
    if q == n and q > 2:
        return omega_closed(n, q)
    raise UnsupportedRegimeError(
        f"no covering count available for GL_{n}({q}) (needs q > n, or q = n > 2)"
    )


def verify_clique(graph: NonComGraph, witness) -> bool:
    """Pairwise adjacency check, independent of any solver state."""
    try:
        positions = [graph.position_of(e) for e in witness]
    except ValueError:
        return False
    if len(set(positions)) != len(positions):
        return False
    for a in range(len(positions)):
        for b in range(a + 1, len(positions)):
            i, j = positions[a], positions[b]
            if not (graph.adjacency[i] >> j) & 1:
                return False
    return True


class _SearchBudgetExhausted(Exception):
    pass


def max_clique(graph: NonComGraph, seed=(), upper: int | None = None,
               budget: SolverBudget | None = None) -> CliqueResult:
    """Exact maximum clique by branch and bound with colouring bounds.

    ``seed`` must be a clique (raises ValueError otherwise) and is used as
    the starting incumbent.  If ``upper`` is supplied and the seed meets it,
    the result is certified without branching.  A finished search certifies
    optimality; running out of budget returns the incumbent, unmarked.
    """
    budget = budget if budget is not None else SolverBudget()
    start = time.monotonic()
    if seed and not verify_clique(graph, seed):
        raise ValueError("seed is not a clique of this graph")

    if graph.vertex_count == 0:
        # abelian group: a single element is vacuously pairwise non-commuting
        return CliqueResult(size=1, witness=(graph.identity_index,), optimal=True,
                            upper_bound_used=upper, steps=0,
                            seconds=time.monotonic() - start)

    seed_positions = [graph.position_of(e) for e in seed]
    best_size = len(seed_positions)
    best = list(seed_positions)
    if upper is not None and best_size == upper:
        return CliqueResult(size=best_size, witness=tuple(sorted(seed)), optimal=True,
                            upper_bound_used=upper, steps=0,
                            seconds=time.monotonic() - start)

    adjacency = graph.adjacency
    V = graph.vertex_count
    steps = 0
    state = {"best_size": max(best_size, 1), "best": best or [0]}
    if not seed:
        state["best"] = [0]
        state["best_size"] = 1

    def colour_order(P: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        bounds: list[int] = []
        colour = 0
        Q = P
        while Q:
            colour += 1
            cand = Q
            while cand:
                v = (cand & -cand).bit_length() - 1
                bit = 1 << v
                cand &= ~adjacency[v]
                cand &= ~bit
                Q &= ~bit
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(R: list[int], P: int) -> None:
        nonlocal steps
        steps += 1
        if steps % 2048 == 0 and time.monotonic() - start > budget.seconds:
            raise _SearchBudgetExhausted
        if steps > budget.steps:
            raise _SearchBudgetExhausted
        order, bounds = colour_order(P)
        for k in range(len(order) - 1, -1, -1):
            if len(R) + bounds[k] <= state["best_size"]:
                return
            v = order[k]
            R.append(v)
            nxt = P & adjacency[v]
            if nxt:
                expand(R, nxt)
            elif len(R) > state["best_size"]:
                state["best_size"] = len(R)
                state["best"] = list(R)
                if upper is not None and state["best_size"] == upper:
                    raise _StopSearchOptimal
            R.pop()
            if upper is not None and state["best_size"] == upper:
                raise _StopSearchOptimal
            P &= ~(1 << v)

    class _StopSearchOptimal(Exception):
        pass

    full = (1 << V) - 1
    optimal = True
    try:
        expand([], full)
    except _SearchBudgetExhausted:
        optimal = False
    except _StopSearchOptimal:
        optimal = True

    witness_elements = tuple(sorted(graph.vertices[p] for p in state["best"]))
    if not verify_clique(graph, witness_elements):
        raise AssertionError("solver produced a non-clique witness")
    return CliqueResult(size=state["best_size"], witness=witness_elements,
                        optimal=optimal, upper_bound_used=upper, steps=steps,
                        seconds=time.monotonic() - start)


def compute_omega(n: int, q: int, budget: Budget | None = None,
                  solver_budget: SolverBudget | None = None) -> tuple[CliqueResult, int]:
    """Seed, bound, and (only when needed) search; returns (result, seed size).

    When the seed size equals the covering bound the graph is never built:
    the two counts certify each other.
    """
    seed = seed_clique(n, q, budget)
    try:
        upper = covering_upper_bound(n, q)
    except UnsupportedRegimeError:
        upper = None
    if upper is not None and len(seed) == upper:
        return (
            CliqueResult(size=len(seed), witness=tuple(sorted(seed)), optimal=True,
                         upper_bound_used=upper, steps=0, seconds=0.0),
            len(seed),
        )
    graph = build_graph(n, q, budget)
    result = max_clique(graph, seed, upper, solver_budget)
    return result, len(seed)
