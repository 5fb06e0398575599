"""Copy enumeration and edge-disjoint packing of transitive subtournaments.

A "copy" is a k-vertex subset inducing a transitive subtournament of the
host.  A packing is a set of copies whose unordered-pair edge sets are
pairwise disjoint; the packing number is the maximum size of such a set.
The exact solver is a branch-and-bound over edges with greedy completion
at every node, deterministic by construction so node counts reproduce.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .rng import stdlib_rng
from .tournament import Tournament, edge_index

__all__ = [
    "CopyList",
    "Packing",
    "PackingError",
    "TTCopy",
    "enumerate_copies",
    "greedy_packing",
    "max_packing_exact",
    "verify_packing",
]


class PackingError(ValueError):
    """Raised for out-of-range k or an inconsistent externally supplied copy list."""


@dataclass(frozen=True)
class TTCopy:
    """One transitive subtournament copy.

    vertices: the k vertices, ascending.
    edges: the C(k,2) directed edges as (winner, loser) pairs, sorted.
    edge_mask: bitmask over host unordered-pair indices (see edge_index).
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    edge_mask: int


@dataclass(frozen=True)
class CopyList:
    """All TT_k copies of one host, ordered by vertex tuple."""

    n: int
    k: int
    copies: tuple[TTCopy, ...]


@dataclass(frozen=True)
class Packing:
    """An edge-disjoint family of copies plus search metadata.

    members: indices into the copy list the solver worked from.
    copies: the members' vertex tuples (self-contained for verification).
    covered_edges: bitmask of all covered unordered-pair indices.
    optimal: True only when the search ran to completion.
    """

    n: int
    k: int
    members: tuple[int, ...]
    copies: tuple[tuple[int, ...], ...]
    covered_edges: int
    optimal: bool
    nodes_explored: int

    @property
    def value(self) -> int:
        return len(self.members)


def _is_transitive_subset(t: Tournament, vertices: tuple[int, ...], mask: int) -> bool:
    # Sub-out-degrees live in 0..k-1, so "all distinct" means exactly {0..k-1}.
    seen = 0
    for v in vertices:
        seen |= 1 << (t.out[v] & mask).bit_count()
    return seen == (1 << len(vertices)) - 1


def _pair_mask(n: int, vertices: tuple[int, ...]) -> int:
    mask = 0
    for a, u in enumerate(vertices):
        for w in vertices[a + 1 :]:
            mask |= 1 << edge_index(n, u, w)
    return mask


def enumerate_copies(t: Tournament, k: int) -> CopyList:
    """List every k-subset inducing a transitive subtournament, in vertex order."""
    if not 3 <= k <= t.n:
        raise PackingError(f"k must satisfy 3 <= k <= n={t.n}, got {k}")
    copies: list[TTCopy] = []
    for vs in combinations(range(t.n), k):
        vmask = 0
        for v in vs:
            vmask |= 1 << v
        if not _is_transitive_subset(t, vs, vmask):
            continue
        edges = []
        for a, u in enumerate(vs):
            for w in vs[a + 1 :]:
                edges.append((u, w) if t.has_edge(u, w) else (w, u))
        copies.append(TTCopy(vs, tuple(sorted(edges)), _pair_mask(t.n, vs)))
    return CopyList(t.n, k, tuple(copies))


def _check_copy_list(t: Tournament, cl: CopyList, k: int) -> None:
    if cl.n != t.n or cl.k != k:
        raise PackingError(f"copy list is for (n={cl.n}, k={cl.k}), host needs (n={t.n}, k={k})")
    seen: set[tuple[int, ...]] = set()
    for c in cl.copies:
        vs = c.vertices
        if len(vs) != k or list(vs) != sorted(set(vs)) or not all(0 <= v < t.n for v in vs):
            raise PackingError(f"malformed copy vertices {vs}")
        if vs in seen:
            raise PackingError(f"duplicate copy {vs}")
        seen.add(vs)
        vmask = 0
        for v in vs:
            vmask |= 1 << v
        if not _is_transitive_subset(t, vs, vmask):
            raise PackingError(f"copy {vs} does not induce a transitive subtournament")
        if c.edge_mask != _pair_mask(t.n, vs):
            raise PackingError(f"copy {vs} carries a wrong edge mask")


def max_packing_exact(
    t: Tournament,
    k: int,
    time_budget: float | None = None,
    *,
    stop_at: int | None = None,
    copy_list: CopyList | None = None,
) -> Packing:
    """Maximum edge-disjoint packing by branch-and-bound over edges.

    Each node picks the lowest-index edge still coverable and branches on
    every surviving copy through it, plus one branch abandoning the edge.
    Subtrees are cut once current + floor(coverable/C(k,2)) cannot beat the
    incumbent; a greedy completion at every node moves the incumbent early.

    time_budget (seconds) turns the result into a best-found lower bound
    with optimal=False once exceeded.  stop_at aborts as soon as the
    incumbent reaches the threshold, again with optimal=False; callers
    that only need "value >= stop_at or exact value below it" use this.
    """
    if copy_list is None:
        copy_list = enumerate_copies(t, k)
    else:
        _check_copy_list(t, copy_list, k)
    masks = [c.edge_mask for c in copy_list.copies]
    per_copy = k * (k - 1) // 2
    deadline = None if time_budget is None else time.monotonic() + time_budget

    best = -1
    best_members: tuple[int, ...] = ()
    nodes = 0
    aborted = False

    copy_edges = []
    for m in masks:
        bits = []
        while m:
            e = m & -m
            m ^= e
            bits.append(e)
        copy_edges.append(tuple(bits))
    endpoint_masks = []
    for v in range(t.n):
        vm = 0
        for u in range(t.n):
            if u != v:
                vm |= 1 << edge_index(t.n, min(u, v), max(u, v))
        endpoint_masks.append(vm)

    def degree_bound(coverable: int) -> int:
        # Each further copy consumes k-1 coverable edges at each of its k
        # vertices, so summing floor(coverable degree / (k-1)) over vertices
        # counts every copy k times.
        total = 0
        for vm in endpoint_masks:
            total += (coverable & vm).bit_count() // (k - 1)
        return total // k

    def hits_within(alive: list[int], target: int) -> bool:
        # Any edge set meeting every alive copy caps the packing that can still
        # be added: disjoint copies consume distinct edges of the set.  Greedy
        # max-frequency choice keeps this deterministic; bail out as soon as
        # the partial hitting set is too large to prune.
        remaining = alive
        bound = 0
        while remaining:
            bound += 1
            if bound > target:
                return False
            freq: dict[int, int] = {}
            for c in remaining:
                for e in copy_edges[c]:
                    freq[e] = freq.get(e, 0) + 1
            pick = min(freq, key=lambda e: (-freq[e], e))
            remaining = [c for c in remaining if masks[c] & pick == 0]
        return True

    def dfs(alive: list[int], chosen: list[int]) -> None:
        nonlocal best, best_members, nodes, aborted
        if aborted:
            return
        nodes += 1
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            aborted = True
            return
        coverable = 0
        for c in alive:
            coverable |= masks[c]
        greedy = list(chosen)
        taken = 0
        for c in alive:
            if masks[c] & taken == 0:
                taken |= masks[c]
                greedy.append(c)
        if len(greedy) > best:
            best = len(greedy)
            best_members = tuple(greedy)
            if stop_at is not None and best >= stop_at:
                aborted = True
                return
        if len(chosen) + coverable.bit_count() // per_copy <= best:
            return
        if len(chosen) + degree_bound(coverable) <= best:
            return
        if hits_within(alive, best - len(chosen)):
            return
        bit = coverable & -coverable
        for c in alive:
            if masks[c] & bit:
                m = masks[c]
                chosen.append(c)
                dfs([d for d in alive if masks[d] & m == 0], chosen)
                chosen.pop()
                if aborted:
                    return
        dfs([d for d in alive if masks[d] & bit == 0], chosen)

    dfs(list(range(len(masks))), [])

    members = tuple(sorted(best_members))
    covered = 0
    for c in members:
        covered |= masks[c]
    return Packing(
        n=t.n,
        k=k,
        members=members,
        copies=tuple(copy_list.copies[c].vertices for c in members),
        covered_edges=covered,
        optimal=not aborted,
        nodes_explored=nodes,
    )


def greedy_packing(t: Tournament, k: int, seed: int) -> Packing:
    """Maximal packing from a seeded random scan order; never exceeds the optimum."""
    cl = enumerate_copies(t, k)
    order = list(range(len(cl.copies)))
    stdlib_rng(seed).shuffle(order)
    covered = 0
    members = []
    for c in order:
        m = cl.copies[c].edge_mask
        if m & covered == 0:
            covered |= m
            members.append(c)
    members.sort()
    return Packing(
        n=t.n,
        k=k,
        members=tuple(members),
        copies=tuple(cl.copies[c].vertices for c in members),
        covered_edges=covered,
        optimal=False,
        nodes_explored=0,
    )


def verify_packing(t: Tournament, p: Packing) -> bool:
    """Check a packing from first principles, independent of solver internals."""
    if p.n != t.n or not 3 <= p.k <= t.n:
        return False
    if len(p.members) != len(p.copies):
        return False
    per_copy = p.k * (p.k - 1) // 2
    covered = 0
    for vs in p.copies:
        if len(vs) != p.k or len(set(vs)) != p.k:
            return False
        if not all(isinstance(v, int) and 0 <= v < t.n for v in vs):
            return False
        vmask = 0
        for v in vs:
            vmask |= 1 << v
        if not _is_transitive_subset(t, tuple(vs), vmask):
            return False
        emask = _pair_mask(t.n, tuple(sorted(vs)))
        if emask & covered:
            return False
        covered |= emask
    if covered != p.covered_edges:
        return False
    return covered.bit_count() == len(p.copies) * per_copy
