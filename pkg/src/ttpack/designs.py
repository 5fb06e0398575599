"""Pairwise-balanced block designs backing the packing arguments.

Provides the 7-point Steiner triple system and its full 30-element
labeled family, the 9-point system and its 840-element family, and the
56 lines of the order-7 affine plane, which tile all pairs of a
49-point set by 7-point blocks.  Designs are plain block lists; every
generator is deterministic and the random sampler is seed-driven.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .rng import stdlib_rng
from .tournament import Tournament

__all__ = [
    "BlockDesign",
    "DesignError",
    "ag2_lines",
    "all_sts7",
    "all_sts9",
    "fano_plane",
    "parse_design",
    "random_sts7",
    "serialize_design",
    "sts9",
    "sts_triangle_count",
    "verify_design",
]


class DesignError(ValueError):
    """Raised for malformed design inputs or unsupported parameters."""


@dataclass(frozen=True)
class BlockDesign:
    """Uniform blocks over points 0..point_count-1, sorted canonically."""

    point_count: int
    block_size: int
    blocks: tuple[tuple[int, ...], ...]


def _design(v: int, blocks) -> BlockDesign:
    norm = tuple(sorted(tuple(sorted(b)) for b in blocks))
    return BlockDesign(v, len(norm[0]), norm)


def fano_plane() -> BlockDesign:
    """The 7-point triple system with blocks {i, i+1, i+3} mod 7."""
    return _design(7, [((i) % 7, (i + 1) % 7, (i + 3) % 7) for i in range(7)])


def sts9() -> BlockDesign:
    """The 9-point triple system: lines of the order-3 affine plane, (x,y) -> 3x+y."""
    blocks = []
    for m in range(3):
        for b in range(3):
            blocks.append(tuple(3 * x + (m * x + b) % 3 for x in range(3)))
    for c in range(3):
        blocks.append(tuple(3 * c + y for y in range(3)))
    return _design(9, blocks)


def verify_design(d: BlockDesign) -> bool:
    """True iff block size is uniform and every point pair lies in exactly one block."""
    if d.point_count < 2 or d.block_size < 2:
        return False
    pairs: set[tuple[int, int]] = set()
    for block in d.blocks:
        if len(block) != d.block_size or len(set(block)) != d.block_size:
            return False
        if not all(isinstance(p, int) and 0 <= p < d.point_count for p in block):
            return False
        for pair in combinations(sorted(block), 2):
            if pair in pairs:
                return False
            pairs.add(pair)
    total = d.point_count * (d.point_count - 1) // 2
    return len(pairs) == total


def _relabel(d: BlockDesign, perm: tuple[int, ...]) -> BlockDesign:
    return _design(d.point_count, [tuple(perm[p] for p in b) for b in d.blocks])


def _orbit(base: BlockDesign) -> tuple[BlockDesign, ...]:
    # Closure under adjacent transpositions, which generate the full
    # symmetric group; far cheaper than sweeping all n! permutations.
    n = base.point_count
    swaps = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        swaps.append(tuple(p))
    seen = {base.blocks: base}
    frontier = [base]
    while frontier:
        nxt = []
        for d in frontier:
            for s in swaps:
                img = _relabel(d, s)
                if img.blocks not in seen:
                    seen[img.blocks] = img
                    nxt.append(img)
        frontier = nxt
    return tuple(seen[key] for key in sorted(seen))


@lru_cache(maxsize=None)
def all_sts7() -> tuple[BlockDesign, ...]:
    """All 30 labeled 7-point Steiner triple systems (one relabeling orbit)."""
    return _orbit(fano_plane())


@lru_cache(maxsize=None)
def all_sts9() -> tuple[BlockDesign, ...]:
    """All 840 labeled 9-point Steiner triple systems (one relabeling orbit)."""
    return _orbit(sts9())


def random_sts7(seed: int) -> BlockDesign:
    """Uniform over the 30 labeled systems: a seeded permutation of the base plane.

    Uniformity holds because the systems form a single relabeling orbit,
    so equal-size stabilizer cosets map to each of them.
    """
    perm = list(range(7))
    stdlib_rng(seed).shuffle(perm)
    return _relabel(fano_plane(), tuple(perm))


def sts_triangle_count(t: Tournament, d: BlockDesign) -> int:
    """Number of blocks inducing a directed triangle; the rest pack as triples."""
    if d.block_size != 3:
        raise DesignError(f"triple system required, got block size {d.block_size}")
    if t.n != d.point_count:
        raise DesignError(f"host has {t.n} vertices, design has {d.point_count} points")
    cyclic = 0
    for a, b, c in d.blocks:
        ab = t.has_edge(a, b)
        if ab == t.has_edge(b, c) and ab == t.has_edge(c, a):
            cyclic += 1
    return cyclic


def ag2_lines(q: int = 7) -> BlockDesign:
    """The 56 lines of the order-7 affine plane over points (x,y) -> 7x+y.

    Each of the 49 points lies on 8 lines, and every point pair lies on
    exactly one, so the lines tile all 1176 pairs by 7-point blocks.
    """
    if q != 7:
        raise DesignError(f"only order 7 is supported, got {q}")
    blocks = []
    for m in range(q):
        for b in range(q):
            blocks.append(tuple(q * x + (m * x + b) % q for x in range(q)))
    for c in range(q):
        blocks.append(tuple(q * c + y for y in range(q)))
    return _design(q * q, blocks)


def serialize_design(d: BlockDesign) -> str:
    lines = [f"v={d.point_count} k={d.block_size} b={len(d.blocks)}"]
    for block in d.blocks:
        lines.append(" ".join(str(p) for p in block))
    return "\n".join(lines) + "\n"


def parse_design(text: str) -> BlockDesign:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DesignError("empty design text")
    head = lines[0].split()
    try:
        fields = dict(part.split("=", 1) for part in head)
        v = int(fields["v"])
        k = int(fields["k"])
        b = int(fields["b"])
    except (KeyError, ValueError) as exc:
        raise DesignError(f"bad design header {lines[0]!r}") from exc
    if len(lines) - 1 != b:
        raise DesignError(f"header promises {b} blocks, found {len(lines) - 1}")
    blocks = []
    for ln in lines[1:]:
        block = tuple(int(p) for p in ln.split())
        if len(block) != k:
            raise DesignError(f"block {ln!r} does not have {k} points")
        blocks.append(block)
    d = _design(v, blocks)
    if d.block_size != k:
        raise DesignError("inconsistent block size")
    return d
