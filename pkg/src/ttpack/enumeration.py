"""Isomorph-free enumeration of small tournaments.

Canonical form: the lexicographically minimal upper-triangle bit string over
all vertex relabelings.  Computed by an ordered-partition refinement search
rather than an n! scan: the code is minimized row by row, and the set of
orderings achieving the minimal rows so far is exactly captured by a list of
position cells that get split by each newly placed vertex's out-set.  Ties
branch; the answer is the minimum over branch leaves, which equals the
unpruned definition (asserted against a full permutation scan for n <= 5 in
the test suite).

Enumeration is orderly: extend each canonical representative of order n-1 by
one new vertex in all 2^(n-1) ways, canonicalize, deduplicate.  Results are
cached on disk keyed by order and format version.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import Pool

from . import FORMAT_VERSION
from .tournament import Tournament, census, tournament_bits, tournament_from_bits

MAX_CANONICAL_VERTICES = 10
MAX_ENUMERATION_VERTICES = 8

# Non-isomorphic tournament counts for n = 1..8.
CLASS_COUNTS = (1, 1, 2, 4, 12, 56, 456, 6880)

CACHE_ENV_VAR = "TTPACK_CACHE"
DEFAULT_CACHE_DIR = "cache"


class EnumerationError(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    code: str

    def tournament(self) -> Tournament:
        return tournament_from_bits(self.n, self.code)


def _min_code_rows(n: int, out: tuple[int, ...]) -> list[int]:
    """Rows of the minimal code; rows[i] is the n-1-i bits of row i as an int."""
    best: list[int] | None = None

    def dfs(cells: list[int], rows: list[int]) -> None:
        nonlocal best
        if not cells:
            if best is None or rows < best:
                best = rows.copy()
            return
        head = cells[0]
        rest = cells[1:]
        # candidate vertices from the first cell, keeping only those whose
        # row (grouped 0s-then-1s per cell) is lexicographically minimal
        cands: list[int] = []
        best_sig: tuple[int, ...] | None = None
        m = head
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            ou = out[u]
            sig = ((ou & head).bit_count(),)
            for c in rest:
                sig += ((ou & c).bit_count(),)
            if best_sig is None or sig < best_sig:
                best_sig, cands = sig, [u]
            elif sig == best_sig:
                cands.append(u)
        # the shared row emitted by all minimal candidates
        row = 0
        sizes = [head.bit_count() - 1] + [c.bit_count() for c in rest]
        for size, ones in zip(sizes, best_sig):
            row = (row << size) | ((1 << ones) - 1)
        rows.append(row)
        # prune against the live incumbent; equal widths per index make the
        # row-int list comparison the same as bit-string comparison
        if best is None or rows <= best[: len(rows)]:
            for u in cands:
                ou = out[u]
                new_cells: list[int] = []
                for c in [head & ~(1 << u)] + rest:
                    z = c & ~ou
                    o = c & ou
                    if z:
                        new_cells.append(z)
                    if o:
                        new_cells.append(o)
                dfs(new_cells, rows)
        rows.pop()

    dfs([(1 << n) - 1], [])
    assert best is not None
    return best


def canonical_form(t: Tournament) -> CanonicalForm:
    """Lexicographically minimal serialization over all relabelings."""
    if t.n > MAX_CANONICAL_VERTICES:
        raise EnumerationError(f"canonical form capped at n <= {MAX_CANONICAL_VERTICES}")
    rows = _min_code_rows(t.n, t.out)
    code = "".join(
        format(row, f"0{t.n - 1 - i}b") if t.n - 1 - i else ""
        for i, row in enumerate(rows)
    )
    return CanonicalForm(t.n, code)


def canonical_code(t: Tournament) -> str:
    return canonical_form(t).code


def tournament_from_code(code: str) -> Tournament:
    """Rebuild a tournament from a C(n,2)-character code; n is implied by the length."""
    length = len(code)
    n = (1 + math.isqrt(1 + 8 * length)) // 2
    if n * (n - 1) // 2 != length:
        raise EnumerationError(f"code length {length} is not a binomial C(n,2)")
    return tournament_from_bits(n, code)


def _extension_codes(args: tuple[str, int]) -> set[str]:
    """All canonical codes obtained by adding one vertex to a representative."""
    code, m = args
    base = tournament_from_bits(m, code)
    new = m  # label of the added vertex
    codes: set[str] = set()
    for mask in range(1 << m):
        out = list(base.out)
        for v in range(m):
            if not mask >> v & 1:
                out[v] |= 1 << new
        out.append(mask)
        rows = _min_code_rows(m + 1, tuple(out))
        codes.add(
            "".join(format(r, f"0{m - i}b") if m - i else "" for i, r in enumerate(rows))
        )
    return codes


def _cache_path(cache_dir: str, n: int) -> str:
    return os.path.join(cache_dir, f"classes_n{n}_fmt{FORMAT_VERSION}.txt")


def _read_cache(path: str, n: int) -> list[str] | None:
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        header = fh.readline().split()
        codes = [line.strip() for line in fh if line.strip()]
    if len(header) != 2 or header[1] != f"n={n}" or header[0] != f"count={len(codes)}":
        return None
    return codes


def _write_cache(path: str, n: int, codes: list[str]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(f"count={len(codes)} n={n}\n")
        fh.writelines(c + "\n" for c in codes)
    os.replace(tmp, path)


def resolve_cache_dir(cache_dir: str | None = None) -> str:
    return cache_dir or os.environ.get(CACHE_ENV_VAR) or DEFAULT_CACHE_DIR


@lru_cache(maxsize=None)
def _codes_memo(n: int, cache_dir: str, workers: int) -> tuple[str, ...]:
    path = _cache_path(cache_dir, n)
    cached = _read_cache(path, n)
    if cached is not None:
        return tuple(cached)
    if n == 1:
        codes = [""]
    else:
        prev = _codes_memo(n - 1, cache_dir, workers)
        jobs = [(code, n - 1) for code in prev]
        out: set[str] = set()
        if workers > 1:
            with Pool(workers) as pool:
                for batch in pool.imap_unordered(_extension_codes, jobs, chunksize=4):
                    out.update(batch)
        else:
            for job in jobs:
                out.update(_extension_codes(job))
        codes = sorted(out)
    _write_cache(path, n, codes)
    return tuple(codes)


def enumerate_codes(n: int, cache_dir: str | None = None, workers: int = 1) -> tuple[str, ...]:
    """Sorted canonical codes of all isomorphism classes of order n."""
    if not 1 <= n <= MAX_ENUMERATION_VERTICES:
        raise EnumerationError(f"enumeration capped at n <= {MAX_ENUMERATION_VERTICES}")
    return _codes_memo(n, resolve_cache_dir(cache_dir), workers)


def enumerate_nonisomorphic(
    n: int, cache_dir: str | None = None, workers: int = 1
) -> list[Tournament]:
    """One representative per isomorphism class, in sorted code order."""
    return [
        tournament_from_bits(n, code) for code in enumerate_codes(n, cache_dir, workers)
    ]


def filter_by_score(tournaments, score) -> list[Tournament]:
    """Members whose sorted (non-increasing) out-degree sequence equals `score`."""
    want = tuple(score)
    return [t for t in tournaments if t.score() == want]


def scores_with_triangle_count(
    n: int, t: int, cache_dir: str | None = None
) -> set[tuple[int, ...]]:
    """Score sequences realized by at least one class with exactly t directed triangles."""
    return {
        rep.score()
        for rep in enumerate_nonisomorphic(n, cache_dir)
        if census(rep).t == t
    }


def brute_force_canonical_code(t: Tournament) -> str:
    """Reference definition: minimum serialization over all n! relabelings.

    Exponential; only used to validate `canonical_form` at small orders.
    """
    from itertools import permutations

    best = None
    for perm in permutations(range(t.n)):
        relabeled = [0] * t.n
        for v in range(t.n):
            m = t.out[perm[v]]
            row = 0
            for w in range(t.n):
                if m >> perm[w] & 1:
                    row |= 1 << w
            relabeled[v] = row
        bits = tournament_bits(Tournament(t.n, tuple(relabeled)))
        if best is None or bits < best:
            best = bits
    assert best is not None
    return best
