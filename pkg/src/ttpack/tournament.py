"""Core tournament representation and triple censuses.

A tournament on n vertices (n <= 64) is stored as one out-neighbor bitset
per vertex, so a whole adjacency row fits in a machine word and subset
tests are single AND/popcount operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .rng import coin

MAX_VERTICES = 64

# Hard cap for the exponential max-transitive-subset search.
MAX_TRANSITIVE_SEARCH_VERTICES = 24


class TournamentError(ValueError):
    """Invalid tournament data or operation arguments."""


class TournamentFormatError(TournamentError):
    """Malformed tournament text; carries the byte offset of the defect."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


@dataclass(frozen=True)
class Tournament:
    """Orientation of K_n: `out[v]` is the bitset of out-neighbors of v."""

    n: int
    out: tuple[int, ...]

    def has_edge(self, u: int, v: int) -> bool:
        """True iff the edge between u and v is oriented u -> v."""
        return bool(self.out[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def score(self) -> tuple[int, ...]:
        """Out-degree sequence sorted non-increasing."""
        return tuple(sorted((m.bit_count() for m in self.out), reverse=True))

    def validate(self) -> None:
        n, out = self.n, self.out
        if not 1 <= n <= MAX_VERTICES:
            raise TournamentError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        if len(out) != n:
            raise TournamentError("out-set row count does not match n")
        full = (1 << n) - 1
        for v, m in enumerate(out):
            if m >> v & 1:
                raise TournamentError(f"self-loop at vertex {v}")
            if m & ~full:
                raise TournamentError(f"out-set of vertex {v} exceeds vertex range")
        for u in range(n):
            for v in range(u + 1, n):
                if (out[u] >> v & 1) == (out[v] >> u & 1):
                    raise TournamentError(f"pair ({u},{v}) not oriented exactly once")


@dataclass(frozen=True)
class TriangleCensus:
    """Counts of transitive triples (a) and directed triangles (t)."""

    a: int
    t: int


def edge_list(n: int) -> list[tuple[int, int]]:
    """Unordered pairs (i, j), i < j, in row-major rank order.

    This ranking is the shared contract for edge indices in packings,
    covered-edge bitsets and the text format.
    """
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def edge_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def tournament_from_bits(n: int, bits: str) -> Tournament:
    """Build from the upper-triangle row-major 0/1 string ('1' means i -> j)."""
    out = [0] * n
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            if bits[pos] == "1":
                out[i] |= 1 << j
            else:
                out[j] |= 1 << i
            pos += 1
    return Tournament(n, tuple(out))


def tournament_bits(t: Tournament) -> str:
    return "".join(
        "1" if t.out[i] >> j & 1 else "0"
        for i in range(t.n)
        for j in range(i + 1, t.n)
    )


def serialize_tournament(t: Tournament) -> str:
    """Two-line text form: 'n=<int>' then the C(n,2) upper-triangle bits."""
    return f"n={t.n}\n{tournament_bits(t)}\n"


def parse_tournament(text: str) -> Tournament:
    """Parse the two-line format; errors carry the byte offset of the defect."""
    if not text.startswith("n="):
        raise TournamentFormatError("expected header 'n=<int>'", 0)
    nl = text.find("\n")
    if nl < 0:
        raise TournamentFormatError("missing newline after header", len(text))
    header = text[:nl]
    try:
        n = int(header[2:])
    except ValueError:
        raise TournamentFormatError("vertex count is not an integer", 2) from None
    if not 1 <= n <= MAX_VERTICES:
        raise TournamentFormatError(f"vertex count {n} outside 1..{MAX_VERTICES}", 2)
    want = n * (n - 1) // 2
    body_at = nl + 1
    body = text[body_at:].rstrip("\n")
    if len(body) != want:
        raise TournamentFormatError(
            f"expected {want} orientation characters, found {len(body)}",
            body_at + min(len(body), want),
        )
    for k, ch in enumerate(body):
        if ch not in "01":
            raise TournamentFormatError(f"invalid orientation character {ch!r}", body_at + k)
    t = tournament_from_bits(n, body)
    t.validate()
    return t


def transitive_tournament(n: int) -> Tournament:
    """TT_n: vertex i beats every j > i."""
    full = (1 << n) - 1
    return Tournament(n, tuple((full >> (v + 1)) << (v + 1) for v in range(n)))


def transitive_triples_lower_bound(k: int) -> Fraction:
    """Floor k(k-1)(k-3)/8 on the transitive-triple count of any k-vertex tournament."""
    if k < 3:
        raise TournamentError("bound defined for k >= 3")
    return Fraction(k * (k - 1) * (k - 3), 8)


def census(t: Tournament) -> TriangleCensus:
    """Count transitive triples and directed triangles.

    Computes `a` twice, by direct triple enumeration and by the per-vertex
    degree-sum identity, and asserts the two agree; the redundancy is a
    permanent self-check on the representation.
    """
    n, out = t.n, t.out
    cyclic = 0
    for i, j, k in combinations(range(n), 3):
        b1 = out[i] >> j & 1
        b2 = out[j] >> k & 1
        # for i<j<k the triple is cyclic iff (i,j) and (j,k) agree and (i,k) differs
        if b1 == b2 and (out[i] >> k & 1) != b1:
            cyclic += 1
    total = n * (n - 1) * (n - 2) // 6
    a_direct = total - cyclic
    a_formula = Fraction(0)
    for v in range(n):
        d = out[v].bit_count()
        e = n - 1 - d
        a_formula += Fraction(d * (d - 1) + e * (e - 1), 4)
    if a_direct != a_formula:
        raise AssertionError(
            f"census self-check failed: direct {a_direct} != degree-sum {a_formula}"
        )
    return TriangleCensus(a=a_direct, t=cyclic)


def reverse(t: Tournament) -> Tournament:
    """Flip every edge; the triple census is invariant, scores complement."""
    full = (1 << t.n) - 1
    return Tournament(t.n, tuple(full & ~m & ~(1 << v) for v, m in enumerate(t.out)))


def induced(t: Tournament, vertices) -> Tournament:
    """Subtournament on `vertices`, relabeled 0..m-1 in sorted order."""
    vs = sorted(set(vertices))
    if not vs:
        raise TournamentError("induced subtournament needs at least one vertex")
    if vs[0] < 0 or vs[-1] >= t.n:
        raise TournamentError("vertex out of range")
    pos = {v: i for i, v in enumerate(vs)}
    out = [0] * len(vs)
    for v in vs:
        m = t.out[v]
        for w in vs:
            if m >> w & 1:
                out[pos[v]] |= 1 << pos[w]
    return Tournament(len(vs), tuple(out))


def random_tournament(n: int, seed: int) -> Tournament:
    """Orient each pair by an unbiased coin keyed by (seed, pair rank)."""
    if not 1 <= n <= MAX_VERTICES:
        raise TournamentError(f"vertex count {n} outside 1..{MAX_VERTICES}")
    out = [0] * n
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            if coin(seed, p):
                out[i] |= 1 << j
            else:
                out[j] |= 1 << i
            p += 1
    return Tournament(n, tuple(out))


def is_transitive(t: Tournament) -> bool:
    """True iff the tournament has no directed triangle (a total order)."""
    return sorted(m.bit_count() for m in t.out) == list(range(t.n))


def max_transitive_subset(t: Tournament) -> tuple[int, ...]:
    """A largest vertex subset inducing a transitive subtournament.

    Branch and bound over dominance chains: a transitive subset is a chain
    v1 -> v2 -> ... with every later vertex beaten by all earlier ones, so
    the candidate pool shrinks to `cand & out[v]` at each step.  Memoized on
    the candidate pool; pruned by the pool size.
    """
    if t.n > MAX_TRANSITIVE_SEARCH_VERTICES:
        raise TournamentError(
            f"max_transitive_subset capped at n <= {MAX_TRANSITIVE_SEARCH_VERTICES}"
        )
    out = t.out
    memo: dict[int, tuple[int, tuple[int, ...]]] = {0: (0, ())}

    def longest(cand: int) -> tuple[int, tuple[int, ...]]:
        hit = memo.get(cand)
        if hit is not None:
            return hit
        best_len, best_chain = 0, ()
        m = cand
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            sub_len, sub_chain = longest(cand & out[v])
            if 1 + sub_len > best_len:
                best_len, best_chain = 1 + sub_len, (v,) + sub_chain
        memo[cand] = (best_len, best_chain)
        return best_len, best_chain

    _, chain = longest((1 << t.n) - 1)
    return tuple(sorted(chain))


def satisfies_landau(score: tuple[int, ...]) -> bool:
    """Landau's condition on a non-increasing score sequence."""
    inc = sorted(score)
    n = len(inc)
    if sum(inc) != n * (n - 1) // 2:
        return False
    run = 0
    for m, d in enumerate(inc, start=1):
        run += d
        if run < m * (m - 1) // 2:
            return False
    return True
