"""Isomorph-free enumeration, canonical labeling, and the class cache."""

from itertools import permutations

import pytest

from ttpack.enumeration import (
    CLASS_COUNTS,
    EnumerationError,
    brute_force_canonical_code,
    canonical_code,
    enumerate_codes,
    enumerate_nonisomorphic,
    filter_by_score,
    scores_with_triangle_count,
    tournament_from_code,
)
from ttpack.tournament import Tournament, random_tournament, transitive_tournament


def relabel(t: Tournament, perm) -> Tournament:
    out = [0] * t.n
    for u in range(t.n):
        for v in range(t.n):
            if t.out[u] >> v & 1:
                out[perm[u]] |= 1 << perm[v]
    return Tournament(t.n, tuple(out))


def test_class_counts_up_to_seven(cache_dir):
    for n in range(1, 8):
        assert len(enumerate_codes(n, cache_dir=cache_dir)) == CLASS_COUNTS[n - 1]


def test_codes_are_canonical_sorted_and_distinct(cache_dir):
    codes = enumerate_codes(6, cache_dir=cache_dir)
    assert list(codes) == sorted(set(codes))
    for code in codes:
        assert canonical_code(tournament_from_code(code)) == code


def test_canonical_code_is_relabeling_invariant():
    t = random_tournament(7, 123)
    reference = canonical_code(t)
    for perm in list(permutations(range(7)))[:: 257]:
        assert canonical_code(relabel(t, perm)) == reference


def test_canonical_code_matches_brute_force_on_small_orders():
    for n in range(1, 5):
        for seed in range(10):
            t = random_tournament(n, seed)
            assert canonical_code(t) == brute_force_canonical_code(t)


def test_distinct_classes_have_distinct_codes(cache_dir):
    ts = enumerate_nonisomorphic(5, cache_dir=cache_dir)
    assert len(ts) == 12
    assert len({canonical_code(t) for t in ts}) == 12


def test_cache_round_trip(tmp_path):
    first = enumerate_codes(5, cache_dir=str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) >= 1
    again = enumerate_codes(5, cache_dir=str(tmp_path))
    assert first == again
    header = files[0].read_text().splitlines()[0]
    assert header.startswith("count=")


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("TTPACK_CACHE", str(tmp_path))
    from ttpack.enumeration import resolve_cache_dir

    assert resolve_cache_dir(None) == str(tmp_path)
    assert resolve_cache_dir("explicit") == "explicit"


def test_tournament_from_code_validates_length():
    assert tournament_from_code("101").n == 3
    with pytest.raises(EnumerationError):
        tournament_from_code("10")


def test_filter_by_score_partitions_the_classes(cache_dir):
    ts = enumerate_nonisomorphic(5, cache_dir=cache_dir)
    scores = {t.score() for t in ts}
    total = sum(len(filter_by_score(ts, s)) for s in scores)
    assert total == len(ts)
    regular = filter_by_score(ts, (2, 2, 2, 2, 2))
    assert len(regular) == 1


def test_scores_with_triangle_count(cache_dir):
    # t=0 forces the transitive order, whose score is n-1, ..., 1, 0
    assert scores_with_triangle_count(5, 0, cache_dir=cache_dir) == {(4, 3, 2, 1, 0)}
    got = scores_with_triangle_count(7, 14, cache_dir=cache_dir)
    assert got == {(3, 3, 3, 3, 3, 3, 3)}


def test_enumeration_respects_workers(cache_dir, tmp_path):
    seq = enumerate_codes(6, cache_dir=str(tmp_path / "a"))
    par = enumerate_codes(6, cache_dir=str(tmp_path / "b"), workers=2)
    assert seq == par


def test_transitive_class_is_enumerated(cache_dir):
    codes = enumerate_codes(6, cache_dir=cache_dir)
    assert canonical_code(transitive_tournament(6)) in codes
