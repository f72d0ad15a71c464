"""Shared oracles for the test suite.

The oracles recompute expected values by the most naive route available
(position-subset enumeration, brute-force search) so the fast paths under
test are checked against something independent.
"""

from __future__ import annotations

from itertools import combinations

from wordcomplex.words import Word


def subwords_by_positions(word: Word) -> set[Word]:
    """Every nonempty subword via explicit position subsets."""
    out = set()
    for k in range(1, len(word) + 1):
        for positions in combinations(range(len(word)), k):
            out.add(tuple(word[i] for i in positions))
    return out


def euler_by_enumeration(word: Word) -> int:
    """Signed subword count, empty subword contributing -1."""
    total = -1
    for u in subwords_by_positions(word):
        total += (-1) ** (len(u) + 1)
    return total


def arrow_by_scan(word: Word, a: int) -> Word:
    """Suffix after the leftmost occurrence, by explicit scanning."""
    for i, x in enumerate(word):
        if x == a:
            return word[i + 1 :]
    raise ValueError("letter not in word")


def presentations_by_product(runs, v: Word) -> set[tuple[int, ...]]:
    """All exponent tuples below the run exponents whose expansion is v."""
    from itertools import product

    out = set()
    for beta in product(*[range(e + 1) for _, e in runs]):
        expansion = tuple(a for (a, _), b in zip(runs, beta) for _ in range(b))
        if expansion == v:
            out.add(beta)
    return out


def incidence_by_signs(X, sigma: int, tau: int) -> int:
    """Sum of deletion signs by direct scan of the face tuple."""
    total = 0
    for i, f in enumerate(X.faces[tau]):
        if f == sigma:
            total += (-1) ** (i + 1)
    return total
