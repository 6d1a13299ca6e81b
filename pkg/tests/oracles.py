"""Independent reference implementations used only to cross-check results.

These deliberately avoid the library's computation paths: Betti numbers by
walking all 2^n coordinate subsets, the Kaehler pairing test by exhaustive
matching, Sunada tables straight from column data with index-set arithmetic.
"""

from flatiso.cohomology import coordinate_characters


def brute_betti(rep):
    """Invariant-monomial counts by enumerating every coordinate subset."""
    psi = coordinate_characters(rep)
    n = rep.n
    chars = [0] * (1 << n)
    counts = [0] * (n + 1)
    counts[0] = 1
    for s in range(1, 1 << n):
        low = s & -s
        chars[s] = chars[s ^ low] ^ psi[low.bit_length() - 1]
        if chars[s] == 0:
            counts[s.bit_count()] += 1
    return tuple(counts)


def brute_block_matching(rep):
    """Whether the coordinates split into pairs with equal characters."""
    psi = list(coordinate_characters(rep))

    def match(coords):
        if not coords:
            return True
        first, rest = coords[0], coords[1:]
        for i, other in enumerate(rest):
            if psi[first] == psi[other] and match(rest[:i] + rest[i + 1:]):
                return True
        return False

    return match(list(range(rep.n)))


def sunada_from_columns(char_indices, half_rows, k):
    """(n_B, n_{B,1/2}) histogram computed with plain index-set arithmetic.

    char_indices: per coordinate, the set of generators negating it;
    half_rows: per generator, the set of 1-based coordinates carrying 1/2.
    """
    from collections import Counter
    from itertools import combinations

    n = len(char_indices)
    counts = Counter()
    for r in range(k + 1):
        for element in combinations(range(1, k + 1), r):
            elem = set(element)
            halves = set()
            for i in element:
                halves ^= {j for j in half_rows[i - 1]}
            s = t = 0
            for j in range(1, n + 1):
                if len(set(char_indices[j - 1]) & elem) % 2 == 0:
                    s += 1
                    if j in halves:
                        t += 1
            counts[(s, t)] += 1
    return dict(counts)
