"""Characters of Z_2^k as bitmasks.

A character chi_I of Z_2^k = <f_1,...,f_k> is identified with the subset
I of {1..k} on which it takes the value -1; the subset is encoded as a
k-bit integer (bit i-1 set  <=>  i in I).  Group elements f_I are encoded
the same way, so a single mask type serves both sides of the pairing

    chi_J(f_I) = (-1)^popcount(J & I).

Products of characters are symmetric differences, i.e. XOR.  The trivial
character is mask 0.

The module also enumerates the minimal dependent sets ("circuits") of
nonzero characters -- sets whose product is trivial while no proper
nonempty subproduct is -- and the automorphisms of the character group,
i.e. the invertible k x k matrices over GF(2) acting linearly on masks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import CapabilityError

MAX_RANK = 16
MAX_EXHAUSTIVE_AUT_RANK = 5


def check_rank(k: int) -> None:
    if not 1 <= k <= MAX_RANK:
        raise ValueError(f"rank k={k} outside supported range 1..{MAX_RANK}")


def check_mask(mask: int, k: int) -> None:
    if not 0 <= mask < (1 << k):
        raise ValueError(f"mask {mask} is not a {k}-bit character mask")


def evaluate(chi: int, f: int) -> int:
    """Pairing chi(f) in {+1, -1}: parity of the intersection of the index sets."""
    return -1 if (chi & f).bit_count() & 1 else 1


def product(chis: Iterable[int]) -> int:
    """Product of characters = XOR of masks; empty product is the trivial character."""
    out = 0
    for c in chis:
        out ^= c
    return out


def mask_from_indices(indices: Iterable[int], k: int) -> int:
    """Mask of the subset {i : i in indices} of {1..k}."""
    m = 0
    for i in indices:
        if not 1 <= i <= k:
            raise ValueError(f"index {i} outside 1..{k}")
        m |= 1 << (i - 1)
    return m


def indices_from_mask(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@lru_cache(maxsize=None)
def display_order(k: int) -> tuple[int, ...]:
    """All 2^k masks ordered for display: empty set first, then by size, then
    lexicographically on index tuples (singletons 1..k, pairs 12,13,...,23,..., ...).
    """
    check_rank(k)
    return tuple(sorted(range(1 << k), key=lambda m: (m.bit_count(), indices_from_mask(m))))


@dataclass(frozen=True)
class Circuit:
    """Minimal dependent set of nonzero characters.

    ``members`` is a strictly increasing tuple of masks whose XOR vanishes
    with no proper nonempty sub-XOR vanishing.  Degree 2 is the boundary
    case {I, I}: it is stored as the single mask with ``doubled`` set, so
    that multiplicity-polynomial code can treat it as binomial(q_I, 2)
    instead of q_I^2.
    """

    members: tuple[int, ...]
    degree: int
    doubled: bool = False

    def __post_init__(self):
        if self.doubled:
            assert self.degree == 2 and len(self.members) == 1
        else:
            assert self.degree == len(self.members)


def _is_minimal_dependent(masks: tuple[int, ...]) -> bool:
    # masks distinct, nonzero, XOR == 0; reject any vanishing proper sub-XOR
    p = len(masks)
    for r in range(1, p):
        for sub in itertools.combinations(masks, r):
            acc = 0
            for m in sub:
                acc ^= m
            if acc == 0:
                return False
    return True


@lru_cache(maxsize=None)
def circuits(k: int, p: int) -> tuple[Circuit, ...]:
    """All degree-p circuits among the nonzero characters of Z_2^k, in
    lexicographic order of their sorted member tuples.

    Empty for p > k+1 (any p-1 of the members must be linearly independent).
    """
    check_rank(k)
    if p < 2:
        raise ValueError(f"circuit degree must be >= 2, got {p}")
    if p > k + 1:
        return ()
    nonzero = range(1, 1 << k)
    if p == 2:
        return tuple(Circuit((m,), 2, doubled=True) for m in nonzero)
    out = []
    for head in itertools.combinations(nonzero, p - 1):
        last = 0
        for m in head:
            last ^= m
        if last <= head[-1]:  # forces distinct members in increasing order
            continue
        full = head + (last,)
        if _is_minimal_dependent(full):
            out.append(Circuit(full, p))
    return tuple(out)


def _invertible_matrices(k: int) -> Iterator[tuple[int, ...]]:
    """Yield every invertible k x k matrix over GF(2) as a tuple of column masks."""
    cols: list[int] = []
    span = {0}

    def rec():
        if len(cols) == k:
            yield tuple(cols)
            return
        for c in range(1, 1 << k):
            if c in span:
                continue
            cols.append(c)
            added = [s ^ c for s in span]
            span.update(added)
            yield from rec()
            span.difference_update(added)
            cols.pop()

    yield from rec()


def _mask_images(cols: tuple[int, ...], k: int) -> tuple[int, ...]:
    img = [0] * (1 << k)
    for m in range(1, 1 << k):
        low = m & -m
        img[m] = img[m ^ low] ^ cols[low.bit_length() - 1]
    return tuple(img)


def automorphisms(k: int) -> Iterator[tuple[int, ...]]:
    """Iterate over the dual automorphisms of Z_2^k.

    Each item is a permutation of the 2^k masks given as a lookup tuple
    ``img`` with ``img[m]`` the image of mask ``m``; the maps are exactly
    the bit-linear bijections, prod_{i<k}(2^k - 2^i) of them.  Capped at
    k = 5 (~9.9M maps); beyond that use pairwise invariants instead of
    exhaustive iteration.
    """
    check_rank(k)
    if k > MAX_EXHAUSTIVE_AUT_RANK:
        raise CapabilityError(
            f"exhaustive automorphism iteration is limited to k <= {MAX_EXHAUSTIVE_AUT_RANK}; "
            "use invariant pre-filters plus pairwise orbit search for larger ranks"
        )
    for cols in _invertible_matrices(k):
        yield _mask_images(cols, k)


def automorphism_count(k: int) -> int:
    """Order of GL(k, 2)."""
    n = 1
    for i in range(k):
        n *= (1 << k) - (1 << i)
    return n


@lru_cache(maxsize=None)
def automorphism_table(k: int) -> np.ndarray:
    """All automorphisms of Z_2^k as one (|GL(k,2)|, 2^k) uint8 array.

    Materialized only for k <= 4 (20160 x 16 at k = 4); k = 5 callers must
    stream via automorphism_chunks.
    """
    check_rank(k)
    if k > 4:
        raise CapabilityError("automorphism_table is materialized only for k <= 4")
    return np.array(list(automorphisms(k)), dtype=np.uint8)


def automorphism_chunks(k: int, chunk: int = 65536) -> Iterator[np.ndarray]:
    """Stream the automorphism table in row blocks of at most ``chunk`` maps."""
    buf = []
    for img in automorphisms(k):
        buf.append(img)
        if len(buf) >= chunk:
            yield np.array(buf, dtype=np.uint8)
            buf = []
    if buf:
        yield np.array(buf, dtype=np.uint8)


def f2_rank(masks: Iterable[int]) -> int:
    """Rank over GF(2) of a collection of masks."""
    basis: dict[int, int] = {}
    for m in masks:
        while m:
            h = m.bit_length() - 1
            if h in basis:
                m ^= basis[h]
            else:
                basis[h] = m
                break
    return len(basis)
