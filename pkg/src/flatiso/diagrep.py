"""Diagonal integral representations of Z_2^k as multiplicity vectors.

A diagonal representation rho = sum_I q_I chi_I is stored as the vector of
multiplicities q indexed by character mask in numeric order (q[0] = q_0,
the multiplicity of the trivial character).  The human-facing text form
uses the bracket convention [q_1, q_2, ..., q_3, q_12, ...]: singletons
first, then pairs, and so on, with q_0 left out unless asked for.

Two representations are equivalent iff the corresponding diagonal subgroups
of O(n) are conjugate, which for diagonal groups amounts to relabeling the
characters by a group automorphism.  Equivalence testing and canonical forms
therefore reduce to orbit computations under GL(k, 2) acting on masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import chargroup
from .chargroup import check_rank, display_order, evaluate
from .errors import CapabilityError

KAHLER_NONE = "none"
KAHLER = "kahler"
HYPERKAHLER = "hyperkahler"


@dataclass(frozen=True)
class DiagonalRep:
    """Multiplicity vector of a diagonal representation of Z_2^k.

    q has length 2^k, indexed by character mask; all entries nonnegative.
    """

    k: int
    q: tuple[int, ...]

    def __post_init__(self):
        check_rank(self.k)
        if len(self.q) != 1 << self.k:
            raise ValueError(f"expected {1 << self.k} multiplicities, got {len(self.q)}")
        if any(v < 0 for v in self.q):
            raise ValueError("multiplicities must be nonnegative")
        if self.n < 1:
            raise ValueError("representation dimension must be >= 1")

    @property
    def n(self) -> int:
        return sum(self.q)

    @classmethod
    def from_display(cls, k: int, values, q0: int = 0) -> "DiagonalRep":
        """Build from the bracket convention [q_1, q_2, ..., q_12, ...] (q_0 separate)."""
        values = tuple(values)
        order = display_order(k)
        if len(values) != len(order) - 1:
            raise ValueError(f"expected {len(order) - 1} multiplicities for k={k}, got {len(values)}")
        q = [0] * (1 << k)
        q[0] = q0
        for mask, v in zip(order[1:], values):
            q[mask] = v
        return cls(k, tuple(q))

    def to_display(self) -> tuple[int, ...]:
        """Multiplicities of the nontrivial characters in display order."""
        return tuple(self.q[m] for m in display_order(self.k)[1:])

    def support(self) -> tuple[int, ...]:
        return tuple(m for m in range(1 << self.k) if self.q[m] > 0)


def parse_rep(text: str, k: int, with_q0: bool = False) -> DiagonalRep:
    """Parse the comma-separated text form, display order (e.g. "3,1,1,1,0,1,0")."""
    try:
        values = [int(t) for t in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed multiplicity list: {text!r}") from None
    if with_q0:
        if not values:
            raise ValueError("empty multiplicity list")
        return DiagonalRep.from_display(k, values[1:], q0=values[0])
    return DiagonalRep.from_display(k, values)


def format_rep(rep: DiagonalRep, with_q0: bool = False) -> str:
    vals = rep.to_display()
    if with_q0:
        vals = (rep.q[0],) + vals
    return ",".join(str(v) for v in vals)


def fixed_dim(rep: DiagonalRep, f: int) -> int:
    """Dimension of the fixed space of rho(f): sum of q_J over chi_J(f) = +1."""
    chargroup.check_mask(f, rep.k)
    return sum(v for m, v in enumerate(rep.q) if v and evaluate(m, f) == 1)


def pattern(rep: DiagonalRep) -> tuple[int, ...]:
    """Histogram (c_0, .., c_n) of fixed-space dimensions over all 2^k elements."""
    n = rep.n
    counts = [0] * (n + 1)
    for f in range(1 << rep.k):
        counts[fixed_dim(rep, f)] += 1
    return tuple(counts)


def is_faithful(rep: DiagonalRep) -> bool:
    """True iff the supported characters span the full dual group."""
    return chargroup.f2_rank(rep.support()) == rep.k


def contains_minus_identity(rep: DiagonalRep) -> bool:
    """True iff some nonzero element acts as -Id, i.e. fixes nothing."""
    return any(fixed_dim(rep, f) == 0 for f in range(1, 1 << rep.k))


def is_orientable(rep: DiagonalRep) -> bool:
    """True iff every generator has determinant +1: sum_{I containing j} q_I even."""
    for j in range(rep.k):
        if sum(v for m, v in enumerate(rep.q) if m >> j & 1) % 2:
            return False
    return True


def kahler_class(rep: DiagonalRep) -> str:
    """Sufficient-condition classification: "hyperkahler" if every q_I is divisible
    by 4, "kahler" if every q_I is even, else "none".

    "none" is not a proof of non-Kaehlerness by itself; the top-wedge
    obstruction (cohomology.kahler_obstruction) is the definitive certificate.
    """
    if all(v % 4 == 0 for v in rep.q):
        return HYPERKAHLER
    if all(v % 2 == 0 for v in rep.q):
        return KAHLER
    return KAHLER_NONE


# -- equivalence up to character relabeling ---------------------------------

@lru_cache(maxsize=None)
def _display_perm(k: int) -> np.ndarray:
    # column permutation sending internal numeric order to display order, q_0 last
    order = display_order(k)
    return np.array(order[1:] + (0,), dtype=np.intp)


def _orbit_matrix(rep: DiagonalRep) -> np.ndarray:
    q = np.array(rep.q, dtype=np.int64)
    return q[chargroup.automorphism_table(rep.k)]


# ranks up to this use the cached full automorphism table; beyond it the
# table is streamed in chunks (k = 5 is ~9.9M maps, too big to materialize)
_TABLE_MAX_RANK = 4


def _orbit_extreme(rep: DiagonalRep, column_perm, take_max: bool) -> np.ndarray:
    k = rep.k
    if k > chargroup.MAX_EXHAUSTIVE_AUT_RANK:
        raise CapabilityError("exhaustive orbit scans are limited to k <= 5")
    q = np.array(rep.q, dtype=np.int64)
    if k <= _TABLE_MAX_RANK:
        chunks = (chargroup.automorphism_table(k),)
    else:
        chunks = chargroup.automorphism_chunks(k)
    best = None
    for perms in chunks:
        mat = q[perms]
        if column_perm is not None:
            mat = mat[:, column_perm]
        rows = np.unique(mat, axis=0)
        cand = tuple(rows[-1] if take_max else rows[0])
        if best is None or (cand > best if take_max else cand < best):
            best = cand
    return np.array(best)


def canonical_form(rep: DiagonalRep) -> DiagonalRep:
    """Lexicographically minimal multiplicity vector (numeric character order)
    over the automorphism orbit.  Exhaustive scan, hence capped at k <= 5.
    """
    best = _orbit_extreme(rep, None, take_max=False)
    return DiagonalRep(rep.k, tuple(int(v) for v in best))


def display_representative(rep: DiagonalRep) -> DiagonalRep:
    """Orbit member whose display-order vector is lexicographically maximal.

    This is the representative the reference tables print (largest
    multiplicities pushed onto the earliest display slots), as opposed to
    the numeric-order minimum used as the dedup key.
    """
    perm = _display_perm(rep.k)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    best_disp = _orbit_extreme(rep, perm, take_max=True)
    return DiagonalRep(rep.k, tuple(int(v) for v in best_disp[inv]))


def _cheap_key(rep: DiagonalRep):
    # orbit invariants: multiplicity multiset and pattern
    return (tuple(sorted(rep.q)), rep.q[0], pattern(rep))


def are_equivalent(a: DiagonalRep, b: DiagonalRep) -> bool:
    """True iff some automorphism relabeling carries the q-vector of a to b's."""
    if a.k != b.k or a.n != b.n:
        raise ValueError("representations must share rank and dimension")
    if a.q == b.q:
        return True
    if _cheap_key(a) != _cheap_key(b):
        return False
    return canonical_form(a).q == canonical_form(b).q
