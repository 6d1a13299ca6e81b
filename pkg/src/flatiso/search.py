"""Exhaustive enumeration of almost-conjugate families of diagonal representations.

For fixed rank k and dimension n, run over all multiplicity vectors
(compositions of n over the allowed characters), filter (faithful, no -Id,
no trivial-character multiplicity by default), deduplicate up to character
relabeling, and group the survivors by pattern: two representations land in
the same family exactly when they are almost-conjugate.

The costly part is the dedup.  Every multiplicity vector in an automorphism
orbit appears somewhere in the enumeration (the filters are orbit-invariant),
so it suffices to keep one "seen" set of vectors: the first time an orbit is
met, the whole orbit matrix q[perms] is materialized with numpy, its unique
rows are marked seen and its lexicographically least row (numeric character
order) is kept as the canonical class representative.  Everything downstream
(patterns, member annotations, sorting) runs on the class representatives
only.  Members are printed via the display-order lexicographic maximum of
the orbit, which is the representative the reference tables use.

The enumeration is an embarrassingly parallel map over the value of the
first free multiplicity; the merge is a set union of canonical forms, so the
output is byte-identical for any worker count.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import diagrep, flip as flip_mod
from .chargroup import automorphism_chunks, automorphism_table, evaluate, f2_rank
from .diagrep import DiagonalRep
from .cohomology import betti_numbers, primitive_counts
from .errors import CapabilityError

COMPOSITION_BUDGET = 100_000_000
MAX_SEARCH_RANK = 5


@dataclass(frozen=True)
class SearchConfig:
    k: int
    n: int
    n_max: int | None = None
    require_faithful: bool = True
    forbid_minus_id: bool = True
    require_q0_zero: bool = True
    min_family_size: int = 2
    workers: int = 1
    composition_budget: int = COMPOSITION_BUDGET

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.k > MAX_SEARCH_RANK:
            raise CapabilityError(f"enumeration is limited to k <= {MAX_SEARCH_RANK}")
        if self.n < self.k:
            raise ValueError("need n >= k: no faithful diagonal representation below that")
        if self.n_max is not None and self.n_max < self.n:
            raise ValueError("n_max must be >= n")
        if self.min_family_size < 1:
            raise ValueError("min_family_size must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def dimensions(self) -> range:
        return range(self.n, (self.n_max if self.n_max is not None else self.n) + 1)

    def filters_dict(self) -> dict:
        return {
            "require_faithful": self.require_faithful,
            "forbid_minus_id": self.forbid_minus_id,
            "require_q0_zero": self.require_q0_zero,
            "min_family_size": self.min_family_size,
        }


@dataclass(frozen=True)
class FamilyMember:
    display_q: tuple[int, ...]
    canonical: DiagonalRep
    prim: tuple[int, ...]
    betti: tuple[int, ...]


@dataclass(frozen=True)
class Family:
    k: int
    n: int
    pattern: tuple[int, ...]
    members: tuple[FamilyMember, ...]

    @property
    def size(self) -> int:
        return len(self.members)


# -- vectorized filter tables --------------------------------------------------


@lru_cache(maxsize=None)
def _eval_matrix(k: int) -> np.ndarray:
    """EVAL[f, J] = 1 when chi_J(f) = +1, else 0."""
    size = 1 << k
    return np.array([[1 if evaluate(j, f) == 1 else 0 for j in range(size)]
                     for f in range(size)], dtype=np.int64)


@lru_cache(maxsize=None)
def _support_tables(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Per support-bitmask over the nonzero characters (bit m-1 <=> q_m > 0):
    whether the support spans rank k, and whether some nonzero element is
    -1 on every supported character (the -Id test at q_0 = 0)."""
    size = 1 << k
    nsupports = 1 << (size - 1)
    faithful = np.zeros(nsupports, dtype=bool)
    minus_id = np.zeros(nsupports, dtype=bool)
    neg_sets = []
    for f in range(1, size):
        neg = 0
        for m in range(1, size):
            if evaluate(m, f) == -1:
                neg |= 1 << (m - 1)
        neg_sets.append(neg)
    for s in range(nsupports):
        masks = [m + 1 for m in range(size - 1) if s >> m & 1]
        faithful[s] = f2_rank(masks) == k
        minus_id[s] = any(s & ~neg == 0 for neg in neg_sets)
    return faithful, minus_id


def _compositions(total: int, parts: int, chunk: int = 131072):
    """Yield (B, parts) int16 arrays of nonnegative compositions of total."""
    if parts == 0:
        if total == 0:
            yield np.zeros((1, 0), dtype=np.int16)
        return
    if parts == 1:
        yield np.array([[total]], dtype=np.int16)
        return
    slots = total + parts - 1
    it = itertools.combinations(range(slots), parts - 1)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        pos = np.asarray(block, dtype=np.int64)
        ext = np.empty((pos.shape[0], parts + 1), dtype=np.int64)
        ext[:, 0] = -1
        ext[:, 1:-1] = pos
        ext[:, -1] = slots
        yield (np.diff(ext, axis=1) - 1).astype(np.int16)


def _pack_matrix(arr: np.ndarray, n: int):
    """Injective uint64 keys for q-rows when they fit, else None."""
    cols = arr.shape[1]
    bits = 4 if n <= 15 else 8
    if bits * cols > 64:
        return None
    w = np.left_shift(np.uint64(1), (bits * np.arange(cols, dtype=np.uint64)))
    return (arr.astype(np.uint64) * w).sum(axis=1, dtype=np.uint64)


def _keys(arr: np.ndarray, n: int) -> list:
    packed = _pack_matrix(arr, n)
    if packed is not None:
        return packed.tolist()
    return [row.tobytes() for row in np.ascontiguousarray(arr, dtype=np.int16)]


def _orbit_unique(row: np.ndarray, k: int) -> np.ndarray:
    """Sorted unique rows of the automorphism orbit of one q-vector."""
    if k <= 4:
        return np.unique(row[automorphism_table(k)], axis=0)
    parts = [np.unique(row[perms], axis=0) for perms in automorphism_chunks(k)]
    return np.unique(np.vstack(parts), axis=0)


def _enumerate_classes(cfg_tuple, n: int, first_values) -> list[tuple[int, ...]]:
    """Canonical class representatives among vectors whose first free
    multiplicity lies in first_values.  Top-level function so that worker
    processes can receive it."""
    (k, require_faithful, forbid_minus_id, require_q0_zero) = cfg_tuple
    size = 1 << k
    free_masks = list(range(1, size)) if require_q0_zero else list(range(size))
    faithful_tab, minusid_tab = _support_tables(k)
    support_w = np.left_shift(np.int64(1), np.arange(size - 1, dtype=np.int64))

    seen: set = set()
    classes: list[tuple[int, ...]] = []
    for v in first_values:
        rest = n - v
        if rest < 0:
            continue
        for batch in _compositions(rest, len(free_masks) - 1):
            full = np.zeros((batch.shape[0], size), dtype=np.int16)
            full[:, free_masks[0]] = v
            if len(free_masks) > 1:
                full[:, free_masks[1:]] = batch
            support = ((full[:, 1:] > 0).astype(np.int64) * support_w).sum(axis=1)
            keep = np.ones(len(full), dtype=bool)
            if require_faithful:
                keep &= faithful_tab[support]
            if forbid_minus_id:
                keep &= ~(minusid_tab[support] & (full[:, 0] == 0))
            rows = full[keep]
            if not len(rows):
                continue
            for i, key in enumerate(_keys(rows, n)):
                if key in seen:
                    continue
                orbit = _orbit_unique(rows[i], k)
                seen.update(_keys(orbit, n))
                classes.append(tuple(int(x) for x in orbit[0]))
    return classes


def _run_single_dimension(cfg: SearchConfig, n: int) -> list[Family]:
    size = 1 << cfg.k
    free = (size - 1) if cfg.require_q0_zero else size
    count = comb(n + free - 1, free - 1)
    if count > cfg.composition_budget:
        raise CapabilityError(
            f"enumeration would scan {count} compositions "
            f"(> budget {cfg.composition_budget})")

    cfg_tuple = (cfg.k, cfg.require_faithful, cfg.forbid_minus_id, cfg.require_q0_zero)
    if cfg.workers == 1:
        classes = _enumerate_classes(cfg_tuple, n, range(n + 1))
    else:
        slices = [range(w, n + 1, cfg.workers) for w in range(cfg.workers)]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            parts = pool.map(_enumerate_classes, [cfg_tuple] * len(slices),
                             [n] * len(slices), slices)
            merged: set[tuple[int, ...]] = set()
            classes = []
            for part in parts:
                for row in part:
                    if row not in merged:
                        merged.add(row)
                        classes.append(row)

    # group canonical representatives by pattern
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    eval_t = _eval_matrix(cfg.k).T
    for row in classes:
        dims = np.array(row, dtype=np.int64) @ eval_t
        patt = [0] * (n + 1)
        for d in dims:
            patt[int(d)] += 1
        groups.setdefault(tuple(patt), []).append(row)

    families = []
    for patt, rows in groups.items():
        if len(rows) < cfg.min_family_size:
            continue
        members = []
        for row in rows:
            canon = DiagonalRep(cfg.k, row)
            disp = diagrep.display_representative(canon)
            members.append(FamilyMember(
                display_q=disp.to_display(),
                canonical=canon,
                prim=primitive_counts(disp),
                betti=betti_numbers(disp),
            ))
        members.sort(key=lambda m: m.display_q, reverse=True)
        families.append(Family(cfg.k, n, patt, tuple(members)))
    families.sort(key=lambda f: f.members[0].display_q, reverse=True)
    return families


def enumerate_families(cfg: SearchConfig) -> list[Family]:
    """All families (pattern classes with >= min_family_size inequivalent
    members) for every dimension in the configured range, deterministically
    ordered: ascending dimension, then descending leading member."""
    out = []
    for n in cfg.dimensions:
        out.extend(_run_single_dimension(cfg, n))
    return out


# -- flip coverage --------------------------------------------------------------


def one_flip_reachable(a: DiagonalRep, b: DiagonalRep) -> bool:
    """Whether some single flip of a lands in the equivalence class of b."""
    size = 1 << a.k
    for g1 in range(1, size):
        for g2 in range(g1 + 1, size):
            outcome = flip_mod.apply_flip(a, flip_mod.FlipSpec(g1, g2))
            if outcome.applicable and diagrep.are_equivalent(outcome.rep, b):
                return True
    return False


def flip_coverage_report(families) -> list[dict[tuple[int, int], bool]]:
    """Per family: for each ordered member pair (i, j), whether one flip maps
    member i into the class of member j.  Single flips are involutive, so the
    relation is symmetric; both directions are reported anyway."""
    out = []
    for fam in families:
        reps = [diagrep.DiagonalRep.from_display(fam.k, m.display_q) for m in fam.members]
        flags = {}
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                if i != j:
                    flags[(i, j)] = one_flip_reachable(a, b)
        out.append(flags)
    return out


# -- output remapping -------------------------------------------------------------


def families_to_json(cfg: SearchConfig, families) -> str:
    runs = []
    for n in cfg.dimensions:
        runs.append({
            "k": cfg.k,
            "n": n,
            "filters": cfg.filters_dict(),
            "families": [
                {
                    "pattern": list(f.pattern),
                    "members": [
                        {"q": list(m.display_q), "prim": list(m.prim), "betti": list(m.betti)}
                        for m in f.members
                    ],
                }
                for f in families if f.n == n
            ],
        })
    payload = runs[0] if cfg.n_max is None else runs
    return json.dumps(payload, indent=1)


def families_from_json(text: str) -> list[Family]:
    data = json.loads(text)
    runs = data if isinstance(data, list) else [data]
    out = []
    for run in runs:
        k = run["k"]
        for fam in run["families"]:
            members = []
            for m in fam["members"]:
                disp = tuple(m["q"])
                rep = DiagonalRep.from_display(k, disp)
                members.append(FamilyMember(
                    display_q=disp,
                    canonical=diagrep.canonical_form(rep),
                    prim=tuple(m["prim"]),
                    betti=tuple(m["betti"]),
                ))
            out.append(Family(k, run["n"], tuple(fam["pattern"]), tuple(members)))
    return out


def families_to_csv(families) -> str:
    import csv as csv_mod
    import io
    buf = io.StringIO()
    if not families:
        return ""
    k = families[0].k
    plabels = [f"P{p}" for p in range(2, k + 2)]
    writer = csv_mod.writer(buf, lineterminator="\n")
    writer.writerow(["k", "n", "family", "q", *plabels, "betti"])
    for idx, fam in enumerate(families, start=1):
        fid = f"F[{fam.k},{fam.n}]_{idx}"
        for m in fam.members:
            writer.writerow([
                fam.k, fam.n, fid,
                ",".join(str(v) for v in m.display_q),
                *[m.prim[p] if p < len(m.prim) else 0 for p in range(2, k + 2)],
                ",".join(str(v) for v in m.betti),
            ])
    return buf.getvalue()


def families_to_text(families, show_p5: bool | None = None) -> str:
    """Human-readable table: one block per dimension, families numbered inside."""
    lines = []
    current_n = None
    idx = 0
    for fam in families:
        if fam.n != current_n:
            current_n = fam.n
            idx = 0
            lines.append(f"n = {fam.n}")
        idx += 1
        p5 = fam.k >= 4 if show_p5 is None else show_p5
        lines.append(f"  F[{fam.k},{fam.n}]_{idx}")
        for m in fam.members:
            q = "[" + ",".join(str(v) for v in m.display_q) + "]"
            cols = f"P4={m.prim[4] if len(m.prim) > 4 else 0}"
            if p5:
                cols += f"  P5={m.prim[5] if len(m.prim) > 5 else 0}"
            lines.append(f"    {q}  {cols}")
    return "\n".join(lines)


# -- reference table reproduction ---------------------------------------------


TABLE_SPECS = {
    1: dict(k=3, n=7, n_max=11, min_family_size=2),
    2: dict(k=3, n=12, n_max=15, min_family_size=3),
    3: dict(k=4, n=7, n_max=9, min_family_size=2),
}


def reproduce_table(table_id: int, workers: int = 1) -> tuple[str, list[Family]]:
    """Families of the three reference tables: (1) all k=3 families for
    n = 7..11; (2) k=3 families with at least three members, n = 12..15;
    (3) all k=4 families for n = 7..9.  Returns rendered text and the data."""
    if table_id not in TABLE_SPECS:
        raise ValueError("table id must be 1, 2 or 3")
    cfg = SearchConfig(workers=workers, **TABLE_SPECS[table_id])
    families = enumerate_families(cfg)
    return families_to_text(families), families
