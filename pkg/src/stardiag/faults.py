"""Predicates and measures on faulty vertex sets.

Everything here is pure and reentrant.  The public functions take label
sets; the _mask variants are the hot paths shared with the brute-force
searches in the diagnosability module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .base import BudgetError, DomainError, Model, NotApplicableError
from .graph import LabelSet, TopologyGraph, _iter_bits

#: default vertex cap for the exhaustive searches in this module
DEFAULT_SEARCH_BUDGET = 20


@dataclass(frozen=True)
class FaultPair:
    """Two distinct faulty-set hypotheses on the same graph."""

    f1: LabelSet
    f2: LabelSet

    def __post_init__(self):
        if self.f1 == self.f2:
            raise DomainError("a fault pair needs two distinct sets")


# -- g-good-neighbor predicates -----------------------------------------


def good_mask(graph: TopologyGraph, fmask: int, g: int) -> bool:
    """True iff every vertex outside `fmask` keeps >= g neighbors outside it."""
    rest = graph.full_mask & ~fmask
    r = rest
    while r:
        low = r & -r
        r ^= low
        if (graph.nbr_masks[low.bit_length() - 1] & rest).bit_count() < g:
            return False
    return True


def is_g_good_neighbor(graph: TopologyGraph, fault_set, g: int) -> bool:
    """g-good-neighbor condition for a faulty set (vacuously true for F = V)."""
    if g < 0:
        raise DomainError("g must be nonnegative")
    return good_mask(graph, graph.mask_of(fault_set), g)


def is_g_good_neighbor_cut(graph: TopologyGraph, fault_set, g: int) -> bool:
    """True iff the set is g-good-neighbor and its removal disconnects the graph."""
    fmask = graph.mask_of(fault_set)
    if fmask == graph.full_mask:
        raise DomainError("a cut must be a proper subset of V")
    if not good_mask(graph, fmask, g):
        return False
    return len(graph.component_masks(graph.full_mask & ~fmask)) > 1


def good_faulty_sets(graph: TopologyGraph, g: int) -> list[int]:
    """Masks of all proper (!= V) g-good-neighbor faulty sets."""
    return [m for m in range(graph.full_mask) if good_mask(graph, m, g)]


# -- connectivity --------------------------------------------------------


def rg_connectivity_bruteforce(
    graph: TopologyGraph, g: int, budget: int = DEFAULT_SEARCH_BUDGET
) -> int | None:
    """Minimum size of a g-good-neighbor cut, or None when no cut exists.

    Enumerates candidate sets in increasing size, so the cost is governed
    by the answer rather than by 2^|V| whenever a cut exists.
    """
    n = graph.vertex_count
    if n > budget:
        raise BudgetError(f"{n} vertices over the brute-force budget of {budget}")
    for size in range(n):
        for combo in combinations(range(n), size):
            fmask = 0
            for i in combo:
                fmask |= 1 << i
            if not good_mask(graph, fmask, g):
                continue
            if len(graph.component_masks(graph.full_mask & ~fmask)) > 1:
                return size
    return None


def rg_connectivity_formula(n: int, k: int, g: int) -> int:
    """Closed-form R_g-connectivity of S_{n,k}: (g+1)!(n-g-1)/(n-k)!.

    Valid only for 2 <= k <= n-1 and n-k <= g <= n-2; anything else raises
    NotApplicableError rather than extrapolating.
    """
    if not (2 <= k <= n - 1 and n - k <= g <= n - 2):
        raise NotApplicableError(
            f"R_g-connectivity closed form needs 2<=k<=n-1 and n-k<=g<=n-2; "
            f"got n={n}, k={k}, g={g}"
        )
    value = math.factorial(g + 1) * (n - g - 1)
    assert value % math.factorial(n - k) == 0
    return value // math.factorial(n - k)


# -- distinguishability --------------------------------------------------


def indist_pmc_mask(graph: TopologyGraph, f1: int, f2: int) -> bool:
    """PMC-indistinguishable: no edge joins V-(F1|F2) to the symmetric difference."""
    outside = graph.full_mask & ~(f1 | f2)
    d = f1 ^ f2
    while d:
        low = d & -d
        d ^= low
        if graph.nbr_masks[low.bit_length() - 1] & outside:
            return False
    return True


def dist_mm_mask(graph: TopologyGraph, f1: int, f2: int) -> bool:
    """MM*-distinguishable: one of the three comparator conditions holds."""
    outside = graph.full_mask & ~(f1 | f2)
    delta = f1 ^ f2
    only1 = f1 & ~f2
    only2 = f2 & ~f1
    o = outside
    while o:
        low = o & -o
        o ^= low
        nb = graph.nbr_masks[low.bit_length() - 1]
        if (nb & outside) and (nb & delta):
            return True  # fault-free vertex with a fault-free and a differing neighbor
        if (nb & only1).bit_count() >= 2:
            return True  # two F1-only vertices share a fault-free comparator
        if (nb & only2).bit_count() >= 2:
            return True
    return False


def distinguishable_pmc(graph: TopologyGraph, f1, f2) -> bool:
    m1, m2 = graph.mask_of(f1), graph.mask_of(f2)
    if m1 == m2:
        raise DomainError("distinguishability needs two distinct sets")
    return not indist_pmc_mask(graph, m1, m2)


def distinguishable_mm(graph: TopologyGraph, f1, f2) -> bool:
    m1, m2 = graph.mask_of(f1), graph.mask_of(f2)
    if m1 == m2:
        raise DomainError("distinguishability needs two distinct sets")
    return dist_mm_mask(graph, m1, m2)


def distinguishable(graph: TopologyGraph, f1, f2, model: Model) -> bool:
    if model is Model.PMC:
        return distinguishable_pmc(graph, f1, f2)
    return distinguishable_mm(graph, f1, f2)


def indist_mask(graph: TopologyGraph, f1: int, f2: int, model: Model) -> bool:
    if model is Model.PMC:
        return indist_pmc_mask(graph, f1, f2)
    return not dist_mm_mask(graph, f1, f2)


# -- minimum subgraph size oracle ----------------------------------------


def _g_core_mask(graph: TopologyGraph, g: int) -> int:
    """Maximal vertex set whose induced subgraph has min degree >= g."""
    core = graph.full_mask
    changed = True
    while changed:
        changed = False
        c = core
        while c:
            low = c & -c
            c ^= low
            if (graph.nbr_masks[low.bit_length() - 1] & core).bit_count() < g:
                core ^= low
                changed = True
    return core


def _connected_subsets(graph: TopologyGraph, region: int, size: int):
    """Masks of connected vertex sets of exactly `size` inside `region`.

    Each set is produced once: sets are anchored at their lowest vertex and
    candidates already tried at a node are banned from its later branches.
    """
    if size <= 0:
        return
    nbr = graph.nbr_masks

    def grow(mask: int, frontier: int, allowed: int, remaining: int):
        if remaining == 0:
            yield mask
            return
        f = frontier
        while f:
            u_bit = f & -f
            f ^= u_bit
            allowed &= ~u_bit
            new_mask = mask | u_bit
            new_frontier = (frontier | nbr[u_bit.bit_length() - 1]) & allowed & ~new_mask
            yield from grow(new_mask, new_frontier, allowed, remaining - 1)

    r = region
    while r:
        v_bit = r & -r
        r ^= v_bit
        yield from grow(v_bit, nbr[v_bit.bit_length() - 1] & r, r, size - 1)


def _induced_min_degree_ok(graph: TopologyGraph, mask: int, g: int) -> bool:
    m = mask
    while m:
        low = m & -m
        m ^= low
        if (graph.nbr_masks[low.bit_length() - 1] & mask).bit_count() < g:
            return False
    return True


def min_subgraph_size_oracle(
    graph: TopologyGraph, g: int, budget: int = DEFAULT_SEARCH_BUDGET
) -> int | None:
    """Minimum |A| over nonempty A whose induced subgraph has min degree >= g.

    Returns None when no such set exists.  Any qualifying set lives inside
    the g-core and a minimum one is connected, so the search seeds on each
    core vertex and grows connected sets of increasing size.
    """
    if graph.vertex_count > budget:
        raise BudgetError(
            f"{graph.vertex_count} vertices over the brute-force budget of {budget}"
        )
    if g == 0:
        return 1
    core = _g_core_mask(graph, g)
    if core == 0:
        return None
    comps = graph.component_masks(core)
    if all(
        (graph.nbr_masks[i] & core).bit_count() == g for i in _iter_bits(core)
    ):
        # in a g-regular core every qualifying set is a union of components
        return min(c.bit_count() for c in comps)
    top = min(c.bit_count() for c in comps)
    for size in range(g + 1, top + 1):
        for mask in _connected_subsets(graph, core, size):
            if _induced_min_degree_ok(graph, mask, g):
                return size
    raise AssertionError("g-core exists but no qualifying subset was found")
