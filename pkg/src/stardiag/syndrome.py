"""Test execution, syndrome generation, and consistency-based diagnosis.

PMC units are ordered adjacent pairs (tester, testee); MM* units are
comparator triples (u, v; w) with w adjacent to both compared vertices.
Outcomes controlled by a faulty tester/comparator follow a strategy:
seeded-random, all-zeros, or all-ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .base import BudgetError, DomainError, Model, VerificationError
from .faults import good_mask
from .graph import TopologyGraph, _iter_bits
from .topologies import descriptor_params

STRATEGIES = ("random", "zeros", "ones")

#: default vertex cap for exhaustive hypothesis enumeration
DEFAULT_DIAGNOSIS_BUDGET = 16


@dataclass(frozen=True)
class TestAssignment:
    """Complete unit set of a diagnosis model on a graph.

    PMC: every ordered adjacent pair as (u, v, None), 2|E| units.
    MM*: every (u, v, w) with w adjacent to both and u < v, sum of
    C(deg(w), 2) units.  Units are index triples, lexicographic by label.
    """

    graph: TopologyGraph
    model: Model
    units: tuple[tuple[int, int, int | None], ...]


def build_assignment(graph: TopologyGraph, model: Model) -> TestAssignment:
    units = []
    if model is Model.PMC:
        for u in range(graph.vertex_count):
            for v in _iter_bits(graph.nbr_masks[u]):
                units.append((u, v, None))
    else:
        for w in range(graph.vertex_count):
            for u, v in combinations(sorted(_iter_bits(graph.nbr_masks[w])), 2):
                units.append((u, v, w))
    units.sort(key=lambda t: tuple(graph.labels[i] for i in t if i is not None))
    return TestAssignment(graph=graph, model=model, units=tuple(units))


@dataclass(frozen=True)
class Syndrome:
    """One outcome bit per unit of an assignment."""

    assignment: TestAssignment
    outcomes: tuple[int, ...]
    strategy: str = "given"
    seed: int = 0

    def __post_init__(self):
        if len(self.outcomes) != len(self.assignment.units):
            raise DomainError("syndrome must carry exactly one bit per unit")


def generate_syndrome(
    assignment: TestAssignment, fault_set, strategy: str = "random", seed: int = 0
) -> Syndrome:
    """Syndrome produced by ground truth `fault_set`.

    Units whose tester/comparator is fault-free follow the outcome tables
    exactly; units controlled by a faulty vertex follow `strategy`.
    """
    if strategy not in STRATEGIES:
        raise DomainError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    graph = assignment.graph
    fmask = graph.mask_of(fault_set)
    rng = random.Random(seed)
    bits = []
    for u, v, w in assignment.units:
        controller = u if w is None else w
        if (fmask >> controller) & 1:
            if strategy == "zeros":
                bits.append(0)
            elif strategy == "ones":
                bits.append(1)
            else:
                bits.append(rng.getrandbits(1))
        elif w is None:
            bits.append((fmask >> v) & 1)
        else:
            bits.append(1 if ((fmask >> u) | (fmask >> v)) & 1 else 0)
    return Syndrome(assignment=assignment, outcomes=tuple(bits), strategy=strategy, seed=seed)


def consistent_mask(assignment: TestAssignment, outcomes, fmask: int) -> bool:
    for (u, v, w), bit in zip(assignment.units, outcomes):
        controller = u if w is None else w
        if (fmask >> controller) & 1:
            continue  # a faulty controller may report anything
        if w is None:
            expected = (fmask >> v) & 1
        else:
            expected = 1 if ((fmask >> u) | (fmask >> v)) & 1 else 0
        if bit != expected:
            return False
    return True


def is_consistent(fault_set, syndrome: Syndrome) -> bool:
    """True iff `fault_set` could have produced the syndrome."""
    graph = syndrome.assignment.graph
    return consistent_mask(syndrome.assignment, syndrome.outcomes, graph.mask_of(fault_set))


def ambiguity_syndrome(assignment: TestAssignment, f1, f2) -> Syndrome:
    """A syndrome consistent with both hypotheses.

    Exists exactly when the pair is indistinguishable under the
    assignment's model; a distinguishable pair raises VerificationError.
    """
    graph = assignment.graph
    m1, m2 = graph.mask_of(f1), graph.mask_of(f2)
    if m1 == m2:
        raise DomainError("ambiguity syndrome needs two distinct sets")
    bits = []
    for u, v, w in assignment.units:
        controller = u if w is None else w
        in1 = (m1 >> controller) & 1
        in2 = (m2 >> controller) & 1
        if w is None:
            want1, want2 = (m1 >> v) & 1, (m2 >> v) & 1
        else:
            want1 = 1 if ((m1 >> u) | (m1 >> v)) & 1 else 0
            want2 = 1 if ((m2 >> u) | (m2 >> v)) & 1 else 0
        if in1 and in2:
            bits.append(0)
        elif in1:
            bits.append(want2)
        elif in2:
            bits.append(want1)
        elif want1 == want2:
            bits.append(want1)
        else:
            unit = tuple(graph.labels[i] for i in (u, v, w) if i is not None)
            raise VerificationError(
                f"pair is distinguishable: unit {unit} forces conflicting outcomes"
            )
    return Syndrome(assignment=assignment, outcomes=tuple(bits), strategy="ambiguity")


def diagnose(
    graph: TopologyGraph,
    syndrome: Syndrome,
    t: int,
    g: int,
    first_two: bool = False,
    budget: int = DEFAULT_DIAGNOSIS_BUDGET,
) -> list[frozenset]:
    """All proper g-good-neighbor hypotheses of size <= t consistent with the syndrome.

    Hypotheses are enumerated in increasing size then lexicographic label
    order; with first_two=True the scan stops as soon as ambiguity is
    established.  An empty result means the true fault count exceeded t.
    """
    n = graph.vertex_count
    if n > budget:
        raise BudgetError(f"{n} vertices over the diagnosis budget of {budget}")
    if syndrome.assignment.graph is not graph and syndrome.assignment.graph != graph:
        raise DomainError("syndrome is bound to a different graph")
    found = []
    for size in range(min(t, n - 1) + 1):
        for combo in combinations(range(n), size):
            fmask = 0
            for i in combo:
                fmask |= 1 << i
            if not good_mask(graph, fmask, g):
                continue
            if consistent_mask(syndrome.assignment, syndrome.outcomes, fmask):
                found.append(graph.labels_of(fmask))
                if first_two and len(found) >= 2:
                    return found
    return found


# -- syndrome file format ------------------------------------------------


def syndrome_to_text(syndrome: Syndrome) -> str:
    """Header 'model n k seed strategy', then one sorted line per unit."""
    assignment = syndrome.assignment
    graph = assignment.graph
    params = descriptor_params(graph.descriptor) or (0, 0)
    lines = []
    for (u, v, w), bit in zip(assignment.units, syndrome.outcomes):
        if w is None:
            lines.append(f"{graph.labels[u]} {graph.labels[v]} -> {bit}")
        else:
            lines.append(f"{graph.labels[u]} {graph.labels[v]} | {graph.labels[w]} -> {bit}")
    lines.sort()
    header = (
        f"{assignment.model.value} {params[0]} {params[1]} "
        f"{syndrome.seed} {syndrome.strategy}"
    )
    return header + "\n" + "\n".join(lines) + "\n"


def syndrome_from_text(graph: TopologyGraph, text: str) -> Syndrome:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DomainError("empty syndrome text")
    head = lines[0].split()
    if len(head) != 5:
        raise DomainError(f"bad syndrome header {lines[0]!r}")
    model = Model.parse(head[0])
    seed = int(head[3])
    strategy = head[4]
    assignment = build_assignment(graph, model)
    outcome_map = {}
    for ln in lines[1:]:
        left, _, bit_s = ln.rpartition("->")
        if not _:
            raise DomainError(f"bad syndrome line {ln!r}")
        bit = int(bit_s)
        if "|" in left:
            pair_s, _, w_s = left.partition("|")
            u_s, v_s = pair_s.split()
            key = (graph._lookup(u_s), graph._lookup(v_s), graph._lookup(w_s.strip()))
        else:
            u_s, v_s = left.split()
            key = (graph._lookup(u_s), graph._lookup(v_s), None)
        outcome_map[key] = bit
    try:
        outcomes = tuple(outcome_map[unit] for unit in assignment.units)
    except KeyError as missing:
        raise DomainError(f"syndrome text is missing unit {missing}") from None
    if len(outcome_map) != len(assignment.units):
        raise DomainError("syndrome text carries units not in the assignment")
    return Syndrome(assignment=assignment, outcomes=outcomes, strategy=strategy, seed=seed)
