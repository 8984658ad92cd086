from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

from ..digraph import Digraph, RootedTree, classify, in_neighbors, induced_subdigraph, out_neighbors
from ..transforms import remove_arc
from ..trees import RdsesResult, RdsesStage, TerminalKind, max_packing_rooted_tree


@dataclass(frozen=True)
class ContrafunctionalAnalysis:
    cycle: Tuple[int, ...]
    height: int
    rdses: RdsesResult
    omega: bool
    rho: int
    gamma: int


def _require_connected_contrafunctional(d: Digraph) -> None:
    if d.n < 1:
        raise ValueError("Expected a connected contrafunctional digraph, got the empty digraph")
    classification = classify(d)
    if not (classification.connected and classification.contrafunctional):
        raise ValueError("Expected a connected contrafunctional digraph (every in-degree 1)")


def _cycle_of(d: Digraph) -> Tuple[int, ...]:
    # Walking the unique in-neighbour backwards from any vertex must end up on the cycle.
    seen: Dict[int, int] = {}
    v = 0
    while v not in seen:
        seen[v] = len(seen)
        v = next(iter(in_neighbors(d, v)))
    on_cycle = {u for u, position in seen.items() if position >= seen[v]}

    start = min(on_cycle)
    cycle = [start]
    while True:
        successors = [w for w in out_neighbors(d, cycle[-1]) if w in on_cycle]
        assert len(successors) == 1
        if successors[0] == start:
            break
        cycle.append(successors[0])
    return tuple(cycle)


def unique_cycle(d: Digraph) -> Tuple[int, ...]:
    """
    :param d: Connected contrafunctional digraph.
    :return: The unique directed cycle, in arc order, starting at its smallest vertex.
    """

    _require_connected_contrafunctional(d)
    return _cycle_of(d)


def _distances_from(d: Digraph, sources: FrozenSet[int]) -> Dict[int, int]:
    distance = {v: 0 for v in sources}
    queue = deque(sorted(sources))
    while queue:
        u = queue.popleft()
        for w in sorted(out_neighbors(d, u)):
            if w not in distance:
                distance[w] = distance[u] + 1
                queue.append(w)
    return distance


def height(d: Digraph) -> int:
    """
    :return: Largest distance from the cycle to a vertex, following arcs away from the cycle.
    """

    _require_connected_contrafunctional(d)
    distance = _distances_from(d, frozenset(_cycle_of(d)))
    assert len(distance) == d.n
    return max(distance.values())


def rdses_contrafunctional(d: Digraph) -> RdsesResult:
    """
    Eliminate directed stars around deepest leaves until what remains is the cycle itself or
    has height one.

    :param d: Connected contrafunctional digraph.
    :return: RdsesResult whose terminal is the residual digraph.
    """

    _require_connected_contrafunctional(d)

    remaining = set(d.vertices())
    stages: List[RdsesStage] = []
    chosen = []
    partition = []
    while True:
        current, ids = induced_subdigraph(d, remaining)
        distance = _distances_from(current, frozenset(_cycle_of(current)))
        deepest = max(distance.values())
        if deepest <= 1:
            break

        leaf = min(ids[v] for v, depth in distance.items() if depth == deepest)
        support = next(iter(in_neighbors(d, leaf)))
        block = frozenset({support} | {w for w in out_neighbors(d, support) if w in remaining})

        stages.append(RdsesStage(leaf=leaf, support=support, removed=block))
        chosen.append(leaf)
        partition.append(block)
        remaining -= block

    partition.append(frozenset(remaining))
    return RdsesResult(stages=tuple(stages), terminal=TerminalKind.RESIDUAL,
                       chosen_set=frozenset(chosen), partition=tuple(partition),
                       residual=current, residual_vertices=ids)


def _terminal_values(residual: Digraph) -> Tuple[int, int, bool]:
    """
    (rho, gamma, odd cycle) for a residual that is a directed cycle or has height one.
    """

    cycle = _cycle_of(residual)
    m = len(cycle)
    if m == residual.n:
        return m // 2, (m + 1) // 2, m % 2 == 1

    on_cycle = set(cycle)
    supports = {v for v in cycle if any(w not in on_cycle for w in out_neighbors(residual, v))}
    if len(supports) == m:
        return m, m, False

    # Cut the cycle arc (u, v) with u a support and v not; the rest is a rooted tree at v.
    successor = {cycle[i]: cycle[(i + 1) % m] for i in range(m)}
    u, v = min((u, successor[u]) for u in supports if successor[u] not in supports)
    tree = RootedTree.from_digraph(remove_arc(residual, u, v))
    assert tree.root == v

    # An isolated root left at the end is v itself and does not count.
    value = len(max_packing_rooted_tree(tree).stages)
    return value, value, False


def analyze_contrafunctional(d: Digraph) -> ContrafunctionalAnalysis:
    """
    Packing and domination numbers of a connected contrafunctional digraph without search.

    Each eliminated star adds one to both numbers; the residual contributes floor(m/2) and
    ceil(m/2) for a directed cycle of length m, and equal values when it has height one.
    The domination number exceeds the packing number exactly when the residual is an odd
    cycle.

    :param d:
    :return:
    """

    rdses = rdses_contrafunctional(d)
    terminal_rho, terminal_gamma, odd_cycle = _terminal_values(rdses.residual)
    stages = len(rdses.stages)

    analysis = ContrafunctionalAnalysis(cycle=_cycle_of(d),
                                        height=height(d),
                                        rdses=rdses,
                                        omega=odd_cycle,
                                        rho=terminal_rho + stages,
                                        gamma=terminal_gamma + stages)
    assert analysis.gamma - analysis.rho == (1 if analysis.omega else 0)
    return analysis
