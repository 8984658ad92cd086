from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, List, Optional, Set, Tuple

from ..digraph import Digraph, is_symmetric
from ..utilities import check_guard, get_enumeration_guard

SUN_SEARCH_GUARD = 16
DEFAULT_K_MAX = 4


@dataclass(frozen=True)
class EliminationOrdering:
    """Vertices in deletion order; each is simplicial among those not yet deleted."""

    order: Tuple[int, ...]


@dataclass(frozen=True)
class SunWitness:
    k: int
    core: Tuple[int, ...]       # Hamiltonian cycle v1..vk of the core
    outer: Tuple[int, ...]      # outer[i] is adjacent to core[i] and core[i+1] only


@dataclass(frozen=True)
class ChordalVerdict:
    """
    Strong chordality up to a bounded sun size. `desk_scale` is always set: suns larger
    than k_max are not searched, so the verdict is not a full recognition.
    """

    chordal: bool
    ordering: Optional[EliminationOrdering]
    sun: Optional[SunWitness]
    k_max: int
    desk_scale: bool = True

    @property
    def strongly_chordal(self) -> bool:
        return self.chordal and self.sun is None


def _neighborhoods(g: Digraph) -> List[FrozenSet[int]]:
    if not is_symmetric(g):
        raise ValueError("Expected a symmetric digraph (every arc paired with its opposite)")
    neighbors: List[Set[int]] = [set() for _ in g.vertices()]
    for u, v in g.arcs:
        neighbors[u].add(v)
    return [frozenset(s) for s in neighbors]


def simplicial_elimination(g: Digraph) -> Optional[EliminationOrdering]:
    """
    Greedy simplicial elimination, lowest id first.

    :param g: Undirected graph stored as a symmetric digraph.
    :return: A simplicial elimination ordering, or None when some stage has no simplicial
        vertex (the graph is not chordal).
    """

    neighbors = _neighborhoods(g)
    check_guard(g.n, 2 * get_enumeration_guard(), what="simplicial elimination", from_environment=True)

    remaining = set(g.vertices())
    order = []
    while remaining:
        for v in sorted(remaining):
            alive = neighbors[v] & remaining
            if all(b in neighbors[a] for a, b in combinations(sorted(alive), 2)):
                break
        else:
            return None
        order.append(v)
        remaining.remove(v)
    return EliminationOrdering(order=tuple(order))


def _suns_of_size(neighbors: List[FrozenSet[int]], n: int, k: int) -> Optional[SunWitness]:
    # Core cycles start at their smallest vertex and list core[1] < core[-1], so each
    # Hamiltonian cycle of a core is tried once.
    def cycles(path: List[int]):
        if len(path) == k:
            if path[0] in neighbors[path[-1]] and path[1] < path[-1]:
                yield tuple(path)
            return
        for w in sorted(neighbors[path[-1]]):
            if w > path[0] and w not in path:
                path.append(w)
                yield from cycles(path)
                path.pop()

    for start in range(n):
        for core in cycles([start]):
            core_set = frozenset(core)
            candidates = []
            for i in range(k):
                pair = {core[i], core[(i + 1) % k]}
                candidates.append([u for u in range(n)
                                   if u not in core_set and neighbors[u] & core_set == pair])
            outer = _independent_choice(neighbors, candidates)
            if outer is not None:
                return SunWitness(k=k, core=core, outer=outer)
    return None


def _independent_choice(neighbors: List[FrozenSet[int]],
                        candidates: List[List[int]]) -> Optional[Tuple[int, ...]]:
    chosen: List[int] = []

    def pick(i: int) -> bool:
        if i == len(candidates):
            return True
        for u in candidates[i]:
            if u not in chosen and not (neighbors[u] & set(chosen)):
                chosen.append(u)
                if pick(i + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if pick(0) else None


def find_k_sun(g: Digraph, k_max: int = DEFAULT_K_MAX) -> Optional[SunWitness]:
    """
    Search for an induced k-sun, 3 <= k <= k_max: a core with Hamiltonian cycle v1..vk (chords
    allowed) and pairwise non-adjacent outer vertices u1..uk, where ui meets the core exactly
    in {vi, vi+1}.

    :param g: Undirected graph stored as a symmetric digraph, at most 16 vertices.
    :param k_max:
    :return: The first witness found, smallest k first.
    """

    neighbors = _neighborhoods(g)
    check_guard(g.n, SUN_SEARCH_GUARD, what="sun search")

    for k in range(3, k_max + 1):
        if 2 * k > g.n:
            break
        witness = _suns_of_size(neighbors, g.n, k)
        if witness is not None:
            return witness
    return None


def strongly_chordal_desk(g: Digraph, k_max: int = DEFAULT_K_MAX) -> ChordalVerdict:
    ordering = simplicial_elimination(g)
    sun = find_k_sun(g, k_max=k_max)
    return ChordalVerdict(chordal=ordering is not None, ordering=ordering, sun=sun, k_max=k_max)
