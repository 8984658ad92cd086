import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from ..digraph import Digraph, RootedTree, bfs_order, classify
from ..solvers import gamma_exact, is_packing, rho_exact
from ..transforms import reduce_support_leaves
from ..utilities import VertexSet


class TerminalKind(Enum):
    EMPTY = 0               # every vertex removed by a star elimination
    ISOLATED_VERTEX = 1     # a single vertex left over, which joins the packing
    RESIDUAL = 2            # contrafunctional elimination stops at a cycle or a height-one digraph


@dataclass(frozen=True)
class RdsesStage:
    leaf: int
    support: int
    removed: VertexSet      # closed out-neighbourhood of the support in the current digraph


@dataclass(frozen=True)
class RdsesResult:
    """
    Record of a recursive directed star elimination sequence.

    The blocks of `partition` are the removed stars in order, followed by the terminal block
    ({v} for an isolated vertex, the residual vertex set for a residual digraph).
    """

    stages: Tuple[RdsesStage, ...]
    terminal: TerminalKind
    chosen_set: VertexSet
    partition: Tuple[VertexSet, ...]
    terminal_vertex: Optional[int] = None
    residual: Optional[Digraph] = None
    residual_vertices: Tuple[int, ...] = ()


@dataclass(frozen=True)
class TreeProfile:
    n: int
    leaves: int
    supports: int
    height: int


class PhiCondition(Enum):
    ALL_PAIRS = "a"                    # partition into directed stars S2 only
    PAIRS_AND_SINGLETON = "b"          # S2 stars plus the isolated terminal vertex
    ONE_TRIPLE_AND_SINGLETON = "c"     # one S3 star, the rest S2, plus the isolated terminal vertex


@dataclass(frozen=True)
class PhiCertificate:
    condition: PhiCondition
    partition: Tuple[VertexSet, ...]


def tree_profile(t: RootedTree) -> TreeProfile:
    return TreeProfile(n=t.n, leaves=len(t.leaves()), supports=len(t.supports()), height=t.height)


def max_packing_rooted_tree(t: RootedTree) -> RdsesResult:
    """
    Maximum packing of a rooted tree in linear time.

    Walk the BFS order from the back: the last vertex v still present is a deepest leaf of
    what remains, so put it into the packing and remove its parent together with the parent's
    remaining children. When v is the root it is removed on its own.

    :param t: Rooted tree (order 1 is accepted and yields the root).
    :return:
    """

    order = bfs_order(t)
    present = [True] * t.n
    stages = []
    chosen = []
    partition = []
    terminal = TerminalKind.EMPTY
    terminal_vertex = None

    index = len(order) - 1
    while index >= 0:
        v = order[index]
        if not present[v]:
            index -= 1
            continue

        chosen.append(v)
        p = t.parent(v)
        if p is None:
            present[v] = False
            partition.append(frozenset([v]))
            terminal = TerminalKind.ISOLATED_VERTEX
            terminal_vertex = v
        else:
            block = frozenset([p] + [c for c in t.children(p) if present[c]])
            for w in block:
                present[w] = False
            partition.append(block)
            stages.append(RdsesStage(leaf=v, support=p, removed=block))
        index -= 1

    assert not any(present)
    result = RdsesResult(stages=tuple(stages), terminal=terminal, chosen_set=frozenset(chosen),
                         partition=tuple(partition), terminal_vertex=terminal_vertex)
    assert is_packing(t.digraph, result.chosen_set)
    return result


def gamma_directed_tree(t: Digraph, guard: Optional[int] = None) -> int:
    """
    Domination number of a directed tree, which equals its packing number.

    :param t: Any orientation of a tree.
    :param guard: Enumeration guard for trees that are not rooted.
    :return:
    """

    classification = classify(t)
    if not classification.directed_tree:
        raise ValueError("Expected a directed tree (an orientation of a tree)")

    if classification.is_rooted_tree:
        return len(max_packing_rooted_tree(classification.rooted_tree).chosen_set)

    gamma, _ = gamma_exact(t, guard=guard)
    rho, _ = rho_exact(t, guard=guard)
    assert gamma == rho
    return gamma


def t1_bounds(t: RootedTree) -> Tuple[int, int]:
    """
    :return: (s, ceil((n - l + s) / 2)), lower and upper bounds on the packing number.
    """

    if t.n < 2:
        raise ValueError("Packing bounds need a rooted tree of order at least 2")

    profile = tree_profile(t)
    upper = math.ceil((profile.n - profile.leaves + profile.supports) / 2)
    return profile.supports, upper


def rho_equals_s_test(t: RootedTree) -> Tuple[bool, str]:
    """
    Structural condition for the packing number to equal the number of support vertices:
    n = l + s, or every vertex that is neither a support nor a leaf has a support as its
    in-neighbour. The root has no in-neighbour, so a root of that kind fails the condition.

    :param t:
    :return: (holds, reason)
    """

    if t.n < 2:
        raise ValueError("Needs a rooted tree of order at least 2")

    leaves = t.leaves()
    supports = t.supports()
    if t.n == len(leaves) + len(supports):
        return True, "n = l + s"

    for v in sorted(t.digraph.vertices()):
        if v in leaves or v in supports:
            continue
        p = t.parent(v)
        if p is None or p not in supports:
            return False, f"vertex {v} is neither support nor leaf and is not adjacent from a support"

    return True, "every non-support non-leaf vertex is adjacent from a support"


def phi_certificate(t: RootedTree) -> Optional[PhiCertificate]:
    """
    Read the star partition of the elimination sequence as a membership certificate for the
    family of rooted trees with domination number ceil(n/2).

    :return: None when the tree is not in the family.
    """

    result = max_packing_rooted_tree(t)
    if len(result.chosen_set) != math.ceil(t.n / 2):
        return None

    stars = [len(block) for block in result.partition[:len(result.stages)]]
    if result.terminal == TerminalKind.EMPTY:
        assert all(size == 2 for size in stars)
        condition = PhiCondition.ALL_PAIRS
    elif all(size == 2 for size in stars):
        condition = PhiCondition.PAIRS_AND_SINGLETON
    else:
        assert sorted(stars) == [2] * (len(stars) - 1) + [3]
        condition = PhiCondition.ONE_TRIPLE_AND_SINGLETON

    return PhiCertificate(condition=condition, partition=result.partition)


def phi_membership(t: RootedTree) -> bool:
    """
    :return: True iff gamma(t) = ceil(n/2).
    """

    if t.n < 2:
        raise ValueError("Needs a rooted tree of order at least 2")
    return phi_certificate(t) is not None


def rho_upper_characterization(t: RootedTree) -> bool:
    """
    The packing number reaches ceil((n - l + s) / 2) exactly when the support-leaf
    reduction of t lies in the ceil(n/2) family.
    """

    if t.n < 2:
        raise ValueError("Needs a rooted tree of order at least 2")
    return phi_membership(reduce_support_leaves(t))


def is_binary_tree(t: RootedTree) -> bool:
    return all(len(t.children(v)) in (0, 2) for v in t.digraph.vertices())


def gamma_t_tree_upper_bound(t: RootedTree) -> Optional[int]:
    """
    Non-leaf vertices totally dominate a rooted tree of order >= 2 other than a directed
    star, so gamma_t <= n - l there.

    :return: n - l, or None for directed stars and single vertices.
    """

    if t.n < 2 or t.height == 1:
        logging.debug("No non-leaf total dominating set for a star or single vertex")
        return None
    return t.n - len(t.leaves())
