from dataclasses import dataclass
from typing import Tuple

from ..digraph import Digraph, RootedTree, induced_subdigraph


@dataclass(frozen=True)
class SplitTransform:
    """
    Every vertex v of the source gets a primed copy v' = v + n with the arc (v, v'), and every
    source arc (u, v) appears as (u, v) and (u, v'). split_graph is the underlying graph of
    split_digraph, stored as a symmetric digraph.
    """

    source: Digraph
    split_digraph: Digraph
    split_graph: Digraph

    def primed(self, v: int) -> int:
        return v + self.source.n

    def unprimed(self, v: int) -> int:
        return v - self.source.n if v >= self.source.n else v

    def mapping(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((v, self.primed(v)) for v in self.source.vertices())


def build_split(d: Digraph) -> SplitTransform:
    if d.n < 1:
        raise ValueError("Split transform needs at least one vertex")

    n = d.n
    arcs = {(v, v + n) for v in d.vertices()}
    for u, v in d.arcs:
        arcs.add((u, v))
        arcs.add((u, v + n))
    split_digraph = Digraph(2 * n, frozenset(arcs))

    # (u, v) and (v, u) may both be source arcs, so symmetrise through a set
    edges = arcs | {(v, u) for u, v in arcs}
    split_graph = Digraph(2 * n, frozenset(edges))

    assert len(split_digraph.arcs) == n + 2 * len(d.arcs)
    return SplitTransform(source=d, split_digraph=split_digraph, split_graph=split_graph)


def reduce_support_leaves(t: RootedTree) -> RootedTree:
    """
    Keep a single leaf (the lowest id) under every support vertex and relabel the survivors
    to 0..n'-1 in ascending id order. The result has order n - l + s.

    :param t: Rooted tree of order at least 2.
    :return:
    """

    if t.n < 2:
        raise ValueError("Support-leaf reduction needs a rooted tree of order at least 2")

    leaves = t.leaves()
    dropped = set()
    for u in t.supports():
        leaf_children = sorted(c for c in t.children(u) if c in leaves)
        dropped.update(leaf_children[1:])

    reduced, _ = induced_subdigraph(t.digraph, (v for v in t.digraph.vertices() if v not in dropped))
    result = RootedTree.from_digraph(reduced)

    assert result.n == t.n - len(leaves) + len(t.supports())
    return result


def remove_arc(d: Digraph, u: int, v: int) -> Digraph:
    if (u, v) not in d.arcs:
        raise KeyError(f"Arc ({u}, {v}) is not in the digraph")
    return Digraph(d.n, d.arcs - {(u, v)})
