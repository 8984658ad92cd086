from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import numpy.typing as npt
from networkx.utils import UnionFind

from ..utilities import DigraphParseError, VertexSet, to_mask

Arc = Tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    """
    Finite digraph on the dense vertex ids 0..n-1.

    No loops and no repeated arcs; a pair of opposite arcs (u, v), (v, u) is allowed.
    Instances are immutable, so every query below is safe to share between threads.
    """

    n: int
    arcs: FrozenSet[Arc]
    _out: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)
    _in: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)
    out_masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Vertex count must be non-negative, got {self.n}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        out = [set() for _ in range(self.n)]
        inc = [set() for _ in range(self.n)]
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"Arc ({u}, {v}) has an endpoint outside [0, {self.n})")
            if u == v:
                raise ValueError(f"Loop at vertex {u} is not allowed")
            out[u].add(v)
            inc[v].add(u)

        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_out", tuple(frozenset(s) for s in out))
        object.__setattr__(self, "_in", tuple(frozenset(s) for s in inc))
        object.__setattr__(self, "out_masks", tuple(to_mask(s) for s in out))
        object.__setattr__(self, "in_masks", tuple(to_mask(s) for s in inc))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Arc]) -> "Digraph":
        arc_list = [(int(u), int(v)) for u, v in arcs]
        if len(set(arc_list)) != len(arc_list):
            raise ValueError("Duplicate arcs are not allowed")
        return cls(n, frozenset(arc_list))

    def vertices(self) -> range:
        return range(self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class DegreeStats:
    max_out: int
    max_in: int
    min_underlying: int
    max_underlying: int
    delta_star: int


@dataclass(frozen=True)
class RootedTree:
    """
    Rooted tree: connected, the root has in-degree 0 and every other vertex in-degree 1.
    """

    digraph: Digraph
    root: int
    parents: Tuple[Optional[int], ...]
    depths: Tuple[int, ...]

    @classmethod
    def from_digraph(cls, d: Digraph) -> "RootedTree":
        if d.n == 0:
            raise ValueError("A rooted tree needs at least one vertex")

        roots = [v for v in d.vertices() if d.in_degree(v) == 0]
        if len(roots) != 1:
            raise ValueError(f"Not a rooted tree: {len(roots)} vertices of in-degree 0")
        if any(d.in_degree(v) > 1 for v in d.vertices()):
            raise ValueError("Not a rooted tree: some vertex has in-degree above 1")

        root = roots[0]
        parents: List[Optional[int]] = [None] * d.n
        depths = [-1] * d.n
        depths[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(d._out[u]):
                parents[w] = u
                depths[w] = depths[u] + 1
                queue.append(w)

        if min(depths) < 0:
            raise ValueError("Not a rooted tree: not every vertex is reachable from the root")

        return cls(d, root, tuple(parents), tuple(depths))

    @classmethod
    def from_parents(cls, parents: Sequence[Optional[int]]) -> "RootedTree":
        arcs = [(p, v) for v, p in enumerate(parents) if p is not None]
        return cls.from_digraph(Digraph.from_arcs(len(parents), arcs))

    @property
    def n(self) -> int:
        return self.digraph.n

    @property
    def height(self) -> int:
        return max(self.depths)

    def parent(self, v: int) -> Optional[int]:
        return self.parents[v]

    def children(self, v: int) -> FrozenSet[int]:
        return self.digraph._out[v]

    def depth(self, v: int) -> int:
        return self.depths[v]

    def leaves(self) -> FrozenSet[int]:
        return frozenset(v for v in self.digraph.vertices() if self.digraph.out_degree(v) == 0)

    def supports(self) -> FrozenSet[int]:
        return frozenset(self.parents[v] for v in self.leaves() if self.parents[v] is not None)


@dataclass(frozen=True)
class Classification:
    connected: bool
    directed_tree: bool
    contrafunctional: bool
    tournament: bool
    rooted_tree: Optional[RootedTree] = None

    @property
    def is_rooted_tree(self) -> bool:
        return self.rooted_tree is not None

    def as_dict(self) -> Dict[str, Union[bool, int, None]]:
        return {
            "connected": self.connected,
            "rooted_tree": self.is_rooted_tree,
            "root": None if self.rooted_tree is None else self.rooted_tree.root,
            "directed_tree": self.directed_tree,
            "contrafunctional": self.contrafunctional,
            "tournament": self.tournament,
        }


def _check_vertex(d: Digraph, v: int) -> None:
    if not (0 <= v < d.n):
        raise IndexError(f"Vertex {v} is outside [0, {d.n})")


def in_neighbors(d: Digraph, v: int, closed: bool = False) -> VertexSet:
    """
    :param d:
    :param v:
    :param closed: Include v itself, i.e. N-[v] rather than N-(v).
    :return: In-neighbourhood of v.
    """

    _check_vertex(d, v)
    return d._in[v] | {v} if closed else d._in[v]


def out_neighbors(d: Digraph, v: int, closed: bool = False) -> VertexSet:
    _check_vertex(d, v)
    return d._out[v] | {v} if closed else d._out[v]


def underlying_neighbors(d: Digraph, v: int) -> VertexSet:
    _check_vertex(d, v)
    return d._out[v] | d._in[v]


def adjacency_matrix(d: Digraph) -> npt.NDArray[np.bool_]:
    matrix = np.zeros((d.n, d.n), dtype=bool)
    if d.arcs:
        tails, heads = zip(*d.arcs)
        matrix[list(tails), list(heads)] = True
    return matrix


def degree_stats(d: Digraph) -> DegreeStats:
    """
    Degree parameters used by the packing lower bound.

    Underlying degrees count distinct neighbours, so a pair of opposite arcs is one edge.
    delta_star is the minimum in-degree over the vertices of minimum underlying degree.
    """

    if d.n < 1:
        raise ValueError("Degree statistics need at least one vertex")

    matrix = adjacency_matrix(d)
    out_degrees = matrix.sum(axis=1)
    in_degrees = matrix.sum(axis=0)
    underlying = (matrix | matrix.T).sum(axis=1)

    min_underlying = int(underlying.min())
    delta_star = int(in_degrees[underlying == min_underlying].min())

    return DegreeStats(max_out=int(out_degrees.max()),
                       max_in=int(in_degrees.max()),
                       min_underlying=min_underlying,
                       max_underlying=int(underlying.max()),
                       delta_star=delta_star)


def arc_cut(d: Digraph, a: Iterable[int], b: Iterable[int]) -> int:
    """
    :return: |(A, B)_D|, the number of arcs with tail in a and head in b.
    """

    a, b = frozenset(a), frozenset(b)
    for v in a | b:
        _check_vertex(d, v)
    return sum(1 for u, v in d.arcs if u in a and v in b)


def is_symmetric(d: Digraph) -> bool:
    return all((v, u) in d.arcs for u, v in d.arcs)


def classify(d: Digraph) -> Classification:
    """
    Independent structural flags; a rooted tree also gets its RootedTree attached.
    """

    if d.n < 1:
        raise ValueError("Classification needs at least one vertex")

    edges = {(min(u, v), max(u, v)) for u, v in d.arcs}
    components = UnionFind(d.vertices())
    acyclic = True
    for u, v in sorted(edges):
        if components[u] == components[v]:
            acyclic = False
        else:
            components.union(u, v)
    connected = len({components[v] for v in d.vertices()}) == 1

    has_opposite_pair = len(edges) != len(d.arcs)
    directed_tree = connected and acyclic and not has_opposite_pair
    contrafunctional = all(d.in_degree(v) == 1 for v in d.vertices())
    tournament = not has_opposite_pair and len(edges) == d.n * (d.n - 1) // 2

    rooted_tree = None
    if directed_tree and sum(1 for v in d.vertices() if d.in_degree(v) == 0) == 1:
        rooted_tree = RootedTree.from_digraph(d)

    assert not (rooted_tree is not None and contrafunctional)

    return Classification(connected=connected,
                          directed_tree=directed_tree,
                          contrafunctional=contrafunctional,
                          tournament=tournament,
                          rooted_tree=rooted_tree)


def bfs_order(t: RootedTree) -> List[int]:
    """
    Level order from the root, ascending vertex id within a level.
    """

    order = sorted(t.digraph.vertices(), key=lambda v: (t.depths[v], v))
    assert order[0] == t.root
    return order


def induced_subdigraph(d: Digraph, vertices: Iterable[int]) -> Tuple[Digraph, Tuple[int, ...]]:
    """
    :return: The induced subdigraph relabelled to 0..k-1 in ascending id order, and the
        map from new ids back to ids of d.
    """

    kept = tuple(sorted(set(vertices)))
    for v in kept:
        _check_vertex(d, v)
    new_id = {v: i for i, v in enumerate(kept)}
    arcs = [(new_id[u], new_id[v]) for u, v in d.arcs if u in new_id and v in new_id]
    return Digraph.from_arcs(len(kept), arcs), kept


def to_networkx(d: Digraph, underlying: bool = False) -> Union[nx.Graph, nx.DiGraph]:
    g = nx.Graph() if underlying else nx.DiGraph()
    g.add_nodes_from(d.vertices())
    g.add_edges_from(d.sorted_arcs())
    return g


def _is_decimal(field: str) -> bool:
    # str.isdigit also accepts non-ASCII digits such as superscripts
    return field.isascii() and field.isdigit()


def parse_digraph(text: str) -> Digraph:
    """
    Parse the edge-list format: first data line is n, then one "u v" arc per line.
    Blank lines and '#' comments are ignored.

    :param text:
    :return:
    """

    n = None
    arcs: List[Arc] = []
    seen = set()
    for line_number, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        fields = line.split()
        if n is None:
            if len(fields) != 1 or not _is_decimal(fields[0]):
                raise DigraphParseError(line_number, f"expected vertex count, got {raw!r}")
            n = int(fields[0])
            continue

        if len(fields) != 2 or not all(map(_is_decimal, fields)):
            raise DigraphParseError(line_number, f"expected 'u v', got {raw!r}")
        u, v = int(fields[0]), int(fields[1])
        if u >= n or v >= n:
            raise DigraphParseError(line_number, f"endpoint out of range [0, {n}) in arc ({u}, {v})")
        if u == v:
            raise DigraphParseError(line_number, f"loop at vertex {u}")
        if (u, v) in seen:
            raise DigraphParseError(line_number, f"duplicate arc ({u}, {v})")
        seen.add((u, v))
        arcs.append((u, v))

    if n is None:
        raise DigraphParseError(1, "missing vertex count")

    return Digraph.from_arcs(n, arcs)


def format_digraph(d: Digraph, comments: Sequence[str] = ()) -> str:
    """
    Canonical edge-list text: comment lines, n, then arcs sorted lexicographically.
    """

    lines = [f"# {c}" for c in comments]
    lines.append(str(d.n))
    lines.extend(f"{u} {v}" for u, v in d.sorted_arcs())
    return "\n".join(lines) + "\n"


def read_digraph(path: Union[str, Path]) -> Digraph:
    return parse_digraph(Path(path).read_text(encoding="utf-8"))


def write_digraph(d: Digraph, path: Union[str, Path], comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_digraph(d, comments), encoding="utf-8", newline="\n")
