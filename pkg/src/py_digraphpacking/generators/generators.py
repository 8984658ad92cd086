import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..digraph import Digraph, RootedTree, classify
from ..utilities import VertexSet


class Family(Enum):
    STAR = "star"
    PATH = "path"
    CYCLE = "cycle"
    TOURNAMENT = "tournament"
    ROOTED_TREE = "rooted_tree"
    DIRECTED_TREE = "directed_tree"
    CONTRAFUNCTIONAL = "contrafunctional"
    THETA = "theta"
    SIGMA = "sigma"
    SLATER_TREE = "slater_tree"
    PHI_MEMBER = "phi_member"
    BINARY_TREE = "binary_tree"
    RANDOM = "random"


@dataclass(frozen=True)
class GeneratedInstance:
    """
    A constructed digraph with the parameter values its construction guarantees.

    `expected` only holds values the construction certifies; `statements` says why, keyed like
    `expected`; `witness` is the structural set behind the certificate, when there is one.
    """

    digraph: Digraph
    family: Family
    expected: Dict[str, int] = field(default_factory=dict)
    statements: Dict[str, str] = field(default_factory=dict)
    seed: Optional[int] = None
    witness: Optional[VertexSet] = None


def _rng(seed: Optional[int]) -> np.random.Generator:
    return np.random.default_rng(None if seed is None else seed % (1 << 64))


def _random_parents(n: int, rng: np.random.Generator) -> List[Optional[int]]:
    # Each non-root vertex picks a parent among the earlier vertices uniformly.
    return [None] + [int(rng.integers(0, i)) for i in range(1, n)]


def _relabel(parents: Sequence[Optional[int]], rng: np.random.Generator) -> List[Tuple[int, int]]:
    labels = rng.permutation(len(parents))
    return [(int(labels[p]), int(labels[v])) for v, p in enumerate(parents) if p is not None]


def directed_star(n: int) -> GeneratedInstance:
    if n < 1:
        raise ValueError(f"A directed star needs n >= 1, got {n}")

    d = Digraph.from_arcs(n, [(0, v) for v in range(1, n)])
    expected = {"rho": 1, "gamma": 1, "rho_lower_bound": 1}
    statements = {"rho": "two leaves share the root as in-neighbour",
                  "gamma": "the root dominates every leaf",
                  "rho_lower_bound": "the packing lower bound is sharp on directed stars"}
    if n >= 2:
        expected.update({"gamma_t": 2, "slater": 2})
        statements.update({"gamma_t": "the root and one leaf",
                           "slater": "floor(2/2) + (n-1) + 1 >= n while one vertex is not enough"})
    return GeneratedInstance(d, Family.STAR, expected, statements)


def directed_path(n: int) -> GeneratedInstance:
    if n < 1:
        raise ValueError(f"A directed path needs n >= 1, got {n}")

    d = Digraph.from_arcs(n, [(v, v + 1) for v in range(n - 1)])
    value = math.ceil(n / 2)
    return GeneratedInstance(d, Family.PATH, {"rho": value, "gamma": value},
                             {"rho": "every other vertex from the end",
                              "gamma": "each vertex dominates itself and its successor"})


def directed_cycle(n: int) -> GeneratedInstance:
    if n < 3:
        raise ValueError(f"A directed cycle needs n >= 3, got {n}")

    d = Digraph.from_arcs(n, [(v, (v + 1) % n) for v in range(n)])
    return GeneratedInstance(d, Family.CYCLE,
                             {"rho": n // 2, "gamma": math.ceil(n / 2), "gamma_o": n},
                             {"rho": "closed out-neighbourhoods are consecutive pairs",
                              "gamma": "each vertex dominates itself and its successor",
                              "gamma_o": "every vertex needs its only in-neighbour"})


def random_rooted_tree(n: int, seed: Optional[int] = None) -> GeneratedInstance:
    if n < 1:
        raise ValueError(f"A rooted tree needs n >= 1, got {n}")

    rng = _rng(seed)
    d = Digraph.from_arcs(n, _relabel(_random_parents(n, rng), rng))
    return GeneratedInstance(d, Family.ROOTED_TREE, seed=seed)


def random_directed_tree(n: int, seed: Optional[int] = None) -> GeneratedInstance:
    if n < 1:
        raise ValueError(f"A directed tree needs n >= 1, got {n}")

    rng = _rng(seed)
    arcs = []
    for u, v in _relabel(_random_parents(n, rng), rng):
        arcs.append((u, v) if rng.integers(0, 2) == 0 else (v, u))
    return GeneratedInstance(Digraph.from_arcs(n, arcs), Family.DIRECTED_TREE, seed=seed)


def random_tournament(n: int, seed: Optional[int] = None) -> GeneratedInstance:
    if n < 1:
        raise ValueError(f"A tournament needs n >= 1, got {n}")

    rng = _rng(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if rng.integers(0, 2) == 0 else (v, u))
    return GeneratedInstance(Digraph.from_arcs(n, arcs), Family.TOURNAMENT,
                             {"rho": 1}, {"rho": "any two vertices are joined by an arc"}, seed=seed)


def random_contrafunctional(n: int, seed: Optional[int] = None) -> GeneratedInstance:
    """
    A random rooted tree closed into a connected contrafunctional digraph by one arc back to
    the root from a vertex at depth at least two, so the cycle has length at least three.
    """

    if n < 3:
        raise ValueError(f"A contrafunctional digraph with a simple cycle needs n >= 3, got {n}")

    rng = _rng(seed)
    parents = _random_parents(n, rng)
    depth = [0] * n
    for v in range(1, n):
        depth[v] = depth[parents[v]] + 1
    if max(depth) < 2:
        # Star shaped: hang the last vertex below vertex 1 instead.
        parents[n - 1] = 1
        depth[n - 1] = 2

    deep = [v for v in range(n) if depth[v] >= 2]
    closing = deep[int(rng.integers(0, len(deep)))]

    labels = rng.permutation(n)
    arcs = [(int(labels[p]), int(labels[v])) for v, p in enumerate(parents) if p is not None]
    arcs.append((int(labels[closing]), int(labels[0])))
    return GeneratedInstance(Digraph.from_arcs(n, arcs), Family.CONTRAFUNCTIONAL, seed=seed)


def random_height_one_contrafunctional(n: int, seed: Optional[int] = None) -> GeneratedInstance:
    """
    A directed cycle on at least three vertices with at least one pendant leaf hung from random
    cycle vertices, relabelled at random.
    """

    if n < 4:
        raise ValueError(f"A height-one contrafunctional digraph needs n >= 4, got {n}")

    rng = _rng(seed)
    m = int(rng.integers(3, n))
    arcs = [(v, (v + 1) % m) for v in range(m)]
    arcs.extend((int(rng.integers(0, m)), w) for w in range(m, n))

    labels = rng.permutation(n)
    arcs = [(int(labels[u]), int(labels[v])) for u, v in arcs]
    return GeneratedInstance(Digraph.from_arcs(n, arcs), Family.CONTRAFUNCTIONAL, seed=seed)


def random_digraph(n: int, density: float, seed: Optional[int] = None) -> GeneratedInstance:
    if n < 1:
        raise ValueError(f"A digraph needs n >= 1, got {n}")
    if not (0.0 <= density <= 1.0):
        raise ValueError(f"Arc density must lie in [0, 1], got {density}")

    rng = _rng(seed)
    chosen = rng.random((n, n)) < density
    np.fill_diagonal(chosen, False)
    arcs = [(int(u), int(v)) for u, v in zip(*np.nonzero(chosen))]
    return GeneratedInstance(Digraph.from_arcs(n, arcs), Family.RANDOM, seed=seed)


def random_binary_tree(internal: int, seed: Optional[int] = None) -> GeneratedInstance:
    """
    Rooted tree in which every vertex has zero or two children, grown by splitting a random
    leaf `internal` times.
    """

    if internal < 0:
        raise ValueError(f"Number of internal vertices must be non-negative, got {internal}")

    rng = _rng(seed)
    parents: List[Optional[int]] = [None]
    leaves = [0]
    for _ in range(internal):
        split = leaves.pop(int(rng.integers(0, len(leaves))))
        for _ in range(2):
            parents.append(split)
            leaves.append(len(parents) - 1)
    return GeneratedInstance(Digraph.from_arcs(len(parents), _relabel(parents, rng)),
                             Family.BINARY_TREE, seed=seed)


def phi_member(m: int, seed: Optional[int] = None) -> GeneratedInstance:
    """
    A random rooted tree on m vertices with one pendant leaf added below every vertex. Each
    vertex and its pendant leaf form a directed star S2, so rho = gamma = m = n/2.
    """

    if m < 1:
        raise ValueError(f"Need m >= 1, got {m}")

    rng = _rng(seed)
    parents = _random_parents(m, rng) + list(range(m))
    d = Digraph.from_arcs(2 * m, _relabel(parents, rng))
    return GeneratedInstance(d, Family.PHI_MEMBER, {"rho": m, "gamma": m},
                             {"rho": "one pendant leaf per vertex is a packing",
                              "gamma": "every pendant leaf needs itself or its own support"},
                             seed=seed)


def enumerate_rooted_trees(n: int) -> Iterator[RootedTree]:
    """
    Every parent array with parent[i] < i. Each rooted tree shape of order n appears at
    least once (label it in BFS order).
    """

    if n < 1:
        raise ValueError(f"Need n >= 1, got {n}")

    for choice in product(*(range(i) for i in range(1, n))):
        yield RootedTree.from_parents((None,) + choice)


def _extra_arcs(n: int, sources: Sequence[int], budget: int, rng: np.random.Generator) -> List[Tuple[int, int]]:
    # Every source starts with out-degree 0, so at most `budget` new heads keeps it in bounds.
    arcs = []
    for x in sources:
        count = int(rng.integers(0, budget + 1))
        heads = [v for v in range(n) if v != x]
        for v in rng.choice(heads, size=min(count, len(heads)), replace=False):
            arcs.append((x, int(v)))
    return arcs


def theta_instance(r: int, k: int, extra_arcs: bool = False, seed: Optional[int] = None) -> GeneratedInstance:
    """
    Digraph with total domination number exactly 2n/(2*maxout+1).

    r disjoint arcs (u_i, v_i) (ids 2i, 2i+1); each u_i gets k private out-neighbours and each
    v_i gets k+1. With extra_arcs, each private vertex gets up to k+1 random out-arcs, which
    keeps the maximum out-degree at k+1 and each private vertex's single in-neighbour among
    the u_i, v_i.

    :param r: Number of core arcs, at least 1.
    :param k: At least 0.
    :param extra_arcs:
    :param seed: Used only with extra_arcs.
    :return:
    """

    if r < 1 or k < 0:
        raise ValueError(f"Need r >= 1 and k >= 0, got r={r}, k={k}")

    arcs = []
    next_id = 2 * r
    for i in range(r):
        u, v = 2 * i, 2 * i + 1
        arcs.append((u, v))
        for owner, count in ((u, k), (v, k + 1)):
            for w in range(next_id, next_id + count):
                arcs.append((owner, w))
            next_id += count

    n = next_id
    assert n == r * (2 * k + 3)
    if extra_arcs:
        arcs.extend(_extra_arcs(n, range(2 * r, n), k + 1, _rng(seed)))

    d = Digraph.from_arcs(n, arcs)
    assert max(d.out_degree(v) for v in d.vertices()) == k + 1
    return GeneratedInstance(d, Family.THETA, {"gamma_t": 2 * r},
                             {"gamma_t": "the core arcs form a total dominating set meeting "
                                         "the lower bound 2n/(2*maxout+1)"},
                             seed=seed if extra_arcs else None,
                             witness=frozenset(range(2 * r)))


def sigma_instance(base: Digraph, k: int, extra_arcs: bool = False,
                   seed: Optional[int] = None) -> GeneratedInstance:
    """
    Digraph with open domination number exactly n/maxout, grown from a connected
    contrafunctional base by topping every base vertex up to out-degree k with private
    out-neighbours. The base keeps its ids; new vertices follow.
    """

    classification = classify(base)
    if not (classification.connected and classification.contrafunctional):
        raise ValueError("The base must be a connected contrafunctional digraph")
    base_max_out = max(base.out_degree(v) for v in base.vertices())
    if k < base_max_out:
        raise ValueError(f"Need k >= maximum out-degree of the base ({base_max_out}), got {k}")

    arcs = list(base.arcs)
    next_id = base.n
    for v in base.vertices():
        for w in range(next_id, next_id + k - base.out_degree(v)):
            arcs.append((v, w))
        next_id += k - base.out_degree(v)

    n = next_id
    assert n == base.n * k
    if extra_arcs:
        arcs.extend(_extra_arcs(n, range(base.n, n), k, _rng(seed)))

    d = Digraph.from_arcs(n, arcs)
    logging.debug(f"Built a sigma instance of order {n} from a base of order {base.n}")
    return GeneratedInstance(d, Family.SIGMA, {"gamma_o": base.n},
                             {"gamma_o": "the base vertices form an open dominating set meeting "
                                         "the lower bound n/maxout"},
                             seed=seed if extra_arcs else None,
                             witness=frozenset(base.vertices()))


def slater_realization_tree(a: int, b: int) -> GeneratedInstance:
    """
    Rooted tree with out-Slater number a and total domination number a + b.

    A directed path on a vertices (ids 0..a-1), 2a leaves below each path vertex, and for the
    first b path vertices one pendant arc subdivided by a new vertex. Exactly b subdivisions
    give the order 2a^2 + a + b.

    :param a: At least 2.
    :param b: 0 <= b <= floor(a/2) - 1.
    :return:
    """

    if a < 2:
        raise ValueError(f"Need a >= 2, got {a}")
    if not (0 <= b <= a // 2 - 1):
        raise ValueError(f"Need 0 <= b <= floor(a/2) - 1 = {a // 2 - 1}, got {b}")

    arcs = [(i, i + 1) for i in range(a - 1)]
    next_id = a
    first_leaf = {}
    for i in range(a):
        first_leaf[i] = next_id
        for leaf in range(next_id, next_id + 2 * a):
            arcs.append((i, leaf))
        next_id += 2 * a

    subdivisions = []
    for i in range(b):
        w = next_id
        next_id += 1
        arcs.remove((i, first_leaf[i]))
        arcs.extend([(i, w), (w, first_leaf[i])])
        subdivisions.append(w)

    n = next_id
    assert n == 2 * a * a + a + b
    d = Digraph.from_arcs(n, arcs)
    return GeneratedInstance(d, Family.SLATER_TREE, {"gamma_t": a + b, "slater": a},
                             {"gamma_t": "path vertices plus subdivision vertices",
                              "slater": "the a path vertices carry the a largest out-degrees"},
                             witness=frozenset(list(range(a)) + subdivisions))
