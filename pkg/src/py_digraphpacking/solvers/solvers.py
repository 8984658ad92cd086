import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from ..digraph import Digraph, DegreeStats, arc_cut, classify, degree_stats, is_symmetric, to_networkx
from ..utilities import VertexSet, check_guard, from_mask, iter_bits, to_mask

Solution = Tuple[int, VertexSet]

PARAMETERS = ("rho", "gamma", "gamma_t", "gamma_o", "slater", "bounds")


@dataclass(frozen=True)
class ParameterValue:
    """A computed parameter; value and witness are None when the parameter is undefined."""

    value: Optional[int]
    witness: Optional[VertexSet] = None
    reason: Optional[str] = None

    @property
    def defined(self) -> bool:
        return self.value is not None


@dataclass
class ParameterReport:
    stats: DegreeStats
    rho: Optional[ParameterValue] = None
    gamma: Optional[ParameterValue] = None
    gamma_t: Optional[ParameterValue] = None
    gamma_o: Optional[ParameterValue] = None
    slater_out: Optional[ParameterValue] = None
    rho_lower_bound: Optional[Fraction] = None
    gamma_t_lower_bound: Optional[Fraction] = None
    gamma_o_lower_bound: Optional[Fraction] = None
    classification: Dict[str, object] = field(default_factory=dict)

    def check_relations(self) -> None:
        """Assert the inequalities that must hold between the computed parameters."""

        if self.rho and self.gamma:
            assert self.rho.value <= self.gamma.value
        if self.gamma and self.gamma_t and self.gamma_t.defined:
            assert self.gamma.value <= self.gamma_t.value <= 2 * self.gamma.value
        if self.gamma_t and self.gamma_t.defined and self.slater_out and self.slater_out.defined:
            assert self.gamma_t.value >= self.slater_out.value
        if self.rho and self.rho_lower_bound is not None:
            assert self.rho.value >= self.rho_lower_bound


def _members(d: Digraph, s: Iterable[int]) -> FrozenSet[int]:
    members = frozenset(s)
    for v in members:
        if not (0 <= v < d.n):
            raise IndexError(f"Vertex {v} is outside [0, {d.n})")
    return members


def _closed_out_masks(d: Digraph) -> List[int]:
    return [d.out_masks[v] | (1 << v) for v in d.vertices()]


def _closed_in_masks(d: Digraph) -> List[int]:
    return [d.in_masks[v] | (1 << v) for v in d.vertices()]


def _underlying_masks(d: Digraph) -> List[int]:
    return [d.out_masks[v] | d.in_masks[v] for v in d.vertices()]


def _full_mask(d: Digraph) -> int:
    return (1 << d.n) - 1


def _dominated_by(masks: List[int], s_mask: int) -> int:
    covered = 0
    for v in iter_bits(s_mask):
        covered |= masks[v]
    return covered


def is_packing_by_in_neighborhoods(d: Digraph, b: Iterable[int]) -> bool:
    """
    Pairwise form: N-[u] and N-[v] are disjoint for every two distinct members of b.
    """

    members = sorted(_members(d, b))
    closed_in = _closed_in_masks(d)
    return all(closed_in[u] & closed_in[v] == 0 for u, v in combinations(members, 2))


def is_packing(d: Digraph, b: Iterable[int]) -> bool:
    """
    :return: True iff every closed out-neighbourhood N+[v] meets b at most once.
    """

    members = _members(d, b)
    b_mask = to_mask(members)
    result = all((closed & b_mask).bit_count() <= 1 for closed in _closed_out_masks(d))

    assert result == is_packing_by_in_neighborhoods(d, members)
    return result


def is_dominating(d: Digraph, s: Iterable[int]) -> bool:
    s_mask = to_mask(_members(d, s))
    return _dominated_by(_closed_out_masks(d), s_mask) == _full_mask(d)


def is_total_dominating(d: Digraph, s: Iterable[int]) -> bool:
    """
    Dominating, and the subdigraph induced by s has no isolated vertex.
    """

    members = _members(d, s)
    if not is_dominating(d, members):
        return False
    s_mask = to_mask(members)
    underlying = _underlying_masks(d)
    return all(underlying[v] & s_mask for v in members)


def is_open_dominating(d: Digraph, s: Iterable[int]) -> bool:
    s_mask = to_mask(_members(d, s))
    return _dominated_by(list(d.out_masks), s_mask) == _full_mask(d)


def _minimum_subset(d: Digraph, feasible: Callable[[int], bool], forced: FrozenSet[int]) -> Solution:
    """
    Lexicographically least minimum-cardinality subset passing `feasible`, searched among the
    supersets of `forced`. Adding the same forced vertices to two candidates does not change
    their lexicographic order, so the restriction keeps the tie-break intact.
    """

    base = to_mask(forced)
    rest = [v for v in d.vertices() if v not in forced]
    for k in range(len(forced), d.n + 1):
        for extra in combinations(rest, k - len(forced)):
            s_mask = base | to_mask(extra)
            if feasible(s_mask):
                return k, from_mask(s_mask)
    raise AssertionError("No feasible subset although the full vertex set was tried")


def _first_packing(closed_in: List[int], n: int, k: int) -> Optional[List[int]]:
    # Packings are closed under taking subsets, so a prefix that fails prunes every extension.
    chosen: List[int] = []

    def extend(start: int, used: int) -> bool:
        if len(chosen) == k:
            return True
        for v in range(start, n - (k - len(chosen)) + 1):
            if closed_in[v] & used == 0:
                chosen.append(v)
                if extend(v + 1, used | closed_in[v]):
                    return True
                chosen.pop()
        return False

    return list(chosen) if extend(0, 0) else None


def rho_exact(d: Digraph, guard: Optional[int] = None) -> Solution:
    """
    Packing number by exhaustive search.

    :param d:
    :param guard: Largest order accepted, defaults to get_enumeration_guard().
    :return: (rho, lexicographically least maximum packing)
    """

    check_guard(d.n, guard)
    closed_in = _closed_in_masks(d)

    best: List[int] = []
    for k in range(1, d.n + 1):
        found = _first_packing(closed_in, d.n, k)
        if found is None:
            break
        best = found

    witness = frozenset(best)
    assert is_packing(d, witness)
    return len(best), witness


def gamma_exact(d: Digraph, guard: Optional[int] = None) -> Solution:
    check_guard(d.n, guard)
    closed_out = _closed_out_masks(d)
    full = _full_mask(d)
    sources = frozenset(v for v in d.vertices() if d.in_degree(v) == 0)

    value, witness = _minimum_subset(d, lambda m: _dominated_by(closed_out, m) == full, sources)
    assert is_dominating(d, witness)
    return value, witness


def gamma_t_exact(d: Digraph, guard: Optional[int] = None) -> Optional[Solution]:
    """
    Total domination number by exhaustive search.

    :return: None when the underlying graph has an isolated vertex (no total dominating set).
    """

    check_guard(d.n, guard)
    underlying = _underlying_masks(d)
    if d.n == 0 or any(mask == 0 for mask in underlying):
        return None

    closed_out = _closed_out_masks(d)
    full = _full_mask(d)
    sources = frozenset(v for v in d.vertices() if d.in_degree(v) == 0)

    def feasible(s_mask: int) -> bool:
        if _dominated_by(closed_out, s_mask) != full:
            return False
        return all(underlying[v] & s_mask for v in iter_bits(s_mask))

    value, witness = _minimum_subset(d, feasible, sources)
    assert is_total_dominating(d, witness)
    return value, witness


def gamma_o_exact(d: Digraph, guard: Optional[int] = None) -> Optional[Solution]:
    """
    Open domination number by exhaustive search.

    :return: None when some vertex has in-degree 0.
    """

    check_guard(d.n, guard)
    if d.n == 0 or any(d.in_degree(v) == 0 for v in d.vertices()):
        return None

    full = _full_mask(d)
    out_masks = list(d.out_masks)
    # A vertex with a single in-neighbour can only be dominated by that neighbour.
    forced = frozenset(d.in_masks[v].bit_length() - 1 for v in d.vertices() if d.in_degree(v) == 1)

    value, witness = _minimum_subset(d, lambda m: _dominated_by(out_masks, m) == full, forced)
    assert is_open_dominating(d, witness)
    return value, witness


def _undirected_view(g: Digraph) -> nx.Graph:
    if not is_symmetric(g):
        raise ValueError("Expected a symmetric digraph (every arc paired with its opposite)")
    return to_networkx(g, underlying=True)


def undirected_gamma_exact(g: Digraph, guard: Optional[int] = None) -> int:
    """
    Domination number of the undirected graph stored as a symmetric digraph. Independent of
    the directed solvers: candidates are checked with networkx.is_dominating_set.
    """

    graph = _undirected_view(g)
    check_guard(g.n, guard)
    if g.n == 0:
        return 0

    nodes = sorted(graph.nodes)
    for k in range(1, g.n + 1):
        for candidate in combinations(nodes, k):
            if nx.is_dominating_set(graph, candidate):
                return k
    raise AssertionError("The full vertex set always dominates")


def undirected_rho_exact(g: Digraph, guard: Optional[int] = None) -> int:
    """
    2-packing number of the undirected graph stored as a symmetric digraph: the largest set
    whose closed neighbourhoods are pairwise disjoint.
    """

    graph = _undirected_view(g)
    check_guard(g.n, guard)
    closed = {v: set(graph[v]) | {v} for v in graph.nodes}
    nodes = sorted(graph.nodes)

    best = 0
    for k in range(1, g.n + 1):
        if not any(all(closed[u].isdisjoint(closed[v]) for u, v in combinations(candidate, 2))
                   for candidate in combinations(nodes, k)):
            break
        best = k
    return best


def slater_out(d: Digraph) -> Optional[int]:
    """
    Out-Slater number: min k with floor(k/2) + (sum of the k largest out-degrees) >= n.

    :return: None if no k <= n satisfies the inequality.
    """

    if d.n < 1:
        raise ValueError("Out-Slater number needs at least one vertex")

    degrees = sorted((d.out_degree(v) for v in d.vertices()), reverse=True)
    total = 0
    for k in range(1, d.n + 1):
        total += degrees[k - 1]
        if k // 2 + total >= d.n:
            return k
    return None


def rho_lower_bound(d: Digraph) -> Fraction:
    """
    (n + D - d + (D+ - 1)(D- - d*)) / (1 + D + D-(D+ - 1)), with D, d the maximum and minimum
    underlying degree, D+, D- the maximum out- and in-degree and d* the minimum in-degree among
    vertices of minimum degree.
    """

    stats = degree_stats(d)
    numerator = (d.n + stats.max_underlying - stats.min_underlying
                 + (stats.max_out - 1) * (stats.max_in - stats.delta_star))
    denominator = 1 + stats.max_underlying + stats.max_in * (stats.max_out - 1)
    return Fraction(numerator, denominator)


def gamma_t_lower_bound(d: Digraph) -> Fraction:
    stats = degree_stats(d)
    return Fraction(2 * d.n, 2 * stats.max_out + 1)


def gamma_o_lower_bound(d: Digraph) -> Optional[Fraction]:
    stats = degree_stats(d)
    if stats.max_out == 0:
        return None
    return Fraction(d.n, stats.max_out)


def greedy_packing(d: Digraph) -> VertexSet:
    """
    Constructive packing behind the lower bound: take a vertex u of minimum underlying degree
    (minimum in-degree among those, then lowest id) in what remains, then delete u, its
    neighbours and every out-neighbour of its in-neighbours. Neighbourhoods are taken in d,
    so vertices deleted earlier still block later choices.

    :param d:
    :return: A packing of size at least rho_lower_bound(d).
    """

    if d.n < 1:
        raise ValueError("Greedy packing needs at least one vertex")

    underlying = _underlying_masks(d)
    remaining = _full_mask(d)
    chosen = []
    while remaining:
        u = min(iter_bits(remaining),
                key=lambda v: ((underlying[v] & remaining).bit_count(),
                               (d.in_masks[v] & remaining).bit_count(),
                               v))
        chosen.append(u)

        removed = underlying[u] | (1 << u)
        for w in iter_bits(d.in_masks[u]):
            removed |= d.out_masks[w]
        remaining &= ~removed

    packing = frozenset(chosen)
    assert is_packing(d, packing)
    assert len(packing) >= rho_lower_bound(d)
    return packing


def theta_structure(d: Digraph, s: Iterable[int]) -> bool:
    """
    Structure forced by equality in the total domination lower bound: s induces disjoint
    single arcs, every vertex outside s has exactly one in-neighbour in s, and every member of
    s has maximum out-degree.
    """

    members = _members(d, s)
    if not members:
        return False
    max_out = max(d.out_degree(v) for v in d.vertices())
    s_mask = to_mask(members)
    underlying = _underlying_masks(d)

    if any((underlying[v] & s_mask).bit_count() != 1 for v in members):
        return False
    if any(d.out_degree(v) != max_out for v in members):
        return False
    if arc_cut(d, members, members) * 2 != len(members):
        return False
    return all((d.in_masks[v] & s_mask).bit_count() == 1 for v in d.vertices() if v not in members)


def sigma_structure(d: Digraph, s: Iterable[int]) -> bool:
    """
    Structure forced by equality in the open domination lower bound: every vertex of the
    digraph (members of s included) has exactly one in-neighbour in s, and every member of s
    has maximum out-degree.
    """

    members = _members(d, s)
    if not members:
        return False
    max_out = max(d.out_degree(v) for v in d.vertices())
    s_mask = to_mask(members)

    if any(d.out_degree(v) != max_out for v in members):
        return False
    return all((d.in_masks[v] & s_mask).bit_count() == 1 for v in d.vertices())


def _value_of(solution: Optional[Solution], reason: Optional[str] = None) -> ParameterValue:
    if solution is None:
        return ParameterValue(value=None, reason=reason)
    return ParameterValue(value=solution[0], witness=solution[1])


def compute_parameters(d: Digraph, params: Iterable[str] = PARAMETERS,
                       guard: Optional[int] = None) -> ParameterReport:
    """
    Evaluate the requested parameters.

    :param d:
    :param params: Subset of PARAMETERS.
    :param guard: Enumeration guard for the exact solvers.
    :return:
    """

    params = set(params)
    unknown = params - set(PARAMETERS)
    if unknown:
        raise ValueError(f"Unknown parameters: {', '.join(sorted(unknown))}")

    report = ParameterReport(stats=degree_stats(d), classification=classify(d).as_dict())

    if "rho" in params:
        report.rho = _value_of(rho_exact(d, guard=guard))
    if "gamma" in params:
        report.gamma = _value_of(gamma_exact(d, guard=guard))
    if "gamma_t" in params:
        report.gamma_t = _value_of(gamma_t_exact(d, guard=guard),
                                   "underlying graph has an isolated vertex")
    if "gamma_o" in params:
        report.gamma_o = _value_of(gamma_o_exact(d, guard=guard), "δ⁻(D)=0")
    if "slater" in params:
        slater = slater_out(d)
        report.slater_out = ParameterValue(
            value=slater,
            reason=None if slater is not None else "no k <= n satisfies the out-Slater inequality")
    if "bounds" in params:
        report.rho_lower_bound = rho_lower_bound(d)
        report.gamma_t_lower_bound = gamma_t_lower_bound(d)
        report.gamma_o_lower_bound = gamma_o_lower_bound(d)

    report.check_relations()
    logging.debug(f"Computed {sorted(params)} for a digraph of order {d.n}")
    return report
