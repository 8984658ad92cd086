import hashlib
import logging
import math
import multiprocessing
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..chordal import strongly_chordal_desk
from ..contrafunctional import analyze_contrafunctional, height, unique_cycle
from ..digraph import Digraph, RootedTree, classify, format_digraph, parse_digraph
from ..generators import (Family, GeneratedInstance, directed_cycle, directed_star, enumerate_rooted_trees,
                          random_binary_tree, random_contrafunctional, random_digraph, random_directed_tree,
                          random_height_one_contrafunctional, random_rooted_tree, sigma_instance,
                          slater_realization_tree, theta_instance)
from ..solvers import (gamma_exact, gamma_o_exact, gamma_o_lower_bound, gamma_t_exact, gamma_t_lower_bound,
                       greedy_packing, is_packing, is_total_dominating, rho_exact, rho_lower_bound, sigma_structure,
                       slater_out, theta_structure, undirected_gamma_exact, undirected_rho_exact)
from ..transforms import build_split, reduce_support_leaves, remove_arc
from ..trees import (gamma_directed_tree, is_binary_tree, max_packing_rooted_tree,
                     rho_equals_s_test, rho_upper_characterization, t1_bounds)
from ..utilities import get_enumeration_guard

here = Path(__file__).parent

SEED_MASK = (1 << 64) - 1

# (expected, observed) when a property fails on an instance
Failure = Optional[Tuple[str, str]]


@dataclass(frozen=True)
class Counterexample:
    trial: int
    instance: str       # self-contained edge-list text, certificate in its comment lines
    expected: str
    observed: str


@dataclass
class VerificationReport:
    """
    Outcome of checking one property over seeded trials (plus, optionally, every rooted tree
    up to a given order). Everything but `elapsed` is reproducible from the run parameters.
    """

    property_id: str
    trials: int
    passes: int
    counterexamples: List[Counterexample]
    seed: int
    max_n: int
    exhaustive_n: int = 0
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> Dict[str, object]:
        return {"property_id": self.property_id,
                "trials": self.trials,
                "passes": self.passes,
                "failures": len(self.counterexamples),
                "seed": self.seed,
                "max_n": self.max_n,
                "exhaustive_n": self.exhaustive_n,
                "counterexamples": [{"trial": c.trial, "expected": c.expected, "observed": c.observed,
                                     "instance": c.instance} for c in self.counterexamples]}


def property_catalogue() -> pd.DataFrame:
    """
    :return: One row per property, indexed by property_id, with its short id, description, minimum
        order, default trial count, default maximum order and whether exhaustive rooted trees apply.
    """

    catalogue = pd.read_csv(here / "reference_data/properties.csv", index_col="property_id")
    assert set(catalogue.index) == set(_PROPERTIES), "Property catalogue and checks out of step"
    assert catalogue["short_id"].is_unique
    return catalogue


def resolve_property(name: str) -> str:
    """
    :param name: A property_id or a short_id from the catalogue.
    :return: The property_id.
    """

    catalogue = property_catalogue()
    if name in catalogue.index:
        return name
    matches = catalogue.index[catalogue["short_id"] == name]
    if len(matches) == 0:
        raise ValueError(f"Unknown property {name!r}")
    return matches[0]


def trial_seed(seed: int, index: int) -> int:
    """Seed of trial `index`: the base seed xor a 64-bit hash of the index."""

    digest = hashlib.blake2b(index.to_bytes(8, "little"), digest_size=8).digest()
    return (seed ^ int.from_bytes(digest, "little")) & SEED_MASK


def _order_and_seed(seed: int, min_n: int, max_n: int) -> Tuple[np.random.Generator, int, int]:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(min_n, max_n + 1))
    return rng, n, int(rng.integers(0, 1 << 63))


# Samplers: (trial seed, min order, max order) -> instance

def _sample_digraph(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    rng, n, child = _order_and_seed(seed, min_n, max_n)
    return random_digraph(n, float(rng.uniform(0.1, 0.9)), child)


def _sample_directed_tree(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    _, n, child = _order_and_seed(seed, min_n, max_n)
    return random_directed_tree(n, child)


def _sample_rooted_tree(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    _, n, child = _order_and_seed(seed, min_n, max_n)
    return random_rooted_tree(n, child)


def _sample_tree_with_binary(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    rng, n, child = _order_and_seed(seed, min_n, max_n)
    if n >= 3 and rng.integers(0, 4) == 0:
        return random_binary_tree((n - 1) // 2, child)
    return random_rooted_tree(n, child)


def _sample_any_tree(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    rng, n, child = _order_and_seed(seed, min_n, max_n)
    if rng.integers(0, 2) == 0:
        return random_rooted_tree(n, child)
    return random_directed_tree(n, child)


def _sample_contrafunctional(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    _, n, child = _order_and_seed(seed, min_n, max_n)
    return random_contrafunctional(n, child)


def _sample_height_one(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    _, n, child = _order_and_seed(seed, min_n, max_n)
    return random_height_one_contrafunctional(n, child)


def _sample_star_or_digraph(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    rng, n, child = _order_and_seed(seed, min_n, max_n)
    if rng.integers(0, 4) == 0:
        return directed_star(n)
    return random_digraph(n, float(rng.uniform(0.1, 0.9)), child)


def _sample_theta(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    rng, n, child = _order_and_seed(seed, min_n, max_n)
    shapes = [(r, k) for r in (1, 2, 3) for k in (0, 1, 2) if r * (2 * k + 3) <= max_n]
    if shapes and rng.integers(0, 2) == 0:
        r, k = shapes[int(rng.integers(0, len(shapes)))]
        return theta_instance(r, k, extra_arcs=bool(rng.integers(0, 2)), seed=child)
    return random_digraph(n, float(rng.uniform(0.1, 0.9)), child)


def _sigma_bases() -> List[Digraph]:
    c3_pendant = Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    return [directed_cycle(3).digraph, directed_cycle(4).digraph, c3_pendant]


def _sample_sigma(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    rng, n, child = _order_and_seed(seed, min_n, max_n)
    shapes = [(base, k) for base in _sigma_bases()
              for k in range(max(base.out_degree(v) for v in base.vertices()), 4) if base.n * k <= max_n]
    if shapes and rng.integers(0, 2) == 0:
        base, k = shapes[int(rng.integers(0, len(shapes)))]
        return sigma_instance(base, k, extra_arcs=bool(rng.integers(0, 2)), seed=child)
    return random_digraph(n, float(rng.uniform(0.1, 0.9)), child)


def _sample_slater(seed: int, min_n: int, max_n: int) -> GeneratedInstance:
    rng = np.random.default_rng(seed)
    shapes = [(a, b) for a in (2, 3, 4) for b in range(a // 2) if 2 * a * a + a + b <= max_n]
    a, b = shapes[int(rng.integers(0, len(shapes)))]
    return slater_realization_tree(a, b)


# Checks: (instance, guard) -> None when the property holds

def _check_rho_le_gamma(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    rho, _ = rho_exact(d, guard=guard)
    gamma, _ = gamma_exact(d, guard=guard)
    if rho > gamma:
        return "rho <= gamma", f"rho={rho}, gamma={gamma}"
    return None


def _check_split_transform(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    split = build_split(d)
    rho, _ = rho_exact(d, guard=guard)
    gamma, _ = gamma_exact(d, guard=guard)
    split_rho = undirected_rho_exact(split.split_graph, guard=guard)
    split_gamma = undirected_gamma_exact(split.split_graph, guard=guard)
    if (split_rho, split_gamma) != (rho, gamma):
        return f"split graph rho={rho}, gamma={gamma}", f"rho={split_rho}, gamma={split_gamma}"
    return None


def _check_tree_rho_gamma(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    if not classify(d).directed_tree:
        return "a directed tree", "not a directed tree"
    rho, _ = rho_exact(d, guard=guard)
    gamma, _ = gamma_exact(d, guard=guard)
    tree_gamma = gamma_directed_tree(d, guard=guard)
    if not rho == gamma == tree_gamma:
        return "rho = gamma", f"rho={rho}, gamma={gamma}, tree algorithm={tree_gamma}"
    return None


def _check_rooted_tree_packing(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    t = RootedTree.from_digraph(instance.digraph)
    result = max_packing_rooted_tree(t)
    rho, _ = rho_exact(t.digraph, guard=guard)
    if len(result.chosen_set) != rho or not is_packing(t.digraph, result.chosen_set):
        return f"maximum packing of size {rho}", f"{sorted(result.chosen_set)}"

    covered = [v for block in result.partition for v in block]
    if sorted(covered) != list(t.digraph.vertices()):
        return "blocks partition the vertex set", f"{[sorted(b) for b in result.partition]}"
    for stage in result.stages:
        star = stage.removed - {stage.support}
        if not star or any(t.parent(v) != stage.support for v in star):
            return "each eliminated block is a directed star", f"support {stage.support}, block {sorted(stage.removed)}"
    return None


def _check_tree_bounds(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    t = RootedTree.from_digraph(instance.digraph)
    lower, upper = t1_bounds(t)
    rho, _ = rho_exact(t.digraph, guard=guard)
    gamma, _ = gamma_exact(t.digraph, guard=guard)
    if not lower <= rho <= upper:
        return f"{lower} <= rho <= {upper}", f"rho={rho}"
    if gamma > math.ceil(t.n / 2):
        return f"gamma <= {math.ceil(t.n / 2)}", f"gamma={gamma}"
    if t.n >= 3 and is_binary_tree(t) and 2 * gamma > t.n - 1:
        return f"binary tree gamma <= {(t.n - 1) / 2}", f"gamma={gamma}"
    return None


def _check_rho_equals_supports(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    t = RootedTree.from_digraph(instance.digraph)
    holds, reason = rho_equals_s_test(t)
    rho, _ = rho_exact(t.digraph, guard=guard)
    supports = len(t.supports())
    if holds != (rho == supports):
        return f"structural test agrees with rho = s ({rho} vs {supports})", f"test gave {holds}: {reason}"
    return None


def _check_rho_upper_characterization(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    t = RootedTree.from_digraph(instance.digraph)
    _, upper = t1_bounds(t)
    rho, _ = rho_exact(t.digraph, guard=guard)
    reduced = reduce_support_leaves(t)
    reduced_rho, _ = rho_exact(reduced.digraph, guard=guard)
    if reduced_rho != rho:
        return f"reduction keeps rho={rho}", f"reduced rho={reduced_rho}"

    characterized = rho_upper_characterization(t)
    if characterized != (rho == upper):
        return f"characterization agrees with rho = {upper} (rho={rho})", f"characterization gave {characterized}"
    return None


def _check_rho_lower_bound(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    bound = rho_lower_bound(d)
    rho, _ = rho_exact(d, guard=guard)
    greedy = greedy_packing(d)
    if rho < bound:
        return f"rho >= {bound}", f"rho={rho}"
    if len(greedy) < bound or not is_packing(d, greedy):
        return f"greedy packing of size >= {bound}", f"{sorted(greedy)}"
    return None


def _check_cycle_arc_removal(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    cycle = unique_cycle(d)
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        rooted = classify(remove_arc(d, u, v)).rooted_tree
        if rooted is None or rooted.root != v:
            return f"rooted tree with root {v} after removing ({u}, {v})", \
                   f"root {None if rooted is None else rooted.root}"
    return None


def _check_height_one(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    h = height(d)
    if h != 1:
        return "height 1", f"height {h}"
    rho, _ = rho_exact(d, guard=guard)
    gamma, _ = gamma_exact(d, guard=guard)
    analysis = analyze_contrafunctional(d)
    if not rho == gamma == analysis.rho == analysis.gamma:
        return f"rho = gamma = {gamma}", f"rho={rho}, analytic rho={analysis.rho}, gamma={analysis.gamma}"
    return None


def _check_contrafunctional_gap(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    rho, _ = rho_exact(d, guard=guard)
    gamma, _ = gamma_exact(d, guard=guard)
    analysis = analyze_contrafunctional(d)
    if (analysis.rho, analysis.gamma) != (rho, gamma):
        return f"rho={rho}, gamma={gamma}", f"analytic rho={analysis.rho}, gamma={analysis.gamma}"
    if analysis.omega != (gamma == rho + 1):
        return f"odd terminal cycle iff gamma = rho + 1 (gap {gamma - rho})", f"omega={analysis.omega}"
    return None


def _check_slater_lower_bound(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    solution = gamma_t_exact(d, guard=guard)
    if solution is None:
        return None
    gamma_t, witness = solution
    slater = slater_out(d)
    if slater is None or gamma_t < slater:
        return f"gamma_t >= out-Slater ({slater})", f"gamma_t={gamma_t}"

    max_out = max(d.out_degree(v) for v in d.vertices())
    if max_out * len(witness) < d.n - len(witness) // 2:
        return f"maxout * |S| >= n - floor(|S|/2) for S={sorted(witness)}", f"maxout={max_out}"
    return None


def _check_slater_tree_bound(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    classification = classify(d)
    if not classification.directed_tree:
        return "a directed tree", "not a directed tree"
    leaves = sum(1 for v in d.vertices() if d.out_degree(v) == 0)
    slater = slater_out(d)
    if slater is None or 3 * slater < 2 * (d.n - leaves + 1):
        return f"out-Slater >= 2(n - l + 1)/3 = {Fraction(2 * (d.n - leaves + 1), 3)}", f"out-Slater={slater}"

    if classification.is_rooted_tree:
        gamma_t, _ = gamma_t_exact(d, guard=guard)
        if not (slater <= gamma_t and 2 * gamma_t <= 3 * slater - 2):
            return f"{slater} <= gamma_t <= {Fraction(3 * slater, 2) - 1}", f"gamma_t={gamma_t}"
    return None


def _check_total_domination_extremal(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    if instance.family == Family.THETA and not theta_structure(d, instance.witness):
        return "core arcs have the paired-arc structure", f"core {sorted(instance.witness)}"

    solution = gamma_t_exact(d, guard=guard)
    if solution is None:
        return None
    gamma_t, witness = solution
    if gamma_t == gamma_t_lower_bound(d) and not theta_structure(d, witness):
        return "paired-arc structure at equality", f"gamma_t={gamma_t}, witness {sorted(witness)}"
    return None


def _check_open_domination_extremal(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    if instance.family == Family.SIGMA and not sigma_structure(d, instance.witness):
        return "base vertices have the contrafunctional core structure", f"base {sorted(instance.witness)}"

    solution = gamma_o_exact(d, guard=guard)
    if solution is None:
        return None
    gamma_o, witness = solution
    if gamma_o == gamma_o_lower_bound(d) and not sigma_structure(d, witness):
        return "contrafunctional core structure at equality", f"gamma_o={gamma_o}, witness {sorted(witness)}"
    return None


def _check_slater_realization(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    a = instance.expected["slater"]
    target = instance.expected["gamma_t"]
    witness = instance.witness
    if len(witness) != target or not is_total_dominating(d, witness):
        return f"total dominating witness of size {target}", f"{sorted(witness)}"
    slater = slater_out(d)
    if not (slater <= target and 2 * target <= 3 * a - 2):
        return f"out-Slater {slater} <= {target} <= {Fraction(3 * a, 2) - 1}", f"gamma_t={target}"
    return None


def _check_domination_chain(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    d = instance.digraph
    rho, _ = rho_exact(d, guard=guard)
    gamma, _ = gamma_exact(d, guard=guard)
    if rho > gamma:
        return "rho <= gamma", f"rho={rho}, gamma={gamma}"

    solution = gamma_t_exact(d, guard=guard)
    if solution is not None:
        gamma_t = solution[0]
        slater = slater_out(d)
        if not gamma <= gamma_t <= 2 * gamma:
            return f"{gamma} <= gamma_t <= {2 * gamma}", f"gamma_t={gamma_t}"
        if slater is None or gamma_t < slater:
            return f"gamma_t >= out-Slater ({slater})", f"gamma_t={gamma_t}"
    return None


def _check_split_tree_strongly_chordal(instance: GeneratedInstance, guard: Optional[int]) -> Failure:
    split = build_split(instance.digraph).split_graph
    verdict = strongly_chordal_desk(split)
    if not verdict.strongly_chordal:
        return "strongly chordal split graph", f"chordal={verdict.chordal}, sun={verdict.sun}"
    rho = undirected_rho_exact(split, guard=guard)
    gamma = undirected_gamma_exact(split, guard=guard)
    if rho != gamma:
        return "undirected rho = gamma", f"rho={rho}, gamma={gamma}"
    return None


Sampler = Callable[[int, int, int], GeneratedInstance]
Check = Callable[[GeneratedInstance, Optional[int]], Failure]

_PROPERTIES: Dict[str, Tuple[Sampler, Check]] = {
    "rho-le-gamma": (_sample_digraph, _check_rho_le_gamma),
    "split-transform": (_sample_digraph, _check_split_transform),
    "tree-rho-gamma": (_sample_directed_tree, _check_tree_rho_gamma),
    "rooted-tree-packing": (_sample_rooted_tree, _check_rooted_tree_packing),
    "tree-bounds": (_sample_tree_with_binary, _check_tree_bounds),
    "rho-equals-supports": (_sample_rooted_tree, _check_rho_equals_supports),
    "rho-upper-characterization": (_sample_rooted_tree, _check_rho_upper_characterization),
    "rho-lower-bound": (_sample_star_or_digraph, _check_rho_lower_bound),
    "cycle-arc-removal": (_sample_contrafunctional, _check_cycle_arc_removal),
    "height-one-contrafunctional": (_sample_height_one, _check_height_one),
    "contrafunctional-gap": (_sample_contrafunctional, _check_contrafunctional_gap),
    "slater-lower-bound": (_sample_digraph, _check_slater_lower_bound),
    "slater-tree-bound": (_sample_any_tree, _check_slater_tree_bound),
    "total-domination-extremal": (_sample_theta, _check_total_domination_extremal),
    "open-domination-extremal": (_sample_sigma, _check_open_domination_extremal),
    "slater-realization": (_sample_slater, _check_slater_realization),
    "domination-chain": (_sample_digraph, _check_domination_chain),
    "split-tree-strongly-chordal": (_sample_directed_tree, _check_split_tree_strongly_chordal),
}


def _observed_value(d: Digraph, key: str, guard: int) -> Optional[object]:
    if key == "slater":
        return slater_out(d)
    if key == "rho_lower_bound":
        return rho_lower_bound(d)
    if d.n > guard:
        # Left to the property's own structural check
        return None

    solvers = {"rho": rho_exact, "gamma": gamma_exact, "gamma_t": gamma_t_exact, "gamma_o": gamma_o_exact}
    solution = solvers[key](d, guard=guard)
    return None if solution is None else solution[0]


def certified_mismatch(instance: GeneratedInstance, guard: Optional[int] = None) -> Failure:
    """
    Compare each value certified by a generator with the solvers. Exact solvers are skipped
    above the guard.
    """

    limit = get_enumeration_guard() if guard is None else guard
    for key, value in sorted(instance.expected.items()):
        observed = _observed_value(instance.digraph, key, limit)
        if observed is None and key in ("slater", "rho_lower_bound"):
            return f"{key}={value}", f"{key} undefined"
        if observed is not None and observed != value:
            return f"{key}={value}", f"{key}={observed}"
    return None


def check_instance(property_id: str, instance: GeneratedInstance, guard: Optional[int] = None) -> Failure:
    """
    :return: None when the property holds on the instance, else (expected, observed). A failed
        self-check inside a solver counts as a failure of the property.
    """

    _, check = _PROPERTIES[property_id]
    try:
        return certified_mismatch(instance, guard) or check(instance, guard)
    except AssertionError as e:
        return "internal self-checks pass", f"assertion failed: {e}"


def serialize_instance(property_id: str, trial: int, instance: GeneratedInstance,
                       failure: Tuple[str, str]) -> str:
    comments = [f"property {property_id}",
                f"trial {trial}",
                f"family {instance.family.value}",
                f"expected {failure[0]}",
                f"observed {failure[1]}"]
    comments.extend(f"certified {key} {value}" for key, value in sorted(instance.expected.items()))
    if instance.witness is not None:
        comments.append("witness " + " ".join(str(v) for v in sorted(instance.witness)))
    return format_digraph(instance.digraph, comments)


def parse_instance(text: str) -> Tuple[str, GeneratedInstance]:
    """
    Read back a counterexample written by serialize_instance.

    :return: (property_id, instance)
    """

    property_id = None
    family = Family.RANDOM
    expected = {}
    witness = None
    for line in text.split("\n"):
        if not line.startswith("# "):
            continue
        key, _, value = line[2:].partition(" ")
        if key == "property":
            property_id = value
        elif key == "family":
            family = Family(value)
        elif key == "certified":
            name, number = value.split()
            expected[name] = int(number)
        elif key == "witness":
            witness = frozenset(int(v) for v in value.split())

    if property_id is None:
        raise ValueError("Counterexample text has no '# property' line")
    return property_id, GeneratedInstance(parse_digraph(text), family, expected, witness=witness)


def _run_trial(job: Tuple[str, int, Optional[int], int, int, Optional[int], Optional[GeneratedInstance]]
               ) -> Optional[Counterexample]:
    property_id, index, seed, min_n, max_n, guard, instance = job
    if instance is None:
        sampler, _ = _PROPERTIES[property_id]
        instance = sampler(seed, min_n, max_n)

    failure = check_instance(property_id, instance, guard)
    if failure is None:
        return None

    logging.info(f"{property_id}: trial {index} failed, expected {failure[0]}, observed {failure[1]}")
    return Counterexample(trial=index, instance=serialize_instance(property_id, index, instance, failure),
                          expected=failure[0], observed=failure[1])


def run_verification(property_id: str, trials: Optional[int] = None, max_n: Optional[int] = None,
                     seed: int = 0, workers: int = 1, exhaustive_n: int = 0,
                     guard: Optional[int] = None) -> VerificationReport:
    """
    Check one property on seeded random instances.

    :param property_id: A property_catalogue() id or short id.
    :param trials: Number of random instances, catalogue default if None.
    :param max_n: Largest order sampled, catalogue default if None.
    :param seed: Base seed; trial i uses trial_seed(seed, i).
    :param workers: Processes to spread trials over. Results are merged by trial index.
    :param exhaustive_n: For tree properties, also check every rooted tree of order up to this.
    :param guard: Enumeration guard handed to the exact solvers.
    :return:
    """

    property_id = resolve_property(property_id)
    row = property_catalogue().loc[property_id]

    trials = int(row["default_trials"]) if trials is None else trials
    max_n = int(row["default_max_n"]) if max_n is None else max_n
    min_n = int(row["min_order"])
    if trials < 0:
        raise ValueError(f"Number of trials must be non-negative, got {trials}")
    if max_n < min_n:
        raise ValueError(f"{property_id} needs max_n >= {min_n}, got {max_n}")
    if exhaustive_n and not row["tree_property"]:
        raise ValueError(f"{property_id} is not a tree property, exhaustive rooted trees do not apply")

    jobs = [(property_id, i, trial_seed(seed, i), min_n, max_n, guard, None) for i in range(trials)]
    for order in range(min_n, exhaustive_n + 1):
        for t in enumerate_rooted_trees(order):
            instance = GeneratedInstance(t.digraph, Family.ROOTED_TREE)
            jobs.append((property_id, len(jobs), None, min_n, max_n, guard, instance))

    logging.info(f"Verifying {property_id}: {len(jobs)} instances, max_n={max_n}, seed={seed}, workers={workers}")
    start = time.perf_counter()
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            outcomes = pool.map(_run_trial, jobs)
    else:
        outcomes = [_run_trial(job) for job in jobs]
    elapsed = time.perf_counter() - start

    counterexamples = [c for c in outcomes if c is not None]
    report = VerificationReport(property_id=property_id, trials=len(jobs), passes=len(jobs) - len(counterexamples),
                                counterexamples=counterexamples, seed=seed, max_n=max_n,
                                exhaustive_n=exhaustive_n, elapsed=elapsed)
    assert report.passes + len(report.counterexamples) == report.trials
    logging.info(f"{property_id}: {report.passes}/{report.trials} passed in {elapsed:.2f}s")
    return report


def reports_to_frame(reports: Sequence[VerificationReport]) -> pd.DataFrame:
    """Summary table, one row per report, without timings so it is reproducible."""

    rows = [{key: value for key, value in report.as_dict().items() if key != "counterexamples"}
            for report in reports]
    columns = ["property_id", "trials", "passes", "failures", "seed", "max_n", "exhaustive_n"]
    return pd.DataFrame(rows, columns=columns).set_index("property_id")


def dump_counterexamples(report: VerificationReport, directory: Path) -> List[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for counterexample in report.counterexamples:
        path = directory / f"{report.property_id}-trial{counterexample.trial}.txt"
        path.write_text(counterexample.instance, newline="\n")
        paths.append(path)
    return paths
