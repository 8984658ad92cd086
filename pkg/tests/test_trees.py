import math
import unittest

from hypothesis import given, settings

from py_digraphpacking.digraph import Digraph, RootedTree
from py_digraphpacking.generators import enumerate_rooted_trees, phi_member, random_binary_tree
from py_digraphpacking.solvers import gamma_exact, gamma_t_exact, is_total_dominating, rho_exact
from py_digraphpacking.trees import PhiCondition, TerminalKind, gamma_directed_tree, gamma_t_tree_upper_bound, \
    is_binary_tree, max_packing_rooted_tree, phi_certificate, phi_membership, rho_equals_s_test, \
    rho_upper_characterization, t1_bounds, tree_profile

from .strategies import directed_trees, rooted_trees, seeds


def tree(*parents):
    return RootedTree.from_parents(list(parents))


class MaxPackingTests(unittest.TestCase):
    def test_path(self):
        result = max_packing_rooted_tree(tree(None, 0, 1))
        self.assertEqual(result.chosen_set, {0, 2})
        self.assertEqual(result.terminal, TerminalKind.ISOLATED_VERTEX)
        self.assertEqual(result.terminal_vertex, 0)
        self.assertEqual(result.partition, (frozenset({1, 2}), frozenset({0})))

    def test_star(self):
        result = max_packing_rooted_tree(tree(None, 0, 0, 0))
        self.assertEqual(result.chosen_set, {3})
        self.assertEqual(result.terminal, TerminalKind.EMPTY)
        self.assertEqual(len(result.stages), 1)
        self.assertEqual((result.stages[0].leaf, result.stages[0].support), (3, 0))

    def test_star_below_root(self):
        result = max_packing_rooted_tree(tree(None, 0, 1, 1))
        self.assertEqual(result.chosen_set, {0, 3})
        self.assertEqual(result.partition, (frozenset({1, 2, 3}), frozenset({0})))

    def test_single_vertex(self):
        result = max_packing_rooted_tree(tree(None))
        self.assertEqual(result.chosen_set, {0})
        self.assertEqual(result.stages, ())

    @given(rooted_trees(max_n=11))
    @settings(max_examples=150, deadline=None)
    def test_matches_exhaustive_search(self, t):
        result = max_packing_rooted_tree(t)
        self.assertEqual(len(result.chosen_set), rho_exact(t.digraph)[0])
        self.assertEqual(sorted(v for block in result.partition for v in block), list(range(t.n)))
        self.assertEqual(sum(len(block) for block in result.partition), t.n)


class DirectedTreeTests(unittest.TestCase):
    def test_anti_directed_path(self):
        d = Digraph.from_arcs(3, [(0, 1), (2, 1)])
        self.assertEqual(gamma_directed_tree(d), 2)

    def test_not_a_tree(self):
        with self.assertRaises(ValueError):
            gamma_directed_tree(Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]))

    @given(directed_trees(max_n=10))
    @settings(max_examples=100, deadline=None)
    def test_packing_equals_domination(self, d):
        self.assertEqual(gamma_directed_tree(d), gamma_exact(d)[0])
        self.assertEqual(rho_exact(d)[0], gamma_exact(d)[0])


class BoundTests(unittest.TestCase):
    def test_profile_and_bounds(self):
        t = tree(None, 0, 1, 2, 3, 1)
        profile = tree_profile(t)
        self.assertEqual((profile.n, profile.leaves, profile.supports, profile.height), (6, 2, 2, 4))
        self.assertEqual(t1_bounds(t), (2, 3))
        self.assertEqual(t1_bounds(tree(None, 0, 0, 0)), (1, 1))

        with self.assertRaises(ValueError):
            t1_bounds(tree(None))

    def test_rho_equals_s(self):
        self.assertEqual(rho_equals_s_test(tree(None, 0)), (True, "n = l + s"))
        holds, _ = rho_equals_s_test(tree(None, 0, 1))
        self.assertFalse(holds)
        # 2 is neither support nor leaf and its parent 1 is no support
        holds, _ = rho_equals_s_test(tree(None, 0, 1, 2, 3, 0))
        self.assertFalse(holds)
        holds, _ = rho_equals_s_test(tree(None, 0, 0, 2, 3))
        self.assertTrue(holds)

    @given(rooted_trees(min_n=2, max_n=11))
    @settings(max_examples=150, deadline=None)
    def test_bounds_hold(self, t):
        lower, upper = t1_bounds(t)
        rho = rho_exact(t.digraph)[0]
        self.assertLessEqual(lower, rho)
        self.assertLessEqual(rho, upper)
        self.assertLessEqual(gamma_exact(t.digraph)[0], math.ceil(t.n / 2))
        self.assertEqual(rho_equals_s_test(t)[0], rho == lower)
        self.assertEqual(rho_upper_characterization(t), rho == upper)

    def test_every_small_tree(self):
        for n in range(2, 7):
            for t in enumerate_rooted_trees(n):
                lower, upper = t1_bounds(t)
                rho = rho_exact(t.digraph)[0]
                self.assertEqual(rho_equals_s_test(t)[0], rho == lower, t.digraph.sorted_arcs())
                self.assertEqual(rho_upper_characterization(t), rho == upper, t.digraph.sorted_arcs())
                self.assertEqual(phi_membership(t), rho == math.ceil(n / 2), t.digraph.sorted_arcs())


class HalfOrderFamilyTests(unittest.TestCase):
    def test_certificates(self):
        self.assertEqual(phi_certificate(tree(None, 0)).condition, PhiCondition.ALL_PAIRS)
        self.assertEqual(phi_certificate(tree(None, 0, 1)).condition, PhiCondition.PAIRS_AND_SINGLETON)
        self.assertEqual(phi_certificate(tree(None, 0, 1, 1)).condition, PhiCondition.ONE_TRIPLE_AND_SINGLETON)
        self.assertIsNone(phi_certificate(tree(None, 0, 0, 0)))

    def test_upper_characterization(self):
        self.assertTrue(rho_upper_characterization(tree(None, 0, 1, 2, 3, 1)))
        self.assertFalse(rho_upper_characterization(tree(None, 0, 0, 1, 2, 3, 4)))

        with self.assertRaises(ValueError):
            phi_membership(tree(None))

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_generated_members(self, seed):
        instance = phi_member(1 + seed % 7, seed)
        t = RootedTree.from_digraph(instance.digraph)
        self.assertTrue(phi_membership(t))
        self.assertEqual(phi_certificate(t).condition, PhiCondition.ALL_PAIRS)


class BinaryTreeTests(unittest.TestCase):
    def test_is_binary_tree(self):
        self.assertTrue(is_binary_tree(tree(None, 0, 0)))
        self.assertTrue(is_binary_tree(tree(None)))
        self.assertFalse(is_binary_tree(tree(None, 0, 1)))

    def test_total_domination_upper_bound(self):
        self.assertIsNone(gamma_t_tree_upper_bound(tree(None, 0, 0, 0)))
        self.assertIsNone(gamma_t_tree_upper_bound(tree(None)))
        self.assertEqual(gamma_t_tree_upper_bound(tree(None, 0, 1)), 2)

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_random_binary_trees(self, seed):
        t = RootedTree.from_digraph(random_binary_tree(1 + seed % 6, seed).digraph)
        self.assertTrue(is_binary_tree(t))
        self.assertLessEqual(2 * gamma_exact(t.digraph)[0], t.n - 1)

        bound = gamma_t_tree_upper_bound(t)
        if bound is not None:
            self.assertLessEqual(gamma_t_exact(t.digraph)[0], bound)
            self.assertTrue(is_total_dominating(t.digraph, set(t.digraph.vertices()) - t.leaves()))
