import unittest

from hypothesis import given, settings

from py_digraphpacking.digraph import Digraph, RootedTree, classify, is_symmetric
from py_digraphpacking.generators import random_contrafunctional
from py_digraphpacking.contrafunctional import unique_cycle
from py_digraphpacking.solvers import gamma_exact, rho_exact, undirected_gamma_exact, undirected_rho_exact
from py_digraphpacking.transforms import build_split, reduce_support_leaves, remove_arc

from .strategies import digraphs, rooted_trees, seeds


class SplitTransformTests(unittest.TestCase):
    def test_single_arc(self):
        split = build_split(Digraph.from_arcs(2, [(0, 1)]))
        self.assertEqual(split.split_digraph.arcs, {(0, 2), (1, 3), (0, 1), (0, 3)})
        self.assertEqual(split.mapping(), ((0, 2), (1, 3)))
        self.assertEqual(split.unprimed(3), 1)
        self.assertTrue(is_symmetric(split.split_graph))
        self.assertEqual(len(split.split_graph.arcs), 8)

    def test_single_vertex(self):
        split = build_split(Digraph.from_arcs(1, []))
        self.assertEqual(split.split_digraph.arcs, {(0, 1)})

    def test_c3_arc_count(self):
        split = build_split(Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]))
        self.assertEqual(split.split_digraph.n, 6)
        self.assertEqual(len(split.split_digraph.arcs), 9)

    def test_opposite_pair(self):
        # (0, 1) and (1, 0) give the edge 0-1 once in the split graph
        split = build_split(Digraph.from_arcs(2, [(0, 1), (1, 0)]))
        self.assertEqual(len(split.split_digraph.arcs), 6)
        self.assertEqual(len(split.split_graph.arcs), 10)

    @given(digraphs(max_n=5))
    @settings(max_examples=60, deadline=None)
    def test_split_graph_keeps_domination_and_packing(self, d):
        split = build_split(d)
        self.assertEqual(len(split.split_digraph.arcs), d.n + 2 * len(d.arcs))
        self.assertEqual(undirected_gamma_exact(split.split_graph), gamma_exact(d)[0])
        self.assertEqual(undirected_rho_exact(split.split_graph), rho_exact(d)[0])


class SupportLeafReductionTests(unittest.TestCase):
    def test_star(self):
        reduced = reduce_support_leaves(RootedTree.from_parents([None, 0, 0, 0]))
        self.assertEqual(reduced.n, 2)
        self.assertEqual(reduced.digraph.arcs, {(0, 1)})

    def test_path_unchanged(self):
        reduced = reduce_support_leaves(RootedTree.from_parents([None, 0, 1]))
        self.assertEqual(reduced.digraph, Digraph.from_arcs(3, [(0, 1), (1, 2)]))

    def test_two_level_tree(self):
        t = RootedTree.from_digraph(Digraph.from_arcs(5, [(0, 1), (1, 2), (1, 3), (0, 4)]))
        reduced = reduce_support_leaves(t)
        self.assertEqual(reduced.n, 4)
        # Leaf 3 goes, the survivors 0, 1, 2, 4 become 0..3
        self.assertEqual(reduced.digraph.arcs, {(0, 1), (1, 2), (0, 3)})

    def test_needs_two_vertices(self):
        with self.assertRaises(ValueError):
            reduce_support_leaves(RootedTree.from_parents([None]))

    @given(rooted_trees(min_n=2, max_n=10))
    @settings(max_examples=100, deadline=None)
    def test_packing_number_preserved(self, t):
        reduced = reduce_support_leaves(t)
        self.assertEqual(reduced.n, t.n - len(t.leaves()) + len(t.supports()))
        self.assertEqual(rho_exact(reduced.digraph)[0], rho_exact(t.digraph)[0])


class RemoveArcTests(unittest.TestCase):
    def test_cycle_becomes_path(self):
        d = remove_arc(Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]), 2, 0)
        self.assertEqual(d.arcs, {(0, 1), (1, 2)})

        t = classify(remove_arc(Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 3, 0)).rooted_tree
        self.assertEqual(t.root, 0)

    def test_opposite_pair(self):
        d = remove_arc(Digraph.from_arcs(2, [(0, 1), (1, 0)]), 0, 1)
        self.assertEqual(d.arcs, {(1, 0)})

    def test_missing_arc(self):
        with self.assertRaises(KeyError):
            remove_arc(Digraph.from_arcs(2, [(0, 1)]), 1, 0)

    @given(seeds)
    @settings(max_examples=50)
    def test_cycle_arc_removal_gives_rooted_tree(self, seed):
        d = random_contrafunctional(3 + seed % 9, seed).digraph
        cycle = unique_cycle(d)
        for i, u in enumerate(cycle):
            v = cycle[(i + 1) % len(cycle)]
            t = classify(remove_arc(d, u, v)).rooted_tree
            self.assertIsNotNone(t)
            self.assertEqual(t.root, v)
