import tempfile
import unittest
from pathlib import Path

import numpy as np
from hypothesis import given, settings

from py_digraphpacking.digraph import Digraph, RootedTree, adjacency_matrix, arc_cut, bfs_order, classify, \
    degree_stats, format_digraph, in_neighbors, induced_subdigraph, out_neighbors, parse_digraph, read_digraph, \
    to_networkx, underlying_neighbors, write_digraph
from py_digraphpacking.utilities import DigraphParseError

from .strategies import digraphs


def path(n):
    return Digraph.from_arcs(n, [(v, v + 1) for v in range(n - 1)])


def star(n):
    return Digraph.from_arcs(n, [(0, v) for v in range(1, n)])


def cycle(n):
    return Digraph.from_arcs(n, [(v, (v + 1) % n) for v in range(n)])


class DigraphTests(unittest.TestCase):
    def test_construction_rejects_bad_arcs(self):
        with self.assertRaises(ValueError):
            Digraph.from_arcs(2, [(0, 0)])
        with self.assertRaises(ValueError):
            Digraph.from_arcs(2, [(0, 2)])
        with self.assertRaises(ValueError):
            Digraph.from_arcs(2, [(0, 1), (0, 1)])

        # Opposite pairs are fine
        d = Digraph.from_arcs(2, [(0, 1), (1, 0)])
        self.assertEqual(len(d.arcs), 2)

    def test_in_neighbors(self):
        self.assertEqual(in_neighbors(path(3), 1), {0})
        self.assertEqual(in_neighbors(path(3), 1, closed=True), {0, 1})
        self.assertEqual(in_neighbors(star(4), 0), frozenset())

        with self.assertRaises(IndexError):
            in_neighbors(path(3), 3)

    def test_out_neighbors(self):
        self.assertEqual(out_neighbors(cycle(3), 0, closed=True), {0, 1})
        self.assertEqual(out_neighbors(path(2), 1), frozenset())
        self.assertEqual(out_neighbors(star(4), 0), {1, 2, 3})
        self.assertEqual(underlying_neighbors(path(3), 1), {0, 2})

        with self.assertRaises(IndexError):
            out_neighbors(star(4), -1)

    def test_degree_stats(self):
        stats = degree_stats(star(5))
        self.assertEqual((stats.max_out, stats.max_in, stats.min_underlying, stats.max_underlying, stats.delta_star),
                         (4, 1, 1, 4, 1))

        stats = degree_stats(cycle(4))
        self.assertEqual((stats.max_out, stats.max_in, stats.min_underlying, stats.max_underlying, stats.delta_star),
                         (1, 1, 2, 2, 1))

        stats = degree_stats(Digraph.from_arcs(1, []))
        self.assertEqual((stats.max_out, stats.max_in, stats.min_underlying, stats.max_underlying, stats.delta_star),
                         (0, 0, 0, 0, 0))

        # An opposite pair is a single underlying edge
        stats = degree_stats(Digraph.from_arcs(2, [(0, 1), (1, 0)]))
        self.assertEqual(stats.max_underlying, 1)

    def test_arc_cut(self):
        self.assertEqual(arc_cut(cycle(3), {0}, {1}), 1)
        self.assertEqual(arc_cut(cycle(3), {0, 1, 2}, {0, 1, 2}), 3)
        self.assertEqual(arc_cut(Digraph.from_arcs(4, []), {0, 1}, {2, 3}), 0)

    def test_classify(self):
        c = classify(path(3))
        self.assertTrue(c.connected)
        self.assertTrue(c.directed_tree)
        self.assertTrue(c.is_rooted_tree)
        self.assertEqual(c.rooted_tree.root, 0)
        self.assertFalse(c.contrafunctional)

        c = classify(cycle(3))
        self.assertTrue(c.connected)
        self.assertTrue(c.contrafunctional)
        self.assertFalse(c.directed_tree)
        self.assertIsNone(c.rooted_tree)

        c = classify(Digraph.from_arcs(3, [(0, 1), (1, 2), (0, 2)]))
        self.assertTrue(c.tournament)
        self.assertTrue(c.connected)

        # Anti-directed path: a directed tree but not a rooted one
        c = classify(Digraph.from_arcs(3, [(0, 1), (2, 1)]))
        self.assertTrue(c.directed_tree)
        self.assertFalse(c.is_rooted_tree)

        # An opposite pair is not an orientation of a tree
        self.assertFalse(classify(Digraph.from_arcs(2, [(0, 1), (1, 0)])).directed_tree)
        self.assertFalse(classify(Digraph.from_arcs(3, [(0, 1)])).connected)
        self.assertEqual(classify(path(3)).as_dict()["root"], 0)

    def test_bfs_order(self):
        self.assertEqual(bfs_order(RootedTree.from_digraph(path(3))), [0, 1, 2])
        self.assertEqual(bfs_order(RootedTree.from_digraph(star(4))), [0, 1, 2, 3])
        tree = RootedTree.from_digraph(Digraph.from_arcs(4, [(0, 1), (0, 2), (2, 3)]))
        self.assertEqual(bfs_order(tree), [0, 1, 2, 3])

        tree = RootedTree.from_parents([None, 2, 0, 0])
        self.assertEqual(bfs_order(tree), [0, 2, 3, 1])

    def test_rooted_tree(self):
        tree = RootedTree.from_parents([None, 0, 1, 1, 0])
        self.assertEqual(tree.height, 2)
        self.assertEqual(tree.leaves(), {2, 3, 4})
        self.assertEqual(tree.supports(), {0, 1})
        self.assertEqual(tree.children(1), {2, 3})
        self.assertEqual(tree.parent(2), 1)
        self.assertIsNone(tree.parent(0))

        with self.assertRaises(ValueError):
            RootedTree.from_digraph(cycle(3))
        with self.assertRaises(ValueError):
            RootedTree.from_digraph(Digraph.from_arcs(3, [(0, 1), (2, 1)]))

    def test_induced_subdigraph(self):
        sub, ids = induced_subdigraph(path(5), [1, 2, 4])
        self.assertEqual(ids, (1, 2, 4))
        self.assertEqual(sub.arcs, {(0, 1)})

    def test_adjacency_and_networkx(self):
        matrix = adjacency_matrix(cycle(3))
        self.assertTrue(np.array_equal(matrix, np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=bool)))

        g = to_networkx(Digraph.from_arcs(2, [(0, 1), (1, 0)]), underlying=True)
        self.assertEqual(g.number_of_edges(), 1)
        self.assertEqual(to_networkx(cycle(3)).number_of_edges(), 3)

    @given(digraphs(max_n=7))
    @settings(max_examples=100)
    def test_neighborhood_duality(self, d):
        for u in d.vertices():
            for v in d.vertices():
                self.assertEqual(v in out_neighbors(d, u), u in in_neighbors(d, v))

        self.assertEqual(sum(len(out_neighbors(d, v)) for v in d.vertices()), len(d.arcs))
        self.assertEqual(sum(len(in_neighbors(d, v)) for v in d.vertices()), len(d.arcs))
        self.assertEqual(arc_cut(d, d.vertices(), d.vertices()), len(d.arcs))

        evens = [v for v in d.vertices() if v % 2 == 0]
        odds = [v for v in d.vertices() if v % 2 == 1]
        self.assertEqual(arc_cut(d, d.vertices(), evens) + arc_cut(d, d.vertices(), odds), len(d.arcs))

    @given(digraphs(max_n=7))
    @settings(max_examples=100)
    def test_bfs_parents_come_first(self, d):
        c = classify(d)
        self.assertFalse(c.is_rooted_tree and c.contrafunctional)
        if c.is_rooted_tree:
            order = bfs_order(c.rooted_tree)
            position = {v: i for i, v in enumerate(order)}
            for u, v in d.arcs:
                self.assertLess(position[u], position[v])


class EdgeListTests(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(parse_digraph("3\n0 1\n1 2\n2 0\n"), cycle(3))
        self.assertEqual(parse_digraph("2\n0 1\n1 0\n").arcs, {(0, 1), (1, 0)})
        self.assertEqual(parse_digraph("# a comment\n3\n\n0 1  # trailing\n").arcs, {(0, 1)})

    def test_parse_errors(self):
        cases = {"2\n0 0\n": 2,          # loop
                 "2\n0 1\n0 1\n": 3,     # duplicate
                 "2\n0 2\n": 2,          # out of range
                 "2\n0 1 1\n": 2,        # malformed
                 "2\n0 \u0661\n": 2,     # Arabic-Indic digit one
                 "2\n0 \u00b2\n": 2,     # superscript two
                 "\u0663\n": 1,
                 "x\n": 1,
                 "": 1}
        for text, line_number in cases.items():
            with self.assertRaises(DigraphParseError) as context:
                parse_digraph(text)
            self.assertEqual(context.exception.line_number, line_number, text)

        self.assertTrue(issubclass(DigraphParseError, ValueError))

    def test_canonical_format(self):
        text = "3\n0 1\n1 2\n2 0\n"
        self.assertEqual(format_digraph(parse_digraph(text)), text)
        self.assertEqual(format_digraph(Digraph.from_arcs(3, [(2, 0), (0, 1)]), ["note"]), "# note\n3\n0 1\n2 0\n")

    def test_read_write(self):
        with tempfile.TemporaryDirectory() as directory:
            target = Path(directory) / "c4.txt"
            write_digraph(cycle(4), target, ["cycle"])
            self.assertEqual(read_digraph(target), cycle(4))
            self.assertTrue(target.read_text().startswith("# cycle\n4\n"))
