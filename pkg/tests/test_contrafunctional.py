import unittest

from hypothesis import given, settings

from py_digraphpacking.contrafunctional import analyze_contrafunctional, height, rdses_contrafunctional, unique_cycle
from py_digraphpacking.digraph import Digraph
from py_digraphpacking.generators import random_contrafunctional, random_height_one_contrafunctional
from py_digraphpacking.solvers import gamma_exact, is_packing, rho_exact
from py_digraphpacking.trees import TerminalKind

from .strategies import seeds

C3 = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
C4 = Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


class CycleAndHeightTests(unittest.TestCase):
    def test_unique_cycle(self):
        self.assertEqual(unique_cycle(C3), (0, 1, 2))
        self.assertEqual(unique_cycle(Digraph.from_arcs(3, [(2, 1), (1, 0), (0, 2)])), (0, 2, 1))
        self.assertEqual(unique_cycle(Digraph.from_arcs(2, [(0, 1), (1, 0)])), (0, 1))

        # Vertex 0 hangs off the cycle 1 -> 2 -> 3 -> 1
        d = Digraph.from_arcs(4, [(1, 2), (2, 3), (3, 1), (3, 0)])
        self.assertEqual(unique_cycle(d), (1, 2, 3))
        self.assertEqual(height(d), 1)

    def test_height(self):
        self.assertEqual(height(C3), 0)
        self.assertEqual(height(Digraph.from_arcs(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5)])), 3)

    def test_rejects_other_digraphs(self):
        with self.assertRaises(ValueError):
            unique_cycle(Digraph.from_arcs(3, [(0, 1), (1, 2)]))
        with self.assertRaises(ValueError):
            height(Digraph.from_arcs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]))


class AnalysisTests(unittest.TestCase):
    def test_cycles(self):
        analysis = analyze_contrafunctional(C3)
        self.assertEqual((analysis.rho, analysis.gamma, analysis.omega), (1, 2, True))
        self.assertEqual(analysis.rdses.stages, ())
        self.assertEqual(analysis.rdses.terminal, TerminalKind.RESIDUAL)

        analysis = analyze_contrafunctional(C4)
        self.assertEqual((analysis.rho, analysis.gamma, analysis.omega), (2, 2, False))

    def test_height_one(self):
        analysis = analyze_contrafunctional(Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 0), (0, 3)]))
        self.assertEqual((analysis.height, analysis.rho, analysis.gamma, analysis.omega), (1, 2, 2, False))

        # Every cycle vertex carries a pendant leaf
        d = Digraph.from_arcs(6, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)])
        analysis = analyze_contrafunctional(d)
        self.assertEqual((analysis.rho, analysis.gamma), (3, 3))

    def test_star_elimination(self):
        d = Digraph.from_arcs(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5)])
        rdses = rdses_contrafunctional(d)
        self.assertEqual(len(rdses.stages), 1)
        self.assertEqual((rdses.stages[0].leaf, rdses.stages[0].support), (5, 4))
        self.assertEqual(rdses.partition, (frozenset({4, 5}), frozenset({0, 1, 2, 3})))
        self.assertEqual(rdses.residual.n, 4)

        analysis = analyze_contrafunctional(d)
        self.assertEqual((analysis.rho, analysis.gamma), (rho_exact(d)[0], gamma_exact(d)[0]))

    @given(seeds)
    @settings(max_examples=80, deadline=None)
    def test_matches_exhaustive_search(self, seed):
        d = random_contrafunctional(3 + seed % 10, seed).digraph
        analysis = analyze_contrafunctional(d)
        rho, gamma = rho_exact(d)[0], gamma_exact(d)[0]
        self.assertEqual((analysis.rho, analysis.gamma), (rho, gamma))
        self.assertEqual(analysis.omega, gamma == rho + 1)
        self.assertTrue(is_packing(d, analysis.rdses.chosen_set))
        self.assertEqual(sorted(v for block in analysis.rdses.partition for v in block), list(range(d.n)))

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_height_one_has_no_gap(self, seed):
        d = random_height_one_contrafunctional(4 + seed % 9, seed).digraph
        self.assertEqual(height(d), 1)
        analysis = analyze_contrafunctional(d)
        self.assertEqual(analysis.rho, analysis.gamma)
        self.assertEqual(analysis.rho, rho_exact(d)[0])
