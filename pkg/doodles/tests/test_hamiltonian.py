import networkx as nx
from django.test import SimpleTestCase

from doodles.diagram import canonical_key
from doodles.exceptions import CycleCodeError, DiagramError
from doodles.hamiltonian import (
    LEFT, RIGHT, CycleCode, cycle_code, diagram_from_cycle_code, find_hamiltonian, hamiltonian_cycle,
    rotation_neighbors,
)

from .fixtures import BORROMEAN_CYCLE_CODE, CROSSED_CYCLE_CODE, POPPY_CYCLE_CODE, borromean, kink, poppy


class HamiltonianCycleTests(SimpleTestCase):

    def test_cycle_graph(self):
        graph = nx.cycle_graph(5)
        order = hamiltonian_cycle(graph, 0)
        self.assertEqual(sorted(order), list(range(5)))
        for u, v in zip(order, order[1:] + order[:1]):
            self.assertTrue(graph.has_edge(u, v))

    def test_no_circuit(self):
        self.assertIsNone(hamiltonian_cycle(nx.path_graph(4)))
        self.assertIsNone(hamiltonian_cycle(nx.complete_bipartite_graph(2, 3)))
        self.assertIsNone(hamiltonian_cycle(nx.complete_graph(2)))

    def test_neighbour_order_is_followed(self):
        graph = nx.complete_graph(4)
        self.assertEqual(hamiltonian_cycle(graph, 0), [0, 1, 2, 3])
        self.assertEqual(hamiltonian_cycle(graph, 0, lambda c: sorted(graph[c], reverse=True)), [0, 3, 2, 1])


class CircuitTests(SimpleTestCase):

    def test_borromean_circuit(self):
        diagram = borromean()
        circuit = find_hamiltonian(diagram)
        self.assertEqual(circuit.n, 6)
        self.assertEqual(sorted(circuit.order), list(range(6)))
        self.assertEqual(len(circuit.chords), 6)
        self.assertTrue(circuit.sides_are_non_crossing())
        self.assertEqual({side for _, _, side in circuit.chords} - {LEFT, RIGHT}, set())

    def test_circuit_steps_in_rotation_order(self):
        diagram = borromean()
        for c in range(diagram.n):
            self.assertEqual(set(rotation_neighbors(diagram, c)), set(diagram.simple_graph[c]))
        first = rotation_neighbors(diagram, 0)
        self.assertEqual(len(first), 4)
        circuit = find_hamiltonian(diagram)
        self.assertEqual(circuit.order[0], 0)
        self.assertEqual(circuit.order[1], first[0])

    def test_round_trip_through_cycle_code(self):
        for diagram in (borromean(), poppy()):
            code = cycle_code(diagram, find_hamiltonian(diagram))
            self.assertEqual(code.n, diagram.n)
            self.assertEqual(CycleCode.parse(str(code)), code)
            rebuilt = diagram_from_cycle_code(diagram.n, code)
            self.assertEqual(canonical_key(rebuilt), canonical_key(diagram))

    def test_too_small(self):
        with self.assertRaises(DiagramError):
            find_hamiltonian(kink())


class CycleCodeTests(SimpleTestCase):

    def test_parse_and_format(self):
        code = CycleCode.parse(BORROMEAN_CYCLE_CODE)
        self.assertEqual(code.n, 6)
        self.assertEqual(str(code), BORROMEAN_CYCLE_CODE)
        self.assertEqual(code.chords()[0], (0, 2, RIGHT))
        self.assertEqual(code.chords()[3], (1, 3, LEFT))

    def test_known_codes(self):
        self.assertEqual(
            canonical_key(diagram_from_cycle_code(6, CycleCode.parse(BORROMEAN_CYCLE_CODE))),
            canonical_key(borromean()),
        )
        self.assertEqual(
            canonical_key(diagram_from_cycle_code(8, CycleCode.parse(POPPY_CYCLE_CODE))),
            canonical_key(poppy()),
        )

    def test_crossing_chords_on_one_side(self):
        with self.assertRaisesMessage(CycleCodeError, 'not realizable as drawn'):
            diagram_from_cycle_code(6, CycleCode.parse(CROSSED_CYCLE_CODE))

    def test_wrong_size(self):
        with self.assertRaises(CycleCodeError):
            diagram_from_cycle_code(8, CycleCode.parse(BORROMEAN_CYCLE_CODE))

    def test_bad_codes(self):
        for text in ('', 'abc', '(0+2,2+2)', '(0+2,2+2,4+1)(1-2,3-2,5-2)', '(0*2)'):
            with self.assertRaises(CycleCodeError):
                CycleCode.parse(text)
