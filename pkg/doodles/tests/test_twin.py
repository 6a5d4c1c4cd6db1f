from django.test import SimpleTestCase

from doodles.diagram import DoodleDiagram, canonical_key, opposite, reduce
from doodles.exceptions import TwinWordError
from doodles.twin import (
    Orientation, TwinWord, closure, find_defect, normalize, seifert_graph, to_twin_word, v_move,
)

from .fixtures import borromean, kink, poppy


def assert_consistent(test, diagram, orientation):
    forward = orientation.forward
    for h, q in enumerate(diagram.partner):
        test.assertNotEqual(forward[h], forward[q])
        if forward[h]:
            test.assertTrue(forward[opposite(q)])
    for c in range(diagram.n):
        test.assertEqual(sum(forward[4 * c:4 * c + 4]), 2)


class TwinWordTests(SimpleTestCase):

    def test_normalize(self):
        self.assertEqual(normalize(TwinWord(2, (1, 1))).letters, ())
        self.assertEqual(normalize(TwinWord(4, (3, 1))).letters, (1, 3))
        self.assertEqual(normalize(TwinWord(3, (1, 2, 2, 1))).letters, ())
        self.assertEqual(normalize(TwinWord(3, (2, 1, 2))).letters, (2, 1, 2))
        self.assertEqual(normalize(TwinWord(3, (1, 2, 2, 2, 1, 2, 1, 2))).letters, (1, 2) * 3)

    def test_parse_and_format(self):
        word = TwinWord.parse('k=4: t1 t3')
        self.assertEqual(word, TwinWord(4, (1, 3)))
        self.assertEqual(str(word), 'k=4: t1 t3')
        self.assertEqual(TwinWord.parse('t1 t2 t1'), TwinWord(3, (1, 2, 1)))
        self.assertEqual(str(TwinWord.parse('k=3:')), 'k=3:')
        self.assertEqual(len(TwinWord.parse('k=3: t1 t2 t1 t2')), 4)

    def test_bad_words(self):
        with self.assertRaises(TwinWordError):
            TwinWord.parse('k=2: t2')
        with self.assertRaises(TwinWordError):
            TwinWord.parse('x1 t2')
        with self.assertRaises(TwinWordError):
            TwinWord(0, ())


class ClosureTests(SimpleTestCase):

    def test_single_letter(self):
        self.assertEqual(closure(TwinWord(2, (1,))).partner, (3, 2, 1, 0))

    def test_two_letters(self):
        self.assertEqual(closure(TwinWord(2, (1, 1))).partner, (7, 6, 5, 4, 3, 2, 1, 0))

    def test_untouched_strands_float(self):
        diagram = closure(TwinWord(3, (1,)))
        self.assertEqual(diagram.n, 1)
        self.assertEqual(diagram.floating_circles, 1)
        empty = closure(TwinWord(2, ()))
        self.assertEqual(empty.n, 0)
        self.assertEqual(empty.floating_circles, 2)

    def test_far_letters_commute(self):
        word = TwinWord(4, (3, 1, 2, 3, 1, 2))
        self.assertEqual(canonical_key(closure(word)), canonical_key(closure(normalize(word))))

    def test_cancelled_letters_reduce_away(self):
        word = TwinWord(3, (1, 2, 2, 2, 1, 2, 1, 2))
        self.assertEqual(canonical_key(reduce(closure(word))), canonical_key(borromean()))


class SeifertTests(SimpleTestCase):

    def test_kink(self):
        diagram = kink()
        seifert = seifert_graph(diagram, Orientation.of_components(diagram, (True,)))
        self.assertEqual(seifert.cycle_count, 2)
        self.assertEqual(seifert.bridge_count, 1)

    def test_borromean(self):
        diagram = borromean()
        seifert = seifert_graph(diagram, Orientation.of_components(diagram, (True, False, True)))
        self.assertEqual(seifert.bridge_count, 6)
        self.assertEqual(sum(len(cycle) for cycle in seifert.cycles), 12)
        for bridge in seifert.bridges:
            self.assertNotEqual(*bridge.circles)

    def test_floating_circle(self):
        diagram = DoodleDiagram((), 1)
        seifert = seifert_graph(diagram, Orientation.of_components(diagram, ()))
        self.assertEqual(seifert.cycle_count, 1)
        self.assertEqual(seifert.bridge_count, 0)

    def test_wrong_direction_count(self):
        with self.assertRaises(TwinWordError):
            Orientation.of_components(borromean(), (True,))


class FingerMoveTests(SimpleTestCase):

    def test_v_move_adds_a_removable_pair(self):
        diagram = borromean()
        orientation = Orientation.of_components(diagram, (True, True, True))
        triangle = diagram.face_orbits[0]
        moved, carried = v_move(diagram, orientation, triangle.darts[0], triangle.darts[1])
        self.assertEqual(moved.n, 8)
        assert_consistent(self, moved, carried)
        self.assertEqual(canonical_key(reduce(moved)), canonical_key(diagram))

    def test_v_move_needs_a_common_region(self):
        diagram = borromean()
        orientation = Orientation.of_components(diagram, (True, True, True))
        first, second = diagram.face_orbits[0], diagram.face_orbits[1]
        with self.assertRaises(TwinWordError):
            v_move(diagram, orientation, first.darts[0], first.darts[0])
        outside = next(h for h in second.darts if diagram.face_index[h] != 0)
        with self.assertRaises(TwinWordError):
            v_move(diagram, orientation, first.darts[0], outside)

    def test_closure_orientation_has_no_defect(self):
        diagram = closure(TwinWord(3, (1, 2) * 3))
        for directions in ((True,) * 3, (False,) * 3):
            orientation = Orientation.of_components(diagram, directions)
            if find_defect(diagram, orientation, seifert_graph(diagram, orientation)) is None:
                break
        else:
            self.fail("no orientation of a closed braid is free of defects")


class ToTwinWordTests(SimpleTestCase):

    def test_borromean(self):
        word = to_twin_word(borromean())
        self.assertEqual(word.strands, 3)
        self.assertEqual(canonical_key(reduce(closure(word))), canonical_key(borromean()))

    def test_poppy(self):
        word = to_twin_word(poppy())
        self.assertEqual(canonical_key(reduce(closure(word))), canonical_key(poppy()))

    def test_needs_minimal_diagram(self):
        with self.assertRaisesMessage(TwinWordError, 'not minimal'):
            to_twin_word(kink())
