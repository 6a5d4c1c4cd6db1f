import random
from collections import Counter

from django.test import SimpleTestCase

from doodles.diagram import (
    DoodleDiagram, canonical_diagram, canonical_key, components, diagram_from_key,
    find_removable_vertex_circles, is_minimal, reduce, remove_crossings, trace_regions,
)
from doodles.exceptions import DiagramError
from doodles.twin import TwinWord, closure

from .fixtures import (
    borromean, borromean_union, borromean_with_vertex_circle, kink, poppy, relabeled, two_circle_bigon,
)


class DiagramTests(SimpleTestCase):

    def test_borromean_regions(self):
        diagram = borromean()
        regions = trace_regions(diagram)
        self.assertEqual(diagram.n, 6)
        self.assertEqual(len(regions), 8)
        self.assertTrue(all(region.size == 3 for region in regions))
        self.assertEqual(len(components(diagram)), 3)
        self.assertTrue(is_minimal(diagram))

    def test_poppy_regions(self):
        diagram = poppy()
        sizes = Counter(region.size for region in trace_regions(diagram))
        self.assertEqual(sizes, Counter({3: 8, 4: 2}))
        self.assertEqual(len(components(diagram)), 1)

    def test_region_sizes_sum_to_four_per_crossing(self):
        for diagram in (borromean(), poppy(), borromean_with_vertex_circle()):
            regions = trace_regions(diagram)
            self.assertEqual(len(regions), diagram.n + 2)
            self.assertEqual(sum(region.size for region in regions), 4 * diagram.n)

    def test_trace_regions_errors(self):
        with self.assertRaisesMessage(DiagramError, 'no crossings'):
            trace_regions(DoodleDiagram((), 1))
        split = DoodleDiagram(borromean().partner, 1)
        with self.assertRaisesMessage(DiagramError, 'disconnected'):
            trace_regions(split)

    def test_rejects_bad_partner(self):
        with self.assertRaises(DiagramError):
            DoodleDiagram((1, 0, 3))
        with self.assertRaises(DiagramError):
            DoodleDiagram((1, 0, 2, 3))

    def test_rejects_non_planar_rotation(self):
        # one crossing whose slots are joined across: a torus picture
        with self.assertRaisesMessage(DiagramError, 'non-planar rotation system'):
            DoodleDiagram((2, 3, 0, 1))

    def test_kink_reduces_to_circle(self):
        diagram = kink()
        self.assertFalse(is_minimal(diagram))
        reduced = reduce(diagram)
        self.assertEqual(reduced.n, 0)
        self.assertEqual(reduced.floating_circles, 1)

    def test_bigon_reduces_to_two_circles(self):
        reduced = reduce(two_circle_bigon())
        self.assertEqual(reduced.n, 0)
        self.assertEqual(reduced.floating_circles, 2)

    def test_minimal_diagram_is_fixed_by_reduce(self):
        diagram = poppy()
        self.assertEqual(reduce(diagram), diagram)

    def test_remove_crossings_drop_loops(self):
        diagram = two_circle_bigon()
        self.assertEqual(remove_crossings(diagram, {0, 1}).floating_circles, 2)
        self.assertEqual(remove_crossings(diagram, {0, 1}, drop_loops=True).floating_circles, 0)

    def test_key_ignores_labels_and_mirroring(self):
        diagram = poppy()
        key = canonical_key(diagram)
        order = [3, 7, 0, 5, 1, 6, 2, 4]
        self.assertEqual(canonical_key(relabeled(diagram, order)), key)
        self.assertEqual(canonical_key(relabeled(diagram, order, mirror=True)), key)

    def test_keys_separate_different_doodles(self):
        self.assertNotEqual(canonical_key(borromean()), canonical_key(poppy()))

    def test_key_decodes_to_canonical_diagram(self):
        for diagram in (borromean(), poppy(), borromean_union()):
            key = canonical_key(diagram)
            decoded = diagram_from_key(key)
            self.assertEqual(canonical_key(decoded), key)
        self.assertEqual(diagram_from_key(canonical_key(poppy())), canonical_diagram(poppy()))

    def test_bad_key(self):
        with self.assertRaises(DiagramError):
            diagram_from_key(b'\x00\x08\x01')

    def test_vertex_circle_is_found(self):
        self.assertEqual(find_removable_vertex_circles(borromean()), [])
        diagram = borromean_with_vertex_circle()
        self.assertEqual(diagram.n, 10)
        found = find_removable_vertex_circles(diagram)
        self.assertEqual(len(found), 1)
        self.assertEqual(sorted(found[0].crossings), [6, 7, 8, 9])

    def test_reduce_order_does_not_matter(self):
        rng = random.Random(7)
        for _ in range(1000):
            strands = rng.randint(2, 4)
            word = TwinWord(strands, tuple(rng.randint(1, strands - 1) for _ in range(rng.randint(0, 10))))
            diagram = closure(word)
            first = reduce(diagram, random.Random(rng.random()))
            second = reduce(diagram, random.Random(rng.random()))
            self.assertEqual(canonical_key(first), canonical_key(second), str(word))

    def test_closure_ignores_cyclic_shifts(self):
        rng = random.Random(11)
        for _ in range(300):
            strands = rng.randint(2, 4)
            letters = tuple(rng.randint(1, strands - 1) for _ in range(rng.randint(1, 10)))
            k = rng.randint(0, len(letters))
            shifted = letters[k:] + letters[:k]
            first = reduce(closure(TwinWord(strands, letters)))
            second = reduce(closure(TwinWord(strands, shifted)))
            self.assertEqual(canonical_key(first), canonical_key(second), f"{letters} shifted by {k}")
