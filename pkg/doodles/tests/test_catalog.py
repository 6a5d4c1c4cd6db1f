import os
import tempfile
import unittest
from dataclasses import replace

from django.test import SimpleTestCase

from doodles.catalog import (
    Catalog, CatalogEntry, available_crossing_counts, build_entries, census_table, entry_name, find_entry,
)
from doodles.classify import classify
from doodles.codes import code_of
from doodles.diagram import canonical_key
from doodles.exceptions import CatalogError
from doodles.search import FoundDoodle, SearchConfig, SearchResult, enumerate_doodles

from .fixtures import borromean, poppy

LONG_TESTS = bool(os.environ.get('DOODLE_LONG_TESTS'))


def search_result_of(*diagrams) -> SearchResult:
    found = [FoundDoodle(canonical_key(d), d, classify(d), code_of(d)) for d in diagrams]
    return SearchResult(diagrams[0].n, found)


class EntryTests(SimpleTestCase):

    def test_names(self):
        self.assertEqual(entry_name('S', 6, 3, 1), 'S6^3_1')
        entries = build_entries(search_result_of(borromean()))
        self.assertEqual([entry.name for entry in entries], ['S6^3_1'])
        entry = entries[0]
        self.assertEqual(entry.prefix, 'S')
        self.assertEqual(entry.index, 1)
        self.assertEqual(entry.code, '6: 8')
        self.assertEqual(entry.connectivity, 4)
        self.assertTrue(entry.prime and entry.super_prime)
        self.assertIsNotNone(entry.hamiltonian_code)
        self.assertTrue(entry.twin_word.startswith('k=3:'))

    def test_json(self):
        entry = build_entries(search_result_of(poppy()))[0]
        self.assertEqual(entry.name, 'S8^1_1')
        self.assertEqual(CatalogEntry.from_json(entry.to_json()), entry)
        self.assertEqual(canonical_key(entry.diagram()), canonical_key(poppy()))

    def test_bad_json(self):
        with self.assertRaises(CatalogError):
            CatalogEntry.from_json('{"name": "S6^3_1"}')
        with self.assertRaises(CatalogError):
            CatalogEntry.from_json('not json')


class CatalogTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name
        self.six = Catalog.from_search(search_result_of(borromean()), 14)
        self.eight = Catalog.from_search(search_result_of(poppy()), 14)

    def tearDown(self):
        self.tmp.cleanup()

    def test_write_and_load(self):
        path = self.six.write(self.dir)
        self.assertEqual(path, os.path.join(self.dir, 'catalog_6.jsonl'))
        self.assertTrue(os.path.exists(Catalog.meta_path(self.dir, 6)))
        loaded = Catalog.load(self.dir, 6)
        self.assertEqual(loaded.entries, self.six.entries)
        self.assertEqual(loaded.meta['crossing_budget'], 14)
        self.assertEqual(loaded.meta['n'], 6)
        self.assertEqual(os.listdir(self.dir).count('catalog_6.jsonl'), 1)
        self.assertFalse([name for name in os.listdir(self.dir) if name.endswith('.part')])

    def test_find_entry(self):
        self.six.write(self.dir)
        self.eight.write(self.dir)
        self.assertEqual(available_crossing_counts(self.dir), [6, 8])
        self.assertEqual(find_entry(self.dir, 'S8^1_1').n, 8)
        with self.assertRaisesMessage(CatalogError, 'unknown entry'):
            find_entry(self.dir, 'S6^3_2')
        with self.assertRaisesMessage(CatalogError, 'no catalog'):
            find_entry(self.dir, 'P9^1_1')
        with self.assertRaisesMessage(CatalogError, 'bad entry name'):
            find_entry(self.dir, 'borromean')

    def test_missing_catalog(self):
        with self.assertRaises(CatalogError):
            Catalog.load(self.dir, 7)

    def test_duplicate_keys(self):
        line = self.six.entries[0].to_json() + '\n'
        with open(Catalog.path(self.dir, 6), 'w') as f:
            f.write(line + line)
        with self.assertRaisesMessage(CatalogError, 'duplicate keys'):
            Catalog.load(self.dir, 6)

    def test_census_table(self):
        empty = Catalog(7, [])
        lines = census_table([self.eight, empty, self.six]).splitlines()
        self.assertEqual([cell.strip() for cell in lines[0].split('|')], ['n', 'm=1', 'm=2', 'm=3', 'm=4'])
        self.assertEqual([cell.strip() for cell in lines[1].split('|')], ['6', '', '', '0,1', ''])
        self.assertEqual([cell.strip() for cell in lines[2].split('|')], ['7', '', '', '', ''])
        self.assertEqual([cell.strip() for cell in lines[3].split('|')], ['8', '0,1', '', '', ''])

    def test_non_prime_entries_are_named_but_not_counted(self):
        tagged = replace(self.six.entries[0], name='N6^3_1', connectivity=2, prime=False, super_prime=False)
        self.assertEqual(tagged.prefix, 'N')
        self.assertEqual(tagged.index, 1)
        catalog = Catalog(6, [tagged])
        catalog.write(self.dir)
        self.assertEqual(find_entry(self.dir, 'N6^3_1'), tagged)
        lines = census_table([catalog]).splitlines()
        self.assertEqual([cell.strip() for cell in lines[1].split('|')], ['6', '', '', '', ''])


class WorkerCountTests(SimpleTestCase):

    def assert_same_catalog(self, n):
        with tempfile.TemporaryDirectory() as single_dir, tempfile.TemporaryDirectory() as pooled_dir:
            catalogs = []
            for workers, catalog_dir in ((1, single_dir), (2, pooled_dir)):
                catalog = Catalog.from_search(enumerate_doodles(n, SearchConfig(n, workers=workers)), 14)
                catalog.write(catalog_dir)
                catalogs.append(catalog)
            single, pooled = catalogs
            self.assertEqual([e.to_json() for e in single.entries], [e.to_json() for e in pooled.entries])
            with open(Catalog.path(single_dir, n), 'rb') as a, open(Catalog.path(pooled_dir, n), 'rb') as b:
                self.assertEqual(a.read(), b.read())
            self.assertEqual(census_table([single]), census_table([pooled]))

    def test_ten_crossings(self):
        self.assert_same_catalog(10)

    @unittest.skipUnless(LONG_TESTS, "set DOODLE_LONG_TESTS to run the 11 crossing catalog twice")
    def test_eleven_crossings(self):
        self.assert_same_catalog(11)
