from collections import Counter

from django.test import SimpleTestCase

from doodles.codes import DoodleCode, code_of, enumerate_codes
from doodles.exceptions import CodeError

from .fixtures import borromean, kink, poppy


class CodeTests(SimpleTestCase):

    def test_codes_table(self):
        self.assertEqual([str(code) for code in enumerate_codes(6)], ['6: 8'])
        self.assertEqual(enumerate_codes(7), [])
        self.assertEqual([str(code) for code in enumerate_codes(8)], ['8: 8,2'])
        self.assertEqual([str(code) for code in enumerate_codes(9)], ['9: 8,3'])
        self.assertEqual(
            [str(code) for code in enumerate_codes(10)],
            ['10: 8,4', '10: 9,2,1', '10: 10,0,2'],
        )
        self.assertEqual(
            [str(code) for code in enumerate_codes(11)],
            ['11: 8,5', '11: 9,3,1', '11: 10,1,2'],
        )

    def test_every_code_satisfies_euler(self):
        for n in range(3, 15):
            for prime_only in (True, False):
                for code in enumerate_codes(n, prime_only):
                    self.assertTrue(code.satisfies_euler(), str(code))
                    self.assertGreaterEqual(code.f(3), 8)
                    if prime_only:
                        self.assertLess(code.p, (n + 1) / 2)

    def test_unrestricted_codes_include_prime_ones(self):
        for n in range(6, 13):
            self.assertLessEqual(set(enumerate_codes(n)), set(enumerate_codes(n, prime_only=False)))

    def test_too_few_crossings(self):
        with self.assertRaisesMessage(CodeError, 'too few crossings'):
            enumerate_codes(2)

    def test_code_of_known_doodles(self):
        self.assertEqual(code_of(borromean()), DoodleCode.parse('6: 8'))
        self.assertEqual(str(code_of(poppy())), '8: 8,2')

    def test_code_of_requires_minimal(self):
        with self.assertRaisesMessage(CodeError, 'not minimal'):
            code_of(kink())

    def test_trailing_zeros_are_trimmed(self):
        self.assertEqual(DoodleCode(8, (8, 2, 0, 0)), DoodleCode(8, (8, 2)))
        self.assertEqual(DoodleCode(8, (8, 2)).p, 4)

    def test_valency_targets_leave_out_one_largest_region(self):
        self.assertEqual(DoodleCode.parse('8: 8,2').valency_targets(), Counter({3: 8, 4: 1}))
        self.assertEqual(DoodleCode.parse('6: 8').valency_targets(), Counter({3: 7}))

    def test_parse_rejects_garbage(self):
        with self.assertRaises(CodeError):
            DoodleCode.parse('eight: 8,2')
