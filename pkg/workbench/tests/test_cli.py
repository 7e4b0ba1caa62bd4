import os
import shutil
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO

from django.test import SimpleTestCase

from workbench.cli import main

from .fixtures import LOOPS_GRAMMAR, ROUND_ONE_GRAMMAR


class MainExitCodeTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls._tmp = tempfile.mkdtemp(prefix='workbench-cli-tests-')
        cls.round_one = os.path.join(cls._tmp, 'round_one.gram')
        cls.loops = os.path.join(cls._tmp, 'loops.gram')
        for path, text in ((cls.round_one, ROUND_ONE_GRAMMAR), (cls.loops, LOOPS_GRAMMAR)):
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write(text)

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls._tmp, ignore_errors=True)
        super().tearDownClass()

    def _main(self, *argv):
        out, err = StringIO(), StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_success(self):
        code, out, _ = self._main('el', self.round_one, 'A', 'B', '--cap', '5', '--vars', 'dead')
        self.assertEqual((code, out), (0, 'Finite(1)\n'))

    def test_lower_bound(self):
        code, out, _ = self._main('el', self.round_one, 'B', 'B', '--cap', '3')
        self.assertEqual((code, out), (2, 'AtLeast(3)\n'))

    def test_budget(self):
        code, _, err = self._main('basis', self.loops, '--n', '0', '--s', '2', '--budget', '15')
        self.assertEqual(code, 3)
        self.assertIn('enumeration budget', err)

    def test_input_errors(self):
        self.assertEqual(self._main('measure', os.path.join(self._tmp, 'missing.gram'), 'A')[0], 4)
        self.assertEqual(self._main('el', self.round_one, 'A', 'B')[0], 4)
        code, _, err = self._main('frobnicate')
        self.assertEqual(code, 4)
        self.assertIn('usage: fogbench', err)
        self.assertEqual(self._main()[0], 4)
