'''
Copyright 2024 the levyx authors
This file is part of levyx.

levyx is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free
Software Foundation, either version 3 of the License, or (at your option)
any later version.

levyx is distributed in the hope that it will be useful, but WITHOUT ANY
WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
FOR A PARTICULAR PURPOSE. See the GNU General Public License for more
details: <http://www.gnu.org/licenses/>.
'''

import csv
import io
import json
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from math import exp
from unittest import TestCase
from unittest.mock import patch

import numpy as np
from scipy import integrate, stats

from levyx.cli import RunConfig, Report, cell, main, write_report
from levyx.enums import EBasisFamilies, EExitCodes, EOutputFormats, EPayoffs
from levyx.exceptions import ConfigurationError
from levyx.models import merton
from levyx.pricing import PricingRequest, ReferenceTable, TableRow, black_scholes, price_option

MODEL_INI = '''[model]
a = 0.02
gamma = 0
jump.measure = gaussian
jump.intensity = 0.3
jump.mean = -0.1
jump.std = 0.4
'''

def run(*argv:str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()

def parse(text:str) -> tuple[dict[str, str], list[dict[str, str]]]:
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith('# '):
            key, _, value = line[2:].partition(' = ')
            meta[key] = value
        else:
            body.append(line)
    return meta, list(csv.DictReader(body))

class TestRunConfig(TestCase):

    def test_validation(self):
        self.assertRaises(ConfigurationError, RunConfig, 'plot')
        self.assertRaises(ConfigurationError, RunConfig, 'price', order=-1)
        self.assertRaises(ConfigurationError, RunConfig, 'price', maturities=[])
        self.assertRaises(ConfigurationError, RunConfig, 'price', maturities=[0.])
        self.assertRaises(ConfigurationError, RunConfig, 'price', payoff='swap')
        self.assertRaises(ConfigurationError, RunConfig, 'mc', paths=0)
        self.assertRaises(ConfigurationError, RunConfig, 'bound', C=0.)
        cfg = RunConfig('price', family='two-point')
        self.assertEqual(cfg.family, EBasisFamilies.TWO_POINT)
        with self.assertRaises(ConfigurationError):
            cfg.dt = -1.

    def test_check(self):
        self.assertRaises(ConfigurationError, RunConfig('price').check)
        cfg = RunConfig('price', model_section={'preset': 'merton'}, payoff=EPayoffs.DELTA)
        self.assertRaises(ConfigurationError, cfg.check)
        cfg = RunConfig('price', model_section={'preset': 'merton'}, randomize=True)
        self.assertRaises(ConfigurationError, cfg.check)

    def test_request(self):
        cfg = RunConfig('price', model_section={'preset': 'merton'}, order=2, x0=0.1)
        model, drawn = cfg.model()
        self.assertEqual(drawn, ())
        req = cfg.request(model, 0.5, implied_vol=True)
        self.assertEqual((req.N, req.T, req.x0, req.implied_vol), (2, 0.5, 0.1, True))

class TestOutput(TestCase):

    def test_cells(self):
        self.assertEqual(cell(0.1 + 0.2), '0.3')
        self.assertEqual(cell(1 / 3), '0.3333333333')
        self.assertEqual(cell(None), '')
        self.assertEqual(cell(True), 'true')
        self.assertEqual(cell(np.int64(3)), '3')
        self.assertEqual(cell(EPayoffs.PUT), 'put')

    def test_csv(self):
        buf = io.StringIO()
        write_report(Report('price', ['T', 'value'], [[1., 0.5]], [('model', 'merton')]), buf)
        self.assertEqual(buf.getvalue(), '# schema levyx-price 1\n# model = merton\nT,value\n1,0.5\n')

    def test_json_lines(self):
        buf = io.StringIO()
        write_report(Report('bond', ['T', 'value'], [[1., 0.25]]), buf, EOutputFormats.JSON_LINES)
        lines = [json.loads(s) for s in buf.getvalue().splitlines()]
        self.assertEqual(lines[0]['schema'], 'levyx-bond')
        self.assertEqual(lines[1], {'T': 1., 'value': 0.25})

class TestCommands(TestCase):

    def test_price_gauss_row(self):
        code, out, _ = run('price', '--preset', 'cev-gauss', '--basis', 'taylor', '--order', '3',
                           '--payoff', 'put', '--t', '0.25', '--k', '-0.1438')
        self.assertEqual(code, 0)
        meta, rows = parse(out)
        self.assertIn('schema levyx-price 1', meta)
        self.assertEqual(meta['model'], 'cev-gauss')
        self.assertEqual(list(rows[0])[:6], ['T', 'k', 'v0', 'v1', 'v2', 'v3'])
        self.assertAlmostEqual(float(rows[0]['value']), 0.0111, delta=5e-4)
        self.assertAlmostEqual(float(rows[0]['iv']), 0.2875, delta=2e-3)
        self.assertNotIn('elapsed', rows[0])

    def test_price_vg_row(self):
        code, out, _ = run('price', '--preset', 'cev-vg', '--basis', 'taylor', '--order', '4',
                           '--payoff', 'put', '--t', '0.5', '--k', '-0.1438')
        self.assertEqual(code, 0)
        row = parse(out)[1][0]
        self.assertAlmostEqual(float(row['value']), 0.0363, delta=5e-4)
        self.assertAlmostEqual(float(row['iv']), 0.3336, delta=2e-3)

    def test_model_file_order_zero(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'model.ini')
            with open(path, 'w', encoding='utf-8') as f:
                f.write(MODEL_INI)
            code, out, _ = run('price', '--model', path, '--order', '0', '--payoff', 'call', '--t', '0.5',
                               '--k', '0.1')
        self.assertEqual(code, 0)
        exact = price_option(PricingRequest(merton(), EPayoffs.CALL, T=0.5, k=0.1, N=0)).total
        self.assertAlmostEqual(float(parse(out)[1][0]['value']), exact, delta=1e-9 * exact)

    def test_rows_and_determinism(self):
        argv = ('price', '--preset', 'merton', '--order', '1', '--payoff', 'call', '--t', '0.5', '1',
                '--k', '-0.1', '0', '0.1')
        code, out, _ = run(*argv)
        self.assertEqual(code, 0)
        rows = parse(out)[1]
        self.assertEqual([(r['T'], r['k']) for r in rows],
                         [('0.5', '-0.1'), ('0.5', '0'), ('0.5', '0.1'), ('1', '-0.1'), ('1', '0'), ('1', '0.1')])
        with patch.dict(os.environ, {'LEVYX_THREADS': '3'}):
            self.assertEqual(run(*argv)[1], out)

    def test_timings(self):
        code, out, _ = run('price', '--preset', 'merton', '--order', '1', '--t', '0.5', '--timings')
        self.assertEqual(code, 0)
        self.assertIn('elapsed', parse(out)[1][0])

    def test_density(self):
        sigma, tau = 0.2, 0.5
        code, out, _ = run('density', '--preset', 'black-scholes', '--order', '0', '--t', str(tau),
                           '--y-range', '-0.7', '0.7', '57')
        self.assertEqual(code, 0)
        rows = parse(out)[1]
        y = np.array([float(r['y']) for r in rows])
        p = np.array([float(r['value']) for r in rows])
        exact = stats.norm(-0.5 * sigma**2 * tau, sigma * np.sqrt(tau)).pdf(y)
        self.assertTrue(np.allclose(p, exact, rtol=0., atol=1e-7))
        self.assertAlmostEqual(float(integrate.trapezoid(p, y)), 1., delta=1e-3)

    def test_density_bound_columns(self):
        code, out, _ = run('density', '--preset', 'merton', '--order', '1', '--t', '0.25', '--y', '-0.2', '0.2',
                           '--bound', '--C', '2')
        self.assertEqual(code, 0)
        meta, rows = parse(out)
        self.assertIn('m_bar', meta)
        self.assertIn('not a certified bound', meta['envelope'])
        for r in rows:
            self.assertGreater(float(r['envelope']), 0.)
            self.assertAlmostEqual(float(r['envelope']), 2. * 0.25 * float(r['gamma_bar']), delta=1e-9)

    def test_bond(self):
        code, out, _ = run('bond', '--preset', 'merton', '--param', 'gamma=0.02', '--order', '2', '--t', '1', '2')
        self.assertEqual(code, 0)
        rows = parse(out)[1]
        for r, T in zip(rows, (1., 2.)):
            self.assertAlmostEqual(float(r['value']), exp(-0.02 * T), delta=1e-10)
            self.assertAlmostEqual(float(r['spread']), 0.02, delta=1e-9)
            self.assertAlmostEqual(float(r['s1']), 0., delta=1e-12)

    def test_bound(self):
        code, out, _ = run('bound', '--preset', 'merton', '--t', '0.5', '--x', '0', '--y', '0', '1')
        self.assertEqual(code, 0)
        meta, rows = parse(out)
        self.assertAlmostEqual(float(meta['m_bar']), 0.33, delta=1e-9)
        self.assertEqual(float(meta['dnu_norm']), 0.)
        self.assertEqual(len(rows), 2)
        self.assertEqual(run('bound', '--preset', 'cev-vg', '--t', '0.5')[0], EExitCodes.CONFIG)

    def test_mc(self):
        code, out, _ = run('mc', '--preset', 'black-scholes', '--payoff', 'call', '--t', '0.5', '--k', '0',
                           '--paths', '20000', '--dt', '0.5', '--seed', '3')
        self.assertEqual(code, 0)
        row = parse(out)[1][0]
        exact = black_scholes(0.2, 0.5, 0., 0., EPayoffs.CALL)
        self.assertLessEqual(abs(float(row['mean']) - exact), 4. * float(row['se']))
        self.assertEqual(row['paths'], '20000')

    def test_compare(self):
        code, out, _ = run('compare', '--preset', 'merton', '--order', '1', '--payoff', 'put', '--t', '0.5',
                           '--k', '-0.1', '0', '--paths', '4000', '--dt', '0.05')
        self.assertEqual(code, 0)
        rows = parse(out)[1]
        self.assertEqual(len(rows), 2)
        for r in rows:
            self.assertIn(r['in_ci'], ('true', 'false'))
            self.assertEqual(r['in_ci'] == 'true', float(r['mc_lo']) <= float(r['value']) <= float(r['mc_hi']))
            self.assertIn('timing_ratio', r)

    def test_randomize(self):
        code, out, _ = run('bond', '--preset', 'cev-gauss', '--randomize', '--seed', '5', '--t', '0.25')
        self.assertEqual(code, 0)
        meta, rows = parse(out)
        for name in ('delta', 'beta', 'intensity', 'mean', 'std'):
            self.assertIn(f'param.{name}', meta)
        self.assertAlmostEqual(float(rows[0]['value']), 1., delta=1e-12)
        again = run('bond', '--preset', 'cev-gauss', '--randomize', '--seed', '5', '--t', '0.25')[1]
        self.assertEqual(again, out)

    def test_table(self):
        code, out, _ = run('price', '--preset', 'cev-gauss', '--table')
        self.assertEqual(code, EExitCodes.OK)
        rows = parse(out)[1]
        self.assertEqual(len(rows), 20)
        self.assertTrue(all(r['ok'] == 'true' for r in rows))
        self.assertEqual(run('price', '--table', 'cev-gauss-random-1')[0], EExitCodes.OK)

    def test_table_regression(self):
        bad = ReferenceTable('merton', EPayoffs.PUT, EBasisFamilies.TAYLOR, 0, (TableRow(1., 0., 0.5),))
        with patch.dict('levyx.cli.commands.TABLES', {'bad': bad}):
            code, out, _ = run('price', '--table', 'bad')
        self.assertEqual(code, EExitCodes.REGRESSION)
        self.assertEqual(parse(out)[1][0]['ok'], 'false')

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'out.jsonl')
            code, out, _ = run('bond', '--preset', 'merton', '--t', '1', '-o', path, '--format', 'jsonl')
            self.assertEqual((code, out), (0, ''))
            with open(path, encoding='utf-8') as f:
                lines = [json.loads(s) for s in f]
        self.assertEqual(lines[0]['schema'], 'levyx-bond')
        self.assertAlmostEqual(lines[1]['value'], 1., delta=1e-12)

    def test_emit_config(self):
        code, out, _ = run('price', '--preset', 'merton', '--order', '2', '--basis', 'hermite', '--emit-config')
        self.assertEqual(code, 0)
        self.assertIn('[model]\npreset = merton', out)
        self.assertIn('order = 2', out)
        self.assertIn('family = hermite', out)
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'run.ini')
            with open(path, 'w', encoding='utf-8') as f:
                f.write(out)
            from_file = run('price', '--config', path, '--t', '0.5')
        self.assertEqual(from_file[1], run('price', '--preset', 'merton', '--order', '2', '--basis', 'hermite',
                                           '--t', '0.5')[1])

class TestErrors(TestCase):

    def assertError(self, expected:int, *argv:str, name:str='ConfigurationError'):
        code, out, err = run(*argv)
        self.assertEqual(code, expected)
        self.assertIn(f'error: {name}:', err)

    def test_config_errors(self):
        self.assertError(EExitCodes.CONFIG, 'price', '--t', '1')
        self.assertError(EExitCodes.CONFIG, 'price', '--preset', 'merton', '--paths', '0')
        self.assertError(EExitCodes.CONFIG, 'price', '--preset', 'merton', '--param', 'gamma')
        self.assertError(EExitCodes.CONFIG, 'price', '--config', '/nonexistent/levyx.ini',
                         name='FileNotFoundError')
        self.assertError(EExitCodes.CONFIG, 'mc', '--preset', 'cev-vg', '--paths', '10',
                         name='SchemeMismatchError')
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'bad.ini')
            with open(path, 'w', encoding='utf-8') as f:
                f.write(MODEL_INI + '[basis]\ncolour = red\n')
            self.assertError(EExitCodes.CONFIG, 'price', '--config', path)
            self.assertError(EExitCodes.CONFIG, 'price', '--model', path, '--preset', 'merton')

    def test_numeric_error(self):
        self.assertError(EExitCodes.NUMERIC, 'price', '--preset', 'merton', '--t', '1', '--R', '1',
                         name='TruncationError')
