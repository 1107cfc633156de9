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

import argparse
import logging
import sys
from typing import Optional, Sequence

import numpy as np

from levyx.enums import EBasisFamilies, EEngines, EExitCodes, EOutputFormats, EPayoffs, ESchemes
from levyx.exceptions import ConfigurationError, NumericalError
from levyx.models import PRESETS
from .commands import COMMAND_FUNCS, cmd_table
from .config import COMMANDS, RunConfig, preset_section, read_ini
from .output import write_report

logger = logging.getLogger(__name__)

_FLAGS = {
    'payoff': 'payoff', 'maturities': 'maturities', 'strikes': 'strikes', 'ys': 'ys', 'x0': 'x0',
    'basis': 'family', 'order': 'order', 'xbar': 'xbar', 'delta': 'delta', 'quad_order': 'basis_quad_order',
    'engine': 'engine', 'contour': 'contour', 'R': 'R', 'time_quad_order': 'quad_order',
    'scheme': 'scheme', 'dt': 'dt', 'paths': 'paths', 'seed': 'seed', 'antithetic': 'antithetic',
    'block_size': 'block_size', 'm_bar': 'm_bar', 'C': 'C', 'bound': 'bound', 'table': 'table',
    'randomize': 'randomize', 'timings': 'timings', 'output': 'output', 'format': 'fmt',
}
"""argparse dest -> RunConfig field"""

def _values(e) -> list[str]:
    return [m.value for m in e]

def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group('model')
    src.add_argument('--config', help='INI file with [model], [basis], [numerics] and [mc] sections')
    src.add_argument('--preset', choices=sorted(PRESETS), help='named model')
    src.add_argument('--model', help='INI file with a [model] section')
    src.add_argument('--param', action='append', default=[], metavar='NAME=VALUE',
                     help='preset parameter override, repeatable')
    src.add_argument('--randomize', action='store_const', const=True,
                     help='draw random cev-gauss parameters from --seed')

    job = p.add_argument_group('contract')
    job.add_argument('--payoff', choices=_values(EPayoffs))
    job.add_argument('--t', dest='maturities', type=float, nargs='+', metavar='T', help='times to maturity')
    job.add_argument('--k', dest='strikes', type=float, nargs='+', metavar='K', help='log-strikes')
    job.add_argument('--y', dest='ys', type=float, nargs='+', metavar='Y', help='target log-prices')
    job.add_argument('--y-range', type=float, nargs=3, metavar=('LO', 'HI', 'N'), help='evenly spaced targets')
    job.add_argument('--x0', '--x', dest='x0', type=float, help='initial log-price')

    basis = p.add_argument_group('basis')
    basis.add_argument('--basis', choices=_values(EBasisFamilies))
    basis.add_argument('--order', type=int, help='expansion order N')
    basis.add_argument('--xbar', type=float, help='expansion point')
    basis.add_argument('--delta', type=float, help='half distance of the two-point expansion points')
    basis.add_argument('--quad-order', type=int, help='Gauss-Hermite nodes of the Hermite basis')

    num = p.add_argument_group('numerics')
    num.add_argument('--engine', choices=_values(EEngines))
    num.add_argument('--contour', type=float, help='imaginary part of the inversion contour')
    num.add_argument('--R', dest='R', type=float, help='truncation of the inverse transform')
    num.add_argument('--time-quad-order', type=int, help='Gauss-Legendre nodes of the inhomogeneous engine')

    mc = p.add_argument_group('monte carlo')
    mc.add_argument('--scheme', choices=_values(ESchemes))
    mc.add_argument('--paths', type=int)
    mc.add_argument('--dt', type=float)
    mc.add_argument('--seed', type=int)
    mc.add_argument('--block-size', type=int)
    mc.add_argument('--antithetic', action='store_const', const=True)

    env = p.add_argument_group('envelopes')
    env.add_argument('--bound', action='store_const', const=True, help='add envelope columns to densities')
    env.add_argument('--m-bar', type=float, help='dominating constant, derived from the model if omitted')
    env.add_argument('--C', dest='C', type=float, help='envelope scale')

    out = p.add_argument_group('output')
    out.add_argument('--table', nargs='?', const='', help='reproduce a reference table, exit 4 on mismatch')
    out.add_argument('--timings', action='store_const', const=True, help='emit elapsed times')
    out.add_argument('-o', '--output', help='output file, stdout if omitted')
    out.add_argument('--format', choices=_values(EOutputFormats))
    out.add_argument('--emit-config', action='store_true', help='print the resolved configuration and exit')
    out.add_argument('-v', '--verbose', action='count', default=0, help='-v info, -vv debug')
    return p

def build_parser() -> argparse.ArgumentParser:
    """Gets the parser of the levyx command line"""
    parser = argparse.ArgumentParser(prog='levyx',
                                     description='Asymptotic expansions of prices and densities in '
                                                 'Levy-type models')
    common = _common_parser()
    sub = parser.add_subparsers(dest='command', required=True)
    helps = {'price': 'option prices per order', 'density': 'transition densities',
             'iv': 'implied volatility curves', 'bond': 'defaultable bonds and credit spreads',
             'bound': 'error envelope shapes', 'mc': 'Monte Carlo prices',
             'compare': 'expansion against Monte Carlo'}
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser

def _params(items:Sequence[str]) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.partition('=')
        if not sep:
            raise ConfigurationError(f"--param needs NAME=VALUE, got '{item}'")
        try:
            out[name.strip()] = float(value)
        except ValueError as e:
            raise ConfigurationError(f"--param {name.strip()} must be a number, got '{value}'") from e
    return out

def resolve(args:argparse.Namespace) -> RunConfig:
    """
    Gets the run configuration: defaults, then the --config file, then flags.

    Raises:
        ConfigurationError: On conflicting model sources or invalid values
        OSError: If a file cannot be read
    """
    cfg = RunConfig(args.command)
    if args.config:
        cfg.apply_ini(read_ini(args.config))
    if args.preset and args.model:
        raise ConfigurationError('give either --preset or --model, not both')
    if args.model:
        parser = read_ini(args.model)
        if not parser.has_section('model'):
            raise ConfigurationError(f"'{args.model}' has no [model] section")
        cfg.model_section = dict(parser['model'])
    if args.preset:
        cfg.model_section = preset_section(args.preset, _params(args.param))
    elif args.param:
        if 'preset' not in cfg.model_section:
            raise ConfigurationError('--param needs a preset model')
        cfg.model_section.update({f'param.{k}': str(v) for k, v in _params(args.param).items()})
    for dest, name in _FLAGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            setattr(cfg, name, value)
    if args.y_range is not None:
        lo, hi, n = args.y_range
        if n < 1 or n != int(n):
            raise ConfigurationError(f'--y-range needs a positive integer count, got {n}')
        cfg.ys = list(np.linspace(lo, hi, int(n)))
    return cfg

def _logging(verbose:int):
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')
    logging.captureWarnings(True)

def main(argv:Optional[Sequence[str]]=None) -> int:
    """
    Runs the levyx command line.

    Returns:
        int: 0 ok, 2 invalid configuration, 3 numerical failure,
            4 reference table mismatch
    """
    args = build_parser().parse_args(argv)
    _logging(args.verbose)
    try:
        cfg = resolve(args)
        table_mode = args.command == 'price' and cfg.table is not None
        model, drawn = None, ()
        if not table_mode:
            cfg.check()
            model, drawn = cfg.model()
        if args.emit_config:
            sys.stdout.write(cfg.to_ini(model if cfg.randomize else None))
            return int(EExitCodes.OK)
        report = cmd_table(cfg) if table_mode else COMMAND_FUNCS[args.command](cfg, model, drawn)
        if cfg.output:
            with open(cfg.output, 'w', encoding='utf-8', newline='') as f:
                write_report(report, f, cfg.fmt)
        else:
            write_report(report, sys.stdout, cfg.fmt)
        return int(report.exit_code)
    except NumericalError as e:
        print(f'error: {type(e).__name__}: {e}', file=sys.stderr)
        return int(EExitCodes.NUMERIC)
    except (ConfigurationError, ValueError, OSError) as e:
        print(f'error: {type(e).__name__}: {e}', file=sys.stderr)
        return int(EExitCodes.CONFIG)

if __name__ == '__main__':
    raise SystemExit(main())
