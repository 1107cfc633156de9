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

import configparser
import io
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Optional

import numpy as np

from levyx.auxiliary import f2s
from levyx.enums import EBasisFamilies, EEngines, EOutputFormats, EPayoffs, ESchemes
from levyx.exceptions import ConfigurationError
from levyx.mc import SimulationConfig
from levyx.models import ModelSpec, model_from_section, model_to_section, random_cev_gauss
from levyx.pricing import PricingRequest

logger = logging.getLogger(__name__)

COMMANDS = ('price', 'density', 'iv', 'bond', 'bound', 'mc', 'compare')
"""Subcommands of the command line"""

_INI_KEYS:dict[str, dict[str, tuple[str, Callable[[str], Any]]]] = {
    'basis': {'family': ('family', EBasisFamilies), 'order': ('order', int), 'xbar': ('xbar', float),
              'delta': ('delta', float), 'quad.order': ('basis_quad_order', int)},
    'numerics': {'engine': ('engine', EEngines), 'contour': ('contour', float), 'truncation': ('R', float),
                 'time.quad.order': ('quad_order', int)},
    'mc': {'scheme': ('scheme', ESchemes), 'dt': ('dt', float), 'paths': ('paths', int), 'seed': ('seed', int),
           'antithetic': ('antithetic', lambda s: s.strip().lower() in ('1', 'yes', 'true', 'on')),
           'block.size': ('block_size', int)},
}
"""Section -> key -> (RunConfig field, parser)"""

@dataclass
class RunConfig:
    """
    Resolved settings of one command line run. Fields are checked on
    assignment, the model source by check().

    Args:
        command: Subcommand
        model_section: Keys of the [model] section, see model_from_section
        payoff: Optional. Payoff type
        maturities: Optional. Times to maturity
        strikes: Optional. Log-strikes
        ys: Optional. Target log-prices of densities and envelopes
        x0: Optional. Initial log-price
        family: Optional. Basis family
        order: Optional. Expansion order N
        xbar: Optional. Expansion point
        delta: Optional. Half distance of the two-point expansion points
        basis_quad_order: Optional. Gauss-Hermite nodes of the Hermite basis
        engine: Optional. Time integration engine
        contour: Optional. Imaginary part of the contour
        R: Optional. Truncation of the inverse transform
        quad_order: Optional. Gauss-Legendre nodes of the inhomogeneous engine
        scheme: Optional. Monte Carlo scheme
        dt: Optional. Monte Carlo time step
        paths: Optional. Monte Carlo paths
        seed: Optional. Seed of simulations and random parameters
        antithetic: Optional. Antithetic Monte Carlo paths
        block_size: Optional. Monte Carlo paths per block
        m_bar: Optional. Dominating constant of the envelopes, automatic if None
        C: Optional. Scale of the envelopes
        bound: Optional. Add envelope columns to densities
        table: Optional. Reference table to reproduce
        randomize: Optional. Draw random cev-gauss parameters
        timings: Optional. Emit elapsed times
        output: Optional. Output file, stdout if None
        fmt: Optional. Output format
    """
    command:str
    model_section:dict[str, str] = field(default_factory=dict)
    payoff:EPayoffs = EPayoffs.PUT
    maturities:list[float] = field(default_factory=lambda: [1.])
    strikes:list[float] = field(default_factory=lambda: [0.])
    ys:list[float] = field(default_factory=lambda: [0.])
    x0:float = 0.
    family:EBasisFamilies = EBasisFamilies.TAYLOR
    order:int = 3
    xbar:Optional[float] = None
    delta:float = 0.5
    basis_quad_order:int = 32
    engine:Optional[EEngines] = None
    contour:Optional[float] = None
    R:Optional[float] = None
    quad_order:int = 24
    scheme:ESchemes = ESchemes.EULER_GAUSSIAN_JUMP
    dt:float = 1e-3
    paths:int = 100_000
    seed:int = 0
    antithetic:bool = False
    block_size:int = 10_000
    m_bar:Optional[float] = None
    C:float = 1.
    bound:bool = False
    table:Optional[str] = None
    randomize:bool = False
    timings:bool = False
    output:Optional[str] = None
    fmt:EOutputFormats = EOutputFormats.CSV

    def __setattr__(self, name:str, value:Any) -> None:
        if name == 'command' and value not in COMMANDS:
            raise ConfigurationError(f'command must be one of {COMMANDS}, got {value!r}')
        if name in ('payoff', 'family', 'scheme', 'fmt') or (name == 'engine' and value is not None):
            enum = {'payoff': EPayoffs, 'family': EBasisFamilies, 'scheme': ESchemes,
                    'fmt': EOutputFormats, 'engine': EEngines}[name]
            try:
                value = enum(value)
            except ValueError as e:
                raise ConfigurationError(f'{name} must be one of {[m.value for m in enum]}, got {value!r}') from e
        if name in ('maturities', 'strikes', 'ys'):
            value = [float(v) for v in value]
            if not value:
                raise ConfigurationError(f'{name} must not be empty')
            if name == 'maturities' and min(value) <= 0:
                raise ConfigurationError(f'maturities must be > 0, got {value}')
        if name in ('order', 'block_size', 'quad_order', 'basis_quad_order') and value < (0 if name == 'order' else 1):
            raise ConfigurationError(f'{name} must be >= {0 if name == "order" else 1}, got {value}')
        if name == 'paths' and value < 1:
            raise ConfigurationError(f'paths must be >= 1, got {value}')
        if name in ('dt', 'C') and not value > 0:
            raise ConfigurationError(f'{name} must be > 0, got {value}')
        if name in ('m_bar', 'R') and value is not None and not value > 0:
            raise ConfigurationError(f'{name} must be > 0, got {value}')
        super().__setattr__(name, value)

    def check(self):
        """
        Checks the cross-field rules.

        Raises:
            ConfigurationError: If no model is given, or payoff and command do not fit
        """
        if not self.model_section:
            raise ConfigurationError('no model given, use --preset, --model or a [model] section in --config')
        if self.command in ('price', 'iv', 'mc', 'compare') and self.payoff not in (EPayoffs.CALL, EPayoffs.PUT):
            raise ConfigurationError(f"'{self.command}' needs a call or put payoff, got '{self.payoff.value}'")
        if self.randomize and self.model_section.get('preset', '').strip() != 'cev-gauss':
            raise ConfigurationError('--randomize draws cev-gauss parameters and needs --preset cev-gauss')

    def model(self) -> tuple[ModelSpec, tuple[tuple[str, float], ...]]:
        """Gets the model and, with randomize, the drawn parameters"""
        if self.randomize:
            model = random_cev_gauss(np.random.default_rng(self.seed))
            return model, model.params
        return model_from_section(self.model_section), ()

    def request(self, model:ModelSpec, T:float, **kwargs) -> PricingRequest:
        """Gets the pricing request of one maturity"""
        kw = dict(model=model, payoff=self.payoff, T=T, x0=self.x0, N=self.order, family=self.family,
                  xbar=self.xbar, delta=self.delta, engine=self.engine, contour=self.contour, R=self.R,
                  quad_order=self.quad_order, basis_quad_order=self.basis_quad_order, timings=self.timings)
        kw.update(kwargs)
        return PricingRequest(**kw)

    def simulation(self) -> SimulationConfig:
        """Gets the Monte Carlo settings"""
        return SimulationConfig(self.scheme, self.dt, self.paths, self.seed, self.antithetic, self.block_size)

    def apply_ini(self, parser:configparser.ConfigParser):
        """
        Takes the [model], [basis], [numerics] and [mc] sections of an INI file.

        Raises:
            ConfigurationError: On unknown keys or values of the wrong type
        """
        if parser.has_section('model'):
            self.model_section = dict(parser['model'])
        for section, keys in _INI_KEYS.items():
            if not parser.has_section(section):
                continue
            for key, text in parser[section].items():
                if key not in keys:
                    raise ConfigurationError(f"unknown key '{key}' in [{section}], allowed are {sorted(keys)}")
                name, parse = keys[key]
                try:
                    value = parse(text)
                except ValueError as e:
                    raise ConfigurationError(f"[{section}] {key} = '{text}' is invalid: {e}") from e
                setattr(self, name, value)
        logger.debug('applied INI sections %s', parser.sections())

    def to_ini(self, model:Optional[ModelSpec]=None) -> str:
        """Gets the resolved configuration as INI text"""
        parser = configparser.ConfigParser(interpolation=None)
        parser['model'] = model_to_section(model) if model is not None else self.model_section
        for section, keys in _INI_KEYS.items():
            out = {}
            for key, (name, _) in keys.items():
                value = getattr(self, name)
                if value is None:
                    continue
                if isinstance(value, bool):
                    out[key] = 'yes' if value else 'no'
                elif isinstance(value, float):
                    out[key] = f2s(value)
                else:
                    out[key] = str(getattr(value, 'value', value))
            parser[section] = out
        buffer = io.StringIO()
        parser.write(buffer)
        return buffer.getvalue()

def read_ini(filename:str) -> configparser.ConfigParser:
    """
    Reads an INI file.

    Raises:
        OSError: If the file cannot be read
        ConfigurationError: If the file is no valid INI
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(filename, encoding='utf-8') as f:
            parser.read_file(f)
    except configparser.Error as e:
        raise ConfigurationError(f"cannot parse '{filename}': {e}") from e
    return parser

def preset_section(name:str, params:Mapping[str, float]) -> dict[str, str]:
    """Gets the [model] section of a preset with parameter overrides"""
    return {'preset': name, **{f'param.{k}': f2s(v) for k, v in params.items()}}
