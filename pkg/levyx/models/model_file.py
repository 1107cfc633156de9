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

Model files are INI files whose [model] section holds either a preset

    [model]
    preset = cev-gauss
    param.delta = 0.3

or coefficient expressions in t and x

    [model]
    a = 0.02*exp(-1.5*x)
    gamma = 0
    jump.multiplier = exp(-1.5*x)
    jump.measure = gaussian
    jump.intensity = 0.3
    jump.mean = -0.1
    jump.std = 0.4

A proportional model a = f A, gamma = f Gamma, nu = f W measure is given by
the keys profile, profile.a, profile.gamma and profile.weight instead of
a, gamma and jump.multiplier.
'''

import configparser
import logging
from dataclasses import fields
from typing import Any, Mapping, Optional

import numpy as np
import sympy

from levyx.auxiliary import f2s
from levyx.enums import EJumpMeasures
from levyx.exceptions import ConfigurationError
from levyx.protocols import ILevyMeasure
from .coefficient import Coefficient
from .levy_measure import GaussianJumps, NumericDensityJumps, VarianceGammaJumps
from .model_spec import ModelSpec
from .presets import PRESETS, get_preset

logger = logging.getLogger(__name__)

_t, _x, _z = sympy.symbols('t x z', real=True)

_MEASURE_KEYS = {
    EJumpMeasures.GAUSSIAN: ('intensity', 'mean', 'std'),
    EJumpMeasures.VARIANCE_GAMMA: ('theta', 'rho', 'kappa'),
    EJumpMeasures.NUMERIC: ('density', 'bounds'),
}

class _ExprFunc:
    """Lambdified sympy expression, broadcast to the shape of its last argument"""

    def __init__(self, expr:sympy.Expr, args:tuple[sympy.Symbol, ...]):
        self.expr = expr
        self.label = str(expr)
        self._f = sympy.lambdify(args, expr, 'numpy')

    def __call__(self, *args:Any) -> Any:
        v = self._f(*args)
        shape = np.shape(args[-1])
        if np.shape(v) != shape:
            v = np.broadcast_to(v, shape)
        return np.asarray(v, dtype=float)

class _ExprDx:
    """x-derivatives of a sympy expression, lambdified once per order"""

    def __init__(self, expr:sympy.Expr):
        self.expr = expr
        self._cache:dict[int, _ExprFunc] = {}

    def __call__(self, t:float, x:float, n:int) -> float:
        if n not in self._cache:
            logger.debug('lambdify d^%d/dx^%d of %s', n, n, self.expr)
            self._cache[n] = _ExprFunc(sympy.diff(self.expr, _x, n), (_t, _x))
        return float(self._cache[n](t, x))

def _parse(text:str, allowed:set[sympy.Symbol], what:str) -> sympy.Expr:
    try:
        expr = sympy.sympify(text, locals={s.name: s for s in allowed})
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise ConfigurationError(f"cannot parse {what} '{text}': {e}") from e
    unknown = expr.free_symbols - allowed
    if unknown:
        raise ConfigurationError(f"{what} '{text}' uses unknown symbols {sorted(map(str, unknown))}, "
                                 f"allowed are {sorted(s.name for s in allowed)}")
    return expr

def coefficient_from_expression(text:str) -> Coefficient:
    """
    Gets a Coefficient from an expression string in t and x.

    The x-derivatives are obtained symbolically, so the coefficient can be
    expanded in the Taylor and two-point bases without finite differences.

    Args:
        text (str): Expression, e.g. '0.02*exp(-1.5*x)'

    Raises:
        ConfigurationError: If the text is no valid expression in t and x

    Returns:
        Coefficient
    """
    expr = _parse(text, {_t, _x}, 'coefficient')
    if expr.is_number:
        return Coefficient.constant(float(expr))
    return Coefficient(_ExprFunc(expr, (_t, _x)), _ExprDx(expr), _t not in expr.free_symbols, str(expr))

def _floats(section:Mapping[str, str], keys:tuple[str, ...], prefix:str) -> dict[str, float]:
    out = {}
    for k in keys:
        key = f'{prefix}{k}'
        if key not in section:
            raise ConfigurationError(f"missing key '{key}'")
        try:
            out[k] = float(section[key])
        except ValueError as e:
            raise ConfigurationError(f"key '{key}' must be a number, got '{section[key]}'") from e
    return out

def _interval(text:str, key:str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(','))
    except ValueError as e:
        raise ConfigurationError(f"key '{key}' must be 'lo, hi', got '{text}'") from e
    return lo, hi

def measure_from_section(section:Mapping[str, str]) -> Optional[ILevyMeasure]:
    """
    Gets the Levy measure declared by the jump.* keys of a [model] section.

    Args:
        section (Mapping[str, str]): [model] section

    Raises:
        ConfigurationError: If the measure is unknown or a parameter is missing

    Returns:
        Optional[ILevyMeasure]: None if no jump.measure is given
    """
    if 'jump.measure' not in section:
        return None
    try:
        kind = EJumpMeasures(section['jump.measure'].strip())
    except ValueError as e:
        raise ConfigurationError(f"jump.measure must be one of {[m.value for m in EJumpMeasures]}, "
                                 f"got '{section['jump.measure']}'") from e

    try:
        if kind == EJumpMeasures.GAUSSIAN:
            return GaussianJumps(**_floats(section, _MEASURE_KEYS[kind], 'jump.'))
        if kind == EJumpMeasures.VARIANCE_GAMMA:
            return VarianceGammaJumps(**_floats(section, _MEASURE_KEYS[kind], 'jump.'))
        if 'jump.density' not in section:
            raise ConfigurationError("missing key 'jump.density'")
        density = _ExprFunc(_parse(section['jump.density'], {_z}, 'jump.density'), (_z,))
        bounds = _interval(section['jump.bounds'], 'jump.bounds') if 'jump.bounds' in section else None
        return NumericDensityJumps(density, bounds)
    except ConfigurationError:
        raise
    except ValueError as e:
        raise ConfigurationError(str(e)) from e

def model_from_section(section:Mapping[str, str]) -> ModelSpec:
    """
    Gets a ModelSpec from a [model] section.

    Args:
        section (Mapping[str, str]): Keys and values of the [model] section

    Raises:
        ConfigurationError: On unknown presets, unparsable expressions, missing
            keys or coefficients violating the model invariants

    Returns:
        ModelSpec
    """
    if 'preset' in section:
        params = {k[len('param.'):]: v for k, v in section.items() if k.startswith('param.')}
        kw = _floats(params, tuple(params), '')
        try:
            return get_preset(section['preset'].strip(), **kw)
        except ConfigurationError:
            raise
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"invalid parameter for preset '{section['preset']}': {e}") from e

    measure = measure_from_section(section)
    kw:dict[str, Any] = {'name': section.get('name', 'custom'),
                         'finite_differences': section.get('finite.differences', 'no').lower()
                                               in ('1', 'yes', 'true', 'on')}
    for key in ('domain.t', 'domain.x'):
        if key in section:
            kw[key.replace('.', '_')] = _interval(section[key], key)

    try:
        if 'profile' in section:
            f = coefficient_from_expression(section['profile'])
            return ModelSpec.proportional(f, A=float(section.get('profile.a', 0.)),
                                          Gamma=float(section.get('profile.gamma', 0.)),
                                          W=float(section.get('profile.weight', 0.)),
                                          measure=measure, **kw)
        if 'a' not in section:
            raise ConfigurationError("[model] needs 'preset', 'profile' or 'a'")
        default_mult = '1' if measure is not None else '0'
        return ModelSpec(a=coefficient_from_expression(section['a']),
                         gamma=coefficient_from_expression(section.get('gamma', '0')),
                         jump_multiplier=coefficient_from_expression(section.get('jump.multiplier', default_mult)),
                         measure=measure, **kw)
    except ConfigurationError:
        raise
    except ValueError as e:
        raise ConfigurationError(str(e)) from e

def model_to_section(model:ModelSpec) -> dict[str, str]:
    """
    Gets the [model] section reproducing the given model.

    Presets are written as preset name plus parameters, other models by
    the labels of their coefficients.
    """
    if model.name in PRESETS:
        return {'preset': model.name, **{f'param.{k}': f2s(v) for k, v in model.params}}

    out = {'name': model.name}
    if model.profile is not None:
        p = model.profile
        out.update({'profile': p.f.label, 'profile.a': f2s(p.A),
                    'profile.gamma': f2s(p.Gamma), 'profile.weight': f2s(p.W)})
    else:
        out.update({'a': model.a.label, 'gamma': model.gamma.label,
                    'jump.multiplier': model.jump_multiplier.label})
    out['domain.t'] = ', '.join(map(f2s, model.domain_t))
    out['domain.x'] = ', '.join(map(f2s, model.domain_x))
    if model.finite_differences:
        out['finite.differences'] = 'yes'
    m = model.measure
    if m is not None:
        out['jump.measure'] = m.kind.value
        if m.kind == EJumpMeasures.NUMERIC:
            out['jump.density'] = getattr(m.density, 'label', repr(m.density))
            out['jump.bounds'] = ', '.join(map(f2s, m.bounds))
        else:
            names = {f.name for f in fields(m)}
            out.update({f'jump.{k}': f2s(getattr(m, k)) for k in _MEASURE_KEYS[m.kind] if k in names})
    return out

def read_model_file(filename:str) -> ModelSpec:
    """
    Reads the [model] section of an INI file.

    Args:
        filename (str): Path of the model file

    Raises:
        ConfigurationError: If the file has no [model] section or the section is invalid
        OSError: If the file cannot be read

    Returns:
        ModelSpec
    """
    parser = configparser.ConfigParser(interpolation=None)
    with open(filename, encoding='utf-8') as f:
        parser.read_file(f)
    if not parser.has_section('model'):
        raise ConfigurationError(f"'{filename}' has no [model] section")
    return model_from_section(dict(parser['model']))

