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

from .levy_measure import GaussianJumps, VarianceGammaJumps, NumericDensityJumps
from .coefficient import Coefficient
from .model_spec import ModelSpec, ProportionalForm, drift_from_coefficients
from .symbol import FrozenSymbol, symbol_eval
from .presets import (cev_gauss, cev_vg, cev_gauss_default, black_scholes, merton,
                      random_cev_gauss, get_preset, PRESETS, RANDOM_CEV_GAUSS_RANGES)
from .model_file import (coefficient_from_expression, measure_from_section,
                         model_from_section, model_to_section, read_model_file)
