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

from .request import PricingRequest, PricingResult, Diagnostics, Greeks
from .black_scholes import black_scholes, black_scholes_delta, implied_vol, price_bounds
from .pricer import price_option, price_strikes, density, bond_price, greeks, survival_terms
from .reference_tables import (TableRow, MonteCarloInterval, ReferenceTable, TABLES, GAUSS_PUT, VG_PUT,
                           GAUSS_RANDOM_CALLS, VALUE_TOL, IV_TOL)
