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

from typing import Optional

from levyx.enums import EBasisFamilies
from levyx.models.model_spec import ModelSpec
from .expansion import SymbolExpansion
from .hermite import hermite_expand
from .taylor import taylor_expand
from .two_point import two_point_taylor_expand

def build_expansion(model:ModelSpec, family:EBasisFamilies, N:int, xbar:float=0.,
                    delta:float=0.5, shift:Optional[float]=None, quad_order:int=32) -> SymbolExpansion:
    """
    Gets the symbol expansion of a model in the given basis family.

    Args:
        model (ModelSpec): Model
        family (EBasisFamilies): Basis family
        N (int): Highest order
        xbar (float): Optional. Expansion point, usually the spot log-price.
            The two-point family expands at xbar - delta and xbar + delta.
        delta (float): Optional. Half distance of the two-point expansion points
        shift (float): Optional. Two-point constant M, defaults to f(xbar)
        quad_order (int): Optional. Gauss-Hermite nodes of the Hermite family

    Returns:
        SymbolExpansion
    """
    family = EBasisFamilies(family)
    if family == EBasisFamilies.TAYLOR:
        return taylor_expand(model, xbar, N)
    if family == EBasisFamilies.HERMITE:
        return hermite_expand(model, xbar, N, quad_order)
    if delta <= 0:
        raise ValueError(f'delta must be > 0, got {delta}')
    if shift is None and model.profile is not None:
        shift = float(model.profile.f(0., xbar))
    return two_point_taylor_expand(model, xbar - delta, xbar + delta, 0. if shift is None else shift, N)
