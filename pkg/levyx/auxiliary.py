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

import os

import numpy as np
import numpy.typing as npt

from .protocols import number

def f2s(x:number) -> str:
    """Returns a string of the given number with 10 significant digits"""
    return f'{x:.10g}'

def gauss_legendre(a:float, b:float, order:int) -> tuple[npt.NDArray, npt.NDArray]:
    """
    Gets Gauss-Legendre nodes and weights on the interval [a, b].

    Args:
        a (float): Lower bound
        b (float): Upper bound
        order (int): Number of nodes

    Returns:
        tuple[npt.NDArray, npt.NDArray]: nodes, weights
    """
    z, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 * (b - a)
    return a + half * (z + 1.), half * w

def central_difference(func, x:float, n:int, h:float) -> float:
    """
    Gets the n-th derivative of func at x by the second order central difference
    sum_j (-1)^j C(n,j) f(x + (n/2 - j) h) / h^n.
    """
    if n == 0: return func(x)
    total = 0.
    binom = 1.
    for j in range(n + 1):
        total += (-1)**j * binom * func(x + (n / 2 - j) * h)
        binom = binom * (n - j) / (j + 1)
    return total / h**n

def fd_step(n:int, scale:float=1.) -> float:
    """Step for an n-th order central difference, eps^(1/(n+2)) scaled by max(1, |scale|)"""
    return np.finfo(float).eps**(1. / (n + 2)) * max(1., abs(scale))

def worker_count(default:int=1) -> int:
    """Gets the number of worker threads from the environment variable LEVYX_THREADS"""
    text = os.environ.get('LEVYX_THREADS', '')
    if not text.strip():
        return default
    try:
        n = int(text)
    except ValueError as e:
        raise ValueError(f'LEVYX_THREADS must be an integer, got {text!r}') from e
    if n < 1:
        raise ValueError(f'LEVYX_THREADS must be >= 1, got {n}')
    return n
