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

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from levyx.auxiliary import worker_count
from levyx.enums import ESchemes

Z_95 = 1.96
"""Normal quantile of the two sided 95% confidence interval"""

@dataclass
class SimulationConfig:
    """
    Settings of a Monte Carlo run.

    Paths are simulated in blocks. Every block draws from its own Philox
    stream spawned from the seed, so the result does not depend on the
    number of threads.

    Args:
        scheme: Optional. Time stepping scheme
        dt: Optional. Largest time step in years
        paths: Optional. Number of paths
        seed: Optional. Root seed
        antithetic: Optional. Pair every path with its mirrored draws
        block_size: Optional. Paths per block
        threads: Optional. Worker threads, LEVYX_THREADS if None
    """
    scheme:ESchemes = ESchemes.EULER_GAUSSIAN_JUMP
    """Time stepping scheme"""
    dt:float = 1e-3
    """Largest time step in years"""
    paths:int = 100_000
    """Number of paths"""
    seed:int = 0
    """Root seed"""
    antithetic:bool = False
    """Pair every path with its mirrored draws"""
    block_size:int = 10_000
    """Paths per block"""
    threads:Optional[int] = None
    """Worker threads, LEVYX_THREADS if None"""

    def __post_init__(self):
        self.scheme = ESchemes(self.scheme)
        if not self.dt > 0:
            raise ValueError(f'dt must be > 0, got {self.dt}')
        if self.paths < 1:
            raise ValueError(f'paths must be >= 1, got {self.paths}')
        if self.block_size < 1:
            raise ValueError(f'block_size must be >= 1, got {self.block_size}')
        if self.seed < 0:
            raise ValueError(f'seed must be >= 0, got {self.seed}')
        if self.antithetic and (self.paths % 2 or self.block_size % 2):
            raise ValueError(f'antithetic runs need an even number of paths and an even block size, '
                             f'got paths = {self.paths}, block_size = {self.block_size}')
        if self.threads is not None and self.threads < 1:
            raise ValueError(f'threads must be >= 1, got {self.threads}')

    @property
    def workers(self) -> int:
        """Number of worker threads"""
        return self.threads if self.threads is not None else worker_count()

    def blocks(self) -> list[int]:
        """Gets the number of paths of every block"""
        full, rest = divmod(self.paths, self.block_size)
        return [self.block_size] * full + ([rest] if rest else [])

    def steps(self, tau:float) -> int:
        """Gets the number of equal time steps no longer than dt covering tau"""
        return max(1, int(np.ceil(tau / self.dt - 1e-9)))

@dataclass(frozen=True)
class MCEstimate:
    """
    Monte Carlo estimate with its 95% confidence interval.
    """
    mean:float
    """Sample mean"""
    se:float
    """Standard error"""
    lo:float
    """Lower end of the 95% confidence interval"""
    hi:float
    """Upper end of the 95% confidence interval"""
    paths:int
    """Number of paths"""
    elapsed:float = field(default=0., compare=False)
    """Wall time in seconds"""

    @classmethod
    def from_samples(cls, samples:np.ndarray, antithetic:bool=False, elapsed:float=0.) -> 'MCEstimate':
        """
        Gets the estimate of the mean of samples.

        Antithetic samples are stored as [base, mirrored] halves, their
        standard error is taken from the pair averages.
        """
        n = samples.size
        if antithetic:
            half = n // 2
            samples = 0.5 * (samples[:half] + samples[half:])
        mean = float(np.mean(samples))
        se = float(np.std(samples, ddof=1) / np.sqrt(samples.size)) if samples.size > 1 else 0.
        return cls(mean, se, mean - Z_95 * se, mean + Z_95 * se, n, elapsed)

    def contains(self, value:float) -> bool:
        """True if value lies in the confidence interval"""
        return self.lo <= value <= self.hi
