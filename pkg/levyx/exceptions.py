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

class ConfigurationError(ValueError):
    """Raised when the user supplied configuration cannot be used"""

class DomainError(ConfigurationError):
    """Raised when a frequency lies outside the strip where the jump transform converges"""

class ContourError(ConfigurationError):
    """Raised when a contour lies outside the admissible strip of a payoff transform"""

class UnsupportedFormError(ConfigurationError):
    """Raised when a model lacks the structure a method relies on"""

class SchemeMismatchError(ConfigurationError):
    """Raised when a simulation scheme does not fit the model"""

class OutOfRangeError(ConfigurationError):
    """Raised when a price violates the no-arbitrage bounds of its payoff"""

class NumericalError(ArithmeticError):
    """Raised when a computation cannot be completed reliably"""

class JetOrderError(NumericalError):
    """Raised when a jet is too short for the requested derivatives"""

class PoleError(NumericalError):
    """Raised when a function is lifted to a jet at one of its poles"""

class QuadratureError(NumericalError):
    """Raised when a quadrature does not reach its tolerance"""

class TruncationError(QuadratureError):
    """Raised when the integrand is not negligible at the truncation frequency"""

class SpreadUndefinedError(NumericalError):
    """Raised when a survival value is not positive"""

class UnboundedCoefficientWarning(UserWarning):
    """Issued when a model coefficient grows without bound"""

class ConjugateSymmetryWarning(RuntimeWarning):
    """Issued when an inverse transform keeps a non negligible imaginary part"""
