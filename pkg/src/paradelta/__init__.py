"""Delta factors of z^2 + c: exact polynomial tower, finite-field sieves and
numerical root-location checks."""

__version__ = "0.1.0"
