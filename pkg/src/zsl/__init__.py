"""Zeros, spectral pairings and their function-field analogue.

Subpackages by layer: ``specfun`` (special functions), ``zerofind`` (zero
catalogs), ``mellin`` and ``dsl`` (test functions), ``pairing`` (spectral
vectors and forms), ``ffield`` and ``gf`` (curves over finite fields),
``ellcurve`` (elliptic curves over Q), ``cli`` and ``acceptance``.
"""

__version__ = "0.1.0"
