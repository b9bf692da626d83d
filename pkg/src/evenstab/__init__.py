"""Stabiliser codes over finite fields of even order.

Subpackages and modules:

- :mod:`evenstab.gf2h` -- GF(2^h) arithmetic, traces, trace-orthogonal bases
- :mod:`evenstab.f2linalg` -- bit-packed linear algebra over GF(2)
- :mod:`evenstab.symcode` -- stabiliser matrices, trace-symplectic duality,
  exact minimum distance, q-ary/binary conversions
- :mod:`evenstab.geometry` -- blocks, symplectic polar spaces, quantum sets
- :mod:`evenstab.classify` -- exhaustive classification searches
- :mod:`evenstab.cli` -- command line interface
"""

__version__ = "0.1.0"
