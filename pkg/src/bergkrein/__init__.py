"""Indefinite inner-product geometry behind the Bergman kernel on the disk.

Submodules:
    scalars  - float complex and exact Gaussian-rational backends
    krein    - the signature-(1,1) space, Moebius maps, contractions
    disk     - embedding, Bergman kernel, invariant distance
    pick     - Pick matrices, PSD tests, two-point interpolation
    series   - split positive kernels with truncation bounds
    cli      - JSON-reporting command line
"""

__version__ = "0.1.0"

from . import disk, krein, pick, scalars, series  # noqa: F401
