"""Blind demixing and super-resolution of point sources.

Thin Python surface over the C++ core: Hankel lifting operators, synthetic
instance generation, the ADMM solver for the lifted nuclear-norm program,
MUSIC-style location extraction, and the plain-text instance file format.
"""

try:
    from ._mvhl import *  # noqa: F401,F403  (installed layout: _mvhl inside the package)
    from ._mvhl import __version__  # noqa: F401
except ImportError:  # pragma: no cover - in-tree builds keep _mvhl next to the package
    from _mvhl import *  # noqa: F401,F403
    from _mvhl import __version__  # noqa: F401
