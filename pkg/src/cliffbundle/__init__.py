"""Clifford systems, sphere-bundle characteristic maps, and their certification.

Subpackages:

* :mod:`cliffbundle.cayley`   - R/C/H/O arithmetic (Cayley-Dickson)
* :mod:`cliffbundle.twisted`  - twisted inner products and the *_p operation
* :mod:`cliffbundle.clifford` - symmetric Clifford systems and the FKM polynomial
* :mod:`cliffbundle.bundle`   - focal-submanifold embeddings, characteristic maps,
  Hopf constructions, non-vanishing witnesses
* :mod:`cliffbundle.homotopy` - homotopy-class and cross-section calculators
* :mod:`cliffbundle.cli`      - the ``cliffbundle`` command line tool
"""

from .backend import backend_name

__version__ = "0.1.0"

__all__ = ["backend_name", "__version__"]
