"""chigrid: continuous-time vs grid-sampled maxima of stationary chi-processes.

Subpackages:

* ``gaussim``  - exact stationary Gaussian / fBm synthesis (circulant embedding)
* ``chiproc``  - chi-process paths, grid regimes, maxima pairs
* ``theory``   - normalization constants and limiting joint CDFs
* ``pickands`` - Monte Carlo Pickands-type constants
* ``harness``  - configs, seeded parallel experiments, persistence
* ``cli``      - the ``chigrid`` command line
"""

__version__ = "0.1.0"

from . import chiproc, gaussim, harness, pickands, streams, theory  # noqa: E402,F401
