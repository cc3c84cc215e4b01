"""weightkit: exact weight-structure computations on bounded complexes.

Everything is exact integer/rational arithmetic; every theorem-shaped
claim the package makes is backed by an executable check at desk scale.
"""

__version__ = "0.1.0"
