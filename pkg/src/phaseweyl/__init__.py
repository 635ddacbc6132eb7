"""phaseweyl: symplectic index theory (Kashiwara--Wall, ALM, relative
Maslov, Conley--Zehnder-type nu), the symplectic Cayley transform, Gaussian
Weyl symbols of metaplectic operators with closed-form composition, and a
discretized Weyl calculus on phase space with its intertwining and
covariance identities.
"""

from .config import Config, DEFAULT, GridConfig, Tolerances, load_config

__version__ = "0.1.0"

__all__ = ["Config", "DEFAULT", "GridConfig", "Tolerances", "load_config", "__version__"]
