"""Figure scripts for slts benchmark outputs.

Consumes the harness' trace and scaling CSV files; produces vector images
(SVG/PDF by default, PNG on request).  Installed as the ``plot_convergence``
and ``plot_scaling`` commands.
"""

from .convergence import plot_convergence
from .inputs import SchemaError, read_scaling, read_trace
from .scaling import plot_scaling

__version__ = "1.0.0"

__all__ = [
    "SchemaError",
    "plot_convergence",
    "plot_scaling",
    "read_scaling",
    "read_trace",
]
