"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: solver failures exit 1, configuration
problems exit 2, bracket/precondition violations exit 3.
"""
from __future__ import annotations


class CmcylError(Exception):
    """Base class for everything raised on purpose by this package."""


class SolverError(CmcylError):
    """Numerical procedure failed (integration, search, mesh)."""

    exit_code = 1


class GraphBlowupError(SolverError):
    """The graph chart degenerated (vanishing or non-finite solve coefficient)."""


class SamplingError(SolverError):
    """A discrete quantity could not be resolved at the sampling density."""


class JunctionDefectError(SolverError):
    """Symmetry extension produced a junction with too large a tangent defect."""


class ConfigError(CmcylError):
    """Bad configuration, preset name, or CLI input."""

    exit_code = 2


class PreconditionError(CmcylError):
    """Operation called outside its admissible inputs."""

    exit_code = 3


class BracketError(CmcylError):
    """Root bracket does not straddle a sign change."""

    exit_code = 3
