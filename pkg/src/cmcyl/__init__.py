"""Constant-mean-curvature cylinders invariant under translations, in Sol and
in the homogeneous spaces E(kappa, tau) with kappa <= 0.

Subpackage map:

- sol, ekt: the two ambient geometries (metrics, frames, isometries)
- surfaces: mean curvature of translation-invariant surfaces
- profiles: graph-ODE integration up to the vertical-tangent endpoints
- shooting: bisection searches for embedded and immersed generating curves
- curves: closed-curve assembly, turning numbers, self-intersections
- flux: the first-integral (weight) identity and closed-form diameters
- export, cli: meshes, tables, plots and the command line
"""

__version__ = "0.1.0"
