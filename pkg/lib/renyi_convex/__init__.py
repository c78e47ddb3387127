"""
renyi_convex - Renyi divergences of cone measures and L_p affine surface areas.

Modules:
    bodies            convex bodies by support function, gauge and curvature
    quadrature        sphere rules with doubling refinement
    cone_measures     the densities P_K, Q_K and the cone measures
    divergence        Renyi, Kullback-Leibler and mixed divergences
    affine_surface    as_p, mixed as_p, Omega_K, A_K and their identities
    surface_bodies    planar surface and illumination bodies
    oracles           closed forms
    verification      acceptance suites
    cli               the renyi-convex command
"""

__version__ = "0.1.0"
