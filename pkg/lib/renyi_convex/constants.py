"""
Renyi Convex Constants - Shared numeric defaults.

This module defines the defaults used by the quadrature, divergence,
surface-body and CLI layers. settings.py overlays values from the
[tool.renyi-convex] table of pyproject.toml on top of these.
"""

# Reproducibility
DEFAULT_SEED = 20240917

# Quadrature
DEFAULT_TOL = 1e-12  # relative change between doublings
MAX_DOUBLINGS = 12
CIRCLE_START = 64  # equispaced nodes for the first circle rule
S2_START_LEVEL = 8  # Gauss-Legendre nodes in the polar angle
GRADED_START_LEVEL = 3  # tanh-sinh step 2**-level
GRADED_HALF_WIDTH = 5.0  # tanh-sinh parameter range [-5, 5]
MC_SAMPLES = 100_000

# Endpoint probe for singular directions (distances from the breakpoint)
PROBE_NEAR = 1e-10
PROBE_FAR = 1e-6
NONINTEGRABLE_EXPONENT = -1.0 + 1e-5

# Node-sup rules for D_{+-inf} and as_{-n+-}: rule levels searched past the first
SUP_DOUBLINGS = 1

# Boundary / cone measure fans
FAN_SAMPLES = 4096

# Rolling radii
ROLLING_GRID = 256
ROLLING_TOL = 1e-6  # relative change between grid doublings
ROLLING_MAX_DOUBLINGS = 6

# Surface bodies (n = 2)
SURFACE_DIRECTIONS = 64
SURFACE_MAX_DIRECTIONS = 8192
SURFACE_AREA_TOL = 1e-6
CONTAINMENT_TOL = 1e-9  # gauge slack at polygon vertices
QUOTIENT_DIRECTIONS = 512
QUOTIENT_MAX_DIRECTIONS = 4096
QUOTIENT_TOL = 1e-7
CAP_GAUSS_NODES = 32
CAP_NEWTON_STEPS = 60
BOUNDARY_SAMPLES = 2**14
C2 = 8.0  # c_n = 2 |B_2^{n-1}|^{2/(n-1)} for n = 2

# Verification
OMEGA_ROUNDING_FLOOR = 1e-9
