"""Constants for the hullscope toolkit."""

import math

TOOL_VERSION = '0.1.0'

# Binary formats.
IDX_IMAGE_MAGIC = 0x00000803
IDX_LABEL_MAGIC = 0x00000801
IDX_HEADER_BYTES_IMAGES = 16
IDX_HEADER_BYTES_LABELS = 8
CIFAR_RECORD_BYTES = 3073
CIFAR_PIXEL_BYTES = 3072
FMAT_MAGIC = b'FMAT1'
FMAT_HEADER_BYTES = 14
NPY_MAGIC = b'\x93NUMPY'
PIXEL_SCALE = 255.0

# Projection solver.
GAP_TOL_RELATIVE = 1e-6
MAX_ITERS = 50000
INSIDE_TOL = 1e-4
SUPPORT_TOL = 1e-6
DIRECTION_DEGENERATE_RELATIVE = 1e-12
DIAMETER_EXACT_MAX_POINTS = 20000
DIAMETER_BLOCK_ROWS = 1024

# Wavelets.
SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
HAAR_LOW_PASS = (1.0 / SQRT2, 1.0 / SQRT2)
D4_LOW_PASS = tuple(value / (4.0 * SQRT2) for value in (
    1.0 + SQRT3, 3.0 + SQRT3, 3.0 - SQRT3, 1.0 - SQRT3))

# Legendre fits.
LSTSQ_RELATIVE_CUTOFF = 1e-12

# Two dimensional geometry.
POLYGON_TOLERANCE = 1e-12
GRID_BOUNDS_FACTOR = 3.0

# Statistics.
JARQUE_BERA_MIN_SAMPLES = 8

# Finite difference gradient check.
FINITE_DIFFERENCE_STEP = 1e-5
