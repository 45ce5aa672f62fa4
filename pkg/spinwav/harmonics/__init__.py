from .wigner import WignerDTable, iter_wigner_d, wigner_d_slice
from .grid import RotationGrid, SphereGrid, build_grid, build_rotation_grid
from .sht import (EulerAngles, HarmonicCoeffs, SphereMap, compose_rotations,
                  forward_sht, inverse_sht, rotate_harmonics)
from .so3 import RotationMap, WignerCoeffs, forward_wigner, inverse_wigner
