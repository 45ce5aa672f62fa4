from .kernels import KernelTable, k_alpha, kernel, kernel_table, schwartz_s
from .directionality import Directionality, directionality
from .family import (WaveletFamily, WaveletParams, admissibility_sum, build_family,
                     check_admissibility, tiling)
from .transform import WaveletCoefficients, analyze, analyze_multires, synthesize
from .steering import SteeringWeights, basis_slices, steer, steering_weights
