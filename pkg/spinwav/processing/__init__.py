from .polarization import (EBPair, StokesQU, eb_to_qu, eb_wavelet_connection,
                           lowered_family, qu_to_eb, spin_lower_harmonic,
                           spin_raise_harmonic)
from .denoise import (NoiseModel, ThresholdPlan, add_noise, denoise, denoise_with_report,
                      hard_threshold, noise_sigma_per_scale, snr)
from .synthetic import synthetic_signal
