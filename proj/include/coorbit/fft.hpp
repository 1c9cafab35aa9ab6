#pragma once

// Thin wrapper over FFTW3 with a per-size plan cache. Plans are created with
// FFTW_ESTIMATE so the chosen algorithm depends only on the transform size,
// keeping outputs bit-identical between runs.

#include "coorbit/common.hpp"

namespace coorbit {

// In-place unnormalized DFT, sign convention e^{-2 pi i q i / n}.
void fft_forward(cplx_vec& a);
// In-place unnormalized inverse DFT, sign e^{+2 pi i q i / n}; caller scales.
void fft_inverse(cplx_vec& a);

}  // namespace coorbit
