#pragma once

namespace twisthc {

/// Selects between the OpenMP kernels and their serial reference versions.
enum class Execution { Serial, Parallel };

/// Caps the OpenMP team size from TWISTHC_THREADS when it is set to a
/// positive integer. Returns the resulting maximum thread count.
int configure_threads_from_env();

int max_threads();

}  // namespace twisthc
