#pragma once

namespace segstat {

/// Execution mode for kernels that exist in both a serial reference form and
/// an OpenMP form. Results must be bit-identical across modes and thread counts.
enum class RunMode { Serial, Parallel };

namespace parallel {

/// Number of OpenMP threads to use, honoring the SEGSTAT_THREADS environment
/// variable (values < 1 are ignored). Read once per process.
int thread_count();

}  // namespace parallel
}  // namespace segstat
