#pragma once

namespace fcb {

/// Kernels with an OpenMP path keep a serial reference path; both must
/// produce identical results.
enum class Execution { serial, parallel };

/// Worker threads OpenMP would use (1 when built without OpenMP).
int max_threads();

}  // namespace fcb
