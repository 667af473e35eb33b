#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace cfmm {

/// Right-hand side f(t, y). An empty result marks (t, y) as outside the
/// domain; the step that produced it is rejected and retried smaller.
using ScalarRhs = std::function<std::optional<double>(double t, double y)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// Accepted states never exceed this value; reaching it (to within a
    /// relative 1e-13) ends the integration with OdeStatus::CapReached.
    std::optional<double> y_cap;
    int max_steps = 1'000'000;
};

struct OdeStats {
    int steps = 0;
    int rejected = 0;
    double max_error_estimate = 0.0;  // largest accepted scaled local error
};

struct OdeCheckpoint {
    double t = 0.0;
    double y = 0.0;
};

enum class OdeStatus { Completed, StepUnderflow, CapReached, TooManySteps };

struct OdeResult {
    OdeStatus status = OdeStatus::Completed;
    double t = 0.0;  // last accepted time
    double y = 0.0;  // last accepted state
    OdeStats stats;
    std::vector<OdeCheckpoint> checkpoints;
};

/// Dormand-Prince 5(4) with local extrapolation and elementary step control.
/// `checkpoints` (sorted, inside [t0, t1]) are hit exactly and reported.
OdeResult integrate_dp45(const ScalarRhs& f, double t0, double y0, double t1,
                         const OdeOptions& opts = {},
                         const std::vector<double>& checkpoints = {});

}  // namespace cfmm
