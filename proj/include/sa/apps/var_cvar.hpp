#pragma once

#include <cstddef>

#include "sa/core/engine.hpp"
#include "sa/innovations/sources.hpp"

namespace sa::apps {

/// 1 - 1{y >= theta}/(1 - alpha).
double var_H(double theta, double y, double alpha);

/// theta + (y - theta)_+/(1 - alpha).
double cvar_v(double theta, double y, double alpha);

/// zeta - (zeta - v(theta, y))/(n + 1).
double cvar_companion_step(double zeta, double theta, double y, std::size_t n, double alpha);

struct VarCvarState {
    double theta = 0.0;
    double zeta = 0.0;
    double alpha = 0.95;
    std::size_t n = 0;
};

struct VarCvarResult {
    double var = 0.0;
    double cvar = 0.0;
    core::Trajectory trajectory{1};
};

/// Default gain 0.3 n^-0.85.
inline core::StepSchedule default_var_steps() { return core::StepSchedule::power(0.3, 0.85); }

/// VaR descent with the CVaR companion; monitor "zeta".
VarCvarResult var_cvar_run(innovations::InnovationSource& losses, double alpha, const core::StepSchedule& steps,
                           std::size_t horizon, double theta0 = 0.0, std::size_t stride = 100);

} // namespace sa::apps
