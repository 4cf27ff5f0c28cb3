#include "sa/apps/var_cvar.hpp"

#include <stdexcept>

namespace sa::apps {

namespace {
void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}
} // namespace

double var_H(double theta, double y, double alpha) {
    check_alpha(alpha);
    return y >= theta ? 1.0 - 1.0 / (1.0 - alpha) : 1.0;
}

double cvar_v(double theta, double y, double alpha) {
    check_alpha(alpha);
    return theta + (y > theta ? y - theta : 0.0) / (1.0 - alpha);
}

double cvar_companion_step(double zeta, double theta, double y, std::size_t n, double alpha) {
    return zeta - (zeta - cvar_v(theta, y, alpha)) / static_cast<double>(n + 1);
}

VarCvarResult var_cvar_run(innovations::InnovationSource& losses, double alpha, const core::StepSchedule& steps,
                           std::size_t horizon, double theta0, std::size_t stride) {
    check_alpha(alpha);
    if (losses.dimension() != 1) throw std::invalid_argument("var_cvar_run: losses must be scalar");
    VarCvarState st{theta0, 0.0, alpha, 0};

    core::ProcedureConfig cfg;
    cfg.dimension = 1;
    cfg.H = [alpha](std::span<const double> th, std::span<const double> y, std::span<double> out) {
        out[0] = var_H(th[0], y[0], alpha);
    };
    cfg.theta0 = {theta0};
    cfg.steps = steps;
    cfg.horizon = horizon;
    cfg.record_stride = stride;
    // The companion uses theta_n, the iterate before the update that consumed Y_n.
    cfg.observer = [&st](std::size_t, std::span<const double> th, std::span<const double> y) {
        st.zeta = cvar_companion_step(st.zeta, st.theta, y[0], st.n, st.alpha);
        st.theta = th[0];
        ++st.n;
    };
    cfg.monitors.push_back({"zeta", [&st](std::size_t, std::span<const double>) { return st.zeta; }});

    VarCvarResult res;
    res.trajectory = core::run(cfg, losses);
    res.var = res.trajectory.final_theta[0];
    res.cvar = st.zeta;
    return res;
}

} // namespace sa::apps
