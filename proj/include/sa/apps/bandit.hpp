#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "sa/core/engine.hpp"
#include "sa/innovations/sources.hpp"

namespace sa::apps {

/// theta + gamma((1-theta) 1{u <= theta, A} - theta 1{u > theta, B}); gamma in (0,1].
double bandit_step(double theta, double u, bool a_occurred, bool b_occurred, double gamma);

/// Streams of (A_n, B_n) events.
class EventStream {
public:
    virtual ~EventStream() = default;
    virtual void next(bool& a, bool& b) = 0;
    virtual std::unique_ptr<EventStream> clone() const = 0;
};

/// Independent Bernoulli(pA), Bernoulli(pB).
class IidEvents final : public EventStream {
public:
    IidEvents(double pA, double pB, std::uint64_t seed);
    void next(bool& a, bool& b) override;
    std::unique_ptr<EventStream> clone() const override { return std::make_unique<IidEvents>(*this); }

private:
    double pA_, pB_;
    std::mt19937_64 engine_;
};

/// A_n = {X_n^A <= Phi^-1(pA)}, B_n likewise, with X^A, X^B independent stationary-variance AR(1) processes
/// X_n = a X_{n-1} + sqrt(1-a^2) Z_n started at 0.
class Ar1ThresholdEvents final : public EventStream {
public:
    Ar1ThresholdEvents(double pA, double pB, double a, std::uint64_t seed);
    void next(bool& a, bool& b) override;
    std::unique_ptr<EventStream> clone() const override { return std::make_unique<Ar1ThresholdEvents>(*this); }

private:
    double tA_, tB_;
    innovations::Ar1Source ar_;
};

/// Innovation (U_n, 1_{A_n}, 1_{B_n}) for the engine.
class BanditInnovations final : public innovations::InnovationSource {
public:
    BanditInnovations(std::unique_ptr<EventStream> events, std::uint64_t uniform_seed);
    BanditInnovations(const BanditInnovations& o);

    std::size_t dimension() const noexcept override { return 3; }
    std::string_view kind() const noexcept override { return "bandit-events"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override;
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

private:
    std::unique_ptr<EventStream> events_;
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

enum class Terminal { near_one, near_zero, undecided };

const char* to_string(Terminal t) noexcept;

/// near-1 above 0.99, near-0 below 0.01.
Terminal classify_terminal(double theta);

struct BanditResult {
    double theta = 0.0;
    Terminal terminal = Terminal::undecided;
    core::Trajectory trajectory{1};
};

/// Runs the rewarding rule through the engine (H = -increment). Requires gamma_1 <= 1.
BanditResult bandit_run(innovations::InnovationSource& innovations, const core::StepSchedule& steps,
                        std::size_t horizon, double theta0 = 0.5, std::size_t stride = 100);

enum class EventKind { iid, ar1 };

struct BanditSetup {
    double pA = 0.6, pB = 0.4;
    EventKind events = EventKind::iid;
    double ar_coefficient = 0.5;
    core::StepSchedule steps = core::StepSchedule::power(1.0, 0.9);
    std::size_t horizon = 100000;
    double theta0 = 0.5;
};

/// Innovation stream for replication `seed`.
std::unique_ptr<innovations::InnovationSource> make_bandit_innovations(const BanditSetup& s, std::uint64_t seed);

/// Terminal theta of each replication seed base_seed + i, i < count (no trajectory kept).
std::vector<double> bandit_replications(const BanditSetup& s, std::uint64_t base_seed, std::size_t count);

namespace serial {
std::vector<double> bandit_replications(const BanditSetup& s, std::uint64_t base_seed, std::size_t count);
}

} // namespace sa::apps
