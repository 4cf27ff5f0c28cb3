#include "sa/core/step_schedule.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sa::core {

double PowerSequence::operator()(std::size_t n) const {
    if (n == 0) throw std::out_of_range("PowerSequence: index starts at 1");
    if (exponent == 0.0) return scale;
    return scale * std::pow(static_cast<double>(n), -exponent);
}

StepSchedule StepSchedule::power(double c, double a) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("StepSchedule: scale must be >= 0");
    if (!(a >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("StepSchedule: exponent must be >= 0 (steps must not increase)");
    StepSchedule s;
    s.power_ = {c, a};
    return s;
}

StepSchedule StepSchedule::tabulated(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("StepSchedule: empty table");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw std::invalid_argument("StepSchedule: gamma_" + std::to_string(i + 1) + " is negative or not finite");
        if (i > 0 && values[i] > values[i - 1])
            throw std::invalid_argument("StepSchedule: gamma_" + std::to_string(i + 1) + " > gamma_" +
                                        std::to_string(i) + " (schedule must be non-increasing)");
    }
    StepSchedule s;
    s.table_ = std::move(values);
    return s;
}

double StepSchedule::operator()(std::size_t n) const {
    if (n == 0) throw std::out_of_range("StepSchedule: index starts at 1");
    if (table_.empty()) return power_(n);
    if (n > table_.size())
        throw std::out_of_range("StepSchedule: gamma_" + std::to_string(n) + " beyond tabulated length " +
                                std::to_string(table_.size()));
    return table_[n - 1];
}

std::optional<std::size_t> StepSchedule::length() const noexcept {
    if (table_.empty()) return std::nullopt;
    return table_.size();
}

std::string StepSchedule::describe() const {
    char buf[96];
    if (table_.empty())
        std::snprintf(buf, sizeof buf, "gamma_n = %g * n^-%g", power_.scale, power_.exponent);
    else
        std::snprintf(buf, sizeof buf, "tabulated gamma (%zu values)", table_.size());
    return buf;
}

RateSpec RateSpec::power(double beta) { return log_power(0.0, beta); }

RateSpec RateSpec::log_power(double kappa, double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("RateSpec: beta must lie in (0,1]");
    if (!(kappa >= 0.0)) throw std::invalid_argument("RateSpec: kappa must be >= 0");
    return RateSpec{beta, kappa};
}

double RateSpec::operator()(std::size_t n) const {
    if (n == 0) throw std::out_of_range("RateSpec: index starts at 1");
    const double x = static_cast<double>(n);
    const double base = std::pow(x, -beta);
    return kappa == 0.0 ? base : std::pow(std::log(x), kappa) * base;
}

std::string RateSpec::describe() const {
    char buf[96];
    if (kappa == 0.0)
        std::snprintf(buf, sizeof buf, "eps_n = n^-%g", beta);
    else
        std::snprintf(buf, sizeof buf, "eps_n = (log n)^%g n^-%g", kappa, beta);
    return buf;
}

} // namespace sa::core
