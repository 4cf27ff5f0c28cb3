#include "sa/innovations/sources.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sa/innovations/halton.hpp"
#include "sa/innovations/rng.hpp"

namespace sa::innovations {

namespace {

void require_dimension(std::size_t q, const char* who) {
    if (q == 0) throw std::invalid_argument(std::string(who) + ": dimension must be >= 1");
}

void fill_gaussian(std::mt19937_64& engine, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); i += 2) {
        const double u1 = uniform01_open_left(engine);
        const double u2 = uniform01(engine);
        const auto [z1, z2] = box_muller_pair(u1, u2);
        out[i] = z1;
        if (i + 1 < out.size()) out[i + 1] = z2;
    }
}

} // namespace

std::vector<double> next_innovation(InnovationSource& source) {
    std::vector<double> out(source.dimension());
    source.next(out);
    return out;
}

// iid-uniform

IidUniformSource::IidUniformSource(std::size_t q, std::uint64_t seed)
    : q_(q), seed_(seed), engine_(derive_seed(seed, stream::source)) {
    require_dimension(q, "IidUniformSource");
}

void IidUniformSource::next(std::span<double> out) {
    for (auto& x : out) x = uniform01(engine_);
}

std::unique_ptr<InnovationSource> IidUniformSource::clone() const {
    return std::make_unique<IidUniformSource>(*this);
}

std::unique_ptr<InnovationSource> IidUniformSource::substream(std::uint64_t block, std::uint64_t) const {
    return std::make_unique<IidUniformSource>(q_, derive_seed(seed_, stream::block, block));
}

// iid-gaussian

IidGaussianSource::IidGaussianSource(std::size_t q, std::uint64_t seed)
    : q_(q), seed_(seed), engine_(derive_seed(seed, stream::source)) {
    require_dimension(q, "IidGaussianSource");
}

void IidGaussianSource::next(std::span<double> out) { fill_gaussian(engine_, out); }

std::unique_ptr<InnovationSource> IidGaussianSource::clone() const {
    return std::make_unique<IidGaussianSource>(*this);
}

std::unique_ptr<InnovationSource> IidGaussianSource::substream(std::uint64_t block, std::uint64_t) const {
    return std::make_unique<IidGaussianSource>(q_, derive_seed(seed_, stream::block, block));
}

// halton

HaltonSource::HaltonSource(std::size_t q, std::uint64_t start) : q_(q), start_(start), index_(start) {
    require_dimension(q, "HaltonSource");
    if (q > max_halton_dimension) throw std::invalid_argument("HaltonSource: dimension too large");
    if (start == 0) throw std::invalid_argument("HaltonSource: start index must be >= 1");
}

void HaltonSource::next(std::span<double> out) { halton_point_into(index_++, out); }

std::unique_ptr<InnovationSource> HaltonSource::clone() const {
    return std::make_unique<HaltonSource>(*this);
}

std::unique_ptr<InnovationSource> HaltonSource::substream(std::uint64_t block, std::uint64_t length) const {
    return std::make_unique<HaltonSource>(q_, start_ + block * length);
}

// halton-gaussian

HaltonGaussianSource::HaltonGaussianSource(std::size_t q, std::uint64_t start)
    : q_(q), start_(start), index_(start), buffer_(2 * ((q + 1) / 2)) {
    require_dimension(q, "HaltonGaussianSource");
    if (buffer_.size() > max_halton_dimension)
        throw std::invalid_argument("HaltonGaussianSource: dimension too large");
    if (start == 0) throw std::invalid_argument("HaltonGaussianSource: start index must be >= 1");
}

void HaltonGaussianSource::next(std::span<double> out) {
    halton_point_into(index_++, buffer_);
    for (std::size_t i = 0; i < q_; i += 2) {
        const auto [z1, z2] = box_muller_pair(buffer_[i], buffer_[i + 1]);
        out[i] = z1;
        if (i + 1 < q_) out[i + 1] = z2;
    }
}

std::unique_ptr<InnovationSource> HaltonGaussianSource::clone() const {
    return std::make_unique<HaltonGaussianSource>(*this);
}

std::unique_ptr<InnovationSource> HaltonGaussianSource::substream(std::uint64_t block,
                                                                  std::uint64_t length) const {
    return std::make_unique<HaltonGaussianSource>(q_, start_ + block * length);
}

// ar1-mixing

double ar1_next(double x, double a, double z) {
    if (!(std::abs(a) < 1.0))
        throw std::invalid_argument("ar1_next: |a| must be < 1 for a mixing process");
    return a * x + z;
}

Ar1Source::Ar1Source(std::size_t q, double a, std::uint64_t seed, double x0, double noise_scale)
    : a_(a), x0_(x0), scale_(noise_scale), seed_(seed), noise_(q, seed), state_(q, x0) {
    if (!(std::abs(a) < 1.0))
        throw std::invalid_argument("Ar1Source: |a| must be < 1 for a mixing process");
    if (!(noise_scale > 0.0)) throw std::invalid_argument("Ar1Source: noise scale must be > 0");
}

void Ar1Source::next(std::span<double> out) {
    noise_.next(out);
    for (std::size_t i = 0; i < out.size(); ++i) {
        state_[i] = ar1_next(state_[i], a_, scale_ * out[i]);
        out[i] = state_[i];
    }
}

std::unique_ptr<InnovationSource> Ar1Source::clone() const { return std::make_unique<Ar1Source>(*this); }

std::unique_ptr<InnovationSource> Ar1Source::substream(std::uint64_t block, std::uint64_t) const {
    return std::make_unique<Ar1Source>(dimension(), a_, derive_seed(seed_, stream::block, block), x0_,
                                       scale_);
}

// finite-markov-chain

MarkovChainSource::MarkovChainSource(std::vector<double> values, std::vector<double> transition,
                                     std::size_t initial_state, std::uint64_t seed)
    : values_(std::move(values)), initial_(initial_state), state_(initial_state), seed_(seed),
      engine_(derive_seed(seed, stream::source)) {
    const std::size_t k = values_.size();
    if (k == 0) throw std::invalid_argument("MarkovChainSource: at least one state required");
    if (transition.size() != k * k)
        throw std::invalid_argument("MarkovChainSource: transition matrix must be k x k");
    if (initial_state >= k) throw std::invalid_argument("MarkovChainSource: initial state out of range");
    cumulative_.resize(k * k);
    for (std::size_t r = 0; r < k; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double p = transition[r * k + c];
            if (!(p >= 0.0)) throw std::invalid_argument("MarkovChainSource: negative transition probability");
            acc += p;
            cumulative_[r * k + c] = acc;
        }
        if (std::abs(acc - 1.0) > 1e-12)
            throw std::invalid_argument("MarkovChainSource: row " + std::to_string(r) + " does not sum to 1");
        cumulative_[r * k + k - 1] = 1.0;
    }
}

void MarkovChainSource::next(std::span<double> out) {
    out[0] = values_[state_];
    const std::size_t k = values_.size();
    const double u = uniform01(engine_);
    const auto row = std::span<const double>(cumulative_).subspan(state_ * k, k);
    state_ = static_cast<std::size_t>(std::upper_bound(row.begin(), row.end(), u) - row.begin());
    if (state_ >= k) state_ = k - 1;
}

std::unique_ptr<InnovationSource> MarkovChainSource::clone() const {
    return std::make_unique<MarkovChainSource>(*this);
}

std::unique_ptr<InnovationSource> MarkovChainSource::substream(std::uint64_t block, std::uint64_t) const {
    auto copy = std::make_unique<MarkovChainSource>(*this);
    copy->state_ = initial_;
    copy->seed_ = derive_seed(seed_, stream::block, block);
    copy->engine_.seed(derive_seed(copy->seed_, stream::source));
    return copy;
}

std::vector<double> MarkovChainSource::stationary_distribution(std::size_t iterations) const {
    const std::size_t k = values_.size();
    std::vector<double> p(k, 1.0 / static_cast<double>(k));
    std::vector<double> next(k);
    for (std::size_t it = 0; it < iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t r = 0; r < k; ++r) {
            double prev = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                const double prob = cumulative_[r * k + c] - prev;
                prev = cumulative_[r * k + c];
                next[c] += p[r] * prob;
            }
        }
        // Lazy averaging keeps periodic chains converging.
        for (std::size_t c = 0; c < k; ++c) p[c] = 0.5 * (p[c] + next[c]);
    }
    return p;
}

} // namespace sa::innovations
