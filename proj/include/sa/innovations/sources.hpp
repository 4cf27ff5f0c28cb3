#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace sa::innovations {

/// A deterministic, infinite stream of R^q-valued innovations Y_0, Y_1, ...
///
/// Sources are single-owner: advance one from a single thread. Parallel code asks for
/// `substream(block, length)`, an independent source for the given block index, so
/// blocked computations are reproducible for any thread count.
class InnovationSource {
public:
    virtual ~InnovationSource() = default;

    virtual std::size_t dimension() const noexcept = 0;
    virtual std::string_view kind() const noexcept = 0;

    /// Writes the next innovation into `out` (size == dimension()) and advances the stream.
    virtual void next(std::span<double> out) = 0;

    /// Copy including the current stream position.
    virtual std::unique_ptr<InnovationSource> clone() const = 0;

    /// Fresh stream for block `block` of a blocked computation using `length` draws per block.
    /// For Halton kinds this is the contiguous index range of that block.
    virtual std::unique_ptr<InnovationSource> substream(std::uint64_t block,
                                                        std::uint64_t length) const = 0;
};

/// Advances `source` by one and returns the innovation.
std::vector<double> next_innovation(InnovationSource& source);

class IidUniformSource final : public InnovationSource {
public:
    IidUniformSource(std::size_t q, std::uint64_t seed);

    std::size_t dimension() const noexcept override { return q_; }
    std::string_view kind() const noexcept override { return "iid-uniform"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override;
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

private:
    std::size_t q_;
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Standard Gaussian vectors; each pair of coordinates is one Box-Muller image of two uniforms.
class IidGaussianSource final : public InnovationSource {
public:
    IidGaussianSource(std::size_t q, std::uint64_t seed);

    std::size_t dimension() const noexcept override { return q_; }
    std::string_view kind() const noexcept override { return "iid-gaussian"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override;
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

private:
    std::size_t q_;
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Plain Halton points xi_n, n = start, start+1, ...
class HaltonSource final : public InnovationSource {
public:
    explicit HaltonSource(std::size_t q, std::uint64_t start = 1);

    std::size_t dimension() const noexcept override { return q_; }
    std::string_view kind() const noexcept override { return "halton"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override;
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

    std::uint64_t index() const noexcept { return index_; }

private:
    std::size_t q_;
    std::uint64_t start_;
    std::uint64_t index_;
};

/// Quasi-random normals: Halton points of dimension 2*ceil(q/2), each coordinate pair mapped
/// through box_muller_pair.
class HaltonGaussianSource final : public InnovationSource {
public:
    explicit HaltonGaussianSource(std::size_t q, std::uint64_t start = 1);

    std::size_t dimension() const noexcept override { return q_; }
    std::string_view kind() const noexcept override { return "halton-gaussian"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override;
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

private:
    std::size_t q_;
    std::uint64_t start_;
    std::uint64_t index_;
    std::vector<double> buffer_;
};

/// x <- a x + z for |a| < 1.
double ar1_next(double x, double a, double z);

/// Componentwise AR(1): X_n = a X_{n-1} + s Z_n with Z i.i.d. N(0,1) from IidGaussianSource(q, seed).
/// `noise_scale` s defaults to 1; s = sqrt(1-a^2) gives unit stationary variance.
class Ar1Source final : public InnovationSource {
public:
    Ar1Source(std::size_t q, double a, std::uint64_t seed, double x0 = 0.0, double noise_scale = 1.0);

    std::size_t dimension() const noexcept override { return noise_.dimension(); }
    std::string_view kind() const noexcept override { return "ar1-mixing"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override;
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

    double coefficient() const noexcept { return a_; }

private:
    double a_;
    double x0_;
    double scale_;
    std::uint64_t seed_;
    IidGaussianSource noise_;
    std::vector<double> state_;
};

/// Homogeneous finite-state Markov chain; emits the real value attached to the current state.
class MarkovChainSource final : public InnovationSource {
public:
    /// `transition` is row-major k x k with rows summing to 1.
    MarkovChainSource(std::vector<double> values, std::vector<double> transition,
                      std::size_t initial_state, std::uint64_t seed);

    std::size_t dimension() const noexcept override { return 1; }
    std::string_view kind() const noexcept override { return "finite-markov-chain"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override;
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

    std::size_t states() const noexcept { return values_.size(); }
    /// Invariant law by power iteration (for reference values nu(f)).
    std::vector<double> stationary_distribution(std::size_t iterations = 10000) const;
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
    std::vector<double> cumulative_; // row-major cumulative transition rows
    std::size_t initial_;
    std::size_t state_;
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace sa::innovations
