#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esper {

/// Closure or orbit walk grew past the configured cap. Carries the number of
/// elements discovered before the walk stopped.
class cap_exceeded : public std::runtime_error {
public:
    cap_exceeded(std::size_t partial, std::size_t cap)
        : std::runtime_error("closure exceeded cap of " + std::to_string(cap) +
                             " (found " + std::to_string(partial) + " elements before stopping)"),
          partial_(partial),
          cap_(cap) {}

    std::size_t partial_size() const noexcept { return partial_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t partial_;
    std::size_t cap_;
};

/// A spectral or metric operation was asked for a disconnected graph.
class disconnected_graph : public std::runtime_error {
public:
    explicit disconnected_graph(int components)
        : std::runtime_error("graph is disconnected (" + std::to_string(components) +
                             " components); lambda1 would be 0"),
          components_(components) {}

    int components() const noexcept { return components_; }

private:
    int components_;
};

/// Iterative eigensolver ran out of iterations. Carries the best estimate seen.
class no_convergence : public std::runtime_error {
public:
    no_convergence(double best_estimate, double residual, int iterations)
        : std::runtime_error("eigensolver did not converge after " + std::to_string(iterations) +
                             " iterations (best estimate " + std::to_string(best_estimate) +
                             ", residual " + std::to_string(residual) + ")"),
          best_(best_estimate),
          residual_(residual),
          iterations_(iterations) {}

    double best_estimate() const noexcept { return best_; }
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double best_;
    double residual_;
    int iterations_;
};

/// Configuration file failed validation.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace esper
