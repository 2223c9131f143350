#pragma once

#include <string>
#include <utility>
#include <vector>

#include "esper/multigraph.hpp"

namespace esper::spectral {

struct SpectralReport {
    double lambda1 = 0.0;
    std::string method;  // "dense" or "iterative"
    double residual = 0.0;
    int iterations = 0;
    double tolerance = 0.0;
    bool connected = true;
    std::vector<double> eigenvector;  // unit eigenvector for lambda1

    /// Recorded in serialized reports so results stay auditable.
    static constexpr const char* kLoopConvention =
        "each generator fixing a vertex adds 1 to the diagonal adjacency entry";
};

/// (connected, component count) by BFS over the rotation table.
std::pair<bool, int> connectivity(const graphs::RegularMultigraph& g);

/// Full symmetric eigendecomposition of the Laplacian; lambda1 is the
/// second-smallest eigenvalue, residual 0 by convention. Requires a connected
/// graph with 2 <= n <= dense_threshold.
SpectralReport lambda1_dense(const graphs::RegularMultigraph& g,
                             std::uint32_t dense_threshold = 3000);

/// Smallest nonzero Laplacian eigenvalue by thick-restart Lanczos on the
/// orthogonal complement of the constant vector (explicit deflation).
/// Deterministic: the starting vector has entries sin(scale * (i+1)) and all
/// accumulation runs in fixed vertex order. max_iter counts matrix-vector
/// products. Throws no_convergence with the best estimate on failure.
SpectralReport lambda1_iterative(const graphs::RegularMultigraph& g, double tol = 1e-9,
                                 int max_iter = 50000);

}  // namespace esper::spectral
