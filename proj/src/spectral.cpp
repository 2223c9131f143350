#include "esper/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "esper/errors.hpp"

namespace esper::spectral {

using graphs::RegularMultigraph;

std::pair<bool, int> connectivity(const RegularMultigraph& g) {
    if (g.n == 0) return {true, 0};
    std::vector<char> seen(g.n, 0);
    std::vector<std::uint32_t> stack;
    int components = 0;
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t j = 0; j < g.degree; ++j) {
                const std::uint32_t w = g.neighbor(v, j);
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return {components == 1, components};
}

namespace {

void require_connected(const RegularMultigraph& g) {
    auto [ok, components] = connectivity(g);
    if (!ok) throw disconnected_graph(components);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void project_out_constants(std::vector<double>& v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

constexpr double kStartScale = 2.399963229728653;  // radians between consecutive start entries

std::vector<double> start_vector(std::uint32_t n, int attempt) {
    std::vector<double> v(n);
    const double scale = kStartScale * (1.0 + 0.37 * attempt);
    for (std::uint32_t i = 0; i < n; ++i) v[i] = std::sin(scale * (i + 1.0) + 0.25 * attempt);
    project_out_constants(v);
    return v;
}

}  // namespace

SpectralReport lambda1_dense(const RegularMultigraph& g, std::uint32_t dense_threshold) {
    if (g.n < 2) throw std::invalid_argument("graph has no nonzero Laplacian eigenvalue");
    if (g.n > dense_threshold) {
        throw std::invalid_argument("n = " + std::to_string(g.n) + " exceeds dense threshold " +
                                    std::to_string(dense_threshold));
    }
    require_connected(g);

    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.n, g.n);
    const double r = static_cast<double>(g.degree);
    for (std::uint32_t v = 0; v < g.n; ++v) {
        lap(v, v) += r;
        for (std::uint32_t j = 0; j < g.degree; ++j) lap(v, g.neighbor(v, j)) -= 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");

    SpectralReport report;
    report.lambda1 = std::max(0.0, solver.eigenvalues()(1));
    report.method = "dense";
    report.residual = 0.0;  // by convention
    report.iterations = 0;
    report.tolerance = 0.0;
    report.connected = true;
    report.eigenvector.assign(g.n, 0.0);
    for (std::uint32_t i = 0; i < g.n; ++i) report.eigenvector[i] = solver.eigenvectors()(i, 1);
    return report;
}

SpectralReport lambda1_iterative(const RegularMultigraph& g, double tol, int max_iter) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (g.n < 2) throw std::invalid_argument("graph has no nonzero Laplacian eigenvalue");
    require_connected(g);

    const std::uint32_t n = g.n;
    const std::uint32_t basis_cap = std::min<std::uint32_t>(n - 1, 220);
    const std::uint32_t keep = std::min<std::uint32_t>(8, basis_cap > 2 ? basis_cap - 2 : 1);
    const double breakdown = 1e-13 * 2.0 * g.degree;

    // deflated operator: y = P Delta x, P = projection onto the complement of constants
    auto apply_op = [&g](const std::vector<double>& x, std::vector<double>& y) {
        graphs::laplacian_apply(g, x.data(), y.data());
        project_out_constants(y);
    };

    std::vector<std::vector<double>> basis;
    basis.reserve(basis_cap);
    Eigen::MatrixXd t_mat = Eigen::MatrixXd::Zero(basis_cap, basis_cap);

    {
        std::vector<double> v0 = start_vector(n, 0);
        double nv = norm(v0);
        for (int attempt = 1; nv < 1e-12 && attempt < 8; ++attempt) {
            v0 = start_vector(n, attempt);
            nv = norm(v0);
        }
        if (nv < 1e-12) throw std::runtime_error("could not build a nonzero deflated start vector");
        for (double& x : v0) x /= nv;
        basis.push_back(std::move(v0));
    }

    std::vector<double> w(n);
    std::vector<double> scratch(n);
    int matvecs = 0;
    int injections = 0;
    double last_beta = 0;

    // Ritz data for the leading (j+1) x (j+1) block of T
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;
    auto solve_block = [&](std::uint32_t size) {
        small.compute(t_mat.topLeftCorner(size, size));
        return small.info() == Eigen::Success;
    };

    auto ritz_vector = [&](std::uint32_t size, std::vector<double>& out) {
        out.assign(n, 0.0);
        for (std::uint32_t l = 0; l < size; ++l) {
            const double coef = small.eigenvectors()(l, 0);
            axpy(coef, basis[l], out);
        }
        project_out_constants(out);
        const double nv = norm(out);
        for (double& x : out) x /= nv;
    };

    // true residual || Delta u - rho u || with rho the Rayleigh quotient
    auto true_residual = [&](const std::vector<double>& u, double& rho) {
        graphs::laplacian_apply(g, u.data(), scratch.data());
        rho = dot(u, scratch);
        double rr = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            const double d = scratch[i] - rho * u[i];
            rr += d * d;
        }
        return std::sqrt(rr);
    };

    std::vector<double> candidate;
    double best_theta = 0;
    double best_res = std::numeric_limits<double>::infinity();

    std::uint32_t j = 0;
    while (matvecs < max_iter) {
        // one Lanczos step with coefficient capture and a second
        // orthogonalization pass
        apply_op(basis[j], w);
        ++matvecs;
        for (std::uint32_t i = 0; i <= j; ++i) {
            const double h = dot(w, basis[i]);
            t_mat(i, j) = h;
            t_mat(j, i) = h;
            axpy(-h, basis[i], w);
        }
        for (std::uint32_t i = 0; i <= j; ++i) axpy(-dot(w, basis[i]), basis[i], w);
        project_out_constants(w);
        last_beta = norm(w);

        const bool basis_full = (j + 1 == basis_cap);
        const bool broke_down = last_beta < breakdown;
        bool check_now = basis_full || broke_down || (j % 4 == 3);

        if (check_now && solve_block(j + 1)) {
            const double est = last_beta * std::abs(small.eigenvectors()(j, 0));
            if (est <= tol || broke_down || basis_full) {
                ritz_vector(j + 1, candidate);
                double rho = 0;
                const double res = true_residual(candidate, rho);
                if (res < best_res) {
                    best_res = res;
                    best_theta = rho;
                }
                if (res <= tol) {
                    SpectralReport report;
                    report.lambda1 = rho;
                    report.method = "iterative";
                    report.residual = res;
                    report.iterations = matvecs;
                    report.tolerance = tol;
                    report.connected = true;
                    report.eigenvector = std::move(candidate);
                    return report;
                }
            }
        }

        if (broke_down) {
            // invariant subspace: continue with a fresh deterministic direction
            bool injected = false;
            while (injections < static_cast<int>(n) && !injected) {
                std::vector<double> fresh(n, 0.0);
                fresh[injections % n] = 1.0;
                ++injections;
                project_out_constants(fresh);
                for (const auto& b : basis) axpy(-dot(fresh, b), b, fresh);
                for (const auto& b : basis) axpy(-dot(fresh, b), b, fresh);
                const double nf = norm(fresh);
                if (nf > 1e-10) {
                    for (double& x : fresh) x /= nf;
                    w = std::move(fresh);
                    last_beta = 0;  // no coupling to the previous block
                    injected = true;
                }
            }
            if (!injected) {
                // the walk spanned the whole deflated space; the Ritz value is exact
                solve_block(j + 1);
                ritz_vector(j + 1, candidate);
                double rho = 0;
                const double res = true_residual(candidate, rho);
                SpectralReport report;
                report.lambda1 = rho;
                report.method = "iterative";
                report.residual = res;
                report.iterations = matvecs;
                report.tolerance = tol;
                report.connected = true;
                report.eigenvector = std::move(candidate);
                if (res <= tol) return report;
                throw no_convergence(rho, res, matvecs);
            }
        } else {
            for (double& x : w) x /= last_beta;
        }

        if (basis_full && basis_cap == n - 1) {
            // the block spans the whole deflated space; its Ritz data is exact
            solve_block(basis_cap);
            ritz_vector(basis_cap, candidate);
            double rho = 0;
            const double res = true_residual(candidate, rho);
            SpectralReport report;
            report.lambda1 = rho;
            report.method = "iterative";
            report.residual = res;
            report.iterations = matvecs;
            report.tolerance = tol;
            report.connected = true;
            report.eigenvector = std::move(candidate);
            if (res <= tol) return report;
            throw no_convergence(rho, res, matvecs);
        }

        if (basis_full) {
            // thick restart: keep the lowest Ritz vectors plus the continuation vector
            solve_block(basis_cap);
            std::vector<std::vector<double>> kept;
            std::vector<double> kept_theta;
            kept.reserve(keep + 1);
            for (std::uint32_t i = 0; i < keep; ++i) {
                std::vector<double> u(n, 0.0);
                for (std::uint32_t l = 0; l < basis_cap; ++l) {
                    axpy(small.eigenvectors()(l, i), basis[l], u);
                }
                project_out_constants(u);
                for (const auto& prev : kept) axpy(-dot(u, prev), prev, u);
                const double nu = norm(u);
                if (nu < 1e-12) continue;
                for (double& x : u) x /= nu;
                kept.push_back(std::move(u));
                kept_theta.push_back(small.eigenvalues()(i));
            }
            const auto kept_count = static_cast<std::uint32_t>(kept.size());
            for (const auto& prev : kept) axpy(-dot(w, prev), prev, w);
            const double nw = norm(w);
            if (nw > breakdown) {
                for (double& x : w) x /= nw;
                kept.push_back(w);
            } else {
                kept.push_back(start_vector(n, ++injections));
                auto& fresh = kept.back();
                for (std::uint32_t i = 0; i + 1 < kept.size(); ++i) {
                    axpy(-dot(fresh, kept[i]), kept[i], fresh);
                }
                const double nf = norm(fresh);
                if (nf < 1e-12) throw no_convergence(best_theta, best_res, matvecs);
                for (double& x : fresh) x /= nf;
            }
            basis = std::move(kept);
            t_mat.setZero();
            for (std::uint32_t i = 0; i < kept_count; ++i) t_mat(i, i) = kept_theta[i];
            j = kept_count;
        } else {
            basis.push_back(w);
            ++j;
        }
    }
    throw no_convergence(best_theta, best_res, matvecs);
}

}  // namespace esper::spectral
