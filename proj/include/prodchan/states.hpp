#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "prodchan/linalg.hpp"

namespace prodchan {

// Tolerances for density-matrix invariants and the product-state decision.
inline constexpr double kStateTol = 1e-9;
inline constexpr double kProductTol = 1e-8;

struct Split {
    std::size_t d_a = 0;
    std::size_t d_b = 0;
    bool operator==(const Split&) const = default;
};

// Trace-one positive semidefinite matrix, optionally tagged with a bipartite
// factorization of its index space.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix mat, std::optional<Split> split = std::nullopt)
        : mat_(std::move(mat)), split_(split) {
        if (!mat_.square() || mat_.rows() == 0)
            throw Error("shape", "density matrix must be square and nonempty");
        if (split_ && split_->d_a * split_->d_b != mat_.rows())
            throw Error("shape", "split does not factor the dimension");
        if (mat_.hermiticity_defect() > kStateTol)
            throw Error("invariant", "density matrix is not Hermitian within tolerance");
        if (std::abs(mat_.trace() - Complex(1.0, 0.0)) > kStateTol)
            throw Error("invariant", "density matrix trace is not 1 within tolerance");
        EighResult e = eigh(mat_);
        if (e.eigenvalues.back() < -kStateTol)
            throw Error("invariant", "density matrix has a negative eigenvalue beyond tolerance");
    }

    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& mat() const { return mat_; }
    const std::optional<Split>& split() const { return split_; }

    DensityMatrix with_split(std::size_t d_a, std::size_t d_b) const {
        return DensityMatrix(mat_, Split{d_a, d_b});
    }

private:
    ComplexMatrix mat_;
    std::optional<Split> split_;
};

inline Split require_split(const DensityMatrix& s) {
    if (!s.split()) throw Error("no-split", "state carries no bipartite split");
    return *s.split();
}

// Reduced states on the two factors.
inline std::pair<DensityMatrix, DensityMatrix> marginals(const DensityMatrix& s) {
    const Split sp = require_split(s);
    return {DensityMatrix(partial_trace_b(s.mat(), sp.d_a, sp.d_b)),
            DensityMatrix(partial_trace_a(s.mat(), sp.d_a, sp.d_b))};
}

// Trace-norm distance from s to the tensor product of its own marginals.
// Zero exactly on product states.
inline double product_distance(const DensityMatrix& s) {
    const Split sp = require_split(s);
    ComplexMatrix rho_a = partial_trace_b(s.mat(), sp.d_a, sp.d_b);
    ComplexMatrix rho_b = partial_trace_a(s.mat(), sp.d_a, sp.d_b);
    return trace_norm(s.mat() - tensor(rho_a, rho_b));
}

inline bool is_product(const DensityMatrix& s, double tol = kProductTol) {
    return product_distance(s) <= tol;
}

// Von Neumann entropy in nats. Eigenvalues in [-1e-9, 0) clamp to zero;
// anything more negative is rejected.
inline double von_neumann_entropy(const ComplexMatrix& rho) {
    EighResult e = eigh(rho);
    double s = 0.0;
    for (double lam : e.eigenvalues) {
        if (lam < -kStateTol)
            throw Error("invariant", "entropy of a matrix with a negative eigenvalue");
        if (lam <= 0.0) continue;
        s -= lam * std::log(lam);
    }
    return s;
}

// S(rho_a) + S(rho_b) - S(s), in nats. Nonnegative up to rounding.
inline double mutual_information(const DensityMatrix& s) {
    const Split sp = require_split(s);
    const double sa = von_neumann_entropy(partial_trace_b(s.mat(), sp.d_a, sp.d_b));
    const double sb = von_neumann_entropy(partial_trace_a(s.mat(), sp.d_a, sp.d_b));
    return sa + sb - von_neumann_entropy(s.mat());
}

inline ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    return m;
}

// Normalized G G^dag for a Gaussian dim x rank matrix G. rank = 1 gives a
// Haar-random pure state.
inline DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    if (dim == 0) throw Error("shape", "random_density requires positive dimension");
    if (rank < 1 || rank > dim) throw Error("rank", "rank must lie in [1, dim]");
    std::mt19937_64 rng(seed);
    ComplexMatrix g = gaussian_matrix(dim, rank, rng);
    ComplexMatrix m = g * g.adjoint();
    const double tr = m.trace().real();
    return DensityMatrix(m * (1.0 / tr));
}

inline DensityMatrix random_pure_product(std::size_t d_a, std::size_t d_b, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ComplexMatrix a = gaussian_matrix(d_a, 1, rng);
    ComplexMatrix b = gaussian_matrix(d_b, 1, rng);
    ComplexMatrix rho_a = a * a.adjoint();
    ComplexMatrix rho_b = b * b.adjoint();
    rho_a = rho_a * (1.0 / rho_a.trace().real());
    rho_b = rho_b * (1.0 / rho_b.trace().real());
    return DensityMatrix(tensor(rho_a, rho_b), Split{d_a, d_b});
}

// Informationally complete family of d^2 pure states spanning the d x d
// Hermitian matrices: |m><m| for each m, then for each pair m < n (in
// lexicographic order) the +1 superposition, then the +i superpositions.
inline std::vector<DensityMatrix> probe_basis(std::size_t d) {
    if (d == 0) throw Error("param", "probe_basis requires positive dimension");
    std::vector<DensityMatrix> probes;
    probes.reserve(d * d);
    for (std::size_t m = 0; m < d; ++m) {
        ComplexMatrix p(d, d);
        p(m, m) = Complex(1.0, 0.0);
        probes.emplace_back(std::move(p));
    }
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = m + 1; n < d; ++n) {
            ComplexMatrix p(d, d);
            p(m, m) = Complex(0.5, 0.0);
            p(m, n) = Complex(0.5, 0.0);
            p(n, m) = Complex(0.5, 0.0);
            p(n, n) = Complex(0.5, 0.0);
            probes.emplace_back(std::move(p));
        }
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = m + 1; n < d; ++n) {
            ComplexMatrix p(d, d);
            p(m, m) = Complex(0.5, 0.0);
            p(m, n) = Complex(0.0, -0.5);
            p(n, m) = Complex(0.0, 0.5);
            p(n, n) = Complex(0.5, 0.0);
            probes.emplace_back(std::move(p));
        }
    return probes;
}

}  // namespace prodchan
