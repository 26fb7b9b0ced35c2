#include <catch2/catch_amalgamated.hpp>

#include "prodchan/linalg.hpp"
#include "test_util.hpp"

using namespace prodchan;

namespace {

// Kronecker product recomputed from the result side: every result index is
// decomposed back into factor indices.
ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            r(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    return r;
}

ComplexMatrix ptrace_a_oracle(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
    ComplexMatrix r(d_b, d_b);
    for (std::size_t i = 0; i < d_a * d_b; ++i)
        for (std::size_t j = 0; j < d_a * d_b; ++j)
            if (i / d_b == j / d_b) r(i % d_b, j % d_b) += m(i, j);
    return r;
}

ComplexMatrix ptrace_b_oracle(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
    ComplexMatrix r(d_a, d_a);
    for (std::size_t i = 0; i < d_a * d_b; ++i)
        for (std::size_t j = 0; j < d_a * d_b; ++j)
            if (i % d_b == j % d_b) r(i / d_b, j / d_b) += m(i, j);
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

}  // namespace

TEST_CASE("tensor agrees with the index-decomposition oracle") {
    const std::size_t dims[][4] = {{2, 2, 2, 2}, {2, 3, 3, 2}, {3, 1, 2, 4}, {1, 2, 3, 1}};
    std::uint64_t seed = 11;
    for (const auto& d : dims) {
        ComplexMatrix a = random_mat(d[0], d[1], seed++);
        ComplexMatrix b = random_mat(d[2], d[3], seed++);
        REQUIRE(max_abs_diff(tensor(a, b), kron_oracle(a, b)) < 1e-14);
    }
}

TEST_CASE("tensor of identities is the identity") {
    ComplexMatrix t = tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(3));
    REQUIRE(max_abs_diff(t, ComplexMatrix::identity(6)) == 0.0);
}

TEST_CASE("tensor multiplicativity (A(x)B)(C(x)D) = AC(x)BD") {
    ComplexMatrix a = random_mat(2, 3, 5), c = random_mat(3, 2, 6);
    ComplexMatrix b = random_mat(3, 2, 7), d = random_mat(2, 3, 8);
    REQUIRE(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-12);
}

TEST_CASE("partial traces agree with brute-force index summation") {
    for (auto [d_a, d_b] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        ComplexMatrix m = random_mat(d_a * d_b, d_a * d_b, 100 + d_a * 10 + d_b);
        REQUIRE(max_abs_diff(partial_trace_a(m, d_a, d_b), ptrace_a_oracle(m, d_a, d_b)) < 1e-13);
        REQUIRE(max_abs_diff(partial_trace_b(m, d_a, d_b), ptrace_b_oracle(m, d_a, d_b)) < 1e-13);
    }
}

TEST_CASE("partial trace of the uniform matrix") {
    // All entries 1/4 on two qubits; both partial traces sum two entries per
    // output slot, so every output entry is 1/2.
    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = Complex(0.25, 0.0);
    ComplexMatrix expect(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) expect(i, j) = Complex(0.5, 0.0);
    REQUIRE(max_abs_diff(partial_trace_b(m, 2, 2), ptrace_b_oracle(m, 2, 2)) == 0.0);
    REQUIRE(max_abs_diff(partial_trace_b(m, 2, 2), expect) < 1e-15);
    REQUIRE(max_abs_diff(partial_trace_a(m, 2, 2), expect) < 1e-15);
}

TEST_CASE("partial traces factor on tensor products") {
    ComplexMatrix a = random_mat(3, 3, 21);
    ComplexMatrix b = random_mat(2, 2, 22);
    ComplexMatrix t = tensor(a, b);
    REQUIRE(max_abs_diff(partial_trace_b(t, 3, 2), a * b.trace()) < 1e-12);
    REQUIRE(max_abs_diff(partial_trace_a(t, 3, 2), b * a.trace()) < 1e-12);
}

TEST_CASE("partial traces preserve the full trace") {
    ComplexMatrix m = random_mat(6, 6, 31);
    REQUIRE(std::abs(partial_trace_a(m, 2, 3).trace() - m.trace()) < 1e-12);
    REQUIRE(std::abs(partial_trace_b(m, 2, 3).trace() - m.trace()) < 1e-12);
}

TEST_CASE("trace_norm of the Bell-vs-mixed difference is 3/2") {
    // Eigenvalues of bell - I/4 are 3/4 and -1/4 (three times).
    ComplexMatrix diff = bell_mat() - ComplexMatrix::identity(4) * 0.25;
    REQUIRE(trace_norm(diff) == Catch::Approx(1.5).margin(1e-12));
}

TEST_CASE("trace_norm of a diagonal is the absolute entry sum") {
    ComplexMatrix d(3, 3);
    d(0, 0) = Complex(0.25, 0.0);
    d(1, 1) = Complex(-0.25, 0.0);
    d(2, 2) = Complex(0.5, 0.0);
    REQUIRE(trace_norm(d) == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("trace_norm on non-Hermitian input matches the singular value sum") {
    ComplexMatrix m = random_mat(4, 4, 41);
    // Independent route: singular values are sqrt eigenvalues of M^dag M.
    EighResult e = eigh(m.adjoint() * m);
    double expect = 0.0;
    for (double lam : e.eigenvalues) expect += std::sqrt(std::max(0.0, lam));
    REQUIRE(trace_norm(m) == Catch::Approx(expect).margin(1e-10));
}

TEST_CASE("trace_norm properties") {
    ComplexMatrix a = random_hermitian(4, 51);
    ComplexMatrix b = random_hermitian(4, 52);
    REQUIRE(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-12);
    REQUIRE(trace_norm(a * Complex(-2.0, 0.0)) == Catch::Approx(2.0 * trace_norm(a)).margin(1e-10));
    REQUIRE(trace_norm(a) >= std::abs(a.trace()) - 1e-12);
    REQUIRE(error_code_of([] { trace_norm(ComplexMatrix(2, 3)); }) == "shape");
}

TEST_CASE("eigh reconstructs the matrix with descending eigenvalues") {
    for (std::uint64_t seed : {61, 62, 63}) {
        ComplexMatrix h = random_hermitian(5, seed);
        EighResult e = eigh(h);
        REQUIRE(e.eigenvalues.size() == 5);
        for (std::size_t k = 1; k < 5; ++k) REQUIRE(e.eigenvalues[k - 1] >= e.eigenvalues[k]);
        // V diag(lambda) V^dag == H
        ComplexMatrix lam(5, 5);
        for (std::size_t k = 0; k < 5; ++k) lam(k, k) = Complex(e.eigenvalues[k], 0.0);
        ComplexMatrix rebuilt = e.eigenvectors * lam * e.eigenvectors.adjoint();
        REQUIRE((rebuilt - h).max_abs() < 1e-11);
        // Orthonormal columns.
        ComplexMatrix gram = e.eigenvectors.adjoint() * e.eigenvectors;
        REQUIRE((gram - ComplexMatrix::identity(5)).max_abs() < 1e-12);
    }
}

TEST_CASE("eigh phase convention pins the first significant component") {
    ComplexMatrix h = random_hermitian(4, 71);
    EighResult e = eigh(h);
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i < 4; ++i) {
            const Complex v = e.eigenvectors(i, k);
            if (std::abs(v) > 1e-12) {
                REQUIRE(v.real() > 0.0);
                REQUIRE(std::abs(v.imag()) < 1e-12 * std::abs(v.real()) + 1e-14);
                break;
            }
        }
    }
}

TEST_CASE("eigh symmetrizes small Hermiticity defects") {
    ComplexMatrix h = random_hermitian(3, 81);
    ComplexMatrix perturbed = h;
    perturbed(0, 1) += Complex(0.0, 1e-11);
    EighResult a = eigh(h);
    EighResult b = eigh(perturbed);
    for (std::size_t k = 0; k < 3; ++k)
        REQUIRE(a.eigenvalues[k] == Catch::Approx(b.eigenvalues[k]).margin(1e-10));
}

TEST_CASE("eigh rejects bad input") {
    REQUIRE(error_code_of([] { eigh(ComplexMatrix(2, 3)); }) == "shape");
    REQUIRE(error_code_of([] {
                ComplexMatrix m(2, 2);
                m(0, 1) = Complex(1.0, 0.0);
                eigh(m);
            }) == "not-hermitian");
}

TEST_CASE("swap operator exchanges tensor factors") {
    for (auto [d_a, d_b] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 2}, {2, 2}}) {
        ComplexMatrix f = swap_operator(d_a, d_b);
        ComplexMatrix x = random_mat(d_a, 1, 91);
        ComplexMatrix y = random_mat(d_b, 1, 92);
        // F (y (x) x) = x (x) y
        REQUIRE((f * tensor(y, x) - tensor(x, y)).max_abs() < 1e-13);
        // Unitarity and the adjoint convention.
        ComplexMatrix ff = f * f.adjoint();
        REQUIRE((ff - ComplexMatrix::identity(d_a * d_b)).max_abs() < 1e-14);
        REQUIRE((f.adjoint() - swap_operator(d_b, d_a)).max_abs() == 0.0);
    }
}

TEST_CASE("swap operator against a trivial factor is the identity") {
    REQUIRE((swap_operator(1, 3) - ComplexMatrix::identity(3)).max_abs() == 0.0);
    REQUIRE((swap_operator(3, 1) - ComplexMatrix::identity(3)).max_abs() == 0.0);
}

TEST_CASE("matrix shape violations") {
    REQUIRE(error_code_of([] { ComplexMatrix(2, 2, std::vector<Complex>(3)); }) == "shape");
    REQUIRE(error_code_of([] { ComplexMatrix(2, 2) + ComplexMatrix(3, 3); }) == "shape");
    REQUIRE(error_code_of([] { ComplexMatrix(2, 3) * ComplexMatrix(2, 3); }) == "shape");
    REQUIRE(error_code_of([] { ComplexMatrix(2, 3).trace(); }) == "shape");
    REQUIRE(error_code_of([] { partial_trace_a(ComplexMatrix(4, 4), 3, 2); }) == "shape");
    REQUIRE(error_code_of([] { partial_trace_b(ComplexMatrix(5, 5), 2, 2); }) == "shape");
}

TEST_CASE("adjoint is an involution and row-major entries round-trip") {
    ComplexMatrix m = random_mat(3, 2, 101);
    REQUIRE((m.adjoint().adjoint() - m).max_abs() == 0.0);
    REQUIRE(m.adjoint().rows() == 2);
    REQUIRE(m.adjoint()(1, 2) == std::conj(m(2, 1)));
}
