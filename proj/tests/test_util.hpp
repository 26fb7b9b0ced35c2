#pragma once

#include <functional>
#include <random>
#include <string>

#include "prodchan/linalg.hpp"
#include "prodchan/states.hpp"

// Runs f and reports the code of the prodchan::Error it throws, or "" if it
// does not throw one.
inline std::string error_code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const prodchan::Error& e) {
        return e.code();
    }
    return "";
}

inline prodchan::ComplexMatrix random_mat(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return prodchan::gaussian_matrix(rows, cols, rng);
}

inline prodchan::ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    prodchan::ComplexMatrix g = random_mat(n, n, seed);
    return (g + g.adjoint()) * 0.5;
}

// Projector onto (|00> + |11>)/sqrt(2) on two qubits.
inline prodchan::ComplexMatrix bell_mat() {
    prodchan::ComplexMatrix m(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = prodchan::Complex(0.5, 0.0);
    return m;
}

// Controlled-NOT unitary on two qubits, first factor controlling.
inline prodchan::ComplexMatrix cnot_mat() {
    prodchan::ComplexMatrix m(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = prodchan::Complex(1.0, 0.0);
    return m;
}
