#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "prodchan/error.hpp"

namespace prodchan {

using Complex = std::complex<double>;
using EigenRowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Matrices within this max-abs distance of their adjoint are treated as
// Hermitian and symmetrized before spectral routines.
inline constexpr double kHermTol = 1e-9;

// Dense complex matrix with row-major entry order. All bipartite index
// conventions in this library hang off the tensor() layout below.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : m_(EigenRowMat::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, const std::vector<Complex>& entries)
        : ComplexMatrix(rows, cols) {
        if (entries.size() != rows * cols)
            throw Error("shape", "entry count does not match rows*cols");
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i * cols + j];
    }

    explicit ComplexMatrix(EigenRowMat m) : m_(std::move(m)) {}

    static ComplexMatrix identity(std::size_t n) {
        return ComplexMatrix(EigenRowMat(EigenRowMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))));
    }

    std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
    bool square() const { return m_.rows() == m_.cols(); }

    Complex& operator()(std::size_t i, std::size_t j) {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const Complex& operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    const EigenRowMat& raw() const { return m_; }
    EigenRowMat& raw() { return m_; }

    ComplexMatrix adjoint() const { return ComplexMatrix(EigenRowMat(m_.adjoint())); }

    Complex trace() const {
        if (!square()) throw Error("shape", "trace of non-square matrix");
        return m_.trace();
    }

    double max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

    double hermiticity_defect() const {
        if (!square()) throw Error("shape", "hermiticity defect of non-square matrix");
        if (m_.size() == 0) return 0.0;
        return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        check_same_shape(o);
        return ComplexMatrix(EigenRowMat(m_ + o.m_));
    }
    ComplexMatrix operator-(const ComplexMatrix& o) const {
        check_same_shape(o);
        return ComplexMatrix(EigenRowMat(m_ - o.m_));
    }
    ComplexMatrix operator-() const { return ComplexMatrix(EigenRowMat(-m_)); }

    ComplexMatrix operator*(const ComplexMatrix& o) const {
        if (cols() != o.rows()) throw Error("shape", "inner dimensions do not match");
        return ComplexMatrix(EigenRowMat(m_ * o.m_));
    }
    ComplexMatrix operator*(Complex s) const { return ComplexMatrix(EigenRowMat(m_ * s)); }
    ComplexMatrix operator*(double s) const { return ComplexMatrix(EigenRowMat(m_ * s)); }
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }
    friend ComplexMatrix operator*(double s, const ComplexMatrix& m) { return m * s; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o);
        m_ += o.m_;
        return *this;
    }

private:
    void check_same_shape(const ComplexMatrix& o) const {
        if (rows() != o.rows() || cols() != o.cols())
            throw Error("shape", "matrix shapes do not match");
    }

    EigenRowMat m_;
};

// Kronecker product. Row (i_a, i_b) of the result is i_a*B.rows + i_b, so the
// first factor owns the major index everywhere downstream.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Complex v = a(ia, ja);
            if (v == Complex(0.0, 0.0)) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
        }
    return r;
}

// Trace out the first factor of a (d_a*d_b)-dimensional square matrix.
inline ComplexMatrix partial_trace_a(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
    if (!m.square() || m.rows() != d_a * d_b)
        throw Error("shape", "matrix is not square of dimension d_a*d_b");
    ComplexMatrix r(d_b, d_b);
    for (std::size_t ib = 0; ib < d_b; ++ib)
        for (std::size_t jb = 0; jb < d_b; ++jb) {
            Complex s(0.0, 0.0);
            for (std::size_t k = 0; k < d_a; ++k) s += m(k * d_b + ib, k * d_b + jb);
            r(ib, jb) = s;
        }
    return r;
}

// Trace out the second factor.
inline ComplexMatrix partial_trace_b(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
    if (!m.square() || m.rows() != d_a * d_b)
        throw Error("shape", "matrix is not square of dimension d_a*d_b");
    ComplexMatrix r(d_a, d_a);
    for (std::size_t ia = 0; ia < d_a; ++ia)
        for (std::size_t ja = 0; ja < d_a; ++ja) {
            Complex s(0.0, 0.0);
            for (std::size_t k = 0; k < d_b; ++k) s += m(ia * d_b + k, ja * d_b + k);
            r(ia, ja) = s;
        }
    return r;
}

struct EighResult {
    std::vector<double> eigenvalues;  // non-increasing
    ComplexMatrix eigenvectors;       // columns, same order as eigenvalues
};

// Hermitian eigendecomposition of (M + M^dag)/2. Eigenvalues come back
// non-increasing; each eigenvector is rotated so its first component of
// magnitude > 1e-12 is real and positive.
inline EighResult eigh(const ComplexMatrix& m) {
    if (!m.square()) throw Error("shape", "eigh requires a square matrix");
    if (m.hermiticity_defect() > kHermTol)
        throw Error("not-hermitian", "matrix is not Hermitian within tolerance");

    const Eigen::Index n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd h = (Eigen::MatrixXcd(m.raw()) + Eigen::MatrixXcd(m.raw()).adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw Error("not-hermitian", "eigendecomposition failed to converge");

    EighResult out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.eigenvectors = ComplexMatrix(m.rows(), m.rows());
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = n - 1 - k;  // solver returns ascending order
        out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(src);
        Eigen::VectorXcd v = solver.eigenvectors().col(src);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(v(i)) > 1e-12) {
                v *= std::conj(v(i)) / std::abs(v(i));
                break;
            }
        }
        for (Eigen::Index i = 0; i < n; ++i)
            out.eigenvectors(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = v(i);
    }
    return out;
}

// Sum of singular values; for Hermitian input this equals the sum of
// |eigenvalues| and is computed that way.
inline double trace_norm(const ComplexMatrix& m) {
    if (!m.square()) throw Error("shape", "trace_norm requires a square matrix");
    if (m.rows() == 0) return 0.0;
    if (m.hermiticity_defect() <= kHermTol) {
        EighResult e = eigh(m);
        double s = 0.0;
        for (double v : e.eigenvalues) s += std::abs(v);
        return s;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(m.raw()));
    return svd.singularValues().sum();
}

// Unitary H_b (x) H_a -> H_a (x) H_b exchanging the factors:
// F (y (x) x) = x (x) y. Shape (d_a*d_b) x (d_b*d_a).
inline ComplexMatrix swap_operator(std::size_t d_a, std::size_t d_b) {
    if (d_a == 0 || d_b == 0) throw Error("param", "swap_operator requires positive dimensions");
    ComplexMatrix f(d_a * d_b, d_b * d_a);
    for (std::size_t ia = 0; ia < d_a; ++ia)
        for (std::size_t ib = 0; ib < d_b; ++ib)
            f(ia * d_b + ib, ib * d_a + ia) = Complex(1.0, 0.0);
    return f;
}

}  // namespace prodchan
