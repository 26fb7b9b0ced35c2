#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "prodchan/states.hpp"

namespace prodchan {

// Acceptance thresholds for validate(), Choi invariants, and spectral cutoffs.
inline constexpr double kTpAcceptTol = 1e-8;
inline constexpr double kCpAcceptTol = 1e-9;
inline constexpr double kChoiTpTol = 1e-8;
inline constexpr double kRankTol = 1e-10;
// Eigenvalues of a state below this are treated as exact zeros when a
// constructor turns eigenpairs into Kraus operators.
inline constexpr double kNullWeightTol = 1e-12;

// Completely positive map presented by Kraus operators. The constructor
// checks shapes only; trace preservation is reported by validate(), not
// enforced here, so arbitrary Kraus lists can be inspected.
class KrausChannel {
public:
    KrausChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus,
                 std::optional<Split> split_in = std::nullopt,
                 std::optional<Split> split_out = std::nullopt)
        : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)),
          split_in_(split_in), split_out_(split_out) {
        if (dim_in_ == 0 || dim_out_ == 0)
            throw Error("shape", "channel dimensions must be positive");
        if (kraus_.empty()) throw Error("shape", "channel needs at least one Kraus operator");
        for (const ComplexMatrix& k : kraus_)
            if (k.rows() != dim_out_ || k.cols() != dim_in_)
                throw Error("shape", "Kraus operator is not dim_out x dim_in");
        if (split_in_ && split_in_->d_a * split_in_->d_b != dim_in_)
            throw Error("shape", "split_in does not factor dim_in");
        if (split_out_ && split_out_->d_a * split_out_->d_b != dim_out_)
            throw Error("shape", "split_out does not factor dim_out");
    }

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
    const std::optional<Split>& split_in() const { return split_in_; }
    const std::optional<Split>& split_out() const { return split_out_; }

    KrausChannel with_splits(std::optional<Split> in, std::optional<Split> out) const {
        return KrausChannel(dim_in_, dim_out_, kraus_, in, out);
    }

private:
    std::size_t dim_in_;
    std::size_t dim_out_;
    std::vector<ComplexMatrix> kraus_;
    std::optional<Split> split_in_;
    std::optional<Split> split_out_;
};

inline KrausChannel identity_channel(std::size_t dim) {
    return KrausChannel(dim, dim, {ComplexMatrix::identity(dim)});
}

// Kraus action on a raw matrix, no state checks.
inline ComplexMatrix kraus_apply(const KrausChannel& ch, const ComplexMatrix& m) {
    if (m.rows() != ch.dim_in() || m.cols() != ch.dim_in())
        throw Error("shape", "input matrix does not match dim_in");
    ComplexMatrix out(ch.dim_out(), ch.dim_out());
    for (const ComplexMatrix& k : ch.kraus()) out += k * m * k.adjoint();
    return out;
}

// Channel action on a state. The output inherits the channel's split_out.
inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& s) {
    if (s.dim() != ch.dim_in()) throw Error("shape", "state dimension does not match dim_in");
    return DensityMatrix(kraus_apply(ch, s.mat()), ch.split_out());
}

// Choi matrix entries: C[(m,i),(n,j)] = sum_k X_k[i,m] conj(X_k[j,n]) with the
// input index major, i.e. row index m*dim_out + i. Equivalently
// C = sum_{mn} |m><n| (x) ch(|m><n|).
inline ComplexMatrix choi_matrix(const KrausChannel& ch) {
    const std::size_t din = ch.dim_in();
    const std::size_t dout = ch.dim_out();
    const std::size_t d = din * dout;
    ComplexMatrix c(d, d);
    std::vector<Complex> v(d);
    for (const ComplexMatrix& k : ch.kraus()) {
        for (std::size_t m = 0; m < din; ++m)
            for (std::size_t i = 0; i < dout; ++i) v[m * dout + i] = k(i, m);
        for (std::size_t r = 0; r < d; ++r) {
            if (v[r] == Complex(0.0, 0.0)) continue;
            for (std::size_t cidx = 0; cidx < d; ++cidx)
                c(r, cidx) += v[r] * std::conj(v[cidx]);
        }
    }
    return c;
}

struct ValidationReport {
    double tp_defect = 0.0;  // trace norm of sum_k X_k^dag X_k - I
    double cp_defect = 0.0;  // max(0, -lambda_min) of the Choi matrix
    bool accepted() const { return tp_defect <= kTpAcceptTol && cp_defect <= kCpAcceptTol; }
};

inline ValidationReport validate(const KrausChannel& ch) {
    ComplexMatrix acc(ch.dim_in(), ch.dim_in());
    for (const ComplexMatrix& k : ch.kraus()) acc += k.adjoint() * k;
    ValidationReport rep;
    rep.tp_defect = trace_norm(acc - ComplexMatrix::identity(ch.dim_in()));
    EighResult e = eigh(choi_matrix(ch));
    rep.cp_defect = std::max(0.0, -e.eigenvalues.back());
    return rep;
}

// Choi matrix of a genuine channel. Construction enforces Hermiticity,
// positivity and the trace-preservation marginal, so a ChoiMatrix value is
// always convertible back to Kraus form.
class ChoiMatrix {
public:
    ChoiMatrix(std::size_t dim_in, std::size_t dim_out, ComplexMatrix mat)
        : dim_in_(dim_in), dim_out_(dim_out), mat_(std::move(mat)) {
        if (dim_in_ == 0 || dim_out_ == 0)
            throw Error("shape", "Choi dimensions must be positive");
        if (!mat_.square() || mat_.rows() != dim_in_ * dim_out_)
            throw Error("shape", "Choi matrix must be square of dimension dim_in*dim_out");
        if (mat_.hermiticity_defect() > kHermTol)
            throw Error("not-hermitian", "Choi matrix is not Hermitian within tolerance");
        EighResult e = eigh(mat_);
        if (e.eigenvalues.back() < -kCpAcceptTol)
            throw Error("not-cp", "Choi matrix has a negative eigenvalue beyond tolerance");
        ComplexMatrix pt = partial_trace_b(mat_, dim_in_, dim_out_);
        if (trace_norm(pt - ComplexMatrix::identity(dim_in_)) > kChoiTpTol)
            throw Error("not-tp", "Choi marginal over the output is not the identity");
    }

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    const ComplexMatrix& mat() const { return mat_; }

private:
    std::size_t dim_in_;
    std::size_t dim_out_;
    ComplexMatrix mat_;
};

inline ChoiMatrix choi(const KrausChannel& ch) {
    return ChoiMatrix(ch.dim_in(), ch.dim_out(), choi_matrix(ch));
}

// Eigenvectors with eigenvalue above rank_tol become Kraus operators:
// X_l[i,m] = sqrt(lambda_l) w_l[m*dim_out + i]. Splits are left unset.
inline KrausChannel choi_to_kraus(const ChoiMatrix& c, double rank_tol = kRankTol) {
    EighResult e = eigh(c.mat());
    std::vector<ComplexMatrix> ops;
    for (std::size_t l = 0; l < e.eigenvalues.size(); ++l) {
        const double lam = e.eigenvalues[l];
        if (lam <= rank_tol) continue;
        const double w = std::sqrt(lam);
        ComplexMatrix x(c.dim_out(), c.dim_in());
        for (std::size_t m = 0; m < c.dim_in(); ++m)
            for (std::size_t i = 0; i < c.dim_out(); ++i)
                x(i, m) = w * e.eigenvectors(m * c.dim_out() + i, l);
        ops.push_back(std::move(x));
    }
    if (ops.empty()) throw Error("rank", "Choi matrix has no eigenvalue above rank_tol");
    return KrausChannel(c.dim_in(), c.dim_out(), std::move(ops));
}

// Trace norm between Choi matrices. Works on any two Kraus lists with
// matching dimensions, valid or not.
inline double channel_distance(const KrausChannel& a, const KrausChannel& b) {
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
        throw Error("shape", "channels have different dimensions");
    return trace_norm(choi_matrix(a) - choi_matrix(b));
}

// phi_a (x) phi_b with Kraus set {X_i (x) Y_j}.
inline KrausChannel tensor_channel(const KrausChannel& a, const KrausChannel& b) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(a.kraus().size() * b.kraus().size());
    for (const ComplexMatrix& x : a.kraus())
        for (const ComplexMatrix& y : b.kraus()) ops.push_back(tensor(x, y));
    return KrausChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(ops),
                        Split{a.dim_in(), b.dim_in()}, Split{a.dim_out(), b.dim_out()});
}

// Swap-conjugated tensor: the result sends rho (x) delta to
// psi_b(delta) (x) psi_a(rho). Kraus set {F (X_i (x) Y_j)} where F exchanges
// the output factors.
inline KrausChannel flip_channel(const KrausChannel& psi_a, const KrausChannel& psi_b) {
    const std::size_t da_out = psi_b.dim_out();
    const std::size_t db_out = psi_a.dim_out();
    ComplexMatrix f = swap_operator(da_out, db_out);
    std::vector<ComplexMatrix> ops;
    ops.reserve(psi_a.kraus().size() * psi_b.kraus().size());
    for (const ComplexMatrix& x : psi_a.kraus())
        for (const ComplexMatrix& y : psi_b.kraus()) ops.push_back(f * tensor(x, y));
    return KrausChannel(psi_a.dim_in() * psi_b.dim_in(), da_out * db_out, std::move(ops),
                        Split{psi_a.dim_in(), psi_b.dim_in()}, Split{da_out, db_out});
}

// Map sending every state on H_in to omega0: Kraus set
// {sqrt(lambda_k) |v_k><m|} over eigenpairs of omega0 and basis states m.
// The output split follows omega0's.
inline KrausChannel contractive_channel(const DensityMatrix& omega0, std::size_t dim_in) {
    if (dim_in == 0) throw Error("shape", "contractive_channel requires positive dim_in");
    EighResult e = eigh(omega0.mat());
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
        const double lam = e.eigenvalues[k];
        if (lam <= kNullWeightTol) continue;
        const double w = std::sqrt(lam);
        for (std::size_t m = 0; m < dim_in; ++m) {
            ComplexMatrix x(omega0.dim(), dim_in);
            for (std::size_t i = 0; i < omega0.dim(); ++i) x(i, m) = w * e.eigenvectors(i, k);
            ops.push_back(std::move(x));
        }
    }
    return KrausChannel(dim_in, omega0.dim(), std::move(ops), std::nullopt, omega0.split());
}

// s |-> sigma (x) lambda_b(s). Requires lambda_b: T(H_ab) -> T(H_b) with
// d_a = sigma.dim and d_b = lambda_b.dim_out, so the result is an
// endomorphism of T(H_ab). Kraus set {sqrt(lambda_k) v_k (x) L_j}.
inline KrausChannel fixed_a_channel(const DensityMatrix& sigma, const KrausChannel& lambda_b) {
    const std::size_t d_a = sigma.dim();
    const std::size_t d_b = lambda_b.dim_out();
    if (lambda_b.dim_in() != d_a * d_b)
        throw Error("shape", "lambda_b.dim_in must equal sigma.dim * lambda_b.dim_out");
    EighResult e = eigh(sigma.mat());
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
        const double lam = e.eigenvalues[k];
        if (lam <= kNullWeightTol) continue;
        ComplexMatrix col(d_a, 1);
        for (std::size_t i = 0; i < d_a; ++i) col(i, 0) = std::sqrt(lam) * e.eigenvectors(i, k);
        for (const ComplexMatrix& l : lambda_b.kraus()) ops.push_back(tensor(col, l));
    }
    const Split sp{d_a, d_b};
    return KrausChannel(d_a * d_b, d_a * d_b, std::move(ops),
                        lambda_b.split_in() ? lambda_b.split_in() : std::optional<Split>(sp), sp);
}

// s |-> lambda_a(s) (x) tau, the mirror image of fixed_a_channel.
inline KrausChannel fixed_b_channel(const KrausChannel& lambda_a, const DensityMatrix& tau) {
    const std::size_t d_a = lambda_a.dim_out();
    const std::size_t d_b = tau.dim();
    if (lambda_a.dim_in() != d_a * d_b)
        throw Error("shape", "lambda_a.dim_in must equal lambda_a.dim_out * tau.dim");
    EighResult e = eigh(tau.mat());
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
        const double lam = e.eigenvalues[k];
        if (lam <= kNullWeightTol) continue;
        ComplexMatrix col(d_b, 1);
        for (std::size_t i = 0; i < d_b; ++i) col(i, 0) = std::sqrt(lam) * e.eigenvectors(i, k);
        for (const ComplexMatrix& l : lambda_a.kraus()) ops.push_back(tensor(l, col));
    }
    const Split sp{d_a, d_b};
    return KrausChannel(d_a * d_b, d_a * d_b, std::move(ops),
                        lambda_a.split_in() ? lambda_a.split_in() : std::optional<Split>(sp), sp);
}

// f after g, Kraus set {F_i G_j}.
inline KrausChannel compose(const KrausChannel& f, const KrausChannel& g) {
    if (f.dim_in() != g.dim_out())
        throw Error("shape", "compose requires f.dim_in == g.dim_out");
    std::vector<ComplexMatrix> ops;
    ops.reserve(f.kraus().size() * g.kraus().size());
    for (const ComplexMatrix& x : f.kraus())
        for (const ComplexMatrix& y : g.kraus()) ops.push_back(x * y);
    return KrausChannel(g.dim_in(), f.dim_out(), std::move(ops), g.split_in(), f.split_out());
}

// Tr_a as a channel T(H_ab) -> T(H_b), Kraus set {<m| (x) I_b}.
inline KrausChannel partial_trace_channel_a(std::size_t d_a, std::size_t d_b) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(d_a);
    for (std::size_t m = 0; m < d_a; ++m) {
        ComplexMatrix k(d_b, d_a * d_b);
        for (std::size_t ib = 0; ib < d_b; ++ib) k(ib, m * d_b + ib) = Complex(1.0, 0.0);
        ops.push_back(std::move(k));
    }
    return KrausChannel(d_a * d_b, d_b, std::move(ops), Split{d_a, d_b}, std::nullopt);
}

// Tr_b as a channel T(H_ab) -> T(H_a), Kraus set {I_a (x) <m|}.
inline KrausChannel partial_trace_channel_b(std::size_t d_a, std::size_t d_b) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(d_b);
    for (std::size_t m = 0; m < d_b; ++m) {
        ComplexMatrix k(d_a, d_a * d_b);
        for (std::size_t ia = 0; ia < d_a; ++ia) k(ia, ia * d_b + m) = Complex(1.0, 0.0);
        ops.push_back(std::move(k));
    }
    return KrausChannel(d_a * d_b, d_a, std::move(ops), Split{d_a, d_b}, std::nullopt);
}

}  // namespace prodchan
