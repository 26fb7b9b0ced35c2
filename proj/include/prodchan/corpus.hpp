#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "prodchan/classifier.hpp"

namespace prodchan {

// Attempts before giving up on confirming a not_preserving label.
inline constexpr int kLabelRetries = 8;

struct CorpusEntry {
    std::string label;  // "i", "ii", "iii", "iv" or "not_preserving"
    KrausChannel channel;
    std::uint64_t seed = 0;
    std::string notes;
};

// Haar-style random channel: a Gaussian (dim_out*kraus_count) x dim_in matrix
// is orthonormalized into an isometry whose dim_out-row blocks are the Kraus
// operators. Requires dim_out*kraus_count >= dim_in.
inline KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out,
                                   std::size_t kraus_count, std::uint64_t seed) {
    if (dim_in == 0 || dim_out == 0 || kraus_count == 0)
        throw Error("shape", "random_channel requires positive dimensions");
    const std::size_t rows = dim_out * kraus_count;
    if (rows < dim_in)
        throw Error("shape", "dim_out*kraus_count must be at least dim_in");
    std::mt19937_64 rng(seed);
    ComplexMatrix g = gaussian_matrix(rows, dim_in, rng);
    Eigen::MatrixXcd gm(g.raw());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gm);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(
                                                 static_cast<Eigen::Index>(rows),
                                                 static_cast<Eigen::Index>(dim_in));
    Eigen::MatrixXcd r = qr.matrixQR().topRows(static_cast<Eigen::Index>(dim_in))
                             .triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(dim_in); ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(kraus_count);
    for (std::size_t k = 0; k < kraus_count; ++k) {
        ComplexMatrix x(dim_out, dim_in);
        for (std::size_t i = 0; i < dim_out; ++i)
            for (std::size_t j = 0; j < dim_in; ++j)
                x(i, j) = q(static_cast<Eigen::Index>(k * dim_out + i), static_cast<Eigen::Index>(j));
        ops.push_back(std::move(x));
    }
    return KrausChannel(dim_in, dim_out, std::move(ops));
}

// Standard single-system noise channels. "depolarizing" works in any
// dimension via the shift/clock operators; "dephasing" and
// "amplitude_damping" are qubit-only.
inline KrausChannel noise_zoo(const std::string& name, std::size_t d, double param) {
    if (d == 0) throw Error("param", "noise_zoo requires positive dimension");
    if (name == "depolarizing") {
        if (param < 0.0 || param > 1.0) throw Error("param", "depolarizing strength must be in [0,1]");
        const double dd = static_cast<double>(d * d);
        ComplexMatrix shift(d, d);
        for (std::size_t m = 0; m < d; ++m) shift((m + 1) % d, m) = Complex(1.0, 0.0);
        ComplexMatrix clock(d, d);
        for (std::size_t m = 0; m < d; ++m) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(d);
            clock(m, m) = Complex(std::cos(ang), std::sin(ang));
        }
        std::vector<ComplexMatrix> ops;
        ops.push_back(ComplexMatrix::identity(d) * std::sqrt(1.0 - param + param / dd));
        ComplexMatrix xp = ComplexMatrix::identity(d);
        for (std::size_t j = 0; j < d; ++j) {
            ComplexMatrix w = xp;
            for (std::size_t k = 0; k < d; ++k) {
                if (j != 0 || k != 0) ops.push_back(w * std::sqrt(param / dd));
                w = w * clock;
            }
            xp = shift * xp;
        }
        return KrausChannel(d, d, std::move(ops));
    }
    if (name == "dephasing") {
        if (d != 2) throw Error("param", "dephasing is defined for qubits only");
        if (param < 0.0 || param > 1.0) throw Error("param", "dephasing strength must be in [0,1]");
        ComplexMatrix z(2, 2);
        z(0, 0) = Complex(1.0, 0.0);
        z(1, 1) = Complex(-1.0, 0.0);
        std::vector<ComplexMatrix> ops;
        ops.push_back(ComplexMatrix::identity(2) * std::sqrt(1.0 - param / 2.0));
        ops.push_back(z * std::sqrt(param / 2.0));
        return KrausChannel(2, 2, std::move(ops));
    }
    if (name == "amplitude_damping") {
        if (d != 2) throw Error("param", "amplitude_damping is defined for qubits only");
        if (param < 0.0 || param > 1.0) throw Error("param", "damping strength must be in [0,1]");
        ComplexMatrix k0(2, 2);
        k0(0, 0) = Complex(1.0, 0.0);
        k0(1, 1) = Complex(std::sqrt(1.0 - param), 0.0);
        ComplexMatrix k1(2, 2);
        k1(0, 1) = Complex(std::sqrt(param), 0.0);
        return KrausChannel(2, 2, {std::move(k0), std::move(k1)});
    }
    throw Error("param", "unknown noise channel: " + name);
}

// Labeled test channel on H_a (x) H_b. Forms "i".."iv" are built from the
// corresponding constructor and are preserving by construction;
// "unitary_entangling" and "random" are labeled not_preserving only after a
// Monte Carlo sweep confirms a product-distance violation, retrying with
// fresh draws up to kLabelRetries times.
inline CorpusEntry generate_entry(const std::string& form, std::size_t d_a, std::size_t d_b,
                                  std::uint64_t seed) {
    if (d_a == 0 || d_b == 0) throw Error("param", "generate_entry requires positive dimensions");
    const std::size_t dim = d_a * d_b;
    const Split sp{d_a, d_b};
    std::mt19937_64 rng(seed);
    // At least ceil(din/dout) Kraus operators are needed for an isometry.
    const auto kraus_count = [&rng](std::size_t din, std::size_t dout) {
        const std::size_t kmin = (din + dout - 1) / dout;
        return kmin + static_cast<std::size_t>(rng() % 3);
    };

    // Draws are sequenced through named locals so the stream order is fixed.
    const auto next_seed = [&rng] { return rng(); };

    if (form == "i") {
        const std::size_t ka = kraus_count(d_a, d_a);
        const std::uint64_t sa = next_seed();
        const std::size_t kb = kraus_count(d_b, d_b);
        const std::uint64_t sb = next_seed();
        KrausChannel phi_a = random_channel(d_a, d_a, ka, sa);
        KrausChannel phi_b = random_channel(d_b, d_b, kb, sb);
        return CorpusEntry{"i", tensor_channel(phi_a, phi_b), seed,
                           "tensor of independent local channels"};
    }
    if (form == "ii") {
        const std::size_t ka = kraus_count(d_a, d_b);
        const std::uint64_t sa = next_seed();
        const std::size_t kb = kraus_count(d_b, d_a);
        const std::uint64_t sb = next_seed();
        KrausChannel psi_a = random_channel(d_a, d_b, ka, sa);
        KrausChannel psi_b = random_channel(d_b, d_a, kb, sb);
        return CorpusEntry{"ii", flip_channel(psi_a, psi_b), seed,
                           "swap-conjugated tensor of cross channels"};
    }
    if (form == "iii") {
        const std::size_t rank = 1 + static_cast<std::size_t>(rng() % d_a);
        const std::uint64_t ss = next_seed();
        const std::size_t kl = kraus_count(dim, d_b);
        const std::uint64_t sl = next_seed();
        DensityMatrix sigma = random_density(d_a, rank, ss);
        KrausChannel lambda_b = random_channel(dim, d_b, kl, sl);
        return CorpusEntry{"iii",
                           fixed_a_channel(sigma, lambda_b).with_splits(sp, sp), seed,
                           "fixed state on A tensored with a collapse map"};
    }
    if (form == "iv") {
        const std::size_t kl = kraus_count(dim, d_a);
        const std::uint64_t sl = next_seed();
        const std::size_t rank = 1 + static_cast<std::size_t>(rng() % d_b);
        const std::uint64_t st = next_seed();
        KrausChannel lambda_a = random_channel(dim, d_a, kl, sl);
        DensityMatrix tau = random_density(d_b, rank, st);
        return CorpusEntry{"iv",
                           fixed_b_channel(lambda_a, tau).with_splits(sp, sp), seed,
                           "collapse map tensored with a fixed state on B"};
    }
    if (form == "unitary_entangling" || form == "random") {
        const bool unitary = form == "unitary_entangling";
        for (int attempt = 0; attempt < kLabelRetries; ++attempt) {
            const std::size_t kc = unitary ? 1 : 2 + static_cast<std::size_t>(rng() % 2);
            const std::uint64_t sc = next_seed();
            const std::uint64_t sv = next_seed();
            KrausChannel cand = random_channel(dim, dim, kc, sc).with_splits(sp, sp);
            PreservationReport rep = verify_preservation(cand, 500, kClassifyTol, sv);
            if (rep.max_violation > kClassifyTol)
                return CorpusEntry{"not_preserving", cand, seed,
                                   unitary ? "random joint unitary" : "random joint channel"};
        }
        throw Error("label-unconfirmed",
                    "could not confirm a product-distance violation for form " + form);
    }
    throw Error("param", "unknown form: " + form);
}

// Outcome of re-deriving one corpus entry's label from scratch.
struct EntryAudit {
    std::string verdict;    // "preserving" or "not_preserving"
    double residual = 0.0;  // labeled-form residual, or the witness violation
    bool pass = false;
};

// Checks a labeled entry against the classifier and the Monte Carlo oracle.
// Form labels pass when the verdict is Preserving, the labeled form is among
// the fits with residual <= 1e-8, and an independent sweep of oracle_samples
// random products stays within 1e-7. A not_preserving label passes when the
// verdict agrees and the witness's recorded violation is reproduced exactly
// by pushing the witness through the channel again.
inline EntryAudit audit_entry(const CorpusEntry& e, int oracle_samples = 1000) {
    Classification c = classify(e.channel, kClassifyTol, kClassifyChoiTol, kWitnessSamples, e.seed);
    EntryAudit a;
    a.verdict = c.verdict == Verdict::Preserving ? "preserving" : "not_preserving";
    if (e.label == "not_preserving") {
        if (c.verdict != Verdict::NotPreserving || !c.witness) return a;
        a.residual = c.witness_violation;
        const double replay =
            product_distance(apply(with_effective_splits(e.channel), *c.witness));
        a.pass = replay == c.witness_violation && c.witness_violation > kClassifyTol;
        return a;
    }
    if (c.verdict != Verdict::Preserving) return a;
    double residual = -1.0;
    for (const FormFit& f : c.forms)
        if (form_code(f.form) == e.label) {
            residual = f.residual;
            break;
        }
    if (residual < 0.0) return a;
    a.residual = residual;
    const std::uint64_t oracle_seed = e.seed + 1;
    PreservationReport rep = verify_preservation(e.channel, oracle_samples, kClassifyTol, oracle_seed);
    a.pass = residual <= 1e-8 && rep.max_violation <= 1e-7;
    return a;
}

}  // namespace prodchan
