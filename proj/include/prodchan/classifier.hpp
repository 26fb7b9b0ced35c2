#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "prodchan/channels.hpp"

namespace prodchan {

// Defaults for classify(): product-distance tolerance, Choi equality
// tolerance, and the number of random product states tried while hunting for
// a witness.
inline constexpr double kClassifyTol = 1e-8;
inline constexpr double kClassifyChoiTol = 1e-8;
inline constexpr int kWitnessSamples = 2000;

// The four canonical shapes a product-preserving channel can take:
// LocalTensor  phi_a (x) phi_b
// FlipTensor   swap-conjugated psi_a (x) psi_b
// FixedA       sigma (x) lambda_b(.)
// FixedB       lambda_a(.) (x) tau
enum class Form { LocalTensor, FlipTensor, FixedA, FixedB };

inline std::string_view form_code(Form f) {
    switch (f) {
        case Form::LocalTensor: return "i";
        case Form::FlipTensor: return "ii";
        case Form::FixedA: return "iii";
        case Form::FixedB: return "iv";
    }
    return "?";
}

struct LocalTensorComponents {
    KrausChannel phi_a, phi_b;
};
struct FlipTensorComponents {
    KrausChannel psi_a, psi_b;
};
struct FixedAComponents {
    DensityMatrix sigma;
    KrausChannel lambda_b;
};
struct FixedBComponents {
    KrausChannel lambda_a;
    DensityMatrix tau;
};
using FormComponents =
    std::variant<LocalTensorComponents, FlipTensorComponents, FixedAComponents, FixedBComponents>;

struct FormFit {
    Form form;
    double residual;  // Choi trace-norm distance between candidate and channel
    FormComponents components;
};

enum class Verdict { Preserving, NotPreserving };

struct Classification {
    Verdict verdict = Verdict::Preserving;
    std::vector<FormFit> forms;             // fits in priority order iii, iv, i, ii
    std::optional<DensityMatrix> witness;   // product input whose image is not product
    double witness_violation = 0.0;         // product_distance of the image of witness
    std::vector<std::string> flags;
};

// Split both endpoints of a classifier input must share.
inline Split classifier_split(const KrausChannel& ch) {
    if (!ch.split_in()) throw Error("no-split", "classification requires split_in");
    if (ch.dim_in() != ch.dim_out())
        throw Error("shape", "classification requires dim_in == dim_out");
    if (ch.split_out() && !(*ch.split_out() == *ch.split_in()))
        throw Error("shape", "classification requires split_out == split_in");
    return *ch.split_in();
}

// Copy of ch with split_out filled in from split_in when absent, so outputs
// of apply() always carry the bipartite split.
inline KrausChannel with_effective_splits(const KrausChannel& ch) {
    const Split sp = classifier_split(ch);
    return ch.with_splits(sp, sp);
}

// Channel outputs on every probe pair rho_i (x) delta_j, row-major over
// (i, j) with the probe_basis orderings.
struct ProbeTable {
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    std::vector<DensityMatrix> outputs;
    const DensityMatrix& at(std::size_t i, std::size_t j) const { return outputs[i * count_b + j]; }
};

inline ProbeTable probe_outputs(const KrausChannel& raw_ch) {
    const KrausChannel ch = with_effective_splits(raw_ch);
    const Split sp = *ch.split_in();
    const std::vector<DensityMatrix> pa = probe_basis(sp.d_a);
    const std::vector<DensityMatrix> pb = probe_basis(sp.d_b);
    ProbeTable table;
    table.count_a = pa.size();
    table.count_b = pb.size();
    table.outputs.reserve(pa.size() * pb.size());
    for (const DensityMatrix& ra : pa)
        for (const DensityMatrix& rb : pb)
            table.outputs.push_back(apply(ch, DensityMatrix(tensor(ra.mat(), rb.mat()), sp)));
    return table;
}

// Reconstruct the channel of a linear map from its action on probe_basis
// states. action receives each probe as a matrix and must return the output
// matrix; the linear extension to all matrix units is assembled into a Choi
// matrix and converted to Kraus form. Throws if the extension is not a
// channel within tolerance.
inline KrausChannel channel_from_state_action(
    std::size_t d_in, std::size_t d_out,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& action, double rank_tol = kRankTol) {
    const std::vector<DensityMatrix> probes = probe_basis(d_in);
    std::vector<ComplexMatrix> outs;
    outs.reserve(probes.size());
    for (const DensityMatrix& p : probes) outs.push_back(action(p.mat()));

    const std::size_t npairs = d_in * (d_in - 1) / 2;
    const auto pair_index = [d_in](std::size_t m, std::size_t n) {
        return m * d_in - m * (m + 1) / 2 + (n - m - 1);
    };

    // L on the matrix unit E_mn, recovered by linearity from the probes.
    const auto unit_image = [&](std::size_t m, std::size_t n) -> ComplexMatrix {
        if (m == n) return outs[m];
        const bool flip = m > n;
        const std::size_t lo = flip ? n : m;
        const std::size_t hi = flip ? m : n;
        const ComplexMatrix& lr = outs[d_in + pair_index(lo, hi)];
        const ComplexMatrix& lq = outs[d_in + npairs + pair_index(lo, hi)];
        ComplexMatrix u = 2.0 * lr - outs[lo] - outs[hi];
        ComplexMatrix iw = Complex(0.0, 1.0) * (2.0 * lq - outs[lo] - outs[hi]);
        return flip ? (u - iw) * 0.5 : (u + iw) * 0.5;
    };

    ComplexMatrix c(d_in * d_out, d_in * d_out);
    for (std::size_t m = 0; m < d_in; ++m)
        for (std::size_t n = 0; n < d_in; ++n) {
            const ComplexMatrix img = unit_image(m, n);
            for (std::size_t i = 0; i < d_out; ++i)
                for (std::size_t j = 0; j < d_out; ++j)
                    c(m * d_out + i, n * d_out + j) = img(i, j);
        }
    return choi_to_kraus(ChoiMatrix(d_in, d_out, std::move(c)), rank_tol);
}

namespace detail {

inline DensityMatrix maximally_mixed(std::size_t d) {
    return DensityMatrix(ComplexMatrix::identity(d) * (1.0 / static_cast<double>(d)));
}

struct WitnessCandidate {
    DensityMatrix state;
    double violation;
};

// Track the argmax; ties keep the earliest candidate.
class WitnessTracker {
public:
    void offer(const DensityMatrix& s, double violation) {
        if (!best_ || violation > best_->violation) best_ = WitnessCandidate{s, violation};
    }
    const std::optional<WitnessCandidate>& best() const { return best_; }

private:
    std::optional<WitnessCandidate> best_;
};

}  // namespace detail

// Decide whether ch maps every product state to a product state and, if so,
// recover the canonical decompositions. The screen evaluates ch on all probe
// products; if a violation above tol shows up the channel is not preserving
// and the offending probe is the witness. Otherwise all four candidate
// decompositions are reconstructed from the channel's action around the
// maximally mixed references and accepted when their Choi matrices match the
// channel within tol_choi. If none fits, a witness is hunted among factor
// mixtures of the probes and seeded random product states.
inline Classification classify(const KrausChannel& raw_ch, double tol = kClassifyTol,
                               double tol_choi = kClassifyChoiTol,
                               int witness_samples = kWitnessSamples, std::uint64_t seed = 0) {
    // Structural split errors take precedence over numeric validation.
    const KrausChannel ch = with_effective_splits(raw_ch);
    const ValidationReport vr = validate(ch);
    if (!vr.accepted()) throw Error("not-cptp", "classify requires a valid channel");
    const Split sp = *ch.split_in();
    const std::size_t d_a = sp.d_a;
    const std::size_t d_b = sp.d_b;

    const std::vector<DensityMatrix> pa = probe_basis(d_a);
    const std::vector<DensityMatrix> pb = probe_basis(d_b);

    Classification result;

    // 1. Probe screen.
    detail::WitnessTracker tracker;
    for (std::size_t i = 0; i < pa.size(); ++i)
        for (std::size_t j = 0; j < pb.size(); ++j) {
            DensityMatrix input(tensor(pa[i].mat(), pb[j].mat()), sp);
            const double v = product_distance(apply(ch, input));
            tracker.offer(input, v);
        }
    if (tracker.best()->violation > tol) {
        result.verdict = Verdict::NotPreserving;
        result.witness = tracker.best()->state;
        result.witness_violation = tracker.best()->violation;
        return result;
    }

    // 2. Candidate reconstruction around the maximally mixed references.
    const DensityMatrix rho_bar = detail::maximally_mixed(d_a);
    const DensityMatrix delta_bar = detail::maximally_mixed(d_b);

    const auto joint = [&](const ComplexMatrix& left, const ComplexMatrix& right) {
        return kraus_apply(ch, tensor(left, right));
    };

    const auto try_fit = [&](const std::function<FormFit()>& build) {
        try {
            FormFit fit = build();
            if (fit.residual <= tol_choi) result.forms.push_back(std::move(fit));
        } catch (const Error&) {
            // Reconstruction failed to produce a channel: this form cannot fit.
        }
    };

    try_fit([&] {
        DensityMatrix sigma(partial_trace_b(joint(rho_bar.mat(), delta_bar.mat()), d_a, d_b));
        KrausChannel lambda_b = compose(partial_trace_channel_a(d_a, d_b), ch);
        KrausChannel candidate = fixed_a_channel(sigma, lambda_b);
        if (!validate(lambda_b).accepted()) throw Error("not-cptp", "component rejected");
        return FormFit{Form::FixedA, channel_distance(candidate, ch),
                       FixedAComponents{std::move(sigma), std::move(lambda_b)}};
    });

    try_fit([&] {
        DensityMatrix tau(partial_trace_a(joint(rho_bar.mat(), delta_bar.mat()), d_a, d_b));
        KrausChannel lambda_a = compose(partial_trace_channel_b(d_a, d_b), ch);
        KrausChannel candidate = fixed_b_channel(lambda_a, tau);
        if (!validate(lambda_a).accepted()) throw Error("not-cptp", "component rejected");
        return FormFit{Form::FixedB, channel_distance(candidate, ch),
                       FixedBComponents{std::move(lambda_a), std::move(tau)}};
    });

    try_fit([&] {
        KrausChannel phi_a = channel_from_state_action(d_a, d_a, [&](const ComplexMatrix& rho) {
            return partial_trace_b(joint(rho, delta_bar.mat()), d_a, d_b);
        });
        KrausChannel phi_b = channel_from_state_action(d_b, d_b, [&](const ComplexMatrix& delta) {
            return partial_trace_a(joint(rho_bar.mat(), delta), d_a, d_b);
        });
        if (!validate(phi_a).accepted() || !validate(phi_b).accepted())
            throw Error("not-cptp", "component rejected");
        KrausChannel candidate = tensor_channel(phi_a, phi_b);
        return FormFit{Form::LocalTensor, channel_distance(candidate, ch),
                       LocalTensorComponents{std::move(phi_a), std::move(phi_b)}};
    });

    try_fit([&] {
        KrausChannel psi_a = channel_from_state_action(d_a, d_b, [&](const ComplexMatrix& rho) {
            return partial_trace_a(joint(rho, delta_bar.mat()), d_a, d_b);
        });
        KrausChannel psi_b = channel_from_state_action(d_b, d_a, [&](const ComplexMatrix& delta) {
            return partial_trace_b(joint(rho_bar.mat(), delta), d_a, d_b);
        });
        if (!validate(psi_a).accepted() || !validate(psi_b).accepted())
            throw Error("not-cptp", "component rejected");
        KrausChannel candidate = flip_channel(psi_a, psi_b);
        return FormFit{Form::FlipTensor, channel_distance(candidate, ch),
                       FlipTensorComponents{std::move(psi_a), std::move(psi_b)}};
    });

    if (!result.forms.empty()) {
        result.verdict = Verdict::Preserving;
        return result;
    }

    // 3. No form fits: hunt for a witness. Factor-wise mixtures of the probe
    // states first (these cover the two-probe interference structure), then
    // random product states.
    result.verdict = Verdict::NotPreserving;
    for (std::size_t i1 = 0; i1 < pa.size(); ++i1)
        for (std::size_t i2 = i1; i2 < pa.size(); ++i2)
            for (std::size_t j1 = 0; j1 < pb.size(); ++j1)
                for (std::size_t j2 = j1; j2 < pb.size(); ++j2) {
                    if (i1 == i2 && j1 == j2) continue;  // screened already
                    ComplexMatrix ma = (pa[i1].mat() + pa[i2].mat()) * 0.5;
                    ComplexMatrix mb = (pb[j1].mat() + pb[j2].mat()) * 0.5;
                    DensityMatrix input(tensor(ma, mb), sp);
                    tracker.offer(input, product_distance(apply(ch, input)));
                }

    std::mt19937_64 rng(seed);
    for (int k = 0; k < witness_samples; ++k) {
        const int kind = k % 4;
        const auto factor = [&](std::size_t d, bool mixed) {
            const std::size_t rank = mixed ? std::min<std::size_t>(2, d) : 1;
            return random_density(d, rank, rng());
        };
        DensityMatrix fa = factor(d_a, kind == 1 || kind == 2);
        DensityMatrix fb = factor(d_b, kind == 1 || kind == 3);
        DensityMatrix input(tensor(fa.mat(), fb.mat()), sp);
        tracker.offer(input, product_distance(apply(ch, input)));
    }

    result.witness = tracker.best()->state;
    result.witness_violation = tracker.best()->violation;
    if (result.witness_violation <= tol) result.flags.push_back("witness-below-tol");
    return result;
}

struct PreservationReport {
    double max_violation = 0.0;
    std::optional<DensityMatrix> argmax;  // input achieving max_violation
    int violations = 0;                   // samples with violation above tol
};

// Monte Carlo check that ch maps product states to product states: n seeded
// random product inputs cycling through pure (x) pure, mixed (x) mixed and
// mixed (x) pure.
inline PreservationReport verify_preservation(const KrausChannel& raw_ch, int n, double tol,
                                              std::uint64_t seed) {
    if (n < 1) throw Error("param", "verify_preservation requires n >= 1");
    const KrausChannel ch = with_effective_splits(raw_ch);
    const Split sp = *ch.split_in();
    std::mt19937_64 rng(seed);
    PreservationReport rep;
    const auto mixed_rank = [&](std::size_t d) {
        return 1 + static_cast<std::size_t>(rng() % d);
    };
    for (int k = 0; k < n; ++k) {
        const int kind = k % 3;
        DensityMatrix s = [&]() -> DensityMatrix {
            switch (kind) {
                case 0: return random_pure_product(sp.d_a, sp.d_b, rng());
                case 1: {
                    const std::size_t ra = mixed_rank(sp.d_a);
                    const std::uint64_t sa = rng();
                    const std::size_t rb = mixed_rank(sp.d_b);
                    const std::uint64_t sb = rng();
                    DensityMatrix fa = random_density(sp.d_a, ra, sa);
                    DensityMatrix fb = random_density(sp.d_b, rb, sb);
                    return DensityMatrix(tensor(fa.mat(), fb.mat()), sp);
                }
                default: {
                    const std::size_t ra = mixed_rank(sp.d_a);
                    const std::uint64_t sa = rng();
                    const std::uint64_t sb = rng();
                    DensityMatrix fa = random_density(sp.d_a, ra, sa);
                    DensityMatrix fb = random_density(sp.d_b, 1, sb);
                    return DensityMatrix(tensor(fa.mat(), fb.mat()), sp);
                }
            }
        }();
        const double v = product_distance(apply(ch, s));
        if (v > tol) ++rep.violations;
        if (!rep.argmax || v > rep.max_violation) {
            rep.max_violation = v;
            rep.argmax = s;
        }
    }
    return rep;
}

// Monte Carlo check over arbitrary (not necessarily product) inputs; relevant
// for channels that should map the whole state space into product states.
inline PreservationReport verify_collapse(const KrausChannel& raw_ch, int n, std::uint64_t seed) {
    if (n < 1) throw Error("param", "verify_collapse requires n >= 1");
    const KrausChannel ch = with_effective_splits(raw_ch);
    const Split sp = *ch.split_in();
    const std::size_t dim = sp.d_a * sp.d_b;
    std::mt19937_64 rng(seed);
    PreservationReport rep;
    for (int k = 0; k < n; ++k) {
        const std::size_t rank = 1 + static_cast<std::size_t>(rng() % dim);
        DensityMatrix s = random_density(dim, rank, rng()).with_split(sp.d_a, sp.d_b);
        const double v = product_distance(apply(ch, s));
        if (v > kClassifyTol) ++rep.violations;
        if (!rep.argmax || v > rep.max_violation) {
            rep.max_violation = v;
            rep.argmax = s;
        }
    }
    return rep;
}

}  // namespace prodchan
