#include <catch2/catch_amalgamated.hpp>

#include "prodchan/channels.hpp"
#include "prodchan/corpus.hpp"
#include "test_util.hpp"

using namespace prodchan;

namespace {

// Choi matrix assembled the slow way: sum over matrix units of
// |m><n| (x) ch(|m><n|).
ComplexMatrix choi_oracle(const KrausChannel& ch) {
    const std::size_t din = ch.dim_in();
    ComplexMatrix c(din * ch.dim_out(), din * ch.dim_out());
    for (std::size_t m = 0; m < din; ++m)
        for (std::size_t n = 0; n < din; ++n) {
            ComplexMatrix unit(din, din);
            unit(m, n) = Complex(1.0, 0.0);
            c += tensor(unit, kraus_apply(ch, unit));
        }
    return c;
}

KrausChannel scaled_identity(double s, std::size_t d) {
    return KrausChannel(d, d, {ComplexMatrix::identity(d) * s});
}

}  // namespace

TEST_CASE("kraus channel shape checks") {
    REQUIRE(error_code_of([] { KrausChannel(2, 2, {}); }) == "shape");
    REQUIRE(error_code_of([] { KrausChannel(2, 3, {ComplexMatrix(2, 3)}); }) == "shape");
    REQUIRE(error_code_of([] {
                KrausChannel(4, 4, {ComplexMatrix::identity(4)}, Split{3, 2});
            }) == "shape");
    REQUIRE(error_code_of([] {
                KrausChannel(4, 6, {ComplexMatrix(6, 4)}, Split{2, 2}, Split{2, 2});
            }) == "shape");
    REQUIRE_NOTHROW(KrausChannel(4, 6, {ComplexMatrix(6, 4)}, Split{2, 2}, Split{2, 3}));
}

TEST_CASE("identity channel leaves states alone") {
    DensityMatrix s = random_density(3, 2, 5);
    DensityMatrix out = apply(identity_channel(3), s);
    REQUIRE(trace_norm(out.mat() - s.mat()) < 1e-14);
    REQUIRE(error_code_of([&] { apply(identity_channel(2), s); }) == "shape");
}

TEST_CASE("apply propagates the output split") {
    KrausChannel ch = identity_channel(4).with_splits(Split{2, 2}, Split{2, 2});
    DensityMatrix s = random_density(4, 4, 6);
    DensityMatrix out = apply(ch, s);
    REQUIRE(out.split().has_value());
    REQUIRE(out.split()->d_a == 2);
}

TEST_CASE("validate reports defects for a scaled identity") {
    // sum X^dag X = 0.81 I, so the trace-norm defect is 2 * 0.19.
    ValidationReport rep = validate(scaled_identity(0.9, 2));
    REQUIRE(rep.tp_defect == Catch::Approx(0.38).margin(1e-12));
    REQUIRE(rep.cp_defect == Catch::Approx(0.0).margin(1e-12));
    REQUIRE_FALSE(rep.accepted());
}

TEST_CASE("validate accepts genuine channels") {
    for (std::uint64_t seed : {1, 2, 3}) {
        KrausChannel ch = random_channel(3, 4, 2, seed);
        ValidationReport rep = validate(ch);
        REQUIRE(rep.tp_defect < 1e-12);
        REQUIRE(rep.cp_defect < 1e-12);
        REQUIRE(rep.accepted());
    }
}

TEST_CASE("choi matrix matches the matrix-unit oracle") {
    for (std::uint64_t seed : {11, 12}) {
        KrausChannel ch = random_channel(3, 2, 2, seed);
        REQUIRE((choi_matrix(ch) - choi_oracle(ch)).max_abs() < 1e-13);
    }
}

TEST_CASE("choi of the qubit identity is twice the Bell projector") {
    ComplexMatrix c = choi_matrix(identity_channel(2));
    REQUIRE((c - bell_mat() * 2.0).max_abs() < 1e-15);
}

TEST_CASE("choi of a contractive channel is I (x) omega0") {
    DensityMatrix omega = random_density(3, 2, 21);
    KrausChannel ch = contractive_channel(omega, 2);
    ComplexMatrix expect = tensor(ComplexMatrix::identity(2), omega.mat());
    REQUIRE((choi_matrix(ch) - expect).max_abs() < 1e-12);
}

TEST_CASE("choi marginal over the output is the identity for channels") {
    KrausChannel ch = random_channel(4, 3, 2, 31);
    ComplexMatrix pt = partial_trace_b(choi_matrix(ch), 4, 3);
    REQUIRE((pt - ComplexMatrix::identity(4)).max_abs() < 1e-12);
}

TEST_CASE("ChoiMatrix construction enforces channel invariants") {
    ComplexMatrix nh(4, 4);
    nh(0, 1) = Complex(1.0, 0.0);
    REQUIRE(error_code_of([&] { ChoiMatrix(2, 2, nh); }) == "not-hermitian");

    ComplexMatrix ncp(4, 4);
    ncp(0, 0) = Complex(1.1, 0.0);
    ncp(1, 1) = Complex(-0.1, 0.0);
    ncp(2, 2) = Complex(0.55, 0.0);
    ncp(3, 3) = Complex(0.45, 0.0);
    REQUIRE(error_code_of([&] { ChoiMatrix(2, 2, ncp); }) == "not-cp");

    REQUIRE(error_code_of([&] { ChoiMatrix(2, 2, ComplexMatrix::identity(4)); }) == "not-tp");
    REQUIRE(error_code_of([&] { ChoiMatrix(2, 2, ComplexMatrix::identity(6)); }) == "shape");

    REQUIRE_NOTHROW(ChoiMatrix(2, 2, ComplexMatrix::identity(4) * 0.5));
}

TEST_CASE("choi round trip reproduces the channel") {
    for (auto [din, dout, k] :
         {std::tuple<std::size_t, std::size_t, std::size_t>{2, 2, 1}, {2, 3, 2}, {4, 2, 3}, {3, 3, 4}}) {
        KrausChannel ch = random_channel(din, dout, k, 100 + din * 10 + dout + k);
        KrausChannel rebuilt = choi_to_kraus(choi(ch));
        REQUIRE(channel_distance(ch, rebuilt) < 1e-10);
        REQUIRE(validate(rebuilt).accepted());
    }
}

TEST_CASE("choi_to_kraus keeps one operator per significant eigenvalue") {
    KrausChannel ch = random_channel(2, 2, 2, 41);
    KrausChannel rebuilt = choi_to_kraus(choi(ch));
    REQUIRE(rebuilt.kraus().size() == 2);
}

TEST_CASE("tensor channel acts factor-wise") {
    KrausChannel f = random_channel(2, 2, 2, 51);
    KrausChannel g = random_channel(3, 3, 2, 52);
    KrausChannel t = tensor_channel(f, g);
    REQUIRE(t.split_in()->d_a == 2);
    REQUIRE(t.split_out()->d_b == 3);
    DensityMatrix ra = random_density(2, 2, 53);
    DensityMatrix rb = random_density(3, 3, 54);
    ComplexMatrix lhs = kraus_apply(t, tensor(ra.mat(), rb.mat()));
    ComplexMatrix rhs = tensor(kraus_apply(f, ra.mat()), kraus_apply(g, rb.mat()));
    REQUIRE((lhs - rhs).max_abs() < 1e-12);
    REQUIRE(validate(t).accepted());
}

TEST_CASE("flip channel swaps the processed factors") {
    // psi_a: 2 -> 3 and psi_b: 3 -> 2, so the composite is an endomorphism
    // of the (2, 3) system with output split (2, 3).
    KrausChannel psi_a = random_channel(2, 3, 2, 61);
    KrausChannel psi_b = random_channel(3, 2, 2, 62);
    KrausChannel fl = flip_channel(psi_a, psi_b);
    REQUIRE(fl.dim_in() == 6);
    REQUIRE(fl.dim_out() == 6);
    REQUIRE(fl.split_out()->d_a == 2);
    REQUIRE(fl.split_out()->d_b == 3);
    DensityMatrix ra = random_density(2, 2, 63);
    DensityMatrix rb = random_density(3, 3, 64);
    ComplexMatrix lhs = kraus_apply(fl, tensor(ra.mat(), rb.mat()));
    ComplexMatrix rhs = tensor(kraus_apply(psi_b, rb.mat()), kraus_apply(psi_a, ra.mat()));
    REQUIRE((lhs - rhs).max_abs() < 1e-12);
    REQUIRE(validate(fl).accepted());
}

TEST_CASE("flip of identities composed with itself is the identity") {
    KrausChannel sw = flip_channel(identity_channel(2), identity_channel(2));
    REQUIRE(channel_distance(compose(sw, sw), identity_channel(4)) < 1e-12);
}

TEST_CASE("contractive channel sends everything to omega0") {
    DensityMatrix omega = random_density(3, 3, 71).with_split(3, 1);
    KrausChannel ch = contractive_channel(omega, 4);
    REQUIRE(validate(ch).accepted());
    REQUIRE(ch.split_out().has_value());
    for (std::uint64_t seed : {72, 73}) {
        DensityMatrix s = random_density(4, 2, seed);
        REQUIRE(trace_norm(kraus_apply(ch, s.mat()) - omega.mat()) < 1e-12);
    }
}

TEST_CASE("fixed_a channel tensors a constant state with a collapse map") {
    DensityMatrix sigma = random_density(2, 2, 81);
    KrausChannel lambda_b = partial_trace_channel_a(2, 3);
    KrausChannel ch = fixed_a_channel(sigma, lambda_b);
    REQUIRE(validate(ch).accepted());
    REQUIRE(ch.split_out()->d_a == 2);
    DensityMatrix ra = random_density(2, 2, 82);
    DensityMatrix rb = random_density(3, 3, 83);
    ComplexMatrix in = tensor(ra.mat(), rb.mat());
    // With lambda_b = Tr_a the image of rho (x) delta is sigma (x) delta.
    REQUIRE((kraus_apply(ch, in) - tensor(sigma.mat(), rb.mat())).max_abs() < 1e-12);
    REQUIRE(error_code_of([&] {
                fixed_a_channel(sigma, partial_trace_channel_a(3, 3));
            }) == "shape");
}

TEST_CASE("fixed_b channel mirrors fixed_a") {
    DensityMatrix tau = random_density(3, 1, 91);
    KrausChannel lambda_a = partial_trace_channel_b(2, 3);
    KrausChannel ch = fixed_b_channel(lambda_a, tau);
    REQUIRE(validate(ch).accepted());
    DensityMatrix ra = random_density(2, 2, 92);
    DensityMatrix rb = random_density(3, 3, 93);
    ComplexMatrix in = tensor(ra.mat(), rb.mat());
    REQUIRE((kraus_apply(ch, in) - tensor(ra.mat(), tau.mat())).max_abs() < 1e-12);
}

TEST_CASE("fixed channels accept an arbitrary collapse map") {
    // Any channel T(H_ab) -> T(H_b) works as the second factor.
    DensityMatrix sigma = random_density(2, 1, 94);
    KrausChannel lambda_b = random_channel(6, 3, 2, 95);
    KrausChannel ch = fixed_a_channel(sigma, lambda_b);
    REQUIRE(validate(ch).accepted());
    DensityMatrix s = random_density(6, 3, 96);
    ComplexMatrix expect = tensor(sigma.mat(), kraus_apply(lambda_b, s.mat()));
    REQUIRE((kraus_apply(ch, s.mat()) - expect).max_abs() < 1e-12);
}

TEST_CASE("compose chains actions") {
    KrausChannel f = random_channel(3, 2, 2, 101);
    KrausChannel g = random_channel(2, 3, 2, 102);
    KrausChannel fg = compose(f, g);
    REQUIRE(fg.dim_in() == 2);
    REQUIRE(fg.dim_out() == 2);
    DensityMatrix s = random_density(2, 2, 103);
    ComplexMatrix lhs = kraus_apply(fg, s.mat());
    ComplexMatrix rhs = kraus_apply(f, kraus_apply(g, s.mat()));
    REQUIRE((lhs - rhs).max_abs() < 1e-13);
    REQUIRE(error_code_of([&] { compose(g, g); }) == "shape");
}

TEST_CASE("partial trace channels reproduce the partial traces") {
    DensityMatrix s = random_density(6, 4, 111).with_split(2, 3);
    KrausChannel tra = partial_trace_channel_a(2, 3);
    KrausChannel trb = partial_trace_channel_b(2, 3);
    REQUIRE(validate(tra).accepted());
    REQUIRE(validate(trb).accepted());
    REQUIRE((kraus_apply(tra, s.mat()) - partial_trace_a(s.mat(), 2, 3)).max_abs() < 1e-13);
    REQUIRE((kraus_apply(trb, s.mat()) - partial_trace_b(s.mat(), 2, 3)).max_abs() < 1e-13);
}

TEST_CASE("channel distance between identity and depolarizing noise") {
    // The Choi difference is p (2 bell - I/2) with eigenvalues 3p/2 and
    // -p/2 three times, so the distance is exactly 3p.
    for (double p : {0.0, 0.25, 0.5, 1.0}) {
        KrausChannel dep = noise_zoo("depolarizing", 2, p);
        REQUIRE(channel_distance(identity_channel(2), dep) ==
                Catch::Approx(3.0 * p).margin(1e-11));
    }
}

TEST_CASE("channel distance requires matching dimensions") {
    REQUIRE(error_code_of([] {
                channel_distance(identity_channel(2), identity_channel(3));
            }) == "shape");
}
