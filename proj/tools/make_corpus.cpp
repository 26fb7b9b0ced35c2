// Regenerates the committed corpus fixtures. Usage:
//   make_corpus CORPUS_OUT SMALL_OUT MISLABELED_OUT
//
// CORPUS_OUT      full corpus: 5 seeds per form per dimension pair, plus
//                 entangling and structured special entries
// SMALL_OUT       six-entry corpus for quick CLI runs
// MISLABELED_OUT  small corpus plus a deliberately wrong label; an
//                 acceptance sweep over it must fail (negative control)

#include <cstdio>

#include "prodchan/json_io.hpp"

using namespace prodchan;

namespace {

ComplexMatrix cnot_mat() {
    ComplexMatrix m(4, 4);
    m(0, 0) = Complex(1.0, 0.0);
    m(1, 1) = Complex(1.0, 0.0);
    m(2, 3) = Complex(1.0, 0.0);
    m(3, 2) = Complex(1.0, 0.0);
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: make_corpus CORPUS_OUT SMALL_OUT MISLABELED_OUT\n");
        return 2;
    }

    std::vector<CorpusEntry> entries;
    const char* forms[] = {"i", "ii", "iii", "iv"};
    const std::size_t dims[][2] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    for (std::size_t fi = 0; fi < 4; ++fi)
        for (std::size_t di = 0; di < 4; ++di)
            for (std::uint64_t s = 0; s < 5; ++s)
                entries.push_back(generate_entry(forms[fi], dims[di][0], dims[di][1],
                                                 (fi + 1) * 10000 + di * 100 + s));

    for (std::uint64_t s = 0; s < 5; ++s)
        entries.push_back(generate_entry("unitary_entangling", 2, 2, 90000 + s));
    for (std::uint64_t s = 0; s < 5; ++s)
        entries.push_back(generate_entry("unitary_entangling", 2, 3, 90100 + s));
    for (std::uint64_t s = 0; s < 5; ++s)
        entries.push_back(generate_entry("random", 2, 2, 91000 + s));
    for (std::uint64_t s = 0; s < 5; ++s)
        entries.push_back(generate_entry("random", 3, 2, 91100 + s));

    // Structured specials. The CNOT label is oracle-confirmed like any other
    // not_preserving entry: no unverified ground truth in fixtures.
    KrausChannel cnot(4, 4, {cnot_mat()}, Split{2, 2}, Split{2, 2});
    if (verify_preservation(cnot, 500, kClassifyTol, 7).max_violation <= kClassifyTol) {
        std::fprintf(stderr, "CNOT oracle confirmation failed\n");
        return 1;
    }
    entries.push_back(CorpusEntry{"not_preserving", cnot, 7, "controlled-NOT entangler"});

    entries.push_back(CorpusEntry{
        "i",
        tensor_channel(noise_zoo("amplitude_damping", 2, 0.3), noise_zoo("depolarizing", 2, 0.5)),
        0, "damping (x) depolarizing local noise"});
    entries.push_back(CorpusEntry{"ii", flip_channel(identity_channel(2), identity_channel(2)), 0,
                                  "pure swap of two qubits"});

    DensityMatrix sigma = random_density(2, 2, 201);
    DensityMatrix tau = random_density(2, 1, 202);
    DensityMatrix omega(tensor(sigma.mat(), tau.mat()), Split{2, 2});
    entries.push_back(CorpusEntry{"iii",
                                  contractive_channel(omega, 4).with_splits(Split{2, 2}, Split{2, 2}),
                                  0, "completely contractive to a product state"});

    save_json_file(argv[1], corpus_to_json(entries), -1);
    std::printf("wrote %zu entries to %s\n", entries.size(), argv[1]);

    std::vector<CorpusEntry> small;
    small.push_back(generate_entry("i", 2, 2, 1));
    small.push_back(generate_entry("ii", 2, 2, 2));
    small.push_back(generate_entry("iii", 2, 2, 3));
    small.push_back(generate_entry("iv", 2, 2, 4));
    small.push_back(generate_entry("unitary_entangling", 2, 2, 5));
    small.push_back(generate_entry("random", 2, 2, 6));
    save_json_file(argv[2], corpus_to_json(small), 1);
    std::printf("wrote %zu entries to %s\n", small.size(), argv[2]);

    std::vector<CorpusEntry> mislabeled = small;
    mislabeled.push_back(CorpusEntry{"i", cnot, 7, "entangler wearing a tensor-form label"});
    save_json_file(argv[3], corpus_to_json(mislabeled), 1);
    std::printf("wrote %zu entries to %s\n", mislabeled.size(), argv[3]);
    return 0;
}
