#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodchan/corpus.hpp"

namespace prodchan {

using nlohmann::json;

inline json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw Error("parse", "matrix object needs rows, cols, data");
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const json& data = j.at("data");
    if (!data.is_array() || data.size() != rows * cols)
        throw Error("shape", "matrix data length does not match rows*cols");
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const json& e : data) {
        if (!e.is_array() || e.size() != 2)
            throw Error("parse", "matrix entries must be [re, im] pairs");
        entries.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return ComplexMatrix(rows, cols, entries);
}

inline json split_to_json(const std::optional<Split>& sp) {
    if (!sp) return nullptr;
    return json::array({sp->d_a, sp->d_b});
}

inline std::optional<Split> split_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_array() || j.size() != 2) throw Error("parse", "split must be null or [d_a, d_b]");
    return Split{j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()};
}

inline json state_to_json(const DensityMatrix& s) {
    return json{{"dim", s.dim()}, {"split", split_to_json(s.split())}, {"mat", matrix_to_json(s.mat())}};
}

inline DensityMatrix state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("mat"))
        throw Error("parse", "state object needs dim and mat");
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::optional<Split> sp =
        j.contains("split") ? split_from_json(j.at("split")) : std::nullopt;
    ComplexMatrix m = matrix_from_json(j.at("mat"));
    if (m.rows() != dim) throw Error("shape", "state dim does not match matrix");
    return DensityMatrix(std::move(m), sp);
}

inline json channel_to_json(const KrausChannel& ch) {
    json kraus = json::array();
    for (const ComplexMatrix& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
    return json{{"dim_in", ch.dim_in()},
                {"dim_out", ch.dim_out()},
                {"split_in", split_to_json(ch.split_in())},
                {"split_out", split_to_json(ch.split_out())},
                {"kraus", std::move(kraus)}};
}

inline KrausChannel channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim_in") || !j.contains("dim_out") || !j.contains("kraus"))
        throw Error("parse", "channel object needs dim_in, dim_out, kraus");
    const std::size_t din = j.at("dim_in").get<std::size_t>();
    const std::size_t dout = j.at("dim_out").get<std::size_t>();
    std::optional<Split> sin =
        j.contains("split_in") ? split_from_json(j.at("split_in")) : std::nullopt;
    std::optional<Split> sout =
        j.contains("split_out") ? split_from_json(j.at("split_out")) : std::nullopt;
    const json& kj = j.at("kraus");
    if (!kj.is_array() || kj.empty()) throw Error("parse", "kraus must be a nonempty array");
    std::vector<ComplexMatrix> ops;
    ops.reserve(kj.size());
    for (const json& e : kj) ops.push_back(matrix_from_json(e));
    return KrausChannel(din, dout, std::move(ops), sin, sout);
}

inline json entry_to_json(const CorpusEntry& e) {
    return json{{"label", e.label},
                {"seed", e.seed},
                {"notes", e.notes},
                {"channel", channel_to_json(e.channel)}};
}

inline CorpusEntry entry_from_json(const json& j) {
    if (!j.is_object() || !j.contains("label") || !j.contains("channel"))
        throw Error("parse", "corpus entry needs label and channel");
    CorpusEntry e{j.at("label").get<std::string>(), channel_from_json(j.at("channel")),
                  j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0,
                  j.contains("notes") ? j.at("notes").get<std::string>() : ""};
    return e;
}

inline json corpus_to_json(const std::vector<CorpusEntry>& entries) {
    json arr = json::array();
    for (const CorpusEntry& e : entries) arr.push_back(entry_to_json(e));
    return arr;
}

inline std::vector<CorpusEntry> corpus_from_json(const json& j) {
    if (!j.is_array()) throw Error("parse", "corpus must be an array of entries");
    std::vector<CorpusEntry> entries;
    entries.reserve(j.size());
    for (const json& e : j) entries.push_back(entry_from_json(e));
    return entries;
}

inline json validation_to_json(const ValidationReport& r) {
    return json{{"tp_defect", r.tp_defect}, {"cp_defect", r.cp_defect}};
}

inline json components_to_json(const FormComponents& c) {
    if (const auto* lt = std::get_if<LocalTensorComponents>(&c))
        return json{{"phi_a", channel_to_json(lt->phi_a)}, {"phi_b", channel_to_json(lt->phi_b)}};
    if (const auto* ft = std::get_if<FlipTensorComponents>(&c))
        return json{{"psi_a", channel_to_json(ft->psi_a)}, {"psi_b", channel_to_json(ft->psi_b)}};
    if (const auto* fa = std::get_if<FixedAComponents>(&c))
        return json{{"sigma", state_to_json(fa->sigma)}, {"lambda_b", channel_to_json(fa->lambda_b)}};
    const auto& fb = std::get<FixedBComponents>(c);
    return json{{"lambda_a", channel_to_json(fb.lambda_a)}, {"tau", state_to_json(fb.tau)}};
}

inline json classification_to_json(const Classification& c) {
    json forms = json::array();
    for (const FormFit& f : c.forms)
        forms.push_back(json{{"form", std::string(form_code(f.form))},
                             {"residual", f.residual},
                             {"components", components_to_json(f.components)}});
    return json{{"verdict", c.verdict == Verdict::Preserving ? "preserving" : "not_preserving"},
                {"forms", std::move(forms)},
                {"witness", c.witness ? state_to_json(*c.witness) : json(nullptr)},
                {"flags", c.flags}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error("parse", std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

inline void save_json_file(const std::string& path, const json& j, int indent = 1) {
    std::ofstream out(path);
    if (!out) throw Error("io", "cannot open " + path + " for writing");
    out << j.dump(indent) << "\n";
    if (!out) throw Error("io", "failed writing " + path);
}

}  // namespace prodchan
