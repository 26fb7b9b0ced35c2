// Command-line front end: validation, product checking, classification,
// corpus generation, and the corpus acceptance sweep.
//
// Exit codes: 0 = success / positive answer, 1 = negative answer
// (not product, not preserving, failed sweep), 2 = input or validation error.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "prodchan/json_io.hpp"

using namespace prodchan;

namespace {

// Report scalars are printed with 12 significant digits everywhere.
std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double sig12(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

int run_validate(const std::string& channel_path) {
    KrausChannel ch = channel_from_json(load_json_file(channel_path));
    ValidationReport r = validate(ch);
    json out{{"tp_defect", sig12(r.tp_defect)}, {"cp_defect", sig12(r.cp_defect)}};
    std::printf("%s\n", out.dump().c_str());
    return r.accepted() ? 0 : 2;
}

int run_check_product(const std::string& state_path, double tol, bool as_json) {
    DensityMatrix s = state_from_json(load_json_file(state_path));
    const double pd = product_distance(s);
    const double mi = mutual_information(s);
    const bool ok = pd <= tol;
    if (as_json) {
        json out{{"product_distance", sig12(pd)},
                 {"mutual_information", sig12(mi)},
                 {"product", ok}};
        std::printf("%s\n", out.dump().c_str());
    } else {
        std::printf("product_distance    = %s\n", fmt12(pd).c_str());
        std::printf("mutual_information  = %s\n", fmt12(mi).c_str());
        std::printf("product within %s: %s\n", fmt12(tol).c_str(), ok ? "yes" : "no");
    }
    return ok ? 0 : 1;
}

int run_classify(const std::string& channel_path, double tol, double tol_choi, int samples,
                 std::uint64_t seed, bool as_json) {
    KrausChannel ch = channel_from_json(load_json_file(channel_path));
    Classification c = classify(ch, tol, tol_choi, samples, seed);
    if (as_json) {
        std::printf("%s\n", classification_to_json(c).dump(1).c_str());
    } else {
        std::printf("verdict: %s\n",
                    c.verdict == Verdict::Preserving ? "preserving" : "not_preserving");
        for (const FormFit& f : c.forms)
            std::printf("  form %-3s residual %s\n", std::string(form_code(f.form)).c_str(),
                        fmt12(f.residual).c_str());
        if (c.witness)
            std::printf("witness violation: %s\n", fmt12(c.witness_violation).c_str());
        if (!c.flags.empty()) {
            std::printf("flags:");
            for (const std::string& fl : c.flags) std::printf(" %s", fl.c_str());
            std::printf("\n");
        }
    }
    return c.verdict == Verdict::Preserving ? 0 : 1;
}

int run_generate(const std::string& form, std::size_t d_a, std::size_t d_b, std::uint64_t seed,
                 const std::string& out_path) {
    CorpusEntry e = generate_entry(form, d_a, d_b, seed);
    save_json_file(out_path, entry_to_json(e));
    std::printf("wrote entry: label %s, dims (%zu,%zu), %zu Kraus operators -> %s\n",
                e.label.c_str(), d_a, d_b, e.channel.kraus().size(), out_path.c_str());
    return 0;
}

int run_acceptance(const std::string& corpus_path, const std::string& report_path) {
    std::vector<CorpusEntry> entries = corpus_from_json(load_json_file(corpus_path));
    json report_entries = json::array();
    bool all = true;
    int failures = 0;
    for (const CorpusEntry& e : entries) {
        EntryAudit a = audit_entry(e, 1000);
        all = all && a.pass;
        if (!a.pass) ++failures;
        report_entries.push_back(json{{"label", e.label},
                                      {"verdict", a.verdict},
                                      {"residual", sig12(a.residual)},
                                      {"pass", a.pass}});
        std::printf("[%s] label=%-15s verdict=%-15s residual=%s\n", a.pass ? "ok  " : "FAIL",
                    e.label.c_str(), a.verdict.c_str(), fmt12(a.residual).c_str());
    }
    save_json_file(report_path, json{{"entries", std::move(report_entries)}, {"pass", all}});
    if (all)
        std::printf("all %zu entries passed\n", entries.size());
    else
        std::printf("%d of %zu entries FAILED\n", failures, entries.size());
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"product-state preservation toolkit for bipartite channels"};
    app.require_subcommand(1);

    std::string channel_path, state_path, form, out_path, corpus_path, report_path;
    double tol = kProductTol;
    double ctol = kClassifyTol;
    double tol_choi = kClassifyChoiTol;
    int samples = kWitnessSamples;
    std::uint64_t seed = 0;
    std::size_t d_a = 2, d_b = 2;
    bool as_json = false;

    CLI::App* c_validate = app.add_subcommand("validate", "check a channel file for CPTP defects");
    c_validate->add_option("--channel", channel_path, "channel JSON file")->required();

    CLI::App* c_check = app.add_subcommand("check-product", "measure how far a state is from product form");
    c_check->add_option("--state", state_path, "state JSON file")->required();
    c_check->add_option("--tol", tol, "product distance tolerance");
    c_check->add_flag("--json", as_json, "emit JSON instead of a summary");

    CLI::App* c_classify = app.add_subcommand("classify", "decide preservation and reconstruct forms");
    c_classify->add_option("--channel", channel_path, "channel JSON file")->required();
    c_classify->add_option("--tol", ctol, "product distance tolerance");
    c_classify->add_option("--tol-choi", tol_choi, "Choi distance tolerance for form fits");
    c_classify->add_option("--samples", samples, "witness search budget");
    c_classify->add_option("--seed", seed, "RNG seed for the witness search")->required();
    c_classify->add_flag("--json", as_json, "emit the classification JSON");

    CLI::App* c_generate = app.add_subcommand("generate", "write one labeled corpus entry");
    c_generate->add_option("--form", form, "i|ii|iii|iv|unitary_entangling|random")->required();
    c_generate->add_option("--da", d_a, "dimension of factor A");
    c_generate->add_option("--db", d_b, "dimension of factor B");
    c_generate->add_option("--seed", seed, "RNG seed")->required();
    c_generate->add_option("--out", out_path, "output JSON file")->required();

    CLI::App* c_accept = app.add_subcommand("acceptance", "audit every entry of a corpus file");
    c_accept->add_option("--corpus", corpus_path, "corpus JSON file")->required();
    c_accept->add_option("--report", report_path, "report JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_validate->parsed()) return run_validate(channel_path);
        if (c_check->parsed()) return run_check_product(state_path, tol, as_json);
        if (c_classify->parsed())
            return run_classify(channel_path, ctol, tol_choi, samples, seed, as_json);
        if (c_generate->parsed()) return run_generate(form, d_a, d_b, seed, out_path);
        if (c_accept->parsed()) return run_acceptance(corpus_path, report_path);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
