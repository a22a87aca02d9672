#ifndef EAMATCH_BENCH_HPP
#define EAMATCH_BENCH_HPP

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eamatch/assign.hpp"
#include "eamatch/eval.hpp"
#include "eamatch/io.hpp"
#include "eamatch/similarity.hpp"
#include "eamatch/stable.hpp"

namespace eamatch {

inline const std::vector<std::string>& all_matchers() {
    static const std::vector<std::string> names = {"dinf", "hun",  "sink-o",
                                                   "sink-d", "smat", "bmat"};
    return names;
}

/// One benchmark run: where the similarity matrix comes from, which
/// matchers to apply, and how to report.
struct RunSpec {
    enum class Source { PrecomputedSim, CosineFromEmbeddings, DiceFromNames };
    enum class Format { Csv, Markdown };

    Source source = Source::PrecomputedSim;
    std::string sim_path;
    std::string emb_left_path, emb_right_path;
    std::string names_left_path, names_right_path;
    std::string gold_path;
    std::vector<std::string> matchers; // subset of all_matchers()
    MatchConfig config;
    Format format = Format::Markdown;
    std::string out_path;      // empty = stdout
    bool report_timing = true; // false pins wall_ms to 0 for reproducible files

    void validate() const {
        namespace fs = std::filesystem;
        config.validate();
        auto require = [](const std::string& p, const char* what) {
            if (p.empty()) throw UsageError(std::string(what) + " path missing");
            if (!fs::exists(p)) throw UsageError(std::string(what) + " path does not exist: " + p);
        };
        switch (source) {
        case Source::PrecomputedSim:
            require(sim_path, "similarity");
            break;
        case Source::CosineFromEmbeddings:
            require(emb_left_path, "left embedding");
            require(emb_right_path, "right embedding");
            break;
        case Source::DiceFromNames:
            require(names_left_path, "left name");
            require(names_right_path, "right name");
            break;
        }
        require(gold_path, "gold");
        if (matchers.empty()) throw UsageError("no matcher selected");
        for (const auto& m : matchers) {
            const auto& known = all_matchers();
            if (std::find(known.begin(), known.end(), m) == known.end())
                throw UsageError("unknown matcher: " + m);
        }
    }
};

inline Alignment run_matcher(const std::string& name, const SimilarityMatrix& s,
                             const MatchConfig& cfg) {
    if (name == "dinf") return match_dinf(s, cfg.direction);
    if (name == "hun") return match_hungarian(s);
    if (name == "sink-o") return match_sink_o(s, cfg);
    if (name == "sink-d") return match_sink_d(s, cfg);
    if (name == "smat") return match_smat(s);
    if (name == "bmat") return match_bmat(s);
    throw UsageError("unknown matcher: " + name);
}

inline SimilarityMatrix load_run_matrix(const RunSpec& spec) {
    switch (spec.source) {
    case RunSpec::Source::PrecomputedSim:
        return load_similarity(spec.sim_path);
    case RunSpec::Source::CosineFromEmbeddings:
        return cosine_similarity_matrix(load_embeddings(spec.emb_left_path),
                                        load_embeddings(spec.emb_right_path));
    case RunSpec::Source::DiceFromNames:
        return dice_similarity_matrix(load_names(spec.names_left_path),
                                      load_names(spec.names_right_path));
    }
    throw UsageError("unreachable similarity source");
}

/// Loads or computes the matrix once, then runs every selected matcher,
/// thresholds at theta, and evaluates against the gold links. Report order
/// follows the matcher list.
inline std::vector<EvalReport> run(const RunSpec& spec, std::ostream* warnings = &std::cerr) {
    spec.validate();
    SimilarityMatrix s = load_run_matrix(spec);
    GoldLinks gold = load_gold(spec.gold_path);

    std::vector<EvalReport> reports;
    reports.reserve(spec.matchers.size());
    for (const auto& name : spec.matchers) {
        auto t0 = std::chrono::steady_clock::now();
        Alignment a = run_matcher(name, s, spec.config);
        auto t1 = std::chrono::steady_clock::now();
        Alignment kept = apply_threshold(a, spec.config.theta);
        EvalReport rep = evaluate(kept, s.left(), s.right(), gold, warnings);
        rep.theta = spec.config.theta;
        rep.wall_ms = spec.report_timing
                          ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                          : 0.0;
        reports.push_back(std::move(rep));
    }
    return reports;
}

namespace detail {

inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

} // namespace detail

/// Renders reports as CSV or a markdown table. Percentages carry one
/// decimal, theta two.
inline std::string emit_report(const std::vector<EvalReport>& reports, RunSpec::Format format) {
    if (reports.empty()) throw UsageError("no reports to emit");
    std::ostringstream out;
    if (format == RunSpec::Format::Csv) {
        out << "matcher,theta,precision,recall,f1,predicted,gold,correct,wall_ms\n";
        for (const auto& r : reports) {
            out << r.matcher << ',' << detail::fixed(r.theta, 2) << ','
                << detail::fixed(r.precision, 1) << ',' << detail::fixed(r.recall, 1) << ','
                << detail::fixed(r.f1, 1) << ',' << r.predicted_count << ',' << r.gold_count
                << ',' << r.correct_count << ',' << detail::fixed(r.wall_ms, 1) << '\n';
        }
        return out.str();
    }
    out << "| matcher | theta | precision | recall | f1 | predicted | gold | correct | wall_ms |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        out << "| " << r.matcher << " | " << detail::fixed(r.theta, 2) << " | "
            << detail::fixed(r.precision, 1) << " | " << detail::fixed(r.recall, 1) << " | "
            << detail::fixed(r.f1, 1) << " | " << r.predicted_count << " | " << r.gold_count
            << " | " << r.correct_count << " | " << detail::fixed(r.wall_ms, 1) << " |\n";
    }
    return out.str();
}

/// Runs the spec and writes the rendered report to `out_path` or stdout.
inline void run_and_emit(const RunSpec& spec, std::ostream* warnings = &std::cerr) {
    auto reports = run(spec, warnings);
    std::string text = emit_report(reports, spec.format);
    if (spec.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(spec.out_path, std::ios::binary);
    if (!f) throw DataError("cannot write output file: " + spec.out_path);
    f << text;
}

} // namespace eamatch

#endif
