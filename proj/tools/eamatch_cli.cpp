// Benchmark CLI: load or compute a similarity matrix, run the selected
// matchers, threshold, evaluate against gold links, and emit a report.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eamatch/eamatch.hpp"

int main(int argc, char** argv) {
    CLI::App app{"entity-alignment matching benchmark"};

    eamatch::RunSpec spec;
    std::string similarity; // cosine | dice, required with embeddings/names
    std::string matcher = "all";
    std::string direction = "row";
    std::string format = "markdown";
    bool no_timing = false;

    app.add_option("--sim", spec.sim_path, "precomputed similarity matrix (sparse TSV or #dense)");
    app.add_option("--emb-left", spec.emb_left_path, "left embedding TSV");
    app.add_option("--emb-right", spec.emb_right_path, "right embedding TSV");
    app.add_option("--names-left", spec.names_left_path, "left name TSV");
    app.add_option("--names-right", spec.names_right_path, "right name TSV");
    app.add_option("--similarity", similarity, "estimator for embeddings/names: cosine|dice");
    app.add_option("--gold", spec.gold_path, "gold link TSV")->required();
    app.add_option("--matcher", matcher, "dinf|hun|sink-o|sink-d|smat|bmat|all");
    app.add_option("--theta", spec.config.theta, "score threshold in [0,1]");
    app.add_option("--direction", direction, "DInf scan direction: row|col");
    app.add_option("--tau", spec.config.tau, "Sink-o temperature");
    app.add_option("--iters", spec.config.sink_o_iters, "Sink-o normalization rounds");
    app.add_option("--epsilon", spec.config.ot_epsilon, "Sink-d entropy regularization");
    app.add_option("--ot-max-iters", spec.config.ot_max_iters, "Sink-d iteration cap");
    app.add_option("--ot-tolerance", spec.config.ot_tolerance, "Sink-d marginal tolerance");
    app.add_option("--format", format, "csv|markdown");
    app.add_option("--out", spec.out_path, "output path (default: stdout)");
    app.add_flag("--no-timing", no_timing, "report wall_ms as 0 for byte-reproducible output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        bool have_sim = !spec.sim_path.empty();
        bool have_emb = !spec.emb_left_path.empty() || !spec.emb_right_path.empty();
        bool have_names = !spec.names_left_path.empty() || !spec.names_right_path.empty();
        if (have_sim + have_emb + have_names != 1)
            throw eamatch::UsageError(
                "exactly one similarity source required: --sim, --emb-*, or --names-*");
        if (have_sim) {
            spec.source = eamatch::RunSpec::Source::PrecomputedSim;
        } else if (have_emb) {
            if (similarity != "cosine")
                throw eamatch::UsageError("--similarity cosine is required with embeddings");
            spec.source = eamatch::RunSpec::Source::CosineFromEmbeddings;
        } else {
            if (similarity != "dice")
                throw eamatch::UsageError("--similarity dice is required with names");
            spec.source = eamatch::RunSpec::Source::DiceFromNames;
        }

        if (matcher == "all")
            spec.matchers = eamatch::all_matchers();
        else
            spec.matchers = {matcher};

        if (direction == "row")
            spec.config.direction = eamatch::MatchConfig::Direction::Row;
        else if (direction == "col")
            spec.config.direction = eamatch::MatchConfig::Direction::Col;
        else
            throw eamatch::UsageError("--direction must be row or col");

        if (format == "csv")
            spec.format = eamatch::RunSpec::Format::Csv;
        else if (format == "markdown")
            spec.format = eamatch::RunSpec::Format::Markdown;
        else
            throw eamatch::UsageError("--format must be csv or markdown");

        spec.report_timing = !no_timing;
        eamatch::run_and_emit(spec);
        return 0;
    } catch (const eamatch::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const eamatch::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const eamatch::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
