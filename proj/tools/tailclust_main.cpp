// tailclust — prototypes of extremal dependence from multivariate data.
//
// Subcommands: fit, elbow, classify, simulate, evaluate.
// Exit codes: 0 success, 2 unreadable input, 3 bad flags, 4 degenerate data.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tailclust/evaluate.hpp"
#include "tailclust/io.hpp"
#include "tailclust/transform.hpp"

namespace {

using namespace tailclust;

constexpr int kExitParse = 2;
constexpr int kExitFlags = 3;
constexpr int kExitDegenerate = 4;

const CLI::Range positive_int(1, std::numeric_limits<int>::max(), "POSITIVE");

struct SelectionFlags {
    double fraction = 0.1;
    int extremes = 0;  // 0 = use fraction
};

void add_selection_flags(CLI::App& cmd, SelectionFlags& flags) {
    auto* fraction = cmd.add_option("--fraction", flags.fraction,
                                    "Fraction of rows kept as extremes (default 0.1)")
                         ->check(CLI::Range(0.0, 1.0));
    auto* extremes = cmd.add_option("--extremes", flags.extremes,
                                    "Absolute number of rows kept as extremes")
                         ->check(positive_int);
    fraction->excludes(extremes);
    extremes->excludes(fraction);
}

PipelineResult run_pipeline(const ObservationMatrix& obs, const SelectionFlags& sel,
                            NormKind norm, bool negate) {
    if (sel.extremes > 0) return fit_pipeline_count(obs, sel.extremes, norm, negate);
    return fit_pipeline(obs, sel.fraction, norm, negate);
}

NormKind norm_from_flag(const std::string& name) {
    if (auto kind = parse_norm(name)) return *kind;
    throw CLI::ValidationError("--norm", "unknown norm '" + name + "'");
}

void warn_degenerate(const std::vector<int>& columns, const std::vector<std::string>& names) {
    for (int c : columns)
        std::cerr << "warning: DegenerateColumn(" << names[c]
                  << "): constant column carries no tail signal\n";
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ParseError("cannot write '" + path + "'");
    file << content;
}

std::string sidecar_path(const std::string& out, const std::string& suffix) {
    const std::size_t dot = out.find_last_of('.');
    const std::size_t slash = out.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + suffix;
    return out.substr(0, dot) + suffix;
}

// ---- fit ----------------------------------------------------------------

struct FitArgs {
    std::string input, out, norm = "euclidean";
    SelectionFlags selection;
    int k = 0;
    int restarts = 100;
    bool negate = false;
    std::uint64_t seed = 0;
};

int cmd_fit(const FitArgs& args) {
    const DataTable table = read_data_csv_file(args.input);
    if (table.observations.d() < 2)
        throw InvalidInput("TooFewColumns: need at least two numeric columns");

    const NormKind norm = norm_from_flag(args.norm);
    const PipelineResult pipeline =
        run_pipeline(table.observations, args.selection, norm, args.negate);
    warn_degenerate(pipeline.degenerate_columns, table.columns);

    KMeansConfig cfg;
    cfg.k = args.k;
    cfg.restarts = args.restarts;
    cfg.seed = args.seed;
    const ClusterModel model = spherical_kmeans(pipeline.sample, cfg);

    FitReport report{model, pipeline.sample.source_rows, pipeline.sample.threshold,
                     table.observations.n(), pipeline.sample.size(), table.columns};
    write_output(args.out, fit_report_to_json(report).dump(2) + "\n");
    return 0;
}

// ---- elbow --------------------------------------------------------------

struct ElbowArgs {
    std::string input, out, norm = "euclidean";
    SelectionFlags selection;
    int kmin = 1;
    int kmax = 10;
    int restarts = 100;
    bool negate = false;
    std::uint64_t seed = 0;
};

int cmd_elbow(const ElbowArgs& args) {
    const DataTable table = read_data_csv_file(args.input);
    if (table.observations.d() < 2)
        throw InvalidInput("TooFewColumns: need at least two numeric columns");

    const PipelineResult pipeline =
        run_pipeline(table.observations, args.selection, norm_from_flag(args.norm), args.negate);
    warn_degenerate(pipeline.degenerate_columns, table.columns);

    KMeansConfig cfg;
    cfg.restarts = args.restarts;
    cfg.seed = args.seed;
    const auto curve = elbow_scan(pipeline.sample, args.kmin, args.kmax, cfg);

    std::ostringstream out;
    write_elbow_csv(out, curve);
    write_output(args.out, out.str());
    return 0;
}

// ---- classify -----------------------------------------------------------

struct ClassifyArgs {
    std::string input, out, norm = "euclidean", label_col;
    SelectionFlags selection;
    int k = 0;
    int restarts = 100;
    bool negate = false;
    std::uint64_t seed = 0;
};

int cmd_classify(const ClassifyArgs& args) {
    const DataTable table = [&] {
        try {
            return read_data_csv_file(args.input, args.label_col);
        } catch (const InvalidInput& e) {
            // A label column the file does not have is a flag problem, not a
            // data problem.
            if (std::string_view(e.what()).starts_with("MissingLabelColumn"))
                throw CLI::ValidationError("--label-col", e.what());
            throw;
        }
    }();
    if (table.observations.d() < 2)
        throw InvalidInput("TooFewColumns: need at least two numeric columns");

    const PipelineResult pipeline =
        run_pipeline(table.observations, args.selection, norm_from_flag(args.norm), args.negate);
    warn_degenerate(pipeline.degenerate_columns, table.columns);

    KMeansConfig cfg;
    cfg.k = args.k;
    cfg.restarts = args.restarts;
    cfg.seed = args.seed;
    const ClusterModel model = spherical_kmeans(pipeline.sample, cfg);

    std::vector<TimelineRow> rows;
    rows.reserve(static_cast<std::size_t>(pipeline.sample.size()));
    const std::vector<std::string>& labels = table.observations.labels;
    for (int p = 0; p < pipeline.sample.size(); ++p) {
        const int row = pipeline.sample.source_rows[p];
        TimelineRow entry;
        entry.label = labels.empty() ? std::to_string(row) : labels[row];
        entry.cluster = model.labels[p];
        entry.norm = pipeline.sample.norms[p];
        rows.push_back(std::move(entry));
    }

    std::ostringstream out;
    write_timeline_csv(out, rows);
    write_output(args.out, out.str());
    return 0;
}

// ---- simulate -----------------------------------------------------------

struct SimulateArgs {
    std::string constellation, model_path, out;
    int n = 1000;
    std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& args) {
    std::optional<MaxLinearModel> model;
    bool write_sidecars = false;
    if (!args.constellation.empty()) {
        const auto c = parse_constellation(args.constellation);
        if (!c)
            throw CLI::ValidationError("--constellation",
                                       "unknown constellation '" + args.constellation + "'");
        Rng rng(derive_stream(args.seed, "simulate.model", 0));
        model = random_model(*c, rng);
        write_sidecars = true;
    } else {
        model = read_model_file(args.model_path);
    }

    const ObservationMatrix data =
        simulate(*model, args.n, derive_stream(args.seed, "simulate.data", 0));

    std::vector<std::string> columns;
    for (int j = 0; j < data.d(); ++j) columns.push_back("X" + std::to_string(j + 1));
    std::ostringstream out;
    write_matrix_csv(out, data.data, columns);
    write_output(args.out, out.str());

    if (write_sidecars && !args.out.empty()) {
        write_output(sidecar_path(args.out, ".model.json"),
                     model_to_json(*model).dump(2) + "\n");
        write_output(sidecar_path(args.out, ".spectral.json"),
                     measure_to_json(spectral_measure(*model)).dump(2) + "\n");
    }
    return 0;
}

// ---- evaluate -----------------------------------------------------------

struct EvaluateArgs {
    std::string constellation = "d4k2", out;
    double fraction = 0.0;  // 0 = use the count
    EvaluationConfig cfg;
};

int cmd_evaluate(const EvaluateArgs& args) {
    EvaluationConfig cfg = args.cfg;
    const auto c = parse_constellation(args.constellation);
    if (!c)
        throw CLI::ValidationError("--constellation",
                                   "unknown constellation '" + args.constellation + "'");
    cfg.constellation = *c;
    if (args.fraction > 0.0)
        cfg.extremes = static_cast<int>(std::ceil(args.fraction * cfg.sample_size));
    const EvaluationReport report = run_evaluation(cfg);
    write_output(args.out, evaluation_report_to_json(cfg, report).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prototypes of extremal dependence via spherical k-means"};
    app.require_subcommand(1);

    FitArgs fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Cluster the extremal directions of a CSV");
    fit_cmd->add_option("input", fit.input, "Input CSV (header row required)")->required();
    add_selection_flags(*fit_cmd, fit.selection);
    fit_cmd->add_option("--k", fit.k, "Number of clusters")->required()->check(positive_int);
    fit_cmd->add_option("--norm", fit.norm, "Selection norm: euclidean, sup or l1");
    fit_cmd->add_flag("--negate", fit.negate, "Negate all entries first (losses)");
    fit_cmd->add_option("--restarts", fit.restarts, "Clustering restarts (default 100)")->check(positive_int);
    fit_cmd->add_option("--seed", fit.seed, "Random seed (default 0)");
    fit_cmd->add_option("--out", fit.out, "Output JSON path (default stdout)");

    ElbowArgs elbow;
    CLI::App* elbow_cmd =
        app.add_subcommand("elbow", "Objective-vs-k curve for choosing the cluster count");
    elbow_cmd->add_option("input", elbow.input, "Input CSV")->required();
    add_selection_flags(*elbow_cmd, elbow.selection);
    elbow_cmd->add_option("--kmin", elbow.kmin, "Smallest k (default 1)")->check(positive_int);
    elbow_cmd->add_option("--kmax", elbow.kmax, "Largest k (default 10)")->check(positive_int);
    elbow_cmd->add_option("--norm", elbow.norm, "Selection norm");
    elbow_cmd->add_flag("--negate", elbow.negate, "Negate all entries first");
    elbow_cmd->add_option("--restarts", elbow.restarts, "Clustering restarts")->check(positive_int);
    elbow_cmd->add_option("--seed", elbow.seed, "Random seed");
    elbow_cmd->add_option("--out", elbow.out, "Output CSV path (default stdout)");

    ClassifyArgs classify;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Assign each selected extreme to a cluster");
    classify_cmd->add_option("input", classify.input, "Input CSV")->required();
    add_selection_flags(*classify_cmd, classify.selection);
    classify_cmd->add_option("--k", classify.k, "Number of clusters")->required()->check(positive_int);
    classify_cmd->add_option("--label-col", classify.label_col,
                             "Column holding row labels (timestamps, ids)");
    classify_cmd->add_option("--norm", classify.norm, "Selection norm");
    classify_cmd->add_flag("--negate", classify.negate, "Negate all entries first");
    classify_cmd->add_option("--restarts", classify.restarts, "Clustering restarts")->check(positive_int);
    classify_cmd->add_option("--seed", classify.seed, "Random seed");
    classify_cmd->add_option("--out", classify.out, "Output CSV path (default stdout)");

    SimulateArgs simulate;
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Draw rows from a max-linear model");
    auto* constellation_opt = simulate_cmd->add_option(
        "--constellation", simulate.constellation, "Random model layout: d4k2, d4k6, d6k6, d10k6");
    auto* model_opt =
        simulate_cmd->add_option("--model", simulate.model_path, "Model JSON file to simulate");
    constellation_opt->excludes(model_opt);
    model_opt->excludes(constellation_opt);
    simulate_cmd->add_option("--n", simulate.n, "Number of rows (default 1000)")->check(positive_int);
    simulate_cmd->add_option("--seed", simulate.seed, "Random seed");
    simulate_cmd->add_option("--out", simulate.out,
                             "Output CSV path; with --constellation, model and spectral-measure "
                             "JSON sidecars are written next to it");

    EvaluateArgs evaluate;
    CLI::App* evaluate_cmd =
        app.add_subcommand("evaluate", "Score the pipeline against random max-linear models");
    evaluate_cmd->add_option("--constellation", evaluate.constellation,
                             "Model layout (default d4k2)");
    evaluate_cmd->add_option("--models", evaluate.cfg.replications,
                             "Number of random models (default 100)")
        ->check(positive_int);
    evaluate_cmd->add_option("--n", evaluate.cfg.sample_size, "Rows per model (default 1000)")
        ->check(positive_int);
    auto* eval_extremes = evaluate_cmd->add_option("--extremes", evaluate.cfg.extremes,
                                                   "Rows kept as extremes (default 100)")
                              ->check(positive_int);
    auto* eval_fraction = evaluate_cmd->add_option("--fraction", evaluate.fraction,
                                                   "Fraction of rows kept as extremes")
                              ->check(CLI::Range(0.0, 1.0));
    eval_extremes->excludes(eval_fraction);
    eval_fraction->excludes(eval_extremes);
    evaluate_cmd->add_option("--k", evaluate.cfg.k, "Fitted cluster count")
        ->required()
        ->check(positive_int);
    evaluate_cmd->add_option("--restarts", evaluate.cfg.restarts, "Clustering restarts")
        ->check(positive_int);
    evaluate_cmd->add_option("--seed", evaluate.cfg.seed, "Random seed");
    evaluate_cmd->add_option("--out", evaluate.out, "Output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitFlags;
    }

    try {
        if (fit_cmd->parsed()) return cmd_fit(fit);
        if (elbow_cmd->parsed()) return cmd_elbow(elbow);
        if (classify_cmd->parsed()) return cmd_classify(classify);
        if (simulate_cmd->parsed()) {
            if (simulate.constellation.empty() && simulate.model_path.empty())
                throw CLI::ValidationError("simulate",
                                           "one of --constellation or --model is required");
            return cmd_simulate(simulate);
        }
        if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitFlags;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    }
    return 0;
}
