#include "tailclust/evaluate.hpp"

#include <cmath>

#include "tailclust/metrics.hpp"
#include "tailclust/transform.hpp"

namespace tailclust {

namespace {

void mean_and_sd(const std::vector<double>& values, double& mean, double& sd) {
    const double n = static_cast<double>(values.size());
    double total = 0.0;
    for (double v : values) total += v;
    mean = total / n;
    if (values.size() < 2) {
        sd = 0.0;
        return;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    sd = std::sqrt(ss / (n - 1.0));
}

}  // namespace

EvaluationReport run_evaluation(const EvaluationConfig& cfg) {
    if (cfg.replications < 1) throw InvalidInput("BadCount: need at least one replication");
    if (cfg.extremes < 1 || cfg.extremes > cfg.sample_size)
        throw InvalidInput("EmptySelection: extreme count outside [1, sample_size]");

    const int true_k = constellation_factors(cfg.constellation);
    const bool score_centers = cfg.k == true_k;

    EvaluationReport report;
    report.replications.resize(static_cast<std::size_t>(cfg.replications));
    report.has_ds = score_centers;

#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < cfg.replications; ++rep) {
        Rng model_rng(derive_stream(cfg.seed, "evaluate.model", static_cast<std::uint64_t>(rep)));
        const MaxLinearModel model = random_model(cfg.constellation, model_rng);
        const DiscreteSpectralMeasure truth = spectral_measure(model);

        const ObservationMatrix sample =
            simulate(model, cfg.sample_size,
                     derive_stream(cfg.seed, "evaluate.sim", static_cast<std::uint64_t>(rep)));
        const PipelineResult pipeline = fit_pipeline_count(sample, cfg.extremes);

        KMeansConfig fit_cfg;
        fit_cfg.k = cfg.k;
        fit_cfg.restarts = cfg.restarts;
        fit_cfg.max_iters = cfg.max_iters;
        fit_cfg.tol = cfg.tol;
        fit_cfg.seed = derive_stream(cfg.seed, "evaluate.fit", static_cast<std::uint64_t>(rep));
        const ClusterModel fit = spherical_kmeans(pipeline.sample, fit_cfg);

        ReplicationResult& result = report.replications[rep];
        result.objective = fit.objective;
        result.w1 = wasserstein1(to_spectral_measure(fit), truth);
        if (score_centers) result.ds = ds_distance(fit.centers, factor_directions(model));
    }

    std::vector<double> w1_values, ds_values;
    w1_values.reserve(report.replications.size());
    for (const ReplicationResult& r : report.replications) {
        w1_values.push_back(r.w1);
        if (score_centers) ds_values.push_back(r.ds);
    }
    mean_and_sd(w1_values, report.w1_mean, report.w1_sd);
    if (score_centers) mean_and_sd(ds_values, report.ds_mean, report.ds_sd);
    return report;
}

}  // namespace tailclust
