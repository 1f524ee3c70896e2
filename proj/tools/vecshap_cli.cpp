#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "vecshap/axioms.hpp"
#include "vecshap/game.hpp"
#include "vecshap/gaussian.hpp"
#include "vecshap/io.hpp"
#include "vecshap/predictor.hpp"
#include "vecshap/shapley.hpp"
#include "vecshap/similarity.hpp"

namespace {

using namespace vecshap;

Eigen::VectorXd to_eigen(const std::vector<double>& x) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = x[static_cast<std::size_t>(i)];
    return v;
}

struct ShapleyArgs {
    std::string game;
    std::string engine = "subset";
    std::string out;
};

int run_shapley(const ShapleyArgs& args) {
    const VectorGame game = read_game_json(args.game);
    const Attribution attr =
        args.engine == "permutation" ? shapley_permutation(game) : shapley_subset(game);
    const auto total = game.value(game.full_mask());
    write_attribution_csv(attr, total, args.out);
    return 0;
}

struct VerifyArgs {
    int n = 5;
    int m = 3;
    int trials = 100;
    std::uint64_t seed = 0;
    double tol_eff = 1e-10;
    double tol_leak = 1e-12;
    std::string report;
};

int run_verify(const VerifyArgs& args) {
    CampaignConfig cfg;
    cfg.n = args.n;
    cfg.m = args.m;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.tol_attr = args.tol_eff;
    cfg.tol_leak = args.tol_leak;
    const CampaignResult result = run_axiom_campaign(cfg);
    if (!args.report.empty()) write_reports_jsonl(result.reports, args.report);
    std::printf("trials %d checks %d failures %d\n", args.trials, result.checks, result.failures);
    return result.failures == 0 ? 0 : 1;
}

struct ExplainGaussianArgs {
    std::string model;
    std::string instance;
    std::string path = "analytic";
    std::string out;
};

int run_explain_gaussian(const ExplainGaussianArgs& args) {
    const ModelFile mf = read_model_json(args.model);
    if (!mf.input) throw std::invalid_argument("model JSON needs mu and sigma for the gaussian path");
    const GaussianInput& g = *mf.input;
    const Eigen::VectorXd x = to_eigen(read_instance(args.instance));

    auto analytic = [&] {
        return g.diagonal() ? shap_linear_independent(mf.model, g, x)
                            : shap_linear_correlated(mf.model, g, x);
    };
    auto exact = [&] { return shapley_subset(gaussian_game(mf.model, g, x)); };

    Attribution attr = args.path == "exact" ? exact() : analytic();
    if (args.path == "both") {
        const Attribution b = exact();
        double disc = 0.0;
        for (int i = 0; i < attr.players(); ++i)
            for (int k = 0; k < attr.outputs(); ++k)
                disc = std::max(disc, std::abs(attr(i, k) - b(i, k)));
        std::printf("analytic-vs-exact max-abs discrepancy: %s\n", format_double(disc).c_str());
    }
    const Eigen::VectorXd total = mf.model.B.transpose() * (x - g.mu());
    std::vector<double> total_v(total.data(), total.data() + total.size());
    write_attribution_csv(attr, total_v, args.out, {}, "conditional");
    return 0;
}

struct ExplainArgs {
    std::string model;
    std::string background;
    std::string instance;
    std::string out;
};

int run_explain(const ExplainArgs& args) {
    const LoadedPredictor loaded = read_predictor_json(args.model);
    const BackgroundSample bg = read_background_csv(args.background);
    const std::vector<double> x = read_instance(args.instance);
    const VectorGame game = interventional_game(*loaded.predictor, bg, x);
    const Attribution attr = shapley_subset(game);
    const auto total = game.value(game.full_mask());
    write_attribution_csv(attr, total, args.out, bg.names(), "interventional");
    return 0;
}

struct CompareArgs {
    std::string a;
    std::string b;
    int output_index = 0;
    std::string metrics = "cosine,spearman";
};

int run_compare(const CompareArgs& args) {
    const AttributionCsv fa = read_attribution_csv(args.a);
    const AttributionCsv fb = read_attribution_csv(args.b);
    const std::vector<double> ia = importance_from_attributions({fa.values}, args.output_index);
    const std::vector<double> ib = importance_from_attributions({fb.values}, args.output_index);

    std::vector<std::string> wanted;
    std::size_t start = 0;
    while (start <= args.metrics.size()) {
        const std::size_t pos = args.metrics.find(',', start);
        const std::string name = args.metrics.substr(
            start, pos == std::string::npos ? std::string::npos : pos - start);
        if (!name.empty()) wanted.push_back(name);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (wanted.empty()) throw CLI::ValidationError("--metrics", "no metrics requested");
    for (const auto& name : wanted) {
        if (name == "cosine")
            std::printf("cosine %.6f\n", cosine_similarity(ia, ib));
        else if (name == "spearman")
            std::printf("spearman %.6f\n", spearman_correlation(ia, ib));
        else
            throw CLI::ValidationError("--metrics", "unknown metric: " + name);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Shapley attribution for multi-output games and predictors"};
    app.require_subcommand(1);

    ShapleyArgs shapley_args;
    auto* sub_shapley = app.add_subcommand("shapley", "attribute a game from JSON");
    sub_shapley->add_option("--game", shapley_args.game, "game JSON file")->required();
    sub_shapley->add_option("--engine", shapley_args.engine, "subset|permutation")
        ->check(CLI::IsMember({"subset", "permutation"}));
    sub_shapley->add_option("--out", shapley_args.out, "attribution CSV to write")->required();

    VerifyArgs verify_args;
    auto* sub_verify = app.add_subcommand("verify", "run the axiom campaign on random games");
    sub_verify->add_option("--n", verify_args.n, "player count")->required();
    sub_verify->add_option("--m", verify_args.m, "output count")->required();
    sub_verify->add_option("--trials", verify_args.trials, "number of trials")->required();
    sub_verify->add_option("--seed", verify_args.seed, "RNG seed")->required();
    sub_verify->add_option("--tol-eff", verify_args.tol_eff, "attribution-level tolerance");
    sub_verify->add_option("--tol-leak", verify_args.tol_leak, "cross-coordinate leakage tolerance");
    sub_verify->add_option("--report", verify_args.report, "JSONL report to write");

    ExplainGaussianArgs eg_args;
    auto* sub_eg = app.add_subcommand("explain-gaussian", "closed-form SHAP for a Gaussian linear model");
    sub_eg->add_option("--model", eg_args.model, "model JSON with mu and sigma")->required();
    sub_eg->add_option("--instance", eg_args.instance, "instance (JSON array or CSV row)")->required();
    sub_eg->add_option("--path", eg_args.path, "analytic|exact|both")
        ->check(CLI::IsMember({"analytic", "exact", "both"}));
    sub_eg->add_option("--out", eg_args.out, "attribution CSV to write")->required();

    ExplainArgs explain_args;
    auto* sub_explain = app.add_subcommand("explain", "interventional SHAP against background data");
    sub_explain->add_option("--model", explain_args.model, "model or polynomial JSON")->required();
    sub_explain->add_option("--background", explain_args.background, "background CSV")->required();
    sub_explain->add_option("--instance", explain_args.instance, "instance (JSON array or CSV row)")
        ->required();
    sub_explain->add_option("--out", explain_args.out, "attribution CSV to write")->required();

    CompareArgs compare_args;
    auto* sub_compare = app.add_subcommand("compare", "similarity of two attribution files");
    sub_compare->add_option("--a", compare_args.a, "first attribution CSV")->required();
    sub_compare->add_option("--b", compare_args.b, "second attribution CSV")->required();
    sub_compare->add_option("--output-index", compare_args.output_index, "output coordinate")->required();
    sub_compare->add_option("--metrics", compare_args.metrics, "comma list: cosine,spearman");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sub_shapley->parsed()) return run_shapley(shapley_args);
        if (sub_verify->parsed()) return run_verify(verify_args);
        if (sub_eg->parsed()) return run_explain_gaussian(eg_args);
        if (sub_explain->parsed()) return run_explain(explain_args);
        if (sub_compare->parsed()) return run_compare(compare_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
