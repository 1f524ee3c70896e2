#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vecshap/axioms.hpp"
#include "vecshap/game.hpp"
#include "vecshap/gaussian.hpp"
#include "vecshap/predictor.hpp"

namespace vecshap {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double x);

// --- Game JSON: {"n": int, "m": int, "values": {"<mask>": [m floats], ...}}
// Omitted masks are the zero vector; key "0" must be absent or all-zero.

std::string game_to_json(const VectorGame& v);
VectorGame game_from_json(const std::string& text);
void write_game_json(const VectorGame& v, const std::filesystem::path& path);
VectorGame read_game_json(const std::filesystem::path& path);

// --- Model JSON: {"b0": [m], "B": [[m] x n rows], "mu": [n], "sigma": [[n] x n rows]}
// mu/sigma may be omitted together when only the predictor is needed.

struct ModelFile {
    LinearPredictor model;
    std::optional<GaussianInput> input;
};

ModelFile model_from_json(const std::string& text);
ModelFile read_model_json(const std::filesystem::path& path);
std::string model_to_json(const LinearPredictor& p, const GaussianInput* input = nullptr);

// --- Polynomial predictor JSON:
// {"n": int, "m": int, "terms": [[{"coeff": c, "exponents": [n ints]}, ...] per output]}

PolynomialPredictor polynomial_from_json(const std::string& text);
PolynomialPredictor read_polynomial_json(const std::filesystem::path& path);
std::string polynomial_to_json(const PolynomialPredictor& p);

/// Dispatches on the "terms" key: polynomial spec or linear model file.
struct LoadedPredictor {
    std::unique_ptr<Predictor> predictor;
    std::optional<GaussianInput> input;
};
LoadedPredictor read_predictor_json(const std::filesystem::path& path);

// --- Background CSV: header row of column names, then one observation per line.

BackgroundSample read_background_csv(const std::filesystem::path& path);
void write_background_csv(const BackgroundSample& bg, const std::filesystem::path& path);

/// Instance vector: a JSON array for ".json" paths, otherwise a single-row CSV
/// (an optional header line is skipped).
std::vector<double> read_instance(const std::filesystem::path& path);

// --- Attribution CSV: header `feature,out_0,...`, one row per feature,
// a `# expectation_mode: ...` comment when a mode is given, and a trailing
// `# sum_check: <max-abs efficiency residual>` line.

void write_attribution_csv(const Attribution& a, std::span<const double> expected_total,
                           const std::filesystem::path& path,
                           const std::vector<std::string>& names = {},
                           const std::string& expectation_mode = {});

struct AttributionCsv {
    Attribution values;
    std::vector<std::string> names;
    std::string expectation_mode;  // empty when the comment is absent
    double sum_check = 0.0;
};

AttributionCsv read_attribution_csv(const std::filesystem::path& path);

// --- Axiom report JSONL: one object per (trial, axiom) with fields
// {trial, n, m, axiom, residual, tolerance, pass, witness}.

std::string reports_to_jsonl(const std::vector<AxiomReport>& reports);
void write_reports_jsonl(const std::vector<AxiomReport>& reports, const std::filesystem::path& path);

}  // namespace vecshap
