#include "vecshap/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <json.hpp>

#include "vecshap/stable_sum.hpp"

namespace vecshap {

using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

double parse_double(std::string_view s) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    auto [p, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || p != last) throw std::invalid_argument("invalid number: " + std::string(s));
    return x;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::vector<double> json_vector(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw std::invalid_argument(std::string(what) + " must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, p);
}

std::string game_to_json(const VectorGame& v) {
    json values = json::object();
    for (std::uint32_t s = 1; s < v.coalition_count(); ++s) {
        bool nonzero = false;
        for (int k = 0; k < v.outputs(); ++k)
            if (v.value(s, k) != 0.0) nonzero = true;
        if (!nonzero) continue;
        json row = json::array();
        for (int k = 0; k < v.outputs(); ++k) row.push_back(v.value(s, k));
        values[std::to_string(s)] = std::move(row);
    }
    json j;
    j["n"] = v.players();
    j["m"] = v.outputs();
    j["values"] = std::move(values);
    return j.dump(2) + "\n";
}

VectorGame game_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.contains("n") || !j.contains("m")) throw std::invalid_argument("game JSON needs n and m");
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    std::vector<GameEntry> entries;
    if (j.contains("values")) {
        const json& values = j.at("values");
        if (!values.is_object()) throw std::invalid_argument("values must be an object keyed by mask");
        for (auto it = values.begin(); it != values.end(); ++it) {
            std::uint32_t mask = 0;
            const std::string& key = it.key();
            auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), mask);
            if (ec != std::errc{} || p != key.data() + key.size())
                throw std::invalid_argument("invalid coalition key: " + key);
            entries.push_back(GameEntry{mask, json_vector(it.value(), "payoff")});
        }
    }
    return make_game(n, m, entries);
}

void write_game_json(const VectorGame& v, const std::filesystem::path& path) {
    spill(path, game_to_json(v));
}

VectorGame read_game_json(const std::filesystem::path& path) { return game_from_json(slurp(path)); }

namespace {

LinearPredictor model_from(const json& j) {
    const std::vector<double> b0 = json_vector(j.at("b0"), "b0");
    const json& jb = j.at("B");
    if (!jb.is_array() || jb.empty()) throw std::invalid_argument("B must be a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(jb.size());
    const auto m = static_cast<Eigen::Index>(b0.size());
    Eigen::MatrixXd B(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::vector<double> row = json_vector(jb[static_cast<std::size_t>(i)], "B row");
        if (static_cast<Eigen::Index>(row.size()) != m)
            throw std::invalid_argument("B rows must have length m");
        for (Eigen::Index k = 0; k < m; ++k) B(i, k) = row[static_cast<std::size_t>(k)];
    }
    Eigen::VectorXd b0v(m);
    for (Eigen::Index k = 0; k < m; ++k) b0v[k] = b0[static_cast<std::size_t>(k)];
    return LinearPredictor(std::move(b0v), std::move(B));
}

std::optional<GaussianInput> input_from(const json& j, Eigen::Index n) {
    const bool has_mu = j.contains("mu");
    const bool has_sigma = j.contains("sigma");
    if (!has_mu && !has_sigma) return std::nullopt;
    if (has_mu != has_sigma) throw std::invalid_argument("mu and sigma must be given together");
    const std::vector<double> mu = json_vector(j.at("mu"), "mu");
    if (static_cast<Eigen::Index>(mu.size()) != n) throw std::invalid_argument("mu length must equal feature count");
    const json& js = j.at("sigma");
    if (!js.is_array() || static_cast<Eigen::Index>(js.size()) != n)
        throw std::invalid_argument("sigma must be an n x n array");
    Eigen::MatrixXd sigma(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const std::vector<double> row = json_vector(js[static_cast<std::size_t>(r)], "sigma row");
        if (static_cast<Eigen::Index>(row.size()) != n) throw std::invalid_argument("sigma must be an n x n array");
        for (Eigen::Index c = 0; c < n; ++c) sigma(r, c) = row[static_cast<std::size_t>(c)];
    }
    Eigen::VectorXd muv(n);
    for (Eigen::Index k = 0; k < n; ++k) muv[k] = mu[static_cast<std::size_t>(k)];
    return GaussianInput(std::move(muv), std::move(sigma));
}

}  // namespace

ModelFile model_from_json(const std::string& text) {
    const json j = json::parse(text);
    LinearPredictor model = model_from(j);
    std::optional<GaussianInput> input = input_from(j, model.features());
    return ModelFile{std::move(model), std::move(input)};
}

ModelFile read_model_json(const std::filesystem::path& path) { return model_from_json(slurp(path)); }

std::string model_to_json(const LinearPredictor& p, const GaussianInput* input) {
    json j;
    j["b0"] = json::array();
    for (int k = 0; k < p.outputs(); ++k) j["b0"].push_back(p.b0[k]);
    j["B"] = json::array();
    for (int i = 0; i < p.features(); ++i) {
        json row = json::array();
        for (int k = 0; k < p.outputs(); ++k) row.push_back(p.B(i, k));
        j["B"].push_back(std::move(row));
    }
    if (input) {
        j["mu"] = json::array();
        for (int i = 0; i < input->dim(); ++i) j["mu"].push_back(input->mu()[i]);
        j["sigma"] = json::array();
        for (int r = 0; r < input->dim(); ++r) {
            json row = json::array();
            for (int c = 0; c < input->dim(); ++c) row.push_back(input->sigma()(r, c));
            j["sigma"].push_back(std::move(row));
        }
    }
    return j.dump(2) + "\n";
}

PolynomialPredictor polynomial_from_json(const std::string& text) {
    const json j = json::parse(text);
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    const json& jt = j.at("terms");
    if (!jt.is_array() || jt.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("terms must hold one list per output");
    std::vector<std::vector<PolyTerm>> terms(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (!jt[k].is_array()) throw std::invalid_argument("each output's terms must be an array");
        for (const auto& t : jt[k]) {
            PolyTerm term;
            term.coeff = t.at("coeff").get<double>();
            for (const auto& e : t.at("exponents")) term.exponents.push_back(e.get<int>());
            terms[k].push_back(std::move(term));
        }
    }
    return PolynomialPredictor(n, m, std::move(terms));
}

PolynomialPredictor read_polynomial_json(const std::filesystem::path& path) {
    return polynomial_from_json(slurp(path));
}

std::string polynomial_to_json(const PolynomialPredictor& p) {
    json j;
    j["n"] = p.features();
    j["m"] = p.outputs();
    j["terms"] = json::array();
    for (const auto& out_terms : p.terms()) {
        json list = json::array();
        for (const auto& t : out_terms) {
            json jt;
            jt["coeff"] = t.coeff;
            jt["exponents"] = t.exponents;
            list.push_back(std::move(jt));
        }
        j["terms"].push_back(std::move(list));
    }
    return j.dump(2) + "\n";
}

LoadedPredictor read_predictor_json(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    const json j = json::parse(text);
    LoadedPredictor out;
    if (j.contains("terms")) {
        out.predictor = std::make_unique<PolynomialPredictor>(polynomial_from_json(text));
    } else {
        ModelFile mf = model_from_json(text);
        out.input = std::move(mf.input);
        out.predictor = std::make_unique<LinearModelPredictor>(std::move(mf.model));
    }
    return out;
}

BackgroundSample read_background_csv(const std::filesystem::path& path) {
    const std::vector<std::string> lines = split_lines(slurp(path));
    std::size_t first = 0;
    while (first < lines.size() && lines[first].empty()) ++first;
    if (first >= lines.size()) throw std::invalid_argument("background CSV is empty");
    std::vector<std::string> names;
    for (auto field : split_commas(lines[first])) {
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
        names.emplace_back(field);
    }
    const int n = static_cast<int>(names.size());
    std::vector<double> rows;
    for (std::size_t li = first + 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto fields = split_commas(lines[li]);
        if (static_cast<int>(fields.size()) != n)
            throw std::invalid_argument("background CSV row has wrong field count");
        for (const auto f : fields) rows.push_back(parse_double(f));
    }
    if (rows.empty()) throw std::invalid_argument("background CSV has no data rows");
    return BackgroundSample(n, std::move(rows), std::move(names));
}

void write_background_csv(const BackgroundSample& bg, const std::filesystem::path& path) {
    std::ostringstream out;
    for (int j = 0; j < bg.features(); ++j) {
        if (j) out << ',';
        out << (bg.names().empty() ? "f" + std::to_string(j) : bg.names()[static_cast<std::size_t>(j)]);
    }
    out << '\n';
    for (int r = 0; r < bg.count(); ++r) {
        const auto row = bg.row(r);
        for (int j = 0; j < bg.features(); ++j) {
            if (j) out << ',';
            out << format_double(row[j]);
        }
        out << '\n';
    }
    spill(path, out.str());
}

std::vector<double> read_instance(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    if (path.extension() == ".json") {
        const json j = json::parse(text);
        return json_vector(j, "instance");
    }
    std::vector<std::vector<double>> numeric_lines;
    for (const auto& line : split_lines(text)) {
        if (line.empty() || line.front() == '#') continue;
        try {
            std::vector<double> vals;
            for (const auto f : split_commas(line)) vals.push_back(parse_double(f));
            numeric_lines.push_back(std::move(vals));
        } catch (const std::invalid_argument&) {
            // header line; skip
        }
    }
    if (numeric_lines.size() != 1)
        throw std::invalid_argument("instance CSV must contain exactly one numeric row");
    return numeric_lines.front();
}

void write_attribution_csv(const Attribution& a, std::span<const double> expected_total,
                           const std::filesystem::path& path, const std::vector<std::string>& names,
                           const std::string& expectation_mode) {
    if (expected_total.size() != static_cast<std::size_t>(a.outputs()))
        throw std::invalid_argument("expected total length must equal output count");
    if (!names.empty() && names.size() != static_cast<std::size_t>(a.players()))
        throw std::invalid_argument("feature name count does not match players");

    double residual = 0.0;
    for (int k = 0; k < a.outputs(); ++k) {
        StableSum total;
        for (int i = 0; i < a.players(); ++i) total.add(a(i, k));
        residual = std::max(residual, std::abs(total.get() - expected_total[k]));
    }

    std::ostringstream out;
    if (!expectation_mode.empty()) out << "# expectation_mode: " << expectation_mode << '\n';
    out << "feature";
    for (int k = 0; k < a.outputs(); ++k) out << ",out_" << k;
    out << '\n';
    for (int i = 0; i < a.players(); ++i) {
        out << (names.empty() ? "f" + std::to_string(i) : names[static_cast<std::size_t>(i)]);
        for (int k = 0; k < a.outputs(); ++k) out << ',' << format_double(a(i, k));
        out << '\n';
    }
    out << "# sum_check: " << format_double(residual) << '\n';
    spill(path, out.str());
}

AttributionCsv read_attribution_csv(const std::filesystem::path& path) {
    const std::vector<std::string> lines = split_lines(slurp(path));
    std::vector<std::string> names;
    std::vector<double> payoff;
    std::string mode;
    double sum_check = std::numeric_limits<double>::quiet_NaN();
    int m = -1;
    bool header_seen = false;
    for (const auto& line : lines) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto mode_pos = line.find("expectation_mode:");
            if (mode_pos != std::string::npos) {
                std::string value = line.substr(mode_pos + std::string("expectation_mode:").size());
                while (!value.empty() && value.front() == ' ') value.erase(value.begin());
                mode = value;
            }
            const auto sum_pos = line.find("sum_check:");
            if (sum_pos != std::string::npos)
                sum_check = parse_double(std::string_view(line).substr(sum_pos + std::string("sum_check:").size()));
            continue;
        }
        const auto fields = split_commas(line);
        if (!header_seen) {
            if (fields.empty() || fields.front() != "feature")
                throw std::invalid_argument("attribution CSV must start with a feature header");
            m = static_cast<int>(fields.size()) - 1;
            if (m < 1) throw std::invalid_argument("attribution CSV needs at least one output column");
            header_seen = true;
            continue;
        }
        if (static_cast<int>(fields.size()) != m + 1)
            throw std::invalid_argument("attribution CSV row has wrong field count");
        names.emplace_back(fields.front());
        for (int k = 1; k <= m; ++k) payoff.push_back(parse_double(fields[static_cast<std::size_t>(k)]));
    }
    if (!header_seen || names.empty()) throw std::invalid_argument("attribution CSV has no data rows");
    const int n = static_cast<int>(names.size());
    return AttributionCsv{Attribution(n, m, std::move(payoff)), std::move(names), std::move(mode), sum_check};
}

std::string reports_to_jsonl(const std::vector<AxiomReport>& reports) {
    std::ostringstream out;
    for (const auto& rep : reports) {
        for (const auto& rec : rep.records) {
            json j;
            j["trial"] = rep.trial;
            j["n"] = rep.n;
            j["m"] = rep.m;
            j["axiom"] = rec.axiom;
            j["residual"] = rec.residual;
            j["tolerance"] = rec.tolerance;
            j["pass"] = rec.pass;
            j["witness"] = {{"i", rec.witness.i},
                            {"j", rec.witness.j},
                            {"mask", rec.witness.mask},
                            {"k", rec.witness.k}};
            out << j.dump() << '\n';
        }
    }
    return out.str();
}

void write_reports_jsonl(const std::vector<AxiomReport>& reports, const std::filesystem::path& path) {
    spill(path, reports_to_jsonl(reports));
}

}  // namespace vecshap
