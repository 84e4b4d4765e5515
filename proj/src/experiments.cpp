#include "tta/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

namespace tta {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct SplitMix64 {
    std::uint64_t x;
    explicit SplitMix64(std::uint64_t seed) : x(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform_pm1() { // uniform on [-1, 1)
        return double(next() >> 11) * 0x1.0p-52 - 1.0;
    }
};

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

SymbolSpec parse_symbol_spec(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    require_keys(obj, where, {"kind", "r", "kappa", "s"});
    SymbolSpec spec;
    spec.kind = obj.at("kind").get<std::string>();
    if (spec.kind != "korobov" && spec.kind != "mask" && spec.kind != "exponent")
        throw ConfigError(where + ".kind must be korobov, mask or exponent");
    if (obj.contains("r")) spec.r = obj.at("r").get<double>();
    if (obj.contains("kappa")) spec.kappa = obj.at("kappa").get<double>();
    if (obj.contains("s")) spec.s = obj.at("s").get<double>();
    if (spec.kind != "exponent" && spec.r <= 1.0)
        throw ConfigError(where + ".r must be > 1");
    if (spec.kind == "exponent" && spec.s <= 0.0)
        throw ConfigError(where + ".s must be > 0");
    return spec;
}

double row_ratio(const RateRow& row) {
    return row.reference != 0.0 ? row.error / row.reference
                                : std::numeric_limits<double>::quiet_NaN();
}

// least squares for y = a - rate * log(t)
void fit_rate(const std::vector<double>& t, const std::vector<double>& y,
              double& rate, double& residual) {
    const Eigen::Index n = Eigen::Index(t.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = -std::log(t[std::size_t(i)]);
        b(i) = y[std::size_t(i)];
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    rate = c(1);
    residual = std::sqrt((A * c - b).squaredNorm() / double(n));
}

void validate_common(const ExperimentConfig& config) {
    if (config.m_list.size() < 3)
        throw ConfigError("m_list needs at least 3 entries for a rate fit");
    for (std::size_t i = 0; i < config.m_list.size(); ++i) {
        if (config.m_list[i] < (config.d == 1 ? 1 : 0))
            throw ConfigError("m_list entries out of range");
        if (i > 0 && config.m_list[i] <= config.m_list[i - 1])
            throw ConfigError("m_list must be strictly increasing");
    }
}

SpectralCoefficients config_g(const ExperimentConfig& config) {
    const Index default_degree =
        2 * Index(*std::max_element(config.m_list.begin(), config.m_list.end()));
    return gen_g(config.g, config.d, config.p, std::max<Index>(default_degree, 1));
}

} // namespace

Symbol make_symbol(const SymbolSpec& spec) {
    if (spec.kind == "korobov") return make_korobov(spec.r);
    if (spec.kind == "mask") return make_mask(spec.r, spec.kappa);
    if (spec.kind == "exponent") return make_exponent(spec.s);
    throw ConfigError("unknown symbol kind '" + spec.kind + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        if (!root.is_object()) throw ConfigError("config root must be an object");
        require_keys(root, "config",
                     {"lambda", "beta", "d", "p", "m_list", "g", "tolerances", "output"});
        ExperimentConfig config;
        if (!root.contains("lambda")) throw ConfigError("config requires 'lambda'");
        config.lambda = parse_symbol_spec(root.at("lambda"), "lambda");
        if (root.contains("beta")) {
            config.beta = parse_symbol_spec(root.at("beta"), "beta");
            config.beta_set = true;
        } else {
            config.beta = config.lambda;
        }
        if (root.contains("d")) config.d = root.at("d").get<int>();
        if (config.d < 1) throw ConfigError("d must be >= 1");
        if (root.contains("p")) {
            const json& p = root.at("p");
            if (p.is_string()) {
                if (p.get<std::string>() != "inf")
                    throw ConfigError("p must be a number >= 1 or \"inf\"");
                config.p = kInfNorm;
            } else {
                config.p = p.get<double>();
                if (config.p < 1.0) throw ConfigError("p must be >= 1");
            }
        }
        if (!root.contains("m_list")) throw ConfigError("config requires 'm_list'");
        config.m_list = root.at("m_list").get<std::vector<int>>();
        if (root.contains("g")) {
            const json& g = root.at("g");
            require_keys(g, "g", {"seed", "max_degree", "coeffs"});
            if (g.contains("coeffs")) {
                if (g.contains("seed") || g.contains("max_degree"))
                    throw ConfigError("g: give either coeffs or seed/max_degree, not both");
                config.g.has_explicit = true;
                for (const auto& entry : g.at("coeffs")) {
                    const auto row = entry.get<std::vector<double>>();
                    if (int(row.size()) != config.d + 2)
                        throw ConfigError("g.coeffs rows must be [j_1 .. j_d, re, im]");
                    MultiIndex j(std::size_t(config.d));
                    for (int l = 0; l < config.d; ++l) j[std::size_t(l)] = Index(row[std::size_t(l)]);
                    config.g.explicit_coeffs[j] =
                        Complex(row[std::size_t(config.d)], row[std::size_t(config.d) + 1]);
                }
            } else {
                if (g.contains("seed")) config.g.seed = g.at("seed").get<std::uint64_t>();
                if (g.contains("max_degree")) {
                    config.g.max_degree = g.at("max_degree").get<Index>();
                    if (config.g.max_degree < 1) throw ConfigError("g.max_degree must be >= 1");
                }
            }
        }
        if (root.contains("tolerances")) {
            const json& t = root.at("tolerances");
            require_keys(t, "tolerances", {"tail_tol", "alias_rel_tol"});
            if (t.contains("tail_tol")) config.tail_tol = t.at("tail_tol").get<double>();
            if (t.contains("alias_rel_tol"))
                config.alias_rel_tol = t.at("alias_rel_tol").get<double>();
            if (config.tail_tol <= 0.0 || config.alias_rel_tol <= 0.0)
                throw ConfigError("tolerances must be positive");
        }
        if (root.contains("output")) config.output = root.at("output").get<std::string>();
        validate_common(config);
        return config;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config value: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

SpectralCoefficients gen_g(const GSpec& spec, int d, double p, Index default_degree) {
    if (spec.has_explicit) {
        SpectralCoefficients g(d, spec.explicit_coeffs);
        const double norm = lp_norm(g, p);
        if (norm == 0.0) throw ConfigError("explicit g is zero");
        CoeffMap scaled;
        for (const auto& [j, v] : g.coeffs()) scaled[j] = v / norm;
        return SpectralCoefficients(d, g.support_bound(), std::move(scaled));
    }
    const Index deg = spec.max_degree >= 1 ? spec.max_degree : default_degree;
    for (std::uint64_t seed = spec.seed;; ++seed) {
        SplitMix64 rng(seed);
        CoeffMap map;
        MultiIndex j(std::size_t(d), -deg);
        while (true) {
            // draw on the lexicographically nonnegative half; mirror the rest
            int cmp = 0;
            for (Index jl : j)
                if (jl != 0) { cmp = jl > 0 ? 1 : -1; break; }
            if (cmp == 0) {
                map[j] = Complex(rng.uniform_pm1(), 0.0);
            } else if (cmp > 0) {
                const double re = rng.uniform_pm1();
                const double im = rng.uniform_pm1();
                map[j] = Complex(re, im);
            }
            int l = d - 1;
            while (l >= 0 && ++j[std::size_t(l)] > deg) {
                j[std::size_t(l)] = -deg;
                --l;
            }
            if (l < 0) break;
        }
        SpectralCoefficients g(d, std::vector<Index>(std::size_t(d), deg), std::move(map));
        const double norm = lp_norm(g, p);
        if (norm == 0.0) continue; // degenerate draw: reseed with seed+1
        CoeffMap scaled;
        for (const auto& [ji, v] : g.coeffs()) scaled[ji] = v / norm;
        return SpectralCoefficients(d, g.support_bound(), std::move(scaled));
    }
}

RateFitResult run_univariate(const ExperimentConfig& config) {
    if (config.d != 1) throw ConfigError("run_univariate requires d = 1");
    validate_common(config);
    const Symbol lambda = make_symbol(config.lambda);
    const Symbol beta = make_symbol(config.beta_set ? config.beta : config.lambda);
    const CutoffTheta theta = make_theta();
    const HLambdaFunction F(config_g(config), lambda);

    RateFitResult result;
    result.log_log_correction_used = config.lambda.kappa != 0.0;
    std::vector<double> t, y;
    for (int m : config.m_list) {
        RateRow row;
        row.m = m;
        row.n = std::uint64_t(2 * m + 1);
        row.error = approx_error(F, beta, theta, m, config.p, config.alias_rel_tol);
        row.reference = epsilon_m(lambda, beta, m, config.tail_tol);
        result.table.push_back(row);
        t.push_back(double(m));
        y.push_back(std::log(row.error) +
                    config.lambda.kappa * std::log(std::log(std::max(double(m), 2.0))));
    }
    fit_rate(t, y, result.fitted_rate, result.residual);
    return result;
}

RateFitResult run_multivariate(const ExperimentConfig& config) {
    if (config.d < 2) throw ConfigError("run_multivariate requires d >= 2");
    validate_common(config);
    if (config.beta_set)
        throw ConfigError("the multivariate construction fixes beta = lambda");
    const Symbol lambda = make_symbol(config.lambda);
    const CutoffTheta theta = make_theta();
    const SpectralCoefficients g = config_g(config);
    const SpectralCoefficients f = lambda_weight(g, lambda);
    const double correction =
        config.lambda.r * (config.d - 1) - config.lambda.kappa;

    RateFitResult result;
    result.log_log_correction_used = correction != 0.0;
    std::vector<double> t, y;
    for (int m : config.m_list) {
        RateRow row;
        row.m = m;
        row.n = smolyak_grid(config.d, m).sum_cardinality;
        const SpectralCoefficients P = P_op(g, lambda, theta, m);
        row.error = lp_norm(combine(f, P, -1.0), config.p);
        row.reference = std::pow(2.0, -config.lambda.r * m) *
                        std::pow(std::max(double(m), 1.0),
                                 double(config.d) - 1.0 - config.lambda.kappa);
        result.table.push_back(row);
        t.push_back(double(row.n));
        y.push_back(std::log(row.error) -
                    correction * std::log(std::log(double(row.n))));
    }
    fit_rate(t, y, result.fitted_rate, result.residual);
    return result;
}

std::string to_csv(const RateFitResult& result) {
    std::string out = "m,n,error,reference,ratio\n";
    char buf[160];
    for (const RateRow& row : result.table) {
        std::snprintf(buf, sizeof buf, "%d,%llu,%.12e,%.12e,%.12e\n", row.m,
                      static_cast<unsigned long long>(row.n), row.error, row.reference,
                      row_ratio(row));
        out += buf;
    }
    return out;
}

std::string to_json(const RateFitResult& result) {
    ordered_json j;
    j["fitted_rate"] = result.fitted_rate;
    j["log_log_correction_used"] = result.log_log_correction_used;
    j["residual"] = result.residual;
    j["table"] = ordered_json::array();
    for (const RateRow& row : result.table) {
        ordered_json r;
        r["m"] = row.m;
        r["n"] = row.n;
        r["error"] = row.error;
        r["reference"] = row.reference;
        r["ratio"] = row_ratio(row);
        j["table"].push_back(r);
    }
    return j.dump(2) + "\n";
}

void emit(const RateFitResult& result, const std::string& path_base) {
    for (const char* ext : {".csv", ".json"}) {
        const std::string path = path_base + ext;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        out << (ext[1] == 'c' ? to_csv(result) : to_json(result));
    }
}

} // namespace tta
