#ifndef TTA_EXPERIMENTS_HPP
#define TTA_EXPERIMENTS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tta/multivariate.hpp"
#include "tta/spectral.hpp"
#include "tta/symbols.hpp"
#include "tta/univariate.hpp"

namespace tta {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SymbolSpec {
    std::string kind = "korobov"; // korobov | mask | exponent
    double r = 2.0;
    double kappa = 0.0;
    double s = 1.0;
};

Symbol make_symbol(const SymbolSpec& spec);

struct GSpec {
    std::uint64_t seed = 0;
    Index max_degree = 0; // 0: default 2 * max(m_list)
    CoeffMap explicit_coeffs;
    bool has_explicit = false;
};

struct ExperimentConfig {
    SymbolSpec lambda;
    SymbolSpec beta;   // defaults to lambda when absent
    bool beta_set = false;
    int d = 1;
    double p = 2.0;
    std::vector<int> m_list;
    GSpec g;
    double tail_tol = 1e-10;
    double alias_rel_tol = 1e-3;
    std::string output; // empty: stdout
};

/// Strict parse: unknown keys anywhere are rejected (ConfigError).
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct RateRow {
    int m = 0;
    std::uint64_t n = 0;
    double error = 0.0;
    double reference = 0.0;
};

struct RateFitResult {
    double fitted_rate = 0.0;
    bool log_log_correction_used = false;
    double residual = 0.0;
    std::vector<RateRow> table;
};

/// Random generator g with ||g||_p = 1: splitmix64-seeded uniform[-1,1]
/// real/imag parts on the lexicographically positive half of the index box,
/// mirrored conjugates, real at 0; all-zero draws reseed with seed+1.
SpectralCoefficients gen_g(const GSpec& spec, int d, double p, Index default_degree);

/// Sweep over m_list with approx_error; reference column is eps_m.
/// Fits log error = a - rate*log m - kappa*log log m (kappa pinned).
RateFitResult run_univariate(const ExperimentConfig& config);

/// Sweep over levels with P_op; n = sum_cardinality(G^d(m)); fits
/// log error = a - rate*log n + (r(d-1)-kappa)*log log n (correction pinned).
RateFitResult run_multivariate(const ExperimentConfig& config);

/// Columns exactly `m,n,error,reference,ratio`; byte-stable.
std::string to_csv(const RateFitResult& result);
std::string to_json(const RateFitResult& result);

/// Writes <path_base>.csv and <path_base>.json.
void emit(const RateFitResult& result, const std::string& path_base);

} // namespace tta

#endif
