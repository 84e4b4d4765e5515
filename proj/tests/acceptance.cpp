// End-to-end acceptance checks. Each numbered check prints one PASS/FAIL
// line; the process exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "tta/experiments.hpp"
#include "tta/multivariate.hpp"
#include "tta/spectral.hpp"
#include "tta/symbols.hpp"
#include "tta/univariate.hpp"

using namespace tta;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("criterion %2d: %s - %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpectralCoefficients seeded_g(std::uint64_t seed, Index degree, int d, double p) {
    GSpec spec;
    spec.seed = seed;
    spec.max_degree = degree;
    return gen_g(spec, d, p, degree);
}

// ---- 1: two construction paths agree pointwise --------------------------
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const Symbol k2 = make_korobov(2.0);
    const CutoffTheta th = make_theta();
    double worst = 0.0;
    for (int m : {4, 8, 16}) {
        const HLambdaFunction F(seeded_g(0, 3 * m, 1, 2.0), k2);
        const TranslateApproximant A = assemble_Q(F, k2, th, m, 1e-10);
        for (int i = 0; i < 1024; ++i) {
            const double x = 2.0 * std::numbers::pi * i / 1024.0;
            worst = std::max(worst,
                             std::abs(eval_approximant(A, x) -
                                      oracle_evaluate(F, k2, th, m, x)));
        }
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "weights-and-translates vs alias-series paths agree: max diff %.2e "
                  "(< 1e-8), %.1f s (< 30 s)",
                  worst, dt);
    report(1, worst < 1e-8 && dt < 30.0, buf);
}

// ---- 2: exact reproduction inside the inner band ------------------------
void criterion_2() {
    const Symbol k2 = make_korobov(2.0);
    const Symbol e1 = make_exponent(1.0);
    const CutoffTheta th = make_theta();
    double worst = 0.0;
    for (int m : {8, 16, 32}) {
        const HLambdaFunction F(seeded_g(1, m / 2, 1, 2.0), k2);
        for (const Symbol* beta : {&k2, &e1}) {
            const SpectralCoefficients Q = spectral_oracle_Q(F, *beta, th, m, 2);
            for (Index k = -m / 2; k <= m / 2; ++k)
                worst = std::max(worst, std::abs(F.f.coeff1(k) - Q.coeff1(k)));
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "band-limited inputs reproduced inside |k| <= m/2: max coeff diff "
                  "%.2e (< 1e-12)",
                  worst);
    report(2, worst < 1e-12, buf);
}

// ---- 3: constant generator, hand-computed alias value -------------------
void criterion_3() {
    const Symbol k2 = make_korobov(2.0);
    CoeffMap m;
    m[{0}] = Complex(1.0, 0.0);
    const HLambdaFunction F(SpectralCoefficients(1, std::move(m)), k2);
    const double err = approx_error(F, k2, make_theta(), 2, kInfNorm, 1e-7);
    const double want = std::numbers::pi * std::numbers::pi / 75.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "constant-generator sup error %.9f vs pi^2/75 = %.9f (|diff| < 1e-6)",
                  err, want);
    report(3, std::abs(err - want) < 1e-6, buf);
}

// ---- 4/5: univariate rate sweeps ----------------------------------------
void rate_criterion(int id, const SymbolSpec& lambda, const SymbolSpec* beta,
                    double budget_s) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (double p : {1.0, 2.0, kInfNorm}) {
        ExperimentConfig config;
        config.lambda = lambda;
        if (beta) {
            config.beta = *beta;
            config.beta_set = true;
        }
        config.d = 1;
        config.p = p;
        config.m_list = {16, 32, 64, 128, 256};
        config.g.seed = 0;
        config.alias_rel_tol = 1e-4;
        const RateFitResult r = run_univariate(config);
        double lo = 1e300, hi = 0.0;
        for (const RateRow& row : r.table) {
            const double scaled = row.error * double(row.m) * double(row.m);
            lo = std::min(lo, scaled);
            hi = std::max(hi, scaled);
        }
        const bool fit_ok = r.fitted_rate >= 1.8 && r.fitted_rate <= 2.2;
        const bool band_ok = hi / lo <= 4.0;
        ok = ok && fit_ok && band_ok;
        char buf[96];
        std::snprintf(buf, sizeof buf, "[p=%s rate %.3f band %.2f] ",
                      p == kInfNorm ? "inf" : (p == 1.0 ? "1" : "2"), r.fitted_rate,
                      hi / lo);
        detail += buf;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < budget_s;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f s (< %.0f s)", dt, budget_s);
    report(id, ok,
           std::string(id == 4 ? "power-class rate: " : "exponent-generator rate: ") +
               detail + buf);
}

// ---- 6: tail functional closed form --------------------------------------
void criterion_6() {
    double worst = 0.0;
    for (double r : {1.5, 2.0, 3.0}) {
        const Symbol k = make_korobov(r);
        for (int m : {1, 4, 16}) {
            const double want = 2.0 * std::pow(double(m), -r) * (1.0 / (r - 1.0) + r + 1.0);
            worst = std::max(worst, std::abs(J_m(k, m, 1e-12) / want - 1.0));
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "tail functional matches 2 m^-r (1/(r-1)+(r+1)): max rel diff %.2e "
                  "(< 1e-6)",
                  worst);
    report(6, worst < 1e-6, buf);
}

// ---- 7: two-dimensional telescoping --------------------------------------
void criterion_7() {
    const Symbol k2 = make_korobov(2.0);
    const CutoffTheta th = make_theta();
    const SpectralCoefficients g = seeded_g(0, 8, 2, 2.0);
    double worst = 0.0;
    for (Index a = 0; a <= 4; ++a) {
        for (Index b = 0; a + b <= 4; ++b) {
            SpectralCoefficients sum(2, CoeffMap{});
            for (Index s = 0; s <= a; ++s)
                for (Index t = 0; t <= b; ++t)
                    sum = combine(sum, q_op(g, k2, th, {s, t}, 1e-12), 1.0);
            const SpectralCoefficients direct =
                Q_tensor(g, k2, th, {Index(1) << a, Index(1) << b}, 1e-12);
            const SpectralCoefficients diff = combine(sum, direct, -1.0);
            for (const auto& [j, v] : diff.coeffs()) worst = std::max(worst, std::abs(v));
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "difference-operator sums telescope to the tensor operator: max "
                  "coeff diff %.2e (< 1e-10)",
                  worst);
    report(7, worst < 1e-10, buf);
}

// ---- 8: sparse grid cardinalities ----------------------------------------
void criterion_8() {
    const SmolyakGrid a = smolyak_grid(2, 1);
    const SmolyakGrid b = smolyak_grid(1, 0);
    double lo = 1e300, hi = 0.0;
    for (int m = 2; m <= 10; ++m) {
        const double ratio = double(smolyak_grid(2, m).sum_cardinality) /
                             (std::pow(2.0, m) * double(m));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    const bool ok = a.sum_cardinality == 39 && a.distinct_cardinality == 33 &&
                    b.sum_cardinality == 3 && b.distinct_cardinality == 3 &&
                    hi / lo <= 4.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "cardinalities 39/33 and 3/3; growth n/(2^m m) band %.2f (<= 4)",
                  hi / lo);
    report(8, ok, buf);
}

// ---- 9: two-dimensional sparse-operator rate ------------------------------
void criterion_9() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig config;
    config.lambda = {"korobov", 2.0, 0.0, 1.0};
    config.d = 2;
    config.p = 2.0;
    config.m_list = {3, 4, 5, 6, 7};
    config.g.seed = 0;
    const RateFitResult r = run_multivariate(config);
    double lo = 1e300, hi = 0.0;
    bool decreasing = true;
    for (std::size_t i = 0; i < r.table.size(); ++i) {
        const RateRow& row = r.table[i];
        const double scaled = row.error * std::pow(4.0, row.m) / double(row.m);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
        if (i > 0 && row.error >= r.table[i - 1].error) decreasing = false;
    }
    const double dt = seconds_since(t0);
    const bool ok = hi / lo <= 6.0 && r.fitted_rate >= 1.6 && r.fitted_rate <= 2.4 &&
                    decreasing && dt < 180.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "sparse-operator sweep: scaled-error band %.2f (<= 6), rate %.3f "
                  "(in [1.6, 2.4]), errors decreasing: %s, %.1f s (< 180 s)",
                  hi / lo, r.fitted_rate, decreasing ? "yes" : "no", dt);
    report(9, ok, buf);
}

// ---- 10: multiplier cutoff identity ----------------------------------------
void criterion_10() {
    const CutoffTheta th = make_theta();
    const SpectralCoefficients f = seeded_g(2, 4, 1, 2.0); // band |k| <= 4 = m/2
    const SpectralCoefficients same = sigma_m(th, f, 8);
    bool ok = same.size() == f.size();
    for (const auto& [j, v] : f.coeffs()) ok = ok && same.coeff(j) == v;

    CoeffMap hi;
    hi[{8}] = Complex(0.5, 0.25);
    hi[{-8}] = Complex(0.5, -0.25);
    hi[{13}] = Complex(0.1, 0.0);
    hi[{-13}] = Complex(0.1, 0.0);
    const SpectralCoefficients killed = sigma_m(th, SpectralCoefficients(1, std::move(hi)), 8);
    ok = ok && killed.size() == 0;
    report(10, ok,
           "smoothed projector: exact identity below m/2, annihilates |k| >= m");
}

// ---- 11: deterministic emission ---------------------------------------------
void criterion_11() {
    const std::string config_text = R"({
        "lambda": {"kind": "korobov", "r": 2.0},
        "d": 1, "p": 2.0, "m_list": [8, 16, 32],
        "g": {"seed": 7, "max_degree": 16}
    })";
    const ExperimentConfig c1 = parse_config(config_text);
    const ExperimentConfig c2 = parse_config(config_text);
    const std::string csv1 = to_csv(run_univariate(c1));
    const std::string csv2 = to_csv(run_univariate(c2));
    report(11, !csv1.empty() && csv1 == csv2,
           "repeated sweeps with the same config emit byte-identical CSV");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    rate_criterion(4, {"korobov", 2.0, 0.0, 1.0}, nullptr, 120.0);
    const SymbolSpec mask{"mask", 2.0, 0.0, 1.0};
    const SymbolSpec expo{"exponent", 2.0, 0.0, 1.0};
    rate_criterion(5, mask, &expo, 120.0);
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
