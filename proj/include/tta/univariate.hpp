#ifndef TTA_UNIVARIATE_HPP
#define TTA_UNIVARIATE_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "tta/spectral.hpp"
#include "tta/symbols.hpp"

namespace tta {

/// A member f of the convolution class: f = phi_lambda * g, entered through
/// its generator g. The cached spectrum satisfies f_hat(k) = lambda(k) g_hat(k);
/// the class norm of f is ||g||_p.
struct HLambdaFunction {
    HLambdaFunction(SpectralCoefficients generator, Symbol lambda);

    SpectralCoefficients g;
    Symbol lambda;
    SpectralCoefficients f;
};

/// Linear combination of 2m+1 translates of phi_beta on the equispaced
/// center lattice x_k = 2*pi*k/(2m+1). Centers are always rederived from m.
struct TranslateApproximant {
    Symbol generator; // beta
    int m = 0;
    std::vector<double> weights;      // length 2m+1
    std::uint64_t truncation = 0;     // N: sum_{|j|>N} |beta(j)| < tail_tol
    double tail_tol = 0.0;

    std::vector<double> centers() const;
};

/// k_m: the unique residue in [-m, m] with (k - k_m) divisible by 2m+1.
Index nearest_residue(Index k, int m);

/// H_m spectrum: theta(k/m) * lambda(k)/beta(k) for |k| <= m-1.
SpectralCoefficients build_Hm(const Symbol& lambda, const Symbol& beta,
                              const CutoffTheta& theta, int m);

/// V_m(g) = H_m * g: coefficients theta(k/m) G(k) g_hat(k).
SpectralCoefficients apply_Vm(const HLambdaFunction& F, const Symbol& beta,
                              const CutoffTheta& theta, int m);

/// Fourier multiplier sigma_m(h; f): multiply f_hat(k) by h(k/m).
SpectralCoefficients sigma_m(const std::function<double(double)>& h,
                             const SpectralCoefficients& f, int m);
SpectralCoefficients sigma_m(const Symbol& h, const SpectralCoefficients& f, int m);
SpectralCoefficients sigma_m(const CutoffTheta& h, const SpectralCoefficients& f, int m);

/// Truncation order N for phi_beta so that sum_{|j| > N} |beta(j)| < tail_tol.
std::uint64_t generator_truncation(const Symbol& beta, double tail_tol);

/// phi_beta^{(N)}(y) = sum_{|j| <= N} beta(j) e^{ijy}. For the Korobov
/// symbol with r = 2 and very large N the partial sum is evaluated through
/// the exact closed form of the full series (the difference is below the
/// certificate); otherwise by direct summation.
double generator_eval(const Symbol& beta, std::uint64_t N, double y);

/// Q_{m,beta}(f) as translate weights: c_k = V_m(g)(x_k) / (2m+1).
TranslateApproximant assemble_Q(const HLambdaFunction& F, const Symbol& beta,
                                const CutoffTheta& theta, int m, double tail_tol);

double eval_approximant(const TranslateApproximant& A, double x);

/// Spectrum of Q_{m,beta}(f) from the aliasing identity
/// Q_hat(k) = gamma(k) g_hat(k_m), gamma(k) = theta(k_m/m) G(k_m) beta(k),
/// assembled for alias blocks |j| <= J_max (block j covers
/// k in [j(2m+1)-m, j(2m+1)+m]).
SpectralCoefficients spectral_oracle_Q(const HLambdaFunction& F, const Symbol& beta,
                                       const CutoffTheta& theta, int m, int J_max);

/// Point value of Q_{m,beta}(f) summed over all alias blocks: exact closed
/// form for Korobov r = 2, otherwise truncated with the dropped tail
/// certified below abs_tol.
double oracle_evaluate(const HLambdaFunction& F, const Symbol& beta,
                       const CutoffTheta& theta, int m, double x,
                       double abs_tol = 1e-12);

/// ||f - Q_{m,beta}(f)||_p with the alias depth raised until the certified
/// dropped tail is below rel_tol times the running error estimate.
double approx_error(const HLambdaFunction& F, const Symbol& beta,
                    const CutoffTheta& theta, int m, double p,
                    double rel_tol = 1e-3);

/// Text form: header `m N beta_kind params`, then `k center weight` lines.
std::string approximant_to_text(const TranslateApproximant& A);
TranslateApproximant approximant_from_text(const std::string& text);

} // namespace tta

#endif
