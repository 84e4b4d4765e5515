#include "tta/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace tta {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_2pi(double u) {
    double v = std::fmod(u, 2.0 * kPi);
    if (v < 0.0) v += 2.0 * kPi;
    return v;
}

// sum_{j>=1} cos(j u) / j^2  =  pi^2/6 - pi u/2 + u^2/4  on [0, 2pi]
double bern2(double u) {
    double v = wrap_2pi(u);
    return kPi * kPi / 6.0 - kPi * v / 2.0 + v * v / 4.0;
}

// sum_{j in Z} e^{i j t} / (j + a)^2 for non-integer a, t in [0, 2pi]
Complex lerch2(double t, double a) {
    const double sa = std::sin(kPi * a);
    const Complex rot = std::exp(Complex(0.0, -a * (t - kPi)));
    const Complex bracket(kPi * std::cos(kPi * a) / (sa * sa), (t - kPi) / sa);
    return kPi * rot * bracket;
}

// sum over the full alias coset {k_m + jM : j in Z} of beta(k) e^{i k x},
// exact for the Korobov symbol with r = 2
Complex coset_closed_korobov2(Index k_m, Index M, double x) {
    const double Md = static_cast<double>(M);
    if (k_m == 0)
        return Complex(1.0 + 2.0 / (Md * Md) * bern2(Md * x), 0.0);
    const double t = wrap_2pi(Md * x);
    const double a = static_cast<double>(k_m) / Md;
    return std::exp(Complex(0.0, static_cast<double>(k_m) * x)) * lerch2(t, a) / (Md * Md);
}

bool closed_form_coset(const Symbol& beta) {
    return beta.is_korobov() && beta.mask_r() == 2.0;
}

// A(k_m) = theta(k_m/m) * (lambda/beta)(k_m) * g_hat(k_m), index k_m + m
std::vector<Complex> alias_amplitudes(const HLambdaFunction& F, const Symbol& beta,
                                      const CutoffTheta& theta, int m) {
    if (m < 1) throw std::invalid_argument("alias amplitudes require m >= 1");
    std::vector<Complex> A(2 * m + 1, Complex(0.0, 0.0));
    for (Index k = -m; k <= m; ++k) {
        const double th = theta(static_cast<double>(k) / m);
        if (th == 0.0) continue;
        const double b = beta(static_cast<double>(k));
        if (b == 0.0)
            throw std::domain_error("generator symbol vanishes at an integer in [-m, m]");
        const Complex gk = F.g.coeff1(k);
        if (gk == Complex(0.0, 0.0)) continue;
        A[static_cast<std::size_t>(k + m)] = th * (F.lambda(static_cast<double>(k)) / b) * gk;
    }
    return A;
}

double max_abs(const std::vector<Complex>& v) {
    double r = 0.0;
    for (const auto& z : v) r = std::max(r, std::abs(z));
    return r;
}

std::vector<double> fold_to_grid(const std::vector<Complex>& bins) {
    const int G = static_cast<int>(bins.size());
    Eigen::FFT<double> fft;
    std::vector<Complex> freq(bins), time(G);
    fft.inv(time, freq);
    std::vector<double> out(G);
    for (int i = 0; i < G; ++i) out[i] = time[i].real() * G;
    return out;
}

int error_grid_size(int m, Index deg) {
    Index want = 8 * std::max<Index>(m, deg);
    int G = 4096;
    while (G < want && G < 65536) G *= 2;
    return G;
}

double riemann_norm(const std::vector<double>& vals, double p) {
    const std::size_t n = vals.size();
    if (p == kInfNorm) {
        double mx = 0.0;
        for (double v : vals) mx = std::max(mx, std::abs(v));
        return mx;
    }
    double s = 0.0;
    for (double v : vals) s += std::pow(std::abs(v), p);
    return std::pow(s / static_cast<double>(n), 1.0 / p);
}

// golden-section maximization of |e| on [lo, hi]
double golden_max(const std::function<double(double)>& e, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = std::abs(e(c)), fd = std::abs(e(d));
    for (int it = 0; it < 60; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = std::abs(e(c));
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = std::abs(e(d));
        }
    }
    return std::max(fc, fd);
}

} // namespace

HLambdaFunction::HLambdaFunction(SpectralCoefficients generator, Symbol lam)
    : g(std::move(generator)), lambda(std::move(lam)), f(1, CoeffMap{}) {
    if (g.dim() != 1)
        throw std::invalid_argument("HLambdaFunction expects a univariate generator");
    CoeffMap fm;
    for (const auto& [j, v] : g.coeffs()) {
        const Complex fv = lambda(static_cast<double>(j[0])) * v;
        if (fv != Complex(0.0, 0.0)) fm[j] = fv;
    }
    f = SpectralCoefficients(1, g.support_bound(), std::move(fm));
}

std::vector<double> TranslateApproximant::centers() const {
    const int M = 2 * m + 1;
    std::vector<double> c(static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k) c[static_cast<std::size_t>(k)] = 2.0 * kPi * k / M;
    return c;
}

Index nearest_residue(Index k, int m) {
    const Index M = 2 * static_cast<Index>(m) + 1;
    Index r = (k + m) % M;
    if (r < 0) r += M;
    return r - m;
}

SpectralCoefficients build_Hm(const Symbol& lambda, const Symbol& beta,
                              const CutoffTheta& theta, int m) {
    if (m < 1) throw std::invalid_argument("build_Hm requires m >= 1");
    CoeffMap c;
    for (Index k = -(m - 1); k <= m - 1; ++k) {
        const double b = beta(static_cast<double>(k));
        if (b == 0.0)
            throw std::domain_error("generator symbol vanishes at an integer in (-m, m)");
        const double v = theta(static_cast<double>(k) / m) * lambda(static_cast<double>(k)) / b;
        if (v != 0.0) c[{k}] = Complex(v, 0.0);
    }
    return SpectralCoefficients(1, {static_cast<Index>(m - 1)}, std::move(c));
}

SpectralCoefficients apply_Vm(const HLambdaFunction& F, const Symbol& beta,
                              const CutoffTheta& theta, int m) {
    return convolve(build_Hm(F.lambda, beta, theta, m), F.g);
}

SpectralCoefficients sigma_m(const std::function<double(double)>& h,
                             const SpectralCoefficients& f, int m) {
    if (f.dim() != 1) throw std::invalid_argument("sigma_m is univariate");
    if (m < 1) throw std::invalid_argument("sigma_m requires m >= 1");
    CoeffMap c;
    for (const auto& [j, v] : f.coeffs()) {
        const Complex w = h(static_cast<double>(j[0]) / m) * v;
        if (w != Complex(0.0, 0.0)) c[j] = w;
    }
    return SpectralCoefficients(1, f.support_bound(), std::move(c));
}

SpectralCoefficients sigma_m(const Symbol& h, const SpectralCoefficients& f, int m) {
    return sigma_m([&h](double t) { return h(t); }, f, m);
}

SpectralCoefficients sigma_m(const CutoffTheta& h, const SpectralCoefficients& f, int m) {
    return sigma_m([&h](double t) { return h(t); }, f, m);
}

std::uint64_t generator_truncation(const Symbol& beta, double tail_tol) {
    if (tail_tol <= 0.0) throw std::invalid_argument("tail_tol must be positive");
    if (!beta.has_coeff_tail_bound())
        throw std::invalid_argument("generator symbol has no coefficient tail bound");
    if (beta.coeff_tail_l1(0.0) < tail_tol) return 0;
    double hi = 1.0;
    while (beta.coeff_tail_l1(hi) >= tail_tol) {
        hi *= 2.0;
        if (hi > 1e18)
            throw std::runtime_error("truncation order exceeds representable range");
    }
    double lo = hi / 2.0;
    for (int it = 0; it < 80 && hi - lo > 0.5; ++it) {
        const double mid = std::floor((lo + hi) / 2.0);
        (beta.coeff_tail_l1(mid) < tail_tol ? hi : lo) = mid;
    }
    return static_cast<std::uint64_t>(std::ceil(hi));
}

double generator_eval(const Symbol& beta, std::uint64_t N, double y) {
    constexpr std::uint64_t kDirectCap = 20'000'000;
    if (closed_form_coset(beta) && N > kDirectCap)
        return 1.0 + 2.0 * bern2(y); // exceeds the partial sum by less than the tail
    if (N > kDirectCap)
        throw std::runtime_error("truncation order too large for direct summation");
    double s = beta(0.0);
    for (std::uint64_t j = 1; j <= N; ++j)
        s += 2.0 * beta(static_cast<double>(j)) * std::cos(static_cast<double>(j) * y);
    return s;
}

TranslateApproximant assemble_Q(const HLambdaFunction& F, const Symbol& beta,
                                const CutoffTheta& theta, int m, double tail_tol) {
    const SpectralCoefficients V = apply_Vm(F, beta, theta, m);
    const int M = 2 * m + 1;
    const Eigen::VectorXd vals = sample_dense(V, {M});
    TranslateApproximant A;
    A.generator = beta;
    A.m = m;
    A.weights.resize(static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k) A.weights[static_cast<std::size_t>(k)] = vals[k] / M;
    A.truncation = generator_truncation(beta, tail_tol);
    A.tail_tol = tail_tol;
    return A;
}

double eval_approximant(const TranslateApproximant& A, double x) {
    const auto cs = A.centers();
    double s = 0.0;
    for (std::size_t k = 0; k < cs.size(); ++k)
        s += A.weights[k] * generator_eval(A.generator, A.truncation, x - cs[k]);
    return s;
}

SpectralCoefficients spectral_oracle_Q(const HLambdaFunction& F, const Symbol& beta,
                                       const CutoffTheta& theta, int m, int J_max) {
    if (J_max < 0) throw std::invalid_argument("J_max must be >= 0");
    const auto A = alias_amplitudes(F, beta, theta, m);
    const Index M = 2 * static_cast<Index>(m) + 1;
    CoeffMap c;
    for (Index j = -J_max; j <= J_max; ++j) {
        for (Index km = -m; km <= m; ++km) {
            const Complex a = A[static_cast<std::size_t>(km + m)];
            if (a == Complex(0.0, 0.0)) continue;
            const Index k = j * M + km;
            const Complex v = beta(static_cast<double>(k)) * a;
            if (v != Complex(0.0, 0.0)) c[{k}] = v;
        }
    }
    return SpectralCoefficients(1, {static_cast<Index>(J_max) * M + m}, std::move(c));
}

double oracle_evaluate(const HLambdaFunction& F, const Symbol& beta,
                       const CutoffTheta& theta, int m, double x, double abs_tol) {
    const auto A = alias_amplitudes(F, beta, theta, m);
    const Index M = 2 * static_cast<Index>(m) + 1;
    if (closed_form_coset(beta)) {
        Complex s(0.0, 0.0);
        for (Index km = -m; km <= m; ++km) {
            const Complex a = A[static_cast<std::size_t>(km + m)];
            if (a != Complex(0.0, 0.0)) s += a * coset_closed_korobov2(km, M, x);
        }
        return s.real();
    }
    if (!beta.has_coeff_tail_bound())
        throw std::invalid_argument("generator symbol has no coefficient tail bound");
    const double mA = max_abs(A);
    Index J = 4;
    while (mA * beta.coeff_tail_l1(static_cast<double>(J * M + m)) >= abs_tol) {
        J *= 2;
        if (J * M > 100'000'000)
            throw std::runtime_error("alias depth for requested tolerance is impractical");
    }
    Complex s(0.0, 0.0);
    for (Index j = -J; j <= J; ++j) {
        for (Index km = -m; km <= m; ++km) {
            const Complex a = A[static_cast<std::size_t>(km + m)];
            if (a == Complex(0.0, 0.0)) continue;
            const Index k = j * M + km;
            s += a * beta(static_cast<double>(k)) *
                 std::exp(Complex(0.0, static_cast<double>(k) * x));
        }
    }
    return s.real();
}

double approx_error(const HLambdaFunction& F, const Symbol& beta,
                    const CutoffTheta& theta, int m, double p, double rel_tol) {
    if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
    if (rel_tol <= 0.0) throw std::invalid_argument("rel_tol must be positive");
    const auto A = alias_amplitudes(F, beta, theta, m);
    const Index M = 2 * static_cast<Index>(m) + 1;
    const Index deg = F.f.max_support();
    const double mA = max_abs(A);

    if (p == 2.0) {
        // Parseval: in-band block, then alias blocks until the l2 tail
        // bound drops below rel_tol of the running norm.
        double S = 0.0;
        for (Index k = -m; k <= m; ++k) {
            const Complex e = F.f.coeff1(k) - beta(static_cast<double>(k)) *
                                                  A[static_cast<std::size_t>(k + m)];
            S += std::norm(e);
        }
        if (!beta.has_coeff_tail_bound())
            throw std::invalid_argument("generator symbol has no coefficient tail bound");
        for (Index j = 1;; ++j) {
            for (int sign : {-1, 1}) {
                for (Index km = -m; km <= m; ++km) {
                    const Index k = sign * j * M + km;
                    const Complex e = F.f.coeff1(k) -
                                      beta(static_cast<double>(k)) *
                                          A[static_cast<std::size_t>(km + m)];
                    S += std::norm(e);
                }
            }
            if (j * M - m > deg) {
                const double tail2 =
                    mA * mA * beta.coeff_tail_l2sq(static_cast<double>(j * M + m));
                if (tail2 < rel_tol * rel_tol * S || S == 0.0) break;
            }
            if (j * M > 100'000'000)
                throw std::runtime_error("alias depth for requested tolerance is impractical");
        }
        return std::sqrt(S);
    }

    const int G = error_grid_size(m, deg);
    const Eigen::VectorXd fvals = sample_dense(F.f, {G});
    std::vector<double> evals(static_cast<std::size_t>(G));
    double qtol = 0.0; // pointwise tolerance used for Q values (closed form: 0)

    if (closed_form_coset(beta)) {
        for (int i = 0; i < G; ++i) {
            const double x = 2.0 * kPi * i / G;
            evals[static_cast<std::size_t>(i)] =
                fvals[i] - oracle_evaluate(F, beta, theta, m, x);
        }
    } else {
        if (!beta.has_coeff_tail_bound())
            throw std::invalid_argument("generator symbol has no coefficient tail bound");
        // stream alias blocks into folded frequency bins, doubling the depth
        // until the dropped l1 tail is certified below rel_tol of the norm
        std::vector<Complex> bins(static_cast<std::size_t>(G), Complex(0.0, 0.0));
        for (const auto& [ji, v] : F.f.coeffs()) {
            Index b = ji[0] % G;
            if (b < 0) b += G;
            bins[static_cast<std::size_t>(b)] += v;
        }
        Index done = -1; // blocks |j| <= done already folded
        for (Index J = 4;; J *= 2) {
            for (Index j = -J; j <= J; ++j) {
                if (std::llabs(j) <= done) continue;
                for (Index km = -m; km <= m; ++km) {
                    const Complex a = A[static_cast<std::size_t>(km + m)];
                    if (a == Complex(0.0, 0.0)) continue;
                    const Index k = j * M + km;
                    Index b = k % G;
                    if (b < 0) b += G;
                    bins[static_cast<std::size_t>(b)] -=
                        a * beta(static_cast<double>(k));
                }
            }
            done = J;
            evals = fold_to_grid(bins);
            const double est = riemann_norm(evals, p);
            const double tail = mA * beta.coeff_tail_l1(static_cast<double>(J * M + m));
            if (tail < rel_tol * est || est == 0.0) {
                qtol = tail;
                break;
            }
            if (J * M > 100'000'000)
                throw std::runtime_error("alias depth for requested tolerance is impractical");
        }
    }

    if (p != kInfNorm) return riemann_norm(evals, p);

    int best = 0;
    for (int i = 1; i < G; ++i)
        if (std::abs(evals[static_cast<std::size_t>(i)]) >
            std::abs(evals[static_cast<std::size_t>(best)]))
            best = i;
    const double coarse = std::abs(evals[static_cast<std::size_t>(best)]);
    const double ptol = std::min(qtol > 0.0 ? qtol : rel_tol * coarse * 0.01,
                                 rel_tol * std::max(coarse, 1e-300) * 0.01);
    auto e_at = [&](double x) {
        return evaluate1(F.f, x) - oracle_evaluate(F, beta, theta, m, x, ptol);
    };
    const double h = 2.0 * kPi / G;
    const double x0 = 2.0 * kPi * best / G;
    return std::max(coarse, golden_max(e_at, x0 - h, x0 + h));
}

std::string approximant_to_text(const TranslateApproximant& A) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << A.m << ' ' << A.truncation << ' ';
    const Symbol& b = A.generator;
    if (b.is_korobov())
        os << "korobov " << b.mask_r();
    else if (b.kind() == SymbolKind::Mask)
        os << "mask " << b.mask_r() << ' ' << b.mask_kappa();
    else if (b.kind() == SymbolKind::Exponent)
        os << "exponent " << b.exponent_s();
    else
        os << "custom";
    os << ' ' << A.tail_tol << '\n';
    const auto cs = A.centers();
    for (std::size_t k = 0; k < cs.size(); ++k)
        os << k << ' ' << cs[k] << ' ' << A.weights[k] << '\n';
    return os.str();
}

TranslateApproximant approximant_from_text(const std::string& text) {
    std::istringstream is(text);
    TranslateApproximant A;
    std::string kind;
    if (!(is >> A.m >> A.truncation >> kind))
        throw std::runtime_error("malformed approximant header");
    if (A.m < 1) throw std::runtime_error("malformed approximant header");
    if (kind == "korobov") {
        double r;
        if (!(is >> r >> A.tail_tol)) throw std::runtime_error("malformed approximant header");
        A.generator = make_korobov(r);
    } else if (kind == "mask") {
        double r, kappa;
        if (!(is >> r >> kappa >> A.tail_tol))
            throw std::runtime_error("malformed approximant header");
        A.generator = make_mask(r, kappa);
    } else if (kind == "exponent") {
        double s;
        if (!(is >> s >> A.tail_tol)) throw std::runtime_error("malformed approximant header");
        A.generator = make_exponent(s);
    } else {
        throw std::runtime_error("generator kind '" + kind + "' cannot be reconstructed");
    }
    const int M = 2 * A.m + 1;
    A.weights.resize(static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k) {
        long long kk;
        double center, w;
        if (!(is >> kk >> center >> w) || kk != k)
            throw std::runtime_error("malformed approximant line");
        A.weights[static_cast<std::size_t>(k)] = w; // center is rederived from m
    }
    return A;
}

} // namespace tta
