#ifndef TTA_SYMBOLS_HPP
#define TTA_SYMBOLS_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace tta {

/// A smooth factor F entering a mask- or exponent-kind symbol, together
/// with its first two derivatives and a declared uniform bound on all three.
struct SmoothFactor {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    double bound = 1.0;

    static SmoothFactor one() {
        return {[](double) { return 1.0; },
                [](double) { return 0.0; },
                [](double) { return 0.0; },
                1.0};
    }
};

enum class SymbolKind { Mask, Exponent, Cutoff, Custom };

/// An even real symbol t -> value with analytic first and second derivatives.
///
/// The kind tag carries the decay class: Mask(r, kappa) behaves like
/// |t|^-r (log(|t|+1))^-kappa times a bounded smooth factor for |t| >= 1,
/// Exponent(s) like e^{-s|t|} times a positive nonincreasing factor.
/// Korobov symbols (|t|^-r everywhere away from 0) are Mask symbols with
/// kappa = 0 and the `korobov` flag set; for r == 2 several downstream
/// computations switch to exact closed-form summation.
class Symbol {
public:
    Symbol() = default;
    Symbol(SymbolKind kind,
           std::function<double(double)> eval,
           std::function<double(double)> d1,
           std::function<double(double)> d2,
           bool nonzero_everywhere)
        : kind_(kind), eval_(std::move(eval)), d1_(std::move(d1)),
          d2_(std::move(d2)), nonzero_everywhere_(nonzero_everywhere) {}

    double operator()(double t) const { return eval_(t); }
    double d1(double t) const { return d1_(t); }
    double d2(double t) const { return d2_(t); }

    SymbolKind kind() const { return kind_; }
    bool nonzero_everywhere() const { return nonzero_everywhere_; }

    double mask_r() const { return r_; }
    double mask_kappa() const { return kappa_; }
    double exponent_s() const { return s_; }
    double factor_bound() const { return a1_; }

    /// True for the exact Korobov symbol |t|^-r (t != 0), value 1 at 0.
    bool is_korobov() const { return korobov_; }

    bool has_coeff_tail_bound() const;
    /// Upper bound on sum_{|j| > N} |sym(j)| over integer j.
    double coeff_tail_l1(double N) const;
    /// Upper bound on sum_{|j| > N} sym(j)^2 over integer j.
    double coeff_tail_l2sq(double N) const;

    /// Upper bound on int_{|x| >= X} (|sym(x)|/m + |x sym''(x)|) dx.
    /// Throws for Custom kind (no declared envelope).
    double integral_tail_bound(double X, double m) const;

    // set by the factory functions
    double r_ = 0.0, kappa_ = 0.0, s_ = 0.0, a1_ = 1.0;
    bool korobov_ = false;

private:
    SymbolKind kind_ = SymbolKind::Custom;
    std::function<double(double)> eval_, d1_, d2_;
    bool nonzero_everywhere_ = false;
};

/// The C^2 cutoff: 1 on [-1/2, 1/2], 0 outside (-1, 1), quintic smoothstep
/// transition in between.
class CutoffTheta {
public:
    double operator()(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    /// sup |theta''| (attained inside the transition band; computed once).
    double d2_sup() const;
};

/// G = lambda / beta with derivatives by the quotient rule.
class RatioSymbol {
public:
    RatioSymbol(Symbol numerator, Symbol denominator);

    double operator()(double t) const;
    double d1(double t) const;
    double d2(double t) const;

    const Symbol& numerator() const { return num_; }
    const Symbol& denominator() const { return den_; }

private:
    Symbol num_, den_;
};

/// |t|^-r for t != 0, 1 at t = 0. Requires r > 1.
Symbol make_korobov(double r);

/// |t|^-r (log(|t|+1))^-kappa F(log|t|) for |t| >= 1, even C^2 extension
/// (quartic in t^2) on |t| < 1. Requires r > 1 and bounded F.
Symbol make_mask(double r, double kappa, const SmoothFactor& F = SmoothFactor::one());

/// e^{-s|t|} F(|t|) with F positive nonincreasing. Requires s > 0.
Symbol make_exponent(double s, const SmoothFactor& F = SmoothFactor::one());

CutoffTheta make_theta();

/// theta as a plain Symbol (kind Cutoff), for multiplier-style uses.
Symbol theta_symbol();

/// J_m(psi) = int_{|x| >= m} (|psi(x)/m| + |x psi''(x)|) dx, by adaptive
/// quadrature in log-x with the truncation point chosen from the symbol's
/// analytic tail bound. `explicit_X > 0` overrides the automatic cut
/// (required for Custom symbols).
double J_m(const Symbol& psi, int m, double tail_tol, double explicit_X = 0.0);

/// eps_m = J_m(lambda) + (sup|G| + m^2 sup|G''|) J_m(beta) on [-m, m],
/// G = lambda/beta, sups sampled on a 64m grid.
double epsilon_m(const Symbol& lambda, const Symbol& beta, int m,
                 double tail_tol = 1e-12);

/// Sampled check of the monotone-type comparability property
/// |psi(x)| >= c0 |psi(y)| for 2|y| >= |x| >= |y|/2; returns the smallest
/// observed ratio (an estimate of c0) over a log-spaced sample of [lo, hi].
double monotone_type_ratio(const Symbol& psi, double lo, double hi, int samples = 256);

} // namespace tta

#endif
