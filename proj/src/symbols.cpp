#include "tta/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tta {

namespace {

// quintic smoothstep and derivatives on [0, 1]
double smoothstep(double u) { return ((6.0 * u - 15.0) * u + 10.0) * u * u * u; }
double smoothstep_d1(double u) { return ((30.0 * u - 60.0) * u + 30.0) * u * u; }
double smoothstep_d2(double u) { return ((120.0 * u - 180.0) * u + 60.0) * u; }

struct MaskPieces {
    double w, dw, d2w;
};

// value and two derivatives of u^-r (log(u+1))^-kappa F(log u) at u >= 1
MaskPieces mask_eval(double u, double r, double kappa, const SmoothFactor& F) {
    const double A = std::pow(u, -r);
    const double dA = -r * A / u;
    const double d2A = r * (r + 1.0) * A / (u * u);

    const double L = std::log(u + 1.0);
    const double B = std::pow(L, -kappa);
    const double dB = -kappa * B / (L * (u + 1.0));
    const double d2B = kappa * (kappa + 1.0) * B / (L * L * (u + 1.0) * (u + 1.0)) +
                       kappa * B / (L * (u + 1.0) * (u + 1.0));

    const double lu = std::log(u);
    const double C = F.f(lu);
    const double dC = F.df(lu) / u;
    const double d2C = (F.d2f(lu) - F.df(lu)) / (u * u);

    MaskPieces p;
    p.w = A * B * C;
    p.dw = dA * B * C + A * dB * C + A * B * dC;
    p.d2w = d2A * B * C + A * d2B * C + A * B * d2C +
            2.0 * (dA * dB * C + dA * B * dC + A * dB * dC);
    return p;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

bool sampled_nonzero(const std::function<double(double)>& f) {
    for (int i = 0; i <= 4096; ++i) {
        const double t = 100.0 * i / 4096.0;
        if (f(t) == 0.0 || f(-t) == 0.0) return false;
    }
    return true;
}

} // namespace

double CutoffTheta::operator()(double x) const {
    const double a = std::abs(x);
    if (a <= 0.5) return 1.0;
    if (a >= 1.0) return 0.0;
    return 1.0 - smoothstep(2.0 * a - 1.0);
}

double CutoffTheta::d1(double x) const {
    const double a = std::abs(x);
    if (a <= 0.5 || a >= 1.0) return 0.0;
    const double d = -2.0 * smoothstep_d1(2.0 * a - 1.0);
    return x < 0.0 ? -d : d;
}

double CutoffTheta::d2(double x) const {
    const double a = std::abs(x);
    if (a <= 0.5 || a >= 1.0) return 0.0;
    return -4.0 * smoothstep_d2(2.0 * a - 1.0);
}

double CutoffTheta::d2_sup() const {
    static const double sup = [] {
        double best = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double u = i / 20000.0;
            best = std::max(best, std::abs(4.0 * smoothstep_d2(u)));
        }
        return best;
    }();
    return sup;
}

CutoffTheta make_theta() { return CutoffTheta{}; }

Symbol theta_symbol() {
    CutoffTheta th;
    Symbol s(SymbolKind::Cutoff,
             [th](double x) { return th(x); },
             [th](double x) { return th.d1(x); },
             [th](double x) { return th.d2(x); },
             false);
    return s;
}

Symbol make_korobov(double r) {
    if (!(r > 1.0))
        throw std::invalid_argument("make_korobov: requires r > 1");
    Symbol s(SymbolKind::Mask,
             [r](double t) { return t == 0.0 ? 1.0 : std::pow(std::abs(t), -r); },
             [r](double t) {
                 if (t == 0.0) return 0.0;
                 const double v = -r * std::pow(std::abs(t), -r - 1.0);
                 return t < 0.0 ? -v : v;
             },
             [r](double t) {
                 return t == 0.0 ? 0.0 : r * (r + 1.0) * std::pow(std::abs(t), -r - 2.0);
             },
             true);
    s.r_ = r;
    s.kappa_ = 0.0;
    s.a1_ = 1.0;
    s.korobov_ = true;
    return s;
}

Symbol make_mask(double r, double kappa, const SmoothFactor& F) {
    if (!(r > 1.0))
        throw std::invalid_argument("make_mask: requires r > 1");
    if (!(F.bound > 0.0) || !std::isfinite(F.bound))
        throw std::invalid_argument("make_mask: factor bound must be finite and positive");

    // even C^2 extension a + b t^2 + c t^4 on |t| < 1, matched at t = 1
    const MaskPieces at1 = mask_eval(1.0, r, kappa, F);
    const double c = (at1.d2w - at1.dw) / 8.0;
    const double b = (at1.dw - 4.0 * c) / 2.0;
    const double a = at1.w - b - c;

    auto eval = [=](double t) {
        const double u = std::abs(t);
        if (u < 1.0) return a + (b + c * u * u) * u * u;
        return mask_eval(u, r, kappa, F).w;
    };
    auto d1 = [=](double t) {
        const double u = std::abs(t);
        const double v = u < 1.0 ? (2.0 * b + 4.0 * c * u * u) * u
                                 : mask_eval(u, r, kappa, F).dw;
        return t < 0.0 ? -v : v;
    };
    auto d2 = [=](double t) {
        const double u = std::abs(t);
        if (u < 1.0) return 2.0 * b + 12.0 * c * u * u;
        return mask_eval(u, r, kappa, F).d2w;
    };

    Symbol s(SymbolKind::Mask, eval, d1, d2, sampled_nonzero(eval));
    s.r_ = r;
    s.kappa_ = kappa;
    s.a1_ = F.bound;
    return s;
}

Symbol make_exponent(double s_param, const SmoothFactor& F) {
    if (!(s_param > 0.0))
        throw std::invalid_argument("make_exponent: requires s > 0");
    if (!(F.bound > 0.0) || !std::isfinite(F.bound))
        throw std::invalid_argument("make_exponent: factor bound must be finite and positive");
    if (!(F.f(0.0) > 0.0))
        throw std::invalid_argument("make_exponent: factor must be positive");

    const double s = s_param;
    auto eval = [=](double t) {
        const double u = std::abs(t);
        return std::exp(-s * u) * F.f(u);
    };
    auto d1 = [=](double t) {
        if (t == 0.0) return 0.0;
        const double u = std::abs(t);
        const double v = std::exp(-s * u) * (-s * F.f(u) + F.df(u));
        return t < 0.0 ? -v : v;
    };
    auto d2 = [=](double t) {
        const double u = std::abs(t);
        return std::exp(-s * u) * (s * s * F.f(u) - 2.0 * s * F.df(u) + F.d2f(u));
    };

    Symbol out(SymbolKind::Exponent, eval, d1, d2, sampled_nonzero(eval));
    out.s_ = s;
    out.a1_ = F.bound;
    return out;
}

bool Symbol::has_coeff_tail_bound() const {
    switch (kind_) {
        case SymbolKind::Mask: return kappa_ >= 0.0;
        case SymbolKind::Exponent: return true;
        case SymbolKind::Cutoff: return true;
        default: return false;
    }
}

double Symbol::coeff_tail_l1(double N) const {
    switch (kind_) {
        case SymbolKind::Mask: {
            if (kappa_ < 0.0)
                throw std::domain_error("coeff_tail_l1: mask with kappa < 0 has no declared bound");
            const double logf = kappa_ == 0.0 ? 1.0 : std::pow(std::log(N + 1.0), -kappa_);
            return 2.0 * a1_ * logf * std::pow(N, 1.0 - r_) / (r_ - 1.0);
        }
        case SymbolKind::Exponent: {
            const double n1 = std::floor(N) + 1.0;
            return 2.0 * a1_ * std::exp(-s_ * n1) / (1.0 - std::exp(-s_));
        }
        case SymbolKind::Cutoff:
            return 0.0;
        default:
            throw std::domain_error("coeff_tail_l1: custom symbol has no declared bound");
    }
}

double Symbol::coeff_tail_l2sq(double N) const {
    switch (kind_) {
        case SymbolKind::Mask: {
            if (kappa_ < 0.0)
                throw std::domain_error("coeff_tail_l2sq: mask with kappa < 0 has no declared bound");
            const double logf = kappa_ == 0.0 ? 1.0 : std::pow(std::log(N + 1.0), -2.0 * kappa_);
            return 2.0 * a1_ * a1_ * logf * std::pow(N, 1.0 - 2.0 * r_) / (2.0 * r_ - 1.0);
        }
        case SymbolKind::Exponent: {
            const double n1 = std::floor(N) + 1.0;
            return 2.0 * a1_ * a1_ * std::exp(-2.0 * s_ * n1) / (1.0 - std::exp(-2.0 * s_));
        }
        case SymbolKind::Cutoff:
            return 0.0;
        default:
            throw std::domain_error("coeff_tail_l2sq: custom symbol has no declared bound");
    }
}

double Symbol::integral_tail_bound(double X, double m) const {
    switch (kind_) {
        case SymbolKind::Mask: {
            if (kappa_ < 0.0)
                throw std::domain_error("integral_tail_bound: mask with kappa < 0 needs an explicit cut");
            const double r = r_, k = kappa_;
            const double L = std::log(X + 1.0);
            const double logf = k == 0.0 ? 1.0 : std::pow(L, -k);
            // envelope |x w''(x)| <= D x^{-r-1}
            const double D = a1_ * logf *
                             (r * (r + 1.0) + k * (k + 1.0) / (L * L) + k / L + 2.0 +
                              2.0 * r * k / L + 2.0 * r + 2.0 * k / L);
            const double value_part = a1_ * logf * std::pow(X, 1.0 - r) / (m * (r - 1.0));
            const double deriv_part = D * std::pow(X, -r) / r;
            return 2.0 * (value_part + deriv_part);
        }
        case SymbolKind::Exponent: {
            const double E = a1_ * (s_ * s_ + 2.0 * s_ + 1.0);
            const double e = std::exp(-s_ * X);
            return 2.0 * (a1_ * e / (s_ * m) + E * e * (X / s_ + 1.0 / (s_ * s_)));
        }
        case SymbolKind::Cutoff:
            return X >= 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
        default:
            throw std::domain_error("integral_tail_bound: custom symbol needs an explicit cut");
    }
}

RatioSymbol::RatioSymbol(Symbol numerator, Symbol denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (!den_.nonzero_everywhere())
        throw std::invalid_argument("RatioSymbol: denominator must be nonzero everywhere");
}

double RatioSymbol::operator()(double t) const { return num_(t) / den_(t); }

double RatioSymbol::d1(double t) const {
    const double b = den_(t);
    return (num_.d1(t) - (*this)(t) * den_.d1(t)) / b;
}

double RatioSymbol::d2(double t) const {
    const double b = den_(t);
    return (num_.d2(t) - 2.0 * d1(t) * den_.d1(t) - (*this)(t) * den_.d2(t)) / b;
}

double J_m(const Symbol& psi, int m, double tail_tol, double explicit_X) {
    if (m <= 0)
        throw std::invalid_argument("J_m: m must be positive");
    double X = explicit_X;
    if (X <= 0.0) {
        X = 2.0 * m;
        while (psi.integral_tail_bound(X, m) >= tail_tol) {
            X *= 2.0;
            if (X > 1e30)
                throw std::runtime_error("J_m: tail bound does not reach the requested tolerance");
        }
    }
    const double md = static_cast<double>(m);
    auto integrand_logx = [&](double u) {
        const double x = std::exp(u);
        return (std::abs(psi(x)) / md + std::abs(x * psi.d2(x))) * x;
    };
    const double coarse = integrate(integrand_logx, std::log(md), std::log(X), 1e-6);
    const double tol = std::max(1e-9 * std::abs(coarse), 0.1 * tail_tol);
    return 2.0 * integrate(integrand_logx, std::log(md), std::log(X), tol);
}

double epsilon_m(const Symbol& lambda, const Symbol& beta, int m, double tail_tol) {
    if (!beta.nonzero_everywhere())
        throw std::invalid_argument("epsilon_m: beta must be nonzero everywhere");
    RatioSymbol G(lambda, beta);
    const int n = 64 * m;
    double sup_g = 0.0, sup_g2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = -m + 2.0 * m * i / n;
        sup_g = std::max(sup_g, std::abs(G(x)));
        sup_g2 = std::max(sup_g2, std::abs(G.d2(x)));
    }
    const double md = static_cast<double>(m);
    return J_m(lambda, m, tail_tol) +
           (sup_g + md * md * sup_g2) * J_m(beta, m, tail_tol);
}

double monotone_type_ratio(const Symbol& psi, double lo, double hi, int samples) {
    double worst = std::numeric_limits<double>::infinity();
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < samples; ++i) {
        const double y = std::exp(llo + (lhi - llo) * i / (samples - 1));
        for (int j = 0; j < samples; ++j) {
            const double x = std::exp(llo + (lhi - llo) * j / (samples - 1));
            if (x < 0.5 * y || x > 2.0 * y) continue;
            const double py = std::abs(psi(y));
            if (py == 0.0) continue;
            worst = std::min(worst, std::abs(psi(x)) / py);
        }
    }
    return worst;
}

} // namespace tta
