#ifndef TTA_MULTIVARIATE_HPP
#define TTA_MULTIVARIATE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tta/spectral.hpp"
#include "tta/symbols.hpp"

namespace tta {

/// |k| = sum of |k_j|.
Index multi_abs(const MultiIndex& k);

/// prod_j (k_j + 2)^{-kappa}.
double k2_weight(const MultiIndex& k, double kappa);

/// f coefficients from generator coefficients: multiply by prod_j lambda(k_j).
SpectralCoefficients lambda_weight(const SpectralCoefficients& g, const Symbol& lambda);

/// One-axis action of the translate operator in coefficient form:
/// out(..., k, ...) = theta(k_m/m) (lambda/beta)(k_m) beta(k) in(..., k_m, ...),
/// alias blocks extended until |entry| < drop_tol (input axes other than
/// `axis` are untouched; entries with |k_axis| >= m do not contribute).
SpectralCoefficients apply_Q_axis(const SpectralCoefficients& g, int axis,
                                  const Symbol& lambda, const Symbol& beta,
                                  const CutoffTheta& theta, int m,
                                  double drop_tol = 1e-10);

/// Tensor operator: apply_Q_axis over every axis with per-axis order m_j
/// and beta = lambda. Input is the generator g; output is in f-space.
SpectralCoefficients Q_tensor(const SpectralCoefficients& g, const Symbol& lambda,
                              const CutoffTheta& theta, const MultiIndex& m,
                              double drop_tol = 1e-10);

/// T_k = prod_j (I - Q_{2^{k_j}}) with k_j = -1 meaning the identity factor,
/// applied to f = phi_lambda * g; output in f-space.
SpectralCoefficients T_op(const SpectralCoefficients& g, const Symbol& lambda,
                          const CutoffTheta& theta, const MultiIndex& k,
                          double drop_tol = 1e-10);

/// q_k = prod_j (Q_{2^{k_j}} - Q_{2^{k_j-1}}), with q_0 = Q_1 per axis.
SpectralCoefficients q_op(const SpectralCoefficients& g, const Symbol& lambda,
                          const CutoffTheta& theta, const MultiIndex& k,
                          double drop_tol = 1e-10);

/// P_m = sum over {k >= 0 : |k| <= m} of q_k.
SpectralCoefficients P_op(const SpectralCoefficients& g, const Symbol& lambda,
                          const CutoffTheta& theta, int m,
                          double drop_tol = 1e-10);

struct SmolyakPoint {
    MultiIndex k;          // level vector, |k| <= m
    std::vector<Index> s;  // s_j in [0, 2^{k_j+1}+1)
    std::vector<double> x; // x_j = 2*pi*s_j/(2^{k_j+1}+1)
};

struct SmolyakGrid {
    int d = 1;
    int m = 0;
    std::vector<SmolyakPoint> points;
    std::uint64_t sum_cardinality = 0;      // counts multiplicity
    std::uint64_t distinct_cardinality = 0; // deduplicated by exact rationals
};

SmolyakGrid smolyak_grid(int d, int m);

/// Torus point with per-axis coordinate 2*pi*num/den, fractions reduced.
using RationalPoint = std::vector<std::pair<Index, Index>>;

RationalPoint rational_point(const MultiIndex& k, const std::vector<Index>& s);
std::vector<double> rational_to_x(const RationalPoint& p);

/// Weights w_y on the sparse grid such that sum_y w_y phi_{lambda,d}(x - y)
/// equals P_m(f)(x); weights of coincident rational points are merged.
std::map<RationalPoint, double> translate_representation(const SpectralCoefficients& g,
                                                         const Symbol& lambda,
                                                         const CutoffTheta& theta, int m);

/// Grid dump: per point `k_1 .. k_d  s_1 .. s_d  s_1/M_1 .. s_d/M_d  x_1 .. x_d`,
/// preceded by a cardinality header line.
std::string grid_to_text(const SmolyakGrid& grid);

} // namespace tta

#endif
