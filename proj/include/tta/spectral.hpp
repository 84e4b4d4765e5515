#ifndef TTA_SPECTRAL_HPP
#define TTA_SPECTRAL_HPP

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tta {

using Complex = std::complex<double>;
using Index = std::int64_t;
using MultiIndex = std::vector<Index>;
using CoeffMap = std::map<MultiIndex, Complex>;

/// Truncated Fourier series of a real-valued function on the d-torus,
/// stored as a sparse map from integer multi-index to complex amplitude.
/// Hermitian symmetry coeff(-j) = conj(coeff(j)) is enforced at
/// construction; absent indices are zero.
class SpectralCoefficients {
public:
    SpectralCoefficients(int dim, std::vector<Index> support_bound, CoeffMap coeffs);

    /// Convenience: support bound inferred from the stored indices.
    SpectralCoefficients(int dim, CoeffMap coeffs);

    int dim() const { return dim_; }
    const std::vector<Index>& support_bound() const { return support_bound_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }

    Complex coeff(const MultiIndex& j) const;
    Complex coeff1(Index j) const; // dim-1 shorthand

    /// Largest per-axis support bound.
    Index max_support() const;

    /// sum of |coeff| over stored indices
    double abs_sum() const;

private:
    int dim_;
    std::vector<Index> support_bound_;
    CoeffMap coeffs_;
};

/// Real samples on the uniform tensor grid (2*pi*s/M : s = 0..M-1) per
/// axis, row-major over axes.
struct GridSamples {
    int dim = 1;
    int points_per_axis = 0;
    Eigen::VectorXd values;
};

/// Discrete Fourier analysis of uniform samples. For a trigonometric
/// polynomial of per-axis degree < M/2 the result is exact to roundoff;
/// the returned support bound is floor((M-1)/2) per axis.
SpectralCoefficients coeffs_from_samples(const GridSamples& samples);

/// sum_j coeff(j) e^{i (j, x)}, real part (the imaginary part is checked
/// against 1e-10 * sum|coeff|).
double evaluate(const SpectralCoefficients& c, const std::vector<double>& x);
double evaluate1(const SpectralCoefficients& c, double x);

/// Normalized convolution: coefficients multiply, support bound is the
/// componentwise minimum.
SpectralCoefficients convolve(const SpectralCoefficients& a, const SpectralCoefficients& b);

/// a + s*b as coefficient maps; support bound is the componentwise maximum.
SpectralCoefficients combine(const SpectralCoefficients& a, const SpectralCoefficients& b,
                             Complex s);

/// Values of the series on the uniform grid with `grid[l]` points along
/// axis l. Exact on the grid for any support (frequencies fold exactly).
Eigen::VectorXd sample_dense(const SpectralCoefficients& c, const std::vector<int>& grid);

/// Uniform M-per-axis sampling as a GridSamples value.
GridSamples sample(const SpectralCoefficients& c, int points_per_axis);

/// L^p norm with the (2pi)^{-d/p} normalization (so ||1||_p = 1).
/// p = 2 is computed exactly by Parseval; p = infinity by a dense-grid
/// max with one golden-section refinement pass (d = 1); other p by the
/// normalized Riemann sum on a dense grid.
double lp_norm(const SpectralCoefficients& c, double p);
double lp_norm(const GridSamples& samples, double p);

constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// Line-based text format: `j_1 ... j_d re im` per stored index.
std::string to_text(const SpectralCoefficients& c);
SpectralCoefficients from_text(int dim, const std::string& text);

} // namespace tta

#endif
