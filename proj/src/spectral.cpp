#include "tta/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace tta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

MultiIndex negate(const MultiIndex& j) {
    MultiIndex n(j.size());
    for (std::size_t l = 0; l < j.size(); ++l) n[l] = -j[l];
    return n;
}

std::size_t checked_pow(std::size_t base, int exp) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > std::size_t(1) << 40)
            throw std::length_error("grid too large");
        v *= base;
    }
    return v;
}

// in-place DFT along one axis of a row-major flat tensor
void axis_fft(std::vector<Complex>& data, const std::vector<int>& shape, int axis,
              bool inverse) {
    Eigen::FFT<double> fft;
    const int n = shape[axis];
    std::size_t stride = 1;
    for (std::size_t l = axis + 1; l < shape.size(); ++l) stride *= shape[l];
    const std::size_t block = stride * n;
    std::vector<Complex> line(n), out(n);
    for (std::size_t base = 0; base < data.size(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (int s = 0; s < n; ++s) line[s] = data[base + off + s * stride];
            if (inverse)
                fft.inv(out, line);
            else
                fft.fwd(out, line);
            const double scale = inverse ? double(n) : 1.0;
            for (int s = 0; s < n; ++s) data[base + off + s * stride] = out[s] * scale;
        }
    }
}

int pow2_at_least(Index n) {
    int g = 64;
    while (g < n && g < (1 << 17)) g <<= 1;
    return g;
}

} // namespace

SpectralCoefficients::SpectralCoefficients(int dim, std::vector<Index> support_bound,
                                           CoeffMap coeffs)
    : dim_(dim), support_bound_(std::move(support_bound)) {
    if (dim_ < 1) throw std::invalid_argument("SpectralCoefficients: dim must be >= 1");
    if (support_bound_.size() != std::size_t(dim_))
        throw std::invalid_argument("SpectralCoefficients: support_bound size mismatch");
    for (Index b : support_bound_)
        if (b < 0) throw std::invalid_argument("SpectralCoefficients: negative support bound");

    for (auto& [j, v] : coeffs) {
        if (j.size() != std::size_t(dim_))
            throw std::invalid_argument("SpectralCoefficients: index dimension mismatch");
        for (int l = 0; l < dim_; ++l)
            if (std::abs(j[l]) > support_bound_[l])
                throw std::invalid_argument("SpectralCoefficients: index outside support bound");
    }

    // Hermitian symmetrization: pair each index with its negation.
    for (auto& [j, v] : coeffs) {
        MultiIndex nj = negate(j);
        if (nj == j) {
            coeffs_[j] = Complex(v.real(), 0.0);
            continue;
        }
        if (coeffs_.count(j)) continue;
        auto it = coeffs.find(nj);
        const Complex mirrored = it == coeffs.end() ? Complex(0.0) : it->second;
        const Complex sym = 0.5 * (v + std::conj(mirrored));
        if (sym != Complex(0.0)) {
            coeffs_[j] = sym;
            coeffs_[nj] = std::conj(sym);
        }
    }
}

namespace {
std::vector<Index> inferred_bound(int dim, const CoeffMap& coeffs) {
    std::vector<Index> b(std::size_t(std::max(dim, 1)), 0);
    for (const auto& [j, v] : coeffs)
        for (int l = 0; l < dim && l < int(j.size()); ++l)
            b[std::size_t(l)] = std::max(b[std::size_t(l)], std::abs(j[l]));
    return b;
}
} // namespace

SpectralCoefficients::SpectralCoefficients(int dim, CoeffMap coeffs) : dim_(dim) {
    std::vector<Index> bound = inferred_bound(dim, coeffs);
    *this = SpectralCoefficients(dim, std::move(bound), std::move(coeffs));
}

Complex SpectralCoefficients::coeff(const MultiIndex& j) const {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
}

Complex SpectralCoefficients::coeff1(Index j) const { return coeff(MultiIndex{j}); }

Index SpectralCoefficients::max_support() const {
    Index m = 0;
    for (Index b : support_bound_) m = std::max(m, b);
    return m;
}

double SpectralCoefficients::abs_sum() const {
    double s = 0.0;
    for (const auto& [j, v] : coeffs_) s += std::abs(v);
    return s;
}

SpectralCoefficients coeffs_from_samples(const GridSamples& samples) {
    const int d = samples.dim;
    const int M = samples.points_per_axis;
    if (M <= 0) throw std::invalid_argument("coeffs_from_samples: M must be positive");
    const std::size_t total = checked_pow(M, d);
    if (samples.values.size() == 0 || std::size_t(samples.values.size()) != total)
        throw std::invalid_argument("coeffs_from_samples: sample count mismatch");

    std::vector<Complex> data(total);
    for (std::size_t i = 0; i < total; ++i) data[i] = Complex(samples.values[i], 0.0);
    const std::vector<int> shape(d, M);
    for (int axis = 0; axis < d; ++axis) axis_fft(data, shape, axis, false);

    const double scale = 1.0 / double(total);
    const Index N = (M - 1) / 2;
    double max_abs = 0.0;
    for (const auto& v : data) max_abs = std::max(max_abs, std::abs(v));

    CoeffMap map;
    for (std::size_t flat = 0; flat < total; ++flat) {
        const Complex v = data[flat] * scale;
        if (std::abs(v) <= 1e-13 * max_abs * scale) continue;
        MultiIndex j(d);
        std::size_t rem = flat;
        bool in_range = true;
        for (int l = d - 1; l >= 0; --l) {
            const int bin = int(rem % M);
            rem /= M;
            const Index k = bin <= N ? bin : bin - M;
            if (std::abs(k) > N) { in_range = false; break; }
            j[l] = k;
        }
        if (in_range) map[j] = v;
    }
    return SpectralCoefficients(d, std::vector<Index>(d, N), std::move(map));
}

double evaluate(const SpectralCoefficients& c, const std::vector<double>& x) {
    if (x.size() != std::size_t(c.dim()))
        throw std::invalid_argument("evaluate: point dimension mismatch");
    Complex acc(0.0);
    for (const auto& [j, v] : c.coeffs()) {
        double phase = 0.0;
        for (int l = 0; l < c.dim(); ++l) phase += double(j[l]) * x[l];
        acc += v * std::polar(1.0, phase);
    }
    if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, c.abs_sum()))
        throw std::runtime_error("evaluate: non-negligible imaginary part (broken symmetry)");
    return acc.real();
}

double evaluate1(const SpectralCoefficients& c, double x) { return evaluate(c, {x}); }

SpectralCoefficients convolve(const SpectralCoefficients& a, const SpectralCoefficients& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("convolve: dimension mismatch");
    std::vector<Index> bound(a.dim());
    for (int l = 0; l < a.dim(); ++l)
        bound[l] = std::min(a.support_bound()[l], b.support_bound()[l]);
    const bool a_smaller = a.size() <= b.size();
    const auto& small = a_smaller ? a : b;
    const auto& large = a_smaller ? b : a;
    CoeffMap map;
    for (const auto& [j, v] : small.coeffs()) {
        const Complex w = large.coeff(j);
        if (w != Complex(0.0)) map[j] = v * w;
    }
    return SpectralCoefficients(a.dim(), std::move(bound), std::move(map));
}

SpectralCoefficients combine(const SpectralCoefficients& a, const SpectralCoefficients& b,
                             Complex s) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("combine: dimension mismatch");
    std::vector<Index> bound(a.dim());
    for (int l = 0; l < a.dim(); ++l)
        bound[l] = std::max(a.support_bound()[l], b.support_bound()[l]);
    CoeffMap map = a.coeffs();
    for (const auto& [j, v] : b.coeffs()) {
        const Complex w = map[j] + s * v;
        if (w == Complex(0.0))
            map.erase(j);
        else
            map[j] = w;
    }
    return SpectralCoefficients(a.dim(), std::move(bound), std::move(map));
}

Eigen::VectorXd sample_dense(const SpectralCoefficients& c, const std::vector<int>& grid) {
    if (grid.size() != std::size_t(c.dim()))
        throw std::invalid_argument("sample_dense: grid dimension mismatch");
    std::size_t total = 1;
    for (int g : grid) {
        if (g <= 0) throw std::invalid_argument("sample_dense: grid sizes must be positive");
        total *= std::size_t(g);
    }
    std::vector<Complex> bins(total, Complex(0.0));
    for (const auto& [j, v] : c.coeffs()) {
        std::size_t flat = 0;
        for (int l = 0; l < c.dim(); ++l) {
            const int g = grid[l];
            const Index b = ((j[l] % g) + g) % g;
            flat = flat * g + std::size_t(b);
        }
        bins[flat] += v;
    }
    for (int axis = 0; axis < c.dim(); ++axis) axis_fft(bins, grid, axis, true);
    Eigen::VectorXd out{Eigen::Index(total)};
    for (std::size_t i = 0; i < total; ++i) out[Eigen::Index(i)] = bins[i].real();
    return out;
}

GridSamples sample(const SpectralCoefficients& c, int points_per_axis) {
    GridSamples s;
    s.dim = c.dim();
    s.points_per_axis = points_per_axis;
    s.values = sample_dense(c, std::vector<int>(c.dim(), points_per_axis));
    return s;
}

double lp_norm(const SpectralCoefficients& c, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p < 1 is not a norm here");
    if (p == 2.0) {
        double s = 0.0;
        for (const auto& [j, v] : c.coeffs()) s += std::norm(v);
        return std::sqrt(s);
    }

    std::vector<int> grid(c.dim());
    if (c.dim() == 1) {
        grid[0] = std::max(4096, pow2_at_least(8 * c.max_support()));
    } else {
        for (int l = 0; l < c.dim(); ++l)
            grid[l] = std::min(1024, std::max(256, pow2_at_least(8 * c.support_bound()[l])));
    }
    const Eigen::VectorXd v = sample_dense(c, grid);

    if (std::isinf(p)) {
        Eigen::Index argmax = 0;
        const double grid_max = v.cwiseAbs().maxCoeff(&argmax);
        if (c.dim() != 1) return grid_max;
        // one golden-section refinement pass around the discrete argmax
        const double h = kTwoPi / grid[0];
        double a = double(argmax) * h - h, b = double(argmax) * h + h;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = std::abs(evaluate1(c, x1)), f2 = std::abs(evaluate1(c, x2));
        for (int it = 0; it < 60 && (b - a) > 1e-12; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a); f2 = std::abs(evaluate1(c, x2));
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a); f1 = std::abs(evaluate1(c, x1));
            }
        }
        return std::max(grid_max, std::max(f1, f2));
    }

    const double mean = v.array().abs().pow(p).mean();
    return std::pow(mean, 1.0 / p);
}

double lp_norm(const GridSamples& samples, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p < 1 is not a norm here");
    if (samples.values.size() == 0) throw std::invalid_argument("lp_norm: empty samples");
    if (std::isinf(p)) return samples.values.cwiseAbs().maxCoeff();
    return std::pow(samples.values.array().abs().pow(p).mean(), 1.0 / p);
}

std::string to_text(const SpectralCoefficients& c) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& [j, v] : c.coeffs()) {
        for (Index k : j) os << k << ' ';
        os << v.real() << ' ' << v.imag() << '\n';
    }
    return os.str();
}

SpectralCoefficients from_text(int dim, const std::string& text) {
    std::istringstream is(text);
    CoeffMap map;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        MultiIndex j(dim);
        for (int l = 0; l < dim; ++l)
            if (!(ls >> j[l])) throw std::runtime_error("from_text: bad index line");
        double re, im;
        if (!(ls >> re >> im)) throw std::runtime_error("from_text: bad value line");
        map[j] = Complex(re, im);
    }
    return SpectralCoefficients(dim, std::move(map));
}

} // namespace tta
