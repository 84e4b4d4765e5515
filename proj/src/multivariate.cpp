#include "tta/multivariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// multiply the coefficients by lambda along one axis (identity factor in f-space)
SpectralCoefficients lambda_axis(const SpectralCoefficients& c, int axis,
                                 const Symbol& lambda) {
    CoeffMap out;
    for (const auto& [j, v] : c.coeffs()) {
        const Complex w = lambda(static_cast<double>(j[std::size_t(axis)])) * v;
        if (w != Complex(0.0)) out[j] = w;
    }
    return SpectralCoefficients(c.dim(), c.support_bound(), std::move(out));
}

// one tensor term: per axis either Q_{ms[j]} (ms[j] >= 1) or the identity (ms[j] == 0)
SpectralCoefficients tensor_term(const SpectralCoefficients& g, const Symbol& lambda,
                                 const CutoffTheta& theta, const std::vector<int>& ms,
                                 double drop_tol) {
    SpectralCoefficients cur = g;
    for (int axis = 0; axis < g.dim(); ++axis)
        cur = ms[std::size_t(axis)] >= 1
                  ? apply_Q_axis(cur, axis, lambda, lambda, theta, ms[std::size_t(axis)],
                                 drop_tol)
                  : lambda_axis(cur, axis, lambda);
    return cur;
}

// expansion of q_k as signed levels: k_j > 0 contributes {k_j, +} and {k_j-1, -},
// k_j = 0 contributes {0, +} only
void q_terms(const MultiIndex& k, std::vector<std::pair<std::vector<int>, int>>& out) {
    out.assign(1, {std::vector<int>{}, +1});
    for (Index kj : k) {
        std::vector<std::pair<std::vector<int>, int>> next;
        for (const auto& [levels, sign] : out) {
            auto a = levels;
            a.push_back(int(kj));
            next.emplace_back(std::move(a), sign);
            if (kj > 0) {
                auto b = levels;
                b.push_back(int(kj) - 1);
                next.emplace_back(std::move(b), -sign);
            }
        }
        out = std::move(next);
    }
}

void simplex_indices(int d, int m, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (int(cur.size()) == d) {
        out.push_back(cur);
        return;
    }
    const Index used = std::accumulate(cur.begin(), cur.end(), Index(0));
    for (Index k = 0; k <= m - used; ++k) {
        cur.push_back(k);
        simplex_indices(d, m, cur, out);
        cur.pop_back();
    }
}

} // namespace

Index multi_abs(const MultiIndex& k) {
    Index s = 0;
    for (Index kj : k) s += std::llabs(kj);
    return s;
}

double k2_weight(const MultiIndex& k, double kappa) {
    double w = 1.0;
    for (Index kj : k) w *= std::pow(static_cast<double>(kj) + 2.0, -kappa);
    return w;
}

SpectralCoefficients lambda_weight(const SpectralCoefficients& g, const Symbol& lambda) {
    SpectralCoefficients cur = g;
    for (int axis = 0; axis < g.dim(); ++axis) cur = lambda_axis(cur, axis, lambda);
    return cur;
}

SpectralCoefficients apply_Q_axis(const SpectralCoefficients& g, int axis,
                                  const Symbol& lambda, const Symbol& beta,
                                  const CutoffTheta& theta, int m, double drop_tol) {
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("apply_Q_axis: axis out of range");
    if (m < 1) throw std::invalid_argument("apply_Q_axis: m must be >= 1");
    if (drop_tol <= 0.0) throw std::invalid_argument("apply_Q_axis: drop_tol must be positive");
    const Index M = 2 * static_cast<Index>(m) + 1;

    CoeffMap out;
    std::vector<Index> bound = g.support_bound();
    Index axis_bound = 0;
    for (const auto& [j, v] : g.coeffs()) {
        const Index km = j[std::size_t(axis)];
        if (std::llabs(km) >= m) continue;
        const double th = theta(static_cast<double>(km) / m);
        if (th == 0.0) continue;
        const double bkm = beta(static_cast<double>(km));
        if (bkm == 0.0)
            throw std::domain_error("generator symbol vanishes at an integer in (-m, m)");
        const Complex base = th * (lambda(static_cast<double>(km)) / bkm) * v;

        MultiIndex idx = j;
        for (int dir : {+1, -1}) {
            for (Index jb = (dir > 0 ? 0 : 1);; ++jb) {
                const Index k = km + dir * jb * M;
                const Complex w = beta(static_cast<double>(k)) * base;
                if (jb > 2 && std::abs(w) < drop_tol) break;
                if (std::llabs(k) > 50'000'000)
                    throw std::runtime_error("apply_Q_axis: alias depth exceeds cap");
                if (w != Complex(0.0)) {
                    idx[std::size_t(axis)] = k;
                    out[idx] += w;
                    axis_bound = std::max<Index>(axis_bound, std::llabs(k));
                }
            }
        }
    }
    bound[std::size_t(axis)] = axis_bound;
    return SpectralCoefficients(g.dim(), std::move(bound), std::move(out));
}

SpectralCoefficients Q_tensor(const SpectralCoefficients& g, const Symbol& lambda,
                              const CutoffTheta& theta, const MultiIndex& m,
                              double drop_tol) {
    if (int(m.size()) != g.dim()) throw std::invalid_argument("Q_tensor: order dimension mismatch");
    std::vector<int> ms(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] < 1) throw std::invalid_argument("Q_tensor: all m_j must be >= 1");
        ms[j] = int(m[j]);
    }
    return tensor_term(g, lambda, theta, ms, drop_tol);
}

SpectralCoefficients T_op(const SpectralCoefficients& g, const Symbol& lambda,
                          const CutoffTheta& theta, const MultiIndex& k,
                          double drop_tol) {
    if (int(k.size()) != g.dim()) throw std::invalid_argument("T_op: index dimension mismatch");
    std::vector<int> active;
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] < -1) throw std::invalid_argument("T_op: entries must be >= -1");
        if (k[j] >= 0) active.push_back(int(j));
    }
    SpectralCoefficients acc(g.dim(), CoeffMap{});
    const std::size_t nsub = std::size_t(1) << active.size();
    for (std::size_t sub = 0; sub < nsub; ++sub) {
        std::vector<int> ms(k.size(), 0);
        int sign = +1;
        for (std::size_t a = 0; a < active.size(); ++a) {
            if (sub & (std::size_t(1) << a)) {
                ms[std::size_t(active[a])] = 1 << k[std::size_t(active[a])];
                sign = -sign;
            }
        }
        acc = combine(acc, tensor_term(g, lambda, theta, ms, drop_tol), double(sign));
    }
    return acc;
}

SpectralCoefficients q_op(const SpectralCoefficients& g, const Symbol& lambda,
                          const CutoffTheta& theta, const MultiIndex& k,
                          double drop_tol) {
    if (int(k.size()) != g.dim()) throw std::invalid_argument("q_op: index dimension mismatch");
    for (Index kj : k)
        if (kj < 0) throw std::invalid_argument("q_op: entries must be >= 0");
    std::vector<std::pair<std::vector<int>, int>> terms;
    q_terms(k, terms);
    SpectralCoefficients acc(g.dim(), CoeffMap{});
    for (const auto& [levels, sign] : terms) {
        std::vector<int> ms(levels.size());
        for (std::size_t j = 0; j < levels.size(); ++j) ms[j] = 1 << levels[j];
        acc = combine(acc, tensor_term(g, lambda, theta, ms, drop_tol), double(sign));
    }
    return acc;
}

SpectralCoefficients P_op(const SpectralCoefficients& g, const Symbol& lambda,
                          const CutoffTheta& theta, int m, double drop_tol) {
    if (m < 0) throw std::invalid_argument("P_op: m must be >= 0");
    std::vector<MultiIndex> simplex;
    MultiIndex cur;
    simplex_indices(g.dim(), m, cur, simplex);

    // group the signed Q_{2^l} terms of all q_k and evaluate each tensor once
    std::map<std::vector<int>, long long> weights;
    for (const auto& k : simplex) {
        std::vector<std::pair<std::vector<int>, int>> terms;
        q_terms(k, terms);
        for (const auto& [levels, sign] : terms) {
            std::vector<int> ms(levels.size());
            for (std::size_t j = 0; j < levels.size(); ++j) ms[j] = 1 << levels[j];
            weights[ms] += sign;
        }
    }
    SpectralCoefficients acc(g.dim(), CoeffMap{});
    for (const auto& [ms, w] : weights) {
        if (w == 0) continue;
        acc = combine(acc, tensor_term(g, lambda, theta, ms, drop_tol), double(w));
    }
    return acc;
}

RationalPoint rational_point(const MultiIndex& k, const std::vector<Index>& s) {
    RationalPoint p(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
        const Index den = (Index(1) << (k[j] + 1)) + 1;
        const Index g = std::gcd(s[j], den);
        p[j] = {s[j] / g, den / g};
    }
    return p;
}

std::vector<double> rational_to_x(const RationalPoint& p) {
    std::vector<double> x(p.size());
    for (std::size_t j = 0; j < p.size(); ++j)
        x[j] = kTwoPi * static_cast<double>(p[j].first) / static_cast<double>(p[j].second);
    return x;
}

SmolyakGrid smolyak_grid(int d, int m) {
    if (d < 1 || m < 0) throw std::invalid_argument("smolyak_grid: need d >= 1, m >= 0");
    SmolyakGrid grid;
    grid.d = d;
    grid.m = m;
    std::vector<MultiIndex> simplex;
    MultiIndex cur;
    simplex_indices(d, m, cur, simplex);

    std::set<RationalPoint> distinct;
    for (const auto& k : simplex) {
        std::vector<Index> M(static_cast<std::size_t>(d));
        std::uint64_t card = 1;
        for (int j = 0; j < d; ++j) {
            M[std::size_t(j)] = (Index(1) << (k[std::size_t(j)] + 1)) + 1;
            card *= std::uint64_t(M[std::size_t(j)]);
        }
        grid.sum_cardinality += card;

        std::vector<Index> s(static_cast<std::size_t>(d), 0);
        while (true) {
            SmolyakPoint pt;
            pt.k = k;
            pt.s = s;
            pt.x = rational_to_x(rational_point(k, s));
            distinct.insert(rational_point(k, s));
            grid.points.push_back(std::move(pt));
            int j = d - 1;
            while (j >= 0 && ++s[std::size_t(j)] == M[std::size_t(j)]) {
                s[std::size_t(j)] = 0;
                --j;
            }
            if (j < 0) break;
        }
    }
    grid.distinct_cardinality = distinct.size();
    return grid;
}

std::map<RationalPoint, double> translate_representation(const SpectralCoefficients& g,
                                                         const Symbol& lambda,
                                                         const CutoffTheta& theta, int m) {
    if (m < 0) throw std::invalid_argument("translate_representation: m must be >= 0");
    const int d = g.dim();
    std::vector<MultiIndex> simplex;
    MultiIndex cur;
    simplex_indices(d, m, cur, simplex);

    std::map<std::vector<int>, long long> tensor_weights;
    for (const auto& k : simplex) {
        std::vector<std::pair<std::vector<int>, int>> terms;
        q_terms(k, terms);
        for (const auto& [levels, sign] : terms) tensor_weights[levels] += sign;
    }

    std::map<RationalPoint, double> weights;
    const CutoffTheta th = theta;
    for (const auto& [levels, w] : tensor_weights) {
        if (w == 0) continue;
        std::vector<int> Mg(static_cast<std::size_t>(d));
        MultiIndex klev(static_cast<std::size_t>(d));
        double inv_card = 1.0;
        for (int j = 0; j < d; ++j) {
            klev[std::size_t(j)] = levels[std::size_t(j)];
            Mg[std::size_t(j)] = (1 << (levels[std::size_t(j)] + 1)) + 1;
            inv_card /= Mg[std::size_t(j)];
        }
        // V coefficients of this tensor term: prod_j theta(k_j / 2^{l_j}) g_hat(k)
        // (beta = lambda, so the symbol ratio is 1)
        CoeffMap vc;
        for (const auto& [j, v] : g.coeffs()) {
            Complex val = v;
            for (int a = 0; a < d; ++a) {
                const double mp = double(Index(1) << levels[std::size_t(a)]);
                val *= th(static_cast<double>(j[std::size_t(a)]) / mp);
            }
            if (val != Complex(0.0)) vc[j] = val;
        }
        const SpectralCoefficients V(d, g.support_bound(), std::move(vc));
        const Eigen::VectorXd vals = sample_dense(V, Mg);

        std::vector<Index> s(static_cast<std::size_t>(d), 0);
        Eigen::Index flat = 0;
        while (true) {
            weights[rational_point(klev, s)] += double(w) * inv_card * vals[flat];
            int j = d - 1;
            while (j >= 0 && ++s[std::size_t(j)] == Mg[std::size_t(j)]) {
                s[std::size_t(j)] = 0;
                --j;
            }
            ++flat;
            if (j < 0) break;
        }
    }
    return weights;
}

std::string grid_to_text(const SmolyakGrid& grid) {
    std::ostringstream os;
    os.precision(17);
    os << "d " << grid.d << " m " << grid.m << " sum_cardinality " << grid.sum_cardinality
       << " distinct_cardinality " << grid.distinct_cardinality << '\n';
    for (const auto& pt : grid.points) {
        for (Index kj : pt.k) os << kj << ' ';
        for (Index sj : pt.s) os << sj << ' ';
        for (std::size_t j = 0; j < pt.k.size(); ++j)
            os << pt.s[j] << '/' << ((Index(1) << (pt.k[j] + 1)) + 1) << ' ';
        for (std::size_t j = 0; j < pt.x.size(); ++j)
            os << pt.x[j] << (j + 1 == pt.x.size() ? '\n' : ' ');
    }
    return os.str();
}

} // namespace tta
