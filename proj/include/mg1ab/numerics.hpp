#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mg1ab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tolerance {
    double eps_root = 1e-3;
    double eps_quad = 1e-6;
    double eps_mass = 1e-3;

    void validate() const {
        if (eps_root <= 0 || eps_quad <= 0 || eps_mass <= 0)
            throw std::invalid_argument("tolerances must be strictly positive");
    }
};

/// Uniform grid over [lo, hi] with an attached value array.
struct Grid {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n_points = 2;
    std::vector<double> values;

    Grid() = default;
    Grid(double lo_, double hi_, std::size_t n) : lo(lo_), hi(hi_), n_points(n), values(n, 0.0) {
        if (!(lo < hi) || n < 2) throw std::invalid_argument("grid needs lo < hi and n_points >= 2");
    }

    double step() const { return (hi - lo) / double(n_points - 1); }
    double point(std::size_t i) const { return lo + step() * double(i); }
};

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    if (depth > 40) throw std::runtime_error("integral did not converge");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive-Simpson integral of f over [lo, hi].  hi may be +infinity, in which
/// case the upper limit is pushed out by doubling until the envelope (by default
/// the integrand itself, assumed to have a monotone tail) drops below tol*1e-3.
inline double integrate(const std::function<double(double)>& f, double lo, double hi,
                        double tol = 1e-6, double scale_hint = 10.0,
                        const std::function<double(double)>* envelope = nullptr) {
    if (tol <= 0) throw std::invalid_argument("integrate: tol must be positive");
    if (std::isinf(hi)) {
        double u = lo + std::max(scale_hint, 1e-12);
        const double cutoff = tol * 1e-3;
        int doublings = 0;
        auto env = [&](double x) { return envelope ? std::abs((*envelope)(x)) : std::abs(f(x)); };
        while (env(u) >= cutoff) {
            u = lo + 2.0 * (u - lo);
            if (++doublings > 60) throw std::runtime_error("integral did not converge");
        }
        hi = u;
    }
    if (lo == hi) return 0.0;
    if (lo > hi) return -integrate(f, hi, lo, tol, scale_hint, envelope);
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo), fm = f(m), fb = f(hi);
    const double whole = detail::simpson(f, lo, hi, fa, fm, fb);
    return detail::adaptive_simpson(f, lo, hi, fa, fm, fb, whole, tol, 0);
}

/// Bracketed root of f on [lo, hi]: bisection with a secant step whenever the
/// secant candidate falls inside the current bracket.  Deterministic.
inline double find_root(const std::function<double(double)>& f, double lo, double hi,
                        double tol = 1e-3) {
    if (!(lo < hi)) throw std::invalid_argument("find_root: lo must be < hi");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("root not bracketed");
    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (fb != fa) {
            const double sec = b - fb * (b - a) / (fb - fa);
            if (sec > a && sec < b) mid = sec;
        }
        // keep a genuine bisection step every other iteration so the bracket shrinks
        if (it % 2 == 1) mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (std::abs(fm) <= tol || (b - a) <= tol) return std::clamp(mid, lo, hi);
        if ((fm > 0) == (fa > 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    return std::clamp(0.5 * (a + b), lo, hi);
}

/// Composite-Simpson quadrature nodes/weights over [lo, hi], split at the given
/// knots, with panel width at most hmax inside each segment.  Integrands that
/// are smooth between knots integrate at O(h^4).
struct QuadGrid {
    std::vector<double> x;
    std::vector<double> w;

    static QuadGrid build(double lo, double hi, std::vector<double> knots, double hmax) {
        if (!(lo < hi)) throw std::invalid_argument("QuadGrid: lo must be < hi");
        if (hmax <= 0) throw std::invalid_argument("QuadGrid: hmax must be positive");
        knots.push_back(lo);
        knots.push_back(hi);
        std::sort(knots.begin(), knots.end());
        knots.erase(std::unique(knots.begin(), knots.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                    knots.end());
        QuadGrid g;
        for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
            const double a = knots[k], b = knots[k + 1];
            if (a < lo - 1e-12 || b > hi + 1e-12) continue;
            std::size_t n = std::max<std::size_t>(2, std::size_t(std::ceil((b - a) / hmax)));
            n += n % 2;
            const double h = (b - a) / double(n);
            for (std::size_t i = 0; i <= n; ++i) {
                double wi = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                g.x.push_back(a + h * double(i));
                g.w.push_back(wi * h / 3.0);
            }
        }
        return g;
    }

    std::size_t size() const { return x.size(); }

    double dot(const std::vector<double>& y) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * y[i];
        return s;
    }

    double integrate(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
        return s;
    }
};

inline std::vector<double> multiples_below(double step, double hi, std::size_t cap = 400) {
    std::vector<double> out;
    if (!(step > 0) || std::isinf(step)) return out;
    for (std::size_t j = 1; j * step < hi && j <= cap; ++j) out.push_back(double(j) * step);
    return out;
}

}  // namespace mg1ab
