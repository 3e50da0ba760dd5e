#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mg1ab/numerics.hpp"

namespace mg1ab {

using Rng = std::mt19937_64;

inline double exp_draw(Rng& rng, double rate) {
    // inverse-cdf draw; keeps the sample stream independent of library internals
    std::uniform_real_distribution<double> u(std::numeric_limits<double>::min(), 1.0);
    return -std::log(u(rng)) / rate;
}

/// Service-time distribution interface: density, tail, hazard, mean residual
/// life, sampling.  Implementations are immutable after construction.
class ServiceModel {
  public:
    virtual ~ServiceModel() = default;

    virtual double pdf(double t) const = 0;
    virtual double cdf(double t) const { return 1.0 - survival(t); }
    virtual double survival(double t) const = 0;
    virtual double mean() const = 0;
    virtual double mrl_limit() const = 0;
    virtual double sample(Rng& rng) const = 0;
    virtual std::string name() const = 0;

    /// Left edge of the support (nonzero for shifted laws such as Pareto).
    virtual double support_lo() const { return 0.0; }

    virtual double hazard(double t) const {
        const double s = survival(t);
        if (s <= 0.0) throw std::domain_error("hazard undefined beyond support");
        return pdf(t) / s;
    }

    virtual double mrl(double t) const {
        const double s = survival(t);
        if (s <= 0.0) throw std::domain_error("mrl undefined beyond support");
        const double tail = integrate([this](double x) { return survival(x); }, t, kInf,
                                      1e-9 * std::max(s, 1e-12), 10.0 * mean());
        return tail / s;
    }

    /// P(Q <= c ^ R(0,a)) for Q ~ Exp(lambda) and R(0,a) the residual service
    /// at age a; equals int_0^c lambda e^{-lambda y} S(a+y)/S(a) dy.
    virtual double arrival_catch_prob(double a, double c, double lambda) const {
        if (c <= 0.0) return 0.0;
        const double sa = survival(a);
        if (sa <= 0.0) throw std::domain_error("arrival_catch_prob beyond support");
        const double v = integrate(
            [&](double y) { return lambda * std::exp(-lambda * y) * survival(a + y); }, 0.0,
            std::min(c, 40.0 / lambda), 1e-10);
        return v / sa;
    }

    bool imrl_certified() const { return imrl_certified_; }
    void set_imrl_certified(bool v) { imrl_certified_ = v; }

  protected:
    bool imrl_certified_ = false;
};

using ModelPtr = std::shared_ptr<const ServiceModel>;

class Exponential final : public ServiceModel {
  public:
    explicit Exponential(double mu) : mu_(mu) {
        if (mu <= 0) throw std::invalid_argument("Exponential: rate must be positive");
        set_imrl_certified(true);  // constant MRL
    }
    double pdf(double t) const override { return t < 0 ? 0.0 : mu_ * std::exp(-mu_ * t); }
    double survival(double t) const override { return t < 0 ? 1.0 : std::exp(-mu_ * t); }
    double hazard(double) const override { return mu_; }
    double mrl(double) const override { return 1.0 / mu_; }
    double mean() const override { return 1.0 / mu_; }
    double mrl_limit() const override { return 1.0 / mu_; }
    double sample(Rng& rng) const override { return exp_draw(rng, mu_); }
    std::string name() const override { return "exponential"; }
    double arrival_catch_prob(double, double c, double lambda) const override {
        if (c <= 0) return 0.0;
        return lambda / (lambda + mu_) * (1.0 - std::exp(-(lambda + mu_) * c));
    }
    double rate() const { return mu_; }

  private:
    double mu_;
};

class Hyperexponential final : public ServiceModel {
  public:
    Hyperexponential(std::vector<double> p, std::vector<double> mu)
        : p_(std::move(p)), mu_(std::move(mu)) {
        if (p_.size() != mu_.size() || p_.empty())
            throw std::invalid_argument("Hyperexponential: phase arrays must match");
        double tot = 0.0;
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (p_[i] <= 0 || mu_[i] <= 0)
                throw std::invalid_argument("Hyperexponential: phases must be positive");
            tot += p_[i];
        }
        if (std::abs(tot - 1.0) > 1e-9)
            throw std::invalid_argument("Hyperexponential: probabilities must sum to 1");
        set_imrl_certified(true);  // hyperexponentials are DFR, hence IMRL
    }

    double pdf(double t) const override {
        if (t < 0) return 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < p_.size(); ++i) s += p_[i] * mu_[i] * std::exp(-mu_[i] * t);
        return s;
    }
    double survival(double t) const override {
        if (t < 0) return 1.0;
        double s = 0.0;
        for (std::size_t i = 0; i < p_.size(); ++i) s += p_[i] * std::exp(-mu_[i] * t);
        return s;
    }
    double mrl(double t) const override {
        // factor out the slowest phase so the ratio stays finite for large t
        double mu_min = mu_[0];
        for (double m : mu_) mu_min = std::min(mu_min, m);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < p_.size(); ++i) {
            const double w = p_[i] * std::exp(-(mu_[i] - mu_min) * t);
            num += w / mu_[i];
            den += w;
        }
        return num / den;
    }
    double mean() const override {
        double s = 0.0;
        for (std::size_t i = 0; i < p_.size(); ++i) s += p_[i] / mu_[i];
        return s;
    }
    double mrl_limit() const override {
        double mu_min = mu_[0];
        for (double m : mu_) mu_min = std::min(mu_min, m);
        return 1.0 / mu_min;
    }
    double sample(Rng& rng) const override {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double r = u(rng), acc = 0.0;
        std::size_t i = 0;
        for (; i + 1 < p_.size(); ++i) {
            acc += p_[i];
            if (r < acc) break;
        }
        return exp_draw(rng, mu_[i]);
    }
    std::string name() const override { return "hyperexponential"; }
    double arrival_catch_prob(double a, double c, double lambda) const override {
        if (c <= 0) return 0.0;
        double num = 0.0;
        for (std::size_t i = 0; i < p_.size(); ++i)
            num += p_[i] * std::exp(-mu_[i] * a) * lambda / (lambda + mu_[i]) *
                   (1.0 - std::exp(-(lambda + mu_[i]) * c));
        const double sa = survival(a);
        if (sa <= 0) throw std::domain_error("arrival_catch_prob beyond support");
        return num / sa;
    }

  private:
    std::vector<double> p_, mu_;
};

/// Classical Pareto on [xm, inf): survival (xm/t)^alpha, alpha > 1 so the mean
/// is finite.  MRL decreases on [0, xm) and increases (unboundedly) beyond xm;
/// certification applies on the support.
class Pareto final : public ServiceModel {
  public:
    Pareto(double alpha, double xm) : alpha_(alpha), xm_(xm) {
        if (alpha <= 1.0) throw std::invalid_argument("Pareto: alpha must exceed 1");
        if (xm <= 0.0) throw std::invalid_argument("Pareto: scale must be positive");
        set_imrl_certified(true);
    }
    double pdf(double t) const override {
        return t < xm_ ? 0.0 : alpha_ * std::pow(xm_, alpha_) / std::pow(t, alpha_ + 1.0);
    }
    double survival(double t) const override {
        return t < xm_ ? 1.0 : std::pow(xm_ / t, alpha_);
    }
    double mrl(double t) const override {
        if (t < xm_) return mean() - t;
        return t / (alpha_ - 1.0);
    }
    double mean() const override { return alpha_ * xm_ / (alpha_ - 1.0); }
    double mrl_limit() const override { return kInf; }
    double sample(Rng& rng) const override {
        std::uniform_real_distribution<double> u(std::numeric_limits<double>::min(), 1.0);
        return xm_ * std::pow(u(rng), -1.0 / alpha_);
    }
    std::string name() const override { return "pareto"; }
    double support_lo() const override { return xm_; }

  private:
    double alpha_, xm_;
};

/// Uniform service on [lo, hi]; IFR, so never IMRL-certified.  Used as the
/// generic-model example and for certification tests.
class UniformService final : public ServiceModel {
  public:
    UniformService(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo >= 0 && lo < hi)) throw std::invalid_argument("UniformService: bad bounds");
    }
    double pdf(double t) const override { return (t < lo_ || t > hi_) ? 0.0 : 1.0 / (hi_ - lo_); }
    double survival(double t) const override {
        if (t < lo_) return 1.0;
        if (t >= hi_) return 0.0;
        return (hi_ - t) / (hi_ - lo_);
    }
    double mrl(double t) const override {
        if (t >= hi_) throw std::domain_error("mrl undefined beyond support");
        if (t < lo_) return mean() - t;
        return 0.5 * (hi_ - t);
    }
    double mean() const override { return 0.5 * (lo_ + hi_); }
    double mrl_limit() const override { return 0.0; }
    double sample(Rng& rng) const override {
        std::uniform_real_distribution<double> u(lo_, hi_);
        return u(rng);
    }
    std::string name() const override { return "uniform"; }

  private:
    double lo_, hi_;
};

/// Finite mixture of arbitrary service models.
class Mixture final : public ServiceModel {
  public:
    Mixture(std::vector<ModelPtr> comps, std::vector<double> weights)
        : comps_(std::move(comps)), w_(std::move(weights)) {
        if (comps_.size() != w_.size() || comps_.empty())
            throw std::invalid_argument("Mixture: components and weights must match");
        double tot = 0.0;
        for (double wi : w_) {
            if (wi <= 0) throw std::invalid_argument("Mixture: weights must be positive");
            tot += wi;
        }
        for (double& wi : w_) wi /= tot;
        mean_ = 0.0;
        for (std::size_t i = 0; i < comps_.size(); ++i) mean_ += w_[i] * comps_[i]->mean();
    }
    double pdf(double t) const override {
        double s = 0.0;
        for (std::size_t i = 0; i < comps_.size(); ++i) s += w_[i] * comps_[i]->pdf(t);
        return s;
    }
    double survival(double t) const override {
        double s = 0.0;
        for (std::size_t i = 0; i < comps_.size(); ++i) s += w_[i] * comps_[i]->survival(t);
        return s;
    }
    double mean() const override { return mean_; }
    double mrl_limit() const override {
        // the heaviest tail dominates
        double lim = 0.0;
        for (const auto& c : comps_) lim = std::max(lim, c->mrl_limit());
        return lim;
    }
    double sample(Rng& rng) const override {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double r = u(rng), acc = 0.0;
        std::size_t i = 0;
        for (; i + 1 < comps_.size(); ++i) {
            acc += w_[i];
            if (r < acc) break;
        }
        return comps_[i]->sample(rng);
    }
    std::string name() const override { return "mixture"; }

  private:
    std::vector<ModelPtr> comps_;
    std::vector<double> w_;
    double mean_;
};

// spec-facing free functions
inline double survival(const ServiceModel& m, double t) { return m.survival(t); }
inline double hazard(const ServiceModel& m, double t) { return m.hazard(t); }
inline double mrl(const ServiceModel& m, double t) { return m.mrl(t); }
inline double mrl_limit(const ServiceModel& m) { return m.mrl_limit(); }
inline double sample(const ServiceModel& m, Rng& rng) { return m.sample(rng); }

/// True iff the MRL is nondecreasing (up to eps) across consecutive grid points.
inline bool certify_imrl(const ServiceModel& model, const Grid& grid, double eps = 1e-3) {
    double prev = model.mrl(grid.point(0));
    for (std::size_t i = 1; i < grid.n_points; ++i) {
        const double t = grid.point(i);
        if (model.survival(t) <= 0) break;
        const double cur = model.mrl(t);
        if (cur < prev - eps) return false;
        prev = cur;
    }
    return true;
}

/// Certification on a default grid spanning the support.
inline bool certify_imrl(const ServiceModel& model, std::size_t n_points = 400, double eps = 1e-3) {
    double hi = model.support_lo() + 10.0 * model.mean();
    while (model.survival(hi) > 1e-6 && hi < 1e6 * model.mean()) hi *= 2.0;
    // stay strictly inside the support so mrl() is defined at every grid point
    double lo = model.support_lo();
    double upper = hi;
    for (int k = 0; k < 60 && model.survival(upper) <= 0; ++k) upper = 0.5 * (lo + upper);
    Grid g(lo, upper, n_points);
    return certify_imrl(model, g, eps);
}

}  // namespace mg1ab
