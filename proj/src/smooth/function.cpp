#include "thedra/smooth/function.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>

#include "thedra/error.hpp"

namespace thedra::smooth {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Segment {
    double a, b, estimate, error, l1;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const std::function<double(double)>& f, double a, double b) {
    Segment s{a, b, 0.0, 0.0, 0.0};
    s.estimate = Kronrod::integrate(f, a, b, 0, 0.0, &s.error, &s.l1);
    return s;
}

// Globally adaptive: bisect the segment with the largest error estimate
// until the total error meets the tolerance or the rounding floor.
double adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr std::size_t kMaxSegments = 2048;
    std::priority_queue<Segment> queue;
    queue.push(kronrod(f, a, b));
    double total = queue.top().estimate, error = queue.top().error, l1 = queue.top().l1;
    while (queue.size() < kMaxSegments && error > tol && error > 64 * std::numeric_limits<double>::epsilon() * l1) {
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) break;
        const Segment left = kronrod(f, worst.a, mid), right = kronrod(f, mid, worst.b);
        total += left.estimate + right.estimate - worst.estimate;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        queue.push(left);
        queue.push(right);
    }
    return total;
}

std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

bool Interval::contains(double x) const noexcept {
    const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    return x >= lo - slack && x <= hi + slack;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    return adaptive(f, a, b, tol);
}

std::vector<double> linspace(const Interval& domain, std::size_t count) {
    std::vector<double> xs(count);
    if (count == 1) {
        xs[0] = domain.lo;
        return xs;
    }
    for (std::size_t k = 0; k < count; ++k)
        xs[k] = k + 1 == count ? domain.hi : domain.lo + domain.width() * double(k) / double(count - 1);
    return xs;
}

class ScalarFunction::Impl {
public:
    Impl(std::string kind, Interval domain, std::vector<double> parameters)
        : kind_(std::move(kind)), domain_(domain), parameters_(std::move(parameters)) {}
    virtual ~Impl() = default;

    virtual double value(double x) const = 0;
    virtual double derivative(double x) const = 0;

    const std::string& kind() const { return kind_; }
    const Interval& domain() const { return domain_; }
    const std::vector<double>& parameters() const { return parameters_; }

private:
    std::string kind_;
    Interval domain_;
    std::vector<double> parameters_;
};

namespace {

class Polynomial final : public ScalarFunction::Impl {
public:
    Polynomial(std::vector<double> c, Interval d) : Impl("polynomial", d, c), c_(std::move(c)) {}
    double value(double x) const override {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    double derivative(double x) const override {
        double acc = 0.0;
        for (std::size_t k = c_.size(); k-- > 1;) acc = acc * x + double(k) * c_[k];
        return acc;
    }

private:
    std::vector<double> c_;
};

class Sine final : public ScalarFunction::Impl {
public:
    Sine(double a, double w, double p, double o, Interval d) : Impl("sine", d, {a, w, p, o}), a_(a), w_(w), p_(p), o_(o) {}
    double value(double x) const override { return a_ * std::sin(w_ * x + p_) + o_; }
    double derivative(double x) const override { return a_ * w_ * std::cos(w_ * x + p_); }

private:
    double a_, w_, p_, o_;
};

class Exponential final : public ScalarFunction::Impl {
public:
    Exponential(double a, double r, double o, Interval d) : Impl("exponential", d, {a, r, o}), a_(a), r_(r), o_(o) {}
    double value(double x) const override { return a_ * std::exp(r_ * x) + o_; }
    double derivative(double x) const override { return a_ * r_ * std::exp(r_ * x); }

private:
    double a_, r_, o_;
};

class Sampled final : public ScalarFunction::Impl {
public:
    // Fourth-order one-sided difference at either end.
    static double end_slope(const std::vector<double>& v, const Interval& d, bool right) {
        const double h = d.width() / double(v.size() - 1);
        const std::size_t n = v.size() - 1;
        auto at = [&](std::size_t k) { return right ? v[n - k] : v[k]; };
        const double slope = (-25 * at(0) + 48 * at(1) - 36 * at(2) + 16 * at(3) - 3 * at(4)) / (12 * h);
        return right ? -slope : slope;
    }

    Sampled(std::vector<double> v, Interval d)
        : Impl("sampled", d, v),
          spline_(v.begin(), v.end(), d.lo, d.width() / double(v.size() - 1), end_slope(v, d, false),
                  end_slope(v, d, true)) {}
    double value(double x) const override { return spline_(x); }
    double derivative(double x) const override { return spline_.prime(x); }

private:
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

class Callable final : public ScalarFunction::Impl {
public:
    Callable(std::function<double(double)> f, std::function<double(double)> df, Interval d)
        : Impl("callable", d, {}), f_(std::move(f)), df_(std::move(df)), h_(d.width() / 1024.0) {}
    double value(double x) const override { return f_(x); }
    double derivative(double x) const override {
        if (df_) return df_(x);
        const Interval& d = domain();
        const double h = h_;
        if (x - 2 * h >= d.lo && x + 2 * h <= d.hi)
            return (f_(x - 2 * h) - 8 * f_(x - h) + 8 * f_(x + h) - f_(x + 2 * h)) / (12 * h);
        // One-sided fourth-order stencils at the ends.
        const double s = x - 2 * h < d.lo ? h : -h;
        return (-25 * f_(x) + 48 * f_(x + s) - 36 * f_(x + 2 * s) + 16 * f_(x + 3 * s) - 3 * f_(x + 4 * s)) / (12 * s);
    }

private:
    std::function<double(double)> f_;
    std::function<double(double)> df_;
    double h_;
};

// Cumulative integral tabulated at uniform nodes. Between nodes the value is
// the cubic Hermite interpolant of the node values and integrand; where that
// disagrees with quadrature at the cell midpoint (kinks, steep integrands)
// the cell falls back to quadrature from its left node.
class Integral final : public ScalarFunction::Impl {
public:
    static constexpr std::size_t kNodes = 1024;

    Integral(std::function<double(double)> g, Interval d, double initial)
        : Impl("integral", d, {}), g_(std::move(g)), h_(d.width() / double(kNodes)), tol_(1e-10 / double(kNodes)) {
        nodes_.resize(kNodes + 1);
        slopes_.resize(kNodes + 1);
        rough_.assign(kNodes, false);
        nodes_[0] = initial;
        for (std::size_t k = 0; k <= kNodes; ++k) slopes_[k] = g_(node_x(k));
        for (std::size_t k = 0; k < kNodes; ++k) {
            const double a = node_x(k), b = node_x(k + 1), mid = 0.5 * (a + b);
            const double left = integrate(g_, a, mid, 0.5 * tol_);
            nodes_[k + 1] = nodes_[k] + left + integrate(g_, mid, b, 0.5 * tol_);
            const double hermite = hermite_offset(k, 0.5);
            rough_[k] = !(std::abs(hermite - left) <= 1e-13 * std::max(1.0, std::abs(nodes_[k])));
        }
    }
    double value(double x) const override {
        const std::size_t k = std::min<std::size_t>(kNodes - 1, std::size_t(std::max(0.0, (x - domain().lo) / h_)));
        if (rough_[k]) return nodes_[k] + integrate(g_, node_x(k), x, tol_);
        return nodes_[k] + hermite_offset(k, (x - node_x(k)) / (node_x(k + 1) - node_x(k)));
    }
    double derivative(double x) const override { return g_(x); }

private:
    double node_x(std::size_t k) const { return k == kNodes ? domain().hi : domain().lo + h_ * double(k); }

    // Hermite interpolant minus the left node value at s in [0, 1].
    double hermite_offset(std::size_t k, double s) const {
        const double w = node_x(k + 1) - node_x(k);
        const double s2 = s * s, s3 = s2 * s;
        return (-2 * s3 + 3 * s2) * (nodes_[k + 1] - nodes_[k]) + (s3 - 2 * s2 + s) * w * slopes_[k] +
               (s3 - s2) * w * slopes_[k + 1];
    }

    std::function<double(double)> g_;
    double h_;
    double tol_;
    std::vector<double> nodes_;
    std::vector<double> slopes_;
    std::vector<bool> rough_;
};

void require_domain(const Interval& d) {
    if (!(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo < d.hi))
        throw Error(ErrorCode::InvalidArgument, "domain must be a nondegenerate finite interval", "domain");
}

}  // namespace

ScalarFunction ScalarFunction::polynomial(std::vector<double> coefficients, Interval domain) {
    require_domain(domain);
    if (coefficients.empty()) coefficients.push_back(0.0);
    return ScalarFunction(std::make_shared<Polynomial>(std::move(coefficients), domain));
}

ScalarFunction ScalarFunction::sine(double amplitude, double frequency, double phase, double offset, Interval domain) {
    require_domain(domain);
    return ScalarFunction(std::make_shared<Sine>(amplitude, frequency, phase, offset, domain));
}

ScalarFunction ScalarFunction::exponential(double amplitude, double rate, double offset, Interval domain) {
    require_domain(domain);
    return ScalarFunction(std::make_shared<Exponential>(amplitude, rate, offset, domain));
}

ScalarFunction ScalarFunction::sampled(std::vector<double> values, Interval domain) {
    require_domain(domain);
    if (values.size() < 16)
        throw Error(ErrorCode::InvalidArgument, "sampled functions need at least 16 samples", "values");
    for (double v : values)
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "samples must be finite", "values");
    return ScalarFunction(std::make_shared<Sampled>(std::move(values), domain));
}

ScalarFunction ScalarFunction::callable(std::function<double(double)> value, Interval domain,
                                        std::function<double(double)> derivative) {
    require_domain(domain);
    return ScalarFunction(std::make_shared<Callable>(std::move(value), std::move(derivative), domain));
}

ScalarFunction ScalarFunction::integral(std::function<double(double)> integrand, Interval domain, double initial) {
    require_domain(domain);
    return ScalarFunction(std::make_shared<Integral>(std::move(integrand), domain, initial));
}

const ScalarFunction::Impl& ScalarFunction::impl() const {
    if (!impl_) throw Error(ErrorCode::InvalidArgument, "empty function");
    return *impl_;
}

double ScalarFunction::operator()(double x) const {
    const Impl& f = impl();
    if (!f.domain().contains(x))
        throw Error(ErrorCode::OutOfDomain, "x = " + format(x) + " outside [" + format(f.domain().lo) + ", " +
                                                format(f.domain().hi) + "]");
    return f.value(std::clamp(x, f.domain().lo, f.domain().hi));
}

double ScalarFunction::derivative(double x) const {
    const Impl& f = impl();
    if (!f.domain().contains(x))
        throw Error(ErrorCode::OutOfDomain, "x = " + format(x) + " outside [" + format(f.domain().lo) + ", " +
                                                format(f.domain().hi) + "]");
    return f.derivative(std::clamp(x, f.domain().lo, f.domain().hi));
}

const Interval& ScalarFunction::domain() const { return impl().domain(); }
const std::string& ScalarFunction::kind() const { return impl().kind(); }
const std::vector<double>& ScalarFunction::parameters() const { return impl().parameters(); }

bool ScalarFunction::serializable() const {
    const std::string& k = kind();
    return k != "callable" && k != "integral";
}

std::vector<double> ScalarFunction::samples(std::size_t count) const {
    std::vector<double> out;
    for (double x : linspace(domain(), count)) out.push_back((*this)(x));
    return out;
}

ScalarFunction ScalarFunction::resampled(std::size_t count) const { return sampled(samples(count), domain()); }

}  // namespace thedra::smooth
