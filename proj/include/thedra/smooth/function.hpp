#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace thedra::smooth {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const noexcept { return hi - lo; }
    // Closed interval with a relative slack of 1e-12.
    bool contains(double x) const noexcept;
    bool operator==(const Interval&) const = default;
};

// Real function on a closed interval with a first derivative. Copies share
// the underlying representation.
class ScalarFunction {
public:
    class Impl;

    ScalarFunction() = default;

    // c[0] + c[1] x + c[2] x^2 + ...
    static ScalarFunction polynomial(std::vector<double> coefficients, Interval domain);
    static ScalarFunction constant(double value, Interval domain) { return polynomial({value}, domain); }
    // amplitude * sin(frequency * x + phase) + offset
    static ScalarFunction sine(double amplitude, double frequency, double phase, double offset, Interval domain);
    // amplitude * exp(rate * x) + offset
    static ScalarFunction exponential(double amplitude, double rate, double offset, Interval domain);
    // Uniform samples over the domain (at least 16), cubic B-spline
    // interpolation.
    static ScalarFunction sampled(std::vector<double> values, Interval domain);
    // Derivative by fourth-order differences with step domain/1024 when none
    // is given.
    static ScalarFunction callable(std::function<double(double)> value, Interval domain,
                                   std::function<double(double)> derivative = {});
    // x -> initial + integral of integrand from domain.lo to x; the
    // derivative is the integrand itself.
    static ScalarFunction integral(std::function<double(double)> integrand, Interval domain, double initial = 0.0);

    double operator()(double x) const;
    double derivative(double x) const;
    const Interval& domain() const;

    // Registry name: polynomial, sine, exponential, sampled, callable, integral.
    const std::string& kind() const;
    // Parameters of closed forms (coefficients; amplitude, frequency, phase,
    // offset; amplitude, rate, offset) or the samples of a sampled function.
    const std::vector<double>& parameters() const;
    bool serializable() const;

    // Uniform samples including both endpoints.
    std::vector<double> samples(std::size_t count) const;
    ScalarFunction resampled(std::size_t count) const;

    explicit operator bool() const noexcept { return impl_ != nullptr; }

private:
    explicit ScalarFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    const Impl& impl() const;

    std::shared_ptr<const Impl> impl_;
};

// Adaptive Gauss-Kronrod quadrature with absolute tolerance `tol`.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

// Uniform grid of `count` points over the domain, endpoints included.
std::vector<double> linspace(const Interval& domain, std::size_t count);

}  // namespace thedra::smooth
