#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jpa {

/// Invalid physical parameter (non-positive element value, omega <= 0, ...).
/// The message names the offending field.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested operation is not defined for this coupling-network variant.
class unsupported_variant_error : public std::logic_error {
public:
    explicit unsupported_variant_error(const std::string& what) : std::logic_error(what) {}
};

/// Quadrature failed to reach the requested tolerance. Carries the best
/// estimate achieved so it can still be inspected.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, std::complex<double> estimate, double err)
        : std::runtime_error(what), estimate_(estimate), err_(err) {}
    std::complex<double> estimate() const { return estimate_; }
    double error_estimate() const { return err_; }

private:
    std::complex<double> estimate_;
    double err_;
};

/// Parametric determinant vanished at the reported detuning (at/above threshold).
class singular_gain_error : public std::runtime_error {
public:
    singular_gain_error(const std::string& what, double delta)
        : std::runtime_error(what), delta_(delta) {}
    double delta() const { return delta_; }

private:
    double delta_;
};

/// Threshold search found no instability inside the bracket. Carries the
/// sampled max-Re-eigenvalue curve for diagnostics.
class threshold_not_found_error : public std::runtime_error {
public:
    threshold_not_found_error(const std::string& what,
                              std::vector<std::pair<double, double>> curve)
        : std::runtime_error(what), curve_(std::move(curve)) {}
    const std::vector<std::pair<double, double>>& curve() const { return curve_; }

private:
    std::vector<std::pair<double, double>> curve_;
};

/// Gain profile did not bracket its half-max crossings even after widening.
class widen_grid_error : public std::runtime_error {
public:
    explicit widen_grid_error(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file/flag problem. Location is a line/column pair for parse
/// errors or a JSON pointer for semantic ones.
class config_error : public std::runtime_error {
public:
    config_error(const std::string& what, std::string location)
        : std::runtime_error(what + " [" + location + "]"), location_(std::move(location)) {}
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

} // namespace jpa
