#pragma once

#include <stdexcept>
#include <string>

namespace cfmm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (nonpositive
/// reserves, NaN, fee level out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid model parameters or a malformed model descriptor. `key()` names
/// the offending parameter or JSON key when there is one.
class ModelError : public Error {
public:
    ModelError(const std::string& what, std::string key = {})
        : Error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// The utility does not behave as a swap requires, e.g. it is flat in the
/// bought asset (strict monotonicity fails).
class ModelViolation : public Error {
public:
    using Error::Error;
};

/// No deposit in the counter asset can restore the oracle price.
class InfeasiblePooling : public Error {
public:
    InfeasiblePooling(const std::string& what, double price_low, double price_high)
        : Error(what), low_(price_low), high_(price_high) {}
    double achievable_low() const noexcept { return low_; }
    double achievable_high() const noexcept { return high_; }

private:
    double low_;
    double high_;
};

/// Fee-swap integration could not continue; carries the last accepted state.
class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, double last_input, double last_output)
        : Error(what), last_input_(last_input), last_output_(last_output) {}
    double last_input() const noexcept { return last_input_; }
    double last_output() const noexcept { return last_output_; }

private:
    double last_input_;
    double last_output_;
};

/// Target price lies outside what a single trade can move the oracle to.
class UnreachablePrice : public Error {
public:
    UnreachablePrice(const std::string& what, double price_low, double price_high)
        : Error(what), low_(price_low), high_(price_high) {}
    double reachable_low() const noexcept { return low_; }
    double reachable_high() const noexcept { return high_; }

private:
    double low_;
    double high_;
};

}  // namespace cfmm
