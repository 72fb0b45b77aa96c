#pragma once

#include <stdexcept>
#include <string>

namespace growdiff {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// t requested at or beyond the time where L(t) reaches zero
class DomainCollapsed : public Error {
public:
    DomainCollapsed(double t_requested, double t_collapse);
    double requested() const noexcept { return requested_; }
    double collapse_time() const noexcept { return collapse_; }

private:
    double requested_;
    double collapse_;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class Unclassifiable : public Error {
public:
    using Error::Error;
};

class EnvelopeViolation : public Error {
public:
    EnvelopeViolation(const std::string& what, double xi, double t, double slack);
    double xi() const noexcept { return xi_; }
    double t() const noexcept { return t_; }
    double slack() const noexcept { return slack_; }

private:
    double xi_, t_, slack_;
};

}  // namespace growdiff
