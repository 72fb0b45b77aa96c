#include "growdiff/errors.hpp"

#include <cstdio>

namespace growdiff {

namespace {
std::string collapse_message(double t, double tc) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "domain collapses at t = %.17g (requested t = %.17g)", tc, t);
    return buf;
}
}  // namespace

DomainCollapsed::DomainCollapsed(double t_requested, double t_collapse)
    : Error(collapse_message(t_requested, t_collapse)), requested_(t_requested), collapse_(t_collapse) {}

EnvelopeViolation::EnvelopeViolation(const std::string& what, double xi, double t, double slack)
    : Error(what), xi_(xi), t_(t), slack_(slack) {}

}  // namespace growdiff
