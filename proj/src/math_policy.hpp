#pragma once

#include <boost/math/policies/error_handling.hpp>
#include <boost/math/policies/policy.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bgn/error.hpp"

namespace bgn::detail {

// Double stays double inside Boost.Math; the hot likelihood loops call these
// functions once per observation.
using MathPolicy = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

/// Runs a Boost.Math call and translates its exceptions into library errors.
template <class F>
auto boost_call(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error&) {
        throw;
    } catch (const std::domain_error& e) {
        throw DomainError(std::string(what) + ": " + e.what());
    } catch (const std::overflow_error&) {
        return std::numeric_limits<decltype(f())>::infinity();
    } catch (const std::exception& e) {
        throw ConvergenceError(std::string(what) + ": " + e.what());
    }
}

inline void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

}  // namespace bgn::detail
