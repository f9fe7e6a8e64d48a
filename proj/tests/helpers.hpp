#pragma once

#include <complex>

#include "doctest.h"

#include "susygreen/energy.hpp"

namespace testing {

inline double rel(susy::Complex value, susy::Complex ref) { return std::abs(value - ref) / std::abs(ref); }

// Asserts |value - ref| <= tol |ref|.
#define CHECK_REL(value, ref, tol) CHECK(::testing::rel((value), (ref)) <= (tol))
// Asserts |value - ref| <= tol.
#define CHECK_ABS(value, ref, tol) CHECK(std::abs(susy::Complex(value) - susy::Complex(ref)) <= (tol))

}  // namespace testing
