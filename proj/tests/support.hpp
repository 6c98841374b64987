#pragma once

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace tiltkit {

inline void PrintTo(const FieldSpec& f, std::ostream* os) {
  *os << (f.is_rational() ? "Q" : "GF(" + std::to_string(f.characteristic) + ")");
}

}  // namespace tiltkit

namespace tiltkit::test {

inline std::string field_label(const ::testing::TestParamInfo<FieldSpec>& info) {
  return info.param.is_rational() ? "Q" : "GF" + std::to_string(info.param.characteristic);
}

inline auto both_fields() { return ::testing::Values(FieldSpec::rationals(), FieldSpec::prime(101)); }

}  // namespace tiltkit::test
