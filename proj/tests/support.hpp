#pragma once

#include <functional>

#include <gtest/gtest.h>

#include "nalin/error.hpp"

namespace nalin::testing {

inline ::testing::AssertionResult throws_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() == code) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "threw " << to_string(e.code()) << ": " << e.what();
  }
  return ::testing::AssertionFailure() << "did not throw";
}

}  // namespace nalin::testing

#define EXPECT_CODE(stmt, code) EXPECT_TRUE(::nalin::testing::throws_code([&] { stmt; }, code))
