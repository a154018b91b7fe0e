// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace qmh {

/// @brief A requested computation exceeds a configured resource cap
/// (simulation qubit count or dense-matrix dimension).
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// @brief A postselection branch carries (numerically) zero probability.
struct EmptyBranchError : std::runtime_error {
  explicit EmptyBranchError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qmh
