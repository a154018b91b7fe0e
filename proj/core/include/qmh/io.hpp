// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qmh/filter.hpp"
#include "qmh/operators.hpp"
#include "qmh/statevector.hpp"

namespace qmh {

/// @brief Formats a double with 17 significant digits (round-trip exact).
std::string format_float(double v);

/// @brief Writes a CSV file: header row, then rows of preformatted cells.
/// Output is byte-identical for identical inputs.
/// @throws std::runtime_error when the file cannot be written
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// @brief Plain-text gate list, one gate per line:
/// kind targets=t0[,t1] controls=q:v,... (or '-') angle=<17 significant digits>
void export_circuit(std::ostream& os, const Circuit& circ);
void export_circuit_file(const std::string& path, const Circuit& circ);

/// @brief Binary statevector dump: 16-byte header (magic "QMHSV1", uint16
/// qubit count, uint64 layout hash, little-endian), then interleaved
/// real/imaginary doubles.
void write_statevector(const std::string& path, const Statevector& sv,
                       std::uint64_t layout_hash);

/// @brief Reads a statevector dump written by write_statevector.
/// @throws std::runtime_error on bad magic or truncated payload
Statevector read_statevector(const std::string& path,
                             std::uint64_t* layout_hash = nullptr);

nlohmann::json to_json(const PipelineResult& result);
nlohmann::json to_json(const SpectralReport& report);

/// @brief Writes a JSON document to a file (2-space indent, trailing newline).
void write_json(const std::string& path, const nlohmann::json& doc);

} // namespace qmh
