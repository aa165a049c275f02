#pragma once

#include "waltz/circuit.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace waltz {

/// Minimal text form, one gate per line:
///
///     qubits 3
///     h 2
///     rz(0.25) 0
///     ccx 0 1 2
///
/// Blank lines and `#` comments are ignored.
[[nodiscard]] std::string to_text(const LogicalCircuit& circuit);
[[nodiscard]] LogicalCircuit parse_text(const std::string& text);
[[nodiscard]] LogicalCircuit read_text_file(const std::string& path);
void write_text_file(const std::string& path, const LogicalCircuit& circuit);

[[nodiscard]] nlohmann::json to_json(const PhysicalInstruction& inst);
[[nodiscard]] PhysicalInstruction instruction_from_json(const nlohmann::json& j);

/// Line-oriented JSON: a header object with the device radices followed by
/// one instruction object per line.
[[nodiscard]] std::string to_json_lines(const PhysicalCircuit& circuit, const nlohmann::json& header_extra = {});
[[nodiscard]] PhysicalCircuit parse_json_lines(const std::string& text);

}  // namespace waltz
