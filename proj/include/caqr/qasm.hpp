#pragma once

#include <string>
#include <string_view>

#include "caqr/circuit.hpp"

namespace caqr {

/// Parses the supported OpenQASM-2 subset: one `qreg` and at most one `creg`,
/// the gate set of GateKind, `measure`, `reset`, single-bit conditionals of
/// the form `if (c[k]==1) x q[j];`, and comment pragmas
/// `// #commuting begin [id]`, `// #commuting end`, `// #scratch c[k]`.
///
/// Throws ParseError carrying the line and column of the offending token.
Circuit parse_qasm(std::string_view text);

/// Emits text that parse_qasm reads back into a structurally equal circuit.
std::string emit_qasm(const Circuit& circuit);

Circuit read_qasm_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace caqr
