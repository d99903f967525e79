#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtqcl/circuits.hpp"
#include "mtqcl/gates.hpp"
#include "mtqcl/states.hpp"

namespace mtqcl::cli {

/// Syntax or semantic error in a circuit file, with a 1-based location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, int column, const std::string& message);

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Per-wire declaration: a Bloch triple or a computational basis bit.
struct WireState {
  int wire;
  std::variant<BlochVector, int> value;

  [[nodiscard]] BlochVector bloch() const;
  friend bool operator==(const WireState&, const WireState&) = default;
};

using StateDeclaration = std::variant<std::vector<WireState>, ComplexMatrix>;

/// Parsed circuit file.
///
/// Grammar (line oriented, '#' starts a comment):
///
///     qubits <k>
///     state bloch <wire>: <r1> <r2> <r3>
///     state basis <wire>: <0|1>
///     state density <row>: <entry> ... (2^k entries, row 0-based)
///     unitary <NAME> <arity>: <entry> ... (4^arity entries, row-major)
///     gate <NAME> <w1> [w2 [w3 ...]] [targets: w ...]
///
/// An entry is `re` or `re,im`. Gates are listed in application order.
/// Per-wire states must cover every wire; a density matrix must give every row.
struct CircuitFile {
  Circuit circuit{1};
  std::vector<GateSpec> custom_gates;
  std::optional<StateDeclaration> state;

  [[nodiscard]] int num_wires() const { return circuit.num_wires(); }
  [[nodiscard]] std::optional<DensityOperator> density() const;
  /// Bloch vectors in wire order when the state is declared per wire, else empty.
  [[nodiscard]] std::vector<BlochVector> factors() const;
};

CircuitFile parse_circuit_file(std::string_view text, const std::string& source = "<input>");
CircuitFile load_circuit_file(const std::filesystem::path& path);

/// Canonical text form; parse_circuit_file(serialize(f)) reproduces f.
std::string serialize(const CircuitFile& file);

}  // namespace mtqcl::cli
