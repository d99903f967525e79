#include "mtqcl/cli/circuit_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace mtqcl::cli {

namespace {

constexpr int kMaxFileWires = 30;

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char ch = line[i];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == ':') {
      out.push_back({":", static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ':' && line[i] != '#' &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string format_entry(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return format_double(z.real()) + "," + format_double(z.imag());
}

/// Resolves gate names against custom definitions, then the library.
class GateResolver {
 public:
  explicit GateResolver(const std::vector<GateSpec>& custom) {
    for (const auto& g : custom) custom_.emplace(g.name(), g);
  }

  std::optional<GateSpec> resolve(std::string_view name) const {
    if (auto it = custom_.find(std::string(name)); it != custom_.end()) return it->second;
    if (auto lib = library_gate(name)) return lib;
    constexpr std::string_view kPrefix = "CONTROLLED(";
    if (name.starts_with(kPrefix) && name.ends_with(')')) {
      if (auto inner = resolve(name.substr(kPrefix.size(), name.size() - kPrefix.size() - 1))) {
        return controlled(*inner);
      }
    }
    return std::nullopt;
  }

 private:
  std::map<std::string, GateSpec> custom_;
};

class Parser {
 public:
  Parser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  CircuitFile run() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos), text_.size());
      ++line_no_;
      std::string_view line = text_.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      tokens_ = tokenize(line);
      if (!tokens_.empty()) directive();
      if (end == text_.size()) break;
      pos = end + 1;
    }
    if (!num_wires_) fail(line_no_, 1, "missing 'qubits' declaration");
    return finish();
  }

 private:
  [[noreturn]] void fail(int line, int column, const std::string& msg) const {
    throw ParseError(source_, line, column, msg);
  }
  [[noreturn]] void fail_at(std::size_t token, const std::string& msg) const {
    const int col = token < tokens_.size() ? tokens_[token].column
                                            : (tokens_.empty() ? 1 : tokens_.back().column);
    fail(line_no_, col, msg);
  }

  const Token& expect(std::size_t i, const char* what) const {
    if (i >= tokens_.size()) fail_at(i, std::string("expected ") + what);
    return tokens_[i];
  }

  void expect_colon(std::size_t i) const {
    if (expect(i, "':'").text != ":") fail_at(i, "expected ':'");
  }

  int parse_int(std::size_t i, const char* what) const {
    const auto& t = expect(i, what);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      fail_at(i, std::string("expected ") + what + ", got '" + t.text + "'");
    }
    return v;
  }

  static bool to_double(std::string_view s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  }

  double parse_real(std::size_t i) const {
    const auto& t = expect(i, "a number");
    double v = 0;
    if (!to_double(t.text, v)) fail_at(i, "expected a number, got '" + t.text + "'");
    return v;
  }

  Complex parse_entry(std::size_t i) const {
    const auto& t = expect(i, "a matrix entry");
    const auto comma = t.text.find(',');
    double re = 0, im = 0;
    bool ok = false;
    if (comma == std::string::npos) {
      ok = to_double(t.text, re);
    } else {
      ok = to_double(std::string_view(t.text).substr(0, comma), re) &&
           to_double(std::string_view(t.text).substr(comma + 1), im);
    }
    if (!ok) fail_at(i, "expected a matrix entry 're' or 're,im', got '" + t.text + "'");
    return {re, im};
  }

  std::vector<Complex> parse_entries(std::size_t first, std::size_t count) const {
    if (tokens_.size() - first != count) {
      fail_at(std::min(tokens_.size(), first + count),
              "expected " + std::to_string(count) + " entries, got " +
                  std::to_string(tokens_.size() - first));
    }
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t i = first; i < tokens_.size(); ++i) out.push_back(parse_entry(i));
    return out;
  }

  void no_trailing(std::size_t i) const {
    if (i < tokens_.size()) fail_at(i, "unexpected '" + tokens_[i].text + "'");
  }

  void require_qubits() const {
    if (!num_wires_) fail_at(0, "'qubits' must be declared first");
  }

  int checked_wire(std::size_t i) const {
    const int w = parse_int(i, "a wire index");
    if (w < 1 || w > *num_wires_) {
      fail_at(i, "wire " + std::to_string(w) + " out of range 1.." + std::to_string(*num_wires_));
    }
    return w;
  }

  void directive() {
    const std::string& head = tokens_[0].text;
    if (head == "qubits") {
      if (num_wires_) fail_at(0, "duplicate 'qubits' declaration");
      const int k = parse_int(1, "a wire count");
      if (k < 1 || k > kMaxFileWires) {
        fail_at(1, "wire count must be in 1.." + std::to_string(kMaxFileWires));
      }
      no_trailing(2);
      num_wires_ = k;
      circuit_ = Circuit(k);
    } else if (head == "state") {
      require_qubits();
      state_directive();
    } else if (head == "unitary") {
      require_qubits();
      unitary_directive();
    } else if (head == "gate") {
      require_qubits();
      gate_directive();
    } else {
      fail_at(0, "unknown directive '" + head + "'");
    }
  }

  void state_directive() {
    const std::string& kind = expect(1, "'bloch', 'basis' or 'density'").text;
    if (kind == "density") {
      if (!wire_states_.empty()) fail_at(1, "cannot mix a density matrix with per-wire states");
      const std::size_t dim = std::size_t{1} << *num_wires_;
      const int row = parse_int(2, "a row index");
      if (row < 0 || static_cast<std::size_t>(row) >= dim) {
        fail_at(2, "row " + std::to_string(row) + " out of range 0.." + std::to_string(dim - 1));
      }
      if (density_rows_.contains(row)) fail_at(2, "duplicate density row " + std::to_string(row));
      expect_colon(3);
      density_rows_[row] = parse_entries(4, dim);
      if (!density_line_) density_line_ = line_no_;
      return;
    }
    if (kind != "bloch" && kind != "basis") {
      fail_at(1, "expected 'bloch', 'basis' or 'density', got '" + kind + "'");
    }
    if (!density_rows_.empty()) fail_at(1, "cannot mix per-wire states with a density matrix");
    const int wire = checked_wire(2);
    if (std::any_of(wire_states_.begin(), wire_states_.end(),
                    [&](const WireState& s) { return s.wire == wire; })) {
      fail_at(2, "duplicate state for wire " + std::to_string(wire));
    }
    expect_colon(3);
    if (kind == "bloch") {
      BlochVector b{parse_real(4), parse_real(5), parse_real(6)};
      no_trailing(7);
      if (b.norm() > 1.0 + kDefaultTol) {
        std::ostringstream os;
        os.precision(12);
        os << "Bloch vector norm " << b.norm() << " exceeds 1";
        fail_at(4, os.str());
      }
      wire_states_.push_back({wire, b});
    } else {
      const int bit = parse_int(4, "a basis bit");
      if (bit != 0 && bit != 1) fail_at(4, "basis bit must be 0 or 1");
      no_trailing(5);
      wire_states_.push_back({wire, bit});
    }
    if (!state_line_) state_line_ = line_no_;
  }

  void unitary_directive() {
    const std::string& name = expect(1, "a gate name").text;
    if (!is_identifier(name)) fail_at(1, "invalid gate name '" + name + "'");
    if (library_gate(name)) fail_at(1, "'" + name + "' is a library gate name");
    if (std::any_of(custom_.begin(), custom_.end(),
                    [&](const GateSpec& g) { return g.name() == name; })) {
      fail_at(1, "duplicate definition of '" + name + "'");
    }
    const int arity = parse_int(2, "an arity");
    if (arity < 1 || arity > 6) fail_at(2, "arity must be in 1..6");
    expect_colon(3);
    const std::size_t dim = std::size_t{1} << arity;
    auto entries = parse_entries(4, dim * dim);
    try {
      custom_.emplace_back(name, ComplexMatrix(dim, std::move(entries)));
    } catch (const NonUnitaryGateError& e) {
      fail_at(1, e.what());
    }
  }

  void gate_directive() {
    const std::string& name = expect(1, "a gate name").text;
    const auto gate = GateResolver(custom_).resolve(name);
    if (!gate) fail_at(1, "unknown gate '" + name + "'");

    std::size_t i = 2;
    std::vector<int> wires;
    while (i < tokens_.size() && tokens_[i].text != "targets") wires.push_back(checked_wire(i++));
    if (static_cast<int>(wires.size()) != gate->arity()) {
      fail_at(1, "gate '" + name + "' takes " + std::to_string(gate->arity()) +
                     " wire(s), got " + std::to_string(wires.size()));
    }
    std::optional<WireSet> declared;
    if (i < tokens_.size()) {
      expect_colon(i + 1);
      declared.emplace();
      for (std::size_t j = i + 2; j < tokens_.size(); ++j) declared->insert(checked_wire(j));
    }
    try {
      circuit_.add(*gate, std::move(wires), std::move(declared));
    } catch (const std::exception& e) {
      fail_at(2, e.what());
    }
  }

  CircuitFile finish() {
    CircuitFile file;
    file.circuit = std::move(circuit_);
    file.custom_gates = std::move(custom_);
    const int k = *num_wires_;
    if (!wire_states_.empty()) {
      if (static_cast<int>(wire_states_.size()) != k) {
        for (int w = 1; w <= k; ++w) {
          if (std::none_of(wire_states_.begin(), wire_states_.end(),
                           [&](const WireState& s) { return s.wire == w; })) {
            fail(*state_line_, 1, "no state declared for wire " + std::to_string(w));
          }
        }
      }
      std::sort(wire_states_.begin(), wire_states_.end(),
                [](const WireState& a, const WireState& b) { return a.wire < b.wire; });
      file.state = std::move(wire_states_);
    } else if (!density_rows_.empty()) {
      const std::size_t dim = std::size_t{1} << k;
      if (density_rows_.size() != dim) {
        for (std::size_t r = 0; r < dim; ++r) {
          if (!density_rows_.contains(static_cast<int>(r))) {
            fail(*density_line_, 1, "density row " + std::to_string(r) + " missing");
          }
        }
      }
      std::vector<Complex> entries;
      entries.reserve(dim * dim);
      for (const auto& [row, values] : density_rows_) {
        entries.insert(entries.end(), values.begin(), values.end());
      }
      ComplexMatrix m(dim, std::move(entries));
      try {
        DensityOperator::from_matrix(m);
      } catch (const InvalidStateError& e) {
        fail(*density_line_, 1, e.what());
      }
      file.state = std::move(m);
    }
    return file;
  }

  std::string_view text_;
  std::string source_;
  int line_no_ = 0;
  std::vector<Token> tokens_;

  std::optional<int> num_wires_;
  Circuit circuit_{1};
  std::vector<GateSpec> custom_;
  std::vector<WireState> wire_states_;
  std::map<int, std::vector<Complex>> density_rows_;
  std::optional<int> state_line_;
  std::optional<int> density_line_;
};

}  // namespace

ParseError::ParseError(std::string source, int line, int column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

BlochVector WireState::bloch() const {
  if (const auto* b = std::get_if<BlochVector>(&value)) return *b;
  return std::get<int>(value) == 0 ? BlochVector{0, 0, 1} : BlochVector{0, 0, -1};
}

std::optional<DensityOperator> CircuitFile::density() const {
  if (!state) return std::nullopt;
  if (const auto* m = std::get_if<ComplexMatrix>(&*state)) return DensityOperator::from_matrix(*m);
  return product_state(factors());
}

std::vector<BlochVector> CircuitFile::factors() const {
  std::vector<BlochVector> out;
  if (!state) return out;
  if (const auto* wires = std::get_if<std::vector<WireState>>(&*state)) {
    for (const auto& w : *wires) out.push_back(w.bloch());
  }
  return out;
}

CircuitFile parse_circuit_file(std::string_view text, const std::string& source) {
  return Parser(text, source).run();
}

CircuitFile load_circuit_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit_file(buf.str(), path.string());
}

std::string serialize(const CircuitFile& file) {
  std::ostringstream os;
  os << "qubits " << file.num_wires() << '\n';

  // Gates built in code may carry names the parser cannot resolve; emit
  // definitions for those so the output parses back to the same circuit.
  std::vector<GateSpec> definitions = file.custom_gates;
  for (const auto& step : file.circuit.steps()) {
    const auto resolved = GateResolver(definitions).resolve(step.gate.name());
    if (resolved && resolved->matrix() == step.gate.matrix()) continue;
    if (!is_identifier(step.gate.name()) || resolved) {
      throw std::invalid_argument("serialize: gate '" + step.gate.name() +
                                  "' cannot be written under its name");
    }
    definitions.push_back(step.gate);
  }
  for (const auto& g : definitions) {
    os << "unitary " << g.name() << ' ' << g.arity() << ':';
    for (const auto& z : g.matrix().data()) os << ' ' << format_entry(z);
    os << '\n';
  }

  if (file.state) {
    if (const auto* wires = std::get_if<std::vector<WireState>>(&*file.state)) {
      for (const auto& w : *wires) {
        if (const auto* b = std::get_if<BlochVector>(&w.value)) {
          os << "state bloch " << w.wire << ": " << format_double(b->r1) << ' '
             << format_double(b->r2) << ' ' << format_double(b->r3) << '\n';
        } else {
          os << "state basis " << w.wire << ": " << std::get<int>(w.value) << '\n';
        }
      }
    } else {
      const auto& m = std::get<ComplexMatrix>(*file.state);
      for (std::size_t r = 0; r < m.dim(); ++r) {
        os << "state density " << r << ':';
        for (std::size_t c = 0; c < m.dim(); ++c) os << ' ' << format_entry(m(r, c));
        os << '\n';
      }
    }
  }

  for (const auto& step : file.circuit.steps()) {
    os << "gate " << step.gate.name();
    for (int w : step.wires) os << ' ' << w;
    if (step.declared_targets) {
      os << " targets:";
      for (int t : *step.declared_targets) os << ' ' << t;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mtqcl::cli
