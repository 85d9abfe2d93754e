#include "eoc/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace eoc {

std::uint32_t gate_max_line(const Gate& g) {
  return std::visit([](const auto& x) { return x.max_line(); }, g);
}

Gate gate_inverted(const Gate& g) {
  if (std::holds_alternative<ControlledGate>(g)) return g;  // involution
  return std::get<Gate3>(g).inverted();
}

void apply(const Gate& g, BitVec& state) {
  if (std::holds_alternative<ControlledGate>(g))
    apply_gate(std::get<ControlledGate>(g), state);
  else
    apply_gate3(std::get<Gate3>(g), state);
}

std::uint64_t apply(const Gate& g, std::uint64_t state, std::uint32_t width) {
  if (std::holds_alternative<ControlledGate>(g))
    return apply_gate(std::get<ControlledGate>(g), state, width);
  return apply_gate3(std::get<Gate3>(g), state, width);
}

void Circuit::push(Gate g) {
  if (gate_max_line(g) >= width)
    throw ValidationError("Circuit::push: gate line out of range");
  gates.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.width != width)
    throw ValidationError("Circuit::append: width mismatch");
  for (const auto& g : other.gates) gates.push_back(g);
}

void Circuit::apply(BitVec& state) const {
  if (state.size() != width)
    throw ValidationError("Circuit::apply: state width mismatch");
  for (const auto& g : gates) eoc::apply(g, state);
}

BitVec Circuit::applied(const BitVec& state) const {
  BitVec out = state;
  apply(out);
  return out;
}

std::uint64_t Circuit::apply_value(std::uint64_t state) const {
  for (const auto& g : gates) state = eoc::apply(g, state, width);
  return state;
}

std::vector<std::uint32_t> truth_table(const Circuit& c,
                                       std::uint32_t width_limit) {
  if (c.width > width_limit)
    throw ValidationError("truth_table: width " + std::to_string(c.width) +
                          " exceeds oracle limit " +
                          std::to_string(width_limit));
  const std::uint64_t n = std::uint64_t{1} << c.width;
  std::vector<std::uint32_t> table(n);
  for (std::uint64_t x = 0; x < n; ++x)
    table[x] = static_cast<std::uint32_t>(c.apply_value(x));
  return table;
}

bool is_permutation_table(const std::vector<std::uint32_t>& table) {
  std::vector<std::uint8_t> seen(table.size(), 0);
  for (auto v : table) {
    if (v >= table.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Circuit inverted(const Circuit& c) {
  Circuit out(c.width);
  out.registers = c.registers;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
    out.gates.push_back(gate_inverted(*it));
  return out;
}

Circuit concatenated(const Circuit& a, const Circuit& b) {
  Circuit out = a;
  out.append(b);
  return out;
}

static void print_controlled(std::ostream& os, const ControlledGate& g) {
  const char* name = g.arity() == 0   ? "NOT"
                     : g.arity() == 1 ? "CNOT"
                     : g.arity() == 2 ? "TOFFOLI"
                                      : "GATE";
  os << name;
  if (g.arity() > 2) os << " t=" << g.target();
  for (const auto& c : g.controls())
    os << " c=" << (c.negated ? '-' : '+') << c.line;
  if (g.arity() <= 2) os << " t=" << g.target();
  os << "\n";
}

std::string print_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "n " << c.width << "\n";
  if (c.registers != 1) os << "registers " << int(c.registers) << "\n";
  for (const auto& g : c.gates) {
    if (std::holds_alternative<ControlledGate>(g)) {
      print_controlled(os, std::get<ControlledGate>(g));
    } else {
      const auto& t = std::get<Gate3>(g);
      os << "G3 j=" << t.lines[0] << "," << t.lines[1] << "," << t.lines[2]
         << " lut=";
      for (auto v : t.lut.map) os << int(v);
      os << "\n";
    }
  }
  return os.str();
}

namespace {

struct Tok {
  std::string key, value;
};

std::vector<Tok> split_tokens(const std::string& line) {
  std::vector<Tok> toks;
  std::istringstream is(line);
  std::string w;
  while (is >> w) {
    const auto eq = w.find('=');
    if (eq == std::string::npos)
      toks.push_back({w, ""});
    else
      toks.push_back({w.substr(0, eq), w.substr(eq + 1)});
  }
  return toks;
}

Control parse_control(const std::string& v) {
  if (v.empty()) throw ValidationError("circuit: empty control");
  bool neg = false;
  std::size_t pos = 0;
  if (v[0] == '+' || v[0] == '-') {
    neg = (v[0] == '-');
    pos = 1;
  }
  return Control{static_cast<std::uint32_t>(std::stoul(v.substr(pos))), neg};
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
  Circuit c;
  bool have_width = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto toks = split_tokens(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].key;
    try {
      if (kw == "n") {
        c.width = static_cast<std::uint32_t>(std::stoul(toks.at(1).key));
        have_width = true;
      } else if (kw == "registers") {
        const int r = std::stoi(toks.at(1).key);
        if (r != 1 && r != 2)
          throw ValidationError("registers must be 1 or 2");
        c.registers = static_cast<std::uint8_t>(r);
      } else if (kw == "NOT" || kw == "CNOT" || kw == "TOFFOLI" ||
                 kw == "GATE") {
        if (!have_width) throw ValidationError("gate before n header");
        std::vector<Control> controls;
        std::uint32_t target = 0;
        bool have_target = false;
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (toks[i].key == "c") {
            controls.push_back(parse_control(toks[i].value));
          } else if (toks[i].key == "t") {
            target = static_cast<std::uint32_t>(std::stoul(toks[i].value));
            have_target = true;
          } else {
            throw ValidationError("unknown field " + toks[i].key);
          }
        }
        if (!have_target) throw ValidationError("gate missing target");
        const std::size_t expected = kw == "NOT"       ? 0
                                     : kw == "CNOT"    ? 1
                                     : kw == "TOFFOLI" ? 2
                                                       : controls.size();
        if (controls.size() != expected)
          throw ValidationError(kw + ": wrong control count");
        c.push(ControlledGate(target, std::move(controls)));
      } else if (kw == "G3") {
        if (!have_width) throw ValidationError("gate before n header");
        std::array<std::uint32_t, 3> lines{};
        Lut8 lut;
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (toks[i].key == "j") {
            std::istringstream js(toks[i].value);
            std::string part;
            for (int k = 0; k < 3; ++k) {
              if (!std::getline(js, part, ','))
                throw ValidationError("G3: expected three lines");
              lines[k] = static_cast<std::uint32_t>(std::stoul(part));
            }
          } else if (toks[i].key == "lut") {
            if (toks[i].value.size() != 8)
              throw ValidationError("G3: lut needs 8 digits");
            for (int k = 0; k < 8; ++k) {
              const char d = toks[i].value[k];
              if (d < '0' || d > '7')
                throw ValidationError("G3: lut digit out of range");
              lut.map[k] = static_cast<std::uint8_t>(d - '0');
            }
          } else {
            throw ValidationError("unknown field " + toks[i].key);
          }
        }
        c.push(Gate3(lines, lut));
      } else {
        throw ValidationError("unknown directive " + kw);
      }
    } catch (const std::exception& e) {
      throw ValidationError("circuit line " + std::to_string(lineno) + ": " +
                            e.what());
    }
  }
  if (!have_width) throw ValidationError("circuit: missing n header");
  return c;
}

Circuit parse_circuit_text(const std::string& text) {
  std::istringstream is(text);
  return parse_circuit(is);
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open circuit file " + path);
  return parse_circuit(in);
}

void save_circuit(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write circuit file " + path);
  out << print_circuit(c);
  if (!out) throw IoError("error writing " + path);
}

}  // namespace eoc
