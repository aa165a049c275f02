#include "waltz/circuit_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace waltz {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string to_text(const LogicalCircuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.n_qubits() << '\n';
  for (const auto& g : circuit.gates()) {
    out << kind_mnemonic(g.kind);
    if (!g.params.empty()) {
      out << '(';
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        out << (i ? "," : "") << format_double(g.params[i]);
      }
      out << ')';
    }
    for (int q : g.qubits) {
      out << ' ' << q;
    }
    out << '\n';
  }
  return out.str();
}

LogicalCircuit parse_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::optional<LogicalCircuit> circuit;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const std::string line = trim(raw);
    if (line.empty()) {
      continue;
    }
    std::istringstream tokens(line);
    std::string head;
    tokens >> head;
    if (!circuit) {
      int n = 0;
      if (head != "qubits" || !(tokens >> n) || n < 0) {
        parse_error(line_no, "expected 'qubits <n>' header");
      }
      circuit.emplace(n);
      continue;
    }

    std::string mnemonic = head;
    std::vector<double> params;
    if (const auto open = head.find('('); open != std::string::npos) {
      // Parameters run up to ')' and may contain spaces.
      const auto close = line.find(')');
      if (close == std::string::npos) {
        parse_error(line_no, "unterminated parameter list");
      }
      mnemonic = head.substr(0, open);
      std::string inner = line.substr(line.find('(') + 1, close - line.find('(') - 1);
      std::istringstream ps(inner);
      std::string item;
      while (std::getline(ps, item, ',')) {
        try {
          params.push_back(std::stod(trim(item)));
        } catch (const std::exception&) {
          parse_error(line_no, "bad parameter '" + item + "'");
        }
      }
      tokens.clear();
      tokens.str(line.substr(close + 1));
    }
    GateKind kind;
    try {
      kind = kind_from_mnemonic(mnemonic);
    } catch (const std::invalid_argument& e) {
      parse_error(line_no, e.what());
    }
    std::vector<int> qubits;
    std::string tok;
    while (tokens >> tok) {
      int q = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), q);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        parse_error(line_no, "bad operand '" + tok + "'");
      }
      qubits.push_back(q);
    }
    try {
      circuit->add(kind, std::move(qubits), std::move(params));
    } catch (const std::invalid_argument& e) {
      parse_error(line_no, e.what());
    }
  }
  if (!circuit) {
    throw std::invalid_argument("missing 'qubits <n>' header");
  }
  return *circuit;
}

LogicalCircuit read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

void write_text_file(const std::string& path, const LogicalCircuit& circuit) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << to_text(circuit);
}

nlohmann::json to_json(const PhysicalInstruction& inst) {
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& s : inst.slots) {
    slots.push_back({s.position, s.slot});
  }
  nlohmann::json j{{"gate", inst.gate},
                   {"devices", inst.devices},
                   {"slots", slots},
                   {"qubits", inst.qubits},
                   {"start_ns", inst.start_ns},
                   {"duration_ns", inst.duration_ns}};
  if (inst.op) {
    j["op"] = kind_mnemonic(inst.op->kind);
    j["params"] = inst.op->params;
  }
  return j;
}

PhysicalInstruction instruction_from_json(const nlohmann::json& j) {
  PhysicalInstruction inst;
  inst.gate = j.at("gate").get<std::string>();
  inst.devices = j.at("devices").get<std::vector<int>>();
  for (const auto& s : j.at("slots")) {
    inst.slots.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
  }
  inst.qubits = j.value("qubits", std::vector<int>{});
  inst.start_ns = j.at("start_ns").get<double>();
  inst.duration_ns = j.at("duration_ns").get<double>();
  if (j.contains("op")) {
    LogicalGate op;
    op.kind = kind_from_mnemonic(j.at("op").get<std::string>());
    op.params = j.value("params", std::vector<double>{});
    op.qubits = inst.qubits.empty() ? std::vector<int>{0} : std::vector<int>{inst.qubits.front()};
    inst.op = op;
  }
  return inst;
}

std::string to_json_lines(const PhysicalCircuit& circuit, const nlohmann::json& header_extra) {
  nlohmann::json header{{"format", "waltz-physical"}, {"version", 1}};
  std::vector<int> radix;
  for (Radix r : circuit.device_radix) {
    radix.push_back(r.dim());
  }
  header["device_radix"] = radix;
  if (header_extra.is_object()) {
    header.update(header_extra);
  }
  std::string out = header.dump() + '\n';
  for (const auto& inst : circuit.instructions) {
    out += to_json(inst).dump();
    out += '\n';
  }
  return out;
}

PhysicalCircuit parse_json_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  PhysicalCircuit circuit;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      continue;
    }
    const auto j = nlohmann::json::parse(line);
    if (!have_header) {
      if (j.value("format", "") != "waltz-physical") {
        throw std::invalid_argument("not a waltz physical circuit");
      }
      for (int r : j.at("device_radix").get<std::vector<int>>()) {
        circuit.device_radix.emplace_back(r);
      }
      have_header = true;
      continue;
    }
    circuit.instructions.push_back(instruction_from_json(j));
  }
  if (!have_header) {
    throw std::invalid_argument("missing physical circuit header");
  }
  return circuit;
}

}  // namespace waltz
