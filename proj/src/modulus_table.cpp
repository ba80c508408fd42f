#include "hbf/modulus_table.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hbf/error.hpp"
#include "hbf/field.hpp"

namespace hbf {

namespace {

ModulusTable make_builtin() {
  ModulusTable table;
  // Primitive trinomials / pentanomials over GF(2).
  table.set(2, 0x7);
  table.set(3, 0xB);
  table.set(4, 0x13);
  table.set(5, 0x25);
  table.set(6, 0x43);
  table.set(7, 0x83);
  table.set(8, 0x11D);
  table.set(9, 0x211);
  table.set(10, 0x409);
  table.set(11, 0x805);
  table.set(12, 0x1053);
  table.set(13, 0x201B);
  table.set(14, 0x4443);
  table.set(15, 0x8003);
  table.set(16, 0x1100B);
  table.set(17, 0x20009);
  table.set(18, 0x40081);
  table.set(19, 0x80027);
  table.set(20, 0x100009);
  table.set(21, 0x200005);
  table.set(22, 0x400003);
  table.set(23, 0x800021);
  table.set(24, 0x1000087);
  table.set(25, 0x2000009);
  table.set(26, 0x4000047);
  table.set(27, 0x8000027);
  table.set(28, 0x10000009);
  table.set(29, 0x20000005);
  table.set(30, 0x40000053);
  table.set(31, 0x80000009);
  table.set(32, 0x1000000AFULL);
  return table;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

const ModulusTable& ModulusTable::builtin() {
  static const ModulusTable table = make_builtin();
  return table;
}

ModulusTable ModulusTable::parse(const std::string& text) {
  ModulusTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::ParseError, "modulus table line " + std::to_string(line_no) + ": missing ':'");
    }
    int degree = 0;
    try {
      degree = std::stoi(trim(line.substr(0, colon)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "modulus table line " + std::to_string(line_no) + ": bad degree");
    }
    const std::uint64_t modulus = parse_hex(trim(line.substr(colon + 1)));
    table.set(degree, modulus);
  }
  return table;
}

ModulusTable ModulusTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open modulus table " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

ModulusTable ModulusTable::from_environment() {
  if (const char* path = std::getenv("HBF_MODULI"); path != nullptr && *path != '\0') {
    return load(path);
  }
  return builtin();
}

std::optional<std::uint64_t> ModulusTable::lookup(int degree) const {
  if (auto it = entries_.find(degree); it != entries_.end()) return it->second;
  return std::nullopt;
}

void ModulusTable::set(int degree, std::uint64_t modulus) { entries_[degree] = modulus; }

std::string ModulusTable::to_text() const {
  std::string out;
  for (const auto& [degree, modulus] : entries_) {
    out += std::to_string(degree) + ": " + format_hex(modulus) + "\n";
  }
  return out;
}

std::uint64_t ModulusTable::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : to_text()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace hbf
