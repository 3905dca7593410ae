#include "adapt_forge/integrals.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

namespace adapt_forge {

namespace {

constexpr double kDropThreshold = 1e-12;

bool same_value(double a, double b) {
  return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a));
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

int header_int(const std::string& header, const std::string& key) {
  const std::regex pattern("(^|[^A-Z0-9_])" + key + "\\s*=\\s*(-?[0-9]+)");
  std::smatch m;
  if (!std::regex_search(header, m, pattern)) {
    throw FormatError("FCIDUMP header is missing " + key);
  }
  return std::stoi(m[2].str());
}

}  // namespace

MolecularIntegrals::MolecularIntegrals(std::size_t norb, int nelec, int ms2)
    : norb_(norb),
      nelec_(nelec),
      ms2_(ms2),
      one_body_(norb * norb, 0.0),
      two_body_(norb * norb * norb * norb, 0.0) {
  if (norb == 0) throw FormatError("NORB must be positive");
  if (nelec <= 0 || static_cast<std::size_t>(nelec) > 2 * norb) {
    throw FormatError("NELEC must satisfy 0 < NELEC <= 2*NORB");
  }
}

void MolecularIntegrals::set_one_body(std::size_t p, std::size_t q,
                                      double value) {
  one_body_[p * norb_ + q] = value;
  one_body_[q * norb_ + p] = value;
}

void MolecularIntegrals::set_two_body(std::size_t p, std::size_t q,
                                      std::size_t r, std::size_t s,
                                      double value) {
  const auto at = [&](std::size_t a, std::size_t b, std::size_t c,
                      std::size_t d) -> double& {
    return two_body_[((a * norb_ + b) * norb_ + c) * norb_ + d];
  };
  at(p, q, r, s) = value;
  at(q, p, r, s) = value;
  at(p, q, s, r) = value;
  at(q, p, s, r) = value;
  at(r, s, p, q) = value;
  at(s, r, p, q) = value;
  at(r, s, q, p) = value;
  at(s, r, q, p) = value;
}

MolecularIntegrals parse_fcidump(std::istream& in) {
  std::string header;
  std::string line;
  bool terminated = false;
  bool started = false;
  while (std::getline(in, line)) {
    const std::string up = upper(line);
    if (!started) {
      const auto amp = up.find('&');
      if (amp == std::string::npos) {
        if (up.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw FormatError("FCIDUMP must begin with a namelist header");
      }
      started = true;
    }
    const auto end_tag = up.find("&END");
    if (end_tag != std::string::npos) {
      header += up.substr(0, end_tag);
      terminated = true;
      break;
    }
    const auto trimmed_end = up.find_last_not_of(" \t\r");
    if (trimmed_end != std::string::npos && up[trimmed_end] == '/') {
      header += up.substr(0, trimmed_end);
      terminated = true;
      break;
    }
    header += up;
    header += ' ';
  }
  if (!terminated) throw FormatError("FCIDUMP header is not terminated");

  const int norb = header_int(header, "NORB");
  const int nelec = header_int(header, "NELEC");
  const int ms2 = header_int(header, "MS2");
  if (norb <= 0) throw FormatError("NORB must be positive");
  MolecularIntegrals ints(static_cast<std::size_t>(norb), nelec, ms2);

  const std::size_t n = ints.norb();
  std::vector<char> seen_two(n * n * n * n, 0);
  std::vector<char> seen_one(n * n, 0);
  bool seen_core = false;

  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string value_text;
    std::array<long, 4> idx{};
    if (!(fields >> value_text >> idx[0] >> idx[1] >> idx[2] >> idx[3])) {
      throw FormatError("malformed FCIDUMP record at body line " +
                        std::to_string(line_no) + ": '" + line + "'");
    }
    // Fortran exponents (1.0D-3) are accepted alongside C-style ones.
    std::replace_if(
        value_text.begin(), value_text.end(),
        [](char c) { return c == 'D' || c == 'd'; }, 'e');
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(value_text, &used);
      if (used != value_text.size()) throw std::invalid_argument(value_text);
    } catch (const std::exception&) {
      throw FormatError("bad FCIDUMP value '" + value_text + "'");
    }
    for (long i : idx) {
      if (i < 0 || i > norb) {
        throw RangeError("FCIDUMP index " + std::to_string(i) +
                         " outside [0, " + std::to_string(norb) + "]");
      }
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (seen_core && !same_value(ints.e_core(), value)) {
        throw ConsistencyError("conflicting core energy records");
      }
      ints.set_e_core(value);
      seen_core = true;
      continue;
    }
    if (std::abs(value) < kDropThreshold) continue;
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      const std::size_t p = i - 1, q = j - 1, r = k - 1, s = l - 1;
      const std::size_t slot = ((p * n + q) * n + r) * n + s;
      if (seen_two[slot]) {
        if (!same_value(ints.two_body(p, q, r, s), value)) {
          throw ConsistencyError("conflicting two-body integral (" +
                                 std::to_string(i) + std::to_string(j) + "|" +
                                 std::to_string(k) + std::to_string(l) + ")");
        }
        continue;
      }
      ints.set_two_body(p, q, r, s, value);
      for (auto [a, b, c, d] :
           {std::array{p, q, r, s}, std::array{q, p, r, s},
            std::array{p, q, s, r}, std::array{q, p, s, r},
            std::array{r, s, p, q}, std::array{s, r, p, q},
            std::array{r, s, q, p}, std::array{s, r, q, p}}) {
        seen_two[((a * n + b) * n + c) * n + d] = 1;
      }
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      const std::size_t p = i - 1, q = j - 1;
      if (seen_one[p * n + q]) {
        if (!same_value(ints.one_body(p, q), value)) {
          throw ConsistencyError("conflicting one-body integral");
        }
        continue;
      }
      ints.set_one_body(p, q, value);
      seen_one[p * n + q] = seen_one[q * n + p] = 1;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy record; not part of the Hamiltonian
    } else {
      throw FormatError("unrecognized FCIDUMP index pattern at body line " +
                        std::to_string(line_no));
    }
  }
  return ints;
}

MolecularIntegrals parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fcidump(in);
}

MolecularIntegrals load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP file: " + path);
  return parse_fcidump(in);
}

}  // namespace adapt_forge
