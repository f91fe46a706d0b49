#pragma once

/**
 * Text formats for instances and solutions.
 *
 * Both are "key = value" lines with '#' comments. Vectors are written
 * [a b c], matrices [a b; c d] (a bracket may span several lines), and
 * rationals as p/q. An instance file:
 *
 *   n = 2
 *   p = 1
 *   H = [1 0; 0 -1]
 *   h = [0 1/2]
 *   W = [1 1]
 *   w = [3]
 *   bounds = [-2 2; -1 3]
 *   psi = 4            # optional: adds the box [-2^psi, 2^psi]
 *
 * A solution file repeats `provenance` and `certificate` once per line of
 * the log.
 */

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "approx.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace miqpa {

namespace detail {

struct KeyValue {
  std::string key, value;
  std::size_t line = 0;
};

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<KeyValue> read_key_values(std::istream& in) {
  std::vector<KeyValue> out;
  std::string raw;
  std::size_t lineno = 0;
  KeyValue* open = nullptr;
  int depth = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (open) {
      open->value += ' ' + line;
    } else {
      line = trim(line);
      if (line.empty()) continue;
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
      out.push_back({trim(line.substr(0, eq)), line.substr(eq + 1), lineno});
      if (out.back().key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key");
      if (trim(out.back().value).rfind('[', 0) != 0) {
        out.back().value = trim(out.back().value);
        continue;  // plain scalar or free text
      }
      open = &out.back();
      depth = 0;
      line = open->value;
    }
    for (char c : line) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (depth < 0) throw ParseError("line " + std::to_string(lineno) + ": unbalanced ']'");
    }
    if (depth == 0) {
      open->value = trim(open->value);
      open = nullptr;
    }
  }
  if (open) throw ParseError("line " + std::to_string(open->line) + ": unterminated '['");
  return out;
}

inline std::vector<std::vector<Rat>> parse_rows(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ParseError(what + ": expected a bracketed list");
  t = t.substr(1, t.size() - 2);
  if (t.find_first_of("[]") != std::string::npos) throw ParseError(what + ": nested brackets");
  std::vector<std::vector<Rat>> rows;
  std::stringstream ss(t);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::istringstream rs(row);
    std::vector<Rat> r;
    std::string tok;
    while (rs >> tok) r.push_back(parse_rat(tok));
    rows.push_back(std::move(r));
  }
  if (rows.size() == 1 && rows[0].empty()) rows.clear();
  return rows;
}

inline RatVec parse_vector(const std::string& text, const std::string& what) {
  auto rows = parse_rows(text, what);
  if (rows.empty()) return RatVec(0);
  if (rows.size() != 1) throw ParseError(what + ": expected a single row");
  return RatVec(rows[0]);
}

inline RatMat parse_matrix(const std::string& text, std::size_t cols, const std::string& what) {
  auto rows = parse_rows(text, what);
  RatMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw ParseError(what + ": row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

inline std::size_t parse_count(const std::string& text, const std::string& what) {
  Rat v = parse_rat(trim(text));
  if (!is_integer(v) || v < 0 || !v.get_num().fits_ulong_p()) throw ParseError(what + ": expected a nonnegative integer");
  return v.get_num().get_ui();
}

inline std::string format_vector(const RatVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s + "]";
}

inline std::string format_matrix(const RatMat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + to_string(m(i, j));
  }
  return s + "]";
}

}  // namespace detail

struct InstanceFile {
  MiqpInstance instance;  // lo/hi empty when the file has no bounds
  std::optional<std::size_t> psi;
};

inline InstanceFile read_instance(std::istream& in) {
  auto kvs = detail::read_key_values(in);
  std::map<std::string, std::string> f;
  for (auto& kv : kvs) {
    static const char* known[] = {"n", "p", "H", "h", "W", "w", "bounds", "psi"};
    bool ok = false;
    for (const char* k : known) ok = ok || kv.key == k;
    if (!ok) throw ParseError("line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    if (!f.emplace(kv.key, kv.value).second) throw ParseError("line " + std::to_string(kv.line) + ": duplicate key '" + kv.key + "'");
  }
  for (const char* k : {"n", "H", "h"})
    if (!f.count(k)) throw ParseError(std::string("missing key '") + k + "'");
  InstanceFile out;
  MiqpInstance& inst = out.instance;
  const std::size_t n = detail::parse_count(f["n"], "n");
  inst.p = f.count("p") ? detail::parse_count(f["p"], "p") : 0;
  if (inst.p > n) throw ParseError("p exceeds n");
  inst.H = detail::parse_matrix(f["H"], n, "H");
  if (inst.H.rows() != n) throw ParseError("H: expected " + std::to_string(n) + " rows");
  if (!inst.H.is_symmetric()) throw ParseError("H: matrix is not symmetric");
  inst.h = detail::parse_vector(f["h"], "h");
  if (inst.h.dim() != n) throw ParseError("h: expected " + std::to_string(n) + " entries");
  inst.P = Polyhedron::free_space(n);
  if (f.count("W") != f.count("w")) throw ParseError("W and w must be given together");
  if (f.count("W")) {
    RatMat W = detail::parse_matrix(f["W"], n, "W");
    RatVec w = detail::parse_vector(f["w"], "w");
    if (w.dim() != W.rows()) throw ParseError("w: expected " + std::to_string(W.rows()) + " entries");
    for (std::size_t i = 0; i < W.rows(); ++i) inst.P.add_row(W.row(i), w[i]);
  }
  if (f.count("bounds")) {
    RatMat b = detail::parse_matrix(f["bounds"], 2, "bounds");
    if (b.rows() != n) throw ParseError("bounds: expected " + std::to_string(n) + " pairs");
    inst.lo = b.col(0);
    inst.hi = b.col(1);
    for (std::size_t i = 0; i < n; ++i)
      if (inst.lo[i] > inst.hi[i]) throw ParseError("bounds: empty interval for variable " + std::to_string(i + 1));
  }
  if (f.count("psi")) out.psi = detail::parse_count(f["psi"], "psi");
  return out;
}

inline InstanceFile read_instance_string(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

/// The instance with its final box: explicit bounds intersected with
/// [-2^psi, 2^psi] when psi is known. Throws when neither is available.
inline MiqpInstance bounded_instance(const InstanceFile& file, std::optional<std::size_t> psi_override = {}) {
  MiqpInstance inst = file.instance;
  auto psi = psi_override ? psi_override : file.psi;
  const std::size_t n = inst.dim();
  if (psi) {
    Rat big(pow_int(Int(2), *psi));
    if (inst.lo.empty()) {
      inst.lo = RatVec(std::vector<Rat>(n, Rat(-big)));
      inst.hi = RatVec(std::vector<Rat>(n, big));
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        inst.lo[i] = std::max<Rat>(inst.lo[i], -big);
        inst.hi[i] = std::min<Rat>(inst.hi[i], big);
        if (inst.lo[i] > inst.hi[i]) throw ParseError("psi box excludes the bounds of variable " + std::to_string(i + 1));
      }
    }
  }
  if (inst.lo.empty()) throw ParseError("explicit bounds or psi are required");
  return inst;
}

inline void write_instance(std::ostream& out, const MiqpInstance& inst, std::optional<std::size_t> psi = {}) {
  const std::size_t n = inst.dim();
  out << "n = " << n << "\n";
  out << "p = " << inst.p << "\n";
  out << "H = " << detail::format_matrix(inst.H) << "\n";
  out << "h = " << detail::format_vector(inst.h) << "\n";
  if (inst.P.num_rows() > 0) {
    out << "W = " << detail::format_matrix(inst.P.W) << "\n";
    out << "w = " << detail::format_vector(inst.P.w) << "\n";
  }
  if (!inst.lo.empty()) {
    RatMat b(n, 2);
    b.set_col(0, inst.lo);
    b.set_col(1, inst.hi);
    out << "bounds = " << detail::format_matrix(b) << "\n";
  }
  if (psi) out << "psi = " << *psi << "\n";
}

struct SolutionFile {
  bool feasible = false;
  RatVec x;
  Rat value;
  std::vector<std::string> provenance;
  std::vector<std::string> certificate;
};

inline SolutionFile to_solution_file(const SolveResult& res) {
  SolutionFile s;
  if (!res.solution) return s;
  s.feasible = true;
  s.x = res.solution->x;
  s.value = res.solution->value;
  s.provenance = res.solution->provenance;
  s.certificate = res.solution->certificate;
  return s;
}

inline void write_solution(std::ostream& out, const SolutionFile& s) {
  out << "status = " << (s.feasible ? "feasible" : "infeasible") << "\n";
  if (!s.feasible) return;
  out << "x = " << detail::format_vector(s.x) << "\n";
  out << "value = " << to_string(s.value) << "\n";
  for (const auto& line : s.provenance) out << "provenance = " << line << "\n";
  for (const auto& line : s.certificate) out << "certificate = " << line << "\n";
}

inline SolutionFile read_solution(std::istream& in) {
  SolutionFile s;
  bool have_status = false, have_x = false;
  for (auto& kv : detail::read_key_values(in)) {
    if (kv.key == "status") {
      std::string v = detail::trim(kv.value);
      if (v != "feasible" && v != "infeasible") throw ParseError("status: expected 'feasible' or 'infeasible'");
      s.feasible = v == "feasible";
      have_status = true;
    } else if (kv.key == "x") {
      s.x = detail::parse_vector(kv.value, "x");
      have_x = true;
    } else if (kv.key == "value") {
      s.value = parse_rat(detail::trim(kv.value));
    } else if (kv.key == "provenance") {
      s.provenance.push_back(detail::trim(kv.value));
    } else if (kv.key == "certificate") {
      s.certificate.push_back(detail::trim(kv.value));
    } else {
      throw ParseError("line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    }
  }
  if (!have_status) s.feasible = have_x;
  if (s.feasible && !have_x) throw ParseError("solution file has no x");
  return s;
}

}  // namespace miqpa
