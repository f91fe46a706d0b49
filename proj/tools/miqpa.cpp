// Command-line front end: solve, check, oracle, decompose-demo.
//
// Exit codes: 0 success / PASS, 1 infeasible / FAIL, 2 INCONCLUSIVE,
// 3 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <miqpa/miqpa.hpp>

using namespace miqpa;

namespace {

constexpr int kOk = 0, kNo = 1, kInconclusive = 2, kInputError = 3;

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_instance(in);
}

SolutionFile load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_solution(in);
}

Rat parse_epsilon(const std::string& text) {
  Rat eps = parse_rat(text);
  if (eps <= 0 || eps > 1) throw ParseError("epsilon must lie in (0, 1]");
  return eps;
}

Rat parse_resolution(const std::string& text) {
  Rat r = parse_rat(text);
  if (r <= 0) throw ParseError("resolution must be positive");
  return r;
}

void print_report(std::ostream& out, const OracleReport& rep) {
  out << "feasible = " << (rep.feasible ? "yes" : "no") << "\n";
  if (!rep.feasible) return;
  out << "f_star = [" << to_string(rep.f_star_lo) << ", " << to_string(rep.f_star_hi) << "]\n";
  out << "f_max = [" << to_string(rep.f_max_lo) << ", " << to_string(rep.f_max_hi) << "]\n";
  out << "argmin = " << detail::format_vector(rep.argmin) << "\n";
  out << "argmax = " << detail::format_vector(rep.argmax) << "\n";
  out << "fibers = " << rep.fibers << "\n";
  out << "critical_points = " << rep.critical_points << "\n";
  out << "resolution = " << to_string(rep.resolution) << "\n";
}

int run_solve(const std::string& input, const std::string& eps_text, std::optional<std::size_t> psi, std::size_t jobs,
              const std::string& output) {
  MiqpInstance inst = bounded_instance(load_instance(input), psi);
  Rat eps = parse_epsilon(eps_text);
  SolveOptions opt;
  opt.jobs = jobs == 0 ? 1 : jobs;
  SolveResult res = solve(inst, eps, opt);
  SolutionFile sol = to_solution_file(res);
  if (output == "-") {
    write_solution(std::cout, sol);
  } else {
    std::ofstream out(output);
    if (!out) throw ParseError("cannot write '" + output + "'");
    write_solution(out, sol);
  }
  std::cerr << "status = " << (sol.feasible ? "feasible" : "infeasible");
  if (sol.feasible) std::cerr << ", value = " << to_string(sol.value);
  std::cerr << ", iterations = " << res.stats.iterations << ", enqueued = " << res.stats.enqueued << "\n";
  return sol.feasible ? kOk : kNo;
}

int run_check(const std::string& input, const std::string& solution, const std::string& eps_text,
              const std::string& res_text) {
  MiqpInstance inst = bounded_instance(load_instance(input));
  SolutionFile sol = load_solution(solution);
  Rat eps = parse_epsilon(eps_text);
  OracleReport rep = oracle_bracket(inst, parse_resolution(res_text));
  if (!sol.feasible) {
    // The solver claims infeasibility; the oracle decides.
    bool agree = !rep.feasible;
    std::cout << (agree ? "PASS" : "FAIL") << ": solution reports infeasible, oracle says "
              << (rep.feasible ? "feasible" : "infeasible") << "\n";
    return agree ? kOk : kNo;
  }
  if (sol.x.dim() != inst.dim()) throw ParseError("solution dimension does not match the instance");
  Verdict v = check_solution(inst, sol.x, eps, rep);
  std::cout << verdict_name(v);
  if (rep.candidate_value) std::cout << ": f(x) = " << to_string(*rep.candidate_value);
  if (rep.feasible)
    std::cout << ", f* in [" << to_string(rep.f_star_lo) << ", " << to_string(rep.f_star_hi) << "], f_max in ["
              << to_string(rep.f_max_lo) << ", " << to_string(rep.f_max_hi) << "]";
  if (rep.certified_ratio_hi) std::cout << ", ratio <= " << to_string(*rep.certified_ratio_hi);
  std::cout << ", eps = " << to_string(eps) << "\n";
  switch (v) {
    case Verdict::pass: return kOk;
    case Verdict::inconclusive: return kInconclusive;
    default: return kNo;
  }
}

int run_oracle(const std::string& input, const std::string& res_text) {
  MiqpInstance inst = bounded_instance(load_instance(input));
  OracleReport rep = oracle_bracket(inst, parse_resolution(res_text));
  print_report(std::cout, rep);
  return rep.feasible ? kOk : kNo;
}

int run_demo(const std::string& input) {
  MiqpInstance inst = bounded_instance(load_instance(input));
  inst.validate();
  auto& out = std::cout;
  if (!milp_feasible(inst.region(), inst.integer_mask())) {
    out << "infeasible\n";
    return kNo;
  }
  Presolved pre = presolve_full_dim(inst);
  for (auto& s : pre.provenance) out << "presolve: " << s << "\n";
  if (pre.empty) {
    out << "infeasible after presolve\n";
    return kNo;
  }
  if (pre.inst.dim() == 0 || rank(pre.inst.H) == 0) {
    out << "branch = linear (exact MILP)\n";
    return kOk;
  }
  SphericalForm sf = to_spherical_form(pre.inst);
  out << "n = " << sf.n << ", d = " << sf.d << ", k = " << sf.k << ", p = " << sf.p << "\n";
  out << "D = " << detail::format_vector(sf.D.diag()) << "\n";
  out << "c = " << detail::format_vector(sf.c) << "\n";
  out << "l = " << detail::format_vector(sf.l) << "\n";
  out << "a = " << detail::format_vector(sf.a) << "\n";
  out << "r_d = " << sf.r_d.get_str() << "\n";
  if (sf.lattice.rank() == 0) out << "lattice = (rank 0)\n";
  else out << "lattice = " << detail::format_matrix(sf.lattice.matrix()) << "\n";
  out << "containment = " << (sf.inner_ok && sf.outer_ok ? "certified" : "NOT certified") << "\n";
  Dichotomy dc = aligned_or_flat(sf);
  if (dc.is_aligned()) {
    out << "branch = aligned\n";
    out << "y_plus = " << detail::format_vector(dc.aligned->y_plus) << "\n";
    out << "y_minus = " << detail::format_vector(dc.aligned->y_minus) << "\n";
  } else {
    const FlatResult& f = *dc.flat;
    out << "branch = flat\n";
    out << "v = " << detail::format_vector(f.v) << "\n";
    out << "width = " << to_string(f.nu - f.mu) << " (bound " << to_string(f.width_bound) << ")\n";
    out << "slices = " << decompose_flat(sf, f).size() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"miqpa: epsilon-approximate solutions of bounded mixed integer quadratic programs"};
  app.require_subcommand(1);

  std::string input, output, solution, eps_text, res_text = "1/64";
  std::optional<std::size_t> psi;
  std::size_t jobs = 1;

  auto* solve_cmd = app.add_subcommand("solve", "compute an epsilon-approximate solution");
  solve_cmd->add_option("--input", input, "instance file")->required();
  solve_cmd->add_option("--epsilon", eps_text, "approximation parameter in (0, 1], e.g. 1/4")->required();
  solve_cmd->add_option("--psi", psi, "add the box [-2^psi, 2^psi]");
  solve_cmd->add_option("--jobs", jobs, "worker threads for the mesh search");
  solve_cmd->add_option("--output", output, "solution file ('-' for stdout)")->required();

  auto* check_cmd = app.add_subcommand("check", "verify a solution with the brute-force oracle");
  check_cmd->add_option("--input", input, "instance file")->required();
  check_cmd->add_option("--solution", solution, "solution file")->required();
  check_cmd->add_option("--epsilon", eps_text, "approximation parameter in (0, 1]")->required();
  check_cmd->add_option("--resolution", res_text, "oracle resolution")->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle", "bracket the optimum and the maximum");
  oracle_cmd->add_option("--input", input, "instance file")->required();
  oracle_cmd->add_option("--resolution", res_text, "oracle resolution")->capture_default_str();

  auto* demo_cmd = app.add_subcommand("decompose-demo", "print the spherical form and the dichotomy branch");
  demo_cmd->add_option("--input", input, "instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return run_solve(input, eps_text, psi, jobs, output);
    if (*check_cmd) return run_check(input, solution, eps_text, res_text);
    if (*oracle_cmd) return run_oracle(input, res_text);
    if (*demo_cmd) return run_demo(input);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const NotSymmetricError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
