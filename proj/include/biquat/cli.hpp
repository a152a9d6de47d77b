#pragma once

/**
 * @file cli.hpp
 * @brief Command dispatch for the `biquat` tool.
 *
 * Exit codes: 0 success (or every input is a root), 1 not a root / no
 * lattice hits, 2 usage error, 3 a theorem-violation finding.
 */

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "biquat/algebra.hpp"
#include "biquat/oracle.hpp"
#include "biquat/roots.hpp"
#include "biquat/wire.hpp"
#include "biquat/worked_examples.hpp"

namespace biquat::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,
  kUsage = 2,
  kTheoremViolation = 3,
};

struct GlobalOptions {
  double tol = kDefaultTolerance;
  bool json = false;
  int digits = kDefaultDigits;
};

inline std::string format_direction(const PureUnit& u, int digits) {
  return "(" + format_number(u.x(), digits) + "," + format_number(u.y(), digits) + "," +
         format_number(u.z(), digits) + ")";
}

/// One-line text form of a classification, e.g.
/// "nontrivial mu=(1,0,0) nu=(0,1,0) t=0.88137358701954305 residual=4.4408920985006262e-16".
inline std::string describe(const RootClassification& c, int digits = kDefaultDigits) {
  struct Visitor {
    int digits;
    std::string operator()(const Nontrivial& n) const {
      return "nontrivial mu=" + format_direction(n.mu, digits) +
             " nu=" + format_direction(n.nu, digits) + " t=" + format_number(n.t, digits) +
             " residual=" + format_number(n.residual, digits);
    }
    std::string operator()(const UnitPure& u) const {
      return "unit-pure mu=" + format_direction(u.mu, digits) +
             " residual=" + format_number(u.residual, digits);
    }
    std::string operator()(const ImaginaryUnit& u) const {
      return std::string("imaginary-unit sign=") + (u.sign > 0 ? "+1" : "-1") +
             " residual=" + format_number(u.residual, digits);
    }
    std::string operator()(const NotRoot& n) const {
      return "not-a-root residual=" + format_number(n.residual, digits);
    }
  };
  return std::visit(Visitor{digits}, c);
}

inline nlohmann::json to_json(const RootClassification& c) {
  struct Visitor {
    nlohmann::json operator()(const Nontrivial& n) const {
      return {{"family", "nontrivial"}, {"mu", biquat::to_json(n.mu)},
              {"nu", biquat::to_json(n.nu)}, {"t", n.t}, {"residual", n.residual}};
    }
    nlohmann::json operator()(const UnitPure& u) const {
      return {{"family", "unit-pure"}, {"mu", biquat::to_json(u.mu)}, {"residual", u.residual}};
    }
    nlohmann::json operator()(const ImaginaryUnit& u) const {
      return {{"family", "imaginary-unit"}, {"sign", u.sign}, {"residual", u.residual}};
    }
    nlohmann::json operator()(const NotRoot& n) const {
      return {{"family", "not-a-root"}, {"residual", n.residual}};
    }
  };
  return std::visit(Visitor{}, c);
}

namespace detail {

inline std::string join(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s;
}

// One input from the arguments, else one per non-blank stdin line.
inline std::vector<std::string> collect_inputs(const std::vector<std::string>& args,
                                               std::istream& in) {
  if (!args.empty()) return {join(args)};
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw PreconditionError("no biquaternion given on the command line or stdin");
  return lines;
}

inline PureUnit direction(const std::vector<double>& v, bool normalize, const char* name) {
  if (v.size() != 3) throw PreconditionError(std::string(name) + " needs 3 numbers");
  if (normalize) return PureUnit::normalized(v[0], v[1], v[2]);
  return PureUnit::from_unit(v[0], v[1], v[2]);
}

inline std::string complex_text(const ComplexScalar& z, int digits) {
  std::string im = format_number(z.im, digits);
  if (im.front() != '-') im = "+" + im;
  return format_number(z.re, digits) + im + "I";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline int cmd_square(const GlobalOptions& g, const std::vector<std::string>& values,
                      std::istream& in, std::ostream& out) {
  for (const auto& text : detail::collect_inputs(values, in)) {
    const Biquaternion q = parse_biquaternion(text);
    const Biquaternion sq = q * q;
    if (g.json) {
      out << nlohmann::json{{"square", to_json(sq)}}.dump() << '\n';
    } else {
      out << format_biquaternion(sq, g.digits) << '\n';
    }
  }
  return kSuccess;
}

inline int cmd_classify(const GlobalOptions& g, const std::vector<std::string>& values,
                        std::istream& in, std::ostream& out, std::ostream& err) {
  int code = kSuccess;
  for (const auto& text : detail::collect_inputs(values, in)) {
    const Biquaternion q = parse_biquaternion(text);
    try {
      const RootClassification c = classify_root(q, g.tol);
      out << (g.json ? to_json(c).dump() : describe(c, g.digits)) << '\n';
      if (!is_root(c) && code == kSuccess) code = kNegative;
    } catch (const TheoremViolation& e) {
      err << e.what() << " for " << format_biquaternion(q, g.digits) << '\n';
      out << (g.json ? nlohmann::json{{"family", "theorem-violation"}, {"message", e.what()}}.dump()
                     : std::string("theorem-violation ") + e.what())
          << '\n';
      code = kTheoremViolation;
    }
  }
  return code;
}

struct MakeRootArgs {
  std::vector<double> values;  // mu (3) then nu (3)
  double t = 0.0;
  bool normalize = false;
};

inline int cmd_make_root(const GlobalOptions& g, const MakeRootArgs& a, std::ostream& out) {
  if (a.values.size() != 6) {
    throw PreconditionError("make-root needs 6 numbers (mu then nu), got " +
                            std::to_string(a.values.size()));
  }
  const PureUnit mu = detail::direction({a.values[0], a.values[1], a.values[2]}, a.normalize, "mu");
  const PureUnit nu = detail::direction({a.values[3], a.values[4], a.values[5]}, a.normalize, "nu");
  const Biquaternion q = make_nontrivial_root(mu, nu, a.t, g.tol);
  if (g.json) {
    out << nlohmann::json{{"root", to_json(q)}, {"residual", root_residual(q)}}.dump() << '\n';
  } else {
    out << format_biquaternion(q, g.digits) << '\n';
  }
  return kSuccess;
}

struct SampleArgs {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  double t_max = 1.0;
  unsigned threads = 0;
};

inline int cmd_sample(const GlobalOptions& g, const SampleArgs& a, std::ostream& out) {
  for (const auto& q : sample_roots(a.seed, a.count, a.t_max, a.threads)) {
    out << (g.json ? to_json(q).dump() : format_biquaternion(q, g.digits)) << '\n';
  }
  return kSuccess;
}

/// `--to complex` reads canonical text and prints w, x, y, z as complex
/// numbers; `--to parts` reads (w_re w_im x_re x_im y_re y_im z_re z_im)
/// and prints canonical text.
inline int cmd_convert(const GlobalOptions& g, const std::string& to,
                       const std::vector<std::string>& values, std::istream& in,
                       std::ostream& out) {
  for (const auto& text : detail::collect_inputs(values, in)) {
    if (to == "complex") {
      const ComplexView v = to_complex_view(parse_biquaternion(text));
      if (g.json) {
        out << nlohmann::json{{"w", {v.w.re, v.w.im}}, {"x", {v.x.re, v.x.im}},
                              {"y", {v.y.re, v.y.im}}, {"z", {v.z.re, v.z.im}}}
                   .dump()
            << '\n';
      } else {
        out << "w=" << detail::complex_text(v.w, g.digits)
            << " x=" << detail::complex_text(v.x, g.digits)
            << " y=" << detail::complex_text(v.y, g.digits)
            << " z=" << detail::complex_text(v.z, g.digits) << '\n';
      }
    } else {
      // same eight-number grammar, read in complex-view order
      const auto c = parse_biquaternion(text).coefficients();
      const ComplexView v{{c[0], c[1]}, {c[2], c[3]}, {c[4], c[5]}, {c[6], c[7]}};
      const Biquaternion q = from_complex_view(v);
      out << (g.json ? to_json(q).dump() : format_biquaternion(q, g.digits)) << '\n';
    }
  }
  return kSuccess;
}

inline worked::Example example_by_number(int n) {
  switch (n) {
    case 1: return worked::example_one();
    case 2: return worked::example_two();
    case 3: return worked::example_three();
    default: throw PreconditionError("--example must be 1, 2 or 3");
  }
}

inline void print_table(const GlobalOptions& g, const TermTable& table, std::ostream& out) {
  const std::size_t n = table.size();
  if (g.json) {
    nlohmann::json parts = nlohmann::json::array();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < n; ++r) {
      parts.push_back(to_json(table.part(r)));
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < n; ++c) row.push_back(to_json(table.at(r, c)));
      rows.push_back(row);
    }
    out << nlohmann::json{{"parts", parts}, {"entries", rows}, {"total", to_json(table.total())}}
               .dump()
        << '\n';
    return;
  }

  std::vector<std::string> header(n);
  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
  std::size_t width = 3;
  for (std::size_t r = 0; r < n; ++r) {
    header[r] = to_basis_string(table.part(r), g.digits);
    width = std::max(width, header[r].size());
    for (std::size_t c = 0; c < n; ++c) {
      cells[r][c] = to_basis_string(table.at(r, c), g.digits);
      width = std::max(width, cells[r][c].size());
    }
  }
  auto pad = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };
  out << pad("q^2") << " |";
  for (const auto& h : header) out << ' ' << pad(h);
  out << '\n' << std::string(width + 1, '-') << '+' << std::string(n * (width + 1), '-') << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    out << pad(header[r]) << " |";
    for (const auto& cell : cells[r]) out << ' ' << pad(cell);
    out << '\n';
  }
  out << "total: " << to_basis_string(table.total(), g.digits) << '\n';
}

inline int cmd_table(const GlobalOptions& g, int example, const std::vector<std::string>& parts_text,
                     std::istream& in, std::ostream& out) {
  std::vector<Biquaternion> parts;
  if (example != 0) {
    parts = example_by_number(example).parts;
  } else if (!parts_text.empty()) {
    for (const auto& p : parts_text) parts.push_back(parse_biquaternion(p));
  } else {
    for (const auto& line : detail::collect_inputs({}, in)) parts.push_back(parse_biquaternion(line));
  }
  print_table(g, term_table(parts), out);
  return kSuccess;
}

/// Runs the three worked examples through text formatting, parsing and
/// squaring, and checks the example-two and example-three term tables.
inline int cmd_verify_examples(const GlobalOptions& g, std::ostream& out) {
  constexpr double kTol = 1e-12;
  const Biquaternion minus_one = real(-basis::one);
  const std::array<worked::Example, 3> examples{worked::example_one(), worked::example_two(),
                                                worked::example_three()};
  bool all_pass = true;
  nlohmann::json report = nlohmann::json::array();

  for (std::size_t n = 0; n < examples.size(); ++n) {
    const auto& ex = examples[n];
    const Biquaternion q = parse_biquaternion(format_biquaternion(ex.q()));
    const Biquaternion sq = parse_biquaternion(format_biquaternion(q * q));
    double deviation = max_abs_diff(sq, minus_one);
    std::string detail;

    const RootClassification c = classify_root(q);
    bool pass = deviation <= kTol && std::holds_alternative<Nontrivial>(c);

    const TermTable table = term_table(ex.parts);
    deviation = std::max(deviation, max_abs_diff(table.total(), minus_one));
    pass = pass && max_abs_diff(table.total(), minus_one) <= kTol;

    if (n == 1) {
      const auto expected = worked::example_two_table();
      double table_dev = 0.0;
      for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t col = 0; col < 5; ++col) {
          table_dev = std::max(table_dev, max_abs_diff(table.at(r, col), expected[r * 5 + col]));
        }
      }
      pass = pass && table_dev <= kTol;
      detail = ", 5x5 term table matches";
    } else if (n == 2) {
      const double d0 = max_abs_diff(table.at(0, 0), real(-9.0 * basis::one));
      const double d1 = max_abs_diff(table.at(1, 1), real(8.0 * basis::one));
      pass = pass && d0 <= kTol && d1 <= kTol;
      detail = ", diagonal terms -9 and +8";
    }
    all_pass = all_pass && pass;

    if (g.json) {
      report.push_back({{"example", n + 1}, {"q", ex.label}, {"pass", pass},
                        {"max_deviation", deviation}, {"classification", to_json(c)}});
    } else {
      out << (pass ? "PASS" : "FAIL") << " example " << n + 1 << ": (" << ex.label
          << ")^2 = -1, max deviation " << format_number(deviation, 3) << detail << '\n';
    }
  }
  if (g.json) out << report.dump() << '\n';
  return all_pass ? kSuccess : kNegative;
}

struct LatticeArgs {
  double bound = 2.0;
  double step = 0.25;
  std::vector<double> mu{1.0, 0.0, 0.0};
  std::vector<double> nu{0.0, 1.0, 0.0};
  bool normalize = false;
  unsigned threads = 0;
};

inline int cmd_lattice(const GlobalOptions& g, const LatticeArgs& a, std::ostream& out) {
  LatticeSpec spec;
  spec.bound = a.bound;
  spec.step = a.step;
  spec.mu = detail::direction(a.mu, a.normalize, "--mu");
  spec.nu = detail::direction(a.nu, a.normalize, "--nu");
  const SearchReport report = lattice_search(spec, g.tol, a.threads);

  if (g.json) {
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& h : report.hits) {
      hits.push_back({{"a", h.a}, {"b", h.b}, {"c", h.c}, {"d", h.d}, {"residual", h.residual},
                      {"classification", to_json(h.classification)}});
    }
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"a", v.a}, {"b", v.b}, {"c", v.c}, {"d", v.d},
                            {"residual", v.residual}, {"message", v.message}});
    }
    out << nlohmann::json{{"scanned", report.scanned}, {"tolerance", report.tolerance},
                          {"hits", hits}, {"violations", violations}}
               .dump()
        << '\n';
  } else {
    out << "scanned=" << report.scanned << " hits=" << report.hits.size()
        << " violations=" << report.violations.size()
        << " tol=" << format_number(report.tolerance, g.digits) << '\n';
    auto coords = [&](double a_, double b_, double c_, double d_) {
      return "a=" + format_number(a_, g.digits) + " b=" + format_number(b_, g.digits) +
             " c=" + format_number(c_, g.digits) + " d=" + format_number(d_, g.digits);
    };
    for (const auto& h : report.hits) {
      out << "hit " << coords(h.a, h.b, h.c, h.d) << ' ' << describe(h.classification, g.digits)
          << '\n';
    }
    for (const auto& v : report.violations) {
      out << "violation " << coords(v.a, v.b, v.c, v.d) << ' ' << v.message << '\n';
    }
  }
  if (report.theorem_violation()) return kTheoremViolation;
  return report.hits.empty() ? kNegative : kSuccess;
}

// ---------------------------------------------------------------------------

/// Parses `args` (argv without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Biquaternion square roots of -1: construct, classify and verify"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--tol", g.tol, "absolute tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "structured output");
  app.add_option("--digits", g.digits, "significant digits when printing")
      ->check(CLI::Range(1, 17));

  std::vector<std::string> values;
  const char* q_help = "biquaternion as 8 numbers (w_r x_r y_r z_r w_i x_i y_i z_i); stdin if omitted";

  auto* square = app.add_subcommand("square", "print q^2");
  square->add_option("q", values, q_help);

  auto* classify = app.add_subcommand("classify", "classify q against the root families");
  classify->add_option("q", values, q_help);

  MakeRootArgs make;
  auto* make_root = app.add_subcommand("make-root", "print cosh(t) mu + sinh(t) nu I");
  make_root->add_option("directions", make.values, "mu_x mu_y mu_z nu_x nu_y nu_z")->required();
  make_root->add_option("--t", make.t, "hyperbolic parameter")->required();
  make_root->add_flag("--normalize", make.normalize, "scale mu and nu to unit length");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "print random nontrivial roots");
  sample_cmd->add_option("--seed", sample.seed, "master seed");
  sample_cmd->add_option("--count", sample.count, "number of roots");
  sample_cmd->add_option("--t-max", sample.t_max, "t is uniform in (0, t-max]")
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--threads", sample.threads, "worker threads (0 = all cores)");

  std::string to = "complex";
  auto* convert = app.add_subcommand("convert", "relabel between the two coefficient views");
  convert->add_option("q", values, q_help);
  convert->add_option("--to", to, "target view")->check(CLI::IsMember({"complex", "parts"}));

  int example = 0;
  std::vector<std::string> parts;
  auto* table = app.add_subcommand("table", "pairwise product table of the summands of q");
  table->add_option("parts", parts, "one quoted 8-number biquaternion per summand");
  table->add_option("--example", example, "use the summands of worked example 1, 2 or 3");

  auto* verify = app.add_subcommand("verify-examples", "check the three worked examples");

  LatticeArgs lattice;
  auto* lattice_cmd = app.add_subcommand("lattice", "exhaustive (a, b, c, d) lattice search");
  lattice_cmd->add_option("--bound", lattice.bound, "coefficients range over [-bound, bound]");
  lattice_cmd->add_option("--step", lattice.step, "lattice spacing");
  lattice_cmd->add_option("--mu", lattice.mu, "direction of the real vector part")->expected(3);
  lattice_cmd->add_option("--nu", lattice.nu, "direction of the imaginary vector part")->expected(3);
  lattice_cmd->add_flag("--normalize", lattice.normalize, "scale mu and nu to unit length");
  lattice_cmd->add_option("--threads", lattice.threads, "worker threads (0 = all cores)");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("biquat");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*square) return cmd_square(g, values, in, out);
    if (*classify) return cmd_classify(g, values, in, out, err);
    if (*make_root) return cmd_make_root(g, make, out);
    if (*sample_cmd) return cmd_sample(g, sample, out);
    if (*convert) return cmd_convert(g, to, values, in, out);
    if (*table) return cmd_table(g, example, parts, in, out);
    if (*verify) return cmd_verify_examples(g, out);
    if (*lattice_cmd) return cmd_lattice(g, lattice, out);
  } catch (const TheoremViolation& e) {
    err << e.what() << '\n';
    return kTheoremViolation;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace biquat::cli
