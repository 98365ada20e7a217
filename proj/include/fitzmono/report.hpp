#pragma once

// Law documents (JSON) and the machine-readable reports emitted by the CLI.
//
// Law schema:
//   {"kind": "matrix",  "dim": d, "entries": [row-major d*d numbers]}
//   {"kind": "coaxial", "lambda": l, "mu": m, "h": [h11, h22, h33, h12, h13, h23]}
// An optional "name" string is carried through. A report that embeds a "law"
// object is accepted wherever a law document is.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fitzmono/bipotential.hpp"
#include "fitzmono/coaxial.hpp"
#include "fitzmono/fitzpatrick.hpp"
#include "fitzmono/monotone.hpp"
#include "fitzmono/oracle.hpp"
#include "json.hpp"

namespace fitzmono::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Malformed input (exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input parses but violates a law invariant (exit code 3).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested order is beyond what the law supports (exit code 4).
class OrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LawDocument {
  std::string name;
  std::variant<LinearLaw, coaxial::CoaxialLaw> law;

  bool is_coaxial() const { return std::holds_alternative<coaxial::CoaxialLaw>(law); }
  const coaxial::CoaxialLaw& coaxial() const { return std::get<coaxial::CoaxialLaw>(law); }

  /// Generic linear law; coaxial laws act on Mandel coordinates of R^6.
  LinearLaw linear() const {
    if (is_coaxial()) return coaxial().as_linear();
    return std::get<LinearLaw>(law);
  }
};

// ---------------------------------------------------------------------------
// Number formatting

/// Finite doubles as numbers; +-inf and NaN as the strings "inf", "-inf", "nan".
inline json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json vector_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number(v(i)));
  return arr;
}

inline json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
  return rows;
}

inline json cycle_json(const Cycle& c) {
  json arr = json::array();
  for (const auto& p : c) arr.push_back(vector_json(p));
  return arr;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep floats recognisable as floats on re-parse.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void dump(const json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) {
          out += nl;
          out += pad;
        }
        first = false;
        dump(e, indent, depth + 1, out);
      }
      if (!flat) {
        out += nl;
        out += close_pad;
      }
      out += "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Serializes with every floating-point value at 17 significant digits.
inline std::string dump(const json& j, int indent = 2) {
  std::string out;
  detail::dump(j, indent, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Law documents

namespace detail {

inline const json& require(const json& obj, const char* field) {
  if (!obj.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  return obj.at(field);
}

inline double require_number(const json& obj, const char* field) {
  const json& v = require(obj, field);
  if (!v.is_number()) throw ParseError(std::string("field '") + field + "': expected a number");
  return v.get<double>();
}

inline std::vector<double> require_numbers(const json& obj, const char* field, std::size_t count) {
  const json& v = require(obj, field);
  if (!v.is_array()) throw ParseError(std::string("field '") + field + "': expected an array");
  if (v.size() != count) {
    throw ParseError(std::string("field '") + field + "': expected " + std::to_string(count) + " numbers, got " +
                     std::to_string(v.size()));
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ParseError(std::string("field '") + field + "'[" + std::to_string(i) + "]: expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

inline void require_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw InvariantError("field '" + field + "' must be finite");
}

}  // namespace detail

inline LawDocument law_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("law document must be a JSON object");
  if (doc.contains("law") && doc.at("law").is_object()) return law_from_json(doc.at("law"));

  LawDocument out;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError("field 'name': expected a string");
    out.name = doc.at("name").get<std::string>();
  }
  const json& kind = detail::require(doc, "kind");
  if (!kind.is_string()) throw ParseError("field 'kind': expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "matrix") {
    const json& dim_field = detail::require(doc, "dim");
    if (!dim_field.is_number_integer() || dim_field.get<long>() < 1) {
      throw ParseError("field 'dim': expected a positive integer");
    }
    const auto dim = dim_field.get<long>();
    if (dim > oracle::kMaxDim) {
      throw InvariantError("field 'dim': at most " + std::to_string(oracle::kMaxDim) + " supported");
    }
    const auto entries = detail::require_numbers(doc, "entries", static_cast<std::size_t>(dim * dim));
    Matrix a(dim, dim);
    for (long i = 0; i < dim; ++i) {
      for (long j = 0; j < dim; ++j) {
        a(i, j) = entries[static_cast<std::size_t>(i * dim + j)];
        detail::require_finite(a(i, j), "entries");
      }
    }
    out.law = LinearLaw(a);
  } else if (k == "coaxial") {
    const double lambda = detail::require_number(doc, "lambda");
    const double mu = detail::require_number(doc, "mu");
    detail::require_finite(lambda, "lambda");
    detail::require_finite(mu, "mu");
    const auto h = detail::require_numbers(doc, "h", 6);
    for (double v : h) detail::require_finite(v, "h");
    const coaxial::SymTensor3 ht({h[0], h[1], h[2], h[3], h[4], h[5]});
    try {
      out.law = coaxial::CoaxialLaw(lambda, mu, ht);
    } catch (const Error& e) {
      throw InvariantError(std::string("field 'h': ") + e.what());
    }
  } else {
    throw ParseError("field 'kind': expected \"matrix\" or \"coaxial\", got \"" + k + "\"");
  }
  return out;
}

/// Parses a law document from text; syntax errors report line and column.
inline LawDocument parse_law(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
  return law_from_json(doc);
}

inline json law_to_json(const LawDocument& doc) {
  json j;
  if (!doc.name.empty()) j["name"] = doc.name;
  if (doc.is_coaxial()) {
    const auto& law = doc.coaxial();
    j["kind"] = "coaxial";
    j["lambda"] = law.lambda();
    j["mu"] = law.mu();
    json h = json::array();
    for (double v : law.h().entries()) h.push_back(v);
    j["h"] = h;
  } else {
    const LinearLaw& law = std::get<LinearLaw>(doc.law);
    j["kind"] = "matrix";
    j["dim"] = law.dim();
    json entries = json::array();
    for (Eigen::Index i = 0; i < law.dim(); ++i) {
      for (Eigen::Index k = 0; k < law.dim(); ++k) entries.push_back(law.matrix()(i, k));
    }
    j["entries"] = entries;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Reports

struct ReportOptions {
  std::uint64_t seed = 0;
  long trials = 2000;
  bool degrees = false;
};

inline json order_json(const MaxOrder& order, const LinearLaw& law, const ReportOptions& opt) {
  json j;
  j["kind"] = to_string(order.kind);
  j["n"] = order.kind == OrderKind::Finite ? json(order.n) : json(nullptr);
  j["certified_by"] = to_string(order.certified_by);
  j["capped"] = order.capped;
  j["boundary"] = order.boundary;
  j["theta"] = order.theta ? number(*order.theta) : json(nullptr);
  if (opt.degrees) {
    j["theta_degrees"] = order.theta ? number(*order.theta * 180.0 / std::numbers::pi) : json(nullptr);
  }
  if (order.witness) {
    j["witness"] = cycle_json(*order.witness);
    j["witness_cycle_sum"] = number(cycle_sum(law, *order.witness));
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline json definiteness_json(const Definiteness& d) {
  return json{{"kind", to_string(d.kind)},
              {"min_eigenvalue", number(d.min_eigenvalue)},
              {"max_eigenvalue", number(d.max_eigenvalue)}};
}

/// Verdict for a law document; coaxial laws use the closed-form angle and add
/// an oracle witness found in the 6-dimensional representation.
inline MaxOrder law_order(const LawDocument& doc, const ReportOptions& opt) {
  OrderOptions oo;
  oo.seed = opt.seed;
  oo.trials = opt.trials;
  if (!doc.is_coaxial()) return max_order(doc.linear(), oo);
  const auto& law = doc.coaxial();
  if (!coaxial::monotone_check(law).monotone) {
    return max_order(doc.linear(), oo);
  }
  MaxOrder order = coaxial::max_order_coaxial(law);
  if (order.kind == OrderKind::Finite && order.n + 1 <= oracle::kMaxOrder) {
    order.witness = oracle::falsify_n_monotone(doc.linear(), order.n + 1, opt.trials, opt.seed).witness;
  }
  return order;
}

inline json coaxial_json(const coaxial::CoaxialLaw& law, const ReportOptions& opt) {
  const auto check = coaxial::monotone_check(law);
  json j;
  j["lambda"] = number(law.lambda());
  j["mu"] = number(law.mu());
  json h = json::array();
  for (double v : law.h().entries()) h.push_back(number(v));
  j["h"] = h;
  j["h_norm"] = number(law.h_norm());
  j["hooke"] = law.is_hooke();
  j["monotone"] = check.monotone;
  j["theta"] = check.theta ? number(*check.theta) : json(nullptr);
  if (opt.degrees) {
    j["theta_degrees"] = check.theta ? number(*check.theta * 180.0 / std::numbers::pi) : json(nullptr);
  }
  j["skew_coefficient"] = number(law.skew_coefficient());
  j["s_block"] = matrix_json(law.s_block());
  return j;
}

inline json analyze_report(const LawDocument& doc, const ReportOptions& opt) {
  const LinearLaw law = doc.linear();
  const MaxOrder order = law_order(doc, opt);
  json j;
  j["command"] = "analyze";
  j["version"] = kVersion;
  j["seed"] = opt.seed;
  j["law"] = law_to_json(doc);
  j["dim"] = law.dim();
  j["coordinates"] = doc.is_coaxial() ? "mandel" : "standard";
  j["matrix"] = matrix_json(law.matrix());
  j["symmetric_part"] = matrix_json(law.sym().matrix());
  j["skew_part"] = matrix_json(law.skew());
  j["skew_norm"] = number(law.skew().norm());
  j["symmetric"] = law.is_symmetric();
  j["definiteness"] = definiteness_json(law.sym_definiteness());
  j["monotone"] = law.is_monotone();
  j["order"] = order_json(order, law, opt);
  if (doc.is_coaxial()) j["coaxial"] = coaxial_json(doc.coaxial(), opt);
  return j;
}

inline json order_report(const LawDocument& doc, const ReportOptions& opt) {
  const LinearLaw law = doc.linear();
  json j;
  j["command"] = "order";
  j["version"] = kVersion;
  j["seed"] = opt.seed;
  j["law"] = law_to_json(doc);
  j["order"] = order_json(law_order(doc, opt), law, opt);
  return j;
}

/// Vector input for a law: d numbers for matrix laws, the six tensor entries
/// (x11, x22, x33, x12, x13, x23) for coaxial laws. Returned in the
/// coordinates of doc.linear().
inline Vector law_vector(const LawDocument& doc, const std::vector<double>& values, const char* what) {
  const auto expected = static_cast<std::size_t>(doc.is_coaxial() ? 6 : doc.linear().dim());
  if (values.size() != expected) {
    throw ParseError(std::string("--") + what + ": expected " + std::to_string(expected) + " numbers, got " +
                     std::to_string(values.size()));
  }
  if (doc.is_coaxial()) {
    return coaxial::SymTensor3({values[0], values[1], values[2], values[3], values[4], values[5]}).mandel();
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline json kernel_statuses(const FitzpatrickKernel& kernel) {
  json arr = json::array();
  for (const auto& s : kernel.steps()) arr.push_back(json{{"k", s.order}, {"status", to_string(s.status)}});
  return arr;
}

/// F_{A,n}(x, y) with the kernel H_n; n == kInfiniteOrder selects phi + phi*.
inline json fitz_report(const LawDocument& doc, int n, const std::vector<double>& xs, const std::vector<double>& ys,
                        bool with_oracle) {
  const LinearLaw law = doc.linear();
  const Vector x = law_vector(doc, xs, "x");
  const Vector y = law_vector(doc, ys, "y");
  json j;
  j["command"] = "fitz";
  j["version"] = kVersion;
  j["law"] = law_to_json(doc);
  j["n"] = n == kInfiniteOrder ? json("inf") : json(n);
  j["x"] = json(xs);
  j["y"] = json(ys);
  j["dot"] = number(x.dot(y));

  if (n == kInfiniteOrder) {
    if (!law.is_symmetric() || !law.sym_definiteness().is_pd()) {
      throw OrderError("n = inf needs a symmetric positive definite (cyclically monotone) law");
    }
    j["value"] = number(eval_F_infinity(law, x, y));
    j["kernel"] = nullptr;
    return j;
  }
  if (n < 2) throw ParseError("--n: order must be at least 2");
  if (!law.sym_definiteness().is_psd()) {
    throw OrderError("the law is not monotone (symmetric part indefinite); no Fitzpatrick kernel of order " +
                     std::to_string(n));
  }
  const FitzpatrickKernel kernel = build_kernels(law, n);
  const int certified = kernel.monotone_order();
  if (n > certified) {
    throw OrderError("order " + std::to_string(n) + " exceeds the certified order " + std::to_string(certified) +
                     " (kernel recursion stops at H_" + std::to_string(*kernel.stop_index()) + ")");
  }
  const double value = eval_F(kernel, n, x, y);
  j["value"] = number(value);
  j["kernel"] = matrix_json(kernel.step(n).h->matrix());
  j["kernel_status"] = to_string(kernel.step(n).status);
  j["kernels"] = kernel_statuses(kernel);

  if (doc.is_coaxial()) {
    const auto& claw = doc.coaxial();
    const auto ck = coaxial::coaxial_kernels(claw, n);
    const coaxial::SymTensor3 xt({xs[0], xs[1], xs[2], xs[3], xs[4], xs[5]});
    const coaxial::SymTensor3 yt({ys[0], ys[1], ys[2], ys[3], ys[4], ys[5]});
    const double cvalue = coaxial::eval_F_coaxial(ck, n, xt, yt);
    json c;
    c["generic_value"] = number(value);
    c["coaxial_value"] = number(cvalue);
    c["theta"] = number(ck.theta());
    c["gamma"] = number(ck.step(n).gamma);
    c["block_kernel"] = matrix_json(ck.kernel_matrix(n));
    c["discrepancy"] = number(std::abs(value - cvalue));
    j["coaxial"] = c;
  }
  if (with_oracle) {
    json o;
    try {
      const double direct = oracle::direct_F(law, n, x, y);
      o["direct_F"] = number(direct);
      o["relative_discrepancy"] = number(std::abs(direct - value) / std::max(1.0, std::abs(value)));
    } catch (const Error& e) {
      o["direct_F"] = nullptr;
      o["error"] = e.what();
    }
    j["oracle"] = o;
  }
  return j;
}

inline json axiom_json(const AxiomCheck& c) {
  json j;
  j["passed"] = c.passed;
  j["worst_margin"] = number(c.worst_margin);
  if (c.counterexample) {
    j["counterexample"] = json::array({vector_json(c.counterexample->first), vector_json(c.counterexample->second)});
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

inline json cs_report(int n, const Vector& x, const Vector& y) {
  json j;
  j["command"] = "bipotential";
  j["version"] = kVersion;
  j["mode"] = "cs";
  j["n"] = n == kInfiniteOrder ? json("inf") : json(n);
  j["x"] = vector_json(x);
  j["y"] = vector_json(y);
  j["value"] = number(eval_cs(n, x, y));
  j["psi"] = number(cs_angle(x, y));
  j["dot"] = number(x.dot(y));
  j["norm_product"] = number(x.norm() * y.norm());
  return j;
}

/// Axiom validation of F_{A,n} (or phi + phi* when n is infinite).
inline json validate_report(const LawDocument& doc, int n, long samples, std::uint64_t seed) {
  const LinearLaw law = doc.linear();
  Bipotential b;
  if (n == kInfiniteOrder) {
    if (!law.is_symmetric() || !law.sym_definiteness().is_pd()) {
      throw OrderError("n = inf needs a symmetric positive definite (cyclically monotone) law");
    }
    b = make_separable_bipotential(QuadraticPotential(law.sym()));
  } else {
    if (!law.sym_definiteness().is_psd()) throw OrderError("the law is not monotone");
    const FitzpatrickKernel kernel = build_kernels(law, n);
    if (n > kernel.monotone_order()) {
      throw OrderError("order " + std::to_string(n) + " exceeds the certified order " +
                       std::to_string(kernel.monotone_order()));
    }
    b = make_fitzpatrick_bipotential(kernel, n);
  }
  const AxiomReport r = validate_axioms(b, Sampler{}, samples, seed);
  json j;
  j["command"] = "bipotential";
  j["version"] = kVersion;
  j["mode"] = "validate";
  j["seed"] = seed;
  j["law"] = law_to_json(doc);
  j["bipotential"] = b.name;
  j["n"] = n == kInfiniteOrder ? json("inf") : json(n);
  j["samples"] = r.samples;
  j["passed"] = r.passed();
  j["lower_bound"] = axiom_json(r.lower_bound);
  j["convex_x"] = axiom_json(r.convex_x);
  j["convex_y"] = axiom_json(r.convex_y);
  j["convex_joint"] = axiom_json(r.convex_joint);
  return j;
}

inline json oracle_report(const LawDocument& doc, int n, long trials, std::uint64_t seed,
                          const std::optional<std::vector<double>>& xs, const std::optional<std::vector<double>>& ys) {
  const LinearLaw law = doc.linear();
  if (n < 2 || n > oracle::kMaxOrder) throw ParseError("--n: oracle order must be in [2, 32]");
  json j;
  j["command"] = "oracle";
  j["version"] = kVersion;
  j["seed"] = seed;
  j["law"] = law_to_json(doc);
  j["n"] = n;
  j["trials"] = trials;
  const auto f = oracle::falsify_n_monotone(law, n, trials, seed);
  json fj;
  fj["found"] = f.witness.has_value();
  fj["source"] = f.witness ? json(f.source) : json(nullptr);
  fj["cycle_sum"] = f.witness ? number(f.cycle_sum) : json(nullptr);
  fj["witness"] = f.witness ? cycle_json(*f.witness) : json(nullptr);
  fj["candidates"] = f.candidates;
  j["falsification"] = fj;
  if (xs && ys) {
    const Vector x = law_vector(doc, *xs, "x");
    const Vector y = law_vector(doc, *ys, "y");
    j["x"] = json(*xs);
    j["y"] = json(*ys);
    try {
      j["direct_F"] = number(oracle::direct_F(law, n, x, y));
    } catch (const Error& e) {
      j["direct_F"] = nullptr;
      j["direct_F_error"] = e.what();
    }
    j["sup_sample_F"] = number(oracle::sup_sample_F(law, n, x, y, trials, seed));
  }
  return j;
}

/// One-paragraph human summary of an analyze report (stderr with --verbose).
inline std::string summary(const json& report) {
  std::ostringstream os;
  const json& order = report.at("order");
  os << "law: " << report.at("law").at("kind").get<std::string>() << ", dim " << report.at("dim").get<long>() << "\n";
  os << "symmetric part: " << report.at("definiteness").at("kind").get<std::string>() << "\n";
  os << "order: " << order.at("kind").get<std::string>();
  if (!order.at("n").is_null()) os << " " << order.at("n").get<int>();
  os << " (" << order.at("certified_by").get<std::string>() << ")";
  if (order.at("theta").is_number()) os << ", theta = " << format_double(order.at("theta").get<double>()) << " rad";
  if (order.contains("theta_degrees") && order.at("theta_degrees").is_number()) {
    os << " = " << format_double(order.at("theta_degrees").get<double>()) << " deg";
  }
  os << "\n";
  return os.str();
}

}  // namespace fitzmono::report
