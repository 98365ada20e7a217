// fitzmono: command-line front end for the fitzmono library.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fitzmono/fitzmono.hpp"
#include "fitzmono/report.hpp"

namespace {

using fitzmono::report::json;

enum Exit : int { kOk = 0, kParse = 2, kInvariant = 3, kOrder = 4, kInternal = 5 };

struct Globals {
  bool verbose = false;
  bool degrees = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw fitzmono::report::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fitzmono::report::LawDocument load(const std::string& path) {
  try {
    return fitzmono::report::parse_law(read_input(path));
  } catch (const fitzmono::report::ParseError& e) {
    throw fitzmono::report::ParseError(path + ": " + e.what());
  } catch (const fitzmono::report::InvariantError& e) {
    throw fitzmono::report::InvariantError(path + ": " + e.what());
  }
}

int parse_order(const std::string& text) {
  if (text == "inf" || text == "infinity") return fitzmono::kInfiniteOrder;
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || n < 2) throw fitzmono::report::ParseError("--n: expected an integer >= 2 or 'inf'");
  return n;
}

void emit(const json& j) { std::cout << fitzmono::report::dump(j) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fitzpatrick functions and monotonicity orders of linear laws"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--verbose,-v", g.verbose, "Write a human-readable summary to stderr");
  app.add_flag("--degrees", g.degrees, "Also report angles in degrees");

  std::string file;
  std::uint64_t seed = 0;
  long trials = 2000;
  std::string order_text = "2";
  std::vector<double> xs, ys;
  bool with_oracle = false;

  auto* analyze = app.add_subcommand("analyze", "Full report for a law");
  analyze->add_option("file", file, "Law JSON file ('-' for stdin)")->required();
  analyze->add_option("--seed", seed, "Seed for the cycle search")->required();
  analyze->add_option("--trials", trials, "Random cycles per order")->check(CLI::PositiveNumber);

  auto* order = app.add_subcommand("order", "Maximal monotonicity order");
  order->add_option("file", file, "Law JSON file ('-' for stdin)")->required();
  order->add_option("--seed", seed, "Seed for the cycle search")->required();
  order->add_option("--trials", trials, "Random cycles per order")->check(CLI::PositiveNumber);

  auto* fitz = app.add_subcommand("fitz", "Evaluate F_{A,n}(x, y)");
  fitz->add_option("file", file, "Law JSON file ('-' for stdin)")->required();
  fitz->add_option("--n", order_text, "Order (integer >= 2 or 'inf')")->required();
  fitz->add_option("--x", xs, "Point x (comma or space separated)")->required()->delimiter(',');
  fitz->add_option("--y", ys, "Point y (comma or space separated)")->required()->delimiter(',');
  fitz->add_flag("--oracle", with_oracle, "Cross-check against the direct maximisation");

  bool cs = false;
  std::string validate_file;
  long samples = 1000;
  auto* bip = app.add_subcommand("bipotential", "Cauchy-Schwarz sequence or axiom validation");
  auto* cs_flag = bip->add_flag("--cs", cs, "Evaluate b_n(x, y) = |x| |y| cos^n(psi / n)");
  auto* val_opt = bip->add_option("--validate", validate_file, "Validate F_{A,n} of a law file");
  cs_flag->excludes(val_opt);
  bip->add_option("--n", order_text, "Order (integer >= 2 or 'inf')");
  bip->add_option("--x", xs, "Point x")->delimiter(',');
  bip->add_option("--y", ys, "Point y")->delimiter(',');
  bip->add_option("--samples", samples, "Sampled configurations")->check(CLI::PositiveNumber);
  auto* bip_seed = bip->add_option("--seed", seed, "Sampling seed");

  auto* orc = app.add_subcommand("oracle", "Brute-force cycle search and direct F");
  orc->add_option("file", file, "Law JSON file ('-' for stdin)")->required();
  orc->add_option("--n", order_text, "Cycle length / order")->required();
  orc->add_option("--seed", seed, "Seed")->required();
  orc->add_option("--trials", trials, "Random cycles")->check(CLI::PositiveNumber);
  orc->add_option("--x", xs, "Point x for direct F")->delimiter(',');
  orc->add_option("--y", ys, "Point y for direct F")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  fitzmono::report::ReportOptions opt;
  opt.seed = seed;
  opt.trials = trials;
  opt.degrees = g.degrees;

  try {
    json out;
    if (analyze->parsed()) {
      out = fitzmono::report::analyze_report(load(file), opt);
      if (g.verbose) std::cerr << fitzmono::report::summary(out);
    } else if (order->parsed()) {
      out = fitzmono::report::order_report(load(file), opt);
      if (g.verbose) {
        const json& o = out.at("order");
        std::cerr << "order: " << o.at("kind").get<std::string>();
        if (!o.at("n").is_null()) std::cerr << " " << o.at("n").get<int>();
        std::cerr << " (" << o.at("certified_by").get<std::string>() << ")\n";
      }
    } else if (fitz->parsed()) {
      const int n = parse_order(order_text);
      out = fitzmono::report::fitz_report(load(file), n, xs, ys, with_oracle);
      if (g.verbose) std::cerr << "F = " << fitzmono::report::dump(out.at("value")) << "\n";
    } else if (bip->parsed()) {
      const int n = parse_order(order_text);
      if (cs) {
        if (xs.empty() || ys.empty()) throw fitzmono::report::ParseError("--cs needs --x and --y");
        if (xs.size() != ys.size()) throw fitzmono::report::ParseError("--x and --y differ in length");
        const fitzmono::Vector x = Eigen::Map<const fitzmono::Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
        const fitzmono::Vector y = Eigen::Map<const fitzmono::Vector>(ys.data(), static_cast<Eigen::Index>(ys.size()));
        out = fitzmono::report::cs_report(n, x, y);
      } else if (!validate_file.empty()) {
        if (bip_seed->count() == 0) throw fitzmono::report::ParseError("--validate needs an explicit --seed");
        out = fitzmono::report::validate_report(load(validate_file), n, samples, seed);
        if (g.verbose) std::cerr << "axioms " << (out.at("passed").get<bool>() ? "hold" : "violated") << "\n";
      } else {
        throw fitzmono::report::ParseError("bipotential needs --cs or --validate FILE");
      }
    } else if (orc->parsed()) {
      const int n = parse_order(order_text);
      if (xs.empty() != ys.empty()) throw fitzmono::report::ParseError("--x and --y go together");
      std::optional<std::vector<double>> ox, oy;
      if (!xs.empty()) {
        ox = xs;
        oy = ys;
      }
      out = fitzmono::report::oracle_report(load(file), n, trials, seed, ox, oy);
      if (g.verbose) {
        std::cerr << "counterexample " << (out.at("falsification").at("found").get<bool>() ? "found" : "not found")
                  << "\n";
      }
    }
    emit(out);
    return kOk;
  } catch (const fitzmono::report::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const fitzmono::report::InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  } catch (const fitzmono::report::OrderError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOrder;
  } catch (const fitzmono::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case fitzmono::ErrorKind::OrderExceeded:
      case fitzmono::ErrorKind::KernelFailed:
      case fitzmono::ErrorKind::NotCyclic:
      case fitzmono::ErrorKind::NotStrictlyMonotone:
      case fitzmono::ErrorKind::NotMonotone:
        return kOrder;
      case fitzmono::ErrorKind::NonSymmetric:
      case fitzmono::ErrorKind::NotPSD:
      case fitzmono::ErrorKind::NotPD:
      case fitzmono::ErrorKind::CapExceeded:
        return kInvariant;
      case fitzmono::ErrorKind::DimensionMismatch:
      case fitzmono::ErrorKind::InvalidArgument:
        return kParse;
      default:
        return kInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
