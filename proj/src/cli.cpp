#include "lacuna/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lacuna/bounds.hpp"
#include "lacuna/cyclotomic.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/experiment.hpp"
#include "lacuna/io.hpp"
#include "lacuna/relation_lattice.hpp"

namespace lacuna::cli {

namespace {

using nlohmann::json;

struct Options
{
  std::vector<std::int64_t> k;
  std::int64_t degree_cap = 0;
  std::int64_t n = 0;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string mode;
  std::string format;
  unsigned workers = 0;
  std::int64_t cap_override = 0;
  double c = 0;
  std::string input = "-";
  std::string output;
};

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  std::optional<std::int64_t> line = std::nullopt)
{
  json j{{"error", kind}, {"message", message}};
  if (line)
    j["line"] = *line;
  err << j.dump() << '\n';
}

std::vector<SparsePoly> load_polys(const Options& o)
{
  if (o.input == "-")
    return read_polys(std::cin, o.degree_cap);
  std::ifstream in(o.input);
  if (!in)
    throw InvalidParameters("cannot open input file '" + o.input + "'");
  return read_polys(in, o.degree_cap);
}

std::int64_t single_k(const Options& o)
{
  require(o.k.size() == 1, "--k takes a single value for this command");
  return o.k.front();
}

std::optional<std::int64_t> cap_override(const Options& o)
{
  if (o.cap_override > 0)
    return o.cap_override;
  return std::nullopt;
}

SweepMode sweep_mode(const Options& o, SweepMode fallback)
{
  return o.mode.empty() ? fallback : parse_sweep_mode(o.mode);
}

bool want_json(const Options& o, bool fallback)
{
  if (o.format.empty())
    return fallback;
  require(o.format == "csv" || o.format == "json", "--format must be csv or json");
  return o.format == "json";
}

std::string join(const std::vector<std::int64_t>& v, const char* sep)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

void cmd_test(const Options& o, std::ostream& out)
{
  const SweepMode mode = sweep_mode(o, SweepMode::full_sweep);
  const bool as_json = want_json(o, true);
  if (!as_json)
    out << "exponents,factors,has_cyclotomic,mode\n";
  for (const auto& f : load_polys(o)) {
    const auto factors = find_cyclotomic_factors(f, mode, cap_override(o));
    if (as_json)
      out << io::factor_record(f, factors, mode).dump() << '\n';
    else
      out << format_poly(f) << ',' << join(factors, " ") << ','
          << (factors.empty() ? "false" : "true") << ',' << to_string(mode) << '\n';
  }
}

void cmd_factors(const Options& o, std::ostream& out)
{
  const SweepMode mode = sweep_mode(o, SweepMode::full_sweep);
  for (const auto& f : load_polys(o)) {
    if (o.n > 0) {
      // Single modulus: both divisibility routes plus the residue split.
      const std::int64_t b = o.n / squarefree_kernel(o.n);
      const auto split = conway_jones_split(f, o.n, b);
      json parts = json::array(), vanish = json::array();
      for (std::size_t i = 0; i < split.parts.size(); ++i) {
        parts.push_back(split.parts[i]);
        vanish.push_back(split.part_vanishes(i));
      }
      out << json{{"exponents", f.exponents()},
                  {"n", o.n},
                  {"dense", divides_phi_dense(f, o.n)},
                  {"structural", divides_phi_structural(f, o.n)},
                  {"split_b", b},
                  {"parts", parts},
                  {"parts_vanish", vanish}}
                 .dump()
          << '\n';
      continue;
    }
    const auto factors = find_cyclotomic_factors(f, mode, cap_override(o));
    bool confirmed = true;
    for (std::int64_t n : factors)
      confirmed = confirmed && divides_phi_dense(f, n);
    json record = io::factor_record(f, factors, mode);
    record["dense_confirmed"] = confirmed;
    out << record.dump() << '\n';
  }
}

void cmd_basis(const Options& o, std::ostream& out)
{
  require(o.n >= 2, "basis needs --n >= 2");
  const auto basis = build_basis(o.n);
  if (want_json(o, true)) {
    out << io::basis_to_json(basis).dump() << '\n';
    return;
  }
  for (const auto& v : basis.vectors)
    out << join(v, ",") << '\n';
}

void cmd_candidates(const Options& o, std::ostream& out)
{
  const std::int64_t k = single_k(o);
  const auto set = fs_candidates(k);
  if (want_json(o, false))
    out << json{{"k", k}, {"members", set.members}}.dump() << '\n';
  else
    out << join(set.members, ",") << '\n';
}

void cmd_bounds(const Options& o, std::ostream& out)
{
  require(!o.k.empty(), "bounds needs --k");
  std::vector<BoundBreakdown> tables;
  for (std::int64_t k : o.k)
    tables.push_back(total_bound(k, o.c > 0 ? std::optional<double>(o.c) : std::nullopt));
  io::write_bounds(out, tables, want_json(o, false));
}

void cmd_estimate(const Options& o, std::ostream& out)
{
  const std::int64_t k = single_k(o);
  require(o.degree_cap >= 1, "estimate needs --N");
  EstimateReport r =
      o.n > 0 ? estimate_phi_n(k, o.degree_cap, o.n, o.trials, o.seed, o.workers)
              : estimate_any_cyclotomic(k, o.degree_cap, o.trials, o.seed,
                                        sweep_mode(o, SweepMode::full_sweep), o.workers,
                                        cap_override(o));
  io::write_reports(out, {r}, want_json(o, false));
}

void cmd_decay(const Options& o, std::ostream& out)
{
  require(!o.k.empty(), "decay needs --k");
  require(o.degree_cap >= 1, "decay needs --N");
  const auto reports = decay_series(o.k, o.degree_cap, o.trials, o.seed,
                                    sweep_mode(o, SweepMode::fs_pruned), o.workers);
  io::write_reports(out, reports, want_json(o, false));
}

void cmd_enumerate(const Options& o, std::ostream& out)
{
  const std::int64_t k = single_k(o);
  require(o.degree_cap >= 1, "enumerate needs --N");
  const Event event = o.n > 0 ? Event::phi(o.n)
                              : Event::any(sweep_mode(o, SweepMode::full_sweep), cap_override(o));
  io::write_reports(out, {exhaustive_enumeration(k, o.degree_cap, event, o.workers)},
                    want_json(o, false));
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Cyclotomic factors of sparse 0,1-polynomials: detection, relation "
               "lattices, probability bounds and experiments"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--mode", o.mode, "full-sweep or fs-pruned");
    sub->add_option("--format", o.format, "csv or json");
    sub->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    sub->add_option("--cap-override", o.cap_override, "largest n to sweep");
    sub->add_option("-o,--output", o.output, "output file (default stdout)");
  };

  auto* test = app.add_subcommand("test", "cyclotomic verdict per polynomial line");
  auto* factors = app.add_subcommand("factors", "factor lists, or one modulus in detail with --n");
  for (auto* sub : {test, factors}) {
    sub->add_option("input", o.input, "polynomial file ('-' for stdin)");
    sub->add_option("--N", o.degree_cap, "degree cap applied to every line");
  }
  factors->add_option("--n", o.n, "single modulus to inspect");

  auto* basis = app.add_subcommand("basis", "relation lattice basis as JSON");
  basis->add_option("--n", o.n)->required();

  auto* candidates = app.add_subcommand("candidates", "admissible squarefree moduli");
  candidates->add_option("--k", o.k)->required();

  auto* bounds = app.add_subcommand("bounds", "per-range probability bounds");
  bounds->add_option("--k", o.k)->required()->delimiter(',');
  bounds->add_option("--c", o.c, "exponent constant for the large-n range");

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate");
  auto* decay = app.add_subcommand("decay", "Monte Carlo estimates over a list of k");
  auto* enumerate = app.add_subcommand("enumerate", "exact probability by enumeration");
  for (auto* sub : {estimate, decay, enumerate}) {
    sub->add_option("--k", o.k)->required()->delimiter(',');
    sub->add_option("--N", o.degree_cap)->required();
  }
  for (auto* sub : {estimate, enumerate})
    sub->add_option("--n", o.n, "fixed modulus (default: any cyclotomic factor)");
  for (auto* sub : {estimate, decay})
    sub->add_option("--trials", o.trials);

  for (auto* sub : {test, factors, basis, candidates, bounds, estimate, decay, enumerate})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    report_error(err, "invalid-parameters", e.what());
    return kInvalidParameters;
  }

  std::ostringstream buffer;
  try {
    if (*test)
      cmd_test(o, buffer);
    else if (*factors)
      cmd_factors(o, buffer);
    else if (*basis)
      cmd_basis(o, buffer);
    else if (*candidates)
      cmd_candidates(o, buffer);
    else if (*bounds)
      cmd_bounds(o, buffer);
    else if (*estimate)
      cmd_estimate(o, buffer);
    else if (*decay)
      cmd_decay(o, buffer);
    else if (*enumerate)
      cmd_enumerate(o, buffer);
  } catch (const ParseError& e) {
    report_error(err, "parse-error", e.what(), e.line());
    return kParseError;
  } catch (const ResourceLimit& e) {
    report_error(err, "resource-limit", e.what());
    return kResourceLimit;
  } catch (const Error& e) {
    report_error(err, "invalid-parameters", e.what());
    return kInvalidParameters;
  }

  if (o.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!file) {
      report_error(err, "invalid-parameters", "cannot open output file '" + o.output + "'");
      return kInvalidParameters;
    }
    file << buffer.str();
  }
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  std::vector<const char*> argv{"lacuna"};
  for (const auto& a : args)
    argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace lacuna::cli
