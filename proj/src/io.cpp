#include "lacuna/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace lacuna::io {

using nlohmann::json;

std::string format_double(double value)
{
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

json big_to_json(const BigInt& value)
{
  if (value.fits_slong_p())
    return static_cast<std::int64_t>(value.get_si());
  return value.get_str();
}

json factor_record(const SparsePoly& poly, const std::vector<std::int64_t>& factors,
                   SweepMode mode)
{
  return json{{"exponents", poly.exponents()},
              {"factors", factors},
              {"has_cyclotomic", !factors.empty()},
              {"mode", to_string(mode)}};
}

json basis_to_json(const RelationBasis& basis)
{
  return json{{"n", basis.n},
              {"rank", basis.rank},
              {"vectors", basis.vectors},
              {"gram_det", big_to_json(basis.gram_det)},
              {"mesh_len", mesh_max_length(basis)}};
}

const char* const kReportCsvHeader =
    "k,N,n_or_any,mode,trials,hits,estimate,ci_low,ci_high,seed,exact";

std::string report_csv_row(const EstimateReport& r)
{
  std::string row;
  row += std::to_string(r.k) + ",";
  row += std::to_string(r.degree_cap) + ",";
  row += r.event.label() + ",";
  row += to_string(r.mode) + ",";
  row += std::to_string(r.trials) + ",";
  row += std::to_string(r.hits) + ",";
  row += format_double(r.estimate) + ",";
  row += format_double(r.ci_low) + ",";
  row += format_double(r.ci_high) + ",";
  row += std::to_string(r.seed) + ",";
  if (r.exact_value)
    row += r.exact_value->get_str();
  return row;
}

json report_to_json(const EstimateReport& r)
{
  return json{{"k", r.k},
              {"N", r.degree_cap},
              {"n_or_any", r.event.label()},
              {"mode", to_string(r.mode)},
              {"trials", r.trials},
              {"hits", r.hits},
              {"estimate", r.estimate},
              {"ci_low", r.ci_low},
              {"ci_high", r.ci_high},
              {"seed", r.seed},
              {"exact", r.exact_value ? json(r.exact_value->get_str()) : json(nullptr)}};
}

void write_reports(std::ostream& out, const std::vector<EstimateReport>& reports, bool as_json)
{
  if (as_json) {
    json arr = json::array();
    for (const auto& r : reports)
      arr.push_back(report_to_json(r));
    out << arr.dump() << '\n';
    return;
  }
  out << kReportCsvHeader << '\n';
  for (const auto& r : reports)
    out << report_csv_row(r) << '\n';
}

const char* const kBoundsCsvHeader = "k,range_label,n_lo,n_hi,bound,formula_tag";

void write_bounds(std::ostream& out, const std::vector<BoundBreakdown>& tables, bool as_json)
{
  if (as_json) {
    json arr = json::array();
    for (const auto& t : tables) {
      json rows = json::array();
      for (const auto& row : t.rows)
        rows.push_back(json{{"range_label", row.label},
                            {"n_lo", row.n_lo},
                            {"n_hi", row.n_hi ? json(*row.n_hi) : json("inf")},
                            {"bound", row.bound},
                            {"log_raw", row.log_raw},
                            {"formula_tag", row.formula_tag}});
      arr.push_back(json{{"k", t.k}, {"c", t.c}, {"rows", rows}, {"total", t.total}});
    }
    out << arr.dump() << '\n';
    return;
  }
  out << kBoundsCsvHeader << '\n';
  for (const auto& t : tables)
    for (const auto& row : t.rows)
      out << t.k << ',' << row.label << ',' << row.n_lo << ','
          << (row.n_hi ? std::to_string(*row.n_hi) : std::string("inf")) << ','
          << format_double(row.bound) << ',' << row.formula_tag << '\n';
}

} // namespace lacuna::io
