#ifndef LACUNA_IO_HPP
#define LACUNA_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lacuna/bounds.hpp"
#include "lacuna/cyclotomic.hpp"
#include "lacuna/experiment.hpp"
#include "lacuna/relation_lattice.hpp"
#include "lacuna/sparse_poly.hpp"

namespace lacuna::io {

/// Shortest round-trip decimal for a double; "inf"/"nan" spelled out.
std::string format_double(double value);

/// Integer as a JSON number when it fits in 64 bits, else a decimal string.
nlohmann::json big_to_json(const BigInt& value);

nlohmann::json factor_record(const SparsePoly& poly, const std::vector<std::int64_t>& factors,
                             SweepMode mode);

nlohmann::json basis_to_json(const RelationBasis& basis);

extern const char* const kReportCsvHeader;
std::string report_csv_row(const EstimateReport& report);
nlohmann::json report_to_json(const EstimateReport& report);
void write_reports(std::ostream& out, const std::vector<EstimateReport>& reports, bool json);

extern const char* const kBoundsCsvHeader;
void write_bounds(std::ostream& out, const std::vector<BoundBreakdown>& tables, bool json);

} // namespace lacuna::io

#endif // LACUNA_IO_HPP
