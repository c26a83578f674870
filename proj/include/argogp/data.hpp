#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <utility>

#include "argogp/types.hpp"

namespace argogp {

enum class PressureLevel { P10, P300, P1500 };

const char* pressure_level_name(PressureLevel level);
PressureLevel pressure_level_from(const std::string& name);
// Closed retention interval [lo, hi] in dbar.
std::pair<double, double> pressure_bin(PressureLevel level);

// Calendar month (1..12) of a fractional day of year; February has 29 days
// in leap years.
int month_of(double day_of_year, int year);

double haversine_km(double lat1, double lon1, double lat2, double lon2);

// Smallest-magnitude longitude difference, in (-180, 180].
double wrap_lon_delta(double lon_a, double lon_b);

// Maps the canonical column names onto the file's header names.
struct ColumnSchema {
  std::string profile_id = "profile_id";
  std::string lat = "lat";
  std::string lon = "lon";
  std::string pressure = "pressure";
  std::string day = "day";
  std::string year = "year";
  std::string value = "value";
  char delimiter = ',';
};

struct RowIssue {
  std::size_t row = 0;  // 1-based, header is row 1
  std::string field;
  std::string detail;
};

struct ParseReport {
  std::vector<RowIssue> rejected;
  std::size_t accepted = 0;
  std::string first_bad_line;
};

Input7D transform_input(double lat, double lon, double pressure, double day,
                        double year_coord, InputMode mode);

// Reads a delimited table with a header row. Rows that violate range
// invariants or fail numeric parsing are rejected and recorded in the
// report. Missing columns, profile inconsistencies, and an empty result
// throw DataError.
Dataset parse_profiles(std::istream& in, const ColumnSchema& schema,
                       InputMode mode = InputMode::Full7D,
                       ParseReport* report = nullptr);

Dataset subset_pressure_bin(const Dataset& d, PressureLevel level);
Dataset subset_region(const Dataset& d, double center_lat, double center_lon,
                      double radius_km);
Dataset subset_months(const Dataset& d, const std::set<int>& months);

// Profile-level split, deterministic in the seed. The optional month filter
// applies to the test side only; filtered-out test profiles are dropped, not
// moved to train.
std::pair<Dataset, Dataset> split_train_test(const Dataset& d, double train_fraction,
                                             std::uint64_t seed,
                                             std::optional<int> test_month_filter);

// Recomputes inputs from measurements under the given mode.
void recompute_inputs(Dataset& d, InputMode mode);

}  // namespace argogp
