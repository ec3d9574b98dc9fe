#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paradv/adversary.hpp"
#include "paradv/combinatorics.hpp"
#include "paradv/model.hpp"
#include "paradv/simulator.hpp"

namespace paradv {

/// Floats in machine-readable output carry 12 significant digits.
inline constexpr int kSignificantDigits = 12;

double round_significant(double v, int digits = kSignificantDigits);
std::string format_real(double v, int digits = kSignificantDigits);

enum class Mode { Enumerated, ClosedForm, Spectral };
enum class FieldKind { Integer, Real, Label };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// One reported quantity. Integers are exact decimal strings; reals are
/// stored already rounded to 12 significant digits.
struct Field {
  std::string name;
  Mode mode;
  FieldKind kind;
  std::string text;
  double real = 0.0;

  friend bool operator==(const Field&, const Field&) = default;
};

struct Warning {
  std::string quantity;
  std::string enumerated;
  std::string closed_form;
  std::string witness_row;
  std::string witness_tuple;

  friend bool operator==(const Warning&, const Warning&) = default;
};

enum class BoundMode { Combinatorial, Spectral, All };
BoundMode bound_mode_from_string(const std::string& s);
std::string to_string(BoundMode m);

struct BoundReport {
  unsigned n = 0;
  std::uint64_t N = 0;
  unsigned K = 0;
  Rational epsilon{1, 1};
  unsigned p = 1;
  BoundMode mode = BoundMode::All;
  std::vector<Field> fields;
  std::vector<Warning> warnings;

  const Field* find(const std::string& name, Mode mode) const;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

struct BoundOptions {
  BoundMode mode = BoundMode::All;
  /// Skip the spectral computation when |X| + |Y| exceeds this.
  std::size_t max_spectral_dim = 4096;
};

/// Runs the requested computations on the counting instance (n, K, eps).
/// Parameter errors propagate as paradv::Error.
BoundReport compute_bound_report(unsigned n, unsigned K, Rational epsilon, unsigned p, const BoundOptions& opts = {});

std::string render_text(const BoundReport& r);

nlohmann::json to_json(const BoundReport& r);
BoundReport bound_report_from_json(const nlohmann::json& j);

/// Fixed sweep columns.
const std::vector<std::string>& sweep_columns();

struct SweepRow {
  std::vector<std::string> values;  // aligned with sweep_columns()
};

SweepRow flatten(const BoundReport& r);
std::string to_csv(const std::vector<SweepRow>& rows);

nlohmann::json to_json(const SpectralBoundReport& r);
nlohmann::json to_json(const ExtremaReport& e, const RelationTable& r);
nlohmann::json to_json(const ClosedFormReport& c);
nlohmann::json to_json(const CountEstimate& c);
nlohmann::json to_json(const ParallelCountResult& r);
nlohmann::json to_json(const ProgressTrace& t, const Schedule& sch);
nlohmann::json to_json(const OverlapReport& r);

/// Stable textual rendering of a JSON document (2-space indent, trailing newline).
std::string dump_document(const nlohmann::json& j);

}  // namespace paradv
