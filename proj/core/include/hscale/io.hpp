#ifndef HSCALE_IO_HPP
#define HSCALE_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "hscale/generators.hpp"
#include "hscale/ofamily.hpp"
#include "hscale/report.hpp"
#include "hscale/system.hpp"

namespace hscale {

/// A named operator definition attached to a system file, usable as a
/// LimOperator base component.
struct OperatorDef {
  std::string name;
  Label base;
  Matrix matrix;
};

/// Parsed system file: the built system plus, for operator-family kinds,
/// the family it came from.
struct SystemFile {
  std::string kind;
  ContractiveSystem system;
  std::optional<OFamily> family;
  std::vector<OperatorDef> operators;
};

/// Kinds: "explicit", "ofamily", "shift-chain", "weighted-grid",
/// "ofamily-seed", "random". Complex entries are [re, im] pairs (bare
/// numbers are accepted as real); matrices are row-major nested arrays;
/// indices are strings. Malformed input throws SchemaError with position
/// or path context.
SystemFile parse_system_json(const std::string& text);
SystemFile load_system_file(const std::string& path);

/// Expanded explicit-kind JSON of a system (pretty-printed).
std::string system_to_json(const ContractiveSystem& s,
                           const std::vector<OperatorDef>& operators = {});

std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);

/// "re+imi" with the real part to 15 decimal places (the imaginary part is
/// shortest-form, so exact zeros print as +0i).
std::string format_complex15(Complex z);

/// Parses "re", "re+imi" or "re-imi".
Complex parse_complex(const std::string& text);
/// Comma-separated complex entries.
Vector parse_vector(const std::string& text);

}  // namespace hscale

#endif
