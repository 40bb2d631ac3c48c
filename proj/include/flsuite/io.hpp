#ifndef FLSUITE_IO_HPP
#define FLSUITE_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flsuite/harness.hpp"
#include "flsuite/spectral.hpp"
#include "flsuite/variation.hpp"

namespace flsuite::io {

inline constexpr std::string_view kToolName = "flsuite";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// File-system failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Header N,M,eps,grid_points,sup_error,wall_ms; '\n' line endings.
std::string convergence_csv(const harness::ConvergenceTable& table);
std::vector<harness::ConvergenceRow> parse_convergence_csv(std::string_view text);

/// Header n,m,value.
std::string coefficients_csv(const spectral::CoefficientMatrix& coeffs);
spectral::CoefficientMatrix parse_coefficients_csv(std::string_view text, int quad_order);

std::string method_label(const variation::VariationValue& v);

nlohmann::ordered_json to_json(const variation::VariationReport& report,
                               const std::string& function);
variation::VariationReport variation_report_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const variation::SeriesReport& report);

nlohmann::ordered_json to_json(const std::vector<harness::KernelEstimateReport>& reports,
                               int samples, double eps, std::uint64_t seed);
std::vector<harness::KernelEstimateReport> kernel_reports_from_json(
    const nlohmann::ordered_json& j);

/// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace flsuite::io

#endif  // FLSUITE_IO_HPP
