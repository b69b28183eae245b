#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fbheat/diagnostics.hpp"
#include "fbheat/evolve.hpp"
#include "fbheat/grid.hpp"
#include "fbheat/invsolve.hpp"
#include "fbheat/spectrum.hpp"
#include "fbheat/sturm.hpp"

namespace fbheat {

inline constexpr const char* kVersion = "0.1.0";

/// Common report header.  Every serialized report carries it, either as the
/// "meta" object (JSON) or as leading columns repeated per row (CSV keeps a
/// single header row).
struct ReportMeta {
    double epsilon = 0.0;
    int truncation = 0;
    std::string precision = "standard";
    std::string version = kVersion;
};

/// The explicit/Galerkin solve output bundled for serialization.
struct SolveReport {
    PeriodicGridFunction h;
    Cplx k1{0.0, 0.0};
    double residual_l2 = 0.0;
    double quadrature_error_estimate = 0.0;
};

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

// --- JSON (schema: { "meta": {...}, "data": {...} }) -----------------------

nlohmann::json to_json(const ReportMeta& meta, const Spectrum& s);
nlohmann::json to_json(const ReportMeta& meta, const SolveReport& s);
nlohmann::json to_json(const ReportMeta& meta, const RieszDiagnostics& r);
nlohmann::json to_json(const ReportMeta& meta, const SchattenReport& s);
nlohmann::json to_json(const ReportMeta& meta, const SLCrossCheck& c);
nlohmann::json to_json(const ReportMeta& meta, const PropagatorReport& p);
nlohmann::json to_json(const ReportMeta& meta, const VerifyReport& v);

Spectrum spectrum_from_json(const nlohmann::json& j);
SolveReport solve_from_json(const nlohmann::json& j);
RieszDiagnostics riesz_from_json(const nlohmann::json& j);
SchattenReport schatten_from_json(const nlohmann::json& j);
SLCrossCheck slcheck_from_json(const nlohmann::json& j);
PropagatorReport propagator_from_json(const nlohmann::json& j);

// --- CSV (one header row, 17 significant digits) ---------------------------

std::string to_csv(const ReportMeta& meta, const Spectrum& s);
std::string to_csv(const ReportMeta& meta, const SolveReport& s);
std::string to_csv(const ReportMeta& meta, const RieszDiagnostics& r);
std::string to_csv(const ReportMeta& meta, const SchattenReport& s);
std::string to_csv(const ReportMeta& meta, const SLCrossCheck& c);
std::string to_csv(const ReportMeta& meta, const PropagatorReport& p);
std::string to_csv(const ReportMeta& meta, const VerifyReport& v);

/// Parsed CSV with the header row split off.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);

/// Function interchange format: header "theta,re,im", one row per grid point
/// theta_j = -pi + 2*pi*j/M in ascending order.
std::string function_to_csv(const PeriodicGridFunction& g);
PeriodicGridFunction function_from_csv(const std::string& text);

/// Resample onto an M-point grid by trigonometric interpolation (identity
/// when the sizes already agree).
PeriodicGridFunction resample(const PeriodicGridFunction& g, int M);

// --- Files ------------------------------------------------------------------

/// Write via a temporary file + rename, so concurrent sweep jobs never see a
/// half-written report.  path "-" writes to stdout.
void write_report_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace fbheat
