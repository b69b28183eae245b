#include "fbheat/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fbheat {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json meta_json(const ReportMeta& m) {
    return json{{"epsilon", m.epsilon},
                {"truncation", m.truncation},
                {"precision", m.precision},
                {"version", m.version}};
}

ReportMeta meta_from(const json& j) {
    ReportMeta m;
    const json& mj = j.at("meta");
    m.epsilon = mj.at("epsilon").get<double>();
    m.truncation = mj.at("truncation").get<int>();
    m.precision = mj.at("precision").get<std::string>();
    m.version = mj.value("version", std::string(kVersion));
    return m;
}

std::string csv_meta_cols(const ReportMeta& m) {
    return fmt(m.epsilon) + "," + std::to_string(m.truncation) + "," + m.precision;
}

constexpr const char* kCsvMetaHeader = "epsilon,truncation,precision";

} // namespace

// ---------------------------------------------------------------- spectrum

nlohmann::json to_json(const ReportMeta& meta, const Spectrum& s) {
    json recs = json::array();
    for (const auto& r : s.records) {
        recs.push_back(json{{"re", r.mu.real()},
                            {"im", r.mu.imag()},
                            {"residual", r.residual},
                            {"stabilized", r.stabilized},
                            {"gap_to_nearest", r.gap_to_nearest}});
    }
    return json{{"meta", meta_json(meta)},
                {"data", json{{"records", recs}, {"n_stabilized", s.n_stabilized()}}}};
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
    Spectrum s;
    const ReportMeta m = meta_from(j);
    s.epsilon = m.epsilon;
    s.truncation = m.truncation;
    s.precision_mode = m.precision == "extended" ? Precision::extended : Precision::standard;
    for (const auto& r : j.at("data").at("records")) {
        SpectrumRecord rec;
        rec.mu = Cplx(r.at("re").get<double>(), r.at("im").get<double>());
        rec.residual = r.at("residual").get<double>();
        rec.stabilized = r.at("stabilized").get<bool>();
        rec.gap_to_nearest = r.at("gap_to_nearest").get<double>();
        s.records.push_back(rec);
    }
    return s;
}

std::string to_csv(const ReportMeta& meta, const Spectrum& s) {
    std::string out = std::string(kCsvMetaHeader) +
                      ",index,re_mu,im_mu,residual,stabilized,gap_to_nearest\n";
    const std::string mc = csv_meta_cols(meta);
    for (size_t i = 0; i < s.records.size(); ++i) {
        const auto& r = s.records[i];
        out += mc + "," + std::to_string(i) + "," + fmt(r.mu.real()) + "," + fmt(r.mu.imag()) +
               "," + fmt(r.residual) + "," + (r.stabilized ? "1" : "0") + "," +
               fmt(r.gap_to_nearest) + "\n";
    }
    return out;
}

// ------------------------------------------------------------------- solve

nlohmann::json to_json(const ReportMeta& meta, const SolveReport& s) {
    json th = json::array(), re = json::array(), im = json::array();
    for (int j = 0; j < s.h.size(); ++j) {
        th.push_back(s.h.theta(j));
        re.push_back(s.h[j].real());
        im.push_back(s.h[j].imag());
    }
    return json{{"meta", meta_json(meta)},
                {"data", json{{"theta", th},
                              {"re", re},
                              {"im", im},
                              {"k1_re", s.k1.real()},
                              {"k1_im", s.k1.imag()},
                              {"residual_l2", s.residual_l2},
                              {"quadrature_error_estimate", s.quadrature_error_estimate}}}};
}

SolveReport solve_from_json(const nlohmann::json& j) {
    const json& d = j.at("data");
    std::vector<Cplx> samples;
    const auto& re = d.at("re");
    const auto& im = d.at("im");
    for (size_t i = 0; i < re.size(); ++i)
        samples.emplace_back(re[i].get<double>(), im[i].get<double>());
    SolveReport out{PeriodicGridFunction(std::move(samples)),
                    Cplx(d.at("k1_re").get<double>(), d.at("k1_im").get<double>()),
                    d.at("residual_l2").get<double>(),
                    d.at("quadrature_error_estimate").get<double>()};
    return out;
}

std::string to_csv(const ReportMeta& meta, const SolveReport& s) {
    std::string out = std::string(kCsvMetaHeader) +
                      ",theta,re,im,k1_re,k1_im,residual_l2,quadrature_error_estimate\n";
    const std::string mc = csv_meta_cols(meta);
    const std::string tail = fmt(s.k1.real()) + "," + fmt(s.k1.imag()) + "," +
                             fmt(s.residual_l2) + "," + fmt(s.quadrature_error_estimate);
    for (int j = 0; j < s.h.size(); ++j) {
        out += mc + "," + fmt(s.h.theta(j)) + "," + fmt(s.h[j].real()) + "," +
               fmt(s.h[j].imag()) + "," + tail + "\n";
    }
    return out;
}

// ------------------------------------------------------------------- riesz

nlohmann::json to_json(const ReportMeta& meta, const RieszDiagnostics& r) {
    return json{{"meta", meta_json(meta)},
                {"data", json{{"angles", r.angles},
                              {"gram_condition", r.gram_condition},
                              {"precision_floor_index", r.precision_floor_index},
                              {"precision_floor", r.precision_floor},
                              {"rank_deficient_at", r.rank_deficient_at}}}};
}

RieszDiagnostics riesz_from_json(const nlohmann::json& j) {
    RieszDiagnostics r;
    const json& d = j.at("data");
    r.angles = d.at("angles").get<std::vector<double>>();
    r.gram_condition = d.at("gram_condition").get<std::vector<double>>();
    r.precision_floor_index = d.at("precision_floor_index").get<int>();
    r.precision_floor = d.at("precision_floor").get<double>();
    r.rank_deficient_at = d.at("rank_deficient_at").get<int>();
    return r;
}

std::string to_csv(const ReportMeta& meta, const RieszDiagnostics& r) {
    std::string out = std::string(kCsvMetaHeader) +
                      ",n,angle,gram_condition,at_precision_floor\n";
    const std::string mc = csv_meta_cols(meta);
    for (size_t i = 0; i < r.gram_condition.size(); ++i) {
        const bool have_angle = i >= 1 && i - 1 < r.angles.size();
        const double angle = have_angle ? r.angles[i - 1] : std::nan("");
        const bool floored = have_angle && r.precision_floor_index >= 0 &&
                             static_cast<int>(i - 1) >= r.precision_floor_index;
        out += mc + "," + std::to_string(i + 1) + "," + fmt(angle) + "," +
               fmt(r.gram_condition[i]) + "," + (floored ? "1" : "0") + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- schatten

nlohmann::json to_json(const ReportMeta& meta, const SchattenReport& s) {
    json sums = json::array();
    for (const auto& [p, v] : s.partial_sums) {
        sums.push_back(json{{"p", p},
                            {"sum", v},
                            {"sum_doubled", s.partial_sums_doubled.at(p)},
                            {"stabilization", s.stabilization.at(p)}});
    }
    return json{{"meta", meta_json(meta)},
                {"data", json{{"block", s.block},
                              {"singular_values", s.singular_values},
                              {"partial_sums", sums}}}};
}

SchattenReport schatten_from_json(const nlohmann::json& j) {
    SchattenReport s;
    const ReportMeta m = meta_from(j);
    s.epsilon = m.epsilon;
    const json& d = j.at("data");
    s.block = d.at("block").get<int>();
    s.singular_values = d.at("singular_values").get<std::vector<double>>();
    for (const auto& e : d.at("partial_sums")) {
        const double p = e.at("p").get<double>();
        s.partial_sums[p] = e.at("sum").get<double>();
        s.partial_sums_doubled[p] = e.at("sum_doubled").get<double>();
        s.stabilization[p] = e.at("stabilization").get<double>();
    }
    return s;
}

std::string to_csv(const ReportMeta& meta, const SchattenReport& s) {
    std::string out = std::string(kCsvMetaHeader) + ",p,sum,sum_doubled,stabilization\n";
    const std::string mc = csv_meta_cols(meta);
    for (const auto& [p, v] : s.partial_sums) {
        out += mc + "," + fmt(p) + "," + fmt(v) + "," + fmt(s.partial_sums_doubled.at(p)) + "," +
               fmt(s.stabilization.at(p)) + "\n";
    }
    return out;
}

// ----------------------------------------------------------------- slcheck

nlohmann::json to_json(const ReportMeta& meta, const SLCrossCheck& c) {
    json pairs = json::array();
    for (const auto& [sl, sc] : c.pairs) pairs.push_back(json{{"mu_sl", sl}, {"mu_scaled", sc}});
    return json{{"meta", meta_json(meta)},
                {"data", json{{"pairs", pairs}, {"max_rel_diff", c.max_rel_diff}}}};
}

SLCrossCheck slcheck_from_json(const nlohmann::json& j) {
    SLCrossCheck c;
    const json& d = j.at("data");
    for (const auto& e : d.at("pairs"))
        c.pairs.emplace_back(e.at("mu_sl").get<double>(), e.at("mu_scaled").get<double>());
    c.max_rel_diff = d.at("max_rel_diff").get<double>();
    return c;
}

std::string to_csv(const ReportMeta& meta, const SLCrossCheck& c) {
    std::string out = std::string(kCsvMetaHeader) + ",index,mu_sl,mu_scaled,rel_diff\n";
    const std::string mc = csv_meta_cols(meta);
    for (size_t i = 0; i < c.pairs.size(); ++i) {
        const auto& [sl, sc] = c.pairs[i];
        const double rel = std::abs(sl - sc) / std::max(std::abs(sc), 1e-300);
        out += mc + "," + std::to_string(i + 1) + "," + fmt(sl) + "," + fmt(sc) + "," + fmt(rel) +
               "\n";
    }
    return out;
}

// ------------------------------------------------------------------ evolve

nlohmann::json to_json(const ReportMeta& meta, const PropagatorReport& p) {
    return json{{"meta", meta_json(meta)},
                {"data", json{{"t", p.time},
                              {"truncations", p.truncations},
                              {"operator_norms", p.operator_norms},
                              {"growth_ratios", p.growth_ratios}}}};
}

PropagatorReport propagator_from_json(const nlohmann::json& j) {
    PropagatorReport p;
    const ReportMeta m = meta_from(j);
    p.epsilon = m.epsilon;
    const json& d = j.at("data");
    p.time = d.at("t").get<double>();
    p.truncations = d.at("truncations").get<std::vector<int>>();
    p.operator_norms = d.at("operator_norms").get<std::vector<double>>();
    p.growth_ratios = d.at("growth_ratios").get<std::vector<double>>();
    return p;
}

std::string to_csv(const ReportMeta& meta, const PropagatorReport& p) {
    std::string out =
        std::string(kCsvMetaHeader) + ",t,section,operator_norm,growth_vs_previous\n";
    const std::string mc = csv_meta_cols(meta);
    for (size_t i = 0; i < p.truncations.size(); ++i) {
        const double ratio = i > 0 ? p.growth_ratios[i - 1] : std::nan("");
        out += mc + "," + fmt(p.time) + "," + std::to_string(p.truncations[i]) + "," +
               fmt(p.operator_norms[i]) + "," + fmt(ratio) + "\n";
    }
    return out;
}

// ------------------------------------------------------------------ verify

nlohmann::json to_json(const ReportMeta& meta, const VerifyReport& v) {
    json checks = json::array();
    for (const auto& c : v.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return json{{"meta", meta_json(meta)},
                {"data", json{{"checks", checks}, {"all_pass", v.all_pass()}}}};
}

std::string to_csv(const ReportMeta& meta, const VerifyReport& v) {
    std::string out = std::string(kCsvMetaHeader) + ",check,pass,detail\n";
    const std::string mc = csv_meta_cols(meta);
    for (const auto& c : v.checks) {
        std::string detail = c.detail;
        for (char& ch : detail)
            if (ch == ',' || ch == '\n') ch = ';';
        out += mc + "," + c.name + "," + (c.pass ? "1" : "0") + "," + detail + "\n";
    }
    return out;
}

// --------------------------------------------------------------- functions

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
        } else {
            t.rows.push_back(cells);
        }
    }
    return t;
}

std::string function_to_csv(const PeriodicGridFunction& g) {
    std::string out = "theta,re,im\n";
    for (int j = 0; j < g.size(); ++j)
        out += fmt(g.theta(j)) + "," + fmt(g[j].real()) + "," + fmt(g[j].imag()) + "\n";
    return out;
}

PeriodicGridFunction function_from_csv(const std::string& text) {
    const CsvTable t = parse_csv(text);
    if (t.header.size() < 3 || t.header[0] != "theta" || t.header[1] != "re" ||
        t.header[2] != "im")
        throw PreconditionError("function CSV must start with the header 'theta,re,im'");
    std::vector<Cplx> samples;
    std::vector<double> thetas;
    for (const auto& row : t.rows) {
        if (row.size() < 3) throw PreconditionError("function CSV row with fewer than 3 cells");
        thetas.push_back(std::stod(row[0]));
        samples.emplace_back(std::stod(row[1]), std::stod(row[2]));
    }
    PeriodicGridFunction g{std::move(samples)};
    // Validate the stated grid convention.
    for (int j = 0; j < g.size(); ++j) {
        if (std::abs(thetas[static_cast<size_t>(j)] - g.theta(j)) > 1e-8)
            throw PreconditionError(
                "function CSV grid must be uniform with theta_j = -pi + 2*pi*j/M");
    }
    return g;
}

PeriodicGridFunction resample(const PeriodicGridFunction& g, int M) {
    if (g.size() == M) return g;
    return idft(dft(g), M);
}

void write_report_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot move report into place at " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace fbheat
