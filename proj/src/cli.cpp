// Copyright 2026 The Ontolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ontolab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include "ontolab/errors.hpp"
#include "ontolab/lgscen.hpp"
#include "ontolab/version.hpp"

namespace ontolab::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kDirectionTol = 1e-6;
constexpr double kOracleSigmas = 5.0;

// --- parsing helpers ----------------------------------------------------------

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return v;
}

// --- output -------------------------------------------------------------------

using Cell = std::variant<std::string, double, std::uint64_t, std::int64_t, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// 12 significant digits; the JSON output carries the same rounded value.
std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", v);
    return buf.data();
}

std::string csv_cell(const Cell &c) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return std::to_string(v);
            }
        },
        c);
}

ordered_json json_cell(const Cell &c) {
    return std::visit(
        [](const auto &v) -> ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return std::stod(format_double(v));
            } else {
                return v;
            }
        },
        c);
}

std::string format_vec(const BlochVector &v) {
    return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z);
}

ordered_json config_json(const RunConfig &cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    j["model"] = cfg.model;
    j["runs"] = cfg.runs;
    j["seed"] = cfg.seed;
    j["gamma"] = std::stod(format_double(cfg.gamma));
    if (cfg.command == "lg") j["order"] = cfg.order;
    j["times"] = ordered_json::array();
    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
        j["times"].push_back({{"literal", cfg.time_literals[k]}, {"radians", std::stod(format_double(cfg.times[k]))}});
    }
    j["dirs"] = ordered_json::array();
    for (const BlochVector &d : cfg.dirs) {
        j["dirs"].push_back({std::stod(format_double(d.x)), std::stod(format_double(d.y)), std::stod(format_double(d.z))});
    }
    j["bins"] = ordered_json::array();
    for (const Resolution &r : cfg.bins) j["bins"].push_back(std::to_string(r.nz) + "x" + std::to_string(r.nphi));
    j["format"] = cfg.format;
    return j;
}

ordered_json provenance_json() {
    ordered_json j;
    j["tool"] = "ontolab";
    j["version"] = kVersion;
    j["rng"] = "splitmix64 per run; stream seed = mix64(seed ^ mix64(run + 0x9e3779b97f4a7c15))";
    j["angle_units"] = "radians";
    j["entropy_units"] = "nats";
    return j;
}

std::string render(const RunConfig &cfg, const Table &table) {
    std::ostringstream os;
    if (cfg.format == "json") {
        ordered_json doc;
        doc["config"] = config_json(cfg);
        ordered_json rows = ordered_json::array();
        for (const auto &row : table.rows) {
            ordered_json r;
            for (std::size_t k = 0; k < table.columns.size(); ++k) r[table.columns[k]] = json_cell(row[k]);
            rows.push_back(std::move(r));
        }
        doc["results"] = std::move(rows);
        doc["provenance"] = provenance_json();
        os << doc.dump(2) << "\n";
        return os.str();
    }
    os << "# ontolab " << cfg.command << "\n";
    os << "# config: " << config_json(cfg).dump() << "\n";
    os << "# provenance: " << provenance_json().dump() << "\n";
    for (std::size_t k = 0; k < table.columns.size(); ++k) os << (k ? "," : "") << table.columns[k];
    os << "\n";
    for (const auto &row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
        os << "\n";
    }
    return os.str();
}

void emit(const RunConfig &cfg, const Table &table, std::ostream &out) {
    const std::string text = render(cfg, table);
    if (!cfg.out) {
        out << text;
        return;
    }
    std::ofstream file(*cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file '" + *cfg.out + "'");
    file << text;
    if (!file) throw ConfigError("failed writing output file '" + *cfg.out + "'");
}

// --- validation ---------------------------------------------------------------

void require_model(const RunConfig &cfg, std::initializer_list<std::string_view> allowed) {
    if (std::find(allowed.begin(), allowed.end(), cfg.model) != allowed.end()) return;
    std::string msg = "command '" + cfg.command + "' does not support model '" + cfg.model + "' (allowed:";
    for (auto m : allowed) msg += " " + std::string(m);
    msg += ")";
    if (cfg.command == "erasure" && cfg.model == "mw") {
        msg += "; the branching model never erases system information, check it with 'mwcheck'";
    }
    throw ConfigError(msg);
}

OntologicalModel make_model(const RunConfig &cfg) {
    if (cfg.model == "bb") return BBModel{};
    if (cfg.model == "telegraph") return TelegraphModel(cfg.gamma);
    if (cfg.model == "mw") return MWModel{};
    throw ConfigError("model '" + cfg.model + "' has no ontological simulation");
}

/// Settings for commands that take `count` measurements, from --dirs or --times.
std::vector<MeasurementSetting> settings_from(const RunConfig &cfg, std::size_t count) {
    std::vector<MeasurementSetting> out;
    if (!cfg.dirs.empty() && !cfg.times.empty()) throw ConfigError("give settings via --dirs or --times, not both");
    if (!cfg.dirs.empty()) {
        if (cfg.dirs.size() != count) {
            throw ConfigError("command '" + cfg.command + "' needs " + std::to_string(count) + " direction(s)");
        }
        for (const auto &d : cfg.dirs) out.push_back(MeasurementSetting::along(d));
    } else {
        if (cfg.times.size() != count) {
            throw ConfigError("command '" + cfg.command + "' needs " + std::to_string(count) + " time(s)");
        }
        for (double t : cfg.times) out.push_back(MeasurementSetting::at_time(t));
    }
    return out;
}

// --- commands -----------------------------------------------------------------

Table cmd_lg(const RunConfig &cfg) {
    require_model(cfg, {"quantum", "bb", "mw", "telegraph"});
    if (cfg.times.size() != 4) throw ConfigError("lg needs --times T1,T2,T3,T4");
    if (!cfg.dirs.empty()) throw ConfigError("lg takes times, not directions");
    const LGScenario s = cfg.order == "chain"
                             ? LGScenario::from_chain(cfg.times[0], cfg.times[1], cfg.times[2], cfg.times[3])
                             : LGScenario{cfg.times[0], cfg.times[1], cfg.times[2], cfg.times[3]};
    s.validate();
    const CorrelationMatrix c =
        cfg.model == "quantum" ? quantum_correlations(s) : empirical_correlations(make_model(cfg), s, cfg.runs, cfg.seed);

    Table t{{"quantity", "value", "std_error", "count"}, {}};
    for (int k = 0; k < 4; ++k) {
        t.rows.push_back({"t" + std::to_string(k + 1), std::array{s.t1, s.t2, s.t3, s.t4}[k], 0.0, std::uint64_t{0}});
    }
    std::uint64_t total = 0;
    for (LGPair p : kLGPairs) {
        t.rows.push_back({std::string(to_string(p)), c[p].value, c[p].std_error, c[p].count});
        total += c[p].count;
    }
    t.rows.push_back({std::string("lg_value"), lg_value(c), c.lg_stderr(), total});
    t.rows.push_back({std::string("classical_bound"), kClassicalBound, 0.0, std::uint64_t{0}});
    t.rows.push_back({std::string("tsirelson_bound"), kTsirelsonBound, 0.0, std::uint64_t{0}});
    return t;
}

Table cmd_scan(const RunConfig &cfg) {
    require_model(cfg, {"quantum"});
    if (cfg.times.size() != 2) throw ConfigError("scan needs --times T1,T2");
    const ViolationScan r = max_violation_over_34(cfg.times[0], cfg.times[1]);
    Table t{{"t1", "t2", "t3", "t4", "value", "closed_form", "abs_diff"}, {}};
    t.rows.push_back({cfg.times[0], cfg.times[1], r.t3, r.t4, r.value, r.closed_form, std::abs(r.value - r.closed_form)});
    return t;
}

Table cmd_erasure(const RunConfig &cfg) {
    require_model(cfg, {"bb", "telegraph"});
    const auto settings = settings_from(cfg, 1);
    const ErasureReport rep = erasure_report(make_model(cfg), settings[0], cfg.runs, cfg.bins, cfg.seed);
    Table t{{"nz", "nphi", "bin_area", "entropy_before", "entropy_after", "gap"}, {}};
    for (const ErasureRow &row : rep.rows) {
        t.rows.push_back({static_cast<std::int64_t>(row.resolution.nz), static_cast<std::int64_t>(row.resolution.nphi),
                          row.bin_area, row.entropy_before, row.entropy_after, row.gap()});
    }
    return t;
}

Table cmd_noflow(const RunConfig &cfg) {
    require_model(cfg, {"bb", "telegraph"});
    const auto settings = settings_from(cfg, 2);
    if (cfg.bins.size() != 1) throw ConfigError("noflow takes exactly one --bins resolution");
    const Resolution r = cfg.bins.front();
    const NoFlowReport rep = noflow_test(make_model(cfg), settings[0], settings[1], cfg.runs, r.nz, r.nphi, cfg.seed);
    Table t{{"setting1", "setting2", "nz", "nphi", "runs", "tv", "ci_low", "ci_high", "threshold", "flow_detected"}, {}};
    t.rows.push_back({format_vec(rep.setting1), format_vec(rep.setting2), static_cast<std::int64_t>(r.nz),
                      static_cast<std::int64_t>(r.nphi), rep.runs, rep.tv, rep.ci_low, rep.ci_high, rep.threshold,
                      rep.flow_detected()});
    return t;
}

struct MWCheckOutcome {
    Table table;
    bool standard_passes = false;
};

MWCheckOutcome cmd_mwcheck(const RunConfig &cfg) {
    require_model(cfg, {"mw"});
    if (cfg.dirs.size() != 2) throw ConfigError("mwcheck needs --dirs ax,ay,az;bx,by,bz");
    const BlochVector a = cfg.dirs[0];
    const BlochVector b = cfg.dirs[1];
    const std::array<MeasurementSetting, 2> settings{MeasurementSetting::along(a), MeasurementSetting::along(b)};
    const JointDistribution oracle = sequential_joint(DensityMatrix::maximally_mixed(), settings);

    MWCheckOutcome result;
    Table &t = result.table;
    t.columns = {"check", "variant", "value", "reference", "std_error", "z_score", "pass"};

    auto z_score = [](double value, double reference, double se) {
        const double diff = std::abs(value - reference);
        if (se > 0.0) return diff / se;
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };

    for (MWVariant variant : {MWVariant::standard, MWVariant::alice_direction_in_bob}) {
        const std::string name(to_string(variant));
        const MWJointStatistics stats = mw_joint_statistics(a, b, cfg.runs, cfg.seed, variant);
        const double n = static_cast<double>(stats.runs);
        bool equivalent = true;
        double worst = 0.0;

        const double e_ref = oracle.correlation();
        const double e_se = std::sqrt(std::max(0.0, 1.0 - e_ref * e_ref) / n);
        const double e_z = z_score(stats.correlation(), e_ref, e_se);
        worst = std::max(worst, e_z);
        t.rows.push_back({std::string("correlation"), name, stats.correlation(), e_ref, e_se, e_z, e_z <= kOracleSigmas});

        for (int alpha : {+1, -1}) {
            for (int beta : {+1, -1}) {
                const double p = oracle.at(alpha, beta);
                const double se = std::sqrt(p * (1.0 - p) / n);
                const double f = stats.frequency(alpha, beta);
                const double z = z_score(f, p, se);
                worst = std::max(worst, z);
                const std::string cell = std::string("p(") + (alpha > 0 ? "+1" : "-1") + "," + (beta > 0 ? "+1" : "-1") + ")";
                t.rows.push_back({cell, name, f, p, se, z, z <= kOracleSigmas});
            }
        }
        equivalent = worst <= kOracleSigmas;
        t.rows.push_back({std::string("oracle_equivalence"), name, worst, kOracleSigmas, 0.0, worst, equivalent});
        t.rows.push_back({std::string("immutability"), name, static_cast<double>(stats.mutated_runs), 0.0, 0.0, 0.0,
                          stats.immutable()});
        if (variant == MWVariant::standard) result.standard_passes = equivalent;
    }

    const MWNoErasureReport ne = mw_no_erasure_check(a, b, cfg.runs, cfg.seed);
    t.rows.push_back({std::string("no_erasure_tv_x0"), std::string("standard"), ne.tv_x0, ne.threshold_x0, 0.0, 0.0,
                      ne.tv_x0 <= ne.threshold_x0});
    t.rows.push_back({std::string("no_erasure_tv_x1"), std::string("standard"), ne.tv_x1, ne.threshold_x1, 0.0, 0.0,
                      ne.tv_x1 <= ne.threshold_x1});
    t.rows.push_back({std::string("no_erasure"), std::string("standard"), static_cast<double>(ne.mutated_runs), 0.0,
                      0.0, 0.0, ne.passed()});
    return result;
}

constexpr const char *kFooter = R"(Exit codes: 0 success, 2 configuration error, 3 numerical/acceptance failure.
Output (--format csv): three '#' lines (command, resolved config as JSON, provenance), a header, rows.
Floats carry 12 significant digits. --format json wraps the same rows as {config, results, provenance}.
Columns:
  lg       quantity,value,std_error,count   rows t1..t4 (resolved labels), C13,C23,C24,C14,lg_value,
           classical_bound,tsirelson_bound. With --order chain (default) --times T1<=T2<=T3<=T4 are
           chronological chain times, correlated as (T1,T2),(T2,T3),(T3,T4),(T1,T4).
  scan     t1,t2,t3,t4,value,closed_form,abs_diff
  erasure  nz,nphi,bin_area,entropy_before,entropy_after,gap          (nats)
  noflow   setting1,setting2,nz,nphi,runs,tv,ci_low,ci_high,threshold,flow_detected
  mwcheck  check,variant,value,reference,std_error,z_score,pass
Angles are radians; literals such as pi/8, 3pi/8 or -pi/4 are accepted.
ONTOLAB_THREADS sets the worker count; results do not depend on it.)";

void fill_defaults(RunConfig &cfg, bool model_given, bool bins_given) {
    if (!model_given) {
        if (cfg.command == "lg" || cfg.command == "scan") cfg.model = "quantum";
        else if (cfg.command == "mwcheck") cfg.model = "mw";
        else cfg.model = "bb";
    }
    if (cfg.time_literals.empty() && cfg.dirs.empty()) {
        if (cfg.command == "lg") cfg.time_literals = {"0", "pi/8", "pi/4", "3pi/8"};
        if (cfg.command == "scan") cfg.time_literals = {"0", "pi/4"};
        if (cfg.command == "erasure") cfg.dirs = {axis::z};
        if (cfg.command == "noflow") cfg.dirs = {axis::z, axis::x};
        if (cfg.command == "mwcheck") cfg.dirs = {axis::z, heisenberg_direction(kPi / 8)};
    }
    if (!bins_given) {
        if (cfg.command == "erasure") cfg.bins = {{8, 8}, {16, 16}, {32, 32}};
        else if (cfg.command == "noflow") cfg.bins = {{16, 16}};
    }
}

}  // namespace

double parse_angle(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw ConfigError("empty angle");
    const std::size_t pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) return parse_number(s);

    std::string_view coeff = trim(s.substr(0, pi_pos));
    std::string_view rest = trim(s.substr(pi_pos + 2));
    if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
    double scale = 1.0;
    if (coeff == "-") {
        scale = -1.0;
    } else if (coeff == "+" || coeff.empty()) {
        scale = 1.0;
    } else {
        scale = parse_number(coeff);
    }
    double value = scale * kPi;
    if (!rest.empty()) {
        if (rest.front() != '/') throw ConfigError("cannot parse angle '" + std::string(text) + "'");
        const double den = parse_number(rest.substr(1));
        if (den == 0.0) throw ConfigError("zero denominator in angle '" + std::string(text) + "'");
        value /= den;
    }
    return value;
}

std::vector<Resolution> parse_bins(std::string_view text) {
    std::vector<Resolution> out;
    for (std::string_view item : split(text, ',')) {
        const std::size_t x = item.find_first_of("xX");
        if (x == std::string_view::npos) throw ConfigError("bins must look like NZxNPHI, got '" + std::string(item) + "'");
        const double nz = parse_number(item.substr(0, x));
        const double nphi = parse_number(item.substr(x + 1));
        if (nz < 1 || nphi < 1 || nz != std::floor(nz) || nphi != std::floor(nphi) || nz > 1e5 || nphi > 1e5) {
            throw ConfigError("bins need positive integer NZ and NPHI, got '" + std::string(item) + "'");
        }
        out.push_back({static_cast<int>(nz), static_cast<int>(nphi)});
    }
    return out;
}

std::vector<BlochVector> parse_dirs(std::string_view text) {
    std::vector<BlochVector> out;
    for (std::string_view item : split(text, ';')) {
        const auto comps = split(item, ',');
        if (comps.size() != 3) throw ConfigError("direction needs three components, got '" + std::string(item) + "'");
        const BlochVector v{parse_number(comps[0]), parse_number(comps[1]), parse_number(comps[2])};
        if (std::abs(v.norm() - 1.0) > kDirectionTol) {
            throw ConfigError("direction '" + std::string(item) + "' is not a unit vector");
        }
        out.push_back(v.normalized());
    }
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"ontolab: ontological models, Leggett-Garg tests and information erasure on a qubit", "ontolab"};
    app.footer(kFooter);
    app.fallthrough();
    app.require_subcommand(1);

    RunConfig cfg;
    std::string model;
    std::string times_text;
    std::string dirs_text;
    std::string bins_text;
    std::string out_path;
    app.add_option("--model", model, "quantum | bb | mw | telegraph")
        ->check(CLI::IsMember({"quantum", "bb", "mw", "telegraph"}));
    app.add_option("--runs", cfg.runs, "Monte Carlo runs (>= 1)");
    app.add_option("--seed", cfg.seed, "64-bit master seed");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--bins", bins_text, "NZxNPHI[,NZxNPHI...]");
    app.add_option("--gamma", cfg.gamma, "telegraph flip rate (>= 0)");
    app.add_option("--times", times_text, "T1,T2[,T3,T4] in radians");
    app.add_option("--dirs", dirs_text, "ax,ay,az[;bx,by,bz]");
    app.add_option("--order", cfg.order,
                   "lg only. chain: --times are chronological LG chain times; labels: --times are t1,t2,t3,t4")
        ->check(CLI::IsMember({"chain", "labels"}));

    app.add_subcommand("lg", "Leggett-Garg correlations and LG value");
    app.add_subcommand("scan", "maximise the quantum LG value over t3, t4 for given t1, t2");
    app.add_subcommand("erasure", "ontic entropy before/after a non-selective measurement");
    app.add_subcommand("noflow", "does the post-measurement ontic state depend on the setting?");
    app.add_subcommand("mwcheck", "branching model vs the quantum oracle, and its no-erasure property");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kConfigError;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.model = model;
        if (!out_path.empty()) cfg.out = out_path;
        if (!times_text.empty()) {
            for (auto part : split(times_text, ',')) cfg.time_literals.emplace_back(part);
        }
        if (!dirs_text.empty()) cfg.dirs = parse_dirs(dirs_text);
        if (!bins_text.empty()) cfg.bins = parse_bins(bins_text);
        fill_defaults(cfg, !model.empty(), !bins_text.empty());
        for (const auto &lit : cfg.time_literals) cfg.times.push_back(parse_angle(lit));

        if (cfg.runs < 1) throw ConfigError("--runs must be >= 1");
        if (!(cfg.gamma >= 0.0) || !std::isfinite(cfg.gamma)) throw ConfigError("--gamma must be >= 0");

        if (cfg.command == "lg") {
            emit(cfg, cmd_lg(cfg), out);
        } else if (cfg.command == "scan") {
            emit(cfg, cmd_scan(cfg), out);
        } else if (cfg.command == "erasure") {
            emit(cfg, cmd_erasure(cfg), out);
        } else if (cfg.command == "noflow") {
            emit(cfg, cmd_noflow(cfg), out);
        } else if (cfg.command == "mwcheck") {
            const MWCheckOutcome r = cmd_mwcheck(cfg);
            emit(cfg, r.table, out);
            if (!r.standard_passes) {
                err << "ontolab: branching model failed oracle equivalence\n";
                return kNumericalFailure;
            }
        }
        return kSuccess;
    } catch (const NumericalFailure &e) {
        err << "ontolab: numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception &e) {
        err << "ontolab: " << e.what() << "\n";
        return kConfigError;
    }
}

}  // namespace ontolab::cli
