#include "ncforce/scan.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ncforce/constants.hpp"
#include "ncforce/quadrature.hpp"

namespace ncforce {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string tier_name(FormulaTier t) {
    switch (t) {
        case FormulaTier::LeadingClosed: return "leading";
        case FormulaTier::LeadingComposed: return "leading-composed";
        case FormulaTier::FullIdentical: return "full-identical";
        case FormulaTier::FullDissimilar: return "full-dissimilar";
    }
    return "leading";
}

FormulaTier tier_from(const std::string& s) {
    if (s == "leading") return FormulaTier::LeadingClosed;
    if (s == "leading-composed") return FormulaTier::LeadingComposed;
    if (s == "full-identical") return FormulaTier::FullIdentical;
    if (s == "full-dissimilar") return FormulaTier::FullDissimilar;
    throw ConfigError("unknown tier '" + s + "'");
}

std::string convention_name(DisplacementConvention c) {
    return c == DisplacementConvention::TruncateAtLifetime ? "truncate" : "full-decay";
}

DisplacementConvention convention_from(const std::string& s) {
    if (s == "truncate") return DisplacementConvention::TruncateAtLifetime;
    if (s == "full-decay") return DisplacementConvention::FullDecay;
    throw ConfigError("unknown convention '" + s + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': " + value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("bad boolean value for '" + key + "': " + value);
}

// Draft of a custom two-atom system assembled from flat config keys.
struct CustomDraft {
    double aw = 0, ag = 0, am = 0;
    Vec3 ad{};
    double bw = 0, bg = 0, bm = 0;
    Vec3 bd[3]{};
    bool bd_set[3] = {false, false, false};
    Vec3 sep{};
    bool any = false;

    TwoAtomSystem build() const {
        std::vector<Vec3> subs;
        for (int i = 0; i < 3; ++i)
            if (bd_set[i]) subs.push_back(bd[i]);
        try {
            return TwoAtomSystem{Atom{aw, ag, am, {ad}}, Atom{bw, bg, bm, subs}, sep};
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("custom system: ") + e.what());
        }
    }
};

bool apply_custom_key(CustomDraft& d, const std::string& key, const std::string& value) {
    auto num = [&] { return parse_double(key, value); };
    if (key == "atomA_omega0") d.aw = num();
    else if (key == "atomA_gamma") d.ag = num();
    else if (key == "atomA_mass") d.am = num();
    else if (key == "atomA_dipole_x") d.ad.x = num();
    else if (key == "atomA_dipole_y") d.ad.y = num();
    else if (key == "atomA_dipole_z") d.ad.z = num();
    else if (key == "atomB_omega0") d.bw = num();
    else if (key == "atomB_gamma") d.bg = num();
    else if (key == "atomB_mass") d.bm = num();
    else if (key == "separation_x") d.sep.x = num();
    else if (key == "separation_y") d.sep.y = num();
    else if (key == "separation_z") d.sep.z = num();
    else {
        // atomB_dipoleN_{x,y,z}
        for (int i = 0; i < 3; ++i) {
            const std::string stem = "atomB_dipole" + std::to_string(i + 1) + "_";
            if (key == stem + "x") { d.bd[i].x = num(); d.bd_set[i] = true; return true; }
            if (key == stem + "y") { d.bd[i].y = num(); d.bd_set[i] = true; return true; }
            if (key == stem + "z") { d.bd[i].z = num(); d.bd_set[i] = true; return true; }
        }
        return false;
    }
    d.any = true;
    return true;
}

bool apply_simple_key(ScanConfig& c, const std::string& key, const std::string& value) {
    if (key == "mode") {
        if (value != "scan" && value != "shapes") throw ConfigError("unknown mode '" + value + "'");
        c.mode = value;
    } else if (key == "preset") {
        if (value != "hydrogen" && value != "custom")
            throw ConfigError("unknown preset '" + value + "'");
        c.preset = value;
    } else if (key == "tier") c.tier = tier_from(value);
    else if (key == "rmin") c.r_min = parse_double(key, value);
    else if (key == "rmax") c.r_max = parse_double(key, value);
    else if (key == "rpoints") c.r_points = parse_int(key, value);
    else if (key == "tobs") {
        if (value == "lifetime") {
            c.t_obs_lifetime = true;
            c.t_obs = 0.0;
        } else {
            c.t_obs_lifetime = false;
            c.t_obs = parse_double(key, value);
        }
    } else if (key == "detuning_ratio") c.detuning_ratio = parse_double(key, value);
    else if (key == "displacement") c.displacement = parse_bool(key, value);
    else if (key == "convention") c.convention = convention_from(value);
    else if (key == "diagnostic") c.diagnostic = parse_bool(key, value);
    else if (key == "format") {
        if (value == "csv") c.format = OutputFormat::Csv;
        else if (value == "json") c.format = OutputFormat::Json;
        else throw ConfigError("unknown format '" + value + "'");
    } else if (key == "out") c.output_path = value;
    else if (key == "threads") c.threads = parse_int(key, value);
    else if (key == "vmin") c.v_min = parse_double(key, value);
    else if (key == "vmax") c.v_max = parse_double(key, value);
    else if (key == "vpoints") c.v_points = parse_int(key, value);
    else return false;
    return true;
}

std::vector<std::pair<std::string, std::string>> header_entries(const ScanConfig& c) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("mode", c.mode);
    kv.emplace_back("preset", c.preset);
    kv.emplace_back("tier", tier_name(c.tier));
    kv.emplace_back("rmin", format_number(c.r_min));
    kv.emplace_back("rmax", format_number(c.r_max));
    kv.emplace_back("rpoints", std::to_string(c.r_points));
    kv.emplace_back("tobs", c.t_obs_lifetime ? std::string("lifetime") : format_number(c.t_obs));
    kv.emplace_back("detuning_ratio", format_number(c.detuning_ratio));
    kv.emplace_back("displacement", c.displacement ? "true" : "false");
    kv.emplace_back("convention", convention_name(c.convention));
    kv.emplace_back("diagnostic", c.diagnostic ? "true" : "false");
    kv.emplace_back("format", c.format == OutputFormat::Csv ? "csv" : "json");
    kv.emplace_back("out", c.output_path);
    kv.emplace_back("threads", std::to_string(c.threads));
    kv.emplace_back("vmin", format_number(c.v_min));
    kv.emplace_back("vmax", format_number(c.v_max));
    kv.emplace_back("vpoints", std::to_string(c.v_points));
    if (c.custom_system) {
        const TwoAtomSystem& s = *c.custom_system;
        kv.emplace_back("atomA_omega0", format_number(s.atomA.omega0));
        kv.emplace_back("atomA_gamma", format_number(s.atomA.gamma));
        kv.emplace_back("atomA_mass", format_number(s.atomA.mass));
        kv.emplace_back("atomA_dipole_x", format_number(s.atomA.dipoles[0].x));
        kv.emplace_back("atomA_dipole_y", format_number(s.atomA.dipoles[0].y));
        kv.emplace_back("atomA_dipole_z", format_number(s.atomA.dipoles[0].z));
        kv.emplace_back("atomB_omega0", format_number(s.atomB.omega0));
        kv.emplace_back("atomB_gamma", format_number(s.atomB.gamma));
        kv.emplace_back("atomB_mass", format_number(s.atomB.mass));
        for (std::size_t i = 0; i < s.atomB.dipoles.size() && i < 3; ++i) {
            const std::string stem = "atomB_dipole" + std::to_string(i + 1) + "_";
            kv.emplace_back(stem + "x", format_number(s.atomB.dipoles[i].x));
            kv.emplace_back(stem + "y", format_number(s.atomB.dipoles[i].y));
            kv.emplace_back(stem + "z", format_number(s.atomB.dipoles[i].z));
        }
        kv.emplace_back("separation_x", format_number(s.separation.x));
        kv.emplace_back("separation_y", format_number(s.separation.y));
        kv.emplace_back("separation_z", format_number(s.separation.z));
    }
    return kv;
}

const char* const dissimilar_terms[] = {"resonant-cos", "resonant-sin", "quasi-stationary",
                                        "off-resonant"};
const char* const identical_terms[] = {"freq-derivative", "leading", "cross", "off-resonant"};
const char* const axes[] = {"x", "y", "z"};

std::vector<std::string> column_names(const ScanConfig& c) {
    std::vector<std::string> cols = {"R_m",     "v",       "F_A_x",   "F_A_y",       "F_A_z",
                                     "F_B_x",   "F_B_y",   "F_B_z",   "F_net_x",     "F_net_y",
                                     "F_net_z", "F_A_par", "F_A_perp_mag", "F_B_par",
                                     "F_B_perp_mag"};
    if (c.displacement) {
        for (const char* a : axes) cols.push_back(std::string("S_A_") + a);
        for (const char* a : axes) cols.push_back(std::string("S_B_") + a);
    }
    if (c.diagnostic) {
        const auto& terms = c.tier == FormulaTier::FullDissimilar ? dissimilar_terms
                                                                  : identical_terms;
        for (const char* atom : {"FA", "FB"})
            for (const char* term : terms)
                for (const char* a : axes)
                    cols.push_back(std::string(atom) + "_" + term + "_" + a);
    }
    cols.emplace_back("status");
    return cols;
}

struct Row {
    double R = 0.0, v = 0.0;
    bool ok = true;
    std::optional<ForceSample> forces;
    std::optional<Vec3> S_A, S_B;
    std::optional<std::array<Vec3, 4>> terms_A, terms_B;
};

std::array<Vec3, 4> to_array(const DissimilarTerms& t) {
    return {t.resonant_cos, t.resonant_sin, t.quasi_stationary, t.offresonant};
}
std::array<Vec3, 4> to_array(const IdenticalTerms& t) {
    return {t.frequency_derivative, t.leading, t.cross, t.offresonant};
}

TwoAtomSystem with_separation(const TwoAtomSystem& base, double R) {
    return TwoAtomSystem{base.atomA, base.atomB, base.rhat() * R};
}

Row compute_row(const ScanConfig& c, const TwoAtomSystem& base, double R) {
    Row row;
    row.R = R;
    const TwoAtomSystem system = with_separation(base, R);
    row.v = system.atomA.wavenumber() * R;
    const double T = c.t_obs_lifetime ? 1.0 / system.atomA.gamma : c.t_obs;
    try {
        row.forces = force_sample(system, T, c.tier);
        if (c.diagnostic) {
            if (c.tier == FormulaTier::FullDissimilar) {
                row.terms_A = to_array(force_full_dissimilar_terms(system, T, AtomId::A));
                row.terms_B = to_array(force_full_dissimilar_terms(system, T, AtomId::B));
            } else {
                row.terms_A = to_array(force_full_identical_terms(system, T, AtomId::A));
                row.terms_B = to_array(force_full_identical_terms(system, T, AtomId::B));
            }
        }
        if (c.displacement && system.identical()) {
            const double lifetime = 1.0 / system.atomA.gamma;
            row.S_A = displacement(system, lifetime, AtomId::A, c.convention);
            row.S_B = displacement(system, lifetime, AtomId::B, c.convention);
        }
    } catch (const QuadratureNonConvergence&) {
        row.ok = false;
        row.forces.reset();
        row.terms_A.reset();
        row.terms_B.reset();
    }
    return row;
}

void append_vec(std::vector<std::optional<double>>& out, const Vec3& v) {
    out.emplace_back(v.x);
    out.emplace_back(v.y);
    out.emplace_back(v.z);
}

void append_empty(std::vector<std::optional<double>>& out, int n) {
    for (int i = 0; i < n; ++i) out.emplace_back(std::nullopt);
}

} // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

ScanConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    ScanConfig config;
    CustomDraft draft;
    std::string line;
    while (std::getline(in, line)) {
        const std::string raw = trim(line);
        const bool comment = !raw.empty() && raw[0] == '#';
        const std::string body = trim(comment ? raw.substr(1) : raw);
        if (body == "end-config") break;
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            if (comment) continue;
            throw ConfigError("bad config line: " + line);
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (apply_simple_key(config, key, value)) continue;
        if (apply_custom_key(draft, key, value)) continue;
        if (comment) continue; // unknown key inside a comment line
        throw ConfigError("unknown config key '" + key + "'");
    }
    if (config.preset == "custom") {
        if (!draft.any) throw ConfigError("preset custom requires a full system block");
        config.custom_system = draft.build();
    }
    return config;
}

void apply_config_line(ScanConfig& config, const std::string& line) {
    const std::string body = trim(line);
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("bad config line: " + line);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!apply_simple_key(config, key, value))
        throw ConfigError("unknown config key '" + key + "'");
}

void emit_reference_shapes(std::span<const double> v_grid, const std::string& output_path) {
    for (std::size_t i = 0; i < v_grid.size(); ++i) {
        if (!(v_grid[i] >= 1.0 && v_grid[i] <= 100.0))
            throw std::invalid_argument("emit_reference_shapes: grid outside [1, 100]");
        if (i > 0 && !(v_grid[i] > v_grid[i - 1]))
            throw std::invalid_argument("emit_reference_shapes: grid must be increasing");
    }
    std::ostringstream out;
    out << "v,f_A,f_B\n";
    for (const double v : v_grid)
        out << format_number(v) << ',' << format_number(shape_A(v)) << ','
            << format_number(shape_B(v)) << '\n';
    std::ofstream file(output_path, std::ios::binary);
    if (!file) throw std::invalid_argument("emit_reference_shapes: cannot write " + output_path);
    file << out.str();
}

namespace {

void validate(const ScanConfig& c, const TwoAtomSystem& base) {
    if (c.mode != "scan") throw ConfigError("run_scan: mode must be 'scan'");
    if (!(c.r_min > 0.0 && c.r_min < c.r_max)) throw ConfigError("need 0 < rmin < rmax");
    if (c.r_points < 2) throw ConfigError("rpoints must be >= 2");
    if (!c.t_obs_lifetime && !(c.t_obs >= 0.0)) throw ConfigError("tobs must be >= 0");
    if (c.threads < 0) throw ConfigError("threads must be >= 0");
    if (c.output_path.empty()) throw ConfigError("output path required");
    const bool dissim = base.detuning() != 0.0 || base.atomA.gamma != base.atomB.gamma;
    if (c.tier == FormulaTier::FullDissimilar && !dissim)
        throw ConfigError("tier full-dissimilar requires a detuned system");
    if (c.tier != FormulaTier::FullDissimilar && dissim)
        throw ConfigError("detuned system requires tier full-dissimilar");
    if (c.diagnostic && c.tier != FormulaTier::FullDissimilar &&
        c.tier != FormulaTier::FullIdentical)
        throw ConfigError("diagnostic output requires a full tier");
    if (base.atomA.wavenumber() * c.r_min < 0.1)
        throw ConfigError("rmin below the validity regime (k0 rmin < 0.1)");
}

TwoAtomSystem base_system(const ScanConfig& c) {
    if (c.preset == "custom") {
        if (!c.custom_system) throw ConfigError("preset custom requires a config file block");
        return *c.custom_system;
    }
    TwoAtomSystem sys = hydrogen_preset(std::max(c.r_min, 1e-12));
    if (c.detuning_ratio != 0.0) {
        const double wB = sys.atomA.omega0 - c.detuning_ratio * sys.atomA.gamma;
        return TwoAtomSystem{sys.atomA,
                             Atom{wB, sys.atomB.gamma, sys.atomB.mass, sys.atomB.dipoles},
                             sys.separation};
    }
    return sys;
}

std::vector<std::optional<double>> values_for(const ScanConfig& c, const Row& row,
                                              const Vec3& rhat) {
    std::vector<std::optional<double>> vals;
    vals.emplace_back(row.R);
    vals.emplace_back(row.v);
    if (row.forces) {
        const ForceSample& f = *row.forces;
        append_vec(vals, f.F_A);
        append_vec(vals, f.F_B);
        append_vec(vals, f.F_net);
        vals.emplace_back(dot(f.F_A, rhat));
        vals.emplace_back(f.F_A_perp.norm());
        vals.emplace_back(dot(f.F_B, rhat));
        vals.emplace_back(f.F_B_perp.norm());
    } else {
        append_empty(vals, 13);
    }
    if (c.displacement) {
        if (row.S_A) append_vec(vals, *row.S_A); else append_empty(vals, 3);
        if (row.S_B) append_vec(vals, *row.S_B); else append_empty(vals, 3);
    }
    if (c.diagnostic) {
        for (const auto& terms : {row.terms_A, row.terms_B}) {
            if (terms)
                for (const Vec3& t : *terms) append_vec(vals, t);
            else
                append_empty(vals, 12);
        }
    }
    return vals;
}

} // namespace

int run_scan(const ScanConfig& config) {
    const TwoAtomSystem base = base_system(config);
    validate(config, base);

    std::vector<double> grid(config.r_points);
    for (int i = 0; i < config.r_points; ++i)
        grid[i] = config.r_min +
                  (config.r_max - config.r_min) * i / static_cast<double>(config.r_points - 1);

    std::vector<Row> rows(grid.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(
        config.threads > 0 ? static_cast<unsigned>(config.threads) : hw,
        static_cast<unsigned>(grid.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = compute_row(config, base, grid[i]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < grid.size(); i += workers)
                    rows[i] = compute_row(config, base, grid[i]);
            });
        }
        for (auto& t : pool) t.join();
    }

    const Vec3 rhat = base.rhat();
    const std::vector<std::string> cols = column_names(config);
    bool any_failed = false;
    std::ostringstream out;

    if (config.format == OutputFormat::Csv) {
        out << "# ncforce scan config\n";
        for (const auto& [k, v] : header_entries(config)) out << "# " << k << " = " << v << '\n';
        out << "# end-config\n";
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << cols[i] << (i + 1 < cols.size() ? "," : "\n");
        for (const Row& row : rows) {
            const auto vals = values_for(config, row, rhat);
            for (const auto& v : vals) out << (v ? format_number(*v) : "") << ',';
            out << (row.ok ? "ok" : "nonconverged") << '\n';
            any_failed = any_failed || !row.ok;
        }
    } else {
        ordered_json doc;
        ordered_json cfg;
        for (const auto& [k, v] : header_entries(config)) cfg[k] = v;
        doc["config"] = std::move(cfg);
        doc["columns"] = cols;
        ordered_json jrows = ordered_json::array();
        for (const Row& row : rows) {
            ordered_json jr = ordered_json::array();
            for (const auto& v : values_for(config, row, rhat)) {
                if (v)
                    jr.push_back(*v);
                else
                    jr.push_back(nullptr);
            }
            jr.push_back(row.ok ? "ok" : "nonconverged");
            jrows.push_back(std::move(jr));
            any_failed = any_failed || !row.ok;
        }
        doc["rows"] = std::move(jrows);
        out << doc.dump(2) << '\n';
    }

    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw ConfigError("cannot write output file '" + config.output_path + "'");
    file << out.str();
    if (!file) throw ConfigError("failed writing output file '" + config.output_path + "'");
    return any_failed ? 2 : 0;
}

} // namespace ncforce
