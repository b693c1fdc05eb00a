#include "kerrsim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kerrsim/discord.hpp"
#include "kerrsim/dynamics.hpp"
#include "kerrsim/errors.hpp"
#include "kerrsim/metrology.hpp"

namespace kerrsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

std::string join_observables(const std::vector<Observable>& obs) {
    std::string out;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (i) out += ',';
        out += to_string(obs[i]);
    }
    return out;
}

// State shared by every grid point of one run.
struct RunContext {
    const ScenarioConfig& cfg;
    HilbertLayout layout;
    Propagator prop;
    std::optional<ComplexMatrix> qfi_rho0_eig;  // only when the QFI point differs from initial.theta
    ComplexMatrix drho0_eig;
    bool wants_gqd = false;
    bool wants_qfi = false;

    explicit RunContext(const ScenarioConfig& c)
        : cfg(c),
          layout(c.system.layout()),
          prop(build_hamiltonian(c.system), build_initial_state(c.initial, layout), c.system.gamma) {
        for (Observable o : cfg.observables) {
            wants_gqd |= o == Observable::gqd;
            wants_qfi |= o == Observable::qfi;
        }
        if (wants_qfi) {
            InitialStateParams q = cfg.initial;
            q.theta = cfg.qfi_theta();
            if (q.theta != cfg.initial.theta) {
                qfi_rho0_eig = prop.channel().to_eigenbasis(build_initial_state(q, layout));
            }
            drho0_eig = prop.channel().to_eigenbasis(initial_state_theta_derivative(q, layout));
        }
    }

    TimeSeriesRecord evaluate(double t, std::optional<MeasurementAngles>& warm) const {
        TimeSeriesRecord rec;
        rec.t = t;
        ComplexMatrix rho, atoms;
        try {
            rho = prop.evolve(t);
            atoms = trace_out_field(rho, layout);
        } catch (const std::exception& e) {
            throw RunError(t, "state", e.what());
        }

        for (Observable o : cfg.observables) {
            double v = 0.0;
            try {
                switch (o) {
                    case Observable::gqd: {
                        GqdOptions opts;
                        opts.seed = cfg.seed;
                        opts.warm_start = warm;
                        GqdResult r = gqd(atoms, opts);
                        warm = std::move(r.optimal_angles);
                        v = r.value;
                        break;
                    }
                    case Observable::qfi: {
                        const ComplexMatrix q_atoms =
                            qfi_rho0_eig ? trace_out_field(prop.channel().apply(*qfi_rho0_eig, t), layout) : atoms;
                        const ComplexMatrix dq = trace_out_field(prop.channel().apply(drho0_eig, t), layout);
                        v = qfi({q_atoms, dq});
                        break;
                    }
                    case Observable::purity:
                        v = rho.cwiseAbs2().sum();
                        break;
                    case Observable::atomic_entropy:
                        v = von_neumann_entropy(atoms);
                        break;
                }
            } catch (const RunError&) {
                throw;
            } catch (const std::exception& e) {
                throw RunError(t, std::string(to_string(o)), e.what());
            }
            if (!std::isfinite(v)) throw RunError(t, std::string(to_string(o)), "non-finite value");
            rec.values[o] = v;
        }
        return rec;
    }
};

template <typename T>
T json_field(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

}  // namespace

std::string_view to_string(Observable o) {
    switch (o) {
        case Observable::gqd: return "gqd";
        case Observable::qfi: return "qfi";
        case Observable::purity: return "purity";
        case Observable::atomic_entropy: return "atomic_entropy";
    }
    return "unknown";
}

Observable parse_observable(std::string_view name) {
    for (Observable o : {Observable::gqd, Observable::qfi, Observable::purity, Observable::atomic_entropy}) {
        if (to_string(o) == name) return o;
    }
    throw ConfigError("observables: unknown observable '" + std::string(name) + "'");
}

std::vector<Observable> parse_observables(std::string_view list) {
    std::vector<Observable> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string_view item = list.substr(start, comma == std::string_view::npos ? list.npos : comma - start);
        if (!item.empty()) out.push_back(parse_observable(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void ScenarioConfig::validate() const {
    system.validate();
    initial.validate();
    if (!std::isfinite(dt) || dt <= 0.0) throw ConfigError("dt must be > 0");
    if (!std::isfinite(t_max) || t_max < dt) throw ConfigError("t_max must be >= dt");
    if (observables.empty()) throw ConfigError("observables must be non-empty");
    for (std::size_t i = 0; i < observables.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            if (observables[i] == observables[k]) {
                throw ConfigError("observables: '" + std::string(to_string(observables[i])) + "' listed twice");
            }
        }
    }
    if (qfi_theta_point && !(*qfi_theta_point >= 0.0 && *qfi_theta_point <= kPi)) {
        throw ConfigError("qfi_theta_point must be in [0, pi]");
    }
}

std::vector<double> ScenarioConfig::time_grid() const {
    // The small slack keeps e.g. 0.3 / 0.1 = 2.9999999999999996 from dropping the last point.
    const auto steps = static_cast<long>(std::floor(t_max / dt + 1e-9));
    std::vector<double> grid(static_cast<std::size_t>(steps + 1));
    for (long k = 0; k <= steps; ++k) grid[static_cast<std::size_t>(k)] = static_cast<double>(k) * dt;
    return grid;
}

std::vector<TimeSeriesRecord> run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const RunContext ctx(cfg);
    const std::vector<double> grid = cfg.time_grid();
    const long n = static_cast<long>(grid.size());
    const long n_blocks = (n + kWarmStartBlock - 1) / kWarmStartBlock;

    std::vector<TimeSeriesRecord> records(grid.size());
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_blocks));

#ifdef KERRSIM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long b = 0; b < n_blocks; ++b) {
        try {
            std::optional<MeasurementAngles> warm;
            const long end = std::min(n, (b + 1) * kWarmStartBlock);
            for (long i = b * kWarmStartBlock; i < end; ++i) {
                records[static_cast<std::size_t>(i)] = ctx.evaluate(grid[static_cast<std::size_t>(i)], warm);
            }
        } catch (...) {
            errors[static_cast<std::size_t>(b)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return records;
}

// --- presets ---------------------------------------------------------------------------

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5"}; }

int preset_variant_count(std::string_view name) {
    if (name == "fig1" || name == "fig2") return 4;
    if (name == "fig3" || name == "fig4" || name == "fig5") return 2;
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

ScenarioConfig preset(std::string_view name, int variant) {
    const int count = preset_variant_count(name);
    if (variant < 0 || variant >= count) {
        throw ConfigError("preset " + std::string(name) + ": variant " + std::to_string(variant) + " outside [0, " +
                          std::to_string(count - 1) + "]");
    }

    ScenarioConfig cfg;
    cfg.system = SystemParams{2, 2, 1.0, 1.0, 1.0, 1.0, 1.0, 0.05};
    cfg.initial = InitialStateParams{0.5, kPi / 4};
    cfg.qfi_theta_point = kPi / 4;
    cfg.t_max = 200.0;
    cfg.dt = 0.05;

    if (name == "fig1" || name == "fig2") {
        static constexpr int kCutoffs[] = {2, 3, 4, 5};
        cfg.system.n_cutoff = kCutoffs[variant];
        cfg.observables = {name == "fig1" ? Observable::gqd : Observable::qfi};
        cfg.label = std::string(name) + "_nc" + std::to_string(cfg.system.n_cutoff);
    } else if (name == "fig3") {
        cfg.system.n_atoms = variant == 0 ? 3 : 4;
        cfg.observables = {Observable::gqd, Observable::qfi};
        cfg.label = "fig3_N" + std::to_string(cfg.system.n_atoms);
    } else {
        cfg.system.chi = name == "fig4" ? 0.3 : 3.0;
        cfg.system.kappa = variant == 0 ? 0.3 : 3.0;
        cfg.observables = {Observable::gqd, Observable::qfi};
        cfg.label = std::string(name) + (variant == 0 ? "_kappa0.3" : "_kappa3");
    }
    return cfg;
}

// --- configuration files -----------------------------------------------------------------

ScenarioConfig scenario_from_json(const nlohmann::json& j, ScenarioConfig cfg) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "system") {
            if (!value.is_object()) throw ConfigError("config field 'system' must be an object");
            for (const auto& [k, v] : value.items()) {
                auto& s = cfg.system;
                if (k == "n_atoms") s.n_atoms = json_field<int>(value, "n_atoms");
                else if (k == "n_cutoff") s.n_cutoff = json_field<int>(value, "n_cutoff");
                else if (k == "omega0") s.omega0 = json_field<double>(value, "omega0");
                else if (k == "omega") s.omega = json_field<double>(value, "omega");
                else if (k == "g") s.g = json_field<double>(value, "g");
                else if (k == "chi") s.chi = json_field<double>(value, "chi");
                else if (k == "kappa") s.kappa = json_field<double>(value, "kappa");
                else if (k == "gamma") s.gamma = json_field<double>(value, "gamma");
                else throw ConfigError("unknown config field 'system." + k + "'");
            }
        } else if (key == "initial") {
            if (!value.is_object()) throw ConfigError("config field 'initial' must be an object");
            for (const auto& [k, v] : value.items()) {
                if (k == "p") cfg.initial.p = json_field<double>(value, "p");
                else if (k == "theta") cfg.initial.theta = json_field<double>(value, "theta");
                else throw ConfigError("unknown config field 'initial." + k + "'");
            }
        } else if (key == "t_max") {
            cfg.t_max = json_field<double>(j, "t_max");
        } else if (key == "dt") {
            cfg.dt = json_field<double>(j, "dt");
        } else if (key == "observables") {
            const auto names = json_field<std::vector<std::string>>(j, "observables");
            cfg.observables.clear();
            for (const auto& name : names) cfg.observables.push_back(parse_observable(name));
        } else if (key == "qfi_theta_point") {
            if (value.is_null()) cfg.qfi_theta_point.reset();
            else cfg.qfi_theta_point = json_field<double>(j, "qfi_theta_point");
        } else if (key == "label") {
            cfg.label = json_field<std::string>(j, "label");
        } else if (key == "seed") {
            cfg.seed = json_field<std::uint64_t>(j, "seed");
        } else {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    return cfg;
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
    nlohmann::json obs = nlohmann::json::array();
    for (Observable o : cfg.observables) obs.push_back(std::string(to_string(o)));
    const auto& s = cfg.system;
    return {
        {"system",
         {{"n_atoms", s.n_atoms}, {"n_cutoff", s.n_cutoff}, {"omega0", s.omega0}, {"omega", s.omega}, {"g", s.g},
          {"chi", s.chi}, {"kappa", s.kappa}, {"gamma", s.gamma}}},
        {"initial", {{"p", cfg.initial.p}, {"theta", cfg.initial.theta}}},
        {"t_max", cfg.t_max},
        {"dt", cfg.dt},
        {"observables", obs},
        {"qfi_theta_point", cfg.qfi_theta()},
        {"label", cfg.label},
        {"seed", cfg.seed},
    };
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return scenario_from_json(j);
}

// --- CSV ---------------------------------------------------------------------------------

void write_csv(const std::vector<TimeSeriesRecord>& records, const ScenarioConfig& cfg,
               const std::filesystem::path& path) {
    std::ostringstream out;
    const auto& s = cfg.system;
    const std::pair<const char*, std::string> meta[] = {
        {"label", cfg.label},
        {"version", std::string(kVersion)},
        {"seed", std::to_string(cfg.seed)},
        {"n_atoms", std::to_string(s.n_atoms)},
        {"n_cutoff", std::to_string(s.n_cutoff)},
        {"omega0", format_double(s.omega0)},
        {"omega", format_double(s.omega)},
        {"g", format_double(s.g)},
        {"chi", format_double(s.chi)},
        {"kappa", format_double(s.kappa)},
        {"gamma", format_double(s.gamma)},
        {"p", format_double(cfg.initial.p)},
        {"theta", format_double(cfg.initial.theta)},
        {"t_max", format_double(cfg.t_max)},
        {"dt", format_double(cfg.dt)},
        {"observables", join_observables(cfg.observables)},
        {"qfi_theta_point", format_double(cfg.qfi_theta())},
    };
    for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';

    out << 't';
    for (Observable o : cfg.observables) out << ',' << to_string(o);
    out << '\n';

    for (const auto& rec : records) {
        out << format_fixed(rec.t);
        for (Observable o : cfg.observables) {
            const auto it = rec.values.find(o);
            if (it == rec.values.end()) {
                throw InvalidInput("write_csv: record at t=" + format_fixed(rec.t) + " lacks observable " +
                                   std::string(to_string(o)));
            }
            out << ',' << format_fixed(it->second);
        }
        out << '\n';
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << out.str();
    file.flush();
    if (!file) throw IoError("write failed for " + path.string());
}

std::optional<std::string> CsvTable::meta(std::string_view key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::vector<double> CsvTable::column(std::string_view name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] != name) continue;
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r[c]);
        return out;
    }
    throw InvalidInput("csv has no column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.starts_with("# ")) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw IoError(path.string() + ": malformed metadata line '" + line + "'");
            table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            table.columns = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.columns.size()) {
            throw IoError(path.string() + ": row has " + std::to_string(cells.size()) + " cells, header has " +
                          std::to_string(table.columns.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                row.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw IoError(path.string() + ": cannot parse '" + c + "'");
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw IoError(path.string() + ": missing header line");
    return table;
}

std::vector<std::filesystem::path> reproduce_figure(std::string_view figure, const std::filesystem::path& outdir,
                                                    const ReproduceOptions& opts) {
    const int count = preset_variant_count(figure);
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw IoError("cannot create " + outdir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    for (int v = 0; v < count; ++v) {
        ScenarioConfig cfg = preset(figure, v);
        if (opts.seed) cfg.seed = *opts.seed;
        if (opts.t_max) cfg.t_max = *opts.t_max;
        if (opts.dt) cfg.dt = *opts.dt;
        const auto path = outdir / (std::string(figure) + "_" + std::to_string(v) + ".csv");
        write_csv(run_scenario(cfg), cfg, path);
        written.push_back(path);
    }
    return written;
}

}  // namespace kerrsim
