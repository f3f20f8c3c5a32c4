#include "cwg/scenario.hpp"

#include "cwg/analytic.hpp"
#include "cwg/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cwg::scenario {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLightCmPerS = 2.99792458e10;
constexpr double kZeroThreshold = 1e-9;

bool is_fock(ScenarioKind kind) {
    return kind == ScenarioKind::one_one || kind == ScenarioKind::two_zero ||
           kind == ScenarioKind::noon;
}

double bits_to_base(double bits, negativity::LogBase base) {
    return negativity::convert_base(bits, negativity::LogBase::two, base);
}

void validate(const ScenarioConfig& cfg, int max_numeric_noon) {
    if (cfg.tau_points < 2) {
        throw std::invalid_argument("run_sweep: tau_points must be >= 2");
    }
    if (!(cfg.tau_end > cfg.tau_start)) {
        throw std::invalid_argument("run_sweep: tau_end must exceed tau_start");
    }
    if (cfg.tau_start < 0.0 || !std::isfinite(cfg.tau_start) || !std::isfinite(cfg.tau_end)) {
        throw std::invalid_argument("run_sweep: tau grid must be finite and start at >= 0");
    }
    if (cfg.loss_ratio < 0.0 || !std::isfinite(cfg.loss_ratio)) {
        throw std::invalid_argument("run_sweep: loss_ratio must be >= 0");
    }
    if (!std::isfinite(cfg.r)) {
        throw std::invalid_argument("run_sweep: r must be finite");
    }
    if (cfg.scenario == ScenarioKind::noon) {
        if (cfg.noon_n < 1) {
            throw std::invalid_argument("run_sweep: NOON photon number must be >= 1");
        }
        if (cfg.method != Method::analytic && cfg.noon_n > max_numeric_noon) {
            throw std::invalid_argument(
                "run_sweep: numeric NOON sweeps are guarded at N <= " +
                std::to_string(max_numeric_noon) + ", got N = " + std::to_string(cfg.noon_n));
        }
    }
    if (cfg.loss_ratio > 0.0 && cfg.method != Method::numeric &&
        (cfg.scenario == ScenarioKind::two_zero || cfg.scenario == ScenarioKind::noon)) {
        throw std::invalid_argument(
            "run_sweep: no closed form for this lossy input; use method = numeric");
    }
}

// Pairwise-product negativity of a two-photon block state.
double pair_negativity(const analytic::ThreeCoefficients& c) {
    return std::abs(c.alpha * c.beta) + std::abs(c.alpha * c.delta) +
           std::abs(c.delta * c.beta);
}

void fill_fock_analytic(const ScenarioConfig& cfg, SweepResult& result) {
    for (auto& row : result.rows) {
        double n_rho = 0.0;
        if (cfg.loss_ratio > 0.0) {
            // Exact damped |1,1> density matrix (the only lossy closed form).
            const auto rho = analytic::lossy_one_one_density(row.tau, cfg.loss_ratio);
            n_rho = negativity::log_negativity_density(rho).n_rho;
        } else if (cfg.scenario == ScenarioKind::one_one) {
            n_rho = pair_negativity(analytic::one_one_coefficients(row.tau));
        } else if (cfg.scenario == ScenarioKind::two_zero) {
            n_rho = pair_negativity(analytic::two_zero_coefficients(row.tau));
        } else {
            const auto c = analytic::noon_coefficients(cfg.noon_n, row.tau);
            const double abs_sum = c.beta.cwiseAbs().sum();
            n_rho = 0.5 * (abs_sum * abs_sum - c.beta.squaredNorm());
        }
        row.e_n_analytic = bits_to_base(std::log1p(2.0 * n_rho) / std::numbers::ln2, cfg.base);
        row.diag_analytic = n_rho;
    }
}

void fill_fock_numeric(const ScenarioConfig& cfg, SweepResult& result) {
    fock::PureState initial = [&] {
        switch (cfg.scenario) {
            case ScenarioKind::one_one:
                return fock::PureState::basis_state(fock::ModeCutoff(2), 1, 1);
            case ScenarioKind::two_zero:
                return fock::PureState::basis_state(fock::ModeCutoff(2), 2, 0);
            default:
                return analytic::noon_input(cfg.noon_n);
        }
    }();

    auto rho = fock::DensityOperator::from_pure(initial);
    double tau_now = 0.0;
    for (auto& row : result.rows) {
        if (row.tau > tau_now) {
            rho = lindblad::integrate_master_equation(rho, row.tau - tau_now, cfg.loss_ratio);
            tau_now = row.tau;
        }
        const auto res = negativity::log_negativity_density(rho, cfg.base);
        row.e_n_numeric = res.e_n;
        row.diag_numeric = res.n_rho;
    }
}

void fill_gaussian(const ScenarioConfig& cfg, SweepResult& result) {
    const bool separable = cfg.scenario == ScenarioKind::sep_squeezed;
    const bool lossy = cfg.loss_ratio > 0.0;
    const gaussian::Scenario tag =
        separable ? (lossy ? gaussian::Scenario::sep_lossy : gaussian::Scenario::sep_lossless)
                  : (lossy ? gaussian::Scenario::ent_lossy : gaussian::Scenario::ent_lossless);

    const bool want_analytic = cfg.method != Method::numeric;
    const bool want_numeric = cfg.method != Method::analytic;

    for (auto& row : result.rows) {
        if (want_analytic) {
            const gaussian::GaussianScenarioParams params{cfg.r, row.tau, cfg.loss_ratio,
                                                          cfg.formula_mode};
            const double nu_min = gaussian::closed_form_nu(tag, params).nu_minus;
            const double nats = std::max(0.0, -std::log(2.0 * nu_min));
            row.e_n_analytic = negativity::convert_base(nats, negativity::LogBase::e, cfg.base);
            row.diag_analytic = nu_min;
        }
        if (want_numeric) {
            const auto sigma = [&] {
                if (separable) {
                    return lossy ? gaussian::cov_separable_squeezed_lossy(
                                       cfg.r, row.tau, cfg.loss_ratio, cfg.formula_mode)
                                 : gaussian::cov_separable_squeezed(cfg.r, row.tau);
                }
                return lossy ? gaussian::cov_entangled_squeezed_lossy(cfg.r, row.tau,
                                                                      cfg.loss_ratio)
                             : gaussian::cov_entangled_squeezed(cfg.r, row.tau);
            }();
            const double nu_min = gaussian::ppt_symplectic_eigenvalues(sigma).nu_minus;
            const double nats = std::max(0.0, -std::log(2.0 * nu_min));
            row.e_n_numeric = negativity::convert_base(nats, negativity::LogBase::e, cfg.base);
            row.diag_numeric = nu_min;
        }
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: value '" + value + "' for key '" + key +
                                    "' is not a number");
    }
    if (used != value.size()) {
        throw std::invalid_argument("config: trailing characters in value '" + value +
                                    "' for key '" + key + "'");
    }
    return v;
}

}  // namespace

double SweepRow::abs_difference() const {
    return std::abs(e_n_analytic - e_n_numeric);
}

double SweepRow::e_n() const {
    return std::isnan(e_n_analytic) ? e_n_numeric : e_n_analytic;
}

double SweepRow::diagnostic() const {
    return std::isnan(diag_analytic) ? diag_numeric : diag_analytic;
}

SweepResult run_sweep(const ScenarioConfig& cfg, int max_numeric_noon) {
    validate(cfg, max_numeric_noon);

    SweepResult result;
    result.config = cfg;
    result.rows.resize(cfg.tau_points);
    const double dt = (cfg.tau_end - cfg.tau_start) / (cfg.tau_points - 1);
    for (int k = 0; k < cfg.tau_points; ++k) {
        result.rows[k].tau = cfg.tau_start + k * dt;
        result.rows[k].tau_over_pi = result.rows[k].tau / kPi;
    }

    if (is_fock(cfg.scenario)) {
        if (cfg.method != Method::numeric) fill_fock_analytic(cfg, result);
        if (cfg.method != Method::analytic) fill_fock_numeric(cfg, result);
    } else {
        fill_gaussian(cfg, result);
    }
    return result;
}

std::vector<Extremum> find_extrema(const SweepResult& result) {
    const auto& rows = result.rows;
    if (rows.size() < 3) {
        throw std::invalid_argument("find_extrema: need at least 3 rows");
    }

    std::vector<Extremum> out;

    for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
        const double y0 = rows[k - 1].e_n();
        const double y1 = rows[k].e_n();
        const double y2 = rows[k + 1].e_n();
        if (!(y1 > y0 && y1 >= y2) || y1 <= kZeroThreshold) continue;

        // Parabolic vertex through the three points.
        double tau_star = rows[k].tau;
        double value_star = y1;
        const double denom = y0 - 2.0 * y1 + y2;
        if (std::abs(denom) > 1e-300) {
            double shift = 0.5 * (y0 - y2) / denom;
            shift = std::clamp(shift, -1.0, 1.0);
            const double h = rows[k + 1].tau - rows[k].tau;
            tau_star += shift * h;
            value_star = y1 - 0.25 * (y0 - y2) * shift;
        }
        out.push_back({tau_star, value_star, Extremum::Kind::maximum});
    }

    bool in_zero = false;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const bool zero = rows[k].e_n() < kZeroThreshold;
        if (zero && !in_zero) {
            out.push_back({rows[k].tau, rows[k].e_n(), Extremum::Kind::zero_onset});
            in_zero = true;
        } else if (!zero && in_zero) {
            out.push_back({rows[k - 1].tau, rows[k - 1].e_n(), Extremum::Kind::zero_offset});
            in_zero = false;
        }
    }
    if (in_zero) {
        out.push_back({rows.back().tau, rows.back().e_n(), Extremum::Kind::zero_offset});
    }

    std::sort(out.begin(), out.end(),
              [](const Extremum& a, const Extremum& b) { return a.tau < b.tau; });
    return out;
}

MaterialPreset preset(const std::string& name) {
    for (const auto& p : all_presets()) {
        if (p.name == name) return p;
    }
    throw std::out_of_range("preset: unknown material '" + name +
                            "' (known: lithium-niobate, algaas, silica)");
}

std::vector<MaterialPreset> all_presets() {
    auto make = [](std::string name, double j_min, double j_max, double gamma) {
        const double j = 0.5 * (j_min + j_max);
        return MaterialPreset{std::move(name), j, j_min, j_max, gamma, gamma / j};
    };
    return {
        make("lithium-niobate", 1.83e10, 4.92e10, 3e9),
        make("algaas", 2.46e11, 2.46e11, 2.7e10),
        make("silica", 1.53e11, 1.53e11, 3e9),
    };
}

double loss_db_per_cm_to_rate(double loss_db, double speed_cm_per_s) {
    if (loss_db < 0.0) {
        throw std::domain_error("loss_db_per_cm_to_rate: loss must be >= 0 dB/cm");
    }
    if (speed_cm_per_s <= 0.0) {
        throw std::domain_error("loss_db_per_cm_to_rate: speed must be positive");
    }
    return loss_db * std::numbers::ln10 / 10.0 * speed_cm_per_s / 2.0;
}

double rate_to_loss_db_per_cm(double rate, double speed_cm_per_s) {
    if (rate < 0.0) {
        throw std::domain_error("rate_to_loss_db_per_cm: rate must be >= 0");
    }
    if (speed_cm_per_s <= 0.0) {
        throw std::domain_error("rate_to_loss_db_per_cm: speed must be positive");
    }
    return rate * 2.0 / speed_cm_per_s * 10.0 / std::numbers::ln10;
}

double time_from_length(double length_cm, double refractive_index, double coupling_j) {
    if (length_cm < 0.0 || refractive_index <= 0.0 || coupling_j < 0.0) {
        throw std::domain_error("time_from_length: arguments out of range");
    }
    return coupling_j * refractive_index * length_cm / kSpeedOfLightCmPerS;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    out << "tau,tau_over_pi,E_N,diagnostic,method\n";
    char buf[256];
    auto emit = [&](const SweepRow& row, double e_n, double diag, const char* method) {
        std::snprintf(buf, sizeof(buf), "%.17e,%.17e,%.17e,%.17e,%s\n", row.tau,
                      row.tau_over_pi, e_n, diag, method);
        out << buf;
    };
    for (const auto& row : result.rows) {
        if (!std::isnan(row.e_n_analytic)) emit(row, row.e_n_analytic, row.diag_analytic, "analytic");
        if (!std::isnan(row.e_n_numeric)) emit(row, row.e_n_numeric, row.diag_numeric, "numeric");
    }
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_csv: cannot open '" + path.string() + "' for writing");
    }
    write_csv(result, out);
    if (!out.flush()) {
        throw std::runtime_error("write_csv: failed writing '" + path.string() + "'");
    }
}

SweepResult read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_csv: cannot open '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line) || trim(line) != "tau,tau_over_pi,E_N,diagnostic,method") {
        throw std::invalid_argument("read_csv: '" + path.string() + "' has an unexpected header");
    }

    SweepResult result;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5) {
            throw std::invalid_argument("read_csv: malformed line '" + line + "'");
        }
        const double tau = parse_double("tau", fields[0]);
        const double e_n = parse_double("E_N", fields[2]);
        const double diag = parse_double("diagnostic", fields[3]);
        const std::string method = trim(fields[4]);

        if (result.rows.empty() || result.rows.back().tau != tau) {
            SweepRow row;
            row.tau = tau;
            row.tau_over_pi = parse_double("tau_over_pi", fields[1]);
            result.rows.push_back(row);
        }
        auto& row = result.rows.back();
        if (method == "analytic") {
            row.e_n_analytic = e_n;
            row.diag_analytic = diag;
        } else if (method == "numeric") {
            row.e_n_numeric = e_n;
            row.diag_numeric = diag;
        } else {
            throw std::invalid_argument("read_csv: unknown method tag '" + method + "'");
        }
    }
    return result;
}

std::string to_string(ScenarioKind kind, int noon_n) {
    switch (kind) {
        case ScenarioKind::one_one: return "one-one";
        case ScenarioKind::two_zero: return "two-zero";
        case ScenarioKind::noon: return "noon-" + std::to_string(noon_n);
        case ScenarioKind::sep_squeezed: return "sep-squeezed";
        case ScenarioKind::ent_squeezed: return "ent-squeezed";
    }
    return "?";
}

std::string to_string(Method method) {
    switch (method) {
        case Method::analytic: return "analytic";
        case Method::numeric: return "numeric";
        case Method::both: return "both";
    }
    return "?";
}

ScenarioConfig read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_config: cannot open '" + path.string() + "'");
    }

    ScenarioConfig cfg;
    bool have_scenario = false;
    bool have_base = false;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("read_config: expected key = value, got '" + stripped +
                                        "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "scenario") {
            have_scenario = true;
            if (value == "one-one") {
                cfg.scenario = ScenarioKind::one_one;
            } else if (value == "two-zero") {
                cfg.scenario = ScenarioKind::two_zero;
            } else if (value == "sep-squeezed") {
                cfg.scenario = ScenarioKind::sep_squeezed;
            } else if (value == "ent-squeezed") {
                cfg.scenario = ScenarioKind::ent_squeezed;
            } else if (value.rfind("noon-", 0) == 0) {
                cfg.scenario = ScenarioKind::noon;
                cfg.noon_n = int(parse_double("scenario", value.substr(5)));
            } else {
                throw std::invalid_argument("read_config: unknown scenario '" + value + "'");
            }
        } else if (key == "r") {
            cfg.r = parse_double(key, value);
        } else if (key == "loss_ratio") {
            cfg.loss_ratio = parse_double(key, value);
        } else if (key == "tau_start") {
            cfg.tau_start = parse_double(key, value);
        } else if (key == "tau_end") {
            cfg.tau_end = parse_double(key, value);
        } else if (key == "tau_points") {
            cfg.tau_points = int(parse_double(key, value));
        } else if (key == "method") {
            if (value == "analytic") {
                cfg.method = Method::analytic;
            } else if (value == "numeric") {
                cfg.method = Method::numeric;
            } else if (value == "both") {
                cfg.method = Method::both;
            } else {
                throw std::invalid_argument("read_config: unknown method '" + value + "'");
            }
        } else if (key == "base") {
            have_base = true;
            if (value == "2") {
                cfg.base = negativity::LogBase::two;
            } else if (value == "e") {
                cfg.base = negativity::LogBase::e;
            } else {
                throw std::invalid_argument("read_config: base must be 2 or e, got '" + value +
                                            "'");
            }
        } else if (key == "formula_mode") {
            if (value == "consistent") {
                cfg.formula_mode = gaussian::FormulaMode::consistent;
            } else if (value == "paper-exact") {
                cfg.formula_mode = gaussian::FormulaMode::paper_exact;
            } else {
                throw std::invalid_argument("read_config: unknown formula_mode '" + value + "'");
            }
        } else {
            throw std::invalid_argument("read_config: unknown key '" + key + "'");
        }
    }

    if (!have_scenario) {
        throw std::invalid_argument("read_config: missing required key 'scenario'");
    }
    if (!have_base) {
        // Fock curves are conventionally quoted in bits, Gaussian ones in nats.
        cfg.base = is_fock(cfg.scenario) ? negativity::LogBase::two : negativity::LogBase::e;
    }
    return cfg;
}

void write_config(const ScenarioConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_config: cannot open '" + path.string() +
                                 "' for writing");
    }
    out << "scenario = " << to_string(cfg.scenario, cfg.noon_n) << "\n";
    out << "r = " << format_double(cfg.r) << "\n";
    out << "loss_ratio = " << format_double(cfg.loss_ratio) << "\n";
    out << "tau_start = " << format_double(cfg.tau_start) << "\n";
    out << "tau_end = " << format_double(cfg.tau_end) << "\n";
    out << "tau_points = " << cfg.tau_points << "\n";
    out << "method = " << to_string(cfg.method) << "\n";
    out << "base = " << (cfg.base == negativity::LogBase::two ? "2" : "e") << "\n";
    out << "formula_mode = "
        << (cfg.formula_mode == gaussian::FormulaMode::consistent ? "consistent" : "paper-exact")
        << "\n";
    if (!out.flush()) {
        throw std::runtime_error("write_config: failed writing '" + path.string() + "'");
    }
}

}  // namespace cwg::scenario
