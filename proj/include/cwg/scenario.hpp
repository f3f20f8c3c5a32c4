// scenario.hpp — named scenario sweeps, material presets, unit conversions,
// extrema extraction and CSV/config round-tripping for the CLI.

#pragma once

#include "cwg/gaussian.hpp"
#include "cwg/negativity.hpp"

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace cwg::scenario {

enum class ScenarioKind { one_one, two_zero, noon, sep_squeezed, ent_squeezed };
enum class Method { analytic, numeric, both };

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::one_one;
    int noon_n = 2;  // photon number when scenario == noon
    double r = 0.9;
    double loss_ratio = 0.0;
    double tau_start = 0.0;
    double tau_end = 3.141592653589793;
    int tau_points = 401;
    Method method = Method::analytic;
    negativity::LogBase base = negativity::LogBase::two;
    gaussian::FormulaMode formula_mode = gaussian::FormulaMode::consistent;

    bool operator==(const ScenarioConfig&) const = default;
};

/// One grid point of a sweep. Fields not produced by the selected method
/// stay NaN. The diagnostic column is N(rho) for Fock scenarios and the
/// minimal PPT symplectic eigenvalue for Gaussian ones.
struct SweepRow {
    double tau = 0.0;
    double tau_over_pi = 0.0;
    double e_n_analytic = std::numeric_limits<double>::quiet_NaN();
    double diag_analytic = std::numeric_limits<double>::quiet_NaN();
    double e_n_numeric = std::numeric_limits<double>::quiet_NaN();
    double diag_numeric = std::numeric_limits<double>::quiet_NaN();

    /// |analytic - numeric|; NaN unless both methods ran.
    double abs_difference() const;
    /// Preferred series value: analytic when present, numeric otherwise.
    double e_n() const;
    double diagnostic() const;
};

struct SweepResult {
    ScenarioConfig config;
    std::vector<SweepRow> rows;
};

/// Evaluates the configured scenario on the tau grid. Analytic rows use the
/// closed forms (for the lossy |1,1> input, the exact damped density matrix);
/// numeric rows use the master-equation oracle for Fock scenarios and the
/// general PPT route for Gaussian ones. Throws std::invalid_argument for
/// invalid configs, including method=numeric NOON sweeps with more than
/// max_numeric_noon photons.
SweepResult run_sweep(const ScenarioConfig& config, int max_numeric_noon = 8);

struct Extremum {
    enum class Kind { maximum, zero_onset, zero_offset };
    double tau;
    double value;
    Kind kind;
};

/// Local maxima by 3-point comparison with parabolic refinement, plus the
/// boundaries of every run of E_N < 1e-9. Requires at least 3 rows.
std::vector<Extremum> find_extrema(const SweepResult& result);

/// Experimental coupling/loss figures for common waveguide platforms.
struct MaterialPreset {
    std::string name;
    double coupling_j;  // s^-1, midpoint of [j_min, j_max]
    double j_min;
    double j_max;
    double gamma;  // s^-1
    double ratio;  // gamma / coupling_j
};

/// Known presets: "lithium-niobate", "algaas", "silica". Unknown names throw
/// std::out_of_range.
MaterialPreset preset(const std::string& name);
std::vector<MaterialPreset> all_presets();

/// Converts a power loss per unit length into the amplitude decay rate used
/// here: power after 1 cm is exp(-2 gamma / v), so
///   gamma = loss_db * ln(10)/10 * v / 2.
double loss_db_per_cm_to_rate(double loss_db, double speed_cm_per_s);
double rate_to_loss_db_per_cm(double rate, double speed_cm_per_s);

/// Dimensionless time accumulated over a waveguide of the given length:
/// tau = J * n * l / c with c the vacuum speed of light in cm/s.
double time_from_length(double length_cm, double refractive_index, double coupling_j);

/// CSV with header `tau,tau_over_pi,E_N,diagnostic,method`; one line per
/// (grid point, method) in full double precision. Identical configs produce
/// byte-identical files.
void write_csv(const SweepResult& result, std::ostream& out);
void write_csv(const SweepResult& result, const std::filesystem::path& path);
SweepResult read_csv(const std::filesystem::path& path);

/// Flat key=value config document; keys match the ScenarioConfig fields.
/// Unknown keys raise std::invalid_argument naming the key.
ScenarioConfig read_config(const std::filesystem::path& path);
void write_config(const ScenarioConfig& config, const std::filesystem::path& path);

std::string to_string(ScenarioKind kind, int noon_n);
std::string to_string(Method method);

}  // namespace cwg::scenario
