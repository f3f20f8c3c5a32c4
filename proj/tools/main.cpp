// cwg — entanglement sweeps for two lossy coupled waveguide modes.

#include "cwg/lindblad.hpp"
#include "cwg/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitAccuracy = 3;

const char* kind_name(cwg::scenario::Extremum::Kind kind) {
    using Kind = cwg::scenario::Extremum::Kind;
    switch (kind) {
        case Kind::maximum: return "max";
        case Kind::zero_onset: return "zero-onset";
        case Kind::zero_offset: return "zero-offset";
    }
    return "?";
}

int run_command(const std::string& config_path, const std::string& out_path) {
    const auto cfg = cwg::scenario::read_config(config_path);
    const auto result = cwg::scenario::run_sweep(cfg);

    if (out_path.empty()) {
        cwg::scenario::write_csv(result, std::cout);
    } else {
        cwg::scenario::write_csv(result, out_path);
    }

    std::fprintf(stderr, "cwg run: %s, %zu grid points\n",
                 cwg::scenario::to_string(cfg.scenario, cfg.noon_n).c_str(),
                 result.rows.size());
    if (cfg.method == cwg::scenario::Method::both) {
        double max_diff = 0.0;
        for (const auto& row : result.rows) {
            max_diff = std::max(max_diff, row.abs_difference());
        }
        std::fprintf(stderr, "cwg run: max |analytic - numeric| = %.3e\n", max_diff);
    }
    return 0;
}

int extrema_command(const std::string& in_path, bool as_json) {
    const auto result = cwg::scenario::read_csv(in_path);
    const auto extrema = cwg::scenario::find_extrema(result);

    if (as_json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& e : extrema) {
            doc.push_back({{"tau", e.tau}, {"value", e.value}, {"kind", kind_name(e.kind)}});
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& e : extrema) {
            std::printf("%-11s tau = %.12g  value = %.12g\n", kind_name(e.kind), e.tau, e.value);
        }
    }
    return 0;
}

int presets_command() {
    std::printf("%-16s %-12s %-12s %-10s %s\n", "name", "J (s^-1)", "gamma (s^-1)",
                "gamma/J", "J range (s^-1)");
    for (const auto& p : cwg::scenario::all_presets()) {
        std::printf("%-16s %-12.3e %-12.3e %-10.4f [%.3e, %.3e]\n", p.name.c_str(),
                    p.coupling_j, p.gamma, p.ratio, p.j_min, p.j_max);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement dynamics of two coupled lossy waveguide modes"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    auto* run = app.add_subcommand("run", "Run a sweep from a config file and emit CSV");
    run->add_option("--config", config_path, "key = value config document")->required();
    run->add_option("--out", out_path, "output CSV path (stdout when omitted)");

    std::string in_path;
    bool as_json = false;
    auto* extrema = app.add_subcommand("extrema", "Report maxima and zero intervals of a sweep");
    extrema->add_option("--in", in_path, "CSV produced by `run`")->required();
    extrema->add_flag("--json", as_json, "emit JSON instead of text");

    app.add_subcommand("presets", "List material presets");

    double db_per_cm = 0.0;
    double speed = 0.0;
    auto* convert = app.add_subcommand("convert-loss", "Convert dB/cm loss to a decay rate");
    convert->add_option("--db-per-cm", db_per_cm, "power loss per cm")->required();
    convert->add_option("--speed", speed, "propagation speed in cm/s")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return run_command(config_path, out_path);
        if (extrema->parsed()) return extrema_command(in_path, as_json);
        if (app.get_subcommand("presets")->parsed()) return presets_command();
        if (convert->parsed()) {
            std::printf("%.12e\n", cwg::scenario::loss_db_per_cm_to_rate(db_per_cm, speed));
            return 0;
        }
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    } catch (const cwg::lindblad::accuracy_error& e) {
        std::fprintf(stderr, "cwg: accuracy check failed: %s\n", e.what());
        return kExitAccuracy;
    } catch (const cwg::lindblad::truncation_error& e) {
        std::fprintf(stderr, "cwg: %s\n", e.what());
        return kExitAccuracy;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "cwg: %s\n", e.what());
        return kExitValidation;
    }
}
