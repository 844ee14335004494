// Copyright 2026 The fsqd Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fsqd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsqd/errors.hpp"
#include "fsqd/geometry.hpp"
#include "fsqd/random.hpp"
#include "fsqd/simd/kernels.hpp"
#include "fsqd/survival.hpp"

namespace fsqd::cli {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

std::string fmt(const char *spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

std::string g12(double value) { return fmt("%.12g", value); }

// Delta H this small relative to the spectrum means the state is stationary.
bool is_stationary(double delta_h, const HermitianOperator &h) {
    double scale = 1.0;
    for (double e : h.eigenvalues()) {
        scale = std::max(scale, std::abs(e));
    }
    return delta_h <= 1e-12 * scale;
}

struct Run {
    Trajectory trajectory;
    SurvivalReport report;
    double delta_h = 0.0;
    double t_end = 0.0;
};

Run execute(const io::RunConfig &config) {
    const auto &schedule = config.schedule;
    const HermitianOperator h0 = schedule.at(0.0);
    const double delta_h = energy_uncertainty(h0, config.initial_state);
    const double hbar = config.constants.hbar();

    double t_end = 0.0;
    if (config.t_end) {
        t_end = *config.t_end;
    } else if (is_stationary(delta_h, h0)) {
        throw InputError("t_end is required when the initial state is stationary "
                         "(Delta H = 0), since the default window pi*hbar/(2 Delta H) "
                         "is unbounded");
    } else {
        t_end = std::numbers::pi * hbar / (2.0 * delta_h);
    }

    Trajectory trajectory =
        schedule.is_constant()
            ? sample_trajectory(config.initial_state, schedule.constant_operator(), t_end,
                                config.steps, config.constants)
            : evolve_schedule(config.initial_state, schedule, t_end, config.steps,
                              config.constants);
    SurvivalReport report = build_survival_report(trajectory, schedule, config.constants);
    return Run{std::move(trajectory), std::move(report), delta_h, t_end};
}

double max_prediction_deviation(const SurvivalReport &report) {
    double worst = 0.0;
    for (std::size_t k = 0; k < report.size(); ++k) {
        if (report.predicted_abs[k]) {
            worst = std::max(worst, std::abs(report.amplitude_abs[k] - *report.predicted_abs[k]));
        }
    }
    return worst;
}

double parse_positive(const std::string &text, const std::string &what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value) || !(value > 0.0)) {
        throw InputError(what + " must be a positive number, got '" + text + "'");
    }
    return value;
}

std::optional<PhysicalConstants> hbar_from_env() {
    const char *env = std::getenv("FSQD_HBAR");
    if (env == nullptr) {
        return std::nullopt;
    }
    return PhysicalConstants(parse_positive(env, "FSQD_HBAR"));
}

} // namespace

std::filesystem::path trajectory_path(const std::filesystem::path &report_path,
                                      io::Format format) {
    const std::string ext = "." + std::string(io::format_name(format));
    std::string name = report_path.filename().string();
    const std::string report_suffix = ".report" + ext;
    if (name.size() > report_suffix.size() &&
        name.compare(name.size() - report_suffix.size(), report_suffix.size(),
                     report_suffix) == 0) {
        name.resize(name.size() - report_suffix.size());
    } else if (name.size() > ext.size() &&
               name.compare(name.size() - ext.size(), ext.size(), ext) == 0) {
        name.resize(name.size() - ext.size());
    }
    return report_path.parent_path() / (name + ".trajectory" + ext);
}

std::pair<std::size_t, std::size_t> parse_dim_range(const std::string &text) {
    const auto parse_dim = [&](const std::string &part) -> std::size_t {
        std::size_t used = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(part, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != part.size() || part.front() == '-') {
            throw InputError("invalid dimension range '" + text + "' (expected LO..HI)");
        }
        return value;
    };
    const auto dots = text.find("..");
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (dots == std::string::npos) {
        lo = hi = parse_dim(text);
    } else {
        lo = parse_dim(text.substr(0, dots));
        hi = parse_dim(text.substr(dots + 2));
    }
    if (lo < 2 || hi < lo) {
        throw InputError("invalid dimension range '" + text + "': need 2 <= LO <= HI");
    }
    return {lo, hi};
}

CommandOutcome cmd_evolve(const io::RunConfig &config) {
    const Run run = execute(config);
    const auto &report = run.report;
    const double hbar = config.constants.hbar();

    CommandOutcome outcome;
    const auto report_path = config.output.path;
    const auto traj_path = trajectory_path(report_path, config.output.format);
    io::write_file(report_path, io::serialize_report(report, config.output.format));
    outcome.artifacts.push_back(report_path);
    io::write_file(traj_path, io::serialize_trajectory(run.trajectory, config.output.format));
    outcome.artifacts.push_back(traj_path);

    const bool stationary = is_stationary(run.delta_h, config.schedule.at(0.0));
    std::ostringstream s;
    s << "evolve: " << run.trajectory.digest().describe() << "\n";
    s << "delta_H = " << g12(run.delta_h) << "\n";
    s << "v_d = delta_H/hbar = " << g12(run.delta_h / hbar) << "\n";
    s << "in-domain horizon pi*hbar/(2 delta_H) = "
      << (stationary ? std::string("inf") : g12(std::numbers::pi * hbar / (2.0 * run.delta_h)))
      << "\n";
    s << "max in-domain |measured - predicted| = " << g12(max_prediction_deviation(report))
      << "\n";
    if (run.trajectory.size() >= 2) {
        const auto path = path_length(run.trajectory, config.schedule, config.constants);
        s << "path length = " << g12(path.length)
          << ", endpoint distance = " << g12(path.endpoint_distance)
          << ", deficit = " << g12(path.deficit) << "\n";
    }
    if (report.violations) {
        s << "Mandelstam-Tamm violations (tol " << g12(kMtTolerance)
          << "): " << report.violations->size() << "\n";
        if (!report.violations->empty()) {
            outcome.exit_code = kExitNumerical;
        }
    } else {
        s << "Mandelstam-Tamm check skipped (time-dependent schedule)\n";
    }
    s << "wrote " << report_path.string() << "\n";
    s << "wrote " << traj_path.string() << "\n";
    outcome.summary = s.str();
    return outcome;
}

CommandOutcome cmd_fs_distance(const std::filesystem::path &state_a,
                               const std::filesystem::path &state_b) {
    const auto parse = [](const std::filesystem::path &p) {
        try {
            return io::parse_state(io::read_file(p));
        } catch (const InputError &e) {
            throw InputError(p.string() + ": " + e.what());
        }
    };
    const StateVector a = parse(state_a);
    const StateVector b = parse(state_b);
    const double x = fs_distance(Ray(a), Ray(b));
    CommandOutcome outcome;
    outcome.summary = fmt("%.12f", x) + "\n";
    return outcome;
}

CampaignResult run_mt_campaign(const CampaignOptions &options) {
    if (options.trials < 1) {
        throw InputError("trials must be at least 1");
    }
    if (options.dim_lo < 2 || options.dim_hi < options.dim_lo) {
        throw InputError("dimension range must satisfy 2 <= LO <= HI");
    }
    if (!(options.tol > 0.0)) {
        throw InputError("tol must be positive");
    }
    if (options.grid_points < 2) {
        throw InputError("grid must have at least 2 points");
    }

    struct TrialRow {
        std::size_t dim;
        double delta_h;
        double horizon;
        std::size_t violations;
        double min_slack;
    };
    std::vector<TrialRow> rows;
    rows.reserve(options.trials);

    CampaignResult result;
    result.min_slack = std::numeric_limits<double>::infinity();
    result.min_interior_slack = std::numeric_limits<double>::infinity();
    const double hbar = options.constants.hbar();

    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        auto rng = trial_rng(options.seed, trial);
        std::uniform_int_distribution<std::size_t> pick_dim(options.dim_lo, options.dim_hi);
        const std::size_t dim = pick_dim(rng);
        const HermitianOperator h = random_hermitian(dim, rng);

        StateVector psi0 = random_state(dim, rng);
        if (options.mode == TrialMode::Eigenstate) {
            std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
            psi0 = h.eigenvector(pick(rng));
        } else if (options.mode == TrialMode::Geodesic) {
            std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
            const std::size_t i = pick(rng);
            std::size_t j = pick(rng);
            while (j == i) {
                j = pick(rng);
            }
            const cplx phase = random_phase(rng);
            const auto vi = h.eigenvector(i);
            const auto vj = h.eigenvector(j);
            std::vector<cplx> amps(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                amps[k] = (vi[k] + phase * vj[k]) / std::sqrt(2.0);
            }
            psi0 = normalize(StateVector(std::move(amps)));
        }

        const double delta_h = energy_uncertainty(h, psi0);
        const bool stationary = is_stationary(delta_h, h);
        const double horizon = stationary ? 1.0 : std::numbers::pi * hbar / (2.0 * delta_h);
        const auto trajectory =
            sample_trajectory(psi0, h, horizon, options.grid_points - 1, options.constants);
        const auto violations = mt_check(trajectory, h, options.constants, options.tol);
        const auto amplitudes = survival_amplitude(trajectory);

        double trial_min = std::numeric_limits<double>::infinity();
        const auto &times = trajectory.times();
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double angle = times[k] * delta_h / hbar;
            if (angle > kHalfPi) {
                continue;
            }
            const double slack = std::abs(amplitudes[k]) - std::cos(angle);
            trial_min = std::min(trial_min, slack);
            result.max_abs_slack = std::max(result.max_abs_slack, std::abs(slack));
            if (slack < result.min_slack) {
                result.min_slack = slack;
                result.min_slack_trial = trial;
                result.min_slack_index = k;
            }
            if (k > 0) {
                result.min_interior_slack = std::min(result.min_interior_slack, slack);
            }
        }
        result.violations += violations.size();
        rows.push_back({dim, delta_h, horizon, violations.size(), trial_min});
    }

    if (options.output) {
        std::string doc;
        if (options.output->format == io::Format::Csv) {
            doc = "trial,dim,delta_h,horizon,violations,min_slack\n";
            for (std::size_t t = 0; t < rows.size(); ++t) {
                doc += std::to_string(t) + "," + std::to_string(rows[t].dim) + "," +
                       io::format_double(rows[t].delta_h) + "," +
                       io::format_double(rows[t].horizon) + "," +
                       std::to_string(rows[t].violations) + "," +
                       io::format_double(rows[t].min_slack) + "\n";
            }
        } else {
            nlohmann::json list = nlohmann::json::array();
            for (std::size_t t = 0; t < rows.size(); ++t) {
                list.push_back({{"trial", t},
                                {"dim", rows[t].dim},
                                {"delta_h", rows[t].delta_h},
                                {"horizon", rows[t].horizon},
                                {"violations", rows[t].violations},
                                {"min_slack", rows[t].min_slack}});
            }
            doc = nlohmann::json{{"seed", options.seed},
                                 {"tol", options.tol},
                                 {"grid_points", options.grid_points},
                                 {"trials", std::move(list)}}
                      .dump(1) +
                  "\n";
        }
        io::write_file(options.output->path, doc);
    }
    return result;
}

CommandOutcome cmd_mt_campaign(const CampaignOptions &options) {
    const CampaignResult r = run_mt_campaign(options);
    static constexpr const char *kModeNames[] = {"random", "eigenstate", "geodesic"};

    CommandOutcome outcome;
    std::ostringstream s;
    s << "mt-campaign: trials=" << options.trials << " dims=" << options.dim_lo << ".."
      << options.dim_hi << " seed=" << options.seed << " tol=" << g12(options.tol)
      << " grid=" << options.grid_points
      << " mode=" << kModeNames[static_cast<int>(options.mode)] << "\n";
    s << "violations: " << r.violations << "\n";
    s << "min slack: " << g12(r.min_slack) << " (trial " << r.min_slack_trial
      << ", grid index " << r.min_slack_index << ")\n";
    if (std::isfinite(r.min_interior_slack)) {
        s << "min interior slack (t > 0): " << g12(r.min_interior_slack) << "\n";
    }
    s << "max |slack|: " << g12(r.max_abs_slack) << "\n";
    if (options.output) {
        s << "wrote " << options.output->path.string() << "\n";
        outcome.artifacts.push_back(options.output->path);
    }
    outcome.summary = s.str();
    if (r.violations > 0) {
        outcome.exit_code = kExitNumerical;
    }
    return outcome;
}

CommandOutcome cmd_decay_rate(const io::RunConfig &config) {
    if (config.steps < 2) {
        throw InputError("decay-rate needs at least 2 steps (3 grid points)");
    }
    const Run run = execute(config);
    const auto &report = run.report;

    double worst = 0.0;
    for (std::size_t k = 0; k < report.size(); ++k) {
        if (report.decay_rate_empirical[k]) {
            worst = std::max(worst,
                             std::abs(*report.decay_rate_empirical[k] - report.decay_rate_closed[k]));
        }
    }

    std::string doc;
    if (config.output.format == io::Format::Csv) {
        doc = "t,w_empirical,w_closed\n";
        for (std::size_t k = 0; k < report.size(); ++k) {
            doc += io::format_double(report.times[k]) + ",";
            if (report.decay_rate_empirical[k]) {
                doc += io::format_double(*report.decay_rate_empirical[k]);
            }
            doc += "," + io::format_double(report.decay_rate_closed[k]) + "\n";
        }
    } else {
        nlohmann::json empirical = nlohmann::json::array();
        for (const auto &w : report.decay_rate_empirical) {
            empirical.push_back(w ? nlohmann::json(*w) : nlohmann::json(nullptr));
        }
        doc = nlohmann::json{{"hbar", report.hbar},
                             {"delta_h0", report.delta_h0},
                             {"t", report.times},
                             {"w_empirical", std::move(empirical)},
                             {"w_closed", report.decay_rate_closed}}
                  .dump(1) +
              "\n";
    }
    io::write_file(config.output.path, doc);

    CommandOutcome outcome;
    outcome.artifacts.push_back(config.output.path);
    std::ostringstream s;
    s << "decay-rate: " << run.trajectory.digest().describe() << "\n";
    s << "delta_H = " << g12(run.delta_h) << ", grid step = "
      << g12(run.t_end / static_cast<double>(config.steps)) << "\n";
    s << "max |w_empirical - w_closed| = " << g12(worst) << "\n";
    s << "wrote " << config.output.path.string() << "\n";
    outcome.summary = s.str();
    return outcome;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Pure-state dynamics in Fubini-Study geometry: survival amplitudes, "
                 "decay rates and the Mandelstam-Tamm bound",
                 "fsqd"};
    app.require_subcommand(1);

    std::string simd = "auto";
    app.add_option("--simd", simd, "Kernel backend: auto, scalar, avx2 or neon")
        ->capture_default_str();

    std::string config_path;
    std::string format;
    std::string out_path;

    auto *evolve = app.add_subcommand("evolve", "Evolve a state and write its survival report");
    evolve->add_option("--config", config_path, "Run configuration (JSON)")->required();
    evolve->add_option("--format", format, "Output format: csv or json");
    evolve->add_option("--out", out_path, "Report path");

    std::string state_a;
    std::string state_b;
    auto *distance =
        app.add_subcommand("fs-distance", "Fubini-Study distance between two states");
    distance->add_option("--state-a", state_a, "First state file")->required();
    distance->add_option("--state-b", state_b, "Second state file")->required();

    CampaignOptions campaign;
    std::string dims = "2..8";
    std::string mode = "random";
    std::string campaign_format = "csv";
    std::string campaign_out;
    auto *mt = app.add_subcommand("mt-campaign", "Randomized Mandelstam-Tamm bound check");
    mt->add_option("--dims", dims, "Dimension range LO..HI")->capture_default_str();
    mt->add_option("--trials", campaign.trials, "Number of trials")->capture_default_str();
    mt->add_option("--seed", campaign.seed, "Campaign seed")->capture_default_str();
    mt->add_option("--tol", campaign.tol, "Violation tolerance")->capture_default_str();
    mt->add_option("--grid", campaign.grid_points, "Grid points per trial")
        ->capture_default_str();
    mt->add_option("--mode", mode, "Trial construction: random, eigenstate or geodesic")
        ->capture_default_str();
    mt->add_option("--format", campaign_format, "Per-trial output format: csv or json");
    mt->add_option("--out", campaign_out, "Per-trial output path");

    auto *decay = app.add_subcommand("decay-rate", "Empirical vs closed-form decay rates");
    decay->add_option("--config", config_path, "Run configuration (JSON)")->required();
    decay->add_option("--format", format, "Output format: csv or json");
    decay->add_option("--out", out_path, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simd != "auto") {
            simd::select_backend(simd::parse_backend(simd));
        }
        const auto hbar_override = hbar_from_env();

        const auto load_config = [&]() {
            io::RunConfig config = io::load_run_config(config_path);
            if (hbar_override) {
                config.constants = *hbar_override;
            }
            std::string chosen = format;
            if (chosen.empty() && !out_path.empty()) {
                const auto ext = std::filesystem::path(out_path).extension().string();
                if (ext == ".csv" || ext == ".json") {
                    chosen = ext.substr(1);
                }
            }
            if (!chosen.empty()) {
                const auto f = io::parse_format(chosen);
                if (f != config.output.format && out_path.empty()) {
                    config.output.path.replace_extension(io::format_name(f));
                }
                config.output.format = f;
            }
            if (!out_path.empty()) {
                config.output.path = out_path;
            }
            return config;
        };

        CommandOutcome outcome;
        if (*evolve) {
            outcome = cmd_evolve(load_config());
        } else if (*distance) {
            outcome = cmd_fs_distance(state_a, state_b);
        } else if (*mt) {
            std::tie(campaign.dim_lo, campaign.dim_hi) = parse_dim_range(dims);
            if (mode == "random") {
                campaign.mode = TrialMode::Random;
            } else if (mode == "eigenstate") {
                campaign.mode = TrialMode::Eigenstate;
            } else if (mode == "geodesic") {
                campaign.mode = TrialMode::Geodesic;
            } else {
                throw InputError("unknown --mode '" + mode +
                                 "' (expected random, eigenstate or geodesic)");
            }
            if (hbar_override) {
                campaign.constants = *hbar_override;
            }
            if (!campaign_out.empty()) {
                campaign.output = io::OutputSpec{io::parse_format(campaign_format), campaign_out};
            }
            outcome = cmd_mt_campaign(campaign);
        } else if (*decay) {
            outcome = cmd_decay_rate(load_config());
        }
        out << outcome.summary;
        return outcome.exit_code;
    } catch (const NumericalError &e) {
        err << "fsqd: numerical contract violation: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        err << "fsqd: error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace fsqd::cli
