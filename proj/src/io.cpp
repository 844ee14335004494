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

#include "fsqd/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "detail.hpp"
#include "fsqd/errors.hpp"

namespace fsqd::io {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &message) {
    throw InputError((path.empty() ? std::string("document") : path) + ": " + message);
}

std::string join(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string &path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

const json &require_object(const json &j, const std::string &path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    return j;
}

const json &require_array(const json &j, const std::string &path) {
    if (!j.is_array()) {
        fail(path, "expected an array");
    }
    return j;
}

const json &member(const json &object, const std::string &key, const std::string &path) {
    const auto it = object.find(key);
    if (it == object.end()) {
        fail(join(path, key), "missing required field");
    }
    return *it;
}

double number(const json &j, const std::string &path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    const double value = j.get<double>();
    if (!std::isfinite(value)) {
        fail(path, "number is not finite");
    }
    return value;
}

std::optional<double> optional_number(const json &j, const std::string &path) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return number(j, path);
}

std::uint64_t unsigned_integer(const json &j, const std::string &path) {
    if (!j.is_number_unsigned()) {
        if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
            return static_cast<std::uint64_t>(j.get<std::int64_t>());
        }
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

bool boolean(const json &j, const std::string &path) {
    if (!j.is_boolean()) {
        fail(path, "expected true or false");
    }
    return j.get<bool>();
}

cplx complex_number(const json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2) {
        fail(path, "expected a complex number as [re, im]");
    }
    return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<cplx> complex_list(const json &j, const std::string &path) {
    require_array(j, path);
    std::vector<cplx> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(complex_number(j[i], index(path, i)));
    }
    return out;
}

std::vector<double> number_list(const json &j, const std::string &path) {
    require_array(j, path);
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(number(j[i], index(path, i)));
    }
    return out;
}

std::vector<std::optional<double>> optional_list(const json &j, const std::string &path) {
    require_array(j, path);
    std::vector<std::optional<double>> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(optional_number(j[i], index(path, i)));
    }
    return out;
}

json optional_json(const std::vector<std::optional<double>> &values) {
    json out = json::array();
    for (const auto &v : values) {
        out.push_back(v ? json(*v) : json(nullptr));
    }
    return out;
}

StateVector state_from_json(const json &j, const std::string &path) {
    require_object(j, path);
    const std::string amps_path = join(path, "amplitudes");
    auto amps = complex_list(member(j, "amplitudes", path), amps_path);
    if (const auto it = j.find("dim"); it != j.end()) {
        const auto dim = unsigned_integer(*it, join(path, "dim"));
        if (dim != amps.size()) {
            fail(amps_path, "holds " + std::to_string(amps.size()) +
                                " amplitudes but dim is " + std::to_string(dim));
        }
    }
    if (amps.size() < 2) {
        fail(amps_path, "a state needs at least 2 amplitudes, got " +
                            std::to_string(amps.size()));
    }
    bool normalize_flag = false;
    if (const auto it = j.find("normalize"); it != j.end()) {
        normalize_flag = boolean(*it, join(path, "normalize"));
    }
    if (std::all_of(amps.begin(), amps.end(), [](cplx z) { return z == cplx{}; })) {
        fail(amps_path, "the zero vector is not a valid state");
    }
    StateVector state(std::move(amps));
    if (normalize_flag) {
        return normalize(state);
    }
    if (!state.is_normalized()) {
        const double n = state.norm();
        throw NormalizationError(amps_path + ": state norm is " + detail::num(n) +
                                 ", <psi|psi> deviates from 1 by " +
                                 detail::num(std::abs(n * n - 1.0)) +
                                 " (tolerance 1e-9); set \"normalize\": true to rescale");
    }
    return state;
}

json state_to_json(const StateVector &state) {
    json amps = json::array();
    for (const auto &z : state.amplitudes()) {
        amps.push_back(complex_json(z));
    }
    return json{{"dim", state.dim()}, {"amplitudes", std::move(amps)}};
}

HermitianOperator hamiltonian_from_json(const json &j, const std::string &path) {
    const json *rows = &j;
    std::string rows_path = path;
    std::optional<std::uint64_t> declared_dim;
    if (j.is_object()) {
        rows = &member(j, "matrix", path);
        rows_path = join(path, "matrix");
        if (const auto it = j.find("dim"); it != j.end()) {
            declared_dim = unsigned_integer(*it, join(path, "dim"));
        }
    }
    require_array(*rows, rows_path);
    const std::size_t n = rows->size();
    if (n < 2) {
        fail(rows_path, "matrix must be at least 2x2, got " + std::to_string(n) + " rows");
    }
    if (declared_dim && *declared_dim != n) {
        fail(rows_path, "has " + std::to_string(n) + " rows but dim is " +
                            std::to_string(*declared_dim));
    }
    std::vector<cplx> m;
    m.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row_path = index(rows_path, i);
        const auto row = complex_list((*rows)[i], row_path);
        if (row.size() != n) {
            fail(row_path, "matrix is not square: row has " + std::to_string(row.size()) +
                               " entries, expected " + std::to_string(n));
        }
        m.insert(m.end(), row.begin(), row.end());
    }
    try {
        return HermitianOperator::from_matrix(n, std::move(m));
    } catch (const HermiticityError &e) {
        throw HermiticityError((rows_path.empty() ? std::string("matrix") : rows_path) + ": " +
                                   e.what(),
                               e.deviation(), e.row(), e.col());
    }
}

json hamiltonian_to_json(const HermitianOperator &h) {
    const std::size_t n = h.dim();
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < n; ++k) {
            row.push_back(complex_json(h(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return json{{"dim", n}, {"matrix", std::move(rows)}};
}

std::vector<HamiltonianSchedule::Node> schedule_nodes(const json &j, const std::string &path,
                                                      const char *time_key) {
    require_array(j, path);
    std::vector<HamiltonianSchedule::Node> nodes;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string item = index(path, i);
        require_object(j[i], item);
        const double t = number(member(j[i], time_key, item), join(item, time_key));
        nodes.push_back({t, hamiltonian_from_json(member(j[i], "matrix", item),
                                                  join(item, "matrix"))});
    }
    if (nodes.empty()) {
        fail(path, "schedule needs at least one entry");
    }
    return nodes;
}

HamiltonianSchedule schedule_from_json(const json &j, const std::string &path) {
    if (j.is_array()) {
        return HamiltonianSchedule::piecewise_constant(schedule_nodes(j, path, "t_start"));
    }
    require_object(j, path);
    const json &kind_json = member(j, "kind", path);
    if (!kind_json.is_string()) {
        fail(join(path, "kind"), "expected a string");
    }
    const auto kind = kind_json.get<std::string>();
    if (kind == "constant") {
        return HamiltonianSchedule::constant(
            hamiltonian_from_json(member(j, "matrix", path), join(path, "matrix")));
    }
    if (kind == "piecewise_constant") {
        return HamiltonianSchedule::piecewise_constant(
            schedule_nodes(member(j, "segments", path), join(path, "segments"), "t_start"));
    }
    if (kind == "sampled") {
        auto nodes = schedule_nodes(member(j, "samples", path), join(path, "samples"), "t");
        if (nodes.size() < 2) {
            fail(join(path, "samples"), "a sampled schedule needs at least two samples");
        }
        return HamiltonianSchedule::sampled(std::move(nodes));
    }
    fail(join(path, "kind"),
         "unknown schedule kind '" + kind + "' (expected constant, piecewise_constant or sampled)");
}

// Runs a parser and turns stray library exceptions into InputError.
template <typename F> auto guarded(F &&parse) {
    try {
        return parse();
    } catch (const Error &) {
        throw;
    } catch (const json::exception &e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
}

} // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") {
        return Format::Csv;
    }
    if (name == "json") {
        return Format::Json;
    }
    throw InputError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view format_name(Format format) {
    return format == Format::Csv ? "csv" : "json";
}

std::string format_double(double value) { return detail::num(value); }

StateVector parse_state(std::string_view text) {
    return guarded([&] { return state_from_json(parse_json(text), ""); });
}

std::string serialize_state(const StateVector &state) {
    return state_to_json(state).dump(2) + "\n";
}

HermitianOperator parse_hamiltonian(std::string_view text) {
    return guarded([&] { return hamiltonian_from_json(parse_json(text), ""); });
}

std::string serialize_hamiltonian(const HermitianOperator &h) {
    return hamiltonian_to_json(h).dump() + "\n";
}

HamiltonianSchedule parse_schedule(std::string_view text) {
    return guarded([&] { return schedule_from_json(parse_json(text), ""); });
}

std::string serialize_report(const SurvivalReport &report, Format format) {
    const std::size_t n = report.size();
    if (report.amplitude_abs.size() != n || report.probability.size() != n ||
        report.predicted_abs.size() != n || report.mt_bound.size() != n ||
        report.decay_rate_empirical.size() != n || report.decay_rate_closed.size() != n) {
        throw InputError("serialize_report: report columns have inconsistent lengths");
    }

    if (format == Format::Csv) {
        const auto cell = [](const std::optional<double> &v) {
            return v ? format_double(*v) : std::string();
        };
        std::string out(kReportCsvHeader);
        out += '\n';
        for (std::size_t k = 0; k < n; ++k) {
            out += format_double(report.times[k]);
            out += ',' + format_double(report.amplitude_abs[k]);
            out += ',' + format_double(report.probability[k]);
            out += ',' + cell(report.predicted_abs[k]);
            out += report.predicted_abs[k] ? ",1" : ",0";
            out += ',' + cell(report.mt_bound[k]);
            out += ',' + cell(report.decay_rate_empirical[k]);
            out += ',' + format_double(report.decay_rate_closed[k]);
            out += '\n';
        }
        return out;
    }

    json in_domain = json::array();
    for (const auto &v : report.predicted_abs) {
        in_domain.push_back(v.has_value());
    }
    json violations = nullptr;
    if (report.violations) {
        violations = json::array();
        for (const auto &v : *report.violations) {
            violations.push_back({{"index", v.index}, {"magnitude", v.magnitude}});
        }
    }
    const json doc{
        {"hbar", report.hbar},
        {"delta_h0", report.delta_h0},
        {"t", report.times},
        {"amp_abs", report.amplitude_abs},
        {"prob", report.probability},
        {"predicted", optional_json(report.predicted_abs)},
        {"predicted_in_domain", std::move(in_domain)},
        {"mt_bound", optional_json(report.mt_bound)},
        {"w_empirical", optional_json(report.decay_rate_empirical)},
        {"w_closed", report.decay_rate_closed},
        {"violations", std::move(violations)},
    };
    return doc.dump(1) + "\n";
}

SurvivalReport parse_report(std::string_view text) {
    return guarded([&] {
        const json doc = parse_json(text);
        require_object(doc, "");
        SurvivalReport r;
        r.hbar = number(member(doc, "hbar", ""), "hbar");
        r.delta_h0 = number(member(doc, "delta_h0", ""), "delta_h0");
        r.times = number_list(member(doc, "t", ""), "t");
        r.amplitude_abs = number_list(member(doc, "amp_abs", ""), "amp_abs");
        r.probability = number_list(member(doc, "prob", ""), "prob");
        r.predicted_abs = optional_list(member(doc, "predicted", ""), "predicted");
        r.mt_bound = optional_list(member(doc, "mt_bound", ""), "mt_bound");
        r.decay_rate_empirical = optional_list(member(doc, "w_empirical", ""), "w_empirical");
        r.decay_rate_closed = number_list(member(doc, "w_closed", ""), "w_closed");
        const std::size_t n = r.times.size();
        for (const auto &[name, size] :
             {std::pair{"amp_abs", r.amplitude_abs.size()}, {"prob", r.probability.size()},
              {"predicted", r.predicted_abs.size()}, {"mt_bound", r.mt_bound.size()},
              {"w_empirical", r.decay_rate_empirical.size()},
              {"w_closed", r.decay_rate_closed.size()}}) {
            if (size != n) {
                fail(name, "has " + std::to_string(size) + " entries, expected " +
                               std::to_string(n));
            }
        }
        const json &violations = member(doc, "violations", "");
        if (!violations.is_null()) {
            require_array(violations, "violations");
            r.violations.emplace();
            for (std::size_t i = 0; i < violations.size(); ++i) {
                const std::string item = index("violations", i);
                require_object(violations[i], item);
                const auto k = unsigned_integer(member(violations[i], "index", item),
                                                join(item, "index"));
                const double m = number(member(violations[i], "magnitude", item),
                                        join(item, "magnitude"));
                r.violations->push_back({static_cast<std::size_t>(k), m});
            }
        }
        return r;
    });
}

std::string serialize_trajectory(const Trajectory &trajectory, Format format) {
    const auto &times = trajectory.times();
    const auto &states = trajectory.states();
    const std::size_t dim = states.front().dim();
    if (format == Format::Csv) {
        std::string out = "t";
        for (std::size_t i = 1; i <= dim; ++i) {
            out += ",re_" + std::to_string(i) + ",im_" + std::to_string(i);
        }
        out += '\n';
        for (std::size_t k = 0; k < times.size(); ++k) {
            out += format_double(times[k]);
            for (const auto &z : states[k].amplitudes()) {
                out += ',' + format_double(z.real()) + ',' + format_double(z.imag());
            }
            out += '\n';
        }
        return out;
    }
    json state_list = json::array();
    for (const auto &s : states) {
        state_list.push_back(state_to_json(s)["amplitudes"]);
    }
    const auto &d = trajectory.digest();
    const json doc{
        {"t", times},
        {"states", std::move(state_list)},
        {"digest",
         {{"schedule_kind", d.schedule_kind},
          {"stepper", d.stepper},
          {"steps", d.steps},
          {"t_end", d.t_end},
          {"hbar", d.hbar},
          {"renormalizations", d.renormalizations},
          {"max_norm_drift", d.max_norm_drift}}},
    };
    return doc.dump(1) + "\n";
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw InputError("error while reading '" + path.string() + "'");
    }
    return buf.str();
}

void write_file(const std::filesystem::path &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot open '" + path.string() + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
        throw InputError("error while writing '" + path.string() + "'");
    }
}

namespace {

// A config field is either an inline document or a path to a file holding it.
json inline_or_file(const json &j, const std::string &path, const std::filesystem::path &base) {
    if (!j.is_string()) {
        return j;
    }
    std::filesystem::path file = j.get<std::string>();
    if (file.is_relative()) {
        file = base / file;
    }
    try {
        return parse_json(read_file(file));
    } catch (const InputError &e) {
        throw InputError(path + ": " + e.what());
    }
}

} // namespace

RunConfig parse_run_config(std::string_view text, const std::filesystem::path &base_dir) {
    return guarded([&]() -> RunConfig {
        const json doc = parse_json(text);
        require_object(doc, "");

        PhysicalConstants constants;
        if (const auto it = doc.find("hbar"); it != doc.end()) {
            const double hbar = number(*it, "hbar");
            if (!(hbar > 0.0)) {
                fail("hbar", "must be positive");
            }
            constants = PhysicalConstants(hbar);
        }

        std::optional<double> t_end;
        if (const auto it = doc.find("t_end"); it != doc.end() && !it->is_null()) {
            t_end = number(*it, "t_end");
            if (!(*t_end > 0.0)) {
                fail("t_end", "must be positive");
            }
        }

        std::size_t steps = 1024;
        if (const auto it = doc.find("steps"); it != doc.end()) {
            steps = static_cast<std::size_t>(unsigned_integer(*it, "steps"));
            if (steps < 1) {
                fail("steps", "must be at least 1");
            }
        }

        const bool has_h = doc.contains("hamiltonian");
        const bool has_s = doc.contains("schedule");
        if (has_h == has_s) {
            fail("", "exactly one of \"hamiltonian\" or \"schedule\" is required");
        }
        auto schedule =
            has_h ? HamiltonianSchedule::constant(hamiltonian_from_json(
                        inline_or_file(doc["hamiltonian"], "hamiltonian", base_dir),
                        "hamiltonian"))
                  : schedule_from_json(inline_or_file(doc["schedule"], "schedule", base_dir),
                                       "schedule");

        auto state = state_from_json(
            inline_or_file(member(doc, "initial_state", ""), "initial_state", base_dir),
            "initial_state");
        require_same_dim(state.dim(), schedule.dim(), "run config");

        OutputSpec output;
        output.path = "fsqd.report.csv";
        if (const auto it = doc.find("output"); it != doc.end()) {
            require_object(*it, "output");
            if (const auto f = it->find("format"); f != it->end()) {
                if (!f->is_string()) {
                    fail("output.format", "expected a string");
                }
                output.format = parse_format(f->get<std::string>());
            }
            if (const auto p = it->find("path"); p != it->end()) {
                if (!p->is_string()) {
                    fail("output.path", "expected a string");
                }
                output.path = p->get<std::string>();
            } else {
                output.path = std::string("fsqd.report.") + std::string(format_name(output.format));
            }
        }
        if (output.path.is_relative()) {
            output.path = base_dir / output.path;
        }

        std::optional<std::uint64_t> seed;
        if (const auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
            seed = unsigned_integer(*it, "seed");
        }

        return RunConfig{constants, t_end,    steps,          std::move(schedule),
                         std::move(state), std::move(output), seed};
    });
}

RunConfig load_run_config(const std::filesystem::path &path) {
    return parse_run_config(read_file(path), path.parent_path());
}

} // namespace fsqd::io
