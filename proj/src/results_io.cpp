// SPDX-License-Identifier: Apache-2.0
//
// xlris - rate analysis and phase-shift design for XL-RIS-aided massive MIMO
// Copyright (C) 2026 The xlris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "xlris/errors.hpp"
#include "xlris/experiment.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace xlris {

namespace {

constexpr const char *kCsvHeader = "sweep_value,method,seed,user_rates,min_rate,trace_length,wall_seconds,mc_std_error";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

double to_double(const std::string &s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
        throw std::invalid_argument("trailing characters in '" + s + "'");
    return v;
}

std::string to_csv(const std::vector<ResultRow> &rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto &r : rows) {
        out << fmt(r.sweep_value) << ',' << r.method << ',' << r.seed << ',';
        for (std::size_t k = 0; k < r.user_rates.size(); ++k)
            out << (k ? ";" : "") << fmt(r.user_rates[k]);
        out << ',' << fmt(r.min_rate) << ',';
        if (r.trace_length)
            out << *r.trace_length;
        out << ',';
        if (r.wall_seconds)
            out << fmt(*r.wall_seconds);
        out << ',';
        if (r.mc_std_error)
            out << fmt(*r.mc_std_error);
        out << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<ResultRow> &rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
        nlohmann::ordered_json j;
        j["sweep_value"] = r.sweep_value;
        j["method"] = r.method;
        j["seed"] = r.seed;
        j["user_rates"] = r.user_rates;
        j["min_rate"] = r.min_rate;
        j["trace_length"] = r.trace_length ? nlohmann::ordered_json(*r.trace_length) : nullptr;
        j["wall_seconds"] = r.wall_seconds ? nlohmann::ordered_json(*r.wall_seconds) : nullptr;
        j["mc_std_error"] = r.mc_std_error ? nlohmann::ordered_json(*r.mc_std_error) : nullptr;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

} // namespace

std::string format_results(const std::vector<ResultRow> &rows, OutputFormat format) {
    return format == OutputFormat::Csv ? to_csv(rows) : to_json(rows);
}

void emit_results(const std::vector<ResultRow> &rows, const std::filesystem::path &path, OutputFormat format) {
    const std::string text = format_results(rows, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
    std::vector<ResultRow> rows;
    const auto lines = split(text, '\n');
    if (lines.empty() || lines.front() != kCsvHeader)
        throw std::invalid_argument("parse_results_csv: missing header");
    for (std::size_t l = 1; l < lines.size(); ++l) {
        if (lines[l].empty())
            continue;
        const auto f = split(lines[l], ',');
        if (f.size() != 8)
            throw std::invalid_argument("parse_results_csv: expected 8 fields on line " + std::to_string(l + 1));
        ResultRow r;
        r.sweep_value = to_double(f[0]);
        r.method = f[1];
        r.seed = std::stoull(f[2]);
        if (!f[3].empty())
            for (const auto &x : split(f[3], ';'))
                r.user_rates.push_back(to_double(x));
        r.min_rate = to_double(f[4]);
        if (!f[5].empty())
            r.trace_length = static_cast<std::size_t>(std::stoull(f[5]));
        if (!f[6].empty())
            r.wall_seconds = to_double(f[6]);
        if (!f[7].empty())
            r.mc_std_error = to_double(f[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace xlris
