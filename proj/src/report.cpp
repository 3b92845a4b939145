// SPDX-License-Identifier: Apache-2.0
//
// iagrass: interference alignment with quantized Grassmannian CSI feedback
// Copyright (C) 2026 The iagrass authors
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

#include "iagrass/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace iagrass {

namespace {

std::string fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000")
        s = "0.000000";
    return s;
}

std::string bits_field(const std::vector<int>& bits)
{
    if (bits.empty())
        return "inf";
    bool uniform = true;
    for (int b : bits)
        uniform = uniform && b == bits.front();
    if (uniform)
        return std::to_string(bits.front());
    std::string out;
    for (std::size_t k = 0; k < bits.size(); ++k)
        out += (k ? "/" : "") + std::to_string(bits[k]);
    return out;
}

void write_file(const std::string& text, const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << text;
    os.flush();
    if (!os)
        throw IoError("write to '" + path.string() + "' failed");
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << is.rdbuf();
    if (is.bad())
        throw IoError("read from '" + path.string() + "' failed");
    return ss.str();
}

double csv_real(const std::string& field, std::size_t line)
{
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE)
        throw ConfigError("CSV line " + std::to_string(line) + ": bad number '" + field + "'");
    return v;
}

int csv_int(const std::string& field, std::size_t line)
{
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(field.c_str(), &end, 10);
    if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE || v < 0 || v > 2'000'000'000)
        throw ConfigError("CSV line " + std::to_string(line) + ": bad integer '" + field + "'");
    return static_cast<int>(v);
}

std::string series_name(const CurveRow& r)
{
    if (!r.series.empty())
        return r.series;
    return r.bits.empty() ? r.scheme : r.scheme + " N_f=" + bits_field(r.bits);
}

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string format_csv(std::vector<CurveRow> rows)
{
    sort_rows(rows);
    std::string out = std::string(kCsvHeader) + "\n";
    for (const CurveRow& r : rows) {
        out += r.scheme + "," + fixed6(r.snr_db) + "," + bits_field(r.bits) + "," + fixed6(r.mean_sum_rate) +
               "," + fixed6(r.std_error) + "," + fixed6(r.mean_leakage) + "," + std::to_string(r.trials) + "\n";
    }
    return out;
}

void emit_csv(const std::vector<CurveRow>& rows, const std::filesystem::path& path)
{
    write_file(format_csv(rows), path);
}

std::vector<CurveRow> parse_csv(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line))
        throw ConfigError("CSV is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCsvHeader)
        throw ConfigError("unexpected CSV header '" + line + "'");
    std::vector<CurveRow> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ','))
            f.push_back(field);
        if (f.size() != 7)
            throw ConfigError("CSV line " + std::to_string(lineno) + ": expected 7 fields");
        CurveRow r;
        r.scheme = f[0];
        r.snr_db = csv_real(f[1], lineno);
        if (f[2] != "inf") {
            std::istringstream bs(f[2]);
            std::string b;
            while (std::getline(bs, b, '/'))
                r.bits.push_back(csv_int(b, lineno));
        }
        r.mean_sum_rate = csv_real(f[3], lineno);
        r.std_error = csv_real(f[4], lineno);
        r.mean_leakage = csv_real(f[5], lineno);
        r.trials = csv_int(f[6], lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<CurveRow> read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

std::string format_plot(const std::vector<CurveRow>& input, const std::string& title)
{
    std::vector<CurveRow> rows = input;
    sort_rows(rows);
    std::map<std::string, std::vector<const CurveRow*>> series;
    for (const CurveRow& r : rows)
        series[series_name(r)].push_back(&r);
    for (auto& [name, pts] : series)
        std::stable_sort(pts.begin(), pts.end(),
                         [](const CurveRow* a, const CurveRow* b) { return a->snr_db < b->snr_db; });

    std::string out;
    out += "# gnuplot script written by iagrass; render with: gnuplot -p <this file>\n";
    out += "# set terminal pngcairo size 900,600\n# set output 'sum_rate.png'\n";
    if (!title.empty())
        out += "set title " + quoted(title) + "\n";
    out += "set xlabel \"SNR [dB]\"\nset ylabel \"Sum rate [bits/s/Hz]\"\nset grid\nset key left top\n";
    if (series.empty())
        return out + "print \"no data\"\n";

    std::size_t k = 0;
    for (const auto& [name, pts] : series) {
        out += "$s" + std::to_string(k++) + " << EOD\n";
        out += "# " + name + "\n";
        for (const CurveRow* r : pts)
            out += fixed6(r->snr_db) + " " + fixed6(r->mean_sum_rate) + " " + fixed6(r->std_error) + "\n";
        out += "EOD\n";
    }
    out += "plot \\\n";
    k = 0;
    for (const auto& [name, pts] : series) {
        const std::string style = pts.size() == 1 ? "yerrorbars pt 7" : "yerrorlines";
        out += "  $s" + std::to_string(k) + " using 1:2:3 with " + style + " title " + quoted(name);
        out += ++k < series.size() ? ", \\\n" : "\n";
    }
    return out;
}

void emit_plot(const std::vector<CurveRow>& rows, const std::filesystem::path& path, const std::string& title)
{
    write_file(format_plot(rows, title), path);
}

} // namespace iagrass
