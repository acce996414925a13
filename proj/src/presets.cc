// Copyright 2026 The repmem Authors
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

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "repmem/presets_data.h"
#include "repmem/scan.h"

namespace repmem {

namespace {

constexpr double kConsistencySlack = 0.15;

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string &field, const std::string &why) {
    throw std::invalid_argument("presets line " + std::to_string(line) + ", field " + field + ": " + why);
}

double parse_number(std::string_view text, std::size_t line, const std::string &field) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0) || std::isinf(v)) {
        fail(line, field, "expected a positive number, got '" + std::string(text) + "'");
    }
    return v;
}

std::optional<TimeRange> parse_time(const std::string &raw, std::size_t line, const std::string &field) {
    std::string text = raw;
    if (text == "-") {
        return std::nullopt;
    }
    if (text.empty()) {
        fail(line, field, "empty value (use '-' for absent)");
    }
    double scale = 1.0;
    auto ends_with = [&](std::string_view suffix) {
        return text.size() > suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("ms")) {
        scale = 1000.0;
        text.resize(text.size() - 2);
    } else if (ends_with("us")) {
        text.resize(text.size() - 2);
    }
    text = trim(text);

    TimeRange r;
    if (text.rfind(">>", 0) == 0) {
        r.lower_bound = true;
        r.lo = parse_number(trim(text.substr(2)), line, field) * scale;
        r.hi = std::numeric_limits<double>::infinity();
        return r;
    }
    auto dash = text.find('-');
    if (dash != std::string::npos) {
        r.lo = parse_number(trim(text.substr(0, dash)), line, field) * scale;
        r.hi = parse_number(trim(text.substr(dash + 1)), line, field) * scale;
        if (r.hi < r.lo) {
            fail(line, field, "range upper end below lower end");
        }
        return r;
    }
    r.lo = r.hi = parse_number(text, line, field) * scale;
    return r;
}

}  // namespace

std::string TimeRange::to_string() const {
    if (lower_bound) {
        return ">>" + format_significant(lo, 6);
    }
    if (lo == hi) {
        return format_significant(lo, 6);
    }
    return format_significant(lo, 6) + "-" + format_significant(hi, 6);
}

std::vector<HardwarePreset> load_presets(std::istream &in) {
    std::vector<HardwarePreset> out;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, '|')) {
            fields.push_back(trim(f));
        }
        if (line.back() == '|') {
            fields.push_back("");
        }
        if (fields.size() != 5) {
            fail(line_no, "(row)", "expected 5 '|'-separated fields, got " + std::to_string(fields.size()));
        }
        HardwarePreset p;
        p.platform = fields[0];
        p.name = fields[1];
        if (p.name.empty()) {
            fail(line_no, "name", "empty");
        }
        if (p.platform == "superconducting") {
            p.t1 = parse_time(fields[2], line_no, "T1");
            p.t2 = parse_time(fields[3], line_no, "T2");
            p.t2star = parse_time(fields[4], line_no, "T2*");
        } else if (p.platform == "semiconductor") {
            p.t1 = parse_time(fields[2], line_no, "T1");
            p.t2star = parse_time(fields[3], line_no, "T2*");
            p.t2hahn = parse_time(fields[4], line_no, "T2 Hahn");
        } else {
            fail(line_no, "platform", "expected superconducting or semiconductor, got '" + p.platform + "'");
        }
        if (!p.t2star && !p.t2hahn) {
            fail(line_no, "T2*", "a row needs T2* or T2 Hahn");
        }
        if (p.t1 && p.t2 && p.t2star && p.t1->is_single() && p.t2->is_single() && p.t2star->is_single()) {
            double derived = combined_t2(p.t1->lo, p.t2star->lo);
            if (std::abs(derived - p.t2->lo) > kConsistencySlack * p.t2->lo) {
                fail(line_no, "T2",
                     "inconsistent with 1/T2 = 1/T2* + 1/(2 T1): table " + format_significant(p.t2->lo, 6) +
                         ", derived " + format_significant(derived, 6));
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<HardwarePreset> load_presets_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open presets file '" + path + "'");
    }
    return load_presets(in);
}

const std::string &bundled_presets_text() {
    static const std::string text(kBundledPresets);
    return text;
}

std::vector<HardwarePreset> bundled_presets() {
    std::istringstream in(bundled_presets_text());
    return load_presets(in);
}

}  // namespace repmem
