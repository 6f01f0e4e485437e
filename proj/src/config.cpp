#include "dynkin/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dynkin::cli {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::vector<std::string> preset_names() {
    return {"bm-sym", "bm-drift", "cl", "cp-sym", "cp-asym"};
}

RunConfig preset(const std::string& name) {
    RunConfig c;
    if (name == "bm-sym") {
        c.spec.model = levy::Model::brownian_motion(0.0, 1.0);
    } else if (name == "bm-drift") {
        c.spec.model = levy::Model::brownian_motion(1.0, 1.0);
    } else if (name == "cl") {
        c.spec.model = levy::Model::cramer_lundberg(1.0, 1.0, 1.0);
    } else if (name == "cp-sym") {
        c.spec.model = levy::Model::compound_poisson(1.0, 1.0, 1.0, 1.0);
    } else if (name == "cp-asym") {
        c.spec.model = levy::Model::compound_poisson(1.0, 3.0, 3.0, 1.0);
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    c.spec.r = 1.0;
    c.spec.delta = 1.0;
    return c;
}

namespace {

struct Line {
    int number;
    std::string section;
    std::string key;
    std::string value;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " +
                                msg);
}

double parse_double(const Line& ln) {
    const std::string& v = ln.value;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || v.empty() || !std::isfinite(x))
        fail(ln.number, "expected a finite number for '" + ln.key + "'");
    return x;
}

long long parse_int(const Line& ln) {
    const std::string& v = ln.value;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || v.empty())
        fail(ln.number, "expected an integer for '" + ln.key + "'");
    return x;
}

unsigned long long parse_uint(const Line& ln) {
    const std::string& v = ln.value;
    char* end = nullptr;
    if (!v.empty() && v[0] == '-')
        fail(ln.number, "expected a nonnegative integer for '" + ln.key + "'");
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || v.empty())
        fail(ln.number, "expected a nonnegative integer for '" + ln.key + "'");
    return x;
}

std::vector<double> parse_double_list(const Line& ln) {
    std::vector<double> out;
    std::stringstream ss(ln.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(ln.number, "empty entry in '" + ln.key + "'");
        char* end = nullptr;
        const double x = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || !std::isfinite(x))
            fail(ln.number, "bad number in '" + ln.key + "'");
        out.push_back(x);
    }
    return out;
}

levy::Family parse_family(const Line& ln) {
    const std::string& v = ln.value;
    if (v == "bm" || v == "brownian" || v == "brownian-motion")
        return levy::Family::BrownianMotion;
    if (v == "cl" || v == "cramer-lundberg")
        return levy::Family::CramerLundberg;
    if (v == "cp" || v == "compound-poisson")
        return levy::Family::CompoundPoisson;
    fail(ln.number, "unknown family '" + v + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::vector<Line> lines;
    {
        std::stringstream ss(text);
        std::string raw;
        std::string section;
        int number = 0;
        while (std::getline(ss, raw)) {
            ++number;
            const auto cut = raw.find_first_of("#;");
            if (cut != std::string::npos) raw = raw.substr(0, cut);
            const std::string s = trim(raw);
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(number, "unterminated section header");
                section = trim(s.substr(1, s.size() - 2));
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(number, "expected key = value");
            Line ln;
            ln.number = number;
            ln.section = section;
            ln.key = trim(s.substr(0, eq));
            ln.value = trim(s.substr(eq + 1));
            if (section.empty()) fail(number, "key outside any section");
            if (ln.key.empty()) fail(number, "empty key");
            lines.push_back(ln);
        }
    }

    RunConfig c;
    bool have_family = false;
    levy::Family family = levy::Family::BrownianMotion;
    std::map<std::string, double> model_params;
    std::map<std::string, int> model_param_lines;

    for (const Line& ln : lines) {
        if (ln.section == "model") {
            if (ln.key == "family") {
                family = parse_family(ln);
                have_family = true;
            } else if (ln.key == "c" || ln.key == "sigma" ||
                       ln.key == "lambda1" || ln.key == "alpha1" ||
                       ln.key == "lambda2" || ln.key == "alpha2") {
                if (model_params.count(ln.key))
                    fail(ln.number, "duplicate model parameter '" + ln.key + "'");
                model_params[ln.key] = parse_double(ln);
                model_param_lines[ln.key] = ln.number;
            } else {
                fail(ln.number, "unknown model key '" + ln.key + "'");
            }
        } else if (ln.section == "game") {
            if (ln.key == "r")
                c.spec.r = parse_double(ln);
            else if (ln.key == "delta")
                c.spec.delta = parse_double(ln);
            else
                fail(ln.number, "unknown game key '" + ln.key + "'");
        } else if (ln.section == "solve") {
            if (ln.key == "tolerance")
                c.solve.tolerance = parse_double(ln);
            else if (ln.key == "grid")
                c.solve.grid_size = static_cast<int>(parse_int(ln));
            else
                fail(ln.number, "unknown solve key '" + ln.key + "'");
        } else if (ln.section == "mc") {
            if (ln.key == "paths")
                c.sim.paths = parse_int(ln);
            else if (ln.key == "seed")
                c.sim.seed = parse_uint(ln);
            else if (ln.key == "dt")
                c.sim.dt = parse_double(ln);
            else if (ln.key == "horizon")
                c.sim.horizon_cap = parse_double(ln);
            else if (ln.key == "offsets")
                c.offsets = parse_double_list(ln);
            else
                fail(ln.number, "unknown mc key '" + ln.key + "'");
        } else if (ln.section == "table") {
            if (ln.key == "xmin")
                c.table.xmin = parse_double(ln);
            else if (ln.key == "xmax")
                c.table.xmax = parse_double(ln);
            else if (ln.key == "points")
                c.table.points = static_cast<int>(parse_int(ln));
            else
                fail(ln.number, "unknown table key '" + ln.key + "'");
        } else if (ln.section == "output") {
            if (ln.key == "dir")
                c.out_dir = ln.value;
            else
                fail(ln.number, "unknown output key '" + ln.key + "'");
        } else {
            fail(ln.number, "unknown section [" + ln.section + "]");
        }
    }

    if (!have_family)
        throw std::invalid_argument("config: [model] family is required");

    const std::set<std::string> allowed = [&] {
        switch (family) {
            case levy::Family::BrownianMotion:
                return std::set<std::string>{"c", "sigma"};
            case levy::Family::CramerLundberg:
                return std::set<std::string>{"c", "lambda1", "alpha1"};
            case levy::Family::CompoundPoisson:
                return std::set<std::string>{"alpha1", "lambda1", "alpha2",
                                             "lambda2"};
        }
        return std::set<std::string>{};
    }();
    for (const auto& [key, _] : model_params)
        if (!allowed.count(key))
            fail(model_param_lines[key],
                 "'" + key + "' is not a parameter of family " +
                     std::string(levy::family_name(family)));
    for (const std::string& key : allowed)
        if (!model_params.count(key))
            throw std::invalid_argument(
                "config: [model] is missing parameter '" + key + "'");

    switch (family) {
        case levy::Family::BrownianMotion:
            c.spec.model = levy::Model::brownian_motion(model_params["c"],
                                                        model_params["sigma"]);
            break;
        case levy::Family::CramerLundberg:
            c.spec.model = levy::Model::cramer_lundberg(
                model_params["c"], model_params["lambda1"],
                model_params["alpha1"]);
            break;
        case levy::Family::CompoundPoisson:
            c.spec.model = levy::Model::compound_poisson(
                model_params["alpha1"], model_params["lambda1"],
                model_params["alpha2"], model_params["lambda2"]);
            break;
    }

    if (!(std::isfinite(c.spec.r) && c.spec.r > 0.0))
        throw std::invalid_argument("config: r must be positive");
    if (!(std::isfinite(c.spec.delta) && c.spec.delta > 0.0))
        throw std::invalid_argument("config: delta must be positive");
    if (!(c.solve.tolerance > 0.0))
        throw std::invalid_argument("config: tolerance must be positive");
    if (c.solve.grid_size < 2)
        throw std::invalid_argument("config: grid must be at least 2");
    if (c.sim.paths < 1)
        throw std::invalid_argument("config: paths must be at least 1");
    if (c.sim.dt < 0.0 || c.sim.horizon_cap < 0.0)
        throw std::invalid_argument("config: dt and horizon must be >= 0");
    if (c.table.points < 2)
        throw std::invalid_argument("config: points must be at least 2");
    if (!(c.table.xmin < c.table.xmax))
        throw std::invalid_argument("config: need xmin < xmax");
    if (c.out_dir.empty())
        throw std::invalid_argument("config: output dir must not be empty");
    return c;
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    const levy::Model& m = c.spec.model;
    out << "[model]\n";
    out << "family = " << levy::family_name(m.family) << "\n";
    switch (m.family) {
        case levy::Family::BrownianMotion:
            out << "c = " << format_double(m.c) << "\n";
            out << "sigma = " << format_double(m.sigma) << "\n";
            break;
        case levy::Family::CramerLundberg:
            out << "c = " << format_double(m.c) << "\n";
            out << "lambda1 = " << format_double(m.lambda1) << "\n";
            out << "alpha1 = " << format_double(m.alpha1) << "\n";
            break;
        case levy::Family::CompoundPoisson:
            out << "alpha1 = " << format_double(m.alpha1) << "\n";
            out << "lambda1 = " << format_double(m.lambda1) << "\n";
            out << "alpha2 = " << format_double(m.alpha2) << "\n";
            out << "lambda2 = " << format_double(m.lambda2) << "\n";
            break;
    }
    out << "\n[game]\n";
    out << "r = " << format_double(c.spec.r) << "\n";
    out << "delta = " << format_double(c.spec.delta) << "\n";
    out << "\n[solve]\n";
    out << "tolerance = " << format_double(c.solve.tolerance) << "\n";
    out << "grid = " << c.solve.grid_size << "\n";
    out << "\n[mc]\n";
    out << "paths = " << c.sim.paths << "\n";
    out << "seed = " << c.sim.seed << "\n";
    out << "dt = " << format_double(c.sim.dt) << "\n";
    out << "horizon = " << format_double(c.sim.horizon_cap) << "\n";
    out << "offsets =";
    for (std::size_t i = 0; i < c.offsets.size(); ++i)
        out << (i == 0 ? " " : ", ") << format_double(c.offsets[i]);
    out << "\n";
    out << "\n[table]\n";
    out << "xmin = " << format_double(c.table.xmin) << "\n";
    out << "xmax = " << format_double(c.table.xmax) << "\n";
    out << "points = " << c.table.points << "\n";
    out << "\n[output]\n";
    out << "dir = " << c.out_dir << "\n";
    return out.str();
}

}  // namespace dynkin::cli
