#include "dynkin/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "dynkin/report.hpp"

namespace dynkin::cli {

namespace {

namespace fs = std::filesystem;

// Emitting a document that does not match its shipped schema is a bug, not a
// user error; fail loudly instead of writing the file.
void enforce_schema(const nlohmann::ordered_json& doc, const char* schema_text,
                    const char* what) {
    const auto schema = nlohmann::json::parse(schema_text);
    const auto errs = schema_errors(doc, schema);
    if (errs.empty()) return;
    std::string msg = std::string(what) + " violates its schema:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw std::logic_error(msg);
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + file.string());
    out << text;
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

void print_summary(const game::Solution& s) {
    std::printf("model      %s\n",
                levy::family_name(s.spec.model.family));
    std::printf("factors    r_I=%.12g r_S=%.12g pi_I=%.12g pi_S=%.12g\n",
                s.factors.rate_inf, s.factors.rate_sup, s.factors.atom_inf,
                s.factors.atom_sup);
    std::printf("gap        u=%.12g\n", s.gap);
    std::printf("thresholds x_I=%.12g x_S=%.12g\n", s.x_inf, s.x_sup);
    std::printf("coeffs     A_I=%.12g A_S=%.12g\n", s.coeff_inf, s.coeff_sup);
    std::printf("jumps      jump_I=%.12g jump_S=%.12g\n", s.jump_inf,
                s.jump_sup);
    std::printf("certified  %s\n", s.certified ? "yes" : "no");
}

}  // namespace

int cmd_solve(const RunConfig& cfg) {
    const auto s = game::solve(cfg.spec, cfg.solve);
    const auto doc = solution_json(s);
    enforce_schema(doc, solution_schema_text(), "solution.json");
    const auto dir = prepare_out_dir(cfg);
    write_text(dir / "solution.json", doc.dump(2) + "\n");
    print_summary(s);
    std::printf("wrote      %s\n", (dir / "solution.json").c_str());
    return s.certified ? exit_ok : exit_uncertified;
}

int cmd_value_table(const RunConfig& cfg) {
    const auto s = game::solve(cfg.spec, cfg.solve);
    const auto dir = prepare_out_dir(cfg);

    std::string csv = "x,V,G1,G2,region\n";
    const int n = cfg.table.points;
    for (int i = 0; i < n; ++i) {
        const double x =
            cfg.table.xmin + (cfg.table.xmax - cfg.table.xmin) * i / (n - 1);
        csv += format_double(x);
        csv += ',';
        csv += format_double(game::value(s, x));
        csv += ',';
        csv += format_double(x - cfg.spec.delta);
        csv += ',';
        csv += format_double(x + cfg.spec.delta);
        csv += ',';
        csv += game::region_name(game::region(s, x));
        csv += '\n';
    }
    write_text(dir / "value_table.csv", csv);
    print_summary(s);
    std::printf("wrote      %s (%d rows)\n",
                (dir / "value_table.csv").c_str(), n);
    return s.certified ? exit_ok : exit_uncertified;
}

int cmd_verify(const RunConfig& cfg) {
    const auto s = game::solve(cfg.spec, cfg.solve);
    const auto outcome = run_verify(s, cfg);
    enforce_schema(outcome.doc, verify_schema_text(), "verify.json");
    const auto dir = prepare_out_dir(cfg);
    write_text(dir / "verify.json", outcome.doc.dump(2) + "\n");
    print_summary(s);
    if (outcome.certified) {
        const auto& doc = outcome.doc;
        std::printf("identity   max_error=%.3e pass=%s\n",
                    doc["identity"]["max_error"].get<double>(),
                    doc["identity"]["pass"].get<bool>() ? "yes" : "no");
        std::printf("extrema    gated=%s pass=%s\n",
                    doc["extrema"]["gated"].get<bool>() ? "yes" : "no",
                    doc["extrema"]["pass"].get<bool>() ? "yes" : "no");
        std::printf("payoff     cells=%zu pass=%s\n",
                    doc["payoff"]["cells"].size(),
                    doc["payoff"]["pass"].get<bool>() ? "yes" : "no");
        std::printf("saddle     cells=%zu pass=%s\n",
                    doc["saddle"]["cells"].size(),
                    doc["saddle"]["pass"].get<bool>() ? "yes" : "no");
    }
    std::printf("verify     %s\n", outcome.pass ? "PASS" : "FAIL");
    std::printf("wrote      %s\n", (dir / "verify.json").c_str());
    if (outcome.pass) return exit_ok;
    return outcome.certified ? exit_verify : exit_uncertified;
}

}  // namespace dynkin::cli
