// vicsek: spectral decimation on the Vicsek set from the command line.
//
// Exit codes: 0 success / all properties pass, 1 a property failed,
// 2 bad input, resource caps or solver failures.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <vicsek/vicsek.hpp>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitProperty = 1;
constexpr int kExitInfra = 2;

struct FieldSpec {
    std::string basis = "u1";
    std::vector<double> coeffs;

    std::array<double, 3> combination() const {
        if (!coeffs.empty()) {
            if (coeffs.size() != 3) throw vicsek::domain_error("--coeffs needs exactly three values");
            return {coeffs[0], coeffs[1], coeffs[2]};
        }
        if (basis == "u1") return {1, 0, 0};
        if (basis == "u2") return {0, 1, 0};
        if (basis == "u3") return {0, 0, 1};
        if (basis == "zero") return {0, 0, 0};
        throw vicsek::domain_error("unknown basis '" + basis + "'");
    }

    std::string label() const {
        if (coeffs.empty()) return basis;
        std::ostringstream os;
        os << "c=(" << coeffs[0] << "," << coeffs[1] << "," << coeffs[2] << ")";
        return os.str();
    }
};

void add_field_options(CLI::App* cmd, FieldSpec& f) {
    cmd->add_option("--basis", f.basis, "u1, u2, u3 or zero")->check(CLI::IsMember({"u1", "u2", "u3", "zero"}));
    cmd->add_option("--coeffs", f.coeffs, "c1 c2 c3 for c1*u1 + c2*u2 + c3*u3")->expected(3)->delimiter(',');
}

/// Writes to `path`, or stdout when empty.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw vicsek::error("cannot open '" + path + "' for writing");
    write(os);
    os.flush();
    if (!os) throw vicsek::error("write to '" + path + "' failed");
}

vicsek::EigenfunctionField field_at(const FieldSpec& f, int level) {
    const vicsek::EigenBasis basis(level);
    return basis.combination(f.combination(), level);
}

template <class T>
std::string num(const T& x, int digits) {
    if constexpr (std::is_same_v<T, double>) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.*g", digits, x);
        return buf;
    } else {
        return x.str(digits);
    }
}

template <class T>
int run_lambda2(int levels, bool limit, const std::string& format, const std::string& out) {
    const auto s = limit ? vicsek::lambda2_limit<T>() : vicsek::lambda_sequence<T>(levels);
    const int digits = std::is_same_v<T, double> ? 17 : 40;
    const bool high = !std::is_same_v<T, double>;
    emit(out, [&](std::ostream& os) {
        if (format == "json") {
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t m = 0; m < s.lambdas.size(); ++m)
                rows.push_back({{"m", m},
                                {"lambda", num(s.lambdas[m], digits)},
                                {"estimate", num(s.estimates[m], digits)},
                                {"delta", num(s.deltas[m], 6)}});
            nlohmann::json j = {{"precision", high ? "high" : "double"},
                                {"levels", s.lambdas.size() - 1},
                                {"converged", s.converged},
                                {"lambda2", num(s.estimates.back(), digits)},
                                {"table", rows}};
            os << j.dump(2) << '\n';
            return;
        }
        os << "# precision " << (high ? "high" : "double") << ", levels " << s.lambdas.size() - 1 << '\n';
        os << "# m lambda_m 15^m*lambda_m delta\n";
        for (std::size_t m = 0; m < s.lambdas.size(); ++m)
            os << m << ' ' << num(s.lambdas[m], digits) << ' ' << num(s.estimates[m], digits) << ' '
               << num(s.deltas[m], 6) << '\n';
        os << "lambda2 " << num(s.estimates.back(), digits) << '\n';
    });
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral decimation and hot-spots verification on the Vicsek set"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "vicsek 1.0.0");

    // lambda2
    int l2_levels = 20;
    std::string precision = "double", l2_format = "text", l2_out;
    bool l2_limit = false;
    auto* lambda2 = app.add_subcommand("lambda2", "Decimation sequence and the lambda2 estimate");
    lambda2->add_option("-m,--levels", l2_levels, "Levels M")->check(CLI::Range(1, 200));
    lambda2->add_option("--precision", precision)->check(CLI::IsMember({"double", "high"}));
    lambda2->add_flag("--limit", l2_limit, "Iterate until the estimate settles (ignores --levels)");
    lambda2->add_option("--format", l2_format)->check(CLI::IsMember({"text", "json"}));
    lambda2->add_option("--out", l2_out, "Output file (default stdout)");

    // extend
    FieldSpec ext_field;
    int ext_level = 1;
    std::string ext_out;
    auto* extend = app.add_subcommand("extend", "Extended eigenfunction on V_m as CSV");
    add_field_options(extend, ext_field);
    extend->add_option("-m,--levels", ext_level, "Level m")->check(CLI::NonNegativeNumber);
    extend->add_option("--out", ext_out, "Output file (default stdout)");

    // spectrum
    int sp_count = 10, sp_cap = 6;
    std::string sp_format = "text", sp_out;
    auto* spectrum = app.add_subcommand("spectrum", "Lowest Neumann eigenvalues from decimation words");
    spectrum->add_option("--count", sp_count)->check(CLI::PositiveNumber);
    spectrum->add_option("--level-cap", sp_cap);
    spectrum->add_option("--format", sp_format)->check(CLI::IsMember({"text", "json"}));
    spectrum->add_option("--out", sp_out);

    // verify
    vicsek::VerifyConfig cfg;
    std::string suite = "all", v_out;
    std::optional<int> v_depth;
    double corrupt = 0.0;
    auto* verify = app.add_subcommand("verify", "Run property suites; JSON report, exit 0 iff all pass");
    verify->add_option("suite", suite)->check(CLI::IsMember(vicsek::suite_names()));
    verify->add_option("--depth", v_depth, "Address depth for partition, sweeps and symmetry");
    verify->add_option("-m,--levels", cfg.hotspot_level, "Graph level for hot-spots trials")->check(CLI::Range(0, 8));
    verify->add_option("--grid", cfg.grid, "Grid size for identities")->check(CLI::Range(2, 10000000));
    verify->add_option("--trials", cfg.trials, "Random eigencombinations")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", cfg.seed, "PRNG seed");
    verify->add_option("--out", v_out, "Report file (default stdout)");
    auto* corrupt_opt = verify->add_option("--corrupt-alpha", corrupt, "Scale alpha by (1+x) in the recursion (fault injection)");

    // plot
    FieldSpec plot_field;
    int plot_level = 2;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot", "SVG rendering of an extended eigenfunction");
    add_field_options(plot, plot_field);
    plot->add_option("-m,--levels", plot_level)->check(CLI::NonNegativeNumber);
    plot->add_option("--out", plot_out)->required();

    // export
    int ex_level = 1;
    std::string ex_out, ex_format = "csv";
    auto* exportc = app.add_subcommand("export", "Vertex and edge tables of Gamma_m");
    exportc->add_option("-m,--levels", ex_level)->check(CLI::NonNegativeNumber);
    exportc->add_option("--format", ex_format)->check(CLI::IsMember({"csv", "json"}));
    exportc->add_option("--out", ex_out, "Output prefix: <out>.vertices.csv and <out>.edges.csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInfra;
    }

    try {
        if (*lambda2) {
            return precision == "high" ? run_lambda2<vicsek::HighFloat>(l2_levels, l2_limit, l2_format, l2_out)
                                       : run_lambda2<double>(l2_levels, l2_limit, l2_format, l2_out);
        }
        if (*extend) {
            const auto g = vicsek::build_graph(ext_level);
            const auto u = field_at(ext_field, ext_level);
            emit(ext_out, [&](std::ostream& os) { vicsek::write_vertex_csv(os, g, &u); });
            return kExitPass;
        }
        if (*spectrum) {
            const auto entries = vicsek::enumerate_spectrum(sp_count, sp_cap);
            emit(sp_out, [&](std::ostream& os) {
                if (sp_format == "json") {
                    nlohmann::json rows = nlohmann::json::array();
                    for (const auto& e : entries)
                        rows.push_back({{"eigenvalue", e.eigenvalue},
                                        {"multiplicity", e.multiplicity},
                                        {"word", e.word.str()}});
                    os << nlohmann::json{{"count", sp_count}, {"level_cap", sp_cap}, {"spectrum", rows}}.dump(2) << '\n';
                    return;
                }
                os << "# eigenvalue multiplicity series word\n";
                for (const auto& e : entries)
                    os << num(e.eigenvalue, 15) << ' ' << e.multiplicity << ' '
                       << (e.word.series == vicsek::Series::Zero ? "0" : "4/3") << ' ' << e.word.str() << '\n';
            });
            return kExitPass;
        }
        if (*verify) {
            if (v_depth) {
                cfg.depth = *v_depth;
                cfg.symmetry_depth = std::min(*v_depth, cfg.symmetry_depth);
                cfg.evaluator_depth = std::min(*v_depth, cfg.evaluator_depth);
            }
            if (corrupt_opt->count() > 0) cfg.corrupt_alpha = corrupt;
            const auto rep = vicsek::run_suite(suite, cfg);
            emit(v_out, [&](std::ostream& os) { os << rep.to_json().dump(2) << '\n'; });
            std::cerr << "verify " << suite << ": " << (rep.pass() ? "PASS" : "FAIL") << " (" << rep.results.size()
                      << " properties, seed " << cfg.seed << ")\n";
            for (const auto& name : rep.failures()) std::cerr << "  failed: " << name << '\n';
            return rep.pass() ? kExitPass : kExitProperty;
        }
        if (*plot) {
            const auto g = vicsek::build_graph(plot_level);
            const auto u = field_at(plot_field, plot_level);
            vicsek::SvgOptions opt;
            opt.title = plot_field.label() + " on level " + std::to_string(plot_level);
            emit(plot_out, [&](std::ostream& os) { vicsek::write_svg(os, g, u, opt); });
            return kExitPass;
        }
        if (*exportc) {
            const auto g = vicsek::build_graph(ex_level);
            if (ex_format == "json") {
                emit(ex_out + ".json", [&](std::ostream& os) {
                    nlohmann::json verts = nlohmann::json::array();
                    for (vicsek::VertexId v = 0; v < g.vertex_count(); ++v) {
                        const auto p = g.point(v);
                        verts.push_back({{"id", v},
                                         {"x", {p.x.numerator(), p.x.denominator()}},
                                         {"y", {p.y.numerator(), p.y.denominator()}},
                                         {"degree", g.degree(v)},
                                         {"is_boundary", g.is_boundary(v)}});
                    }
                    nlohmann::json edges = nlohmann::json::array();
                    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
                    os << nlohmann::json{{"level", g.level()}, {"vertices", verts}, {"edges", edges}}.dump(2) << '\n';
                });
            } else {
                emit(ex_out + ".vertices.csv", [&](std::ostream& os) { vicsek::write_vertex_csv(os, g); });
                emit(ex_out + ".edges.csv", [&](std::ostream& os) { vicsek::write_edge_csv(os, g); });
            }
            return kExitPass;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfra;
    }
    return kExitInfra;
}
