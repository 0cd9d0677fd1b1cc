// Command-line surface: reproducible experiments over the library modules.
// Exit codes: 0 ok, 1 invariant failure, 2 usage/parse error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "llab/capacity.hpp"
#include "llab/csvio.hpp"
#include "llab/effective.hpp"
#include "llab/geometry.hpp"
#include "llab/profile.hpp"
#include "llab/resolvent1d.hpp"
#include "llab/suites.hpp"
#include "llab/toeplitz.hpp"

using namespace llab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void line_col(const std::string& text, size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

PlanarSet load_planar(const std::string& path) {
    std::string text = read_file(path);
    try {
        return planar_set_from_json(text);
    } catch (const json::parse_error& e) {
        int line, col;
        line_col(text, e.byte, line, col);
        throw std::invalid_argument(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                    ": " + e.what());
    }
}

Domain3D load_domain(const std::string& path) {
    std::string text = read_file(path);
    try {
        return domain3d_from_json(text);
    } catch (const json::parse_error& e) {
        int line, col;
        line_col(text, e.byte, line, col);
        throw std::invalid_argument(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                    ": " + e.what());
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

int cmd_capacity(const std::string& geometry, const std::string& schedule_str, std::uint64_t seed,
                 double tol, const std::string& out) {
    PlanarSet set = load_planar(geometry);
    std::vector<int> schedule = parse_int_list(schedule_str);
    FeketeConfig cfg;
    cfg.seed = seed;
    cfg.move_tol = std::max(tol, 1e-14);
    CapacityEstimate est = capacity(set, schedule, cfg);

    json config{{"command", "capacity"}, {"geometry", json::parse(planar_set_to_json(set))},
                {"schedule", schedule},  {"seed", seed}};
    CsvWriter csv(config.dump(), {"n", "d_n"});
    for (auto& [n, d] : est.diameters) csv.add_row({static_cast<double>(n), d});

    int rc = kExitOk;
    if (const auto* u = std::get_if<UnionSet>(&set.shape)) {
        // report monotonicity against each member
        for (size_t i = 0; i < u->members.size(); ++i) {
            CapacityEstimate sub = capacity(*u->members[i], schedule, cfg);
            bool ok = est.value >= sub.value - 0.02 * sub.value;
            csv.add_comment("member " + std::to_string(i) + " capacity " + format_double(sub.value) +
                            " monotone " + (ok ? "yes" : "NO"));
            if (!ok) rc = kExitInvariant;
        }
    }
    csv.write_file(out + ".csv");
    std::ofstream jf(out + ".json");
    jf << capacity_estimate_to_json(est) << "\n";
    std::cout << "capacity " << format_double(est.value) << " residual " << format_double(est.residual)
              << (est.extrapolated ? "" : " (low confidence)") << "\n";
    if (!est.monotone) rc = kExitInvariant;
    return rc;
}

int cmd_toeplitz(const std::string& geometry, int q, double b, int K, std::uint64_t seed,
                 double tol, const std::string& out) {
    PlanarSet set = load_planar(geometry);
    int order = K + q + 20 + std::max(0, static_cast<int>(-std::log10(std::max(tol, 1e-15))) - 10);
    TruncatedOperator op = toeplitz_matrix(set, q, b, K, order);
    SpectralSequence seq = spectrum(op);
    std::vector<double> lognu = log_spectrum(set, q, b, K, order);

    FeketeConfig cfg;
    cfg.seed = seed;
    CapacityEstimate cap_est = capacity(set, {48, 96, 144}, cfg);
    double cc = threshold_constant(b, cap_est.value);

    const bool is_disk = std::holds_alternative<Disk>(set.shape);
    double off_diag = 0.0;
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j)
            if (i != j) off_diag = std::max(off_diag, std::abs(op.entries(i, j)));

    json config{{"command", "toeplitz"}, {"geometry", json::parse(planar_set_to_json(set))},
                {"q", q},                {"b", b},
                {"K", K},                {"seed", seed}};
    std::vector<std::string> cols = {"k", "nu", "ln_nu", "certified", "resid_over_k"};
    if (is_disk) {
        cols.push_back("oracle_nu");
        cols.push_back("oracle_diff");
    }
    CsvWriter csv(config.dump(), cols);
    csv.add_comment("capacity_estimate " + format_double(cap_est.value));
    if (is_disk) csv.add_comment(std::string("diagonal ") + (off_diag < 1e-10 ? "yes" : "no"));
    double r = is_disk ? std::get<Disk>(set.shape).radius : 0.0;
    for (int k = 0; k <= K; ++k) {
        double resid = k >= 1 ? (lognu[k] + k * std::log(static_cast<double>(k)) -
                                 (cc - std::log(2.0)) * k) /
                                    k
                              : 0.0;
        std::vector<double> row{static_cast<double>(k), seq.nu[k], lognu[k],
                                k < seq.certified ? 1.0 : 0.0, resid};
        if (is_disk) {
            double oracle = radial_disk_eigenvalue(r, q, b, k);
            row.push_back(oracle);
            row.push_back(std::fabs(seq.nu[k] - oracle));
        }
        csv.add_row(row);
    }
    csv.write_file(out);
    std::cout << "toeplitz spectrum written: " << out << "\n";
    return kExitOk;
}

int cmd_ssf(const std::string& geometry3d, double cap_arg, double b, int q,
            const std::string& side_str, const std::string& boundary_str,
            const std::string& lnlam_str, std::uint64_t seed, const std::string& out) {
    double cap;
    std::string provenance;
    json geom_json;
    if (cap_arg > 0.0) {
        cap = cap_arg;
        provenance = "user";
        geom_json = nullptr;
    } else {
        if (geometry3d.empty())
            throw std::invalid_argument("ssf: provide --geometry3d or --cap");
        Domain3D dom = load_domain(geometry3d);
        PlanarSet proj = project_transverse(dom);
        FeketeConfig cfg;
        cfg.seed = seed;
        cap = capacity(proj, {48, 96, 144}, cfg).value;
        provenance = "caplib";
        geom_json = json::parse(planar_set_to_json(proj));
    }
    Side side = side_str == "below" ? Side::below : Side::above;
    BoundaryCondition bc =
        boundary_str == "dirichlet" ? BoundaryCondition::dirichlet : BoundaryCondition::neumann;
    std::vector<double> lnlams = parse_double_list(lnlam_str);
    for (double ll : lnlams) {
        AsymptoticProfile p = profile(ll, true);
        if (!p.valid_ln3)
            throw std::invalid_argument(
                "ssf: schedule point ln(lambda)=" + format_double(ll) +
                " is too shallow; the nested logarithm needs lambda < e^{-e} (ln lambda < -e)");
    }

    json config{{"command", "ssf"},   {"b", b},     {"q", q},
                {"side", side_str},   {"boundary", boundary_str},
                {"cap", cap},         {"cap_provenance", provenance},
                {"geometry", geom_json}, {"ln_lambda", lnlams}, {"seed", seed}};
    CsvWriter csv(config.dump(), {"lambda_log", "value", "bounded_flag", "constant_used"});
    if (side == Side::below && bc == BoundaryCondition::neumann)
        csv.add_comment(
            "interpretation: minus the value counts exterior eigenvalues accumulating below the "
            "lowest threshold");
    for (double ll : lnlams) {
        SsfPrediction pred = ssf_predict(q, side, bc, profile(ll, true), b, cap, provenance);
        csv.add_row({ll, pred.value, pred.bounded_flag ? 1.0 : 0.0, pred.constant_used});
    }
    csv.write_file(out);
    std::cout << "ssf predictions written: " << out << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
    SuiteReport rep;
    try {
        // the deep-oracle suites also export their ratio tables
        if (suite == "msf1")
            rep = suite_msf1(out);
        else if (suite == "msf2")
            rep = suite_msf2(out);
        else
            rep = run_suite(suite, seed);
    } catch (const std::invalid_argument&) {
        std::cerr << "unknown suite: " << suite << "\nknown suites:";
        for (auto& s : known_suites()) std::cerr << " " << s;
        std::cerr << "\n";
        return kExitUsage;
    }
    if (suite != "msf1" && suite != "msf2" && !out.empty()) {
        json config{{"command", "verify"}, {"suite", suite}, {"seed", seed}};
        CsvWriter csv(config.dump(), {"check", "passed", "total", "failures", "worst"});
        for (auto& c : rep.checks)
            csv.add_row_raw({c.name, c.passed ? "1" : "0", std::to_string(c.total),
                             std::to_string(c.failures), format_double(c.worst)});
        csv.write_file(out);
    }
    for (auto& c : rep.checks)
        std::cout << (c.passed ? "pass " : "FAIL ") << suite << "/" << c.name << " " << c.total - c.failures
                  << "/" << c.total << " worst " << format_double(c.worst) << "\n";
    return rep.passed() ? kExitOk : kExitInvariant;
}

int cmd_effective(int q, double b, int n, double amplitude, const std::string& out) {
    double amp = amplitude;
    CutoffField cf = sample_cutoff(
        [amp](double x, double y, double z) { return amp * std::exp(-(x * x + y * y) - z * z); }, n,
        n, n + 1, 12.0, 12.0, 12.0, b, q);
    WeightMatrixField wf = weight_fields(cf);
    Grid2 ups = effective_potential(wf, q, b);
    double mu = potential_max(ups);

    json config{{"command", "effective"}, {"q", q}, {"b", b}, {"grid", n}, {"amplitude", amplitude}};
    CsvWriter csv(config.dump(), {"x1", "x2", "value"});
    csv.add_comment("mu_q " + format_double(mu));
    for (int ix = 0; ix < ups.nx; ++ix)
        for (int iy = 0; iy < ups.ny; ++iy)
            csv.add_row({ups.x(ix), ups.y(iy), ups.v[static_cast<size_t>(ix) * ups.ny + iy]});
    csv.write_file(out);
    std::cout << "effective potential written: " << out << " (max " << format_double(mu) << ")\n";
    return kExitOk;
}

int cmd_resolvent(const std::string& e_list, const std::string& cutoff_kind, double p0, double p1,
                  double tol, const std::string& out) {
    Cutoff1D w = [&] {
        if (cutoff_kind == "indicator") return Cutoff1D::indicator(p0, p1);
        if (cutoff_kind == "gaussian") return Cutoff1D::gaussian(p0, p1);
        if (cutoff_kind == "bump") return Cutoff1D::bump(p0, p1);
        throw std::invalid_argument("resolvent: unknown cutoff kind " + cutoff_kind);
    }();
    std::vector<double> energies = parse_double_list(e_list);
    json config{
        {"command", "resolvent"}, {"E", energies}, {"cutoff", cutoff_kind}, {"p0", p0}, {"p1", p1}};
    CsvWriter csv(config.dump(), {"E", "variant", "hs_norm", "bound", "within_bound"});
    int rc = kExitOk;
    for (double E : energies) {
        for (auto var : {KernelVariant::plain, KernelVariant::tilde}) {
            int order = std::clamp(8 * static_cast<int>(-std::log10(std::max(tol, 1e-15))), 48, 160);
            auto r = hs_norm({E, var}, w, order);
            bool ok = r.norm <= r.bound + 1e-12;
            if (!ok) rc = kExitInvariant;
            csv.add_row_raw({format_double(E), var == KernelVariant::plain ? "plain" : "tilde",
                             format_double(r.norm), format_double(r.bound), ok ? "1" : "0"});
        }
    }
    csv.write_file(out);
    std::cout << "resolvent norms written: " << out << "\n";
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for threshold spectral asymptotics in constant magnetic fields"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");

    std::string geometry, out = "out.csv", schedule = "64,96,128,160,200";
    std::uint64_t seed = 1;
    double tol = 1e-10;
    int q = 0, K = 40, grid_n = 96;
    double b = 2.0, cap = -1.0, amplitude = 1.0, p0 = 0.0, p1 = 1.0;
    std::string side = "below", boundary = "neumann", lnlams = "-1000,-10000,-26000";
    std::string suite = "weyl", geometry3d, cutoff_kind = "gaussian", e_list = "-1.0,1.0";

    auto* cap_cmd = app.add_subcommand("capacity", "capacity of a planar set by Fekete points");
    cap_cmd->add_option("--geometry", geometry, "geometry JSON file")->required();
    cap_cmd->add_option("--schedule", schedule, "comma-separated point counts");
    cap_cmd->add_option("--seed", seed);
    cap_cmd->add_option("--tol", tol, "optimizer convergence tolerance");
    cap_cmd->add_option("--out", out, "output path prefix (.json/.csv appended)");

    auto* toe_cmd = app.add_subcommand("toeplitz", "level compression of a set indicator");
    toe_cmd->add_option("--geometry", geometry)->required();
    toe_cmd->add_option("--q", q)->check(CLI::NonNegativeNumber);
    toe_cmd->add_option("--b", b)->check(CLI::PositiveNumber);
    toe_cmd->add_option("--K", K)->check(CLI::NonNegativeNumber);
    toe_cmd->add_option("--seed", seed);
    toe_cmd->add_option("--tol", tol, "extra quadrature accuracy (smaller = more nodes)");
    toe_cmd->add_option("--out", out);

    auto* ssf_cmd = app.add_subcommand("ssf", "spectral-shift predictions near a threshold");
    ssf_cmd->add_option("--geometry3d", geometry3d, "3D obstacle JSON file");
    ssf_cmd->add_option("--cap", cap, "capacity supplied directly (skips the estimator)");
    ssf_cmd->add_option("--b", b)->check(CLI::PositiveNumber);
    ssf_cmd->add_option("--q", q)->check(CLI::NonNegativeNumber);
    ssf_cmd->add_option("--side", side)->check(CLI::IsMember({"below", "above"}));
    ssf_cmd->add_option("--boundary", boundary)->check(CLI::IsMember({"dirichlet", "neumann"}));
    ssf_cmd->add_option("--log-lambda", lnlams, "comma-separated ln(lambda) values");
    ssf_cmd->add_option("--seed", seed);
    ssf_cmd->add_option("--out", out);

    auto* ver_cmd = app.add_subcommand("verify", "run a property suite");
    ver_cmd->add_option("--suite", suite)->required();
    ver_cmd->add_option("--seed", seed);
    ver_cmd->add_option("--out", out);

    auto* eff_cmd = app.add_subcommand("effective", "effective potential of a Gaussian cutoff");
    eff_cmd->add_option("--q", q)->check(CLI::NonNegativeNumber);
    eff_cmd->add_option("--b", b)->check(CLI::PositiveNumber);
    eff_cmd->add_option("--grid", grid_n);
    eff_cmd->add_option("--amplitude", amplitude);
    eff_cmd->add_option("--out", out);

    auto* res_cmd = app.add_subcommand("resolvent", "1D resolvent kernel norms vs bounds");
    res_cmd->add_option("--E", e_list, "comma-separated energies");
    res_cmd->add_option("--cutoff", cutoff_kind)->check(CLI::IsMember({"indicator", "gaussian", "bump"}));
    res_cmd->add_option("--p0", p0, "cutoff parameter (lo / center)");
    res_cmd->add_option("--p1", p1, "cutoff parameter (hi / width)");
    res_cmd->add_option("--tol", tol, "quadrature accuracy (smaller = more nodes)");
    res_cmd->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(cap_cmd)) return cmd_capacity(geometry, schedule, seed, tol, out);
        if (app.got_subcommand(toe_cmd)) return cmd_toeplitz(geometry, q, b, K, seed, tol, out);
        if (app.got_subcommand(ssf_cmd))
            return cmd_ssf(geometry3d, cap, b, q, side, boundary, lnlams, seed, out);
        if (app.got_subcommand(ver_cmd)) return cmd_verify(suite, seed, out);
        if (app.got_subcommand(eff_cmd)) return cmd_effective(q, b, grid_n, amplitude, out);
        if (app.got_subcommand(res_cmd)) return cmd_resolvent(e_list, cutoff_kind, p0, p1, tol, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitUsage;
}
