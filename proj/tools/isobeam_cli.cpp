// Command-line front end: family profiles, verification suites, spectra.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "isobeam/families.hpp"
#include "isobeam/quadrature.hpp"
#include "isobeam/spectral.hpp"
#include "isobeam/symmetry.hpp"
#include "isobeam/verify.hpp"

using json = nlohmann::ordered_json;
using namespace isobeam;

namespace {

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("ISOBEAM_LOG");
    if (!env) return LogLevel::error;
    std::string v = env;
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    return LogLevel::error;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[isobeam] " << msg << "\n";
}

double parse_fraction(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
}

struct Options {
    std::string sub;                      // family / verify / spectrum / isospec
    std::string family_kind;              // lie / chazy / "" (unit)
    std::string a_text = "1";
    std::string k_text = "1";
    std::vector<std::string> k_multi;     // --k on subcommands serving both families
    std::vector<double> chazy_k{0, 1, 1, 0};
    double C = 1.0, C1 = 0.0, C2 = 0.0;
    std::vector<double> interval{0.0, 1.0};
    int samples = 101;
    double tol_identity = 1e-9;
    double tol_spectra = 1e-3;
    std::string output_path;              // empty = stdout
    std::string format = "json";
    std::string suite;
    std::string sym_case = "both";
    std::string bc_text = "hinged";
    int grid_n = 1000;
    int n_modes = 5;
    bool unit_beam = false;
};

std::string fmt17(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void write_output(const Options& opt, const std::string& payload) {
    if (opt.output_path.empty()) {
        std::cout << payload << "\n";
    } else {
        std::ofstream out(opt.output_path);
        if (!out) throw std::runtime_error("cannot open output file " + opt.output_path);
        out << payload << "\n";
        log_info("wrote " + opt.output_path);
    }
}

json config_json(const Options& opt) {
    json c;
    c["interval"] = opt.interval;
    c["samples"] = opt.samples;
    c["tolerances"] = {{"identity", opt.tol_identity}, {"spectra", opt.tol_spectra}};
    if (!opt.family_kind.empty()) {
        c["family"] = opt.family_kind;
        if (opt.family_kind == "lie") {
            c["a"] = opt.a_text;
            c["k"] = parse_fraction(opt.k_text);
            c["C"] = opt.C;
            c["C1"] = opt.C1;
            c["C2"] = opt.C2;
        } else {
            c["k"] = opt.chazy_k;
        }
    }
    return c;
}

// --k is one fraction for the lie family and four constants for chazy.
void resolve_k(Options& opt) {
    if (opt.k_multi.empty()) return;
    if (opt.family_kind == "chazy") {
        if (opt.k_multi.size() != 4)
            throw std::invalid_argument("chazy family: --k takes four constants k1 k2 k3 k4");
        opt.chazy_k.clear();
        for (const auto& s : opt.k_multi) opt.chazy_k.push_back(parse_fraction(s));
    } else {
        if (opt.k_multi.size() != 1)
            throw std::invalid_argument("--k takes a single value for the lie family");
        opt.k_text = opt.k_multi[0];
    }
}

struct FamilyData {
    ScalarField r;
    BeamCoefficients coeffs;                 // the (A, B) the family solves
    FactorPair fp;                           // (r, s) with s recovered from r and A
    std::function<double(double)> denom;     // pole locator
};

FamilyData build_family(const Options& opt) {
    FamilyData fam;
    if (opt.family_kind == "lie") {
        LieFamilySpec spec{parse(opt.a_text), opt.C, parse_fraction(opt.k_text), opt.C1, opt.C2};
        bool root = false;
        for (double k : k_roots())
            if (std::abs(spec.k - k) < 1e-12) root = true;
        if (!root) throw family_error("lie family: k must be one of 1/4, 1/3, 1");
        fam.r = theorem1_r_field(spec);
        fam.coeffs = theorem1_coeff_fields(spec);
        ExprPtr a = spec.a;
        double C = spec.C, k = spec.k;
        fam.denom = [a, C, k](double z) {
            double av = eval_value(*a, z);
            if (av == 0.0) return 0.0;  // vanishing gauge is as fatal as a pole
            try {
                double Q = quadrature([&](double t) { return 1.0 / eval_value(*a, t); }, 0.0, z,
                                      1e-12);
                return C - k * Q;
            } catch (const quadrature_error&) {
                return 0.0;  // divergent integral of 1/a: gauge vanishes en route
            }
        };
    } else if (opt.family_kind == "chazy") {
        if (opt.chazy_k.size() != 4)
            throw family_error("chazy family: exactly four constants k1..k4 required");
        ChazyFamilySpec spec{opt.chazy_k[0], opt.chazy_k[1], opt.chazy_k[2], opt.chazy_k[3]};
        spec.validate();
        fam.r = chazy_r_field(spec);
        fam.coeffs = unit_coeffs();
        fam.denom = [spec](double z) {
            double P = 3.0 * spec.k3 * z - 2.0 * spec.k1;
            double Q = 3.0 * spec.k4 * z - 2.0 * spec.k2;
            return Q * (-2.0 * P * P * P - Q * Q * Q);
        };
    } else {
        throw family_error("unknown family kind '" + opt.family_kind + "'");
    }
    ScalarField r = fam.r;
    BeamCoefficients coeffs = fam.coeffs;
    fam.fp = FactorPair{r, [r, coeffs](double z, int order) {
                            return s_from_r(r(z, order + 1), coeffs.A(z, order));
                        }};
    return fam;
}

void refuse_poles(const FamilyData& fam, double lo, double hi) {
    auto brackets = scan_zeros(fam.denom, lo, hi, 256, 1e-12);
    if (!brackets.empty()) {
        std::ostringstream os;
        os << "coefficient pole inside interval: bracket [" << brackets[0].first << ", "
           << brackets[0].second << "]";
        throw pole_error(os.str(), brackets[0].first, brackets[0].second);
    }
}

int cmd_family(const Options& opt) {
    FamilyData fam = build_family(opt);
    double lo = opt.interval[0], hi = opt.interval[1];
    refuse_poles(fam, lo, hi);

    std::vector<std::array<double, 7>> rows;  // z r s A B Ahat Bhat
    double max_residual = 0.0;
    for (int i = 0; i < opt.samples; ++i) {
        double z = lo + (hi - lo) * i / (opt.samples - 1);
        Jet rj = fam.r(z, 3);
        Jet A = fam.coeffs.A(z, 2);
        Jet B = fam.coeffs.B(z, 0);
        Jet s = fam.fp.s(z, 0);
        auto [Ahat, Bhat] = hat_coeffs(fam.fp, z, 0);
        max_residual = std::max(max_residual, std::abs(principal_residual(rj, A, B.value())));
        rows.push_back({z, rj.value(), s.value(), A.value(), B.value(), Ahat.value(), Bhat.value()});
    }

    const char* cols[] = {"z", "r", "s", "A", "B", "Ahat", "Bhat"};
    if (opt.format == "csv") {
        std::ostringstream os;
        os << "z,r,s,A,B,Ahat,Bhat";
        for (const auto& row : rows) {
            os << "\n";
            for (std::size_t c = 0; c < 7; ++c) os << (c ? "," : "") << fmt17(row[c]);
        }
        os << "\n# max_principal_residual=" << fmt17(max_residual);
        write_output(opt, os.str());
    } else {
        json out;
        out["command"] = "family";
        out["config"] = config_json(opt);
        json samples = json::object();
        for (std::size_t c = 0; c < 7; ++c) {
            json col = json::array();
            for (const auto& row : rows) col.push_back(row[c]);
            samples[cols[c]] = col;
        }
        out["results"] = {{"samples", samples}};
        out["residuals"] = {{"max_principal", max_residual}};
        out["status"] = max_residual <= opt.tol_identity ? "pass" : "fail";
        write_output(opt, out.dump(2));
    }
    return max_residual <= opt.tol_identity ? 0 : 2;
}

int cmd_verify(Options& opt) {
    resolve_k(opt);
    VerifyOptions vopt;
    vopt.lo = opt.interval[0];
    vopt.hi = opt.interval[1];
    vopt.samples = opt.samples;
    vopt.tol_identity = opt.tol_identity;
    vopt.symmetry_case = opt.sym_case;
    if (opt.family_kind == "lie")
        vopt.lie = LieFamilySpec{parse(opt.a_text), opt.C, parse_fraction(opt.k_text), opt.C1,
                                 opt.C2};
    else if (opt.family_kind == "chazy")
        vopt.chazy = ChazyFamilySpec{opt.chazy_k[0], opt.chazy_k[1], opt.chazy_k[2],
                                     opt.chazy_k[3]};

    std::vector<std::string> names =
        opt.suite.empty() ? suite_names() : std::vector<std::string>{opt.suite};
    json out;
    out["command"] = "verify";
    out["config"] = config_json(opt);
    json results = json::object();
    json residuals = json::object();
    bool all_pass = true;
    for (const auto& name : names) {
        SuiteResult r = run_suite(name, vopt);
        results[name] = {{"pass", r.pass}, {"tolerance", r.tolerance}};
        residuals[name] = r.residuals;
        all_pass = all_pass && r.pass;
        log_info("suite " + name + (r.pass ? ": pass" : ": FAIL"));
    }
    out["results"] = results;
    out["residuals"] = residuals;
    out["status"] = all_pass ? "pass" : "fail";
    write_output(opt, out.dump(2));
    return all_pass ? 0 : 2;
}

json spectrum_json(const Spectrum& s) {
    return {{"eigenvalues", s.eigenvalues},
            {"converged", s.converged},
            {"bc", {to_string(s.bc.left), to_string(s.bc.right)}},
            {"grid_n", s.grid_n},
            {"length", s.length},
            {"reality_warning", s.reality_warning}};
}

BoundaryCondition parse_bc(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        EndCondition e = end_condition_from_string(text);
        return {e, e};
    }
    return {end_condition_from_string(text.substr(0, comma)),
            end_condition_from_string(text.substr(comma + 1))};
}

int cmd_spectrum(Options& opt) {
    resolve_k(opt);
    double lo = opt.interval[0], hi = opt.interval[1];
    BoundaryCondition bc = parse_bc(opt.bc_text);
    BeamCoefficients coeffs = unit_coeffs();
    if (!opt.unit_beam && !opt.family_kind.empty()) {
        FamilyData fam = build_family(opt);
        refuse_poles(fam, lo, hi);
        coeffs = fam.coeffs;
    }
    Spectrum s = compute_spectrum(coeffs, bc, opt.grid_n, hi - lo, opt.n_modes, lo);
    json out;
    out["command"] = "spectrum";
    out["config"] = config_json(opt);
    out["results"] = {{"spectrum", spectrum_json(s)}};
    out["residuals"] = json::object();
    out["status"] = "pass";
    write_output(opt, out.dump(2));
    return 0;
}

int cmd_isospec(Options& opt) {
    resolve_k(opt);
    double lo = opt.interval[0], hi = opt.interval[1];
    FamilyData fam = build_family(opt);
    refuse_poles(fam, lo, hi);
    BoundaryCondition bc = parse_bc(opt.bc_text);
    IsospecReport rep = isospec_report(fam.fp, bc, opt.grid_n, hi - lo, opt.n_modes, lo);
    json out;
    out["command"] = "isospec";
    out["config"] = config_json(opt);
    out["results"] = {{"spectrum_L", spectrum_json(rep.spec_L)},
                      {"spectrum_Lhat", spectrum_json(rep.spec_Lhat)},
                      {"relative_gaps", rep.relative_gaps}};
    out["residuals"] = {{"max_intertwine", rep.max_intertwine_residual}};
    out["status"] = rep.max_intertwine_residual <= opt.tol_identity ? "pass" : "fail";
    write_output(opt, out.dump(2));
    return rep.max_intertwine_residual <= opt.tol_identity ? 0 : 2;
}

// Expand `--config file.json` into command-line tokens inserted right after
// the subcommand, so explicit flags (parsed last) win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<std::string> out;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config requires a path");
            config_path = args[++i];
        } else {
            out.push_back(args[i]);
        }
    }
    if (config_path.empty()) return out;
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot read config file " + config_path);
    json cfg = json::parse(in);
    std::vector<std::string> tokens;
    for (auto& [key, value] : cfg.items()) {
        tokens.push_back("--" + key);
        if (value.is_array())
            for (auto& v : value)
                tokens.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        else if (value.is_boolean()) {
            if (!value.get<bool>()) tokens.pop_back();
        } else
            tokens.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    if (out.empty()) throw std::invalid_argument("--config requires a subcommand");
    // insert after subcommand (and after family sub-kind when present)
    std::size_t insert_at = 1;
    if (out[0] == "family" && out.size() > 1 && !out[1].empty() && out[1][0] != '-') insert_at = 2;
    out.insert(out.begin() + insert_at, tokens.begin(), tokens.end());
    return out;
}

void add_lie_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--a", opt.a_text, "gauge function a(z)");
    cmd->add_option("--C", opt.C, "integration constant C");
    cmd->add_option("--C1", opt.C1, "constant C1");
    cmd->add_option("--C2", opt.C2, "constant C2");
}

// for subcommands serving both families: --k takes one fraction (lie) or
// four constants (chazy)
void add_mixed_family_flags(CLI::App* cmd, Options& opt) {
    add_lie_flags(cmd, opt);
    cmd->add_option("--k", opt.k_multi, "lie k (one fraction) or chazy k1 k2 k3 k4")
        ->expected(1, 4);
}

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--interval", opt.interval, "working interval lo hi")->expected(2);
    cmd->add_option("--samples", opt.samples, "sample count");
    cmd->add_option("--tol", opt.tol_identity, "identity/residual tolerance");
    cmd->add_option("--tol-spectra", opt.tol_spectra, "spectra relative tolerance");
    cmd->add_option("--output,-o", opt.output_path, "output file (default stdout)");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"iso-spectral beam families via operator factorization"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* family = app.add_subcommand("family", "emit a family coefficient profile");
    family->require_subcommand(1);
    CLI::App* lie = family->add_subcommand("lie", "one-symmetry quadrature family");
    CLI::App* chazy = family->add_subcommand("chazy", "rational Chazy-derived family");
    add_lie_flags(lie, opt);
    lie->add_option("--k", opt.k_text, "k in {1/4, 1/3, 1} (fractions accepted)");
    chazy->add_option("--k", opt.chazy_k, "constants k1 k2 k3 k4")->expected(4);
    add_common_flags(lie, opt);
    add_common_flags(chazy, opt);

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", opt.suite, "suite name (default: all)")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--case", opt.sym_case, "symmetry case: I, II, or both")
        ->check(CLI::IsMember({"I", "II", "both"}));
    verify->add_option("--family", opt.family_kind, "narrow principal suite: lie or chazy");
    add_mixed_family_flags(verify, opt);
    add_common_flags(verify, opt);

    CLI::App* spectrum = app.add_subcommand("spectrum", "discretized beam spectrum");
    spectrum->add_flag("--unit", opt.unit_beam, "unit beam A=B=0");
    spectrum->add_option("--family", opt.family_kind, "family kind: lie or chazy");
    add_mixed_family_flags(spectrum, opt);
    spectrum->add_option("--bc", opt.bc_text, "boundary conditions, e.g. hinged or clamped,free");
    spectrum->add_option("--grid-n", opt.grid_n, "interior grid points");
    spectrum->add_option("--modes", opt.n_modes, "number of modes");
    add_common_flags(spectrum, opt);

    CLI::App* isospec = app.add_subcommand("isospec", "side-by-side spectra of L and Lhat");
    isospec->add_option("--family", opt.family_kind, "family kind: lie or chazy")->required();
    add_mixed_family_flags(isospec, opt);
    isospec->add_option("--bc", opt.bc_text, "boundary conditions");
    isospec->add_option("--grid-n", opt.grid_n, "interior grid points");
    isospec->add_option("--modes", opt.n_modes, "number of modes");
    add_common_flags(isospec, opt);

    try {
        auto args = expand_config(argc, argv);
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());

        if (family->parsed()) {
            opt.family_kind = lie->parsed() ? "lie" : "chazy";
            return cmd_family(opt);
        }
        if (verify->parsed()) return cmd_verify(opt);
        if (spectrum->parsed()) return cmd_spectrum(opt);
        if (isospec->parsed()) return cmd_isospec(opt);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const pole_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const family_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const eval_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
}
