// Command-line front end: compute / eval / isogenous / heights / fixture.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fricke/atkin.hpp"
#include "fricke/eisenval.hpp"
#include "fricke/fricke_float.hpp"
#include "fricke/fricke_series.hpp"
#include "fricke/formbasis.hpp"
#include "fricke/volcano.hpp"

namespace {

using namespace fricke;
namespace fs = std::filesystem;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitDegenerate = 4;

struct ComputeConfig {
    long ell = 0;
    long N = 0;
    std::string family = "U";
    std::string form = "E4";
    std::string method = "series";
    long disc = 0;
    u64 prime = 0;
    std::string classpoly;
    int order_guard = 4;
    int prec_guard = 64;
    double rho_step = 0.1;
    u64 seed = 0x5eed5eedULL;
    int jobs = 1;
    std::string output;
    std::string text_output;
    std::string cache_dir;
};

FormTag parse_form(const std::string& s) {
    if (s == "E4") return FormTag::E4;
    if (s == "E6") return FormTag::E6;
    if (s == "Delta") return FormTag::Delta;
    throw std::invalid_argument("unknown form: " + s);
}

std::string cache_path(const ComputeConfig& cfg, const std::string& fam) {
    std::ostringstream os;
    os << cfg.cache_dir << "/" << fam << "_" << cfg.ell << "_" << cfg.method << ".json";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write: " + path);
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::map<std::string, std::string> meta_common(const ComputeConfig& cfg, double ms) {
    std::map<std::string, std::string> meta;
    meta["method"] = cfg.method;
    meta["seed"] = std::to_string(cfg.seed);
    meta["elapsed_ms"] = std::to_string(ms);
    return meta;
}

int run_compute(const ComputeConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    // general Phi[f(N tau)]
    if (cfg.N >= 2) {
        auto phi = compute_phi_general(cfg.N, parse_form(cfg.form), cfg.order_guard);
        auto meta = meta_common(cfg, elapsed());
        meta["form"] = cfg.form;
        std::string js = to_json(phi, meta);
        if (!cfg.output.empty()) write_file(cfg.output, js);
        if (!cfg.text_output.empty()) write_file(cfg.text_output, to_text(phi));
        if (cfg.output.empty() && cfg.text_output.empty()) std::cout << to_text(phi);
        return 0;
    }
    if (cfg.ell < 2) throw std::invalid_argument("need --ell or --N");
    bool want_numerators = cfg.family == "A" || cfg.family == "B";
    Family fam = cfg.family == "V"   ? Family::V
                 : cfg.family == "W" ? Family::W
                                     : Family::U;

    if (cfg.method == "volcano" && cfg.prime != 0) {
        // single-prime run: mod-p polynomial file
        if (cfg.classpoly.empty()) throw std::invalid_argument("--method volcano needs --classpoly");
        auto hd = load_class_polynomial(cfg.classpoly);
        if (cfg.disc != 0 && cfg.disc != hd.D)
            throw std::invalid_argument("--disc does not match the class polynomial file");
        VolcanoParams params = find_volcano_prime(cfg.ell, hd.D, hd.h, cfg.prime, cfg.prime);
        Rng rng(cfg.seed);
        auto sites = partial_volcano(params, hd, rng);
        auto pm = compute_poly_mod(sites, cfg.ell, fam, params.p);
        // render mod-p polynomial as a TriPoly with 0..p-1 residues
        TriPoly lift;
        lift.ell = pm.ell;
        lift.weight_w = pm.weight_w;
        lift.family = pm.family;
        for (auto& [m, c] : pm.monomials) lift.add_term(m, Rat(c));
        if (want_numerators) {
            auto nm = compute_numerators_mod(sites, cfg.ell, pm,
                                             cfg.family == "A" ? Family::NumA : Family::NumB);
            ABPoly nl;
            nl.ell = nm.ell;
            nl.weight_w = nm.weight_w;
            nl.family = nm.family;
            for (auto& [m, c] : nm.monomials) nl.add_term(m, Rat(c));
            auto meta = meta_common(cfg, elapsed());
            meta["prime"] = std::to_string(params.p);
            meta["disc"] = std::to_string(hd.D);
            std::string js = to_json(nl, meta);
            if (!cfg.output.empty()) write_file(cfg.output, js);
            else std::cout << to_text(nl);
            return 0;
        }
        auto meta = meta_common(cfg, elapsed());
        meta["prime"] = std::to_string(params.p);
        meta["disc"] = std::to_string(hd.D);
        std::string js = to_json(lift, meta);
        if (!cfg.output.empty()) write_file(cfg.output, js);
        if (!cfg.text_output.empty()) write_file(cfg.text_output, to_text(lift));
        if (cfg.output.empty() && cfg.text_output.empty()) std::cout << to_text(lift);
        return 0;
    }

    TriPoly P;
    std::map<std::string, std::string> extra;
    if (cfg.method == "series") {
        P = compute_fricke_polynomial_auto(cfg.ell, fam, cfg.order_guard, cfg.jobs);
    } else if (cfg.method == "float") {
        FloatOptions opts;
        opts.guard_bits = cfg.prec_guard;
        opts.rho_step_milli = int(cfg.rho_step * 1000 + 0.5);
        P = compute_fricke_float(cfg.ell, fam, opts);
    } else if (cfg.method == "volcano") {
        if (cfg.classpoly.empty()) throw std::invalid_argument("--method volcano needs --classpoly");
        auto hd = load_class_polynomial(cfg.classpoly);
        P = volcano_crt(cfg.ell, fam, hd.D, hd, cfg.seed, cfg.jobs);
        extra["disc"] = std::to_string(hd.D);
    } else {
        throw std::invalid_argument("unknown method: " + cfg.method);
    }

    if (want_numerators) {
        auto [na, nb] = compute_numerators_series(cfg.ell, P);
        const ABPoly& nm = (cfg.family == "A") ? na : nb;
        auto meta = meta_common(cfg, elapsed());
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", relative_height(nm));
        meta["relative_height"] = buf;
        std::string js = to_json(nm, meta);
        if (!cfg.output.empty()) write_file(cfg.output, js);
        if (!cfg.text_output.empty()) write_file(cfg.text_output, to_text(nm));
        if (cfg.output.empty() && cfg.text_output.empty()) std::cout << to_text(nm);
        if (!cfg.cache_dir.empty()) {
            fs::create_directories(cfg.cache_dir);
            write_file(cache_path(cfg, cfg.family), js);
        }
        return 0;
    }

    auto meta = meta_common(cfg, elapsed());
    for (auto& [k, v] : extra) meta[k] = v;
    double H = relative_height(P) * double(cfg.ell + 1) * std::log(double(cfg.ell));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", H);
    meta["height_nats"] = buf;
    std::snprintf(buf, sizeof buf, "%.6f", relative_height(P));
    meta["relative_height"] = buf;
    std::string js = to_json(P, meta);
    if (!cfg.output.empty()) write_file(cfg.output, js);
    if (!cfg.text_output.empty()) write_file(cfg.text_output, to_text(P));
    if (cfg.output.empty() && cfg.text_output.empty()) std::cout << to_text(P);
    if (!cfg.cache_dir.empty()) {
        fs::create_directories(cfg.cache_dir);
        write_file(cache_path(cfg, cfg.family), js);
    }
    return 0;
}

int run_heights(long ell_max, const std::string& cache_dir) {
    std::cout << "ell  H~(U)    H~(V)    H~(W)    H~(A)    H~(B)\n";
    for (long ell = 3; ell <= ell_max; ++ell) {
        bool prime = ell > 1;
        for (long d = 2; d * d <= ell; ++d)
            if (ell % d == 0) prime = false;
        if (!prime) continue;
        ComputeConfig cfg;
        cfg.ell = ell;
        cfg.cache_dir = cache_dir;
        TriPoly u, v, w;
        auto load_or = [&](const std::string& fam, Family f) {
            if (!cache_dir.empty()) {
                auto path = cache_path(cfg, fam);
                if (fs::exists(path)) return tripoly_from_json(slurp(path));
            }
            auto poly = compute_fricke_polynomial_auto(ell, f, 4, 1);
            if (!cache_dir.empty()) {
                fs::create_directories(cache_dir);
                cfg.family = fam;
                write_file(cache_path(cfg, fam), to_json(poly, {{"method", "series"}}));
            }
            return poly;
        };
        u = load_or("U", Family::U);
        v = load_or("V", Family::V);
        w = load_or("W", Family::W);
        auto [na, nb] = compute_numerators_series(ell, u);
        char line[160];
        std::snprintf(line, sizeof line, "%-4ld %.3f    %.3f    %.3f    %.3f    %.3f\n", ell,
                      relative_height(u), relative_height(v), relative_height(w),
                      relative_height(na), relative_height(nb));
        std::cout << line;
    }
    return 0;
}

int run_isogenous(u64 p, u64 A, u64 B, long ell, long kappa_filter, const std::string& upoly) {
    TriPoly U;
    if (!upoly.empty()) {
        U = tripoly_from_json(slurp(upoly));
        if (U.ell != ell) throw std::invalid_argument("--upoly has a different ell");
    } else {
        U = compute_fricke_polynomial_auto(ell, Family::U, 4, 1);
    }
    Rng rng(0xA7C1EULL);
    auto out = isogenous_from_U(ell, A, B, p, U, rng);
    bool any = false, any_degenerate = false;
    for (const auto& c : out) {
        if (kappa_filter >= 0 && u64(kappa_filter) != c.kappa) continue;
        if (c.degenerate) {
            std::cout << c.kappa << " degenerate: dkappa = 0\n";
            any_degenerate = true;
            continue;
        }
        std::cout << c.kappa << " " << c.Astar << " " << c.Bstar << " " << c.kappa1 << "\n";
        any = true;
    }
    if (!any && !any_degenerate) return kExitDegenerate;  // Atkin-prime case: no F_p-roots
    if (any_degenerate) return kExitDegenerate;
    return 0;
}

int run_eval(double rho, int prec) {
    if (rho < 0.05) throw std::invalid_argument("rho too small");
    auto v = eval_at_rho(Real::of_double(rho, prec), prec);
    int digits = int(double(prec) * 0.301) - 2;
    std::cout << "E2    = " << v.e2.str(digits) << "\n";
    std::cout << "E4    = " << v.e4.str(digits) << "\n";
    std::cout << "E6    = " << v.e6.str(digits) << "\n";
    std::cout << "Delta = " << v.delta.str(digits) << "\n";
    std::cout << "j     = " << v.j.str(digits) << "\n";
    return 0;
}

int run_fixture(const std::string& name, const std::string& out_path, const std::string& data_dir);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fricke/Charlap-Coley-Robbins modular polynomials"};
    app.require_subcommand(1);

    ComputeConfig cc;
    auto* compute = app.add_subcommand("compute", "compute a modular polynomial");
    compute->add_option("--ell", cc.ell, "prime level");
    compute->add_option("--N", cc.N, "composite level for Phi[f(N tau)]");
    compute->add_option("--family", cc.family, "U|V|W|A|B")
        ->check(CLI::IsMember({"U", "V", "W", "A", "B"}));
    compute->add_option("--form", cc.form, "E4|E6|Delta (with --N)");
    compute->add_option("--method", cc.method, "series|float|volcano")
        ->check(CLI::IsMember({"series", "float", "volcano"}));
    compute->add_option("--disc", cc.disc, "discriminant (volcano)");
    compute->add_option("--prime", cc.prime, "single prime for a mod-p volcano run");
    compute->add_option("--classpoly", cc.classpoly, "class polynomial file");
    compute->add_option("--order-guard", cc.order_guard, "extra series coefficients");
    compute->add_option("--prec-guard", cc.prec_guard, "extra float guard bits");
    compute->add_option("--rho-step", cc.rho_step, "node spacing (float method)");
    compute->add_option("--seed", cc.seed, "RNG seed (recorded in the output)");
    compute->add_option("--jobs", cc.jobs, "worker threads");
    compute->add_option("-o,--output", cc.output, "JSON output path");
    compute->add_option("--text", cc.text_output, "text mirror output path");
    compute->add_option("--cache-dir", cc.cache_dir, "cache directory");

    long hmax = 23;
    std::string hcache;
    auto* heights = app.add_subcommand("heights", "relative-height table");
    heights->add_option("--ell-max", hmax, "largest prime level");
    heights->add_option("--cache-dir", hcache, "cache directory");

    u64 ip = 0, ia = 0, ib = 0;
    long iell = 5, ikappa = -1;
    std::string iupoly;
    auto* iso = app.add_subcommand("isogenous", "isogenous curves from U_ell");
    iso->add_option("--p", ip, "prime field")->required();
    iso->add_option("--a", ia, "curve A")->required();
    iso->add_option("--b", ib, "curve B")->required();
    iso->add_option("--ell", iell, "isogeny degree")->required();
    iso->add_option("--kappa", ikappa, "restrict to one root");
    iso->add_option("--upoly", iupoly, "U_ell polynomial file (JSON)");

    double erho = 1.0;
    int eprec = 128;
    auto* ev = app.add_subcommand("eval", "evaluate E2/E4/E6/Delta/j at tau = rho i");
    ev->add_option("--rho", erho, "imaginary part of tau")->required();
    ev->add_option("--prec", eprec, "precision in bits");

    std::string fname, fout, fdata;
    auto* fx = app.add_subcommand("fixture", "regenerate a paper-table fixture");
    fx->add_option("--name", fname, "fixture name")->required();
    fx->add_option("-o,--output", fout, "output path (default stdout)");
    fx->add_option("--data-dir", fdata, "data directory (for class polynomials)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) return run_compute(cc);
        if (*heights) return run_heights(hmax, hcache);
        if (*iso) return run_isogenous(ip, ia, ib, iell, ikappa, iupoly);
        if (*ev) return run_eval(erho, eprec);
        if (*fx) return run_fixture(fname, fout, fdata);
    } catch (const CLI::Error& e) {
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("rounding") != std::string::npos || msg.find("residual") != std::string::npos ||
            msg.find("condition") != std::string::npos)
            return kExitNumerical;
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}

namespace {

int run_fixture(const std::string& name, const std::string& out_path, const std::string& data_dir) {
    std::ostringstream os;
    auto text_of = [&](const TriPoly& p) { return to_text(p); };
    if (name == "u5") {
        os << text_of(compute_fricke_polynomial(5, Family::U));
    } else if (name == "u5_ab") {
        os << to_text(to_ab_form(compute_fricke_polynomial(5, Family::U)));
    } else if (name == "u2_ab") {
        os << to_text(to_ab_form(compute_fricke_polynomial(2, Family::U)));
    } else if (name == "u3_ab") {
        os << to_text(to_ab_form(compute_fricke_polynomial(3, Family::U)));
    } else if (name == "w3") {
        os << text_of(compute_fricke_polynomial(3, Family::W));
    } else if (name == "a3" || name == "b3" || name == "a5" || name == "b5") {
        long ell = (name[1] == '3') ? 3 : 5;
        auto U = compute_fricke_polynomial(ell, Family::U);
        auto [na, nb] = compute_numerators_series(ell, U);
        os << to_text(from_ab_form(name[0] == 'a' ? na : nb));
    } else if (name == "phi6e4") {
        os << text_of(compute_phi_general(6, FormTag::E4));
    } else if (name == "volcano_ell5_p1811") {
        auto hd = load_class_polynomial(
            (data_dir.empty() ? std::string("data") : data_dir) + "/hd/D-71.txt");
        auto params = find_volcano_prime(5, -71, hd.h, 1500, 5000);
        Rng rng(2024);
        auto sites = partial_volcano(params, hd, rng);
        os << "p=" << params.p << " t=" << params.t << " v=" << params.v << " D=" << hd.D << "\n";
        for (const auto& s : sites) {
            os << "E=[" << s.E.A << "," << s.E.B << "] j=" << s.j << "\n";
            for (const auto& r : s.iso)
                os << "  r=" << r.r << " codomain=[" << r.Astar << "," << r.Bstar << "]"
                   << (r.crater ? " crater" : " floor") << "\n";
        }
    } else if (name == "sigma_ell5_p1811") {
        GF ring(1811);
        int T = working_order(2, 6, 4);
        auto ps = power_sums_U(5, T, ring);
        auto e4 = eisenstein_series(2, T, ring);
        auto e6 = eisenstein_series(3, T, ring);
        auto dl = delta_series(T, ring);
        for (long t = 2; t <= 6; ++t) {
            auto basis = build_basis(int(2 * t), e4, e6, dl);
            auto cs = express_form(ps.sigma[std::size_t(t - 1)], basis);
            os << "sigma_" << t << " =";
            bool first = true;
            auto sols = lemma_solutions(int(t));
            for (std::size_t j = 0; j < cs.size(); ++j) {
                if (!cs[j]) continue;
                os << (first ? " " : " + ") << cs[j];
                if (sols[j].eps) os << " E6";
                if (sols[j].i4 == 1) os << " E4";
                if (sols[j].i4 > 1) os << " E4^" << sols[j].i4;
                if (sols[j].i12 == 1) os << " Delta";
                if (sols[j].i12 > 1) os << " Delta^" << sols[j].i12;
                first = false;
            }
            os << "\n";
        }
    } else if (name == "heights_u") {
        for (long ell : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
            auto u = compute_fricke_polynomial(ell, Family::U);
            char line[64];
            std::snprintf(line, sizeof line, "%ld %.3f\n", ell, relative_height(u));
            os << line;
        }
    } else if (name == "heights_appendix") {
        for (long ell : {5L, 7L, 11L, 13L}) {
            auto u = compute_fricke_polynomial(ell, Family::U);
            auto v = compute_fricke_polynomial(ell, Family::V);
            auto w = compute_fricke_polynomial(ell, Family::W);
            auto [na, nb] = compute_numerators_series(ell, u);
            char line[128];
            std::snprintf(line, sizeof line, "%ld %.3f %.3f %.3f %.3f\n", ell, relative_height(v),
                          relative_height(w), relative_height(na), relative_height(nb));
            os << line;
        }
    } else {
        throw std::invalid_argument("unknown fixture: " + name);
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        write_file(out_path, os.str());
    }
    return 0;
}

}  // namespace
