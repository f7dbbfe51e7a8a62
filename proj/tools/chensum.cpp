// chensum: batch front-end for the Chen prime sumset toolkit.
//
// Exit codes: 0 pass, 1 assertion failure, 2 usage error.

#include "chensum/decomposition.hpp"
#include "chensum/experiment.hpp"
#include "chensum/majorant.hpp"
#include "chensum/moments.hpp"
#include "chensum/primes.hpp"
#include "chensum/report.hpp"
#include "chensum/spectral.hpp"
#include "chensum/wtrick.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace chensum;
using nlohmann::ordered_json;

namespace {

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string out;
    bool describe = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(g.out, text);
    }
}

// Experiment flags shared by decompose and sumset run; unset flags keep the
// config file (or default) value.
struct ExperimentFlags {
    std::optional<std::uint64_t> n, t, k, R;
    std::optional<std::string> alpha, subset, c1;
    std::optional<double> lambda, delta, epsilon, cap;
    bool all_pairs = false;
    bool exclude_two = false;

    void attach(CLI::App* app) {
        app->add_option("--n", n, "Upper end of the prime range");
        app->add_option("--t", t, "Sieving level for W");
        app->add_option("--alpha", alpha, "Relative density, e.g. 1/2");
        app->add_option("--lambda", lambda, "Exponent slack in (0, 2)");
        app->add_option("--delta", delta, "Large-spectrum threshold");
        app->add_option("--epsilon", epsilon, "Bohr radius");
        app->add_option("--k", k, "Moment order");
        app->add_option("--R", R, "Sieve level of the majorant");
        app->add_option("--c1", c1, "Chen density constant");
        app->add_option("--cap", cap, "Calibration cap");
        app->add_option("--subset", subset, "full | random[:SEED[:FRACTION]] | file:PATH");
        app->add_flag("--all-pairs", all_pairs, "Certify every residue pair, not only the maximizers");
        app->add_flag("--exclude-two", exclude_two, "Leave p = 2 out of the Chen primes");
    }

    experiment::ExperimentConfig resolve(const Globals& g) const {
        experiment::ExperimentConfig c;
        if (!g.config_path.empty()) {
            std::ifstream in(g.config_path);
            if (!in) throw UsageError("cannot read config file " + g.config_path);
            ordered_json doc;
            try {
                doc = ordered_json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw UsageError("config file " + g.config_path + ": " + e.what());
            }
            c = experiment::ExperimentConfig::from_json(doc);
        }
        if (n) c.n = *n;
        if (t) c.t = *t;
        if (alpha) c.alpha = parse_rational(*alpha);
        if (lambda) c.lambda = *lambda;
        if (delta) c.delta = *delta;
        if (epsilon) c.epsilon = *epsilon;
        if (k) c.k = *k;
        if (R) c.R = *R;
        if (c1) c.c1 = parse_rational(*c1);
        if (cap) c.cap = *cap;
        if (g.seed) c.seed = *g.seed;
        if (g.threads) c.threads = *g.threads;
        if (subset) {
            const std::string s = *subset == "random" ? "random:" + std::to_string(c.seed) : *subset;
            c.subset = experiment::SubsetMode::parse(s);
        }
        if (all_pairs) c.all_pairs = true;
        if (exclude_two) c.include_two = false;
        c.validate();
        return c;
    }
};

int cmd_primes_count(const Globals& g, const std::vector<std::uint64_t>& limits, bool exclude_two) {
    if (g.describe) {
        ordered_json d{{"command", "primes count"}, {"limits", limits}, {"include_two", !exclude_two}};
        std::cout << dump_json(d);
        return 0;
    }
    CsvTable csv({"limit", "chen_count", "ratio_c1hat"});
    if (!limits.empty()) {
        const auto table = primes::PrimeTable::build(*std::max_element(limits.begin(), limits.end()));
        for (auto L : limits) {
            const auto c = primes::count_chen(table, L, !exclude_two);
            csv.add_row({std::to_string(L), std::to_string(c.count), format_real(c.ratio)});
        }
    }
    emit(g, csv.str());
    return 0;
}

int cmd_wtrick_build(const Globals& g, std::uint64_t t, std::uint64_t n) {
    if (g.describe) {
        std::cout << dump_json(ordered_json{{"command", "wtrick build"}, {"t", t}, {"n", n}});
        return 0;
    }
    const auto ctx = wtrick::build_context(t, n);
    ordered_json d;
    d["t"] = ctx.t;
    d["W"] = ctx.W;
    d["N"] = ctx.N;
    d["n"] = ctx.n;
    d["phi_W"] = ctx.phi_W;
    d["phi_set"] = ctx.phi_set;
    emit(g, dump_json(d));
    return 0;
}

int cmd_majorant_diag(const Globals& g, const std::vector<std::uint64_t>& t_grid, std::uint64_t n,
                      std::optional<std::uint64_t> R) {
    if (g.describe) {
        ordered_json d{{"command", "majorant diag"}, {"t_grid", t_grid}, {"n", n}};
        d["R"] = R ? ordered_json(*R) : ordered_json("default");
        std::cout << dump_json(d);
        return 0;
    }
    const auto rep = majorant::lemma1_diagnostic(t_grid, n, R);
    CsvTable csv({"t", "N", "R", "nu_hat_zero", "sup_nonzero", "fitted_exponent"});
    for (const auto& row : rep.rows)
        csv.add_row({std::to_string(row.t), std::to_string(row.N), std::to_string(row.R), format_real(row.nu_hat_zero),
                     format_real(row.sup_nonzero), format_real(rep.fitted_exponent)});
    emit(g, csv.str());
    return rep.all_finite && rep.normalized ? 0 : 1;
}

int cmd_decompose(const Globals& g, const ExperimentFlags& flags) {
    const auto config = flags.resolve(g);
    if (g.describe) {
        std::cout << dump_json(experiment::describe(config));
        return 0;
    }
    const auto p = experiment::build_pipeline(config);
    CsvTable csv({"b", "size", "spectrum_size", "bohr_size", "pigeonhole_floor", "l1_preserved", "on_spectrum",
                  "off_spectrum", "f1_dominated", "f2_dominated", "bohr_bound"});
    bool ok = true;
    for (std::size_t i = 0; i < p.decomps.size(); ++i) {
        const auto l3 = decomposition::lemma3_check(p.decomps[i], p.profiles[i].nu);
        const auto bb = decomposition::bohr_size_bound(p.decomps[i]);
        ok = ok && l3.pass() && bb.ok();
        auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
        csv.add_row({std::to_string(p.ctx.phi_set[i]), std::to_string(p.sliced.slices[i].members_N.size()),
                     std::to_string(bb.spectrum_size), std::to_string(bb.bohr_size), format_real(bb.pigeonhole_floor),
                     flag(l3.l1_preserved), flag(l3.on_spectrum), flag(l3.off_spectrum), flag(l3.f1_dominated),
                     flag(l3.f2_dominated), flag(bb.ok())});
    }
    emit(g, csv.str());
    return ok ? 0 : 1;
}

int cmd_sumset_run(const Globals& g, const ExperimentFlags& flags) {
    const auto config = flags.resolve(g);
    if (g.describe) {
        std::cout << dump_json(experiment::describe(config));
        return 0;
    }
    const auto result = experiment::run_theorem2_experiment(config);
    emit(g, dump_json(result.doc));
    return result.pass ? 0 : 1;
}

int cmd_moments_audit(const Globals& g, const std::vector<std::uint64_t>& t_grid, std::uint64_t k,
                      const std::string& alpha_text, const std::string& subset) {
    const Rational alpha = parse_rational(alpha_text);
    if (alpha <= 0 || alpha > 1) throw UsageError("--alpha must lie in (0, 1]");
    std::optional<std::uint64_t> seed;
    if (subset == "random") {
        seed = g.seed.value_or(0);
    } else if (subset.rfind("random:", 0) == 0) {
        try {
            seed = std::stoull(subset.substr(7));
        } catch (const std::exception&) {
            throw UsageError("bad subset '" + subset + "'");
        }
    } else if (subset != "full") {
        throw UsageError("--subset must be full or random[:SEED]");
    }
    if (g.describe) {
        ordered_json d{{"command", "moments audit"}, {"t", t_grid}, {"k", k}, {"alpha", rational_string(alpha)}};
        d["subset"] = seed ? "random:" + std::to_string(*seed) : "full";
        std::cout << dump_json(d);
        return 0;
    }
    CsvTable csv({"W", "phiW", "B_size", "k", "moment", "rhs_C0", "Ctilde_min"});
    for (auto t : t_grid) {
        const std::uint64_t W = moments::odd_primorial(t);
        const auto phi = moments::admissible_residues(W);
        const auto B = seed ? moments::draw_subset(phi, alpha, *seed) : phi;
        const auto rep = moments::lemma5_audit(W, B, alpha, k);
        csv.add_row({std::to_string(W), std::to_string(rep.phi_W), std::to_string(rep.B.size()), std::to_string(k),
                     rep.moment_k.str(), rational_string(rep.rhs_C0), format_real(rep.Ctilde_min)});
    }
    emit(g, csv.str());
    return 0;
}

int cmd_spectral_selftest(const Globals& g, const std::vector<std::size_t>& moduli, int trials) {
    const std::uint64_t seed = g.seed.value_or(0);
    if (g.describe) {
        std::cout << dump_json(ordered_json{{"command", "spectral selftest"}, {"moduli", moduli}, {"trials", trials}, {"seed", seed}});
        return 0;
    }
    const auto rows = spectral::selftest(seed, moduli, trials);
    CsvTable csv({"check", "N", "worst", "pass"});
    bool ok = true;
    for (const auto& r : rows) {
        ok = ok && r.pass;
        csv.add_row({r.check, std::to_string(r.N), format_real(r.worst), r.pass ? "1" : "0"});
    }
    emit(g, csv.str());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chen prime sumset toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "JSON experiment config");
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output file (default stdout)");
    app.add_flag("--describe", g.describe, "Print the resolved parameters and exit");

    auto* primes_cmd = app.add_subcommand("primes", "Chen prime counts")->require_subcommand(1);
    auto* primes_count = primes_cmd->add_subcommand("count", "Chen counts and c1 estimates");
    std::vector<std::uint64_t> limits{10000, 100000, 1000000};
    bool exclude_two = false;
    primes_count->add_option("--limits", limits, "Limits to count up to")->delimiter(',');
    primes_count->add_flag("--exclude-two", exclude_two, "Leave p = 2 out");

    auto* wtrick_cmd = app.add_subcommand("wtrick", "W-trick context")->require_subcommand(1);
    auto* wtrick_build = wtrick_cmd->add_subcommand("build", "W, N and the admissible residues");
    std::uint64_t wt = 5, wn = 10000;
    wtrick_build->add_option("--t", wt, "Sieving level");
    wtrick_build->add_option("--n", wn, "Range end");

    auto* majorant_cmd = app.add_subcommand("majorant", "Enveloping sieve")->require_subcommand(1);
    auto* majorant_diag = majorant_cmd->add_subcommand("diag", "Fourier decay of nu across t");
    std::vector<std::uint64_t> mt{3, 5, 7, 11};
    std::uint64_t mn = 10000;
    std::optional<std::uint64_t> mR;
    majorant_diag->add_option("--t-grid", mt, "Values of t")->delimiter(',');
    majorant_diag->add_option("--n", mn, "Range end");
    majorant_diag->add_option("--R", mR, "Fixed sieve level");

    auto* decompose_cmd = app.add_subcommand("decompose", "Spectral decomposition per residue");
    ExperimentFlags dflags;
    dflags.attach(decompose_cmd);

    auto* sumset_cmd = app.add_subcommand("sumset", "Certified sumset bounds")->require_subcommand(1);
    auto* sumset_run = sumset_cmd->add_subcommand("run", "Full pipeline against the exact sumset");
    ExperimentFlags sflags;
    sflags.attach(sumset_run);

    auto* moments_cmd = app.add_subcommand("moments", "Representation function moments")->require_subcommand(1);
    auto* moments_audit = moments_cmd->add_subcommand("audit", "Moment bound audit");
    std::vector<std::uint64_t> ot{5};
    std::uint64_t ok_ = 2;
    std::string oalpha = "1", osubset = "full";
    moments_audit->add_option("--t", ot, "Sieving level(s)")->delimiter(',');
    moments_audit->add_option("--k", ok_, "Moment order")->check(CLI::Range(2, 64));
    moments_audit->add_option("--alpha", oalpha, "Relative density");
    moments_audit->add_option("--subset", osubset, "full | random[:SEED]");

    auto* spectral_cmd = app.add_subcommand("spectral", "Fourier kernel")->require_subcommand(1);
    auto* spectral_selftest = spectral_cmd->add_subcommand("selftest", "Identity and inequality checks");
    std::vector<std::size_t> smoduli{64, 101, 257, 1361};
    int strials = 100;
    spectral_selftest->add_option("--moduli", smoduli, "Moduli")->delimiter(',');
    spectral_selftest->add_option("--trials", strials, "Random signals per modulus")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (primes_count->parsed()) return cmd_primes_count(g, limits, exclude_two);
        if (wtrick_build->parsed()) return cmd_wtrick_build(g, wt, wn);
        if (majorant_diag->parsed()) return cmd_majorant_diag(g, mt, mn, mR);
        if (decompose_cmd->parsed()) return cmd_decompose(g, dflags);
        if (sumset_run->parsed()) return cmd_sumset_run(g, sflags);
        if (moments_audit->parsed()) return cmd_moments_audit(g, ot, ok_, oalpha, osubset);
        if (spectral_selftest->parsed()) return cmd_spectral_selftest(g, smoduli, strials);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
