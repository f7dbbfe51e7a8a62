#include "chensum/experiment.hpp"
#include "chensum/primes.hpp"
#include "chensum/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <set>
#include <thread>

namespace chensum::experiment {

using nlohmann::ordered_json;

namespace {

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json real_json(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round12(x);
}

Rational rational_field(const ordered_json& v, const char* key) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ConfigError(std::string("config: ") + key + " must be an integer or a \"p/q\" string");
}

std::vector<std::uint64_t> read_subset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read subset file " + path);
    std::vector<std::uint64_t> out;
    std::uint64_t v = 0;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw ConfigError("config: subset file " + path + " holds a non-integer token");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

SubsetMode SubsetMode::parse(const std::string& text) {
    SubsetMode m;
    if (text == "full") return m;
    if (text.rfind("file:", 0) == 0) {
        m.kind = Kind::File;
        m.path = text.substr(5);
        if (m.path.empty()) throw ConfigError("subset: file path is empty");
        return m;
    }
    if (text.rfind("random:", 0) == 0) {
        m.kind = Kind::Random;
        const std::string rest = text.substr(7);
        const auto colon = rest.find(':');
        const std::string seed_text = rest.substr(0, colon);
        try {
            std::size_t used = 0;
            m.seed = std::stoull(seed_text, &used);
            if (used != seed_text.size()) throw std::invalid_argument(seed_text);
        } catch (const std::exception&) {
            throw ConfigError("subset: bad seed in '" + text + "'");
        }
        if (colon != std::string::npos) {
            try {
                m.fraction = parse_rational(rest.substr(colon + 1));
            } catch (const std::exception&) {
                throw ConfigError("subset: bad fraction in '" + text + "'");
            }
        }
        return m;
    }
    throw ConfigError("subset: expected full, random:SEED[:FRACTION] or file:PATH, got '" + text + "'");
}

std::string SubsetMode::str() const {
    switch (kind) {
        case Kind::Full: return "full";
        case Kind::File: return "file:" + path;
        case Kind::Random: {
            std::string s = "random:" + std::to_string(seed);
            if (fraction) s += ":" + rational_string(*fraction);
            return s;
        }
    }
    return "full";
}

void ExperimentConfig::validate() const {
    if (n < 10000) throw ConfigError("config: n must be at least 10000");
    if (n > primes::kDefaultLimitCeiling) throw ConfigError("config: n exceeds 2^40");
    if (t < 3 || t > wtrick::kMaxT) throw ConfigError("config: t must lie in [3, 43]");
    if (alpha <= 0 || alpha > 1) throw ConfigError("config: alpha must lie in (0, 1]");
    if (!(lambda > 0.0 && lambda < 2.0)) throw ConfigError("config: lambda must lie in (0, 2)");
    if (delta && !(*delta > 0.0)) throw ConfigError("config: delta must be positive");
    if (epsilon && !(*epsilon > 0.0 && *epsilon <= 2.0)) throw ConfigError("config: epsilon must lie in (0, 2]");
    if (k && *k < 2) throw ConfigError("config: k must be at least 2");
    if (R && *R < 3) throw ConfigError("config: R must be at least 3");
    if (c1 && *c1 <= 0) throw ConfigError("config: c1 must be positive");
    if (!(cap > 0.0)) throw ConfigError("config: cap must be positive");
    if (threads < 1) throw ConfigError("config: threads must be at least 1");
    if (subset.fraction && (*subset.fraction <= 0 || *subset.fraction > 1))
        throw ConfigError("config: subset fraction must lie in (0, 1]");
}

ordered_json ExperimentConfig::to_json() const {
    ordered_json j;
    j["n"] = n;
    j["t"] = t;
    j["alpha"] = rational_string(alpha);
    j["lambda"] = lambda;
    j["delta"] = optional_json(delta);
    j["epsilon"] = optional_json(epsilon);
    j["k"] = optional_json(k);
    j["R"] = optional_json(R);
    j["c1"] = c1 ? ordered_json(rational_string(*c1)) : ordered_json(nullptr);
    j["subset"] = subset.str();
    j["include_two"] = include_two;
    j["cap"] = cap;
    j["all_pairs"] = all_pairs;
    j["seed"] = seed;
    j["threads"] = threads;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const ordered_json& doc) {
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    static const std::set<std::string> known{"n",      "t",      "alpha",       "lambda", "delta",     "epsilon",
                                             "k",      "R",      "c1",          "subset", "include_two", "cap",
                                             "all_pairs", "seed", "threads"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");

    ExperimentConfig c;
    try {
        auto get = [&](const char* key, auto& dst) {
            if (doc.contains(key) && !doc[key].is_null()) doc[key].get_to(dst);
        };
        auto get_opt = [&](const char* key, auto& dst) {
            if (doc.contains(key) && !doc[key].is_null()) dst = doc[key].get<typename std::decay_t<decltype(dst)>::value_type>();
        };
        get("n", c.n);
        get("t", c.t);
        if (doc.contains("alpha")) c.alpha = rational_field(doc["alpha"], "alpha");
        get("lambda", c.lambda);
        get_opt("delta", c.delta);
        get_opt("epsilon", c.epsilon);
        get_opt("k", c.k);
        get_opt("R", c.R);
        if (doc.contains("c1") && !doc["c1"].is_null()) c.c1 = rational_field(doc["c1"], "c1");
        if (doc.contains("subset")) c.subset = SubsetMode::parse(doc["subset"].get<std::string>());
        get("include_two", c.include_two);
        get("cap", c.cap);
        get("all_pairs", c.all_pairs);
        get("seed", c.seed);
        get("threads", c.threads);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
    std::vector<std::exception_ptr> errors(count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<std::uint64_t> select_subset(const std::vector<std::uint64_t>& chen, const ExperimentConfig& config) {
    switch (config.subset.kind) {
        case SubsetMode::Kind::Full: return chen;
        case SubsetMode::Kind::File: {
            auto A = read_subset_file(config.subset.path);
            for (auto a : A)
                if (!std::binary_search(chen.begin(), chen.end(), a))
                    throw ConfigError("config: subset file entry " + std::to_string(a) + " is not a Chen prime in [1, n]");
            return A;
        }
        case SubsetMode::Kind::Random: {
            const Rational f = config.subset.fraction.value_or(config.alpha);
            const Rational want = f * BigInt(chen.size());
            BigInt take = boost::multiprecision::numerator(want) / boost::multiprecision::denominator(want);
            if (Rational(take) < want) ++take;
            std::vector<std::uint64_t> pool = chen;
            Rng rng(config.subset.seed);
            rng.shuffle(std::span<std::uint64_t>(pool));
            pool.resize(static_cast<std::size_t>(take));
            std::sort(pool.begin(), pool.end());
            return pool;
        }
    }
    return chen;
}

Pipeline build_pipeline(const ExperimentConfig& config) {
    config.validate();
    Pipeline p;
    p.config = config;
    const auto table = primes::PrimeTable::build(config.n);
    const auto chen = table.chen_primes(config.n, config.include_two);
    p.chen_total = chen.size();
    if (chen.empty()) throw std::runtime_error("primes: no Chen primes up to n = " + std::to_string(config.n));
    p.A = select_subset(chen, config);
    p.alpha_actual = Rational(BigInt(p.A.size()), BigInt(p.chen_total));
    if (config.c1) {
        p.c1 = *config.c1;
    } else {
        const double ln = std::log(static_cast<double>(config.n));
        p.c1 = rational_from_double(static_cast<double>(p.chen_total) * ln * ln / static_cast<double>(config.n));
    }

    p.ctx = wtrick::build_context(config.t, config.n);
    p.sliced = wtrick::slice(p.A, p.ctx, p.c1);

    const std::size_t B = p.ctx.phi_set.size();
    p.profiles.resize(B);
    parallel_for(B, config.threads, [&](std::size_t i) {
        try {
            p.profiles[i] = majorant::build_majorant(p.ctx.phi_set[i], p.ctx, config.R);
        } catch (const std::exception& e) {
            throw std::runtime_error("majorant (b = " + std::to_string(p.ctx.phi_set[i]) + ", N = " +
                                     std::to_string(p.ctx.N) + "): " + e.what());
        }
    });
    p.c_global = decomposition::global_calibration(p.sliced.slices, p.profiles, p.ctx, config.cap);

    const double alpha = to_double(config.alpha);
    const double sched = sumset::schedule_epsilon(alpha, config.lambda);
    p.delta = config.delta.value_or(sched);
    p.epsilon = config.epsilon.value_or(std::min(sched, 2.0));
    p.k = config.k.value_or(2);

    p.weighted.resize(B);
    p.decomps.resize(B);
    parallel_for(B, config.threads, [&](std::size_t i) {
        try {
            p.weighted[i] = decomposition::build_f(p.sliced.slices[i], p.profiles[i], p.ctx, config.cap);
            p.decomps[i] = decomposition::decompose(p.weighted[i].f, p.delta, p.epsilon, config.lambda,
                                                    p.weighted[i].c_calib);
        } catch (const std::exception& e) {
            throw std::runtime_error("decomposition (b = " + std::to_string(p.ctx.phi_set[i]) + "): " + e.what());
        }
    });
    return p;
}

ExperimentResult run_theorem2_experiment(const ExperimentConfig& config) {
    return run_theorem2_experiment(build_pipeline(config));
}

ExperimentResult run_theorem2_experiment(const Pipeline& p) {
    const auto& ctx = p.ctx;
    const std::size_t B = ctx.phi_set.size();
    ordered_json checks;

    // Majorant and domination checks.
    bool nu_nonneg = true, nu_normalized = true, f_below_nu = true;
    for (std::size_t i = 0; i < B; ++i) {
        const auto& nu = p.profiles[i].nu;
        for (std::size_t x = 0; x < ctx.N; ++x) {
            if (nu[x] < 0.0) nu_nonneg = false;
            if (p.weighted[i].f[x] > nu[x]) f_below_nu = false;
        }
        if (std::abs(majorant::nu_hat_zero(p.profiles[i]) - 1.0) > 1e-12) nu_normalized = false;
    }

    bool lemma3_ok = true, bohr_ok = true;
    ordered_json per_b = ordered_json::array();
    for (std::size_t i = 0; i < B; ++i) {
        const auto l3 = decomposition::lemma3_check(p.decomps[i], p.profiles[i].nu);
        const auto bb = decomposition::bohr_size_bound(p.decomps[i]);
        lemma3_ok = lemma3_ok && l3.pass();
        bohr_ok = bohr_ok && bb.ok();
        ordered_json row;
        row["b"] = ctx.phi_set[i];
        row["size"] = p.sliced.slices[i].members_N.size();
        row["delta_b"] = rational_string(p.sliced.slices[i].delta);
        row["c_calib"] = real_json(p.weighted[i].c_calib);
        row["spectrum_size"] = bb.spectrum_size;
        row["bohr_size"] = bb.bohr_size;
        row["lemma3"] = l3.pass();
        row["bohr_bound"] = bb.ok();
        per_b.push_back(std::move(row));
    }

    const auto plan = sumset::select_G(p.sliced.slices, p.config.alpha, ctx.W, p.k);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs = plan.maximizing_pairs();
    if (p.config.all_pairs) {
        for (std::size_t i = 0; i < B; ++i)
            for (std::size_t j = i; j < B; ++j) pairs.emplace_back(ctx.phi_set[i], ctx.phi_set[j]);
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    }

    struct PairOutcome {
        sumset::SupportCertificate cert;
        sumset::Lemma4Report l4;
        std::size_t exact = 0;
    };
    std::vector<PairOutcome> outcomes(pairs.size());
    parallel_for(pairs.size(), p.config.threads, [&](std::size_t k) {
        const auto [b1, b2] = pairs[k];
        const auto i = static_cast<std::size_t>(ctx.index_of(b1));
        const auto j = static_cast<std::size_t>(ctx.index_of(b2));
        try {
            auto& out = outcomes[k];
            out.cert = sumset::prop1_certificate(p.decomps[i], p.decomps[j], b1, b2, p.sliced.slices[i].delta,
                                                 p.sliced.slices[j].delta);
            out.l4 = sumset::lemma4_check(p.decomps[i], p.decomps[j]);
            out.exact = sumset::cyclic_sumset_size(p.sliced.slices[i].members_N, p.sliced.slices[j].members_N, ctx.N);
        } catch (const std::exception& e) {
            throw std::runtime_error("sumset (b1 = " + std::to_string(b1) + ", b2 = " + std::to_string(b2) +
                                     "): " + e.what());
        }
    });

    sumset::CertificateMap certs;
    bool certs_sound = true, inclusion_ok = true, lemma4_ok = true;
    ordered_json per_pair = ordered_json::array();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& o = outcomes[k];
        certs[pairs[k]] = o.cert;
        const bool sound = o.cert.certified <= o.exact;
        certs_sound = certs_sound && sound;
        inclusion_ok = inclusion_ok && o.cert.inclusion;
        lemma4_ok = lemma4_ok && o.l4.pass();
        ordered_json row;
        row["b1"] = o.cert.b1;
        row["b2"] = o.cert.b2;
        row["t11"] = o.cert.t11;
        row["t12"] = o.cert.t12;
        row["t21"] = o.cert.t21;
        row["t22"] = o.cert.t22;
        row["certified"] = o.cert.certified;
        row["valid"] = o.cert.valid;
        row["c2_measured"] = real_json(o.cert.c2_measured);
        row["exact"] = o.exact;
        row["inclusion"] = o.cert.inclusion;
        row["lemma4"] = o.l4.pass();
        per_pair.push_back(std::move(row));
    }

    const std::uint64_t certified = sumset::aggregate_lower_bound(plan, certs);
    const auto exact = sumset::exact_sumset(p.A, 2 * p.config.n);
    const auto chain = plan.G.empty() ? sumset::HolderChainReport{} : sumset::holder_chain_report(plan);
    const bool chain_ok = plan.G.empty() || chain.ordered;
    const bool aggregate_sound = certified <= exact.size;

    checks["nu_nonnegative"] = nu_nonneg;
    checks["nu_hat_zero_is_one"] = nu_normalized;
    checks["f_below_nu"] = f_below_nu;
    checks["lemma3"] = lemma3_ok;
    checks["bohr_bound"] = bohr_ok;
    checks["lemma4"] = lemma4_ok;
    checks["certificates_sound"] = certs_sound;
    checks["certificate_inclusion"] = inclusion_ok;
    checks["holder_chain"] = chain_ok;
    checks["aggregate_sound"] = aggregate_sound;
    bool pass = true;
    for (const auto& [_, v] : checks.items()) pass = pass && v.get<bool>();

    ordered_json doc;
    doc["config"] = p.config.to_json();
    doc["alpha_actual"] = rational_string(p.alpha_actual);
    doc["chen_count"] = p.chen_total;
    doc["A_size"] = p.A.size();
    doc["W"] = ctx.W;
    doc["N"] = ctx.N;
    doc["phi_W"] = ctx.phi_W;
    doc["c1"] = rational_string(p.c1);
    doc["c_global"] = real_json(p.c_global);
    doc["epsilon"] = real_json(p.epsilon);
    doc["delta"] = real_json(p.delta);
    doc["k"] = p.k;
    doc["dropped"] = p.sliced.dropped;
    doc["below_sqrt"] = p.sliced.below_sqrt;
    doc["G_size"] = plan.G.size();
    doc["G"] = plan.G;
    doc["certified"] = certified;
    doc["exact"] = exact.size;
    doc["certified_over_exact"] = real_json(exact.size ? static_cast<double>(certified) / exact.size : 0.0);
    doc["exact_over_n"] = real_json(static_cast<double>(exact.size) / static_cast<double>(p.config.n));
    doc["holder_chain"] = {{"pair_sum", real_json(chain.pair_sum)},
                           {"weighted_sum", real_json(chain.weighted_sum)},
                           {"holder_bound", real_json(chain.holder_bound)},
                           {"ordered", chain_ok}};
    doc["per_b"] = std::move(per_b);
    doc["per_pair"] = std::move(per_pair);
    doc["checks"] = std::move(checks);
    doc["pass"] = pass;
    return {std::move(doc), pass};
}

ordered_json describe(const ExperimentConfig& config) {
    config.validate();
    ordered_json d;
    d["config"] = config.to_json();
    const auto ctx = wtrick::build_context(config.t, config.n);
    d["W"] = ctx.W;
    d["N"] = ctx.N;
    d["phi_W"] = ctx.phi_W;
    d["R"] = config.R.value_or(majorant::default_R(ctx.N));
    const double alpha = to_double(config.alpha);
    const double sched = sumset::schedule_epsilon(alpha, config.lambda);
    d["epsilon"] = real_json(config.epsilon.value_or(std::min(sched, 2.0)));
    d["delta"] = real_json(config.delta.value_or(sched));
    d["k"] = config.k.value_or(2);
    ordered_json s;
    if (alpha < 1.0) {
        const auto sc = sumset::paper_schedule(alpha, config.lambda);
        s["epsilon"] = real_json(sc.epsilon);
        s["delta"] = real_json(sc.delta);
        s["log_t_required"] = real_json(sc.log_t_required);
        s["t_required_log10"] = real_json(sc.t_required_log10);
        s["k"] = optional_json(sc.k);
        s["theorem2_exponent"] = sc.theorem2_exponent ? real_json(*sc.theorem2_exponent) : ordered_json(nullptr);
    }
    d["schedule"] = alpha < 1.0 ? s : ordered_json(nullptr);
    return d;
}

}  // namespace chensum::experiment
