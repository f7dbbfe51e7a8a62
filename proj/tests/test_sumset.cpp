#include "chensum/experiment.hpp"
#include "chensum/primes.hpp"
#include "chensum/random.hpp"
#include "chensum/sumset.hpp"
#include "oracles.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <doctest.h>

using namespace chensum;
using namespace chensum::sumset;
using spectral::ResidueSignal;

namespace {

wtrick::ResidueSlice make_slice(std::uint64_t b, std::size_t size, const Rational& delta) {
    wtrick::ResidueSlice s;
    s.b = b;
    s.members_N.resize(size);
    s.members_n.resize(size);
    s.delta = delta;
    return s;
}

ResidueSignal random_nonneg(Rng& rng, std::size_t N) {
    std::vector<double> v(N);
    for (auto& x : v) x = rng.uniform() < 0.3 ? rng.uniform(0.0, 3.0) : 0.0;
    return ResidueSignal(std::move(v));
}

}  // namespace

TEST_CASE("exact sumset") {
    const std::vector<std::uint64_t> a{1, 2, 3};
    const auto s = exact_sumset(a, 6);
    CHECK(s.size == 5);
    for (std::uint64_t v = 2; v <= 6; ++v) CHECK(s.contains(v));
    CHECK_FALSE(s.contains(1));
    const std::vector<std::uint64_t> one{1};
    CHECK(exact_sumset(one, 2).size == 1);
    CHECK(exact_sumset({}, 10).size == 0);
    const std::vector<std::uint64_t> big{1, 6};
    CHECK_THROWS_AS(exact_sumset(big, 10), std::out_of_range);

    const auto table = primes::PrimeTable::build(10000);
    const auto chen = table.chen_primes(10000);
    CHECK(exact_sumset(chen, 20000).size == oracle::sumset_size(chen));
}

TEST_CASE("cyclic sumset") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t N = 50 + rng.below(300);
        std::vector<std::uint64_t> X, Y;
        for (std::uint64_t x = 0; x < N; ++x) {
            if (rng.uniform() < 0.05) X.push_back(x);
            if (rng.uniform() < 0.05) Y.push_back(x);
        }
        CHECK(cyclic_sumset_size(X, Y, N) == oracle::cyclic_sumset_size(X, Y, N));
    }
}

TEST_CASE("select_G") {
    const Rational alpha(1, 2);
    std::vector<wtrick::ResidueSlice> zero{make_slice(2, 0, 0), make_slice(11, 0, 0), make_slice(14, 0, 0)};
    const auto p0 = select_G(zero, alpha, 15);
    CHECK(p0.G.empty());
    CHECK(p0.Delta.empty());
    CHECK(aggregate_lower_bound(p0, {}) == 0);

    const Rational d(1, 3);
    std::vector<wtrick::ResidueSlice> equal{make_slice(2, 1, d), make_slice(11, 1, d), make_slice(14, 1, d)};
    const auto p1 = select_G(equal, alpha, 15);
    CHECK(p1.G == std::vector<std::uint64_t>{2, 11, 14});
    for (const auto& cell : p1.Delta) CHECK(cell.value == 2 * d);
    // (2, 11) and (11, 2) tie at x = 13: the smaller pair wins
    const auto it = std::find_if(p1.Delta.begin(), p1.Delta.end(), [](const DeltaCell& c) { return c.x == 13; });
    REQUIRE(it != p1.Delta.end());
    CHECK(it->b1 == 2);
    CHECK(it->b2 == 11);

    std::vector<wtrick::ResidueSlice> mixed{make_slice(2, 1, Rational(1, 8)), make_slice(11, 1, Rational(1, 9)),
                                            make_slice(14, 1, Rational(1, 2))};
    const auto p2 = select_G(mixed, alpha, 15);
    CHECK(p2.G == std::vector<std::uint64_t>{2, 14});  // the threshold alpha/4 = 1/8 is inclusive
    std::reverse(mixed.begin(), mixed.end());
    const auto p3 = select_G(mixed, alpha, 15);
    CHECK(p3.G == p2.G);
    CHECK(p3.Delta.size() == p2.Delta.size());
    for (std::size_t i = 0; i < p2.Delta.size(); ++i) {
        CHECK(p3.Delta[i].value == p2.Delta[i].value);
        CHECK(p3.Delta[i].b1 == p2.Delta[i].b1);
    }
}

TEST_CASE("aggregate requires every maximizing certificate") {
    const Rational d(1, 3);
    std::vector<wtrick::ResidueSlice> one{make_slice(2, 1, d), make_slice(11, 1, 0), make_slice(14, 1, 0)};
    const auto plan = select_G(one, Rational(1), 15);
    CHECK(plan.G == std::vector<std::uint64_t>{2});
    CertificateMap certs;
    CHECK_THROWS_AS(aggregate_lower_bound(plan, certs), std::out_of_range);
    SupportCertificate c;
    c.certified = 7;
    c.valid = true;
    certs[{2, 2}] = c;
    CHECK(aggregate_lower_bound(plan, certs) == 7);
    certs[{2, 2}].valid = false;
    CHECK(aggregate_lower_bound(plan, certs) == 0);
}

TEST_CASE("certificate on a synthetic full slice") {
    const std::size_t N = 101;
    const auto f = ResidueSignal::constant(N, 1.0);
    const auto d = decomposition::decompose(f, 0.5, 0.3, 0.5);
    const auto c = prop1_certificate(d, d, 2, 2, Rational(1), Rational(1));
    CHECK(c.t11 == N);
    CHECK(c.certified == N);
    CHECK(c.valid);
    CHECK(c.inclusion);
    CHECK(c.support == N);

    const auto z = decomposition::decompose(ResidueSignal::constant(N, 0.0), 0.5, 0.3, 0.5);
    const auto e = prop1_certificate(d, z, 2, 11, Rational(1), Rational(0));
    CHECK(e.certified == 0);
    CHECK_FALSE(e.valid);
}

TEST_CASE("convolution bounds on random pairs") {
    Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_nonneg(rng, 101), g = random_nonneg(rng, 101);
        const auto d1 = decomposition::decompose(f, 0.05, 0.5, 0.5);
        const auto d2 = decomposition::decompose(g, 0.05, 0.5, 0.5);
        const auto r = lemma4_check(d1, d2);
        CHECK(r.pass());
    }
}

TEST_CASE("convolution bounds with f2 = 0") {
    Rng rng(33);
    const auto f = random_nonneg(rng, 31);
    // full spectrum and tiny radius: Bohr set {0}, beta = N delta_0, f1 = f
    const auto d = decomposition::decompose(f, 1e-300, 1e-3, 0.5);
    REQUIRE(d.bohr == std::vector<std::uint64_t>{0});
    const auto r = lemma4_check(d, d);
    for (const auto& h : r.holder) CHECK(h.lhs < 1e-20);
}

TEST_CASE("pipeline certificates are sound") {
    experiment::ExperimentConfig c;
    c.n = 10000;
    c.t = 5;
    c.all_pairs = true;
    const auto p = experiment::build_pipeline(c);
    const auto& s = p.sliced.slices;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            const auto cert = prop1_certificate(p.decomps[i], p.decomps[j], s[i].b, s[j].b, s[i].delta, s[j].delta);
            const auto exact = oracle::cyclic_sumset_size(s[i].members_N, s[j].members_N, p.ctx.N);
            CHECK(cert.certified <= exact);
            CHECK(cert.support == exact);
            CHECK(cert.inclusion);
            CHECK(lemma4_check(p.decomps[i], p.decomps[j]).pass());
        }
    }
    const auto plan = select_G(s, c.alpha, p.ctx.W);
    Rational all = 0, in_g = 0;
    for (const auto& sl : s) {
        all += sl.delta;
        if (std::find(plan.G.begin(), plan.G.end(), sl.b) != plan.G.end()) in_g += sl.delta;
    }
    CHECK(in_g >= all - BigInt(p.ctx.phi_W) * c.alpha / 4);
    CHECK(holder_chain_report(plan).ordered);
}

TEST_CASE("schedule") {
    using Dec = boost::multiprecision::cpp_dec_float_50;
    const Dec alpha_hp = boost::multiprecision::exp(-boost::multiprecision::exp(boost::multiprecision::exp(Dec(1))));
    const double alpha = static_cast<double>(alpha_hp);
    const auto s = paper_schedule(alpha, 0.5);
    const Dec li = -boost::multiprecision::log(alpha_hp);
    const Dec ll = boost::multiprecision::log(li);
    const auto k_hp = static_cast<std::uint64_t>(boost::multiprecision::floor(boost::multiprecision::cbrt(li / ll)));
    REQUIRE(s.k.has_value());
    CHECK(*s.k == k_hp);
    const double expo = static_cast<double>(boost::multiprecision::pow(li, Dec(2) / 3) * boost::multiprecision::cbrt(ll));
    CHECK(*s.theorem2_exponent == doctest::Approx(expo).epsilon(1e-12));

    const auto tiny = paper_schedule(1e-6, 0.5);
    CHECK(tiny.epsilon == doctest::Approx(1e-20).epsilon(1e-12));
    CHECK(tiny.delta == tiny.epsilon);

    const auto half = paper_schedule(0.5, 0.5);
    CHECK_FALSE(half.k.has_value());
    CHECK_FALSE(half.theorem2_exponent.has_value());

    CHECK_THROWS_AS(paper_schedule(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(paper_schedule(0.5, 2.0), std::domain_error);
    CHECK(schedule_epsilon(1.0, 0.5) == 1.0);
}
