#include <doctest.h>

#include <random>
#include <string>

#include "rl1lae/config.hpp"

using namespace rl1lae;

TEST_CASE("empty document gives the default scenario") {
    const auto c = parse_config("");
    CHECK(c.channel.length_n == 80);
    CHECK(c.channel.sparsity_k == 8);
    CHECK(c.snr_db == 10.0);
    CHECK(c.noise.sigma1_sq == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(c.noise.alpha1 == 0.0);
    CHECK(c.noise.alpha2 == 0.0);
    CHECK(c.num_runs == 1000);
    CHECK(c.iterations == 3000);
    CHECK(c.algorithms.size() == 4);
    for (Algorithm a : kAllAlgorithms) {
        CHECK(c.params_for(a).mu == 0.01);
        CHECK(c.params_for(a).lambda_r == 0.0001);
        CHECK(c.params_for(a).delta_r == 0.01);
    }
    CHECK(parse_config("# just a comment\n\n   \n") == c);
}

TEST_CASE("snr_db drives sigma1_sq") {
    const auto c = parse_config("snr_db = 5\n");
    CHECK(c.noise.sigma1_sq == doctest::Approx(0.31622776601683794).epsilon(1e-15));
}

TEST_CASE("range and syntax errors name the key") {
    auto key_of = [](const std::string& doc) {
        try {
            parse_config(doc);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("<no error>");
    };
    CHECK(key_of("phi = 1.5") == "phi");
    CHECK(key_of("phi = -0.1") == "phi");
    CHECK(key_of("mu = 0") == "mu");
    CHECK(key_of("delta_r = -1") == "delta_r");
    CHECK(key_of("lambda_r = -1e-4") == "lambda_r");
    CHECK(key_of("sigma2_sq = -3") == "sigma2_sq");
    CHECK(key_of("runs = 0") == "runs");
    CHECK(key_of("iterations = ten") == "iterations");
    CHECK(key_of("bogus = 1") == "bogus");
    CHECK(key_of("rl1_lae.gamma = 1") == "rl1_lae.gamma");
    CHECK(key_of("sigma1_sq = 0.1") == "sigma1_sq");
    CHECK(key_of("algorithms = LMS, NLMS") == "algorithms");
    CHECK(key_of("algorithms = LMS, LMS") == "algorithms");
    CHECK(key_of("sparsity = 90") == "sparsity");
    CHECK(key_of("phi = 0.1\nphi = 0.2") == "phi");
    CHECK(key_of("snr_db = inf") == "snr_db");
    CHECK_THROWS_AS(parse_config("phi 0.2"), ConfigError);

    try {
        parse_config("phi = 1.5");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("phi") != std::string::npos);
    }
}

TEST_CASE("per-algorithm keys override globals regardless of order") {
    const auto c = parse_config("rl1_lae.lambda_r = 0.002\nlambda_r = 0.0005\nlms.mu = 0.005\n");
    CHECK(c.params_for(Algorithm::RL1_LAE).lambda_r == 0.002);
    CHECK(c.params_for(Algorithm::RL1_LMS).lambda_r == 0.0005);
    CHECK(c.params_for(Algorithm::LMS).mu == 0.005);
    CHECK(c.params_for(Algorithm::LAE).mu == 0.01);
}

TEST_CASE("algorithm list") {
    const auto c = parse_config("algorithms = rl1-lae, LMS\n");
    CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::RL1_LAE, Algorithm::LMS});
}

TEST_CASE("serialize/parse round trip") {
    CHECK(parse_config(serialize_config(parse_config(""))) == parse_config(""));

    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ScenarioConfig c;
        c.channel.length_n = 1 + rng() % 200;
        c.channel.sparsity_k = 1 + rng() % c.channel.length_n;
        c.snr_db = 30.0 * u(rng) - 5.0;
        c.noise.phi = u(rng);
        c.noise.alpha1 = u(rng) - 0.5;
        c.noise.alpha2 = 3.0 * u(rng);
        c.noise.sigma2_sq = 100.0 * u(rng);
        for (auto& p : c.filter_params) p = FilterParams{u(rng) + 1e-9, u(rng) * 1e-3, u(rng) + 1e-9};
        c.algorithms = {Algorithm::RL1_LAE};
        if (rng() % 2) c.algorithms.push_back(Algorithm::LMS);
        c.iterations = 1 + rng() % 10000;
        c.num_runs = 1 + rng() % 5000;
        c.master_seed = rng();
        c.resolve();
        REQUIRE(parse_config(serialize_config(c)) == c);
    }
}

TEST_CASE("presets match the figure captions") {
    const auto& presets = list_presets();
    REQUIRE(presets.size() == 6);

    const auto& f1 = find_preset("fig1");
    CHECK(f1.config.noise.phi == 0.0);
    CHECK(f1.config.channel.sparsity_k == 8);

    const auto check = [](const char* name, std::size_t k, double phi, double s2) {
        const auto& p = find_preset(name);
        CAPTURE(name);
        CHECK(p.config.channel.length_n == 80);
        CHECK(p.config.channel.sparsity_k == k);
        CHECK(p.config.snr_db == 10.0);
        CHECK(p.config.noise.sigma1_sq == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(p.config.noise.phi == phi);
        CHECK(p.config.noise.sigma2_sq == s2);
        CHECK_FALSE(p.sweep.has_value());
    };
    check("fig2", 8, 0.2, 20.0);
    check("fig3", 8, 0.2, 40.0);
    check("fig4", 4, 0.2, 40.0);
    check("fig5", 8, 0.2, 80.0);

    auto fig3 = find_preset("fig3").config;
    fig3.channel.sparsity_k = 4;
    CHECK(fig3 == find_preset("fig4").config);

    const auto& f6 = find_preset("fig6");
    REQUIRE(f6.sweep.has_value());
    CHECK(f6.sweep->param == "phi");
    CHECK(f6.sweep->values == std::vector<std::string>{"0", "0.1", "0.2", "0.4"});
    CHECK(f6.config.noise.sigma2_sq == 40.0);
    CHECK(f6.config.channel.sparsity_k == 8);

    CHECK_THROWS_AS(find_preset("fig9"), ConfigError);
}
