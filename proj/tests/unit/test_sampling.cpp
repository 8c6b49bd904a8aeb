// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctf/rng.hpp"
#include "ctf/sampling.hpp"

using namespace ctf;

TEST_CASE("philox known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are addressed, not sequenced") {
    auto a = make_stream(42, 3, 2025, Purpose::lms);
    auto b = make_stream(42, 3, 2025, Purpose::lms);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    auto t0 = make_stream(42, 0, 2025, Purpose::lms);
    auto t1 = make_stream(42, 1, 2025, Purpose::lms);
    int same = 0;
    for (int i = 0; i < 100; ++i) same += t0.next_u32() == t1.next_u32();
    CHECK(same < 3);

    CHECK_THROWS(make_stream(1, 1ull << 32, 2025, Purpose::growth));
}

TEST_CASE("neighbouring streams are uncorrelated") {
    const int n = 200000;
    auto a = make_stream(7, 0, 2024, Purpose::model_size);
    auto b = make_stream(7, 1, 2024, Purpose::model_size);
    double sab = 0.0, sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = a.uniform(), y = b.uniform();
        CHECK_UNARY(x >= 0.0);
        sab += x * y, sa += x, sb += y, saa += x * x, sbb += y * y;
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double r = cov / std::sqrt((saa / n - (sa / n) * (sa / n)) * (sbb / n - (sb / n) * (sb / n)));
    CHECK(std::abs(r) < 0.01);
}

TEST_CASE("growth draws") {
    GrowthSpec spec;
    CHECK(spec.central() == doctest::Approx(4.125));
    spec.noise_sd = 0.0;
    auto s = make_stream(1, 0, 2024, Purpose::growth);
    CHECK(draw_growth(spec, s) == doctest::Approx(4.125));

    GrowthSpec single{{{5.0, 1.0}}, 0.0};
    CHECK(draw_growth(single, s) == 5.0);

    GrowthSpec noisy{{{1.2, 1.0}}, 3.0};
    for (int i = 0; i < 1000; ++i) CHECK(draw_growth(noisy, s) >= 1.0);

    GrowthSpec bad{{{6.3, 0.5}, {3.4, 0.4}}, 0.5};
    CHECK_THROWS(bad.validate());
}

TEST_CASE("lms draws") {
    LmsSpec logn;
    auto s = make_stream(9, 0, 2026, Purpose::lms);
    std::vector<double> v(200001);
    for (auto& x : v) {
        x = draw_lms(logn, 2026, s);
        REQUIRE(x >= 0.05);
        REQUIRE(x <= 0.5);
    }
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    CHECK(v[v.size() / 2] == doctest::Approx(std::sqrt(0.05 * 0.5)).epsilon(0.01));

    // Kolmogorov-Smirnov distance to the truncated normal in log space.
    std::sort(v.begin(), v.end());
    auto phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    const double mu = logn.log_mu(), sd = logn.log_sigma();
    const double lo = phi((std::log(0.05) - mu) / sd), hi = phi((std::log(0.5) - mu) / sd);
    double ks = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = (phi((std::log(v[i]) - mu) / sd) - lo) / (hi - lo);
        ks = std::max({ks, std::abs(f - static_cast<double>(i) / v.size()),
                       std::abs(f - static_cast<double>(i + 1) / v.size())});
    }
    CHECK(ks < 0.005);

    LmsSpec uni{LmsShape::uniform, 0.05, 0.5, {}};
    std::vector<double> u(100001);
    for (auto& x : u) x = draw_lms(uni, 2026, s);
    std::nth_element(u.begin(), u.begin() + u.size() / 2, u.end());
    CHECK(u[u.size() / 2] == doctest::Approx(0.275).epsilon(0.01));

    LmsSpec pinned{LmsShape::lognormal, 0.05, 0.5, {{2024, 3.8e25}}};
    CHECK(draw_lms(pinned, 2024, s, 3.8e26) == doctest::Approx(0.1));
    CHECK_THROWS(draw_lms(pinned, 2024, s, 3.8e25));
    CHECK_THROWS(draw_lms(pinned, 2024, s));

    LmsSpec point{LmsShape::lognormal, 0.2, 0.2, {}};
    point.validate();
    CHECK(draw_lms(point, 2025, s) == 0.2);
}

TEST_CASE("gradient draws") {
    auto s = make_stream(3, 0, kTrialWideYear, Purpose::gradient);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double k = draw_gradient(0.9, 1.1, s);
        REQUIRE(k >= 0.9);
        REQUIRE(k < 1.1);
        sum += k;
    }
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.002));
    CHECK(draw_gradient(0.7, 0.7, s) == 0.7);
    CHECK_THROWS(draw_gradient(1.1, 0.9, s));
}

TEST_CASE("model size draws are log-uniform") {
    auto s = make_stream(5, 0, 2027, Purpose::model_size);
    const int n = 100000;
    double log_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = draw_model_size(5e24, 5e25, s);
        REQUIRE(m >= 5e24);
        REQUIRE(m < 5e25);
        log_sum += std::log(m);
    }
    CHECK(std::exp(log_sum / n) == doctest::Approx(std::sqrt(5e24 * 5e25)).epsilon(0.01));
    CHECK_THROWS(draw_model_size(1.0, 1.0, s));
}
