#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "srtk/metrics.hpp"

using namespace srtk;

TEST_CASE("mse basics") {
    Image a = oracles::random_image(4, 4, 0.0, 255.0, 1);
    CHECK(mse(a, a) == 0.0);

    Image b = a;
    for (double& v : b.data) v += 255.0;
    CHECK(mse(a, b) == doctest::Approx(65025.0).epsilon(1e-15));

    Image c(2, 2, 0.0), d(2, 2, 0.0);
    d.data[3] = 2.0;
    CHECK(mse(c, d) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(mse(a, Image(3, 3, 0.0)), input_error);
}

TEST_CASE("mse of a constant offset is the offset squared") {
    Image a = oracles::random_image(5, 7, 0.0, 200.0, 9);
    for (double c : {0.5, 3.0, -12.25}) {
        Image b = a;
        for (double& v : b.data) v += c;
        CHECK(mse(a, b) == doctest::Approx(c * c).epsilon(1e-12));
    }
}

TEST_CASE("psnr definition and sentinel") {
    Image a = oracles::random_image(4, 4, 0.0, 255.0, 11);
    QualityReport same = psnr(a, a);
    CHECK_FALSE(same.psnr_db.has_value());
    CHECK(same.mse == 0.0);
    CHECK(same.n_pixels == 16);

    Image b = a;
    for (double& v : b.data) v += 255.0;
    QualityReport worst = psnr(a, b);
    REQUIRE(worst.psnr_db.has_value());
    CHECK(*worst.psnr_db == doctest::Approx(0.0).epsilon(1e-12));

    // mse exactly 1: one pixel off by 2 in a 2x2 image.
    Image c(2, 2, 0.0), d(2, 2, 0.0);
    d.data[0] = 2.0;
    QualityReport unit = psnr(c, d);
    REQUIRE(unit.psnr_db.has_value());
    long double expected = 10.0L * std::log10(65025.0L);
    CHECK(std::fabs(*unit.psnr_db - double(expected)) <= 1e-3);
}

TEST_CASE("psnr is symmetric and monotone in mse") {
    Image a = oracles::random_image(6, 6, 0.0, 255.0, 13);
    Image b = oracles::random_image(6, 6, 0.0, 255.0, 14);
    QualityReport ab = psnr(a, b), ba = psnr(b, a);
    CHECK(ab.mse == ba.mse);
    CHECK(*ab.psnr_db == *ba.psnr_db);

    Image closer = a;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        closer.data[i] = 0.5 * (a.data[i] + b.data[i]);
    CHECK(*psnr(a, closer).psnr_db > *psnr(a, b).psnr_db);
}

TEST_CASE("sigma2 from snr") {
    Image c100(8, 8, 100.0);
    CHECK(sigma2_from_snr(c100, 20.0) == doctest::Approx(100.0).epsilon(1e-15));

    Image any = oracles::random_image(8, 8, 0.0, 255.0, 17);
    CHECK(sigma2_from_snr(any, 30.0) ==
          doctest::Approx(sigma2_from_snr(any, 20.0) / 10.0).epsilon(1e-12));

    Image zero(4, 4, 0.0);
    CHECK(sigma2_from_snr(zero, 20.0) == 0.0);
}

TEST_CASE("noise variance estimator") {
    Image flat(16, 16, 123.0);
    CHECK(estimate_noise_variance(flat) == 0.0);

    CHECK_THROWS_AS(estimate_noise_variance(Image(2, 2, 0.0)), input_error);

    // Seeded AWGN of known variance on a constant background.
    Image img(128, 128, 100.0);
    std::mt19937_64 rng(23);
    std::normal_distribution<double> noise(0.0, 10.0);
    for (double& v : img.data) v += noise(rng);
    double est = estimate_noise_variance(img);
    CHECK(est >= 75.0);
    CHECK(est <= 125.0);

    // Scaling intensities by 2 scales the variance estimate by 4.
    Image doubled = img;
    for (double& v : doubled.data) v *= 2.0;
    CHECK(estimate_noise_variance(doubled) == doctest::Approx(4.0 * est).epsilon(1e-12));

    // Translation invariance.
    Image shifted = img;
    for (double& v : shifted.data) v += 31.7;
    CHECK(std::fabs(estimate_noise_variance(shifted) - est) <= 1e-12 * est);
}
