#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "skelgraph/image_io.hpp"
#include "skelgraph/imaging.hpp"

using namespace skelgraph;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

GrayImage random_image(int w, int h, std::uint64_t seed) {
    GrayImage img(w, h);
    std::mt19937_64 rng(seed);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng() % 256);
    return img;
}

} // namespace

TEST_CASE("load_grayscale reads a raw PGM bit-exactly") {
    std::string path = temp_path("io_identity.pgm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n2 2\n255\n";
        unsigned char px[4] = {0, 100, 200, 255};
        out.write(reinterpret_cast<char*>(px), 4);
    }
    GrayImage img = load_grayscale(path);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.data == std::vector<std::uint8_t>{0, 100, 200, 255});
}

TEST_CASE("load_grayscale handles ascii PGM and header comments") {
    std::string path = temp_path("io_ascii.pgm");
    {
        std::ofstream out(path);
        out << "P2\n# a comment\n3 1\n255\n7 0 255\n";
    }
    GrayImage img = load_grayscale(path);
    CHECK(img.data == std::vector<std::uint8_t>{7, 0, 255});
}

TEST_CASE("color inputs reduce to luminance with half-up rounding") {
    std::string path = temp_path("io_color.ppm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P6\n2 1\n255\n";
        unsigned char px[6] = {100, 100, 100, 255, 0, 0};
        out.write(reinterpret_cast<char*>(px), 6);
    }
    GrayImage img = load_grayscale(path);
    CHECK(img.data[0] == 100); // equal channels stay put
    CHECK(img.data[1] == 76);  // 0.299*255 = 76.245
}

TEST_CASE("unsupported bit depth and missing files raise typed errors") {
    std::string deep = temp_path("io_deep.pgm");
    {
        std::ofstream out(deep, std::ios::binary);
        out << "P5\n1 1\n65535\n";
        out.put(0);
        out.put(0);
    }
    CHECK_THROWS_AS(load_grayscale(deep), FormatError);
    CHECK_THROWS_WITH_AS(load_grayscale("/nonexistent/x.pgm"),
                         "cannot open /nonexistent/x.pgm", IoError);
}

TEST_CASE("PGM round-trip through write_pgm") {
    GrayImage img = random_image(13, 9, 77);
    std::string path = temp_path("io_roundtrip.pgm");
    write_pgm(img, path);
    CHECK(load_grayscale(path) == img);
}

TEST_CASE("gaussian kernel sums to 1") {
    for (double sigma : {0.4, 1.0, 2.5}) {
        for (int radius : {1, 2, 5}) {
            auto k = gaussian_kernel(sigma, radius);
            double sum = 0.0;
            for (double v : k) sum += v;
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(gaussian_kernel(0.0, 2), ParamError);
    CHECK_THROWS_AS(gaussian_kernel(-1.0, 2), ParamError);
    CHECK_THROWS_AS(gaussian_kernel(1.0, 0), ParamError);
}

TEST_CASE("blur preserves constant images exactly") {
    GrayImage img(21, 17, 128);
    CHECK(gaussian_blur(img, 1.0, 2) == img);
    GrayImage img2(8, 8, 255);
    CHECK(gaussian_blur(img2, 3.0, 4) == img2);
}

TEST_CASE("impulse response center equals round(255 * w00)") {
    GrayImage img(31, 31, 0);
    img.at(15, 15) = 255;
    GrayImage blurred = gaussian_blur(img, 1.0, 2);

    auto k = gaussian_kernel(1.0, 2);
    double w00 = k[2] * k[2];
    CHECK(blurred.at(15, 15) == static_cast<std::uint8_t>(std::floor(255.0 * w00 + 0.5)));
    CHECK(blurred.at(15, 15) == 41); // frozen from the hand computation
    // matches the dense 2D convolution oracle everywhere
    CHECK(blurred == oracles::dense_blur_reference(img, 1.0, 2));
}

TEST_CASE("blur matches the dense oracle on a random image") {
    GrayImage img = random_image(25, 19, 2024);
    CHECK(gaussian_blur(img, 1.3, 3) == oracles::dense_blur_reference(img, 1.3, 3));
}

TEST_CASE("sigma -> 0 collapses the kernel to the identity") {
    GrayImage img = random_image(16, 16, 5);
    CHECK(gaussian_blur(img, 1e-6, 1) == img);
    CHECK(oracles::dense_blur_reference(img, 1e-6, 1) == img);
}

TEST_CASE("threshold comparison is strict") {
    GrayImage img(3, 1);
    img.data = {150, 100, 0};
    BinaryImage out = threshold_binarize(img, 100);
    CHECK(out.data == std::vector<std::uint8_t>{1, 0, 0});
    CHECK(threshold_binarize(img, 0).data == std::vector<std::uint8_t>{1, 1, 0});
}

TEST_CASE("foreground count is monotone non-increasing in the threshold") {
    GrayImage img = random_image(32, 32, 99);
    std::size_t prev = img.data.size() + 1;
    for (int t : {0, 10, 50, 100, 128, 200, 254, 255}) {
        BinaryImage b = threshold_binarize(img, t);
        for (auto v : b.data) CHECK((v == 0 || v == 1));
        std::size_t ones = b.count_foreground();
        CHECK(ones <= prev);
        prev = ones;
    }
}

TEST_CASE("invert is a bit-exact involution") {
    BinaryImage b(4, 1);
    b.data = {0, 1, 1, 0};
    CHECK(invert(b).data == std::vector<std::uint8_t>{1, 0, 0, 1});
    CHECK(invert(invert(b)) == b);

    BinaryImage zeros(6, 3, 0);
    BinaryImage ones(6, 3, 1);
    CHECK(invert(zeros) == ones);

    std::mt19937_64 rng(3);
    BinaryImage randomBits(20, 20);
    for (auto& v : randomBits.data) v = rng() & 1;
    CHECK(invert(invert(randomBits)) == randomBits);
}
