#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mvhl/instance_io.hpp"
#include "mvhl/measurement.hpp"
#include "mvhl/rng.hpp"
#include "test_util.hpp"

using namespace mvhl;
using testutil::random_cmat;
using testutil::random_cvec;

namespace {

Instance make_instance(std::uint64_t seed, Index K, Index s, Index n, bool with_truth) {
    Rng rng(seed);
    Instance inst;
    inst.s = s;
    inst.n = n;
    inst.subspaces.model = SubspaceModel::DftRows;
    for (Index k = 0; k < K; ++k) inst.subspaces.mats.push_back(random_cmat(n, s, rng));
    inst.y = random_cvec(n, rng);
    if (with_truth)
        for (Index k = 0; k < K; ++k) inst.truth.push_back(random_cmat(s, n, rng));
    return inst;
}

std::string render(const Instance& inst) {
    std::ostringstream out;
    write_instance(out, inst);
    return out.str();
}

Instance parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in, "test");
}

}  // namespace

TEST_CASE("instance_io: complex token round trips") {
    Rng rng(1);
    for (int rep = 0; rep < 200; ++rep) {
        const Complex z(rng.gaussian() * std::pow(10.0, rng.uniform(-8, 8)),
                        rng.gaussian() * std::pow(10.0, rng.uniform(-8, 8)));
        const Complex back = parse_complex(format_complex(z));
        CHECK(back.real() == z.real());
        CHECK(back.imag() == z.imag());
    }
}

TEST_CASE("instance_io: complex token grammar") {
    SUBCASE("accepted forms") {
        CHECK(parse_complex("1.5") == Complex(1.5, 0));
        CHECK(parse_complex("-2") == Complex(-2, 0));
        CHECK(parse_complex("2j") == Complex(0, 2));
        CHECK(parse_complex("-j") == Complex(0, -1));
        CHECK(parse_complex("+j") == Complex(0, 1));
        CHECK(parse_complex("1+2j") == Complex(1, 2));
        CHECK(parse_complex("1+j") == Complex(1, 1));
        CHECK(parse_complex("1e-3+2e4j") == Complex(1e-3, 2e4));
        CHECK(parse_complex("-1.25E2-0.5j") == Complex(-125, -0.5));
    }
    SUBCASE("rejected forms") {
        CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
        CHECK_THROWS_AS(parse_complex("j"), std::invalid_argument);
        CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
        CHECK_THROWS_AS(parse_complex("2i"), std::invalid_argument);
        CHECK_THROWS_AS(parse_complex("1+2"), std::invalid_argument);
        CHECK_THROWS_AS(parse_complex("1+2j3"), std::invalid_argument);
        CHECK_THROWS_AS(parse_complex("1 + 2j"), std::invalid_argument);
    }
}

TEST_CASE("instance_io: write/parse round trip is exact") {
    const Instance inst = make_instance(2, 2, 3, 7, true);
    const std::string text = render(inst);
    const Instance back = parse_text(text);

    CHECK(back.s == inst.s);
    CHECK(back.n == inst.n);
    CHECK(back.subspaces.model == inst.subspaces.model);
    REQUIRE(back.subspaces.mats.size() == 2);
    REQUIRE(back.truth.size() == 2);
    for (Index k = 0; k < 2; ++k) {
        CHECK((back.subspaces.mats[k] - inst.subspaces.mats[k]).norm() == 0.0);
        CHECK((back.truth[k] - inst.truth[k]).norm() == 0.0);
    }
    CHECK((back.y - inst.y).norm() == 0.0);

    SUBCASE("second render is byte-identical") { CHECK(render(back) == text); }
}

TEST_CASE("instance_io: truth sections are optional as a block") {
    const Instance inst = make_instance(3, 1, 2, 5, false);
    const Instance back = parse_text(render(inst));
    CHECK(back.truth.empty());
}

TEST_CASE("instance_io: parse failures carry origin, line and field") {
    const Instance inst = make_instance(4, 2, 1, 4, true);

    SUBCASE("measurement length mismatch") {
        Instance bad = inst;
        Rng rng(9);
        bad.y = random_cvec(3, rng);
        const std::string text = render(bad);
        CHECK_THROWS_WITH_AS(parse_text(text),
                             doctest::Contains("[y]"), IoError);
    }
    SUBCASE("unknown shape key") {
        std::string text = render(inst);
        text.replace(text.find("s = "), 4, "q = ");
        try {
            parse_text(text);
            FAIL("expected a parse error");
        } catch (const IoError& err) {
            const std::string what = err.what();
            CHECK(what.find("test:") != std::string::npos);
            CHECK(what.find("'q'") != std::string::npos);
        }
    }
    SUBCASE("channel index out of range") {
        std::string text = render(inst);
        const auto pos = text.find("[B_2]");
        text = text.substr(0, pos) + "[B_3]" + text.substr(pos + 5);
        CHECK_THROWS_WITH_AS(parse_text(text), doctest::Contains("outside 1..2"), IoError);
    }
    SUBCASE("missing channel section") {
        std::string text = render(inst);
        text = text.substr(0, text.find("[B_2]"));
        CHECK_THROWS_WITH_AS(parse_text(text), doctest::Contains("[B_2]"), IoError);
    }
    SUBCASE("duplicate section") {
        std::string text = render(inst);
        const auto pos = text.find("[B_2]");
        text = text.substr(0, pos) + "[B_1]" + text.substr(pos + 5);
        CHECK_THROWS_WITH_AS(parse_text(text), doctest::Contains("duplicate"), IoError);
    }
    SUBCASE("malformed complex value points at the line") {
        std::string text = render(inst);
        const auto pos = text.find('\n', text.find("[y]")) + 1;
        const auto end = text.find('\n', pos);
        text = text.substr(0, pos) + "bogus" + text.substr(end);
        try {
            parse_text(text);
            FAIL("expected a parse error");
        } catch (const IoError& err) {
            const std::string what = err.what();
            CHECK(what.find("test:") != std::string::npos);
            CHECK(what.find("bogus") != std::string::npos);
        }
    }
    SUBCASE("empty input") {
        CHECK_THROWS_WITH_AS(parse_text(""), doctest::Contains("empty"), IoError);
    }
    SUBCASE("incomplete truth block") {
        std::string text = render(inst);
        const auto pos = text.find("[X_2]");
        text = text.substr(0, pos);  // drop the second truth section entirely
        CHECK_THROWS_WITH_AS(parse_text(text), doctest::Contains("[X_2]"), IoError);
    }
}

TEST_CASE("instance_io: file round trip and missing-file error") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mvhl_io_test";
    fs::create_directories(dir);
    const std::string path = (dir / "case.instance").string();

    const Instance inst = make_instance(5, 2, 2, 6, true);
    write_instance(path, inst);
    const Instance back = read_instance(path);
    CHECK((back.y - inst.y).norm() == 0.0);

    CHECK_THROWS_AS(read_instance((dir / "nope.instance").string()), IoError);
    fs::remove_all(dir);
}
