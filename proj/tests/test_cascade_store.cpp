#include <doctest.h>

#include <filesystem>

#include "imodel/cascade.hpp"
#include "imodel/cascade_io.hpp"
#include "imodel/errors.hpp"

using namespace imodel;

namespace {

CascadeSet small_set() {
    CascadeSet cs;
    cs.n_components = 5;
    cs.cascades = {
        Cascade{{{0, 1}, {3}}},
        Cascade{{{2}, {0, 4}, {1}}},
        Cascade{{{4}}},
    };
    return cs;
}

}  // namespace

TEST_CASE("failure totals per cascade") {
    const Cascade c{{{0, 1}, {3}, {2, 4}}};
    CHECK(c.total_failures() == 5);
    CHECK(c.propagated_failures() == 3);
    CHECK(Cascade{{{7}}}.propagated_failures() == 0);
}

TEST_CASE("normalization sorts generations and trims trailing empties") {
    Cascade c{{{3, 1}, {2}, {}, {}}};
    const Cascade n = normalized(c);
    CHECK(n.generations == std::vector<std::vector<ComponentId>>{{1, 3}, {2}});
    CHECK(normalized(n) == n);
}

TEST_CASE("dedupe keeps the first occurrence and compacts emptied generations") {
    Cascade c{{{0, 1}, {1}, {2}}};
    const Cascade d = dedupe_first(c);
    CHECK(d.generations == std::vector<std::vector<ComponentId>>{{0, 1}, {2}});

    Cascade all_dup{{{4}, {4}, {4}}};
    CHECK(dedupe_first(all_dup).generations == std::vector<std::vector<ComponentId>>{{4}});
}

TEST_CASE("validation rejects malformed cascades") {
    CHECK_NOTHROW(validate(small_set()));

    CHECK_THROWS_AS(validate_cascade(Cascade{}, 5, 0), ValidationError);
    CHECK_THROWS_AS(validate_cascade(Cascade{{{}}}, 5, 0), ValidationError);
    // interior empty generation
    CHECK_THROWS_AS(validate_cascade(Cascade{{{0}, {}, {1}}}, 5, 0), ValidationError);
    // id out of range
    CHECK_THROWS_AS(validate_cascade(Cascade{{{5}}}, 5, 0), ValidationError);
    // repeated failure across generations
    CHECK_THROWS_AS(validate_cascade(Cascade{{{0}, {0}}}, 5, 0), ValidationError);
    // unsorted generation
    CHECK_THROWS_AS(validate_cascade(Cascade{{{2, 1}}}, 5, 0), ValidationError);
}

TEST_CASE("prefix selection") {
    const CascadeSet cs = small_set();
    CHECK(take_prefix(cs, 2).cascades.size() == 2);
    CHECK(take_prefix(cs, 2).cascades[1] == cs.cascades[1]);
    CHECK(take_prefix(cs, 0).cascades.empty());
    CHECK_THROWS_AS(take_prefix(cs, 4), ValidationError);
}

TEST_CASE("JSON codec round trip") {
    const CascadeSet cs = small_set();
    const std::string text = cascades_to_json(cs);
    CHECK(cascades_from_json(text) == cs);
    // serialization is stable
    CHECK(cascades_to_json(cascades_from_json(text)) == text);
}

TEST_CASE("JSON loader validates and reports malformed input") {
    CHECK_THROWS_AS(cascades_from_json("{"), ValidationError);
    CHECK_THROWS_AS(cascades_from_json("{\"cascades\": []}"), ValidationError);
    // component 7 out of range
    CHECK_THROWS_AS(cascades_from_json(R"({"n_components": 3, "cascades": [[[7]]]})"),
                    ValidationError);
    // duplicate failure is rejected unless dedupe is requested
    const std::string dup = R"({"n_components": 3, "cascades": [[[0],[0]]]})";
    CHECK_THROWS_AS(cascades_from_json(dup), ValidationError);
    LoadOptions opts;
    opts.dedupe_first = true;
    CHECK(cascades_from_json(dup, opts).cascades[0].generations.size() == 1);
}

TEST_CASE("CSV codec round trip and inference") {
    const CascadeSet cs = small_set();
    const std::string text = cascades_to_csv(cs);
    const CascadeSet back = cascades_from_csv(text);
    // the CSV carries no n_components; it is inferred as max id + 1
    CHECK(back.n_components == 5);
    CHECK(back.cascades == cs.cascades);

    LoadOptions opts;
    opts.n_components = 9;
    CHECK(cascades_from_csv(text, opts).n_components == 9);
}

TEST_CASE("CSV loader rejects structural problems") {
    CHECK_THROWS_AS(cascades_from_csv(""), ValidationError);
    CHECK_THROWS_AS(cascades_from_csv("a,b\n"), ValidationError);
    CHECK_THROWS_AS(cascades_from_csv("cascade,generation,component\n0,0\n"), ValidationError);
    // generation 1 missing entirely
    CHECK_THROWS_AS(cascades_from_csv("cascade,generation,component\n0,0,1\n0,2,2\n"),
                    ValidationError);
    CHECK_THROWS_AS(cascades_from_csv("cascade,generation,component\n0,0,-1\n"),
                    ValidationError);
}

TEST_CASE("file round trip in both formats") {
    const CascadeSet cs = small_set();
    const auto dir = std::filesystem::temp_directory_path() / "imodel_cascade_io_test";
    std::filesystem::create_directories(dir);
    for (auto format : {CascadeFormat::json, CascadeFormat::csv}) {
        const auto path = dir / (format == CascadeFormat::json ? "c.json" : "c.csv");
        save_cascades(cs, path, format);
        LoadOptions opts;
        if (format == CascadeFormat::csv) opts.n_components = cs.n_components;
        CHECK(load_cascades(path, format, opts) == cs);
    }
    CHECK_THROWS_AS(load_cascades(dir / "missing.json", CascadeFormat::json), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("format names") {
    CHECK(parse_cascade_format("json") == CascadeFormat::json);
    CHECK(parse_cascade_format("csv") == CascadeFormat::csv);
    CHECK_THROWS_AS(parse_cascade_format("xml"), ValidationError);
}
