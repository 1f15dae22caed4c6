#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "twistbench/corpus.hpp"
#include "twistbench/io.hpp"

using namespace twistbench;
using namespace twistbench::corpus;
using twistbench::io::Json;

namespace {

TwistedExtension make_ext(const GroupoidPtr& g, std::int64_t m, std::vector<std::int64_t> c,
                          std::vector<std::int64_t> lambda)
{
    return TwistedExtension(Cochain(g, 1, grading_coefficients(), std::move(c)),
                            Cochain(g, 2, phase_coefficients(m), std::move(lambda)));
}

Json with_format(Json j)
{
    Json out = {{"format", 1}};
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value();
    return out;
}

io::Document doc(const Json& j) { return io::parse_document(j.dump()); }

const char* z2_group = R"({"elements": ["e", "t"], "table": [["e", "t"], ["t", "e"]]})";

std::filesystem::path scratch_dir()
{
    auto d = std::filesystem::temp_directory_path() / "twistbench_test_io";
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("groupoid files round-trip across the corpus")
{
    for (const auto& [name, g] : standard_corpus()) {
        CAPTURE(name);
        auto j = with_format(io::groupoid_to_json(*g));
        auto d = doc(j);
        CHECK(d.kind == io::FileKind::groupoid);
        CHECK(io::validate_document(d).ok());
        auto back = io::parse_groupoid(d.json);
        CHECK(io::same_groupoid(*g, *back));
        CHECK(with_format(io::groupoid_to_json(*back)).dump() == j.dump());
    }
}

TEST_CASE("groupoid shorthands")
{
    auto group = Json::parse(z2_group);
    auto bg = io::parse_groupoid({{"group", group}});
    CHECK(io::same_groupoid(*bg, delooping(cyclic_group(2))));

    auto graded = group;
    graded["epsilon"] = {{"t", -1}};
    auto bgi = io::parse_groupoid({{"group", graded}});
    CHECK(bgi->phi(1) == -1);

    auto cj = io::parse_groupoid({{"conjugation", group}});
    CHECK(io::same_groupoid(*cj, conjugation_groupoid(cyclic_group(2))));

    // x·t swaps the two points; (g,x) runs x·g -> x
    Json act = {{"set", {"p", "q"}}, {"group", group}, {"act", {{"p", {{"e", "p"}, {"t", "q"}}}, {"q", {{"e", "q"}, {"t", "p"}}}}}};
    auto ag = io::parse_groupoid({{"action", act}});
    CHECK(ag->num_objects() == 2);
    CHECK(ag->num_morphisms() == 4);
    for (int h = 0; h < ag->num_morphisms(); ++h)
        if (!ag->base().is_identity(h)) CHECK(ag->src(h) != ag->tgt(h));

    Json cov = {{"base", {{"group", group}}}, {"objects", {"y0", "y1"}}, {"pi", {{"y0", "*"}, {"y1", "*"}}}};
    auto bz2 = share(delooping(cyclic_group(2)));
    auto cg = io::parse_groupoid({{"covering", cov}});
    CHECK(cg->num_objects() == 2);
    CHECK(cg->num_morphisms() == 8);
    CHECK(io::same_groupoid(*cg, *covering_groupoid(bz2, {"y0", "y1"}, {0, 0}).groupoid));
}

TEST_CASE("strict parsing")
{
    auto j = with_format(io::groupoid_to_json(point_groupoid()));
    j["colour"] = "blue";
    CHECK_THROWS_AS(io::validate_document(doc(j)), ParseError);

    CHECK_THROWS_AS(io::parse_document(R"({"objects": []})"), ParseError);
    CHECK_THROWS_AS(io::parse_document(R"({"format": 2, "objects": []})"), ParseError);
    CHECK_THROWS_AS(io::parse_document("{\"format\": 1, "), ParseError);
    CHECK_THROWS_AS(io::parse_document(R"({"format": 1, "kind": "sheaf"})"), ParseError);
    CHECK_THROWS_AS(io::parse_document(R"({"format": 1, "what": 3})"), ParseError);

    Json bad_id = {{"objects", {"a|b"}}, {"morphisms", Json::array()}};
    CHECK_THROWS_AS(io::parse_raw_groupoid(bad_id), ParseError);

    Json unknown = {{"objects", {"x"}}, {"morphisms", {{{"id", "1"}, {"src", "x"}, {"tgt", "y"}}}}};
    CHECK_THROWS_AS(io::parse_raw_groupoid(unknown), ParseError);

    auto bz2 = share(delooping(cyclic_group(2)));
    CHECK_THROWS_AS(io::parse_cochain_values(bz2, 2, phase_coefficients(4), {{"t", 1}}), ParseError);
    CHECK_THROWS_AS(io::parse_cochain_values(bz2, 2, phase_coefficients(4), {{"t|u", 1}}), ParseError);
    CHECK_THROWS_AS(io::parse_cochain_values(bz2, 2, phase_coefficients(4), {{"t|t", "one"}}), ParseError);
}

TEST_CASE("broken tables are reported, not thrown")
{
    auto j = with_format(io::groupoid_to_json(delooping(cyclic_group(2))));
    j["compose"][3][2] = "t";  // t∘t = t
    auto d = doc(j);
    auto r = io::validate_document(d);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.violations().front().witness.empty());
    CHECK_THROWS_AS(io::parse_groupoid(d.json), InvalidError);

    auto k = with_format(io::groupoid_to_json(delooping(cyclic_group(2))));
    k["phi"] = {{"e", -1}};
    CHECK_FALSE(io::validate_document(doc(k)).ok());
}

TEST_CASE("cochain and extension files")
{
    auto g = share(delooping(cyclic_group(2), {1, -1}));
    auto e = make_ext(g, 4, {0, 0}, {0, 0, 0, 2});

    SUBCASE("cochain")
    {
        auto j = io::cochain_to_json(e.lambda());
        auto d = doc(j);
        CHECK(d.kind == io::FileKind::cochain);
        auto back = io::parse_cochain(d.json);
        CHECK(back.values() == e.lambda().values());
        CHECK(back.coefficients() == e.lambda().coefficients());
        CHECK(j["values"]["t|t"] == 2);
    }
    SUBCASE("extension")
    {
        auto j = io::extension_to_json(e);
        CHECK(j["lambda"].size() == 1);
        CHECK(j["c"].empty());
        auto d = doc(j);
        CHECK(d.kind == io::FileKind::extension);
        CHECK(io::validate_document(d).ok());
        auto back = io::parse_extension(d.json);
        CHECK(io::rehome(back, g) == e);
        CHECK(io::extension_to_json(back).dump() == j.dump());
    }
    SUBCASE("values are reduced and absent keys are zero")
    {
        Json j = {{"format", 1}, {"groupoid", io::groupoid_to_json(*g)}, {"modulus", 4}, {"lambda", {{"t|t", -2}}}};
        auto back = io::rehome(io::parse_extension(j), g);
        CHECK(back == e);
    }
    SUBCASE("an invalid extension gives a report")
    {
        Json j = {{"format", 1}, {"groupoid", io::groupoid_to_json(*g)}, {"modulus", 4}, {"lambda", {{"t|t", 1}}}};
        CHECK_FALSE(io::validate_document(doc(j)).ok());
        j["lambda"] = Json::object();
        j["c"] = {{"t", 2}};
        CHECK_THROWS_AS(io::validate_document(doc(j)), ParseError);
        CHECK_THROWS_AS(io::parse_extension(j), ParseError);
    }
    SUBCASE("alpha")
    {
        auto alpha = Cochain(g, 0, grading_coefficients(), {1});
        auto j = io::extension_to_json(e, alpha);
        auto f = io::parse_extension_file(j);
        REQUIRE(f.alpha);
        CHECK(f.alpha->values() == std::vector<std::int64_t>{1});
        CHECK(io::validate_document(doc(j)).ok());
    }
}

TEST_CASE("relative paths")
{
    auto dir = scratch_dir();
    std::filesystem::create_directories(dir / "sub");
    {
        std::ofstream(dir / "sub" / "bz2.json") << with_format(io::groupoid_to_json(delooping(cyclic_group(2), {1, -1}))).dump();
        Json ext = {{"format", 1}, {"groupoid", "bz2.json"}, {"modulus", 4}, {"lambda", {{"t|t", 2}}}};
        std::ofstream(dir / "sub" / "ext.json") << ext.dump();
        Json rep = {{"format", 1},
                    {"extension", "sub/ext.json"},
                    {"dims", {{"*", {2, 0}}}},
                    {"ops",
                     {{"e", {{"matrix", {{{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}}}, {"antilinear", false}}},
                      {"t", {{"matrix", {{{0, 0}, {-1, 0}}, {{1, 0}, {0, 0}}}}, {"antilinear", true}}}}}};
        std::ofstream(dir / "rep.json") << rep.dump();
    }
    auto d = io::read_document(dir / "rep.json");
    CHECK(d.kind == io::FileKind::rep);
    CHECK(io::validate_document(d).ok());
    auto r = io::parse_rep(d.json, d.dir);
    CHECK(r.total_dimension() == 2);

    auto j = io::rep_to_json(r);
    CHECK_FALSE(j.contains("target"));
    auto r2 = io::parse_rep(doc(j).json);
    CHECK(io::rep_to_json(r2).dump() == j.dump());
    CHECK(validate_rep(r2).ok());

    CHECK_THROWS_AS(io::read_document(dir / "missing.json"), ParseError);
}

TEST_CASE("rep defaults and errors")
{
    auto g = share(delooping(cyclic_group(2), {1, -1}));
    auto ext = io::extension_to_json(make_ext(g, 4, {0, 0}, {0, 0, 0, 2}));
    ext.erase("format");

    Json zero = {{"format", 1}, {"extension", ext}};
    auto r = io::parse_rep(zero);
    CHECK(r.total_dimension() == 0);
    CHECK(r.op(1).antilinear);

    Json missing = {{"format", 1}, {"extension", ext}, {"dims", {{"*", {1, 0}}}}};
    CHECK_THROWS_AS(io::parse_rep(missing), ParseError);

    Json bad = missing;
    bad["ops"] = {{"e", {{"matrix", {{{1, 0}}}}}}, {"t", {{"matrix", {{{1, 0}, {2, 0}}}}, {"antilinear", true}}}};
    CHECK_THROWS_AS(io::parse_rep(bad), InvalidError);

    // a genuine rep that breaks the relation: T(t)² = +1 where λ(t,t) = 1/2
    Json rel = missing;
    rel["ops"] = {{"e", {{"matrix", {{1}}}}}, {"t", {{"matrix", {{1}}}, {"antilinear", true}}}};
    auto rep = io::validate_document(doc(rel));
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations().front().rule == "relation");
}

TEST_CASE("multiplicative, Real and DFM files")
{
    SUBCASE("multiplicative")
    {
        Json j = {{"format", 1}, {"group", Json::parse(z2_group)}, {"modulus", 2}, {"omega", {{"t|t|t", 1}}}};
        auto d = doc(j);
        CHECK(d.kind == io::FileKind::multiplicative);
        CHECK(io::validate_document(d).ok());
        auto t = io::parse_multiplicative(d.json);
        CHECK(t.at(1, 1, 1) == 1);
        auto out = io::multiplicative_to_json(t);
        CHECK(io::multiplicative_to_json(io::parse_multiplicative(out)).dump() == out.dump());
        j["omega"]["t|e|t"] = 1;
        CHECK_FALSE(io::validate_document(doc(j)).ok());
    }
    SUBCASE("Real")
    {
        auto swap = two_point_swap();
        const auto& g = swap.base();
        auto zero2 = Cochain::zero(g, 2, phase_coefficients(4));
        auto zero1 = Cochain::zero(g, 1, phase_coefficients(4));
        RealCentralExtension r{swap, 4, zero2, zero1};
        auto j = io::real_extension_to_json(r);
        auto d = doc(j);
        CHECK(d.kind == io::FileKind::real_extension);
        CHECK(io::validate_document(d).ok());
        auto back = io::parse_real_extension(d.json);
        CHECK(back.real.tau_obj(0) == 1);
        CHECK(io::real_extension_to_json(back).dump() == j.dump());

        Json ident = {{"format", 1}, {"groupoid", {{"group", Json::parse(z2_group)}}}, {"tau", "identity"}, {"modulus", 4}};
        auto id = io::parse_real_extension(ident);
        CHECK(id.real.tau_mor(1) == 1);
    }
    SUBCASE("DFM")
    {
        Json j = {{"format", 1},
                  {"cover", {{"base", {{"group", Json::parse(z2_group)}}}, {"objects", {"y"}}, {"pi", {{"y", "*"}}}}},
                  {"d", {{"y", 1}}},
                  {"modulus", 2}};
        auto d = doc(j);
        CHECK(d.kind == io::FileKind::dfm);
        CHECK(io::validate_document(d).ok());
        auto t = io::parse_dfm(d.json);
        CHECK(t.d == std::vector<std::int64_t>{1});
        auto out = io::dfm_to_json(t);
        CHECK(io::dfm_to_json(io::parse_dfm(out)).dump() == out.dump());
    }
    SUBCASE("functor")
    {
        auto bz2 = share(delooping(cyclic_group(2)));
        auto F = terminal_functor(bz2, share(point_groupoid()));
        auto j = io::functor_to_json(F);
        auto d = doc(j);
        CHECK(d.kind == io::FileKind::functor);
        auto back = io::parse_functor(d.json);
        CHECK(back.mor_map() == F.mor_map());
        CHECK(io::functor_to_json(back).dump() == j.dump());
        Json proj = {{"format", 1},
                     {"projection", {{"base", {{"group", Json::parse(z2_group)}}}, {"objects", {"a", "b"}}, {"pi", {{"a", "*"}, {"b", "*"}}}}}};
        CHECK(io::parse_functor(proj).source()->num_objects() == 2);
        CHECK(io::parse_functor(Json{{"terminal", {{"group", Json::parse(z2_group)}}}}).target()->num_morphisms() == 1);
    }
}
