#include <catch2/catch_amalgamated.hpp>

#include "mrv/mrv.hpp"

using namespace mrv;

namespace {

RunConfig small_cfg()
{
    RunConfig cfg;
    cfg.box.p_max = 8;
    cfg.box.q_max = 6;
    cfg.box.m_max = 8;
    cfg.checks = {"uct-classical", "uct-motivic", "ker-t2", "presentation-vs-uct"};
    return cfg;
}

}  // namespace

TEST_CASE("JSON report follows the published schema")
{
    Context ctx;
    RunConfig cfg = small_cfg();
    RunResult result = run_verify(ctx, cfg);
    const std::string text = render_reports_json(result.reports);
    const Json doc = Json::parse(text);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 4);
    for (const Json& check : doc) {
        REQUIRE(check.contains("check"));
        REQUIRE(check.at("check").is_string());
        REQUIRE(check.at("box").contains("p_max"));
        REQUIRE(check.at("box").contains("q_max"));
        REQUIRE(check.at("box").contains("m_max"));
        const std::string status = check.at("status").get<std::string>();
        REQUIRE((status == "pass" || status == "fail" || status == "report"));
        REQUIRE(check.at("findings").is_array());
        for (const Json& f : check.at("findings")) {
            REQUIRE(f.at("bidegree").is_array());
            REQUIRE(f.at("expected").is_string());
            REQUIRE(f.at("computed").is_string());
            REQUIRE(f.at("witness").is_array());
        }
    }
    // pass/fail checks have empty findings exactly when they pass
    for (const Json& check : doc) {
        const std::string status = check.at("status").get<std::string>();
        if (status == "pass") REQUIRE(check.at("findings").empty());
        if (status == "fail") REQUIRE(!check.at("findings").empty());
    }
}

TEST_CASE("reports are byte-identical across runs and job counts")
{
    auto render_with_jobs = [](int jobs) {
        Context ctx;
        RunConfig cfg = small_cfg();
        cfg.jobs = jobs;
        RunResult result = run_verify(ctx, cfg);
        return render_reports_json(result.reports) + render_reports_csv(result.reports) +
               render_reports_md(result.reports) + render_reports_text(result.reports);
    };
    const std::string once = render_with_jobs(1);
    REQUIRE(render_with_jobs(1) == once);
    REQUIRE(render_with_jobs(4) == once);
    REQUIRE(render_with_jobs(13) == once);
}

TEST_CASE("config parsing and flag semantics")
{
    Json j = Json::parse(R"({"p_max": 9, "q_max": 5, "checks": ["hilbert"], "jobs": 2})");
    RunConfig cfg = config_from_json(j);
    REQUIRE(cfg.box.p_max == 9);
    REQUIRE(cfg.box.q_max == 5);
    REQUIRE(cfg.box.m_max == 24);  // default retained
    REQUIRE(cfg.checks == std::vector<std::string>({"hilbert"}));
    REQUIRE(cfg.jobs == 2);

    REQUIRE_THROWS_AS(config_from_json(Json::parse(R"({"p_max": -3})")), usage_error);

    Context ctx;
    RunConfig bad_ring;
    bad_ring.rings = {"no-such-ring"};
    REQUIRE_THROWS_AS(run_verify(ctx, bad_ring), usage_error);
}

TEST_CASE("catalog export round-trips through JSON")
{
    const Catalog cat = build_catalog();
    const Json doc = catalog_json(cat);
    REQUIRE(doc.at("rings").size() == 6);
    REQUIRE(doc.at("maps").size() >= 6);

    Catalog rebuilt;  // import every ring back from its export
    Json rings_doc;
    rings_doc["rings"] = doc.at("rings");
    apply_ring_overrides(rebuilt, rings_doc);
    REQUIRE(rebuilt.rings.size() == cat.rings.size());

    Context a{build_catalog()}, b{std::move(rebuilt)};
    for (int p = 0; p <= 10; ++p)
        for (int q = 0; q <= 7; ++q) {
            auto va = piece_view(a, "motivic-z", Bidegree(p, q));
            auto vb = piece_view(b, "motivic-z", Bidegree(p, q));
            REQUIRE(va.basis == vb.basis);
            REQUIRE(render_group(va.group) == render_group(vb.group));
        }
    for (int n = 0; n <= 6; ++n)
        REQUIRE(piece_view(a, "chow", Bidegree(n)).basis ==
                piece_view(b, "chow", Bidegree(n)).basis);
}

TEST_CASE("group rendering grammar")
{
    AbelianGroup g;
    REQUIRE(render_group(g) == "0");
    g.rank = 1;
    REQUIRE(render_group(g) == "Z");
    g.rank = 3;
    REQUIRE(render_group(g) == "Z^3");
    g.torsion = {2, 2};
    REQUIRE(render_group(g) == "Z^3 + (Z/2)^2");
    g.rank = 0;
    g.torsion = {2};
    REQUIRE(render_group(g) == "Z/2");
}

TEST_CASE("table rendering")
{
    Context ctx;
    PoincareTable t = poincare_table(ctx, "chow", 4, -1);
    const std::string csv = render_table_csv(t);
    REQUIRE(csv == "p,group\n0,Z\n1,0\n2,Z^2\n3,Z/2\n4,Z^3\n");
    const Json j = Json::parse(render_table_json(t));
    REQUIRE(j.at("cells").size() == 5);
    REQUIRE(j.at("cells")[4].at("rank") == 3);

    PoincareTable m = poincare_table(ctx, "motivic-z", 4, 2);
    const std::string md = render_table_md(m);
    REQUIRE(md.find("| 4 |") != std::string::npos);
}
