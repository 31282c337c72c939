#pragma once

#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "mrv/report.hpp"
#include "mrv/verify.hpp"

namespace mrv {

struct RunConfig {
    Box box;
    std::vector<std::string> rings;   // optional focus list; names validated up front
    std::vector<std::string> checks;  // empty = full suite
    std::string format = "text";
    std::string out;        // empty = stdout only
    int jobs = 1;
    std::string rings_file;  // optional catalog override document
};

inline const std::vector<std::string>& all_check_names()
{
    static const std::vector<std::string> names = {
        "hilbert",        "torsion-pattern", "uct-classical",    "uct-motivic",
        "squares",        "ker-t2",          "no-square-root",   "lift-roundtrip",
        "no-lift-family9", "chow-slice",     "torsion-is-2",     "presentation-vs-uct"};
    return names;
}

inline CheckReport run_check(Context& ctx, const std::string& name, const Box& box)
{
    if (name == "hilbert") return check_hilbert(ctx, box);
    if (name == "torsion-pattern") return check_torsion_pattern(ctx, box);
    if (name == "uct-classical") return check_uct_classical(ctx, box);
    if (name == "uct-motivic") return check_uct_motivic(ctx, box);
    if (name == "squares") return check_squares(ctx, box);
    if (name == "ker-t2") return check_ker_t2(ctx, box);
    if (name == "no-square-root") return check_no_square_root_suite(ctx, box);
    if (name == "lift-roundtrip") return check_lift_roundtrip(ctx, box);
    if (name == "no-lift-family9") return check_no_lift_family9(ctx, box);
    if (name == "chow-slice") return check_chow_slice(ctx, box);
    if (name == "torsion-is-2") return check_torsion_is_2(ctx, box);
    if (name == "presentation-vs-uct") return check_presentation_vs_uct(ctx, box);
    throw usage_error("unknown check '" + name + "'");
}

inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn)
{
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    const int nworkers = std::min(jobs, n);
    workers.reserve(size_t(nworkers));
    for (int w = 0; w < nworkers; ++w)
        workers.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : workers) t.join();
}

// Precompute every graded piece the checks will read. Aggregation stays
// serial, so output bytes are independent of the job count.
inline void warm_pieces(Context& ctx, const Box& box, int jobs)
{
    std::vector<std::pair<std::string, Bidegree>> tasks;
    const int m_hi = std::max(box.m_max + 1, 41);
    for (int m = 0; m <= m_hi; ++m) {
        tasks.push_back({"classical-z", Bidegree(m)});
        tasks.push_back({"classical-z2", Bidegree(m)});
    }
    for (int n = 0; 2 * n <= std::max(box.p_max, 16); ++n) tasks.push_back({"chow", Bidegree(n)});
    for (int p = 0; p <= box.p_max + 1; ++p)
        for (int q = 0; q <= box.q_max; ++q) {
            tasks.push_back({"motivic-z", Bidegree(p, q)});
            tasks.push_back({"motivic-z-published", Bidegree(p, q)});
        }
    parallel_for(int(tasks.size()), jobs,
                 [&](int i) { ctx.piece(tasks[size_t(i)].first, tasks[size_t(i)].second); });
}

struct RunResult {
    std::vector<CheckReport> reports;
    bool all_pass = true;  // report-only checks never affect this

    int exit_code() const { return all_pass ? 0 : 1; }
};

inline RunResult run_verify(Context& ctx, const RunConfig& cfg)
{
    std::vector<std::string> selected = cfg.checks.empty() ? all_check_names() : cfg.checks;
    for (const std::string& name : selected) {
        bool known = false;
        for (const std::string& n : all_check_names()) known = known || n == name;
        if (!known) throw usage_error("unknown check '" + name + "'");
    }
    for (const std::string& r : cfg.rings) ctx.ring(r);  // validate before any computation

    warm_pieces(ctx, cfg.box, cfg.jobs);

    RunResult result;
    for (const std::string& name : selected) {
        CheckReport rep = run_check(ctx, name, cfg.box);
        if (!rep.report_only && rep.status == CheckStatus::Fail) result.all_pass = false;
        result.reports.push_back(std::move(rep));
    }
    return result;
}

inline RunConfig config_from_json(const Json& j)
{
    RunConfig cfg;
    cfg.box.p_max = j.value("p_max", cfg.box.p_max);
    cfg.box.q_max = j.value("q_max", cfg.box.q_max);
    cfg.box.m_max = j.value("m_max", cfg.box.m_max);
    if (j.contains("rings")) cfg.rings = j.at("rings").get<std::vector<std::string>>();
    if (j.contains("checks")) cfg.checks = j.at("checks").get<std::vector<std::string>>();
    cfg.format = j.value("format", cfg.format);
    cfg.out = j.value("out", cfg.out);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.rings_file = j.value("rings_file", cfg.rings_file);
    if (cfg.box.p_max < 0 || cfg.box.q_max < 0 || cfg.box.m_max < 0 || cfg.jobs < 1)
        throw usage_error("config bounds must be positive");
    return cfg;
}

inline Context make_context(const RunConfig& cfg)
{
    Catalog cat = build_catalog();
    if (!cfg.rings_file.empty()) apply_ring_overrides(cat, load_json_file(cfg.rings_file));
    return Context(std::move(cat));
}

}  // namespace mrv
