#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrv/mrv.hpp"

namespace {

mrv::Bidegree parse_deg(const std::string& s)
{
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return mrv::Bidegree(std::stoi(s));
        return mrv::Bidegree(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
    } catch (const std::exception&) {
        throw mrv::usage_error("cannot parse degree '" + s + "' (expected p or p,q)");
    }
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        const size_t comma = s.find(',', start);
        const std::string item = s.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void emit(const std::string& content, const std::string& out_path)
{
    std::cout << content;
    if (!out_path.empty()) mrv::write_text_file(out_path, content);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mrv: exact verification kernel for the cohomology rings of BSO4"};
    app.require_subcommand(1);

    // piece
    auto* piece_cmd = app.add_subcommand("piece", "print one graded piece with its basis");
    std::string piece_ring, piece_deg, piece_format = "text", piece_rings_file;
    piece_cmd->add_option("--ring", piece_ring, "ring name")->required();
    piece_cmd->add_option("--deg", piece_deg, "degree p or bidegree p,q")->required();
    piece_cmd->add_option("--format", piece_format, "text|json");
    piece_cmd->add_option("--rings-file", piece_rings_file, "catalog override document");

    // table
    auto* table_cmd = app.add_subcommand("table", "Poincare table of graded pieces");
    std::string table_ring, table_format = "text", table_out, table_rings_file;
    int table_pmax = 0, table_qmax = -1;
    table_cmd->add_option("--ring", table_ring, "ring name")->required();
    table_cmd->add_option("--pmax", table_pmax, "maximum degree")->required();
    table_cmd->add_option("--qmax", table_qmax, "maximum weight (bigraded rings)");
    table_cmd->add_option("--format", table_format, "json|csv|md|text");
    table_cmd->add_option("--out", table_out, "also write to this path");
    table_cmd->add_option("--rings-file", table_rings_file, "catalog override document");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the check suite");
    std::string verify_checks, verify_format, verify_out, verify_config, verify_rings_file,
        verify_rings;
    int verify_pmax = -1, verify_qmax = -1, verify_mmax = -1, verify_jobs = 0;
    verify_cmd->add_option("--checks", verify_checks, "comma-separated check names");
    verify_cmd->add_option("--rings", verify_rings, "comma-separated ring names to validate");
    verify_cmd->add_option("--pmax", verify_pmax, "box bound on p");
    verify_cmd->add_option("--qmax", verify_qmax, "box bound on q");
    verify_cmd->add_option("--mmax", verify_mmax, "box bound on classical degrees");
    verify_cmd->add_option("--format", verify_format, "json|csv|md|text");
    verify_cmd->add_option("--out", verify_out, "also write the report to this path");
    verify_cmd->add_option("--config", verify_config, "JSON run configuration");
    verify_cmd->add_option("--jobs", verify_jobs, "worker pool size");
    verify_cmd->add_option("--rings-file", verify_rings_file, "catalog override document");

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "export ring and map catalogs as JSON");
    std::string catalog_out;
    catalog_cmd->add_option("--out", catalog_out, "also write to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (piece_cmd->parsed()) {
            mrv::RunConfig cfg;
            cfg.rings_file = piece_rings_file;
            mrv::Context ctx = mrv::make_context(cfg);
            const mrv::PieceView v = mrv::piece_view(ctx, piece_ring, parse_deg(piece_deg));
            if (piece_format == "json") {
                mrv::Json j;
                j["ring"] = piece_ring;
                j["bidegree"] = mrv::bidegree_json(v.deg);
                j["group"] = mrv::render_group(v.group);
                j["rank"] = v.group.rank;
                mrv::Json tors = mrv::Json::array();
                for (const mrv::Int& d : v.group.torsion) tors.push_back(d.str());
                j["torsion"] = std::move(tors);
                j["basis"] = v.basis;
                std::cout << j.dump(2) << "\n";
            } else if (piece_format == "text") {
                std::string line = mrv::render_group(v.group) + ": {";
                for (size_t i = 0; i < v.basis.size(); ++i) line += (i ? ", " : "") + v.basis[i];
                line += "}";
                std::cout << line << "\n";
            } else {
                throw mrv::usage_error("piece supports text or json");
            }
            return 0;
        }

        if (table_cmd->parsed()) {
            mrv::RunConfig cfg;
            cfg.rings_file = table_rings_file;
            mrv::Context ctx = mrv::make_context(cfg);
            const auto& ring = ctx.ring(table_ring);
            if (ring.bigraded() && table_qmax < 0)
                throw mrv::usage_error("ring " + table_ring + " needs --qmax");
            if (!ring.bigraded() && table_qmax >= 0)
                throw mrv::usage_error("ring " + table_ring + " takes no --qmax");
            if (table_pmax < 0) throw mrv::usage_error("--pmax must be nonnegative");
            const mrv::PoincareTable t =
                mrv::poincare_table(ctx, table_ring, table_pmax, table_qmax);
            emit(mrv::render_table(t, table_format), table_out);
            return 0;
        }

        if (verify_cmd->parsed()) {
            mrv::RunConfig cfg;
            std::string config_path = verify_config;
            if (config_path.empty()) {
                if (const char* env = std::getenv("MRV_CONFIG")) config_path = env;
            }
            if (!config_path.empty())
                cfg = mrv::config_from_json(mrv::load_json_file(config_path));
            if (verify_pmax >= 0) cfg.box.p_max = verify_pmax;
            if (verify_qmax >= 0) cfg.box.q_max = verify_qmax;
            if (verify_mmax >= 0) cfg.box.m_max = verify_mmax;
            if (!verify_checks.empty()) cfg.checks = split_list(verify_checks);
            if (!verify_rings.empty()) cfg.rings = split_list(verify_rings);
            if (!verify_format.empty()) cfg.format = verify_format;
            if (!verify_out.empty()) cfg.out = verify_out;
            if (verify_jobs > 0) cfg.jobs = verify_jobs;
            if (!verify_rings_file.empty()) cfg.rings_file = verify_rings_file;

            mrv::Context ctx = mrv::make_context(cfg);
            const mrv::RunResult result = mrv::run_verify(ctx, cfg);
            emit(mrv::render_reports(result.reports, cfg.format), cfg.out);
            return result.exit_code();
        }

        if (catalog_cmd->parsed()) {
            const mrv::Catalog cat = mrv::build_catalog();
            emit(mrv::catalog_json(cat).dump(2) + "\n", catalog_out);
            return 0;
        }
    } catch (const mrv::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mrv::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
