#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sl2cert/common.hpp"
#include "sl2cert/pipeline.hpp"

namespace {

void add_common_options(CLI::App* cmd, sl2cert::PipelineConfig& cfg) {
    cmd->add_option("--p", cfg.p, "prime (2 runs the order-two group-algebra path)");
    cmd->add_option("--s", cfg.s, "residue field degree (even for odd p)");
    cmd->add_option("--precision", cfg.precision, "truncation exponent N");
    cmd->add_option("--cap", cfg.cap, "lattice walk step limit");
    cmd->add_flag("--paranoid", cfg.paranoid, "exhaustive homomorphism checks");
    cmd->add_option("--seed", cfg.seed, "seed for sampled checks");
    cmd->add_flag("--large", cfg.large, "allow the expensive p >= 5 runs");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = default)");
}

void emit(const nlohmann::json& report, const std::string& path) {
    if (!path.empty()) {
        std::ofstream out(path);
        if (!out) throw sl2cert::usage_error("cannot open report file " + path);
        out << report.dump(2) << "\n";
    }
    // human-readable summary
    for (const auto& st : report["stages"]) {
        std::cout << (st["pass"].get<bool>() ? "  ok   " : "  FAIL ") << st["name"].get<std::string>();
        if (st.contains("error")) std::cout << "  [" << st["error"].get<std::string>() << "]";
        std::cout << "\n";
    }
    std::cout << "verdict: " << report["verdict"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certificates for the split principal series of SL(2,p^2)"};
    app.require_subcommand(1);

    sl2cert::PipelineConfig cfg;
    std::string report_path, stage_name, csv_path;

    CLI::App* full = app.add_subcommand("full", "run the whole pipeline");
    add_common_options(full, cfg);
    full->add_option("--report", report_path, "write the JSON report here");

    CLI::App* stage = app.add_subcommand("stage", "run one stage: chartable|modular|lattice|ext|fiber");
    add_common_options(stage, cfg);
    stage->add_option("name", stage_name, "stage name")->required();
    stage->add_option("--report", report_path, "write the JSON report here");

    CLI::App* chartable = app.add_subcommand("export-chartable", "CSV of the class data and both characters");
    add_common_options(chartable, cfg);
    chartable->add_option("--csv", csv_path, "output file")->required();

    CLI::App* decomp = app.add_subcommand("export-decomposition", "CSV of the Weyl-module decomposition table");
    add_common_options(decomp, cfg);
    decomp->add_option("--csv", csv_path, "output file")->required();

    try {
        app.parse(argc, argv);
        if (full->parsed()) {
            nlohmann::json report = sl2cert::run_full(cfg);
            emit(report, report_path);
            return sl2cert::report_exit_code(report);
        }
        if (stage->parsed()) {
            nlohmann::json report = sl2cert::run_stage(cfg, stage_name);
            emit(report, report_path);
            return sl2cert::report_exit_code(report);
        }
        std::ofstream out(csv_path);
        if (!out) throw sl2cert::usage_error("cannot open " + csv_path);
        if (chartable->parsed())
            sl2cert::export_chartable_csv(cfg, out);
        else
            sl2cert::export_decomposition_csv(cfg, out);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    } catch (const sl2cert::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const sl2cert::insufficient_precision& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 1;
    }
}
