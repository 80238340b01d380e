#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ftx/ftx.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_config = 1;
constexpr int exit_internal = 3;

int write_outputs(const ftx::CommandResult& res, const ftx::Json& header, const std::vector<ftx::Format>& formats,
                  const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "ftx: cannot create output directory " << dir << ": " << ec.message() << '\n';
        return exit_config;
    }
    auto put = [&](const fs::path& p, const std::string& text) {
        std::ofstream os(p, std::ios::binary);
        os << text;
        if (!os) throw std::runtime_error("cannot write " + p.string());
        std::cout << p.string() << '\n';
    };
    for (const auto& t : res.tables)
        for (auto f : formats) put(dir / (t.name + "." + ftx::extension(f)), ftx::render(t, f, header));
    for (const auto& [name, text] : res.raw) put(dir / name, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fault-tolerant resource estimator and lattice-surgery scheduler"};
    app.set_version_flag("--version", std::string("ftx ") + ftx::tool_version);
    app.require_subcommand(1);

    std::string config, out, format;
    int threads = 1;
    std::vector<CLI::App*> subs;
    for (const char* name : {"estimate", "simulate", "sweep", "crossover"}) {
        auto* s = app.add_subcommand(name);
        s->add_option("--config", config, "TOML or JSON configuration")->required();
        s->add_option("--out", out, "output directory (default: $FTX_OUT_DIR or ./ftx-out)");
        s->add_option("--format", format, "json, csv or table (default: json and table)")
            ->check(CLI::IsMember({"json", "csv", "table"}));
        s->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        subs.push_back(s);
    }
    subs[0]->description("T-counts and rough surface-code plans per algorithm");
    subs[1]->description("lattice-surgery simulation of SELECT with detailed plans");
    subs[2]->description("code distance, qubits and runtime over epsilon x p grids");
    subs[3]->description("classical runtime fit and quantum-classical crosspoint");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

    std::string command;
    for (auto* s : subs)
        if (s->parsed()) command = s->get_name();

    if (out.empty()) {
        const char* env = std::getenv("FTX_OUT_DIR");
        out = env && *env ? env : "ftx-out";
    }
    std::vector<ftx::Format> formats;
    if (format == "json") formats = {ftx::Format::Json};
    else if (format == "csv") formats = {ftx::Format::Csv};
    else if (format == "table") formats = {ftx::Format::Table};
    else formats = {ftx::Format::Json, ftx::Format::Table};

    try {
        ftx::RunConfig cfg = ftx::load_config(config);
        ftx::CommandResult res;
        if (command == "estimate") res = ftx::run_estimate(cfg);
        else if (command == "simulate") res = ftx::run_simulate(cfg, threads);
        else if (command == "sweep") res = ftx::run_sweep(cfg, threads);
        else res = ftx::run_crossover(cfg, threads);
        int rc = write_outputs(res, ftx::output_header(cfg, command), formats, out);
        if (rc) return rc;
        if (res.status == 2) std::cerr << "ftx: infeasible hardware for at least one configuration\n";
        return res.status;
    } catch (const ftx::ConfigError& e) {
        std::cerr << "ftx: config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ftx::ModelError& e) {
        std::cerr << "ftx: config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ftx::Json::exception& e) {
        std::cerr << "ftx: config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ftx::sim::SimulationError& e) {
        std::cerr << "ftx: internal invariant violated: " << e.what() << '\n';
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "ftx: internal error: " << e.what() << '\n';
        return exit_internal;
    }
}
