#include "main_entry.hpp"

#include <filesystem>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "output.hpp"
#include "shiftlab/parallel.hpp"

namespace shiftlab::cli {

namespace {

int report(std::ostream& err, const char* kind, const std::string& message, int code) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    err << j.dump() << "\n";
    return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"shiftlab: experiments on shift-like maps of C^k"};
    std::string command, config_path, out_dir = ".";
    long seed = -1;
    unsigned threads = 0;
    app.add_option("command", command, "iterate | slice | degenerate | certify | partition | hyperbolic1d")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--config", config_path, "flat key = value config file")->required();
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--seed", seed, "overrides the config seed")->check(CLI::NonNegativeNumber);
    app.add_option("--threads", threads, "worker threads, 0 for all cores");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return report(err, "validation", e.what(), 2);
    }

    try {
        RunConfig cfg = RunConfig::load(config_path);
        if (seed >= 0) cfg.set("seed", std::to_string(seed));
        set_thread_count(threads);
        const Outputs files = run_command(command, cfg);
        std::filesystem::create_directories(out_dir);
        for (const auto& [name, bytes] : files) {
            const auto path = (std::filesystem::path(out_dir) / name).string();
            atomic_write(path, bytes);
            out << path << "\n";
        }
        return 0;
    } catch (const ValidationError& e) {
        return report(err, "validation", e.what(), 2);
    } catch (const NumericalError& e) {
        return report(err, "numerical", e.what(), 3);
    } catch (const std::exception& e) {
        return report(err, "internal", e.what(), 1);
    }
}

}  // namespace shiftlab::cli
