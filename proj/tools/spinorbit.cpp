#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "spinorbit/cli/commands.hpp"

namespace cli = spinorbit::cli;

namespace {

using Runner = std::function<cli::CommandResult(const cli::SceneConfig&, const cli::RunOptions&)>;

struct Flags {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> grid;
    std::optional<double> closure;
    bool quiet = false;
};

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--grid", "expected NX,NY");
    try {
        const long nx = std::stol(text.substr(0, comma));
        const long ny = std::stol(text.substr(comma + 1));
        if (nx <= 0 || ny <= 0) throw CLI::ValidationError("--grid", "NX and NY must be positive");
        return {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--grid", "expected NX,NY");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-orbit beam transformation simulator"};
    app.require_subcommand(1);

    Flags flags;
    const std::map<std::string, std::pair<std::string, Runner>> commands{
        {"render", {"Render the tilted-Michelson interferogram and fit its fringes", cli::run_render}},
        {"sweep", {"Photocount visibility versus eps table", cli::run_sweep}},
        {"classify", {"Homotopy class of each arm and of the pair", cli::run_classify}},
        {"photon", {"Photocount scan across the interferogram and weighted fit", cli::run_photon}},
        {"oracle", {"Closed-form eps-family interferogram", cli::run_oracle}},
    };
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        sub->add_option("--config", flags.config, "Scene JSON document")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", flags.out, "Output directory")->capture_default_str();
        sub->add_option("--seed", flags.seed, "Override the photocount seed");
        sub->add_option("--grid", flags.grid, "Override grid size as NX,NY");
        sub->add_option("--closure", flags.closure, "Override the angle (deg) of the last element of arm 2");
        sub->add_flag("--quiet", flags.quiet, "Suppress the summary line");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitUsage;
    }

    try {
        cli::RunOptions options;
        options.out_dir = flags.out;
        options.seed = flags.seed;
        options.closure_deg = flags.closure;
        if (flags.grid) options.grid = parse_grid(*flags.grid);
        std::filesystem::create_directories(options.out_dir);

        const cli::SceneConfig config = cli::apply_overrides(cli::load_scene(flags.config), options);
        const std::string name = app.get_subcommands().front()->get_name();
        const cli::CommandResult result = commands.at(name).second(config, options);
        if (!flags.quiet) {
            std::cout << result.summary << "\n";
            for (const auto& p : result.written) std::cout << "  wrote " << p.string() << "\n";
        }
        return result.exit_code;
    } catch (const spinorbit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_code(e.kind());
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUnexpected;
    }
}
