#ifndef SFP_CLI_HPP
#define SFP_CLI_HPP

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "sfp/runner.hpp"

namespace sfp {

using ReportRunner = std::function<Json(const Manifest&, const RunOptions&)>;

/// The sfpwb command line. Returns 0 when every task completed (whatever the
/// verdicts), 1 on an input error, 2 on an internal invariant failure.
inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err,
                   const ReportRunner& runner = [](const Manifest& m, const RunOptions& o) { return run_manifest(m, o); }) {
    CLI::App app{"Semi-fiber product workbench", "sfpwb"};
    std::string path;
    bool json = false;
    bool pretty = false;
    RunOptions opt;
    app.add_option("manifest", path, "Manifest file, or - for standard input")->required();
    app.add_flag("--json", json, "Print the JSON report");
    app.add_flag("--pretty-print", pretty, "Print the manifest in canonical form and exit");
    app.add_option("--hdeg", opt.hdeg, "Homological degree, overriding task keys")->check(CLI::NonNegativeNumber);
    app.add_option("--tdeg", opt.tdeg, "Internal degree bound, overriding task keys")->check(CLI::NonNegativeNumber);
    app.add_option("--bound", opt.bound, "Search bound, overriding task keys")->check(CLI::NonNegativeNumber);
    app.add_flag("--parallel", opt.parallel, "Run tasks concurrently; output keeps manifest order");
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    std::stringstream text;
    if (path == "-") {
        text << in.rdbuf();
    } else {
        std::ifstream file(path, std::ios::binary);
        if (!file) {
            err << "sfpwb: cannot read " << path << "\n";
            return 1;
        }
        text << file.rdbuf();
    }
    std::string where = path == "-" ? "<stdin>" : path;
    try {
        auto manifest = parse_manifest(text.str());
        if (pretty) {
            out << pretty_print(manifest);
            return 0;
        }
        auto report = runner(manifest, opt);
        out << (json ? report.dump(2) + "\n" : render_text(report));
        return 0;
    } catch (const ManifestError& e) {
        err << where << ":" << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        err << where << ": " << e.what() << "\n";
        return 1;
    } catch (const InvariantError& e) {
        err << where << ": internal invariant failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << where << ": internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace sfp

#endif  // SFP_CLI_HPP
