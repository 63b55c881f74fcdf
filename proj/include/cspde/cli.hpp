#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cspde/config.hpp"

namespace cspde {

// Entry point of the cspde tool. Returns the process exit code; errors are
// reported as one diagnostic line on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

// Config text followed by "# key=value" metadata lines. The result parses
// back as a config, so a manifest can be replayed directly.
std::string render_manifest(const ResolvedConfig& rc, const std::vector<std::pair<std::string, std::string>>& meta);
// Value of a "# key=value" metadata line, or empty.
std::string manifest_meta(const std::string& text, const std::string& key);

// Config from a file (or a run directory holding manifest.txt) with extra
// key=value lines applied on top. An empty path means all defaults.
RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides);

// *.bin files of a directory in name order.
std::vector<std::string> list_snapshots(const std::string& dir);

}  // namespace cspde
