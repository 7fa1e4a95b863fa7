#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

inline constexpr const char* kSchema = "shtuka-forge/1";

std::string version();

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`. Exit codes: 0 success, 1 error, 2 negative verdict.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(std::string_view data);

/// $SHTUKA_FORGE_FIXTURES if set, otherwise the source tree's fixture directory.
std::filesystem::path fixture_dir();
inline constexpr const char* kManifest = "MANIFEST.sha256";
/// SHA-256 of the manifest file, empty if there is none.
std::string fixture_hash(const std::filesystem::path& dir);
/// Manifest text ("<hex>  <file>" per line, sorted) for the .json files in dir.
std::string manifest_text(const std::filesystem::path& dir);

std::vector<std::string> regen_scopes();
/// Fixture file name -> content for one scope, computed by the brute-force oracles.
std::map<std::string, std::string> regen_oracle(const std::string& scope);
/// Writes the files and refreshes the manifest.
void write_fixtures(const std::filesystem::path& dir, const std::map<std::string, std::string>& files);

/// Statement implemented by a subcommand; empty if unknown.
std::string explain_text(const std::string& subcommand);
std::vector<std::string> subcommands();

}  // namespace forge
