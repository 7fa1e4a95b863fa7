#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "forge/forge.hpp"

#ifndef SHTUKA_FORGE_DEFAULT_FIXTURES
#define SHTUKA_FORGE_DEFAULT_FIXTURES "tests/fixtures/v1"
#endif

namespace forge {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

fs::path fixture_dir() {
  if (const char* env = std::getenv("SHTUKA_FORGE_FIXTURES"); env && *env) return env;
  return SHTUKA_FORGE_DEFAULT_FIXTURES;
}

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string fixture_hash(const fs::path& dir) {
  const fs::path m = dir / kManifest;
  if (!fs::exists(m)) return {};
  return sha256_hex(slurp(m));
}

std::string manifest_text(const fs::path& dir) {
  std::vector<std::string> names;
  if (fs::exists(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".json") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  std::string out;
  for (const auto& n : names) out += sha256_hex(slurp(dir / n)) + "  " + n + "\n";
  return out;
}

void write_fixtures(const fs::path& dir, const std::map<std::string, std::string>& files) {
  fs::create_directories(dir);
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  }
  std::ofstream m(dir / kManifest, std::ios::binary);
  m << manifest_text(dir);
}

}  // namespace forge
