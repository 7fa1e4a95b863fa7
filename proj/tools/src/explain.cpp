#include <nlohmann/json.hpp>

#include "forge/forge.hpp"

namespace forge {

namespace detail {
extern const char* const kExplainJson;
}

std::string explain_text(const std::string& subcommand) {
  static const nlohmann::json table = nlohmann::json::parse(detail::kExplainJson);
  if (!table.contains(subcommand)) return {};
  return table.at(subcommand).dump();
}

}  // namespace forge
