#include "shtuka/type_vector.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "shtuka/error.hpp"

namespace shtuka {

bool is_dominant(const std::vector<int>& xi) {
  return std::is_sorted(xi.begin(), xi.end(), std::greater<>());
}

TypeVector::TypeVector(std::vector<int> e) : e_(std::move(e)) {
  require(is_dominant(e_), ErrorKind::NotDominant, "type vector is not weakly decreasing");
}

TypeVector TypeVector::sorted(std::vector<int> e) {
  std::sort(e.begin(), e.end(), std::greater<>());
  return TypeVector(std::move(e));
}

TypeVector TypeVector::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') s.push_back(c);
  require(!s.empty(), ErrorKind::Parse, "empty type vector");
  std::vector<int> e;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    require(!item.empty(), ErrorKind::Parse, "malformed type vector '" + std::string(text) + "'");
    try {
      e.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "malformed type vector '" + std::string(text) + "'");
    }
  }
  return TypeVector(std::move(e));
}

int TypeVector::sum() const { return std::accumulate(e_.begin(), e_.end(), 0); }

std::vector<std::size_t> TypeVector::multiplicities() const {
  std::vector<std::size_t> n;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i == 0 || e_[i] != e_[i - 1])
      n.push_back(1);
    else
      ++n.back();
  }
  return n;
}

std::string TypeVector::format() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
  os << ')';
  return os.str();
}

}  // namespace shtuka
