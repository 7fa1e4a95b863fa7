#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace shtuka {

/// Weakly decreasing integer vector (e_1 >= ... >= e_h): the type of a bundle
/// or a dominant cocharacter of GL_h.
class TypeVector {
 public:
  TypeVector() = default;
  /// Throws NotDominant unless the entries are weakly decreasing.
  explicit TypeVector(std::vector<int> e);
  /// Sorts into dominant order.
  static TypeVector sorted(std::vector<int> e);
  /// "1,0" or "(1,0)".
  static TypeVector parse(std::string_view text);

  std::size_t size() const noexcept { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  const std::vector<int>& values() const noexcept { return e_; }
  int sum() const;
  /// Block multiplicities n_i of equal consecutive entries.
  std::vector<std::size_t> multiplicities() const;

  std::string format() const;
  bool operator==(const TypeVector& o) const { return e_ == o.e_; }
  bool operator!=(const TypeVector& o) const { return e_ != o.e_; }

 private:
  std::vector<int> e_;
};

bool is_dominant(const std::vector<int>& xi);

}  // namespace shtuka
