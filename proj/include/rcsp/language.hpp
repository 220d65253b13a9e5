#pragma once

// A constraint language: named non-empty relations over one shared domain.
// Member order is insertion order and drives every deterministic scan.

#include <string>
#include <utility>
#include <vector>

#include "rcsp/relation.hpp"

namespace rcsp {

class ConstraintLanguage {
 public:
  explicit ConstraintLanguage(int domain_size) : domain_size_(domain_size) {
    if (domain_size_ < 2) throw validation_error("domain must have at least two elements");
  }

  void add(const std::string& name, Relation r) {
    if (name.empty()) throw validation_error("relation name must not be empty");
    if (r.domain_size() != domain_size_)
      throw validation_error("relation domain does not match the language domain");
    if (r.is_empty())
      throw validation_error("empty relation not allowed in a constraint language");
    if (find(name)) throw validation_error("duplicate relation name: " + name);
    members_.emplace_back(name, std::move(r));
  }

  const Relation* find(const std::string& name) const {
    for (const auto& [n, r] : members_)
      if (n == name) return &r;
    return nullptr;
  }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (members_[i].first == name) return static_cast<int>(i);
    return -1;
  }

  const std::vector<std::pair<std::string, Relation>>& members() const { return members_; }
  int domain_size() const { return domain_size_; }
  std::size_t size() const { return members_.size(); }

  bool operator==(const ConstraintLanguage& o) const {
    return domain_size_ == o.domain_size_ && members_ == o.members_;
  }

 private:
  int domain_size_;
  std::vector<std::pair<std::string, Relation>> members_;
};

}  // namespace rcsp
