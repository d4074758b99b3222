#pragma once

#include "ainfty.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

namespace floerloops {

struct TupleHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// A-infinity category given by explicit tables. Absent mu entries are zero.
/// Generators flagged as auxiliary may appear as inputs and outputs but are not part
/// of the basis enumerated by the checkers.
class TableCategory {
 public:
  using key_type = int;

  struct GeneratorInfo {
    std::string name;
    int source = 0;
    int target = 0;
    int degree = 0;
    bool in_basis = true;
  };

  int add_object(const std::string& name) {
    if (object_index_.count(name)) throw Error("duplicate object " + name);
    object_index_[name] = static_cast<int>(objects_.size());
    objects_.push_back(name);
    return static_cast<int>(objects_.size()) - 1;
  }

  int add_generator(const std::string& name, int source, int target, int degree, bool in_basis = true) {
    if (source < 0 || source >= object_count() || target < 0 || target >= object_count())
      throw Error("generator " + name + " has an unknown endpoint");
    if (generator_index_.count(name)) throw Error("duplicate generator " + name);
    generator_index_[name] = static_cast<int>(generators_.size());
    generators_.push_back({name, source, target, degree, in_basis});
    return static_cast<int>(generators_.size()) - 1;
  }

  /// Sets mu on a tuple given in path order. Rejects non-composable tuples and outputs
  /// with the wrong endpoints.
  void set_mu(const std::vector<int>& inputs, const Chain<int>& output) {
    if (inputs.empty()) throw Error("mu needs at least one input");
    for (int k : inputs) check_key(k);
    for (std::size_t i = 0; i + 1 < inputs.size(); ++i)
      if (target(inputs[i]) != source(inputs[i + 1]))
        throw Error("non-composable tuple starting at " + name(inputs[0]));
    for (const auto& [k, c] : output) {
      check_key(k);
      if (source(k) != source(inputs.front()) || target(k) != target(inputs.back()))
        throw Error("mu output " + name(k) + " has the wrong endpoints");
    }
    if (output.is_zero()) mu_.erase(inputs);
    else mu_[inputs] = output;
  }

  int object_count() const { return static_cast<int>(objects_.size()); }
  const std::string& object_name(int a) const { return objects_.at(a); }
  int generator_count() const { return static_cast<int>(generators_.size()); }
  const GeneratorInfo& generator(int k) const { return generators_.at(k); }
  int degree(int k) const { return generators_[k].degree; }
  int source(int k) const { return generators_[k].source; }
  int target(int k) const { return generators_[k].target; }
  std::string name(int k) const { return generators_[k].name; }

  int find(const std::string& name) const {
    auto it = generator_index_.find(name);
    if (it == generator_index_.end()) throw Error("unknown generator " + name);
    return it->second;
  }
  int find_object(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) throw Error("unknown object " + name);
    return it->second;
  }
  bool has_generator(const std::string& name) const { return generator_index_.count(name) > 0; }

  std::vector<int> basis(int a, int b) const {
    std::vector<int> out;
    for (int k = 0; k < generator_count(); ++k)
      if (generators_[k].in_basis && generators_[k].source == a && generators_[k].target == b) out.push_back(k);
    return out;
  }

  Chain<int> mu(std::span<const int> xs) const {
    thread_local std::vector<int> key;
    key.assign(xs.begin(), xs.end());
    auto it = mu_.find(key);
    return it == mu_.end() ? Chain<int>{} : it->second;
  }

  /// All nonzero entries, sorted by arity and then input tuple.
  std::vector<std::pair<std::vector<int>, Chain<int>>> entries() const {
    std::vector<std::pair<std::vector<int>, Chain<int>>> out(mu_.begin(), mu_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
      return a.first < b.first;
    });
    return out;
  }

 private:
  void check_key(int k) const {
    if (k < 0 || k >= generator_count()) throw Error("unknown generator index");
  }

  std::vector<std::string> objects_;
  std::unordered_map<std::string, int> object_index_;
  std::vector<GeneratorInfo> generators_;
  std::unordered_map<std::string, int> generator_index_;
  std::unordered_map<std::vector<int>, Chain<int>, TupleHash> mu_;
};

/// Wraps a category and negates mu on one input tuple.
template <AInftyCategory C>
class SignFlippedCategory {
 public:
  using key_type = typename C::key_type;

  SignFlippedCategory(const C& base, std::vector<key_type> tuple) : base_(&base), tuple_(std::move(tuple)) {}

  int object_count() const { return base_->object_count(); }
  int degree(const key_type& k) const { return base_->degree(k); }
  int source(const key_type& k) const { return base_->source(k); }
  int target(const key_type& k) const { return base_->target(k); }
  std::vector<key_type> basis(int a, int b) const { return base_->basis(a, b); }
  std::string name(const key_type& k) const { return base_->name(k); }
  Chain<key_type> mu(std::span<const key_type> xs) const {
    Chain<key_type> out = base_->mu(xs);
    if (std::equal(xs.begin(), xs.end(), tuple_.begin(), tuple_.end())) out *= -1;
    return out;
  }

 private:
  const C* base_;
  std::vector<key_type> tuple_;
};

}  // namespace floerloops
