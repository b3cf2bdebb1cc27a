#include "rcl/names.hpp"

namespace rcl {

std::string name_stem(const Name& x) {
  std::size_t n = x.size();
  while (n > 1 && x[n - 1] >= '0' && x[n - 1] <= '9') --n;
  return x.substr(0, n);
}

void NameSupply::reserve(const Term& t) {
  for (auto& x : all_names(t)) used_.insert(x);
}

Name NameSupply::fresh(const Name& base) {
  std::string stem = name_stem(base);
  unsigned& k = next_.try_emplace(stem, 1u).first->second;
  Name x;
  do {
    x = stem + std::to_string(k++);
  } while (used_.count(x));
  used_.insert(x);
  return x;
}

}  // namespace rcl
