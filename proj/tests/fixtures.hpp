#pragma once
#include <string>
#include <vector>

#include "tcalg/category.hpp"

namespace testutil {

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> n{"triv", "z2-semion", "z2-fermion", "z4", "fib", "ising"};
  return n;
}

inline tcalg::CategorySpec fixture(const std::string& name) {
  return tcalg::load_category_file(std::string(TCALG_FIXTURE_DIR) + "/" + name + ".json");
}

}  // namespace testutil
