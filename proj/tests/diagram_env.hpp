#pragma once
#include "dense_oracle.hpp"
#include "tcalg/dsl.hpp"

namespace testutil {

// bind the trivalent vertices used by a random diagram
inline tcalg::Env vertex_env(const tcalg::CategorySpec& C, const oracle::RandomDiagram& rd) {
  using namespace tcalg;
  Env env;
  for (const auto& v : rd.vertices) {
    auto [merge, x, y, z] = v;
    Matrix one = Matrix::identity(1);
    if (merge) {
      env["m_" + C.labels[x] + "_" + C.labels[y] + "_" + C.labels[z]] = Mor{Obj::word({x, y}), Obj::word({z}), {{z, one}}};
    } else {
      env["s_" + C.labels[z] + "_" + C.labels[x] + "_" + C.labels[y]] = Mor{Obj::word({z}), Obj::word({x, y}), {{z, one}}};
    }
  }
  return env;
}

}  // namespace testutil
