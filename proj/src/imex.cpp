#include "relaxlab/imex.hpp"

#include <cmath>

#include "relaxlab/errors.hpp"

namespace relaxlab {

namespace {

Tableau make_ars222() {
  const double g = 1.0 - 1.0 / std::sqrt(2.0);
  const double d = 1.0 - 1.0 / (2.0 * g);
  Tableau t{3, {}, {}};
  t.ex[1] = {g, 0.0, 0.0};
  t.ex[2] = {d, 1.0 - d, 0.0};
  t.im[1] = {0.0, g, 0.0};
  t.im[2] = {0.0, 1.0 - g, g};
  return t;
}

Tableau make_imex1() {
  Tableau t{2, {}, {}};
  t.ex[1] = {1.0, 0.0, 0.0};
  t.im[1] = {0.0, 1.0, 0.0};
  return t;
}

}  // namespace

const Tableau& tableau(Scheme s) {
  static const Tableau imex1 = make_imex1();
  static const Tableau ars = make_ars222();
  return s == Scheme::ars222 ? ars : imex1;
}

Scheme parse_scheme(std::string_view name) {
  if (name == "imex1") return Scheme::imex1;
  if (name == "ars222") return Scheme::ars222;
  throw ValidationError("unknown scheme '" + std::string(name) + "'");
}

std::string to_string(Scheme s) { return s == Scheme::ars222 ? "ars222" : "imex1"; }

}  // namespace relaxlab
