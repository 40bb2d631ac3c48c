#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flsuite/harness.hpp"

namespace flsuite::harness {

bool TestFunction::has_class(std::string_view tag) const {
  return std::any_of(classes.begin(), classes.end(),
                     [&](const ClassTag& c) { return c.tag == tag; });
}

double takagi_partial(double x, double p, int levels) {
  const double u = 0.5 * (x + 1.0);
  double total = 0.0;
  for (int k = 0; k < levels; ++k) {
    const double z = std::ldexp(u, k);
    total += std::pow(2.0, -k / p) * std::abs(z - std::round(z));
  }
  return total;
}

namespace {

double param(const Params& given, const std::string& key, double fallback) {
  auto it = given.find(key);
  return it == given.end() ? fallback : it->second;
}

void reject_unknown(const std::string& name, const Params& given,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : given) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw std::invalid_argument("corpus function '" + name + "' has no parameter '" + key + "'");
  }
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"constant", "xy", "polynomial", "abs_sum", "smooth_osc", "pbv_p", "radial_kink"};
}

TestFunction corpus(const std::string& name, const Params& params) {
  TestFunction f;
  f.name = name;
  if (name == "constant") {
    reject_unknown(name, params, {"c"});
    const double c = param(params, "c", 1.0);
    f.params = {{"c", c}};
    f.evaluate = [c](double, double) { return c; };
    f.classes = {{"BV", "no increments at all"}};
  } else if (name == "xy") {
    reject_unknown(name, params, {});
    f.evaluate = [](double x, double y) { return x * y; };
    f.classes = {{"BV", "polynomial, Lipschitz in each variable"},
                 {"PBV", "monotone in x for each fixed y"}};
  } else if (name == "polynomial") {
    reject_unknown(name, params, {});
    f.evaluate = [](double x, double y) {
      return 1.0 + x - 2.0 * y + 3.0 * x * y + x * x * y - y * y * y + 0.5 * x * x * x * y * y;
    };
    f.classes = {{"BV", "polynomial of bidegree (3,3)"},
                 {"PBV", "finitely many monotone pieces per line"}};
  } else if (name == "abs_sum") {
    reject_unknown(name, params, {});
    f.evaluate = [](double x, double y) { return std::abs(x) + std::abs(y); };
    f.classes = {{"BV", "separable, each term monotone on two halves"},
                 {"PBV", "each line has variation 2"},
                 {"HBV", "contained in BV"}};
    f.has_kink = true;
  } else if (name == "smooth_osc") {
    reject_unknown(name, params, {"a"});
    const double a = param(params, "a", 0.1);
    if (!(a > 0.0)) throw std::invalid_argument("smooth_osc: a must be > 0");
    f.params = {{"a", a}};
    f.evaluate = [a](double x, double y) { return x * y * std::sin(1.0 / (x * x + y * y + a)); };
    f.classes = {{"BV", "C-infinity on the closed square since a > 0"},
                 {"PBV", "smooth, finite variation on every line"},
                 {"HBV", "contained in BV"}};
  } else if (name == "pbv_p") {
    reject_unknown(name, params, {"p", "levels"});
    const double p = param(params, "p", 2.0);
    const double levels_d = param(params, "levels", 8.0);
    if (!(p >= 1.0)) throw std::invalid_argument("pbv_p: p must be >= 1");
    if (!(levels_d >= 1.0) || levels_d != std::floor(levels_d))
      throw std::invalid_argument("pbv_p: levels must be a positive integer");
    const int levels = static_cast<int>(levels_d);
    f.params = {{"p", p}, {"levels", levels_d}};
    f.evaluate = [p, levels](double x, double y) {
      return takagi_partial(x, p, levels) + takagi_partial(y, p, levels);
    };
    f.classes = {{"PBV_p", "amplitudes 2^{-k/p} at dyadic scale 2^{-k} give Hoelder order 1/p"}};
    f.has_kink = true;
  } else if (name == "radial_kink") {
    reject_unknown(name, params, {"alpha"});
    const double alpha = param(params, "alpha", 0.5);
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw std::invalid_argument("radial_kink: alpha must lie in (0,1]");
    f.params = {{"alpha", alpha}};
    f.evaluate = [alpha](double x, double y) { return std::pow(std::abs(x * y), alpha); };
    f.classes = {{"modulus O(k^alpha)", "Hoelder of order alpha across the axes"},
                 {"BV", "product of functions monotone on each half-line"}};
    f.has_kink = true;
  } else {
    throw std::invalid_argument("unknown corpus function '" + name + "'");
  }
  return f;
}

}  // namespace flsuite::harness
