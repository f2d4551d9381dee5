#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "floq/floquet.hpp"

namespace floq {

using Json = nlohmann::ordered_json;

// Potential file schema:
//   {"axes":[{"period":4,"values":[[1,1],[1,-1],[-1,1],[-1,-1]]}]}
// with Gaussian integers as [re, im]; floating axes use "values_f" instead.
inline SeparablePotential potential_from_json(const Json& j) {
  if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].empty())
    fail(errc::bad_argument, "potential file needs a non-empty axes array");
  SeparablePotential v;
  for (const Json& axis : j["axes"]) {
    if (!axis.contains("period")) fail(errc::bad_argument, "axis needs a period");
    const int q = axis["period"].get<int>();
    const bool exact = axis.contains("values");
    const char* key = exact ? "values" : "values_f";
    if (!axis.contains(key)) fail(errc::bad_argument, "axis needs values or values_f");
    const Json& vals = axis[key];
    if (!vals.is_array() || static_cast<int>(vals.size()) != q)
      fail(errc::bad_argument, "axis value count must equal the period");
    if (exact) {
      std::vector<GaussInt> gv;
      for (const Json& pair : vals)
        gv.emplace_back(pair.at(0).get<long long>(), pair.at(1).get<long long>());
      v.axes.push_back(Potential1D::exact(std::move(gv)));
    } else {
      std::vector<Cplx> fv;
      for (const Json& pair : vals) fv.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
      v.axes.push_back(Potential1D::numeric(std::move(fv)));
    }
  }
  return v;
}

inline Json potential_to_json(const SeparablePotential& v) {
  Json axes = Json::array();
  for (const Potential1D& axis : v.axes) {
    Json a;
    a["period"] = axis.period();
    if (axis.is_exact()) {
      Json vals = Json::array();
      for (const GaussInt& g : axis.exact_values())
        vals.push_back({g.re.convert_to<long long>(), g.im.convert_to<long long>()});
      a["values"] = vals;
    } else {
      Json vals = Json::array();
      for (const Cplx& c : axis.numeric_values()) vals.push_back({c.real(), c.imag()});
      a["values_f"] = vals;
    }
    axes.push_back(a);
  }
  return Json{{"axes", axes}};
}

inline SeparablePotential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_argument, "cannot open potential file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(errc::bad_argument, "bad potential file " + path + ": " + e.what());
  }
  return potential_from_json(j);
}

}  // namespace floq
