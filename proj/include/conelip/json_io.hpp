#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conelip/cone.hpp"
#include "conelip/freespace.hpp"
#include "conelip/mcshane.hpp"
#include "conelip/metric.hpp"

namespace conelip {

// File formats:
//   space:       {"kind":"points","norm":"l2","dim":2,"points":[[0,0],[1,0]]}
//                {"kind":"matrix","dist":[[0,1],[1,0]]}
//   field:       {"values":[0, ...]}
//   partial:     {"domain":[0,1],"values":[0,1]}
//   rays:        {"norm":"l2","dim":2,"directions":[[1,0],[0,1]],"values":[1,-1]}
//   element:     {"terms":[{"point":1,"a":1.0},{"point":2,"a":-1.0}]}
//   ph element:  {"norm":"l2","dim":2,"terms":[{"x":[2,0],"a":1.0}]}
// Index 0 is the basepoint everywhere.

PointedSpace load_space(const std::string& path);
ScalarField load_field(const PointedSpace& space, const std::string& path);
PartialField load_partial_field(const PointedSpace& space, const std::string& path);

struct RayFile {
    RaySystem rays;
    std::optional<PHField> values;
};
RayFile load_ray_file(const std::string& path);

FreeElement load_free_element(const PointedSpace& space, const std::string& path);
PHFreeElement load_ph_free_element(const std::string& path);

// Emission goes through one deterministic formatter: 17 significant digits,
// no locale, compact separators. Reports rely on this for byte-stable output.
std::string format_double(double v);
std::string json_doubles(const std::vector<double>& v);
std::string json_points(const std::vector<Vec>& pts);

std::string space_to_json(const PointedSpace& space);
std::string field_to_json(const ScalarField& f);
std::string partial_field_to_json(const PartialField& pf);
std::string rays_to_json(const RaySystem& rays, const std::optional<PHField>& values);
std::string free_element_to_json(const FreeElement& mu);
std::string ph_free_element_to_json(const PHFreeElement& mu);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// FNV-1a digest of a canonical serialization, as fixed-width hex
std::string digest(const std::string& canonical);

}  // namespace conelip
