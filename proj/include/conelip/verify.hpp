#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "conelip/cone.hpp"
#include "conelip/freespace.hpp"
#include "conelip/metric.hpp"
#include "conelip/prng.hpp"

namespace conelip {

struct CaseRecord {
    int case_index = 0;
    std::string operation;
    std::string inputs_digest;
    std::string relation;          // identity or inequality being checked
    std::vector<double> measured;
    bool pass = true;
    double residual = 0.0;
    std::string counterexample;    // path of the dumped instance on failure
};

struct RunReport {
    std::string suite;
    std::uint64_t seed = 0;
    int cases = 0;
    std::vector<CaseRecord> records;
    double wall_ms = 0.0;  // console diagnostics only; reports stay byte-stable

    bool all_pass() const;
    double max_residual() const;
};

const std::vector<std::string>& suite_names();

// Runs `cases` seeded instances of one suite. Failures dump their instance
// files under dump_dir and name the violated identity in the record.
RunReport run_suite(const std::string& name, int cases, std::uint64_t seed,
                    const std::string& dump_dir = ".");

std::string report_to_json(const RunReport& r);
std::string report_to_csv(const RunReport& r);

// Seeded instance generators shared by the verification suites, the
// acceptance suite and the unit tests. All randomness flows through
// SplitMix64 so instances are reproducible from (seed, suite, case).
namespace testgen {

Vec random_vec(SplitMix64& rng, int dim, double lo, double hi);
Vec random_unit(SplitMix64& rng, int dim, NormTag norm);

// embedded space with distinct points in [-3,3]^dim
PointedSpace random_embedded_space(SplitMix64& rng, int dim, int npts, NormTag norm);
// matrix space with dyadic distances in [1,2] (triangle-free by construction,
// exactly representable for the rational lane)
PointedSpace random_matrix_space(SplitMix64& rng, int npts);
PointedSpace random_space(SplitMix64& rng, int max_pts);

ScalarField random_field(SplitMix64& rng, const PointedSpace& space, double amp = 3.0);
RaySystem random_rays(SplitMix64& rng, int dim, int count, NormTag norm);
PHField random_ph_field(SplitMix64& rng, const RaySystem& rays, double amp = 3.0);
FreeElement random_element(SplitMix64& rng, const PointedSpace& space, int max_terms = 4);
NormTag random_norm(SplitMix64& rng);

// generators guaranteed independent (resampled until full rank)
std::vector<ScalarField> random_generators(SplitMix64& rng, const PointedSpace& space, int k);

}  // namespace testgen

}  // namespace conelip
