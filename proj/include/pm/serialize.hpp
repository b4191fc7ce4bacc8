#pragma once

#include <string>

#include <json.hpp>

#include "pm/growth.hpp"
#include "pm/pipeline.hpp"

namespace pm {

using Json = nlohmann::ordered_json;

// Partition document: {params, blocks, pivots, radii, boundary, cut_fraction}.
Json partition_to_json(const Partition& partition);

// MRF document: {n, q, domain: "log"|"raw", nodes, edges: [{u, v, table}]}.
// Raw-domain tables are elementwise ln-transformed on load and must be
// strictly positive.
Json mrf_to_json(const PairwiseMRF& mrf);
PairwiseMRF mrf_from_json(const Json& doc);
PairwiseMRF load_mrf_file(const std::string& path);

Json map_certificate_to_json(const MapCertificate& cert);
Json mod_certificate_to_json(const ModCertificate& cert);

// Result documents emitted by the CLI.
Json map_result_to_json(const PmMapResult& result);
Json cluster_result_to_json(const PmClusterResult& result);

Json growth_profile_to_json(const GrowthProfile& profile);
Json param_recommendation_to_json(const ParamRecommendation& rec);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace pm
