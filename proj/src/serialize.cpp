#include "pm/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pm {

Json partition_to_json(const Partition& partition) {
    Json doc;
    doc["params"] = {
        {"K", partition.params.max_radius},
        {"eps", partition.params.epsilon},
        {"seed", partition.params.seed},
        {"order_policy", partition.params.order_policy == OrderPolicy::SeededPermutation
                             ? "seeded-random-permutation"
                             : "given-explicit-order"},
    };
    doc["blocks"] = partition.blocks;
    doc["pivots"] = partition.pivots;
    doc["radii"] = partition.radii;
    Json boundary = Json::array();
    for (const Edge& e : partition.boundary) boundary.push_back({e.u, e.v});
    doc["boundary"] = std::move(boundary);
    doc["cut_fraction"] = partition.cut_fraction;
    return doc;
}

Json mrf_to_json(const PairwiseMRF& mrf) {
    const std::uint32_t q = mrf.alphabet_size();
    Json doc;
    doc["n"] = mrf.graph().vertex_count();
    doc["q"] = q;
    doc["domain"] = "log";
    Json nodes = Json::array();
    for (Vertex i = 0; i < mrf.graph().vertex_count(); ++i) {
        Json row = Json::array();
        for (Symbol a = 0; a < q; ++a) row.push_back(mrf.node_logpot(i, a));
        nodes.push_back(std::move(row));
    }
    doc["nodes"] = std::move(nodes);
    Json edges = Json::array();
    const auto& edge_list = mrf.graph().edges();
    for (std::uint32_t id = 0; id < edge_list.size(); ++id) {
        Json table = Json::array();
        for (Symbol a = 0; a < q; ++a) {
            for (Symbol b = 0; b < q; ++b) table.push_back(mrf.edge_logpot_by_id(id, a, b));
        }
        edges.push_back({{"u", edge_list[id].u}, {"v", edge_list[id].v}, {"table", std::move(table)}});
    }
    doc["edges"] = std::move(edges);
    return doc;
}

PairwiseMRF mrf_from_json(const Json& doc) {
    const auto n = doc.at("n").get<std::uint32_t>();
    const auto q = doc.at("q").get<std::uint32_t>();
    const auto domain = doc.at("domain").get<std::string>();
    if (domain != "log" && domain != "raw") {
        throw std::runtime_error("mrf domain must be \"log\" or \"raw\"");
    }
    const bool raw = domain == "raw";
    auto convert = [raw](double v) {
        if (!raw) return v;
        if (!(v > 0.0)) throw std::runtime_error("raw-domain potentials must be strictly positive");
        return std::log(v);
    };

    const auto& nodes = doc.at("nodes");
    if (nodes.size() != n) throw std::runtime_error("mrf node table count mismatch");
    std::vector<double> node_pot;
    node_pot.reserve(static_cast<std::size_t>(n) * q);
    for (const auto& row : nodes) {
        if (row.size() != q) throw std::runtime_error("mrf node table row has wrong width");
        for (const auto& v : row) node_pot.push_back(convert(v.get<double>()));
    }

    // Edge tables are keyed by the (u, v) pair as written; the graph sorts
    // edges canonically, so re-align tables by looking the pair up again.
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<std::vector<double>> raw_tables;
    for (const auto& entry : doc.at("edges")) {
        auto u = entry.at("u").get<Vertex>();
        auto v = entry.at("v").get<Vertex>();
        const auto& table = entry.at("table");
        if (table.size() != static_cast<std::size_t>(q) * q) {
            throw std::runtime_error("mrf edge table has wrong size");
        }
        std::vector<double> values;
        values.reserve(table.size());
        if (u > v) {
            // store transposed so the table is always for the (min, max) orientation
            for (Symbol a = 0; a < q; ++a) {
                for (Symbol b = 0; b < q; ++b) {
                    values.push_back(convert(table.at(static_cast<std::size_t>(b) * q + a).get<double>()));
                }
            }
            std::swap(u, v);
        } else {
            for (const auto& x : table) values.push_back(convert(x.get<double>()));
        }
        pairs.emplace_back(u, v);
        raw_tables.push_back(std::move(values));
    }

    Graph graph(n, pairs);
    if (graph.edges().size() != pairs.size()) {
        throw std::runtime_error("mrf edge list contains duplicate edges");
    }
    std::vector<double> edge_pot(static_cast<std::size_t>(pairs.size()) * q * q);
    const auto& canonical = graph.edges();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Edge target{pairs[i].first, pairs[i].second};
        const auto it = std::lower_bound(canonical.begin(), canonical.end(), target);
        const auto id = static_cast<std::size_t>(it - canonical.begin());
        std::copy(raw_tables[i].begin(), raw_tables[i].end(),
                  edge_pot.begin() + static_cast<std::ptrdiff_t>(id * q * q));
    }
    return PairwiseMRF(std::move(graph), q, std::move(node_pot), std::move(edge_pot));
}

PairwiseMRF load_mrf_file(const std::string& path) {
    try {
        return mrf_from_json(Json::parse(read_text_file(path)));
    } catch (const nlohmann::json::exception& err) {
        throw std::runtime_error("cannot parse mrf file " + path + ": " + err.what());
    }
}

Json map_certificate_to_json(const MapCertificate& cert) {
    return Json{
        {"h_hat", cert.h_hat},
        {"boundary_penalty", cert.boundary_penalty},
        {"alpha", cert.alpha_used},
        {"k_tilde_hop", cert.k_tilde_hop},
        {"k_tilde_analytic", cert.k_tilde_analytic},
        {"implied_opt_upper", cert.implied_opt_upper},
    };
}

Json mod_certificate_to_json(const ModCertificate& cert) {
    return Json{
        {"m_hat", cert.m_hat},
        {"penalty", cert.penalty},
        {"alpha", cert.alpha_used},
        {"k_tilde_hop", cert.k_tilde_hop},
        {"k_tilde_analytic", cert.k_tilde_analytic},
        {"implied_opt_upper", cert.implied_opt_upper},
    };
}

Json map_result_to_json(const PmMapResult& result) {
    Json doc;
    doc["assignment"] = result.assignment;
    doc["H"] = result.certificate.h_hat;
    doc["certificate"] = map_certificate_to_json(result.certificate);
    doc["partition"] = partition_to_json(result.partition);
    return doc;
}

Json cluster_result_to_json(const PmClusterResult& result) {
    Json doc;
    doc["labels"] = result.clustering;
    doc["modularity"] = result.certificate.m_hat;
    doc["certificate"] = mod_certificate_to_json(result.certificate);
    doc["partition"] = partition_to_json(result.partition);
    return doc;
}

Json growth_profile_to_json(const GrowthProfile& profile) {
    Json per_rho = Json::array();
    for (std::size_t i = 0; i < profile.per_rho_min_c.size(); ++i) {
        per_rho.push_back({{"rho", i + 1}, {"min_C", profile.per_rho_min_c[i]}});
    }
    return Json{{"per_rho", std::move(per_rho)},
                {"chosen_rho", profile.chosen_rho},
                {"chosen_C", profile.chosen_c}};
}

Json param_recommendation_to_json(const ParamRecommendation& rec) {
    return Json{
        {"problem", rec.problem == ProblemKind::Map ? "map" : "modularity"},
        {"rho", rec.rho},
        {"C", rec.growth_c},
        {"delta", rec.delta},
        {"eps", rec.epsilon},
        {"K", rec.max_radius},
        {"k_tilde_analytic", rec.k_tilde_analytic},
    };
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace pm
