#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "textnet/earlywarn.hpp"
#include "textnet/metrics.hpp"
#include "textnet/netbuild.hpp"

namespace textnet {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

struct NetworkNode {
    std::size_t id = 0;
    std::string label;
    double strength = 0.0;
    /// Information centrality of the smoothed network.
    double info_centrality = 0.0;
    /// Information centrality without smoothing, largest component only.
    double info_centrality_raw = 0.0;
    bool is_gsib = false;
};

struct NetworkLink {
    std::size_t source = 0;
    std::size_t target = 0;
    double weight = 0.0;
};

/// One cross section as consumed by the network explorer.
struct NetworkDocument {
    int schema_version = kSchemaVersion;
    std::string period;
    double alpha = 0.0;
    std::vector<NetworkNode> nodes;
    /// Observed links, weight > 0, source < target.
    std::vector<NetworkLink> links;
    /// Links after smoothing; empty when alpha is 0.
    std::vector<NetworkLink> smoothed_links;
};

NetworkDocument make_document(const CrossSectionNetwork& net, const std::vector<bool>& gsib, double alpha,
                              const Eigen::VectorXd& smoothed_centrality, const Eigen::VectorXd& raw_centrality);
std::string serialize(const NetworkDocument& doc);
NetworkDocument parse_network_document(std::string_view json_text);
/// Raw (unsmoothed) network described by a document.
CrossSectionNetwork to_network(const NetworkDocument& doc);

std::string serialize_panel(const CentralityPanel& smoothed, const CentralityPanel& raw, const std::vector<bool>& gsib);

/// Minimal RFC 4180 field splitter (double quotes, doubled-quote escapes).
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

/// Panel CSV: entity,period,label,<feature>...
Panel read_panel_csv(const std::filesystem::path& path);
void write_panel_csv(const Panel& panel, const std::filesystem::path& path);
/// Events CSV: entity,event_date,event_type
std::vector<DistressEvent> read_events_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

} // namespace textnet
