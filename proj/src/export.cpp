#include "textnet/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "textnet/corpus.hpp"
#include "textnet/error.hpp"

namespace textnet {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

NetworkDocument make_document(const CrossSectionNetwork& net, const std::vector<bool>& gsib, double alpha,
                              const Eigen::VectorXd& smoothed_centrality, const Eigen::VectorXd& raw_centrality) {
    NetworkDocument doc;
    doc.period = to_label(net.period);
    doc.alpha = alpha;
    const Eigen::VectorXd s = strength(net);
    const auto n = net.size();
    for (std::size_t i = 0; i < n; ++i) {
        doc.nodes.push_back({i, net.nodes[i], s[i], smoothed_centrality[i], raw_centrality[i],
                             i < gsib.size() && gsib[i]});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = net.weights(i, j);
            if (w > 0.0) doc.links.push_back({i, j, w});
            if (alpha > 0.0) doc.smoothed_links.push_back({i, j, w + alpha});
        }
    }
    return doc;
}

namespace {

json links_json(const std::vector<NetworkLink>& links) {
    json arr = json::array();
    for (const auto& l : links) arr.push_back({{"source", l.source}, {"target", l.target}, {"weight", l.weight}});
    return arr;
}

std::vector<NetworkLink> parse_links(const nlohmann::json& arr, std::size_t n) {
    std::vector<NetworkLink> out;
    for (const auto& l : arr) {
        NetworkLink link{l.at("source").get<std::size_t>(), l.at("target").get<std::size_t>(),
                         l.at("weight").get<double>()};
        if (link.source >= n || link.target >= n || link.source == link.target)
            throw InputError("network document: invalid link index");
        if (!(link.weight > 0.0)) throw InputError("network document: nonpositive link weight");
        out.push_back(link);
    }
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json panel_block(const CentralityPanel& p) {
    json b;
    b["alpha"] = p.alpha;
    b["flat"] = p.flat;
    b["values"] = matrix_json(p.values);
    b["normalized"] = matrix_json(p.normalized);
    if (p.periods.size() >= 2) b["variance_over_time"] = variance_over_time(p.normalized);
    if (p.nodes.size() >= 2 && !p.periods.empty()) b["variance_across_nodes"] = variance_across_nodes(p.normalized);
    return b;
}

std::ifstream open_input(const std::filesystem::path& path, std::string_view what) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + std::string(what) + " '" + path.string() + "'");
    return in;
}

} // namespace

std::string serialize(const NetworkDocument& doc) {
    json j;
    j["schema_version"] = doc.schema_version;
    j["period"] = doc.period;
    j["alpha"] = doc.alpha;
    json nodes = json::array();
    for (const auto& n : doc.nodes) {
        nodes.push_back({{"id", n.id},
                         {"label", n.label},
                         {"strength", n.strength},
                         {"info_centrality", n.info_centrality},
                         {"info_centrality_raw", n.info_centrality_raw},
                         {"is_gsib", n.is_gsib}});
    }
    j["nodes"] = std::move(nodes);
    j["links"] = links_json(doc.links);
    j["smoothed_links"] = links_json(doc.smoothed_links);
    return j.dump(1) + "\n";
}

NetworkDocument parse_network_document(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("network document is not valid JSON: ") + e.what());
    }
    NetworkDocument doc;
    try {
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != kSchemaVersion)
            throw InputError("unsupported network document schema " + std::to_string(doc.schema_version));
        doc.period = j.at("period").get<std::string>();
        doc.alpha = j.at("alpha").get<double>();
        for (const auto& n : j.at("nodes")) {
            doc.nodes.push_back({n.at("id").get<std::size_t>(), n.at("label").get<std::string>(),
                                 n.at("strength").get<double>(), n.at("info_centrality").get<double>(),
                                 n.at("info_centrality_raw").get<double>(), n.at("is_gsib").get<bool>()});
        }
        doc.links = parse_links(j.at("links"), doc.nodes.size());
        doc.smoothed_links = parse_links(j.value("smoothed_links", nlohmann::json::array()), doc.nodes.size());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed network document: ") + e.what());
    }
    for (std::size_t i = 0; i < doc.nodes.size(); ++i)
        if (doc.nodes[i].id != i) throw InputError("network document: node ids must be 0..n-1 in order");
    return doc;
}

CrossSectionNetwork to_network(const NetworkDocument& doc) {
    CrossSectionNetwork net;
    net.period = parse_period(doc.period);
    const auto n = static_cast<Eigen::Index>(doc.nodes.size());
    for (const auto& node : doc.nodes) net.nodes.push_back(node.label);
    net.weights = Eigen::MatrixXd::Zero(n, n);
    for (const auto& l : doc.links) {
        net.weights(l.source, l.target) = l.weight;
        net.weights(l.target, l.source) = l.weight;
    }
    return net;
}

std::string serialize_panel(const CentralityPanel& smoothed, const CentralityPanel& raw, const std::vector<bool>& gsib) {
    json j;
    j["schema_version"] = kSchemaVersion;
    json periods = json::array();
    for (const auto& p : smoothed.periods) periods.push_back(to_label(p));
    j["periods"] = std::move(periods);
    j["nodes"] = smoothed.nodes;
    json flags = json::array();
    for (std::size_t i = 0; i < smoothed.nodes.size(); ++i) flags.push_back(i < gsib.size() && gsib[i]);
    j["is_gsib"] = std::move(flags);
    j["smoothed"] = panel_block(smoothed);
    j["raw"] = panel_block(raw);
    return j.dump(1) + "\n";
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Panel read_panel_csv(const std::filesystem::path& path) {
    auto in = open_input(path, "panel");
    std::string line;
    if (!std::getline(in, line)) throw InputError("panel '" + path.string() + "' is empty");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "entity" || header[1] != "period" || header[2] != "label")
        throw InputError("panel header must start with entity,period,label");
    Panel panel;
    panel.feature_names.assign(header.begin() + 3, header.end());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        const auto where = "panel line " + std::to_string(line_no) + ": ";
        if (f.size() != header.size()) throw InputError(where + "expected " + std::to_string(header.size()) + " fields");
        PanelObservation row;
        row.entity = f[0];
        try {
            row.period = parse_period(f[1]);
        } catch (const InputError& e) {
            throw InputError(where + e.what());
        }
        if (f[2] != "0" && f[2] != "1") throw InputError(where + "label must be 0 or 1");
        row.label = f[2] == "1";
        for (std::size_t k = 3; k < f.size(); ++k) {
            double v = 0.0;
            const auto& s = f[k];
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw InputError(where + "non-numeric value '" + s + "' in column " + header[k]);
            row.features.push_back(v);
        }
        panel.rows.push_back(std::move(row));
    }
    return panel;
}

void write_panel_csv(const Panel& panel, const std::filesystem::path& path) {
    std::ostringstream os;
    os << "entity,period,label";
    for (const auto& f : panel.feature_names) os << ',' << csv_escape(f);
    os << '\n';
    for (const auto& r : panel.rows) {
        os << csv_escape(r.entity) << ',' << to_label(r.period) << ',' << r.label;
        for (double v : r.features) os << ',' << format_double(v);
        os << '\n';
    }
    write_text_file(path, os.str());
}

std::vector<DistressEvent> read_events_csv(const std::filesystem::path& path) {
    auto in = open_input(path, "events file");
    std::string line;
    std::vector<DistressEvent> out;
    if (!std::getline(in, line)) return out;
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "entity" || header[1] != "event_date")
        throw InputError("events header must start with entity,event_date");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (f.size() < 2) throw InputError("events line " + std::to_string(line_no) + ": too few fields");
        DistressEvent e;
        e.entity = f[0];
        try {
            e.date = parse_date(f[1]);
        } catch (const InputError& err) {
            throw InputError("events line " + std::to_string(line_no) + ": " + err.what());
        }
        if (f.size() > 2) e.type = f[2];
        out.push_back(std::move(e));
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_text_file(const std::filesystem::path& path) {
    auto in = open_input(path, "file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace textnet
