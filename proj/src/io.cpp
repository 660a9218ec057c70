#include "fcb/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fcb/error.hpp"
#include "json.hpp"

namespace fcb {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::parse, where + ": " + what);
}

const json& field(const json& obj, const std::string& where, const char* key) {
    if (!obj.is_object()) bad(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(where, std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& obj, const std::string& where, const char* key) {
    const auto& v = field(obj, where, key);
    if (!v.is_number()) bad(where + "." + key, "expected a number");
    return v.get<double>();
}

int integer(const json& obj, const std::string& where, const char* key) {
    const auto& v = field(obj, where, key);
    if (!v.is_number_integer()) bad(where + "." + key, "expected an integer");
    return v.get<int>();
}

double optional_number(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) return 0.0;
    if (!it->is_number()) bad(where + "." + key, "expected a number");
    return it->get<double>();
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
    }
}

void check_version(const json& doc) {
    const int v = integer(doc, "document", "format_version");
    if (v != kFormatVersion) bad("format_version", "unsupported version " + std::to_string(v));
}

const json& array_field(const json& doc, const char* key) {
    const auto& v = field(doc, "document", key);
    if (!v.is_array()) bad(key, "expected an array");
    return v;
}

}  // namespace

StructuralModel parse_model_text(const std::string& text) {
    const json doc = parse_json(text);
    check_version(doc);

    const int dim = integer(doc, "document", "dimension");
    if (dim != 2 && dim != 3) bad("dimension", "expected 2 or 3");
    const auto dimension = dim == 2 ? Dimension::planar : Dimension::spatial;

    std::map<std::string, Section> sections;
    const auto& sec = field(doc, "document", "sections");
    if (!sec.is_object()) bad("sections", "expected an object");
    for (const auto& [name, s] : sec.items()) {
        const auto where = "sections." + name;
        sections[name] = {number(s, where, "A"), number(s, where, "I"), number(s, where, "E")};
    }

    std::vector<Node> nodes;
    const auto& jn = array_field(doc, "nodes");
    for (std::size_t i = 0; i < jn.size(); ++i) {
        const auto where = "nodes[" + std::to_string(i) + "]";
        Node n;
        n.id = integer(jn[i], where, "id");
        const auto& xyz = field(jn[i], where, "xyz");
        if (!xyz.is_array() || xyz.size() != static_cast<std::size_t>(dim))
            bad(where + ".xyz", "expected " + std::to_string(dim) + " coordinates");
        for (int k = 0; k < dim; ++k) {
            if (!xyz[static_cast<std::size_t>(k)].is_number()) bad(where + ".xyz", "expected numbers");
            n.xyz[static_cast<std::size_t>(k)] = xyz[static_cast<std::size_t>(k)].get<double>();
        }
        nodes.push_back(n);
    }

    std::vector<Member> members;
    const auto& jm = array_field(doc, "members");
    for (std::size_t i = 0; i < jm.size(); ++i) {
        const auto where = "members[" + std::to_string(i) + "]";
        Member m;
        m.id = integer(jm[i], where, "id");
        m.node_a = integer(jm[i], where, "a");
        m.node_b = integer(jm[i], where, "b");
        const auto& s = field(jm[i], where, "section");
        if (!s.is_string()) bad(where + ".section", "expected a string");
        m.section = s.get<std::string>();
        members.push_back(std::move(m));
    }

    std::vector<int> supports;
    const auto& js = array_field(doc, "supports");
    for (std::size_t i = 0; i < js.size(); ++i) {
        if (!js[i].is_number_integer()) bad("supports[" + std::to_string(i) + "]", "expected a node id");
        supports.push_back(js[i].get<int>());
    }

    try {
        return StructuralModel(dimension, std::move(nodes), std::move(members), std::move(sections),
                               std::move(supports));
    } catch (const Error& e) {
        throw Error(ErrorCode::parse, e.what());
    }
}

StructuralModel parse_model(const std::filesystem::path& path) { return parse_model_text(read_file(path)); }

std::string write_model_text(const StructuralModel& model) {
    const bool planar = model.dimension() == Dimension::planar;
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["dimension"] = planar ? 2 : 3;
    doc["sections"] = json::object();
    for (const auto& [name, s] : model.sections())
        doc["sections"][name] = {{"A", s.area}, {"I", s.inertia}, {"E", s.modulus}};
    doc["nodes"] = json::array();
    for (const auto& n : model.nodes()) {
        json xyz = json::array({n.xyz[0], n.xyz[1]});
        if (!planar) xyz.push_back(n.xyz[2]);
        doc["nodes"].push_back({{"id", n.id}, {"xyz", xyz}});
    }
    doc["members"] = json::array();
    for (const auto& m : model.members())
        doc["members"].push_back({{"id", m.id}, {"a", m.node_a}, {"b", m.node_b}, {"section", m.section}});
    doc["supports"] = json(std::vector<int>(model.supports().begin(), model.supports().end()));
    return doc.dump(2) + "\n";
}

void write_model(const StructuralModel& model, const std::filesystem::path& path) {
    write_file(path, write_model_text(model));
}

LoadCase parse_load_case_text(const std::string& text) {
    const json doc = parse_json(text);
    check_version(doc);
    LoadCase lc;
    const auto& jl = array_field(doc, "loads");
    for (std::size_t i = 0; i < jl.size(); ++i) {
        const auto where = "loads[" + std::to_string(i) + "]";
        NodalLoad l;
        l.node = integer(jl[i], where, "node");
        l.fx = optional_number(jl[i], where, "fx");
        l.fy = optional_number(jl[i], where, "fy");
        l.moment = optional_number(jl[i], where, "moment");
        lc.loads.push_back(l);
    }
    return lc;
}

LoadCase parse_load_case(const std::filesystem::path& path) { return parse_load_case_text(read_file(path)); }

Eigen::MatrixXd parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    long rows = -1, cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw Error(ErrorCode::parse, "matrix: bad 'rows cols' header");
    Eigen::MatrixXd m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            if (!(in >> m(i, j)))
                throw Error(ErrorCode::parse, "matrix: missing value at row " + std::to_string(i + 1) + ", column " +
                                                  std::to_string(j + 1));
    std::string extra;
    if (in >> extra) throw Error(ErrorCode::parse, "matrix: unexpected trailing value '" + extra + "'");
    return m;
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path) { return parse_matrix_text(read_file(path)); }

std::string write_matrix_text(const Eigen::MatrixXd& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j) out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_matrix(const Eigen::MatrixXd& m, const std::filesystem::path& path) {
    write_file(path, write_matrix_text(m));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace fcb
