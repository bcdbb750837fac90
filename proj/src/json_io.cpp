#include "msl/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace msl {

using nlohmann::json;

json point_to_json(const Point& p) {
    json j = json::array();
    for (double c : p.coords) j.push_back(c);
    return j;
}

Point point_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("point must be a non-empty array of numbers");
    }
    Point p;
    p.coords.reserve(j.size());
    for (const auto& c : j) {
        if (!c.is_number()) throw std::invalid_argument("point coordinate must be a number");
        p.coords.push_back(c.get<double>());
    }
    return p;
}

json instance_to_json(const Instance& inst) {
    json j;
    j["variant"] = variant_name(inst.variant);
    j["dimension"] = inst.dimension;
    j["start"] = point_to_json(inst.start);
    j["m"] = inst.move_limit;
    j["D"] = inst.move_cost;
    if (inst.agent_limit) j["m_a"] = *inst.agent_limit;
    json batches = json::array();
    for (const RequestBatch& b : inst.batches) {
        json jb = json::array();
        for (const Point& v : b.requests) jb.push_back(point_to_json(v));
        batches.push_back(std::move(jb));
    }
    j["batches"] = std::move(batches);
    return j;
}

Instance instance_from_json(const json& j) {
    auto need = [&](const char* key) -> const json& {
        auto it = j.find(key);
        if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
        return *it;
    };
    Instance inst;
    inst.variant = variant_from_name(need("variant").get<std::string>());
    inst.dimension = need("dimension").get<int>();
    inst.start = point_from_json(need("start"));
    inst.move_limit = need("m").get<double>();
    inst.move_cost = need("D").get<double>();
    if (auto it = j.find("m_a"); it != j.end() && !it->is_null()) {
        inst.agent_limit = it->get<double>();
    }
    const json& batches = need("batches");
    if (!batches.is_array()) throw std::invalid_argument("'batches' must be an array");
    for (const auto& jb : batches) {
        if (!jb.is_array()) throw std::invalid_argument("each batch must be an array of points");
        RequestBatch b;
        for (const auto& jp : jb) b.requests.push_back(point_from_json(jp));
        inst.batches.push_back(std::move(b));
    }
    return inst;
}

json trace_to_json(const Trace& trace) {
    json j;
    j["step_limit"] = trace.step_limit;
    json pos = json::array();
    for (const Point& p : trace.positions) pos.push_back(point_to_json(p));
    j["positions"] = std::move(pos);
    json steps = json::array();
    double move = 0.0, serve = 0.0, total = 0.0;
    for (const CostBreakdown& cb : trace.steps) {
        steps.push_back({{"move_cost", cb.move_cost},
                         {"serve_cost", cb.serve_cost},
                         {"total", cb.total}});
        move += cb.move_cost;
        serve += cb.serve_cost;
        total += cb.total;
    }
    j["steps"] = std::move(steps);
    j["totals"] = {{"move_cost", move}, {"serve_cost", serve}, {"total", total}};
    return j;
}

void save_instance(const Instance& inst, const std::string& path, const json& meta) {
    json j = instance_to_json(inst);
    if (!meta.is_null()) j["meta"] = meta;
    write_text_file(path, j.dump(2) + "\n");
}

std::pair<Instance, json> load_instance(const std::string& path) {
    const std::string text = read_text_file(path);
    json j = json::parse(text);  // throws nlohmann parse_error with byte position
    Instance inst = instance_from_json(j);
    json meta;
    if (auto it = j.find("meta"); it != j.end()) meta = *it;
    return {std::move(inst), std::move(meta)};
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace msl
