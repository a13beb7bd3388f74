#include "cachesched/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cachesched {

namespace {

using nlohmann::json;

json to_json(const Instance& inst) {
    json doc;
    doc["T"] = inst.num_slots;
    doc["F"] = inst.num_contents;
    doc["U"] = inst.num_users;
    doc["capacity"] = inst.capacity;
    doc["cost_server"] = inst.cost_server;
    doc["cost_cache"] = inst.cost_cache;
    doc["sizes"] = inst.sizes;
    json reqs = json::array();
    for (const Request& r : inst.requests) {
        reqs.push_back({{"user", r.user},
                        {"index", r.index},
                        {"content", r.content},
                        {"origin", r.origin},
                        {"deadline", r.deadline}});
    }
    doc["requests"] = std::move(reqs);
    return doc;
}

std::int64_t require_int(const json& obj, const std::string& field, const std::string& where) {
    if (!obj.contains(field)) throw ParseError("missing field \"" + where + field + "\"");
    const json& v = obj.at(field);
    if (!v.is_number_integer()) throw ParseError("field \"" + where + field + "\" must be an integer");
    return v.get<std::int64_t>();
}

Instance from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("document root must be an object");
    Instance inst;
    inst.num_slots = static_cast<int>(require_int(doc, "T", ""));
    inst.num_contents = static_cast<int>(require_int(doc, "F", ""));
    inst.num_users = static_cast<int>(require_int(doc, "U", ""));
    inst.capacity = require_int(doc, "capacity", "");
    inst.cost_server = require_int(doc, "cost_server", "");
    inst.cost_cache = require_int(doc, "cost_cache", "");

    if (!doc.contains("sizes")) throw ParseError("missing field \"sizes\"");
    if (!doc.at("sizes").is_array()) throw ParseError("field \"sizes\" must be an array");
    for (std::size_t i = 0; i < doc.at("sizes").size(); ++i) {
        const json& v = doc.at("sizes")[i];
        if (!v.is_number_integer())
            throw ParseError("field \"sizes[" + std::to_string(i + 1) + "]\" must be an integer");
        inst.sizes.push_back(v.get<Cost>());
    }

    if (!doc.contains("requests")) throw ParseError("missing field \"requests\"");
    if (!doc.at("requests").is_array()) throw ParseError("field \"requests\" must be an array");
    for (std::size_t i = 0; i < doc.at("requests").size(); ++i) {
        const json& rj = doc.at("requests")[i];
        const std::string where = "requests[" + std::to_string(i + 1) + "].";
        if (!rj.is_object()) throw ParseError("field \"" + where + "\" must be an object");
        Request r;
        r.user = static_cast<int>(require_int(rj, "user", where));
        r.index = static_cast<int>(require_int(rj, "index", where));
        r.content = static_cast<int>(require_int(rj, "content", where));
        r.origin = static_cast<int>(require_int(rj, "origin", where));
        r.deadline = static_cast<int>(require_int(rj, "deadline", where));
        inst.requests.push_back(r);
    }
    try {
        inst.validate();
    } catch (const ParameterError& e) {
        throw ParseError(e.what());
    }
    return inst;
}

} // namespace

void save_instance(const Instance& instance, std::ostream& sink) {
    instance.validate();
    sink << to_json(instance).dump(2) << '\n';
    if (!sink) throw IoError("failed writing instance document");
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    save_instance(instance, out);
}

std::string instance_to_string(const Instance& instance) {
    std::ostringstream out;
    save_instance(instance, out);
    return out.str();
}

Instance load_instance(std::istream& source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid document: ") + e.what());
    }
    return from_json(doc);
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path + "\" for reading");
    return load_instance(in);
}

Instance instance_from_string(const std::string& text) {
    std::istringstream in(text);
    return load_instance(in);
}

} // namespace cachesched
