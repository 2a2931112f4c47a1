#include "lreaudit/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "lreaudit/error.hpp"

namespace lreaudit {

using nlohmann::json;

std::string hex_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hex_double(std::string_view s) {
    const std::string str(s);
    if (str.empty()) throw ProtocolError("empty number");
    char* end = nullptr;
    const double v = std::strtod(str.c_str(), &end);
    if (end != str.c_str() + str.size()) throw ProtocolError("bad number '" + str + "'");
    return v;
}

std::string encode_handshake(const std::set<std::string>& capabilities) {
    json j;
    j["protocol"] = kProtocolVersion;
    j["capabilities"] = json::array();
    for (const auto& c : capabilities) j["capabilities"].push_back(c);
    return j.dump();
}

namespace {

json parse_json(std::string_view line) {
    json j = json::parse(line.begin(), line.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ProtocolError("malformed JSON line");
    return j;
}

std::vector<double> number_array(const json& j, const char* field) {
    if (!j.is_array()) throw ProtocolError(std::string("'") + field + "' must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw ProtocolError(std::string("'") + field + "' holds a non-number");
        out.push_back(e.get<double>());
    }
    return out;
}

std::size_t size_field(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_unsigned())
        throw ProtocolError(std::string("missing or bad '") + field + "'");
    return j[field].get<std::size_t>();
}

}  // namespace

std::set<std::string> decode_handshake(std::string_view line) {
    json j;
    try {
        j = parse_json(line);
    } catch (const ProtocolError&) {
        throw ProtocolError("malformed handshake: " + std::string(line.substr(0, 200)));
    }
    if (!j.contains("protocol") || !j["protocol"].is_number_integer())
        throw ProtocolError("handshake lacks a protocol version");
    if (j["protocol"].get<long long>() != kProtocolVersion)
        throw ProtocolError("adapter speaks protocol " + j["protocol"].dump() + ", expected 1");
    if (!j.contains("capabilities") || !j["capabilities"].is_array())
        throw ProtocolError("handshake lacks a capability list");
    std::set<std::string> caps;
    for (const auto& c : j["capabilities"]) {
        if (!c.is_string()) throw ProtocolError("capability tags must be strings");
        caps.insert(c.get<std::string>());
    }
    return caps;
}

std::string encode_request(const Request& req, std::uint64_t id) {
    json j;
    j["id"] = id;
    j["op"] = req.op;
    if (req.op == "dist") {
        j["family"] = req.family;
        for (const auto& [k, v] : req.params) j[k] = v;
        return j.dump();
    }
    const bool matrix_op = req.op == "regress" || req.op == "det" || req.op == "eig_sym";
    if (req.op == "regress") {
        j["y"] = req.data;
    } else if (!matrix_op) {
        j["data"] = req.data;
    }
    if (matrix_op) {
        j["matrix"] = req.matrix.a;
        j["rows"] = req.matrix.rows;
        j["cols"] = req.matrix.cols;
    }
    return j.dump();
}

Request decode_request(std::string_view line, std::optional<std::uint64_t>& id) {
    id.reset();
    const json j = parse_json(line);
    if (j.contains("id") && j["id"].is_number_unsigned()) id = j["id"].get<std::uint64_t>();
    if (!j.contains("op") || !j["op"].is_string()) throw ProtocolError("request lacks 'op'");
    Request r;
    r.op = j["op"].get<std::string>();
    if (r.op == "dist") {
        if (!j.contains("family") || !j["family"].is_string()) throw ProtocolError("dist request lacks 'family'");
        r.family = j["family"].get<std::string>();
        for (const auto& [k, v] : j.items()) {
            if (k == "id" || k == "op" || k == "family") continue;
            if (!v.is_number()) throw ProtocolError("dist parameter '" + k + "' is not a number");
            r.params.emplace_back(k, v.get<double>());
        }
        return r;
    }
    if (r.op == "regress" || r.op == "det" || r.op == "eig_sym") {
        if (!j.contains("matrix")) throw ProtocolError("request lacks 'matrix'");
        r.matrix.a = number_array(j["matrix"], "matrix");
        r.matrix.rows = size_field(j, "rows");
        r.matrix.cols = size_field(j, "cols");
        if (r.matrix.rows * r.matrix.cols != r.matrix.a.size())
            throw ProtocolError("matrix size does not match rows * cols");
        if (r.op == "regress") {
            if (!j.contains("y")) throw ProtocolError("regress request lacks 'y'");
            r.data = number_array(j["y"], "y");
        }
        return r;
    }
    if (j.contains("data")) r.data = number_array(j["data"], "data");
    return r;
}

std::string encode_reply(const Reply& reply, std::optional<std::uint64_t> id) {
    json j;
    if (id) j["id"] = *id;
    if (!reply.ok()) {
        j["error"] = reply.error;
        return j.dump();
    }
    // nlohmann writes non-finite doubles as null; the hex field carries them.
    if (reply.values.size() == 1) {
        j["value"] = reply.values[0];
        j["hex"] = hex_double(reply.values[0]);
    } else {
        j["values"] = reply.values;
        json hex = json::array();
        for (double v : reply.values) hex.push_back(hex_double(v));
        j["hex"] = hex;
    }
    return j.dump();
}

Reply decode_reply(std::string_view line, std::uint64_t expected_id) {
    const json j = parse_json(line);
    if (j.contains("id")) {
        if (!j["id"].is_number_unsigned() || j["id"].get<std::uint64_t>() != expected_id)
            throw ProtocolError("response id does not match request " + std::to_string(expected_id));
    }
    if (j.contains("error")) {
        if (!j["error"].is_string()) throw ProtocolError("'error' must be a string");
        return Reply::fail(j["error"].get<std::string>());
    }
    auto one = [](const json& v, const json* hex) -> double {
        if (hex && !hex->is_null()) {
            if (!hex->is_string()) throw ProtocolError("'hex' entries must be strings");
            return parse_hex_double(hex->get<std::string>());
        }
        if (!v.is_number()) throw ProtocolError("value is not a number");
        return v.get<double>();
    };
    const json* hex = j.contains("hex") ? &j["hex"] : nullptr;
    if (j.contains("value")) {
        if (hex && hex->is_array()) throw ProtocolError("scalar value with a hex array");
        return Reply::of(one(j["value"], hex));
    }
    if (j.contains("values")) {
        const json& vals = j["values"];
        if (!vals.is_array()) throw ProtocolError("'values' must be an array");
        if (hex && (!hex->is_array() || hex->size() != vals.size()))
            throw ProtocolError("'hex' must parallel 'values'");
        std::vector<double> out;
        out.reserve(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) out.push_back(one(vals[i], hex ? &(*hex)[i] : nullptr));
        return Reply::of(std::move(out));
    }
    throw ProtocolError("response has neither value, values nor error");
}

std::size_t serve(Backend& backend, std::istream& in, std::ostream& out) {
    out << encode_handshake(backend.capabilities()) << '\n' << std::flush;
    std::size_t answered = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::optional<std::uint64_t> id;
        Reply reply;
        try {
            reply = backend.call(decode_request(line, id));
        } catch (const ProtocolError& e) {
            reply = Reply::fail(std::string("malformed request: ") + e.what());
        }
        out << encode_reply(reply, id) << '\n' << std::flush;
        ++answered;
    }
    return answered;
}

}  // namespace lreaudit
