#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "lreaudit/backend.hpp"

namespace lreaudit {

// Wire format, one JSON object per line.
//
//   adapter -> harness, once:  {"protocol":1,"capabilities":["mean","dist:gamma_cdf",...]}
//   harness -> adapter:        {"id":7,"op":"mean","data":[1,2,3]}
//                              {"id":8,"op":"regress","matrix":[...],"rows":n,"cols":p,"y":[...]}
//                              {"id":9,"op":"det","matrix":[a,b,c,d],"rows":2,"cols":2}
//                              {"id":10,"op":"dist","family":"gamma_cdf","x":0.1,"alpha":0.1,"beta":1}
//   adapter -> harness:        {"id":7,"value":2.0,"hex":"0x1p+1"}
//                              {"id":8,"values":[...],"hex":[...]}
//                              {"id":9,"error":"unsupported"}
//
// Doubles travel as shortest round-trip decimals. A "hex" field (C99 %a form)
// takes precedence when present and is the only carrier of inf and nan.

inline constexpr int kProtocolVersion = 1;

std::string hex_double(double v);
/// Throws ProtocolError unless `s` is a complete strtod-readable number.
double parse_hex_double(std::string_view s);

std::string encode_handshake(const std::set<std::string>& capabilities);
/// Throws ProtocolError on malformed JSON or a protocol version other than 1.
std::set<std::string> decode_handshake(std::string_view line);

std::string encode_request(const Request& req, std::uint64_t id);
/// Throws ProtocolError for malformed requests; fills `id` when present.
Request decode_request(std::string_view line, std::optional<std::uint64_t>& id);

std::string encode_reply(const Reply& reply, std::optional<std::uint64_t> id);
/// Throws ProtocolError on malformed JSON, a wrong id, or non-numeric values.
Reply decode_reply(std::string_view line, std::uint64_t expected_id);

/// Serves `backend` over the protocol until `in` reaches EOF. A malformed
/// request gets an error reply and the session continues. Returns the number
/// of requests answered.
std::size_t serve(Backend& backend, std::istream& in, std::ostream& out);

}  // namespace lreaudit
