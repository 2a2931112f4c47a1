// Misbehaving protocol adapter for the external-backend tests.
//
//   fake_adapter ok                    serve the host backend
//   fake_adapter mean-only LOG         declare only "mean"; append each request to LOG
//   fake_adapter bad-version           handshake with protocol 2
//   fake_adapter silent                never send a handshake
//   fake_adapter malformed N           answer request N with garbage
//   fake_adapter wrong-id N            answer request N with the wrong id
//   fake_adapter crash-once MARKER     exit on the first request unless MARKER exists
//   fake_adapter hang-once MARKER      stall on the first request unless MARKER exists

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <string>

#include "lreaudit/backend.hpp"
#include "lreaudit/protocol.hpp"

using namespace lreaudit;

namespace {

bool first_time(const std::string& marker) {
    if (std::ifstream(marker)) return false;
    std::ofstream(marker) << "x\n";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "ok";
    const std::string arg = argc > 2 ? argv[2] : "";
    HostBackend host;

    if (mode == "silent") {
        ::sleep(1000);
        return 0;
    }
    if (mode == "bad-version") {
        std::cout << R"({"protocol":2,"capabilities":["mean"]})" << std::endl;
        std::string line;
        while (std::getline(std::cin, line)) std::cout << R"({"error":"unsupported"})" << std::endl;
        return 0;
    }

    std::set<std::string> caps = host.capabilities();
    if (mode == "mean-only") caps = {"mean"};
    std::cout << encode_handshake(caps) << std::endl;

    const bool misbehave = (mode == "crash-once" || mode == "hang-once") && first_time(arg);
    const long target = (mode == "malformed" || mode == "wrong-id") ? std::stol(arg) : -1;

    std::string line;
    long count = 0;
    while (std::getline(std::cin, line)) {
        ++count;
        if (mode == "mean-only") std::ofstream(arg, std::ios::app) << line << '\n';
        if (misbehave && count == 1) {
            if (mode == "crash-once") return 3;
            ::sleep(1000);
        }
        std::optional<std::uint64_t> id;
        Reply reply;
        try {
            reply = host.call(decode_request(line, id));
        } catch (const std::exception& e) {
            reply = Reply::fail(e.what());
        }
        if (count == target && mode == "malformed") {
            std::cout << "{not json" << std::endl;
            continue;
        }
        if (count == target && mode == "wrong-id") id = id ? *id + 100 : 100;
        if (mode == "mean-only" && !caps.count(line.find("\"mean\"") != std::string::npos ? "mean" : "x"))
            reply = Reply::fail("unsupported");
        std::cout << encode_reply(reply, id) << std::endl;
    }
    return 0;
}
