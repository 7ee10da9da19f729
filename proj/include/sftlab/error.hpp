#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sftlab {

/// Library error carrying a stable machine-readable code alongside the
/// human-readable message. Codes are the ones documented per operation
/// (e.g. "NonSquare", "BracketUndefined", "NotGaugeFixed").
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& msg) {
    throw Error(std::move(code), msg);
}

inline void require(bool ok, const char* code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

} // namespace sftlab
